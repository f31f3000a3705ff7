#include "qdepth/cyclotomic.hpp"

#include "qdepth/errors.hpp"

#include <array>
#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

namespace qdepth {

namespace {

// Per-order tables. power[k] holds x^k mod Phi_n for 0 <= k < n.
struct OrderData {
    int n = 1;
    int phi = 1;
    std::vector<Integer> cyclo;
    std::vector<std::vector<Integer>> power;
};

std::vector<Integer> poly_mul(const std::vector<Integer>& a, const std::vector<Integer>& b) {
    std::vector<Integer> r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

// Exact division by a monic integer polynomial.
std::vector<Integer> poly_div_exact(std::vector<Integer> num, const std::vector<Integer>& den) {
    const std::size_t dn = den.size() - 1;
    std::vector<Integer> q(num.size() - dn);
    for (std::size_t k = num.size(); k-- > dn;) {
        Integer c = num[k];
        q[k - dn] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j <= dn; ++j) num[k - dn + j] -= c * den[j];
    }
    for (std::size_t j = 0; j < dn; ++j)
        if (num[j] != 0) throw AssertionFailure("cyclotomic polynomial division left a remainder");
    return q;
}

std::unique_ptr<OrderData> build_order(int n);

std::mutex g_mutex;
std::map<int, std::unique_ptr<OrderData>>& registry() {
    static std::map<int, std::unique_ptr<OrderData>> m;
    return m;
}

const OrderData& order_data(int n) {
    thread_local std::array<const OrderData*, 256> fast{};
    if (n > 0 && n < 256 && fast[n] != nullptr) return *fast[n];
    const OrderData* found = nullptr;
    {
        std::lock_guard<std::mutex> lock(g_mutex);
        auto& reg = registry();
        auto it = reg.find(n);
        if (it != reg.end()) found = it->second.get();
    }
    if (found == nullptr) {
        auto built = build_order(n);  // may recurse into order_data for divisors
        std::lock_guard<std::mutex> lock(g_mutex);
        auto& slot = registry()[n];
        if (!slot) slot = std::move(built);
        found = slot.get();
    }
    if (n > 0 && n < 256) fast[n] = found;
    return *found;
}

std::unique_ptr<OrderData> build_order(int n) {
    if (n <= 0) throw MalformedInput("cyclotomic order must be positive, got " + std::to_string(n));
    auto d = std::make_unique<OrderData>();
    d->n = n;
    std::vector<Integer> num(n + 1);
    num[0] = -1;
    num[n] = 1;
    std::vector<Integer> den{1};
    for (int k = 1; k < n; ++k)
        if (n % k == 0) den = poly_mul(den, order_data(k).cyclo);
    d->cyclo = poly_div_exact(std::move(num), den);
    d->phi = static_cast<int>(d->cyclo.size()) - 1;
    const int phi = d->phi;
    d->power.assign(n, std::vector<Integer>(phi));
    std::vector<Integer> cur(phi);
    cur[0] = 1;
    for (int k = 0; k < n; ++k) {
        d->power[k] = cur;
        // multiply by x and reduce with x^phi = -sum c_i x^i
        Integer top = cur[phi - 1];
        for (int i = phi - 1; i > 0; --i) cur[i] = cur[i - 1];
        cur[0] = 0;
        if (top != 0)
            for (int i = 0; i < phi; ++i) cur[i] -= top * d->cyclo[i];
    }
    return d;
}

int mobius(int n) {
    int result = 1;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        n /= p;
        if (n % p == 0) return 0;
        result = -result;
    }
    if (n > 1) result = -result;
    return result;
}

}  // namespace

int euler_phi(int n) { return order_data(n).phi; }

const std::vector<Integer>& cyclotomic_polynomial(int n) { return order_data(n).cyclo; }

int lcm_order(int a, int b) { return std::lcm(a, b); }

CyclotomicScalar::CyclotomicScalar(int order, std::vector<Rational> coeffs) : order_(order) {
    const OrderData& d = order_data(order);
    if (static_cast<int>(coeffs.size()) <= d.phi) {
        coeffs.resize(d.phi);
        coeffs_ = std::move(coeffs);
    } else {
        coeffs_.assign(d.phi, Rational(0));
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
            if (coeffs[k] == 0) continue;
            const auto& pw = d.power[k % d.n];
            for (int i = 0; i < d.phi; ++i)
                if (pw[i] != 0) coeffs_[i] += coeffs[k] * pw[i];
        }
    }
    for (auto& c : coeffs_) c.canonicalize();
    normalize();
}

CyclotomicScalar CyclotomicScalar::root_of_unity(int n, long k) {
    const OrderData& d = order_data(n);
    long e = k % n;
    if (e < 0) e += n;
    std::vector<Rational> c(d.phi);
    for (int i = 0; i < d.phi; ++i) c[i] = Rational(d.power[e][i]);
    return CyclotomicScalar(n, std::move(c));
}

void CyclotomicScalar::normalize() {
    if (order_ == 1) return;
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) return;
    coeffs_.resize(1);
    order_ = 1;
}

bool CyclotomicScalar::is_zero() const {
    for (const auto& c : coeffs_)
        if (c != 0) return false;
    return true;
}

bool CyclotomicScalar::is_one() const { return order_ == 1 && coeffs_[0] == 1; }

const Rational& CyclotomicScalar::to_rational() const {
    if (order_ != 1) throw MalformedInput("scalar " + to_string() + " is not rational");
    return coeffs_[0];
}

CyclotomicScalar CyclotomicScalar::lifted(int m) const {
    if (m % order_ != 0)
        throw MalformedInput("cannot lift order " + std::to_string(order_) + " into order " + std::to_string(m));
    if (m == order_) return *this;
    const OrderData& d = order_data(m);
    const int step = m / order_;
    CyclotomicScalar r;
    r.order_ = m;
    r.coeffs_.assign(d.phi, Rational(0));
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        if (coeffs_[k] == 0) continue;
        const auto& pw = d.power[(k * step) % m];
        for (int i = 0; i < d.phi; ++i)
            if (pw[i] != 0) r.coeffs_[i] += coeffs_[k] * pw[i];
    }
    return r;  // deliberately not normalized: callers want order m
}

CyclotomicScalar CyclotomicScalar::conj() const {
    if (order_ <= 2) return *this;
    const OrderData& d = order_data(order_);
    std::vector<Rational> c(d.phi);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
        if (coeffs_[k] == 0) continue;
        const auto& pw = d.power[(order_ - static_cast<int>(k)) % order_];
        for (int i = 0; i < d.phi; ++i)
            if (pw[i] != 0) c[i] += coeffs_[k] * pw[i];
    }
    CyclotomicScalar r;
    r.order_ = order_;
    r.coeffs_ = std::move(c);
    r.normalize();
    return r;
}

Rational CyclotomicScalar::trace() const {
    const int n = order_;
    const int phi = static_cast<int>(coeffs_.size());
    Rational t = 0;
    for (int k = 0; k < phi; ++k) {
        if (coeffs_[k] == 0) continue;
        const int g = std::gcd(n, k);
        const int m = n / g;
        t += coeffs_[k] * (mobius(m) * (phi / euler_phi(m)));
    }
    return t;
}

CyclotomicScalar CyclotomicScalar::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero scalar");
    if (order_ == 1) return CyclotomicScalar(Rational(1) / coeffs_[0]);
    // Solve (multiplication-by-this) * b = e_0 over Q.
    const OrderData& d = order_data(order_);
    const int phi = d.phi;
    std::vector<std::vector<Rational>> a(phi, std::vector<Rational>(phi + 1));
    for (int j = 0; j < phi; ++j) {
        // column j: coordinates of this * x^j
        for (int k = 0; k < phi; ++k) {
            if (coeffs_[k] == 0) continue;
            const auto& pw = d.power[(k + j) % d.n];
            for (int i = 0; i < phi; ++i)
                if (pw[i] != 0) a[i][j] += coeffs_[k] * pw[i];
        }
    }
    a[0][phi] = 1;
    for (int col = 0; col < phi; ++col) {
        int piv = col;
        while (piv < phi && a[piv][col] == 0) ++piv;
        if (piv == phi) throw AssertionFailure("singular multiplication map in a field");
        std::swap(a[piv], a[col]);
        Rational inv = 1 / a[col][col];
        for (int j = col; j <= phi; ++j) a[col][j] *= inv;
        for (int r = 0; r < phi; ++r) {
            if (r == col || a[r][col] == 0) continue;
            Rational f = a[r][col];
            for (int j = col; j <= phi; ++j) a[r][j] -= f * a[col][j];
        }
    }
    std::vector<Rational> b(phi);
    for (int i = 0; i < phi; ++i) b[i] = a[i][phi];
    return CyclotomicScalar(order_, std::move(b));
}

CyclotomicScalar& CyclotomicScalar::operator+=(const CyclotomicScalar& o) {
    if (order_ == o.order_) {
        for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    } else if (o.order_ == 1) {
        coeffs_[0] += o.coeffs_[0];
        return *this;
    } else {
        const int m = lcm_order(order_, o.order_);
        CyclotomicScalar a = lifted(m);
        CyclotomicScalar b = o.lifted(m);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) a.coeffs_[i] += b.coeffs_[i];
        *this = std::move(a);
    }
    normalize();
    return *this;
}

CyclotomicScalar& CyclotomicScalar::operator-=(const CyclotomicScalar& o) {
    if (order_ == o.order_) {
        for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    } else if (o.order_ == 1) {
        coeffs_[0] -= o.coeffs_[0];
        return *this;
    } else {
        const int m = lcm_order(order_, o.order_);
        CyclotomicScalar a = lifted(m);
        CyclotomicScalar b = o.lifted(m);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) a.coeffs_[i] -= b.coeffs_[i];
        *this = std::move(a);
    }
    normalize();
    return *this;
}

CyclotomicScalar& CyclotomicScalar::operator*=(const CyclotomicScalar& o) {
    if (o.order_ == 1) {
        for (auto& c : coeffs_) c *= o.coeffs_[0];
        if (o.coeffs_[0] == 0) {
            coeffs_.assign(1, Rational(0));
            order_ = 1;
        }
        return *this;
    }
    if (order_ == 1) {
        Rational s = coeffs_[0];
        *this = o;
        for (auto& c : coeffs_) c *= s;
        if (s == 0) {
            coeffs_.assign(1, Rational(0));
            order_ = 1;
        }
        return *this;
    }
    const int m = lcm_order(order_, o.order_);
    const CyclotomicScalar a = lifted(m);
    const CyclotomicScalar b = o.lifted(m);
    const OrderData& d = order_data(m);
    std::vector<Rational> prod(2 * d.phi - 1);
    for (int i = 0; i < d.phi; ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (int j = 0; j < d.phi; ++j)
            if (b.coeffs_[j] != 0) prod[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    std::vector<Rational> r(d.phi);
    for (std::size_t t = 0; t < prod.size(); ++t) {
        if (prod[t] == 0) continue;
        const auto& pw = d.power[t % m];
        for (int i = 0; i < d.phi; ++i)
            if (pw[i] != 0) r[i] += prod[t] * pw[i];
    }
    order_ = m;
    coeffs_ = std::move(r);
    normalize();
    return *this;
}

CyclotomicScalar& CyclotomicScalar::operator/=(const CyclotomicScalar& o) {
    if (o.order_ == 1) {
        if (o.coeffs_[0] == 0) throw std::domain_error("division by zero scalar");
        for (auto& c : coeffs_) c /= o.coeffs_[0];
        return *this;
    }
    return *this *= o.inverse();
}

CyclotomicScalar CyclotomicScalar::operator-() const {
    CyclotomicScalar r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

bool operator==(const CyclotomicScalar& a, const CyclotomicScalar& b) {
    if (a.order_ == b.order_) return a.coeffs_ == b.coeffs_;
    const int m = lcm_order(a.order_, b.order_);
    return a.lifted(m).coeffs_ == b.lifted(m).coeffs_;
}

std::strong_ordering canonical_compare(const CyclotomicScalar& a, const CyclotomicScalar& b) {
    const Rational ta = a.trace() * (1 / Rational(a.coeffs_.size()));
    const Rational tb = b.trace() * (1 / Rational(b.coeffs_.size()));
    if (ta != tb) return ta < tb ? std::strong_ordering::less : std::strong_ordering::greater;
    const int m = lcm_order(a.order_, b.order_);
    const auto la = a.lifted(m);
    const auto lb = b.lifted(m);
    for (std::size_t i = 0; i < la.coeffs_.size(); ++i)
        if (la.coeffs_[i] != lb.coeffs_[i])
            return la.coeffs_[i] < lb.coeffs_[i] ? std::strong_ordering::less : std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::string CyclotomicScalar::to_string() const {
    if (order_ == 1) return coeffs_[0].get_str();
    std::string s = std::to_string(order_) + ":[";
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (i) s += ',';
        s += coeffs_[i].get_str();
    }
    s += ']';
    return s;
}

namespace {

Rational parse_rational(std::string_view t) {
    while (!t.empty() && (t.front() == ' ' || t.front() == '"')) t.remove_prefix(1);
    while (!t.empty() && (t.back() == ' ' || t.back() == '"')) t.remove_suffix(1);
    if (t.empty()) throw MalformedInput("empty rational literal");
    std::string s(t);
    if (!s.empty() && s[0] == '+') s.erase(0, 1);
    for (char c : s)
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '/'))
            throw MalformedInput("bad rational literal '" + std::string(t) + "'");
    Rational r;
    if (r.set_str(s, 10) != 0) throw MalformedInput("bad rational literal '" + std::string(t) + "'");
    if (r.get_den() == 0) throw MalformedInput("zero denominator in '" + std::string(t) + "'");
    r.canonicalize();
    return r;
}

}  // namespace

CyclotomicScalar CyclotomicScalar::parse(std::string_view text) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '"')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '"')) text.remove_suffix(1);
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) return CyclotomicScalar(parse_rational(text));
    int order = 0;
    try {
        order = std::stoi(std::string(text.substr(0, colon)));
    } catch (const std::exception&) {
        throw MalformedInput("bad cyclotomic order in '" + std::string(text) + "'");
    }
    if (order <= 0) throw MalformedInput("cyclotomic order must be positive in '" + std::string(text) + "'");
    auto body = text.substr(colon + 1);
    if (body.size() < 2 || body.front() != '[' || body.back() != ']')
        throw MalformedInput("expected '[...]' after order in '" + std::string(text) + "'");
    body = body.substr(1, body.size() - 2);
    std::vector<Rational> coeffs;
    while (!body.empty()) {
        const auto comma = body.find(',');
        coeffs.push_back(parse_rational(body.substr(0, comma)));
        if (comma == std::string_view::npos) break;
        body.remove_prefix(comma + 1);
    }
    if (static_cast<int>(coeffs.size()) > euler_phi(order))
        throw MalformedInput("too many coefficients for order " + std::to_string(order));
    return CyclotomicScalar(order, std::move(coeffs));
}

std::ostream& operator<<(std::ostream& os, const CyclotomicScalar& s) { return os << s.to_string(); }

}  // namespace qdepth
