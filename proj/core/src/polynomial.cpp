#include "qdepth/polynomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace qdepth {

ExactPolynomial::ExactPolynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
    for (auto& c : c_) c.canonicalize();
    trim();
}

void ExactPolynomial::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

ExactPolynomial ExactPolynomial::constant(const Rational& c) { return ExactPolynomial({c}); }
ExactPolynomial ExactPolynomial::x() { return ExactPolynomial({Rational(0), Rational(1)}); }
ExactPolynomial ExactPolynomial::linear(const Rational& r) { return ExactPolynomial({-r, Rational(1)}); }

Rational ExactPolynomial::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return 0;
    return c_[k];
}

ExactPolynomial ExactPolynomial::monic() const {
    if (is_zero()) return *this;
    ExactPolynomial r = *this;
    const Rational inv = 1 / leading();
    for (auto& c : r.c_) c *= inv;
    return r;
}

ExactPolynomial ExactPolynomial::derivative() const {
    std::vector<Rational> d;
    for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * static_cast<long>(k));
    return ExactPolynomial(std::move(d));
}

Rational ExactPolynomial::evaluate(const Rational& x) const {
    Rational acc = 0;
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
    return acc;
}

ExactPolynomial& ExactPolynomial::operator+=(const ExactPolynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
}

ExactPolynomial& ExactPolynomial::operator-=(const ExactPolynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
}

ExactPolynomial operator*(const ExactPolynomial& a, const ExactPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return ExactPolynomial(std::move(r));
}

ExactPolynomial operator*(const Rational& s, ExactPolynomial a) {
    for (auto& c : a.c_) c *= s;
    a.trim();
    return a;
}

std::pair<ExactPolynomial, ExactPolynomial> ExactPolynomial::divmod(const ExactPolynomial& d) const {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    if (degree() < d.degree()) return {ExactPolynomial{}, *this};
    std::vector<Rational> rem = c_;
    std::vector<Rational> q(c_.size() - d.c_.size() + 1);
    const Rational inv = 1 / d.leading();
    const std::size_t dn = d.c_.size() - 1;
    for (std::size_t k = rem.size(); k-- > dn;) {
        if (rem[k] == 0) continue;
        Rational f = rem[k] * inv;
        q[k - dn] = f;
        for (std::size_t j = 0; j <= dn; ++j) rem[k - dn + j] -= f * d.c_[j];
    }
    rem.resize(dn);
    return {ExactPolynomial(std::move(q)), ExactPolynomial(std::move(rem))};
}

std::string ExactPolynomial::to_string() const {
    if (is_zero()) return "0";
    std::string s;
    for (std::size_t k = c_.size(); k-- > 0;) {
        const Rational& c = c_[k];
        if (c == 0) continue;
        const bool neg = c < 0;
        const Rational a = neg ? Rational(-c) : c;
        if (s.empty())
            s += neg ? "-" : "";
        else
            s += neg ? " - " : " + ";
        if (k == 0 || a != 1) s += a.get_str();
        if (k >= 1) s += "X";
        if (k >= 2) s += "^" + std::to_string(k);
    }
    return s;
}

ExactPolynomial gcd(ExactPolynomial a, ExactPolynomial b) {
    while (!b.is_zero()) {
        auto r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

ExactPolynomial lcm(const ExactPolynomial& a, const ExactPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    return (a * b).divmod(gcd(a, b)).first.monic();
}

std::vector<Rational> RationalRoots::values() const {
    std::vector<Rational> v;
    for (const auto& [r, m] : roots) v.push_back(r);
    return v;
}

std::string RationalRoots::factored_string() const {
    std::string s;
    for (const auto& [r, m] : roots) {
        std::string f;
        if (r == 0) {
            f = "X";
        } else {
            f = "(X " + std::string(r < 0 ? "+ " : "- ") + (r < 0 ? Rational(-r) : r).get_str() + ")";
        }
        s += f;
        if (m > 1) s += "^" + std::to_string(m);
    }
    if (residual.degree() > 0) s += "[" + residual.to_string() + "]";
    if (s.empty()) s = "1";
    return s;
}

namespace {

std::vector<ExactPolynomial> sturm_chain(const ExactPolynomial& p) {
    std::vector<ExactPolynomial> chain{p, p.derivative()};
    while (!chain.back().is_zero() && chain.back().degree() > 0) {
        auto r = chain[chain.size() - 2].divmod(chain.back()).second;
        if (r.is_zero()) break;
        // keep the sign of -r but scale to a unit leading coefficient
        Rational lead = r.leading();
        Rational scale = lead < 0 ? Rational(1 / -lead) : Rational(1 / lead);
        chain.push_back(Rational(-1) * (scale * r));
    }
    return chain;
}

int sign_changes(const std::vector<ExactPolynomial>& chain, const Rational& x) {
    int changes = 0;
    int last = 0;
    for (const auto& q : chain) {
        const int s = sgn(q.evaluate(x));
        if (s == 0) continue;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
    return changes;
}

void isolate(const ExactPolynomial& p, const std::vector<ExactPolynomial>& chain, const Integer& lead, Rational lo,
             Rational hi, int vlo, int vhi, std::vector<Rational>& out) {
    if (vlo - vhi <= 0) return;
    if ((hi - lo) * lead < 1) {
        // at most one point of (1/lead)Z in (lo, hi]
        Rational t = hi * lead;
        Integer k;
        mpz_fdiv_q(k.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
        Rational cand(k, lead);
        cand.canonicalize();
        if (cand > lo && p.evaluate(cand) == 0) out.push_back(cand);
        return;
    }
    Rational mid = (lo + hi) / 2;
    const int vmid = sign_changes(chain, mid);
    isolate(p, chain, lead, lo, mid, vlo, vmid, out);
    isolate(p, chain, lead, mid, hi, vmid, vhi, out);
}

}  // namespace

RationalRoots factor_rational_roots(const ExactPolynomial& p) {
    if (p.is_zero()) throw std::invalid_argument("factor_rational_roots: zero polynomial");
    RationalRoots out;
    ExactPolynomial q = p.monic();
    int zero_mult = 0;
    while (q.coeff(0) == 0 && q.degree() > 0) {
        q = q.divmod(ExactPolynomial::x()).first;
        ++zero_mult;
    }
    if (zero_mult > 0) out.roots.emplace_back(Rational(0), zero_mult);
    if (q.degree() <= 0) {
        out.residual = ExactPolynomial::constant(1);
        return out;
    }
    ExactPolynomial sqfree = q.divmod(gcd(q, q.derivative())).first.monic();

    // integer primitive form
    Integer den = 1;
    for (const auto& c : sqfree.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    std::vector<Rational> ic;
    for (const auto& c : sqfree.coeffs()) ic.emplace_back(c * den);
    Integer content = 0;
    for (const auto& c : ic) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_num_mpz_t());
    for (auto& c : ic) c /= content;
    ExactPolynomial prim(ic);
    Integer lead = prim.leading().get_num();
    if (lead < 0) lead = -lead;

    Rational bound = 0;
    for (int k = 0; k < prim.degree(); ++k) bound = std::max(bound, Rational(abs(prim.coeff(k) / prim.leading())));
    bound += 2;

    auto chain = sturm_chain(prim);
    std::vector<Rational> found;
    isolate(prim, chain, lead, -bound, bound, sign_changes(chain, -bound), sign_changes(chain, bound), found);
    std::sort(found.begin(), found.end());

    for (const auto& r : found) {
        int m = 0;
        for (;;) {
            auto [quo, rem] = q.divmod(ExactPolynomial::linear(r));
            if (!rem.is_zero()) break;
            q = std::move(quo);
            ++m;
        }
        out.roots.emplace_back(r, m);
    }
    std::sort(out.roots.begin(), out.roots.end());
    out.residual = q.monic();
    return out;
}

}  // namespace qdepth
