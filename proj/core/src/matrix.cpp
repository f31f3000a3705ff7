#include "qdepth/matrix.hpp"

#include "qdepth/errors.hpp"

#include <numeric>
#include <sstream>

namespace qdepth {

bool ZeroPattern::subset_of(const ZeroPattern& o) const {
    if (rows != o.rows || cols != o.cols) return false;
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i] && !o.bits[i]) return false;
    return true;
}

bool ZeroPattern::all_set() const {
    for (char b : bits)
        if (!b) return false;
    return true;
}

ExactMatrix::ExactMatrix(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<std::size_t>(rows) * cols) {}

ExactMatrix::ExactMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    r_ = static_cast<int>(rows.size());
    c_ = r_ ? static_cast<int>(rows.begin()->size()) : 0;
    a_.reserve(static_cast<std::size_t>(r_) * c_);
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != c_) throw MalformedInput("ragged matrix literal");
        for (long v : row) a_.emplace_back(v);
    }
}

ExactMatrix ExactMatrix::identity(int n) {
    ExactMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

ExactMatrix ExactMatrix::from_rows(const std::vector<Vec>& rows) {
    if (rows.empty()) return {};
    ExactMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (int i = 0; i < m.r_; ++i) {
        if (static_cast<int>(rows[i].size()) != m.c_) throw MalformedInput("ragged matrix rows");
        for (int j = 0; j < m.c_; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

Vec ExactMatrix::row(int i) const { return Vec(a_.begin() + static_cast<long>(i) * c_, a_.begin() + static_cast<long>(i + 1) * c_); }

Vec ExactMatrix::col(int j) const {
    Vec v(r_);
    for (int i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
}

ExactMatrix ExactMatrix::transpose() const {
    ExactMatrix t(c_, r_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

ExactMatrix ExactMatrix::pow(int k) const {
    if (!is_square()) throw MalformedInput("power of a non-square matrix");
    ExactMatrix result = identity(r_);
    ExactMatrix base = *this;
    while (k > 0) {
        if (k & 1) result = result * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return result;
}

Vec ExactMatrix::apply(const Vec& v) const {
    if (static_cast<int>(v.size()) != c_) throw MalformedInput("matrix-vector size mismatch");
    Vec out(r_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j)
            if (!(*this)(i, j).is_zero() && !v[j].is_zero()) out[i] += (*this)(i, j) * v[j];
    return out;
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.c_ != b.r_) throw MalformedInput("matrix product size mismatch");
    ExactMatrix p(a.r_, b.c_);
    for (int i = 0; i < a.r_; ++i)
        for (int k = 0; k < a.c_; ++k) {
            const Scalar& x = a(i, k);
            if (x.is_zero()) continue;
            for (int j = 0; j < b.c_; ++j)
                if (!b(k, j).is_zero()) p(i, j) += x * b(k, j);
        }
    return p;
}

ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.r_ != b.r_ || a.c_ != b.c_) throw MalformedInput("matrix sum size mismatch");
    ExactMatrix s = a;
    for (std::size_t i = 0; i < s.a_.size(); ++i) s.a_[i] += b.a_[i];
    return s;
}

ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.r_ != b.r_ || a.c_ != b.c_) throw MalformedInput("matrix difference size mismatch");
    ExactMatrix s = a;
    for (std::size_t i = 0; i < s.a_.size(); ++i) s.a_[i] -= b.a_[i];
    return s;
}

ExactMatrix operator*(const Scalar& s, const ExactMatrix& a) {
    ExactMatrix r = a;
    for (auto& x : r.a_) x *= s;
    return r;
}

bool operator==(const ExactMatrix& a, const ExactMatrix& b) { return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_; }

bool ExactMatrix::is_zero() const {
    for (const auto& x : a_)
        if (!x.is_zero()) return false;
    return true;
}

bool ExactMatrix::is_rational() const {
    for (const auto& x : a_)
        if (!x.is_rational()) return false;
    return true;
}

bool ExactMatrix::is_nonnegative() const {
    for (const auto& x : a_)
        if (!x.is_rational() || x.to_rational() < 0) return false;
    return true;
}

bool ExactMatrix::is_nonnegative_integer() const {
    for (const auto& x : a_)
        if (!x.is_rational() || x.to_rational() < 0 || x.to_rational().get_den() != 1) return false;
    return true;
}

bool ExactMatrix::is_symmetric() const {
    if (!is_square()) return false;
    for (int i = 0; i < r_; ++i)
        for (int j = i + 1; j < c_; ++j)
            if (!((*this)(i, j) == (*this)(j, i))) return false;
    return true;
}

bool ExactMatrix::is_permutation() const {
    if (!is_square()) return false;
    std::vector<int> col_hits(c_, 0);
    for (int i = 0; i < r_; ++i) {
        int ones = 0;
        for (int j = 0; j < c_; ++j) {
            const Scalar& x = (*this)(i, j);
            if (x.is_zero()) continue;
            if (!x.is_one()) return false;
            ++ones;
            ++col_hits[j];
        }
        if (ones != 1) return false;
    }
    for (int h : col_hits)
        if (h != 1) return false;
    return true;
}

int ExactMatrix::rank() const {
    RowSpace s(c_);
    for (int i = 0; i < r_; ++i) s.insert(row(i));
    return s.dim();
}

ZeroPattern ExactMatrix::pattern() const {
    ZeroPattern p{r_, c_, std::vector<char>(a_.size())};
    for (std::size_t i = 0; i < a_.size(); ++i) p.bits[i] = a_[i].is_zero() ? 0 : 1;
    return p;
}

std::vector<std::vector<long>> ExactMatrix::to_integers() const {
    std::vector<std::vector<long>> out(r_, std::vector<long>(c_));
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) {
            const Scalar& x = (*this)(i, j);
            if (!x.is_rational() || x.to_rational().get_den() != 1 || !x.to_rational().get_num().fits_slong_p())
                throw MalformedInput("matrix entry " + x.to_string() + " is not a machine integer");
            out[i][j] = x.to_rational().get_num().get_si();
        }
    return out;
}

std::string ExactMatrix::to_string() const {
    std::vector<std::string> cells(a_.size());
    std::size_t w = 1;
    for (std::size_t i = 0; i < a_.size(); ++i) {
        cells[i] = a_[i].to_string();
        w = std::max(w, cells[i].size());
    }
    std::ostringstream os;
    for (int i = 0; i < r_; ++i) {
        os << "[";
        for (int j = 0; j < c_; ++j) {
            const auto& s = cells[static_cast<std::size_t>(i) * c_ + j];
            os << (j ? " " : "") << std::string(w - s.size(), ' ') << s;
        }
        os << "]\n";
    }
    return os.str();
}

std::vector<Vec> solve_kernel(const ExactMatrix& a) {
    RowSpace s(a.cols());
    for (int i = 0; i < a.rows(); ++i) {
        s.insert(a.row(i));
        if (s.full()) break;
    }
    return s.kernel_basis();
}

namespace {

// Minimal polynomial of v relative to A, extending `seen` with its Krylov space.
ExactPolynomial local_minpoly(const ExactMatrix& a, const Vec& v, RowSpace& seen) {
    const int n = a.rows();
    std::vector<Vec> rows;
    std::vector<int> piv;
    std::vector<std::vector<Rational>> polys;
    Vec w = v;
    for (int k = 0; k <= n; ++k) {
        seen.insert(w);
        Vec u = w;
        std::vector<Rational> poly(k + 1);
        poly[k] = 1;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const Scalar f = u[piv[r]];
            if (f.is_zero()) continue;
            for (int j = 0; j < n; ++j)
                if (!rows[r][j].is_zero()) u[j] -= f * rows[r][j];
            const Rational fr = f.to_rational();
            for (std::size_t d = 0; d < polys[r].size(); ++d) poly[d] -= fr * polys[r][d];
        }
        int p = -1;
        for (int j = 0; j < n; ++j)
            if (!u[j].is_zero()) {
                p = j;
                break;
            }
        if (p < 0) return ExactPolynomial(std::move(poly));
        const Scalar inv = u[p].inverse();
        for (auto& x : u) x *= inv;
        const Rational ir = inv.to_rational();
        for (auto& c : poly) c *= ir;
        rows.push_back(std::move(u));
        piv.push_back(p);
        polys.push_back(std::move(poly));
        w = a.apply(w);
    }
    throw AssertionFailure("Krylov sequence failed to become dependent");
}

}  // namespace

ExactPolynomial minimal_polynomial(const ExactMatrix& a) {
    if (!a.is_square()) throw MalformedInput("minimal polynomial of a non-square matrix");
    if (!a.is_rational()) throw MalformedInput("minimal polynomial requires a rational matrix");
    const int n = a.rows();
    ExactPolynomial m = ExactPolynomial::constant(1);
    RowSpace seen(n);
    for (int i = 0; i < n && !seen.full(); ++i) {
        Vec e(n);
        e[i] = 1;
        if (seen.contains(e)) continue;  // lies in an A-invariant space m already kills
        m = lcm(m, local_minpoly(a, e, seen));
    }
    return m;
}

ExactMatrix evaluate(const ExactPolynomial& p, const ExactMatrix& a) {
    const int n = a.rows();
    ExactMatrix acc(n, n);
    const auto& c = p.coeffs();
    for (std::size_t k = c.size(); k-- > 0;) {
        acc = acc * a;
        for (int i = 0; i < n; ++i) acc(i, i) += Scalar(c[k]);
    }
    return acc;
}

std::optional<int> pattern_stabilization_index(const std::function<ExactMatrix(int)>& seq, int k_max) {
    ZeroPattern prev = seq(1).pattern();
    for (int k = 1; k <= k_max; ++k) {
        ZeroPattern next = seq(k + 1).pattern();
        if (!prev.subset_of(next))
            throw MalformedInput("pattern sequence is not monotone at k=" + std::to_string(k));
        if (prev == next) return k;
        prev = std::move(next);
    }
    return std::nullopt;
}

std::vector<std::vector<int>> support_components(const ExactMatrix& a) {
    const int n = a.rows();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (!a(i, j).is_zero()) parent[find(i)] = find(j);
    std::vector<std::vector<int>> comps;
    std::vector<int> slot(n, -1);
    for (int i = 0; i < n; ++i) {
        const int r = find(i);
        if (slot[r] < 0) {
            slot[r] = static_cast<int>(comps.size());
            comps.emplace_back();
        }
        comps[slot[r]].push_back(i);
    }
    return comps;
}

bool is_indecomposable(const ExactMatrix& a) {
    if (!a.is_square()) throw MalformedInput("indecomposability of a non-square matrix");
    return support_components(a).size() <= 1;
}

}  // namespace qdepth
