#include "qdepth/row_space.hpp"

#include "qdepth/errors.hpp"

#include <algorithm>
#include <map>

namespace qdepth {

SparseVec to_sparse(const Vec& v) {
    SparseVec s;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) s.emplace_back(static_cast<int>(i), v[i]);
    return s;
}

Vec to_dense(const SparseVec& v, int n) {
    Vec d(n);
    for (const auto& [i, x] : v) d[i] = x;
    return d;
}

void axpy(SparseVec& y, const Scalar& a, const SparseVec& x) {
    if (a.is_zero() || x.empty()) return;
    SparseVec out;
    out.reserve(y.size() + x.size());
    std::size_t i = 0, j = 0;
    while (i < y.size() || j < x.size()) {
        if (j == x.size() || (i < y.size() && y[i].first < x[j].first)) {
            out.push_back(std::move(y[i++]));
        } else if (i == y.size() || x[j].first < y[i].first) {
            out.emplace_back(x[j].first, a * x[j].second);
            ++j;
        } else {
            Scalar s = y[i].second + a * x[j].second;
            if (!s.is_zero()) out.emplace_back(y[i].first, std::move(s));
            ++i;
            ++j;
        }
    }
    y = std::move(out);
}

SparseVec scaled(const SparseVec& x, const Scalar& a) {
    if (a.is_zero()) return {};
    SparseVec r = x;
    for (auto& [i, v] : r) v *= a;
    return r;
}

Scalar entry(const SparseVec& v, int index) {
    auto it = std::lower_bound(v.begin(), v.end(), index, [](const auto& p, int k) { return p.first < k; });
    if (it != v.end() && it->first == index) return it->second;
    return Scalar{};
}

bool is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
}

RowSpace::RowSpace(int ambient) : n_(ambient), pivot_row_(ambient, -1) {}

SparseVec RowSpace::reduce(const SparseVec& v) const {
    SparseVec r = v;
    // Stored rows vanish on every other pivot, so the coefficients are the
    // original entries of v at pivot columns.
    for (const auto& [c, x] : v) {
        const int row = pivot_row_[c];
        if (row >= 0) axpy(r, -x, rows_[row]);
    }
    return r;
}

bool RowSpace::insert(const SparseVec& v) {
    if (full()) return false;
    SparseVec r = reduce(v);
    if (r.empty()) return false;
    const int p = r.front().first;
    const Scalar inv = r.front().second.inverse();
    for (auto& [i, x] : r) x *= inv;
    for (auto& row : rows_) {
        Scalar f = entry(row, p);
        if (!f.is_zero()) axpy(row, -f, r);
    }
    pivot_row_[p] = static_cast<int>(rows_.size());
    rows_.push_back(std::move(r));
    return true;
}

std::vector<SparseVec> RowSpace::basis() const {
    std::vector<SparseVec> b;
    b.reserve(rows_.size());
    for (int c = 0; c < n_; ++c)
        if (pivot_row_[c] >= 0) b.push_back(rows_[pivot_row_[c]]);
    return b;
}

std::vector<Vec> RowSpace::dense_basis() const {
    std::vector<Vec> b;
    for (const auto& r : basis()) b.push_back(to_dense(r, n_));
    return b;
}

std::vector<int> RowSpace::pivots() const {
    std::vector<int> p;
    for (int c = 0; c < n_; ++c)
        if (pivot_row_[c] >= 0) p.push_back(c);
    return p;
}

std::vector<int> RowSpace::free_columns() const {
    std::vector<int> f;
    for (int c = 0; c < n_; ++c)
        if (pivot_row_[c] < 0) f.push_back(c);
    return f;
}

std::vector<Vec> RowSpace::kernel_basis() const {
    std::vector<Vec> out;
    for (int f : free_columns()) {
        Vec v(n_);
        v[f] = 1;
        for (const auto& row : rows_) {
            Scalar x = entry(row, f);
            if (!x.is_zero()) v[row.front().first] = -x;
        }
        out.push_back(std::move(v));
    }
    return out;
}

Vec RowSpace::quotient_coords(const SparseVec& v) const {
    const SparseVec r = reduce(v);
    const auto fc = free_columns();
    Vec q(fc.size());
    std::size_t k = 0;
    for (const auto& [i, x] : r) {
        while (fc[k] < i) ++k;
        q[k] = x;
    }
    return q;
}

bool RowSpace::contains_space(const RowSpace& other) const {
    if (other.n_ != n_) return false;
    for (const auto& r : other.rows_)
        if (!contains(r)) return false;
    return true;
}

bool operator==(const RowSpace& a, const RowSpace& b) {
    return a.n_ == b.n_ && a.dim() == b.dim() && a.contains_space(b);
}

RowSpace span_of(int ambient, const std::vector<Vec>& vs) {
    RowSpace s(ambient);
    for (const auto& v : vs) s.insert(v);
    return s;
}

RowSpace span_sum(const RowSpace& a, const RowSpace& b) {
    RowSpace s = a;
    for (const auto& r : b.basis()) s.insert(r);
    return s;
}

RowSpace intersection(const RowSpace& a, const RowSpace& b) {
    if (a.ambient() != b.ambient()) throw MalformedInput("intersection of subspaces of different spaces");
    // w = sum c_i b_i lies in a iff its normal form modulo a vanishes
    const auto bb = b.basis();
    std::vector<SparseVec> cols;
    cols.reserve(bb.size());
    for (const auto& r : bb) cols.push_back(a.reduce(r));
    RowSpace out(a.ambient());
    for (const auto& c : kernel_of_columns(cols, a.ambient())) {
        SparseVec w;
        for (std::size_t i = 0; i < c.size(); ++i) axpy(w, c[i], bb[i]);
        out.insert(w);
    }
    return out;
}

std::vector<Vec> kernel_of_rows(const std::vector<SparseVec>& rows, int unknowns) {
    RowSpace s(unknowns);
    for (const auto& r : rows) {
        s.insert(r);
        if (s.full()) return {};
    }
    return s.kernel_basis();
}

std::vector<Vec> kernel_of_columns(const std::vector<SparseVec>& cols, int col_dim) {
    (void)col_dim;
    std::map<int, SparseVec> rows;
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (const auto& [i, x] : cols[j]) rows[i].emplace_back(static_cast<int>(j), x);
    RowSpace s(static_cast<int>(cols.size()));
    for (const auto& [i, r] : rows) {
        s.insert(r);
        if (s.full()) return {};
    }
    return s.kernel_basis();
}

}  // namespace qdepth
