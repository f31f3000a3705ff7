#pragma once

#include "qdepth/cyclotomic.hpp"

#include <utility>
#include <vector>

namespace qdepth {

using Vec = std::vector<Scalar>;
/// Sorted by index, no stored zeros.
using SparseVec = std::vector<std::pair<int, Scalar>>;

SparseVec to_sparse(const Vec& v);
Vec to_dense(const SparseVec& v, int n);
/// y += a * x
void axpy(SparseVec& y, const Scalar& a, const SparseVec& x);
SparseVec scaled(const SparseVec& x, const Scalar& a);
Scalar entry(const SparseVec& v, int index);
bool is_zero(const Vec& v);

/// Row space of a growing set of vectors in k^n, kept in fully reduced
/// echelon form: every stored row has leading entry 1 at its pivot and zeros
/// at all other pivots.
class RowSpace {
public:
    explicit RowSpace(int ambient);

    int ambient() const noexcept { return n_; }
    int dim() const noexcept { return static_cast<int>(rows_.size()); }
    bool full() const noexcept { return dim() == n_; }

    /// Inserts v; returns false if it was already in the span.
    bool insert(const SparseVec& v);
    bool insert(const Vec& v) { return insert(to_sparse(v)); }
    /// Normal form of v modulo the span (zero at every pivot).
    SparseVec reduce(const SparseVec& v) const;
    bool contains(const SparseVec& v) const { return reduce(v).empty(); }
    bool contains(const Vec& v) const { return contains(to_sparse(v)); }

    /// Rows ordered by pivot.
    std::vector<SparseVec> basis() const;
    std::vector<Vec> dense_basis() const;
    std::vector<int> pivots() const;
    std::vector<int> free_columns() const;

    /// Null space of the matrix whose rows span this space, one vector per
    /// free column in increasing order.
    std::vector<Vec> kernel_basis() const;

    /// Coordinates of v + span in the quotient, indexed by free columns.
    Vec quotient_coords(const SparseVec& v) const;
    Vec quotient_coords(const Vec& v) const { return quotient_coords(to_sparse(v)); }

    bool contains_space(const RowSpace& other) const;
    friend bool operator==(const RowSpace& a, const RowSpace& b);

private:
    int n_;
    std::vector<SparseVec> rows_;
    std::vector<int> pivot_row_;  // column -> row index or -1
};

RowSpace span_of(int ambient, const std::vector<Vec>& vs);
RowSpace span_sum(const RowSpace& a, const RowSpace& b);
RowSpace intersection(const RowSpace& a, const RowSpace& b);

/// Basis of { c : sum_i c_i cols[i] = 0 } for vectors in k^col_dim. Stops
/// early once the column rank reaches cols.size().
std::vector<Vec> kernel_of_columns(const std::vector<SparseVec>& cols, int col_dim);

/// Same as kernel_of_columns but for equations given directly as rows over
/// `unknowns` variables.
std::vector<Vec> kernel_of_rows(const std::vector<SparseVec>& rows, int unknowns);

}  // namespace qdepth
