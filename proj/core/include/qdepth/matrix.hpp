#pragma once

#include "qdepth/polynomial.hpp"
#include "qdepth/row_space.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace qdepth {

/// Boolean support of a matrix.
struct ZeroPattern {
    int rows = 0;
    int cols = 0;
    std::vector<char> bits;

    bool at(int i, int j) const { return bits[static_cast<std::size_t>(i) * cols + j] != 0; }
    bool subset_of(const ZeroPattern& o) const;
    bool all_set() const;
    friend bool operator==(const ZeroPattern& a, const ZeroPattern& b) = default;
};

/// Dense row-major matrix of exact scalars.
class ExactMatrix {
public:
    ExactMatrix() = default;
    ExactMatrix(int rows, int cols);
    ExactMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static ExactMatrix identity(int n);
    static ExactMatrix from_rows(const std::vector<Vec>& rows);

    int rows() const noexcept { return r_; }
    int cols() const noexcept { return c_; }
    bool is_square() const noexcept { return r_ == c_; }

    Scalar& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * c_ + j]; }
    const Scalar& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * c_ + j]; }
    Vec row(int i) const;
    Vec col(int j) const;

    ExactMatrix transpose() const;
    ExactMatrix pow(int k) const;
    Vec apply(const Vec& v) const;

    friend ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);
    friend ExactMatrix operator+(const ExactMatrix& a, const ExactMatrix& b);
    friend ExactMatrix operator-(const ExactMatrix& a, const ExactMatrix& b);
    friend ExactMatrix operator*(const Scalar& s, const ExactMatrix& a);
    friend bool operator==(const ExactMatrix& a, const ExactMatrix& b);

    bool is_zero() const;
    bool is_rational() const;
    /// Entrywise nonnegative rationals.
    bool is_nonnegative() const;
    bool is_nonnegative_integer() const;
    bool is_symmetric() const;
    bool is_permutation() const;
    int rank() const;

    ZeroPattern pattern() const;

    /// Entries as integers; throws MalformedInput if any entry is not one.
    std::vector<std::vector<long>> to_integers() const;
    std::string to_string() const;

private:
    int r_ = 0;
    int c_ = 0;
    std::vector<Scalar> a_;
};

/// Null space basis in reduced echelon order (one vector per free column).
std::vector<Vec> solve_kernel(const ExactMatrix& a);

/// Monic minimal polynomial of a square rational matrix.
ExactPolynomial minimal_polynomial(const ExactMatrix& a);

/// p(A) by Horner's rule.
ExactMatrix evaluate(const ExactPolynomial& p, const ExactMatrix& a);

/// Least k >= 1 with pattern(seq(k)) == pattern(seq(k + 1)), scanning up to
/// k_max. Throws MalformedInput if the support ever shrinks.
std::optional<int> pattern_stabilization_index(const std::function<ExactMatrix(int)>& seq, int k_max);

/// Connectivity of the symmetric support graph.
bool is_indecomposable(const ExactMatrix& a);

/// Connected components of the symmetric support graph, each sorted.
std::vector<std::vector<int>> support_components(const ExactMatrix& a);

}  // namespace qdepth
