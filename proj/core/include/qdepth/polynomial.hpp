#pragma once

#include "qdepth/cyclotomic.hpp"

#include <string>
#include <utility>
#include <vector>

namespace qdepth {

/// Univariate polynomial over Q, lowest degree first. The zero polynomial
/// has an empty coefficient vector.
class ExactPolynomial {
public:
    ExactPolynomial() = default;
    explicit ExactPolynomial(std::vector<Rational> coeffs);

    static ExactPolynomial constant(const Rational& c);
    static ExactPolynomial x();
    /// X - r
    static ExactPolynomial linear(const Rational& r);

    const std::vector<Rational>& coeffs() const noexcept { return c_; }
    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    const Rational& leading() const { return c_.back(); }
    Rational coeff(int k) const;

    ExactPolynomial monic() const;
    ExactPolynomial derivative() const;
    Rational evaluate(const Rational& x) const;

    ExactPolynomial& operator+=(const ExactPolynomial& o);
    ExactPolynomial& operator-=(const ExactPolynomial& o);
    friend ExactPolynomial operator+(ExactPolynomial a, const ExactPolynomial& b) { return a += b; }
    friend ExactPolynomial operator-(ExactPolynomial a, const ExactPolynomial& b) { return a -= b; }
    friend ExactPolynomial operator*(const ExactPolynomial& a, const ExactPolynomial& b);
    friend ExactPolynomial operator*(const Rational& s, ExactPolynomial a);
    friend bool operator==(const ExactPolynomial& a, const ExactPolynomial& b) { return a.c_ == b.c_; }

    /// Euclidean division; throws std::domain_error on division by zero.
    std::pair<ExactPolynomial, ExactPolynomial> divmod(const ExactPolynomial& d) const;

    /// Human form in the variable X, e.g. "X^3 - 4X^2 + 3X".
    std::string to_string() const;

private:
    void trim();
    std::vector<Rational> c_;
};

/// Monic gcd (zero if both are zero).
ExactPolynomial gcd(ExactPolynomial a, ExactPolynomial b);
/// Monic lcm.
ExactPolynomial lcm(const ExactPolynomial& a, const ExactPolynomial& b);

struct RationalRoots {
    /// Distinct rational roots in increasing order with their multiplicities.
    std::vector<std::pair<Rational, int>> roots;
    /// Monic cofactor with no rational roots.
    ExactPolynomial residual;

    std::vector<Rational> values() const;
    /// "X(X - 1)(X - 3)" style, residual appended in brackets when nontrivial.
    std::string factored_string() const;
};

/// Extracts every rational root exactly. Works on the square-free integer
/// part, isolates real roots with a Sturm sequence and tests the unique
/// candidate of the form k/lead in each small interval.
RationalRoots factor_rational_roots(const ExactPolynomial& p);

}  // namespace qdepth
