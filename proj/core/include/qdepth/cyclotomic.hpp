#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace qdepth {

using Rational = mpq_class;
using Integer = mpz_class;

/// Euler's totient.
int euler_phi(int n);

/// Coefficients of the n-th cyclotomic polynomial, lowest degree first.
const std::vector<Integer>& cyclotomic_polynomial(int n);

/// Exact element of Q(zeta_n) in the power basis 1, z, ..., z^{phi(n)-1}
/// of Q[x]/Phi_n(x).
///
/// Results of arithmetic live in Q(zeta_lcm) of the operands, and are
/// dropped to order 1 whenever they turn out to be rational, so rational
/// work never pays for the cyclotomic machinery.
class CyclotomicScalar {
public:
    CyclotomicScalar() : order_(1), coeffs_(1) {}
    CyclotomicScalar(long v) : order_(1), coeffs_{Rational(v)} {}  // NOLINT(google-explicit-constructor)
    CyclotomicScalar(int v) : CyclotomicScalar(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)
    CyclotomicScalar(Rational v) : order_(1), coeffs_{std::move(v)} {  // NOLINT(google-explicit-constructor)
        coeffs_[0].canonicalize();
    }
    /// Element with the given power-basis coordinates; `coeffs` may be shorter
    /// than phi(order) (missing entries are zero) or longer (reduced mod Phi_n).
    CyclotomicScalar(int order, std::vector<Rational> coeffs);

    /// zeta_n^k.
    static CyclotomicScalar root_of_unity(int n, long k);

    int order() const noexcept { return order_; }
    const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const noexcept { return order_ == 1; }
    /// Throws MalformedInput if the value is irrational.
    const Rational& to_rational() const;

    /// Same value expressed in Q(zeta_m); requires order() | m.
    CyclotomicScalar lifted(int m) const;

    /// Complex conjugation zeta -> zeta^{-1}.
    CyclotomicScalar conj() const;
    /// Trace down to Q: sum of all Galois conjugates.
    Rational trace() const;
    CyclotomicScalar inverse() const;

    CyclotomicScalar& operator+=(const CyclotomicScalar& o);
    CyclotomicScalar& operator-=(const CyclotomicScalar& o);
    CyclotomicScalar& operator*=(const CyclotomicScalar& o);
    CyclotomicScalar& operator/=(const CyclotomicScalar& o);

    friend CyclotomicScalar operator+(CyclotomicScalar a, const CyclotomicScalar& b) { return a += b; }
    friend CyclotomicScalar operator-(CyclotomicScalar a, const CyclotomicScalar& b) { return a -= b; }
    friend CyclotomicScalar operator*(CyclotomicScalar a, const CyclotomicScalar& b) { return a *= b; }
    friend CyclotomicScalar operator/(CyclotomicScalar a, const CyclotomicScalar& b) { return a /= b; }
    CyclotomicScalar operator-() const;

    friend bool operator==(const CyclotomicScalar& a, const CyclotomicScalar& b);

    /// Total order used for deterministic sorting: trace first, then the
    /// power-basis coordinates in Q(zeta_lcm). Not a field ordering.
    friend std::strong_ordering canonical_compare(const CyclotomicScalar& a, const CyclotomicScalar& b);

    /// "p/q" (or "p") for rationals, "n:[c0,c1,...]" otherwise.
    std::string to_string() const;
    static CyclotomicScalar parse(std::string_view text);

private:
    void normalize();

    int order_;
    std::vector<Rational> coeffs_;
};

using Scalar = CyclotomicScalar;

std::ostream& operator<<(std::ostream& os, const CyclotomicScalar& s);

int lcm_order(int a, int b);

}  // namespace qdepth
