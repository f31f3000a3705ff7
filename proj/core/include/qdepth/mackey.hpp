#pragma once

#include "qdepth/caps.hpp"
#include "qdepth/chartab.hpp"
#include "qdepth/group.hpp"

#include <nlohmann/json_fwd.hpp>

#include <optional>
#include <vector>

namespace qdepth {

/// Multiset of permutation modules Q_S = k[S\B] over a base subgroup B.
/// Summands are stored by a canonical B-conjugate of S.
struct QSummand {
    Subgroup sub;
    long multiplicity = 0;
};
struct QSummandMultiset {
    Subgroup base;
    int power = 1;
    std::vector<QSummand> summands;  // sorted by (order, elements)
    /// Number of summands before merging conjugates.
    long raw_count = 0;

    long total_multiplicity() const;
    /// Sum of multiplicity * |base : S|.
    long dimension() const;
    /// Character on the classes of the parent group; only for base = G.
    ClassFunction character() const;
};

/// Q^G_K restricted to H: one summand K^g ∩ H per double coset K g H.
QSummandMultiset mackey_restrict(const Subgroup& k, const Subgroup& h);

/// Q^{⊗n} for Q = Q^G_H, built as Q^{⊗(m+1)} = ⊕ Q_S ⊗ Q_H with
/// Q_S ⊗ Q_H = ⊕_{b ∈ H\G/S} Q_{S ∩ H^b}. Throws CapExceeded past
/// max_tensor_summands raw summands.
QSummandMultiset q_tensor_decomposition(const Subgroup& h, int n, const Caps& caps = {});

struct CoreBound {
    int r = 0;
    int bound_dq = 1;  // r + 1
    int bound_dh = 3;  // 2r + 3
    bool separable = true;
    /// Set when a d_h value was supplied.
    std::optional<bool> holds;
};
/// r from core_and_witness. With `separable` (characteristic zero) and a
/// known d_h, throws AssertionFailure if d_h > 2r + 3.
CoreBound core_depth_bound(const Subgroup& h, std::optional<int> d_h = std::nullopt, bool separable = true);

struct CombinatorialBound {
    int d_c_ev = 0;
    int bracket_low = 0, bracket_high = 0;
    bool d_c_is_one = false;
    std::optional<bool> holds;  // d_h <= d_c_ev + 1
};
CombinatorialBound combinatorial_bound_check(const Subgroup& h, std::optional<int> d_h = std::nullopt);

/// Hecke algebra of (G, K) on b_i = (sum of the double coset K γ_i K) / |K|,
/// with b_i b_j = sum_k mu[i][j][k] b_k.
struct HeckeAlgebra {
    Subgroup k;
    std::vector<int> reps;          // γ_i, γ_0 = identity
    std::vector<long> index;        // ind γ_i = |K γ_i K| / |K|
    std::vector<std::vector<std::vector<Rational>>> mu;
    bool commutative = false;

    int dim() const noexcept { return static_cast<int>(reps.size()); }
};
/// Verifies associativity and the unit b_0 exactly; throws AssertionFailure.
HeckeAlgebra hecke_algebra(const Subgroup& k);

nlohmann::json summands_to_json(const QSummandMultiset& m);
nlohmann::json hecke_to_json(const HeckeAlgebra& a);

}  // namespace qdepth
