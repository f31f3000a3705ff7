#pragma once

#include "qdepth/group.hpp"

#include <vector>

namespace qdepth {

struct DoubleCoset {
    int rep;                   // smallest element index of K g H
    std::vector<int> members;  // sorted
    std::size_t size() const noexcept { return members.size(); }
};

/// K \ G / H, ordered by representative.
std::vector<DoubleCoset> double_cosets(const Subgroup& k, const Subgroup& h);

/// Right cosets Hx of H in its parent. coset_of[g] is the coset containing g,
/// reps[c] the smallest element of coset c.
struct RightCosets {
    std::vector<int> reps;
    std::vector<int> coset_of;
    int count() const noexcept { return static_cast<int>(reps.size()); }
    /// Index of (Hx) g.
    int act(const Group& g, int coset, int elem) const { return coset_of[g.mul(reps[coset], elem)]; }
};
RightCosets right_cosets(const Subgroup& h);

struct CoreWitness {
    Subgroup core;
    /// g_1..g_r with H ∩ H^{g_1} ∩ ... ∩ H^{g_r} = core and r minimal.
    std::vector<int> witness;
    int r() const noexcept { return static_cast<int>(witness.size()); }
};
CoreWitness core_and_witness(const Subgroup& h);

struct IntersectionChain {
    /// F_0, F_1, ..., F_n with F_{n-1} == F_n; each level sorted.
    std::vector<std::vector<Subgroup>> levels;
    int n = 0;
    int d_c_ev = 0;
    /// d_c lies in [d_c_ev - 1, d_c_ev] unless d_c_is_one.
    int bracket_low = 0;
    int bracket_high = 0;
    /// G = H C_G(H)
    bool d_c_is_one = false;
};
IntersectionChain intersection_chain(const Subgroup& h);

/// Every class of H is mapped onto itself by conjugation with every
/// generator of G.
bool depth_one_adjoint_test(const Subgroup& h);

struct TIResult {
    bool ti = false;
    bool normal = false;
};
/// H ∩ H^g = 1 for all g outside N_G(H). Normal subgroups report
/// {false, true}.
TIResult is_TI_subgroup(const Subgroup& h);

/// Distinct conjugates H^g of H.
std::vector<Subgroup> conjugates(const Subgroup& h);

/// Canonical key for the conjugacy class of H: the lexicographically least
/// element list among its conjugates.
std::vector<int> conjugacy_key(const Subgroup& h);

/// All subgroups, sorted by (order, elements).
std::vector<Subgroup> all_subgroups(const Group& g);

/// One representative per conjugacy class (the one with the least key),
/// sorted by (order, key).
std::vector<Subgroup> subgroup_class_reps(const Group& g);

}  // namespace qdepth
