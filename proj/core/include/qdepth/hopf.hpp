#pragma once

#include "qdepth/caps.hpp"
#include "qdepth/group.hpp"
#include "qdepth/row_space.hpp"

#include <nlohmann/json_fwd.hpp>

#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace qdepth {

/// Element of H ⊗ H as sparse (left index, right index, coefficient) terms.
struct TensorTerm {
    int a;
    int b;
    Scalar c;
};
using Tensor2 = std::vector<TensorTerm>;

/// Finite-dimensional Hopf algebra given by structure constants on a basis
/// e_0..e_{d-1}. Axioms are checked by verify(), which every constructor calls.
class HopfAlgebra {
public:
    HopfAlgebra() = default;
    /// mult[i*d+j] = e_i e_j, comult[i] = Δ(e_i), antipode[i] = S(e_i).
    HopfAlgebra(int field_order, std::vector<std::string> labels, std::vector<SparseVec> mult, SparseVec unit,
                std::vector<Tensor2> comult, Vec counit, std::vector<SparseVec> antipode);

    int dim() const noexcept { return d_; }
    int field_order() const noexcept { return field_order_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const SparseVec& unit() const noexcept { return unit_; }
    const SparseVec& basis_product(int i, int j) const { return mult_[static_cast<std::size_t>(i) * d_ + j]; }
    const Tensor2& basis_coproduct(int i) const { return comult_[i]; }
    const Scalar& basis_counit(int i) const { return counit_[i]; }
    const SparseVec& basis_antipode(int i) const { return antipode_[i]; }

    SparseVec multiply(const SparseVec& x, const SparseVec& y) const;
    Tensor2 coproduct(const SparseVec& x) const;
    Scalar counit(const SparseVec& x) const;
    SparseVec antipode(const SparseVec& x) const;
    SparseVec basis_vector(int i) const { return {{i, Scalar(1)}}; }

    /// Throws AssertionFailure naming the first failed axiom.
    void verify() const;

    /// Text form of an element using the basis labels.
    std::string format(const SparseVec& x) const;

private:
    /// Basis indices whose right-normed products span H.
    std::vector<int> right_generators() const;

    int d_ = 0;
    int field_order_ = 1;
    std::vector<std::string> labels_;
    std::vector<SparseVec> mult_;
    SparseVec unit_;
    std::vector<Tensor2> comult_;
    Vec counit_;
    std::vector<SparseVec> antipode_;
};

/// Hopf subalgebra R ⊆ H given by a basis of row vectors in H.
struct SubalgebraEmbedding {
    const HopfAlgebra* parent = nullptr;
    std::string name;
    std::vector<SparseVec> basis;
    RowSpace span{0};

    int dim() const noexcept { return static_cast<int>(basis.size()); }
};
/// Checks rank, unit, closure under multiplication, Δ and S, and that dim R
/// divides dim H. Throws MalformedInput otherwise.
SubalgebraEmbedding make_subalgebra(const HopfAlgebra& h, std::vector<SparseVec> rows, std::string name = "R");
/// Smallest subalgebra containing the generators, then verified as above.
SubalgebraEmbedding generated_subalgebra(const HopfAlgebra& h, const std::vector<SparseVec>& gens,
                                         std::string name = "R");
SubalgebraEmbedding trivial_subalgebra(const HopfAlgebra& h);
SubalgebraEmbedding whole_subalgebra(const HopfAlgebra& h);

/// kG with basis the group elements in Group order.
HopfAlgebra build_group_algebra(const Group& g);
/// k[K] inside kG.
SubalgebraEmbedding group_subalgebra(const HopfAlgebra& kg, const Subgroup& k);

/// ū_q(sl_2) on the PBW basis K^a E^b F^c (index a n^2 + b n + c) with
/// R1 = <K,F>, R2 = <K,E>, B = <K>. n odd >= 3 uses q = ζ_n; n = 2 is the
/// 8-dimensional algebra with K^2 = 1, E^2 = F^2 = 0, EF = FE, KE = -EK, KF = -FK.
struct SmallQuantumGroup {
    int n = 0;
    HopfAlgebra h;
    int pbw(int a, int b, int c) const { return (a * n + b) * n + c; }
};
SmallQuantumGroup build_small_quantum_group(int n);
/// Subalgebras of a small quantum group: "R1", "R2" or "B".
SubalgebraEmbedding quantum_subalgebra(const SmallQuantumGroup& u, const std::string& which);

/// Finite-dimensional right H-module: act[h][j] = e_j · e_h.
struct RightModule {
    int dim = 0;
    std::vector<std::vector<SparseVec>> act;
    SparseVec apply(const SparseVec& v, int h) const;
};
RightModule regular_module(const HopfAlgebra& h);
/// M ⊗ N with the diagonal action through Δ. Throws CapExceeded past
/// max_tensor_dim.
RightModule tensor_modules(const HopfAlgebra& h, const RightModule& m, const RightModule& n, const Caps& caps = {});

/// Q = H / R⁺H. Basis vectors are the images of e_{rep[i]}.
struct QuotientModule {
    const HopfAlgebra* parent = nullptr;
    int dim = 0;
    RowSpace rplus_h{0};
    std::vector<int> reps;
    RightModule module;
    std::vector<Tensor2> coproduct;  // Δ_Q of the basis vectors
    Vec counit;
    Vec project(const SparseVec& x) const { return rplus_h.quotient_coords(x); }
    /// Coordinates of 1̄.
    Vec one() const;
};
QuotientModule quotient_module(const HopfAlgebra& h, const SubalgebraEmbedding& r);

/// Q^{⊗n} by iterated coproducts; n = 1 returns Q's module.
RightModule tensor_power_action(const HopfAlgebra& h, const QuotientModule& q, int n, const Caps& caps = {});

/// The map m ⊗ h ↦ m h_1 ⊗ h_2 from M ⊗ H (action on H only) to M ⊗ H
/// (diagonal action): true if it is an H-linear bijection.
bool fundamental_iso_check(const HopfAlgebra& h, const RightModule& m, const Caps& caps = {});

struct IdealSubspace {
    RowSpace space{0};
    bool right_ideal = false;
    bool two_sided = false;
    bool hopf_ideal = false;
    int dim() const noexcept { return space.dim(); }
};
IdealSubspace classify_ideal(const HopfAlgebra& h, RowSpace space);

/// Ann M = { x : M x = 0 }.
RowSpace module_annihilator(const HopfAlgebra& h, const RightModule& m);

struct AnnihilatorChain {
    std::vector<IdealSubspace> chain;  // chain[n-1] = Ann Q^{⊗n}
    /// Least n with Ann Q^{⊗n} a Hopf ideal; unset if a cap stopped the chain.
    std::optional<int> ell_q;
    /// Largest n reached when the chain was cut by a cap.
    std::optional<int> ell_lower_bound;
    std::optional<IdealSubspace> hopf_core;
    /// Ann Q^{⊗ℓ} = Ann Q^{⊗(ℓ+1)} was checked (false when ℓ+1 is over the cap).
    bool stabilization_checked = false;
};
AnnihilatorChain annihilator_chain(const HopfAlgebra& h, const QuotientModule& q, const Caps& caps = {});

struct IntegralReport {
    SparseVec t_r, t_h;
    /// m_H on the basis of H; m_R on the basis rows of R.
    Vec m_h, m_r;
    std::vector<Vec> q_integral_basis;
    bool frobenius = false;
    bool semisimple_extension = false;
    bool unimodular = false;
    /// q ↦ t_R · (preimage) is a bijection Q → t_R H.
    bool q_iso_trh = false;
};
/// Right integrals and modular functions of R and H; asserts
/// q_integral_basis ≠ 0 ⇔ frobenius and the Q ≅ t_R H map.
IntegralReport integrals_and_modular(const HopfAlgebra& h, const SubalgebraEmbedding& r, const QuotientModule& q);
/// Right integral space of a subalgebra; throws AssertionFailure unless 1-dimensional.
SparseVec right_integral(const HopfAlgebra& h, const SubalgebraEmbedding& r);

/// Trace ideal of M in H: sum of images of all f ∈ Hom_H(M, H).
RowSpace trace_ideal(const HopfAlgebra& h, const RightModule& m, const Caps& caps = {});

struct TraceIdealChain {
    std::vector<RowSpace> chain;  // chain[n-1] = τ(Q^{⊗n})
    std::optional<int> l_q;
    bool partial = false;
    /// τ(Q) = H t_R H
    bool htrh_check = false;
    RowSpace htrh{0};
};
TraceIdealChain trace_ideals(const HopfAlgebra& h, const QuotientModule& q, const SparseVec& t_r, int n_max,
                             const Caps& caps = {});

struct IdealizerReport {
    RowSpace t{0};
    int dim_end_q = 0;
    bool normal = false;
};
IdealizerReport idealizer_and_endq(const HopfAlgebra& h, const SubalgebraEmbedding& r, const QuotientModule& q);

RowSpace center(const HopfAlgebra& h);
struct FaithfulReport {
    bool rplus_h_meets_center_trivially = false;
    bool ann_q_zero = false;
};
/// Both sides computed separately; throws AssertionFailure if they disagree.
FaithfulReport faithful_check(const HopfAlgebra& h, const QuotientModule& q);

struct LinearDisjointReport {
    int dim_r = 0, dim_k = 0, dim_b = 0, dim_rk = 0;
    bool linear_disjoint = false;
    /// Q^K_B → Q^H_R is a K-module isomorphism; only checked when disjoint.
    std::optional<bool> quotient_iso;
};
LinearDisjointReport linear_disjoint_check(const HopfAlgebra& h, const SubalgebraEmbedding& r,
                                           const SubalgebraEmbedding& k);

/// Right R-module W: act[i][j] = w_j · r_i for the basis rows r_i of R.
struct SubalgebraModule {
    int dim = 0;
    std::vector<std::vector<SparseVec>> act;
};
SubalgebraModule restrict_regular(const HopfAlgebra& h, const SubalgebraEmbedding& r);
SubalgebraModule trivial_module(const SubalgebraEmbedding& r);

struct UlbrichReport {
    int dim_x = 0;
    int dim_coinvariants = 0;
    bool bijective = false;
};
/// X = W ⊗_R H, X^{co Q}, and the map X^{co Q} ⊗_R H → X.
UlbrichReport ulbrich_verify(const HopfAlgebra& h, const SubalgebraEmbedding& r, const QuotientModule& q,
                             const SubalgebraModule& w, const Caps& caps = {});

/// dim Q^H_K = dim(⁺Q^R_K) dim H / dim R + dim Q^H_R for K ⊆ R ⊆ H.
bool tower_dimension_check(const HopfAlgebra& h, const SubalgebraEmbedding& r, const SubalgebraEmbedding& k);

bool is_normal_subalgebra(const HopfAlgebra& h, const SubalgebraEmbedding& k);
/// H K⁺ ⊆ core for a normal Hopf subalgebra K.
bool core_containment_check(const HopfAlgebra& h, const SubalgebraEmbedding& k, const RowSpace& core);

/// Everything above for one pair, as printed by the command line tool.
struct HopfPairReport {
    int dim_h = 0, dim_r = 0, dim_q = 0;
    AnnihilatorChain ann;
    IntegralReport integrals;
    TraceIdealChain traces;
    IdealizerReport idealizer;
    FaithfulReport faithful;
    int dim_rplus_h = 0;
};
HopfPairReport analyze_hopf_pair(const HopfAlgebra& h, const SubalgebraEmbedding& r, int trace_n_max = 4,
                                 const Caps& caps = {});
nlohmann::json hopf_pair_report_to_json(const HopfAlgebra& h, const HopfPairReport& r);

nlohmann::json hopf_to_json(const HopfAlgebra& h, const std::vector<SubalgebraEmbedding>& subs = {});
/// Parses the schema written by hopf_to_json and verifies the axioms.
HopfAlgebra hopf_from_json(const nlohmann::json& j);
/// Subalgebras listed under "subalgebras" in the same document.
std::vector<SubalgebraEmbedding> subalgebras_from_json(const HopfAlgebra& h, const nlohmann::json& j);

}  // namespace qdepth
