#pragma once

#include "qdepth/chartab.hpp"
#include "qdepth/matrix.hpp"

#include <nlohmann/json_fwd.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qdepth {

/// Nonzero eigenvalues of B predicted from class data:
/// { |G:H| |C ∩ H| / |C| : C a class of G meeting H }.
struct EigenvalueSet {
    std::vector<Rational> values;  // distinct, increasing
    std::string source;            // "class-formula" or "minpoly"
    /// Every G-class meeting H does so in a single H-class.
    bool all_classes_restrict_to_one = false;
    int t() const noexcept { return static_cast<int>(values.size()); }
    /// 2t+1, or 2t-1 when all classes restrict to one.
    int depth_bound() const noexcept { return all_classes_restrict_to_one ? 2 * t() - 1 : 2 * t() + 1; }
};
EigenvalueSet eigenvalues_via_class_formula(const Subgroup& h, const Group& h_group);

struct QuiverEdge {
    int from;
    int to;
    long weight;
};
struct McKayQuiver {
    int vertices = 0;
    std::vector<std::string> labels;
    std::vector<QuiverEdge> edges;
};
McKayQuiver mckay_quiver(const ExactMatrix& c, const std::vector<std::string>& labels = {});

/// Group information that unlocks depth one and the class-formula checks.
struct PairContext {
    const Subgroup* h = nullptr;
    const Group* h_group = nullptr;
};

struct DepthReport {
    ExactMatrix m, b, c;
    std::vector<std::string> row_labels, col_labels;
    int budget = 0;

    std::optional<int> d_odd, d_ev, d_0, d_h;

    ExactPolynomial minpoly_b, minpoly_c;
    RationalRoots eigen_b, eigen_c;
    /// C m_B(C) = 0
    bool cm_relation = false;
    /// minpoly_C equals m_B ("m"), X m_B ("Xm") or m_B / X ("m/X")
    std::string minpoly_c_form;

    /// Perron-Frobenius root of C when the index is known.
    std::optional<Rational> index;
    std::optional<bool> pf_check;

    bool indecomposable_c = false;
    int c_components = 0;
    McKayQuiver quiver;

    /// Stabilization index of supp(e_0 C^n), n >= 0, column 0 the trivial character.
    std::optional<int> ell_c;
    /// Largest distance between subgroup vertices in a common component of
    /// the bipartite graph.
    int white_diameter = 0;

    std::optional<bool> adjoint_test;
    std::optional<EigenvalueSet> class_eigenvalues;
    std::optional<bool> eigen_match;

    /// d_0 <= d_h, when both are finite.
    std::optional<bool> conjecture_holds;

    std::map<std::string, std::string> method_tags;
};

/// Pattern rules on B = M M^t and C = M^t M. Throws MalformedInput when M has
/// a zero row or column or is not a nonnegative integer matrix, and
/// AssertionFailure when an internal cross-check fails.
DepthReport depth_report(const ExactMatrix& m, const std::optional<PairContext>& ctx = std::nullopt,
                         std::vector<std::string> row_labels = {}, std::vector<std::string> col_labels = {});

/// Tables, fusion and inclusion matrix for H <= G, then depth_report.
struct PairAnalysis {
    InclusionMatrix inclusion;
    DepthReport report;
};
PairAnalysis analyze_pair(const CharacterTable& tab_g, const Subgroup& h, const Group& h_group,
                          const CharacterTable& tab_h);

nlohmann::json depth_report_to_json(const DepthReport& r);
/// Re-derives every field from "M" and compares; throws AssertionFailure on
/// any mismatch, MalformedInput on schema errors.
void validate_depth_report_json(const nlohmann::json& j);
std::string depth_report_text(const DepthReport& r);

/// Graphviz text: subgroup irreducibles white, group irreducibles black.
std::string bipartite_dot(const DepthReport& r);
std::string quiver_dot(const McKayQuiver& q);

/// Reads {"M": [[...]], "row_labels"?, "col_labels"?}.
ExactMatrix inclusion_matrix_from_json(const nlohmann::json& j);

}  // namespace qdepth
