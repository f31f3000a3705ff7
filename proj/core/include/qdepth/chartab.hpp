#pragma once

#include "qdepth/caps.hpp"
#include "qdepth/group.hpp"
#include "qdepth/matrix.hpp"

#include <nlohmann/json_fwd.hpp>

#include <vector>

namespace qdepth {

using ClassFunction = std::vector<Scalar>;

/// Exact table of irreducible characters. Columns follow group.classes().
struct CharacterTable {
    const Group* group = nullptr;
    int exponent = 1;
    std::vector<ClassFunction> irr;
    std::vector<int> degrees;
    /// Prime used by the modular eigenvector step (0 when imported).
    long prime = 0;

    int num_classes() const { return static_cast<int>(group->classes().size()); }
    int num_irr() const { return static_cast<int>(irr.size()); }

    /// (1/|G|) sum_C |C| f(C) conj(g(C))
    Scalar inner(const ClassFunction& f, const ClassFunction& g) const;
    /// Throws AssertionFailure unless both orthogonality relations and
    /// sum of squared degrees = |G| hold exactly.
    void verify() const;
};

/// Dixon-Schneider: common eigenvectors of the class multiplication
/// matrices over GF(p), lifted to Q(zeta_e) through eigenvalue
/// multiplicities. Retries with the next admissible prime on any failure.
CharacterTable compute_character_table(const Group& g, const Caps& caps = {});

/// Orders rows by degree, then by values (descending canonical order per
/// class, so the trivial character comes first).
void sort_irreducibles(CharacterTable& t);

nlohmann::json character_table_to_json(const CharacterTable& t);
/// Reads {"exponent", "classes": [{"rep", "size"}], "irreducibles"} and
/// reorders columns to match g's classes. Verifies orthogonality.
CharacterTable character_table_from_json(const Group& g, const nlohmann::json& j);

/// Same group and equal rows up to permutation.
bool tables_agree(const CharacterTable& a, const CharacterTable& b);

/// H-class index -> G-class index.
struct ClassFusion {
    std::vector<int> map;
};
ClassFusion class_fusion(const Subgroup& h, const Group& h_group);

/// Restriction multiplicities m_ij = <chi_j|_H, phi_i>, rows = H
/// irreducibles, columns = G irreducibles.
struct InclusionMatrix {
    ExactMatrix m;
    /// Table index of each displayed row / column.
    std::vector<int> row_labels;
    std::vector<int> col_labels;
    int p() const { return m.rows(); }
    int q() const { return m.cols(); }
};

/// Rows and columns are laid out by a breadth-first walk of the bipartite
/// inclusion graph that starts at the trivial character of G, which puts
/// the matrix in the usual block shape.
InclusionMatrix inclusion_matrix(const CharacterTable& tab_g, const CharacterTable& tab_h, const ClassFusion& fusion);

/// Matrix in table order (no layout), used by the invariant checks.
ExactMatrix raw_inclusion_matrix(const CharacterTable& tab_g, const CharacterTable& tab_h, const ClassFusion& fusion);

/// Number of right cosets Hx fixed by each G-class representative.
ClassFunction permutation_character(const Subgroup& h);

/// Restriction of a G class function to H.
ClassFunction restrict_class_function(const ClassFunction& f, const ClassFusion& fusion);

}  // namespace qdepth
