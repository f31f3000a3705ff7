#pragma once

#include "qdepth/group.hpp"

#include <string>
#include <vector>

namespace qdepth {

struct CatalogEntry {
    std::string name;
    int degree;
    std::vector<Perm> generators;
    int order;
};

CatalogEntry cyclic_group(int n);
/// Dihedral group of order 2m acting on m points (regular for m = 2).
CatalogEntry dihedral_group(int m);
/// Dicyclic group of order 4m (Q8 for m = 2), regular representation.
CatalogEntry dicyclic_group(int m);
CatalogEntry symmetric_group(int n);
CatalogEntry alternating_group(int n);

/// Right regular representation of the group generated by `gens`.
CatalogEntry regular_representation(const std::string& name, int degree, const std::vector<Perm>& gens);
/// A x B, realized transitively through the regular representation.
CatalogEntry direct_product(const std::string& name, const CatalogEntry& a, const CatalogEntry& b);

/// Transitive permutation groups of order <= max_order (at most 24 are
/// available), in a fixed order.
std::vector<CatalogEntry> builtin_catalog(int max_order);

}  // namespace qdepth
