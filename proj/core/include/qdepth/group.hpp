#pragma once

#include "qdepth/caps.hpp"

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace qdepth {

/// Permutation of {0..d-1} stored as its image array. Products act on the
/// right: (x * y)(p) = y(x(p)), i.e. apply x first.
using Perm = std::vector<int>;

Perm perm_identity(int degree);
Perm perm_compose(const Perm& x, const Perm& y);
Perm perm_inverse(const Perm& x);
bool perm_is_valid(const Perm& x);
/// From 1-based images; throws MalformedInput if not a bijection.
Perm perm_from_images(const std::vector<int>& one_based);
std::vector<int> perm_to_images(const Perm& x);
/// From 1-based cycles.
Perm perm_from_cycles(int degree, const std::vector<std::vector<int>>& cycles);
/// Cycle notation with 1-based points, "()" for the identity.
std::string perm_cycle_string(const Perm& x);

struct PermHash {
    std::size_t operator()(const Perm& p) const noexcept;
};

struct ConjugacyClass {
    int rep;  // smallest element index in the class
    std::vector<int> members;
    std::size_t size() const noexcept { return members.size(); }
};

/// Finite permutation group with every element enumerated. Elements are
/// sorted lexicographically by image array, so index 0 is the identity.
class Group {
public:
    /// Breadth-first closure of the generators.
    static Group enumerate(int degree, const std::vector<Perm>& generators, const Caps& caps = {});

    int degree() const noexcept { return degree_; }
    int order() const noexcept { return static_cast<int>(elements_.size()); }
    const std::vector<Perm>& generators() const noexcept { return generators_; }
    /// Generator indices into the element list.
    const std::vector<int>& generator_indices() const noexcept { return gen_idx_; }

    const Perm& element(int i) const { return elements_[i]; }
    const std::vector<Perm>& elements() const noexcept { return elements_; }
    /// -1 if p is not in the group.
    int find(const Perm& p) const;
    int index_of(const Perm& p) const;

    static constexpr int identity() noexcept { return 0; }
    int mul(int a, int b) const;
    int inv(int a) const { return inv_[a]; }
    /// g^-1 h g
    int conj(int h, int g) const { return mul(mul(inv_[g], h), g); }
    int power(int a, long k) const;
    int element_order(int a) const { return elt_order_[a]; }
    int exponent() const noexcept { return exponent_; }
    bool is_abelian() const;
    bool is_transitive() const;

    const std::vector<ConjugacyClass>& classes() const noexcept { return classes_; }
    int class_of(int a) const { return class_of_[a]; }
    /// Class containing the k-th power of the representative of class c.
    int power_class(int c, long k) const;
    /// Class of the inverses of class c.
    int inverse_class(int c) const { return power_class(c, -1); }

    std::string describe() const;

private:
    void build_tables();
    void build_classes();

    int degree_ = 0;
    std::vector<Perm> generators_;
    std::vector<int> gen_idx_;
    std::vector<Perm> elements_;
    std::unordered_map<Perm, int, PermHash> index_;
    std::vector<int> inv_;
    std::vector<int> elt_order_;
    std::vector<std::int32_t> table_;  // full Cayley table for small groups
    int exponent_ = 1;
    std::vector<ConjugacyClass> classes_;
    std::vector<int> class_of_;
};

/// Subgroup of a Group, stored as a sorted list of element indices of the
/// parent. The parent must outlive the subgroup.
class Subgroup {
public:
    Subgroup() = default;
    static Subgroup generated(const Group& g, const std::vector<int>& gens);
    /// Verifies closure; throws MalformedInput otherwise.
    static Subgroup from_elements(const Group& g, std::vector<int> elems);
    static Subgroup whole(const Group& g);
    static Subgroup trivial(const Group& g);
    /// From 1-based generator image arrays.
    static Subgroup from_images(const Group& g, const std::vector<std::vector<int>>& gens);

    const Group& parent() const { return *parent_; }
    int order() const noexcept { return static_cast<int>(elems_.size()); }
    const std::vector<int>& elements() const noexcept { return elems_; }
    bool contains(int e) const { return mask_[e] != 0; }
    /// A small generating set chosen greedily in index order.
    std::vector<int> generators() const;
    /// Position of a parent element within elements(), or -1.
    int local_index(int e) const;

    Subgroup conjugate(int g) const;
    bool is_normal() const;
    bool is_subgroup_of(const Subgroup& o) const;

    /// The subgroup as a standalone Group on the same points. Element k of
    /// the result is elements()[k] of the parent (both orders are lex).
    Group as_group(const Caps& caps = {}) const;

    friend Subgroup intersect(const Subgroup& a, const Subgroup& b);
    friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.elems_ == b.elems_; }
    friend bool operator<(const Subgroup& a, const Subgroup& b) {
        if (a.elems_.size() != b.elems_.size()) return a.elems_.size() < b.elems_.size();
        return a.elems_ < b.elems_;
    }

private:
    const Group* parent_ = nullptr;
    std::vector<int> elems_;
    std::vector<char> mask_;
};

Subgroup intersect(const Subgroup& a, const Subgroup& b);
Subgroup join(const Subgroup& a, const Subgroup& b);
Subgroup normalizer(const Subgroup& h);
Subgroup centralizer(const Subgroup& h);

}  // namespace qdepth
