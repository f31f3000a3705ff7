#include "doctest.h"

#include "qdepth/catalog.hpp"
#include "qdepth/depth.hpp"
#include "qdepth/errors.hpp"
#include "qdepth/mackey.hpp"
#include "qdepth/subgroups.hpp"

#include <memory>
#include <random>

using namespace qdepth;

namespace {

Group make(const CatalogEntry& e) { return Group::enumerate(e.degree, e.generators); }

std::vector<int> transposition(int n, int a, int b) {
    std::vector<int> t(n);
    for (int i = 0; i < n; ++i) t[i] = i + 1;
    std::swap(t[a - 1], t[b - 1]);
    return t;
}

// S_{n-1} on the first n-1 points
Subgroup point_stabilizer(const Group& g, int n) {
    std::vector<std::vector<int>> gens;
    for (int k = 1; k < n - 1; ++k) gens.push_back(transposition(n, k, k + 1));
    return Subgroup::from_images(g, gens);
}

ClassFunction pointwise_power(const ClassFunction& f, int n) {
    ClassFunction out(f.size(), Scalar(1));
    for (int i = 0; i < n; ++i)
        for (std::size_t c = 0; c < f.size(); ++c) out[c] = out[c] * f[c];
    return out;
}

// Induction from R to its parent by the defining formula, evaluated at class reps.
ClassFunction induce(const Subgroup& r, const Group& rg, const ClassFunction& f) {
    const Group& g = r.parent();
    ClassFunction out;
    for (const auto& c : g.classes()) {
        Scalar acc;
        for (int x = 0; x < g.order(); ++x) {
            const int y = g.conj(c.rep, x);
            const int loc = r.local_index(y);
            if (loc >= 0) acc += f[rg.class_of(loc)];
        }
        out.push_back(acc / Scalar(r.order()));
    }
    return out;
}

Subgroup localize(const Subgroup& s, const Subgroup& h, const Group& hg) {
    std::vector<int> loc;
    for (int e : s.elements()) loc.push_back(h.local_index(e));
    return Subgroup::from_elements(hg, loc);
}

}  // namespace

TEST_CASE("Mackey restriction examples") {
    const Group a4 = make(alternating_group(4));
    const Subgroup c3 = Subgroup::from_images(a4, {{2, 3, 1, 4}});
    const auto ti = mackey_restrict(c3, c3);
    REQUIRE(ti.summands.size() == 2);
    CHECK(ti.summands[0].sub.order() == 1);
    CHECK(ti.summands[0].multiplicity == 1);
    CHECK(ti.summands[1].sub == c3);
    CHECK(ti.summands[1].multiplicity == 1);

    const auto whole = mackey_restrict(Subgroup::whole(a4), c3);
    REQUIRE(whole.summands.size() == 1);
    CHECK(whole.summands[0].sub == c3);

    const Subgroup v4 = Subgroup::from_images(a4, {{2, 1, 4, 3}, {3, 4, 1, 2}});
    const auto normal = mackey_restrict(v4, v4);
    REQUIRE(normal.summands.size() == 1);
    CHECK(normal.summands[0].sub == v4);
    CHECK(normal.summands[0].multiplicity == 3);
}

TEST_CASE("Mackey restriction matches restricted permutation characters") {
    std::mt19937 rng(3);
    for (const auto& e : {symmetric_group(4), dihedral_group(6), alternating_group(4), dicyclic_group(3)}) {
        const Group g = make(e);
        const auto subs = all_subgroups(g);
        std::uniform_int_distribution<std::size_t> pick(0, subs.size() - 1);
        for (int trial = 0; trial < 15; ++trial) {
            const Subgroup& k = subs[pick(rng)];
            const Subgroup& h = subs[pick(rng)];
            const auto res = mackey_restrict(k, h);
            const Group hg = h.as_group();
            const auto fusion = class_fusion(h, hg);
            const ClassFunction expect = restrict_class_function(permutation_character(k), fusion);
            ClassFunction got(hg.classes().size());
            long dim = 0;
            for (const auto& s : res.summands) {
                const Subgroup loc = localize(s.sub, h, hg);
                const auto pc = permutation_character(loc);
                for (std::size_t c = 0; c < got.size(); ++c) got[c] += Scalar(s.multiplicity) * pc[c];
                dim += s.multiplicity * (h.order() / s.sub.order());
            }
            CHECK(got == expect);
            CHECK(dim == g.order() / k.order());
        }
    }
}

TEST_CASE("tensor power examples") {
    const Group a4 = make(alternating_group(4));
    const Subgroup c3 = Subgroup::from_images(a4, {{2, 3, 1, 4}});
    const auto one = q_tensor_decomposition(c3, 1);
    REQUIRE(one.summands.size() == 1);
    CHECK(conjugacy_key(one.summands[0].sub) == conjugacy_key(c3));

    const auto two = q_tensor_decomposition(c3, 2);
    REQUIRE(two.summands.size() == 2);
    CHECK(two.summands[0].sub.order() == 1);
    CHECK(two.summands[1].sub.order() == 3);
    CHECK(two.dimension() == 16);

    const Subgroup v4 = Subgroup::from_images(a4, {{2, 1, 4, 3}, {3, 4, 1, 2}});
    const auto nn = q_tensor_decomposition(v4, 2);
    REQUIRE(nn.summands.size() == 1);
    CHECK(nn.summands[0].sub == v4);
    CHECK(nn.summands[0].multiplicity == 3);

    // S2 in S3: Q^{⊗3} has dimension 27
    const Group s3 = make(symmetric_group(3));
    const auto three = q_tensor_decomposition(Subgroup::from_images(s3, {{2, 1, 3}}), 3);
    CHECK(three.dimension() == 27);
}

TEST_CASE("tensor power characters equal powers of the permutation character") {
    for (const auto& e : builtin_catalog(24)) {
        const Group g = make(e);
        for (const auto& h : subgroup_class_reps(g)) {
            CAPTURE(e.name);
            CAPTURE(h.order());
            const auto pc = permutation_character(h);
            for (int n = 1; n <= 3; ++n) CHECK(q_tensor_decomposition(h, n).character() == pointwise_power(pc, n));
        }
    }
}

TEST_CASE("tensor summand cap") {
    Caps caps;
    caps.max_tensor_summands = 3;
    const Group s4 = make(symmetric_group(4));
    CHECK_THROWS_AS(q_tensor_decomposition(point_stabilizer(s4, 4), 3, caps), CapExceeded);
}

TEST_CASE("core bounds for symmetric towers") {
    for (int n = 3; n <= 5; ++n) {
        CAPTURE(n);
        const Group g = make(symmetric_group(n));
        const Subgroup h = point_stabilizer(g, n);
        const Group hg = h.as_group();
        const auto r = analyze_pair(compute_character_table(g), h, hg, compute_character_table(hg)).report;
        const auto cb = core_depth_bound(h, r.d_h);
        CHECK(cb.r == n - 2);
        CHECK(cb.bound_dh == *r.d_h);  // tight
        const auto comb = combinatorial_bound_check(h, r.d_h);
        CHECK(comb.d_c_ev == 2 * (n - 1));
        CHECK(*r.d_h == comb.d_c_ev + 1);
    }
}

TEST_CASE("normal and TI bounds") {
    const Group a4 = make(alternating_group(4));
    const Subgroup v4 = Subgroup::from_images(a4, {{2, 1, 4, 3}, {3, 4, 1, 2}});
    const auto nb = core_depth_bound(v4);
    CHECK(nb.r == 0);
    CHECK(nb.bound_dh == 3);
    CHECK(combinatorial_bound_check(v4).d_c_ev == 2);

    const Subgroup c3 = Subgroup::from_images(a4, {{2, 3, 1, 4}});
    const Group hg = c3.as_group();
    const auto r = analyze_pair(compute_character_table(a4), c3, hg, compute_character_table(hg)).report;
    CHECK(r.d_h == 5);
    const auto cb = core_depth_bound(c3, r.d_h);
    CHECK(cb.r == 1);
    CHECK(cb.bound_dh == 5);
    const auto comb = combinatorial_bound_check(c3, r.d_h);
    CHECK(comb.d_c_ev == 4);
    CHECK(comb.holds == true);
}

TEST_CASE("bounds hold on the corpus") {
    for (const auto& e : builtin_catalog(24)) {
        const Group g = make(e);
        const auto tg = compute_character_table(g);
        for (const auto& h : subgroup_class_reps(g)) {
            CAPTURE(e.name);
            CAPTURE(h.order());
            const Group hg = h.as_group();
            const auto r = analyze_pair(tg, h, hg, compute_character_table(hg)).report;
            CHECK(core_depth_bound(h, r.d_h).holds == true);
            CHECK(combinatorial_bound_check(h, r.d_h).holds == true);
        }
    }
}

TEST_CASE("Hecke algebras") {
    const Group s3 = make(symmetric_group(3));
    const auto whole = hecke_algebra(Subgroup::whole(s3));
    CHECK(whole.dim() == 1);
    CHECK(whole.mu[0][0][0] == 1);

    const auto s2 = hecke_algebra(Subgroup::from_images(s3, {{2, 1, 3}}));
    CHECK(s2.dim() == 2);
    CHECK(s2.commutative);
    CHECK(s2.index == std::vector<long>{1, 2});

    // K trivial: the group multiplication table
    const auto triv = hecke_algebra(Subgroup::trivial(s3));
    REQUIRE(triv.dim() == 6);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            for (int k = 0; k < 6; ++k) {
                const int x = triv.reps[i], y = triv.reps[j], z = triv.reps[k];
                CHECK(triv.mu[i][j][k] == Rational(s3.mul(x, y) == z ? 1 : 0));
            }
    CHECK_FALSE(triv.commutative);

    for (const auto& e : builtin_catalog(24)) {
        const Group g = make(e);
        for (const auto& k : subgroup_class_reps(g)) {
            CAPTURE(e.name);
            HeckeAlgebra a;
            REQUIRE_NOTHROW(a = hecke_algebra(k));
            CHECK(a.dim() == static_cast<int>(double_cosets(k, k).size()));
        }
    }
}

TEST_CASE("tower transitivity of permutation characters") {
    const Group g = make(symmetric_group(4));
    const auto subs = all_subgroups(g);
    int towers = 0;
    for (const auto& r : subs)
        for (const auto& k : subs) {
            if (!k.is_subgroup_of(r) || towers > 40) continue;
            const Group rg = r.as_group();
            const ClassFunction q_rk = permutation_character(localize(k, r, rg));
            CHECK(induce(r, rg, q_rk) == permutation_character(k));
            ++towers;
        }
    CHECK(towers > 10);
}
