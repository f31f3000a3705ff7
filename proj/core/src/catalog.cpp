#include "qdepth/catalog.hpp"

#include "qdepth/errors.hpp"

#include <algorithm>
#include <numeric>

namespace qdepth {

namespace {

Perm cycle_perm(int degree, int first, int last) {
    Perm p = perm_identity(degree);
    for (int i = first; i < last; ++i) p[i] = i + 1;
    p[last] = first;
    return p;
}

}  // namespace

CatalogEntry cyclic_group(int n) {
    if (n < 1) throw MalformedInput("cyclic group order must be positive");
    if (n == 1) return {"C1", 1, {}, 1};
    return {"C" + std::to_string(n), n, {cycle_perm(n, 0, n - 1)}, n};
}

CatalogEntry dihedral_group(int m) {
    if (m < 2) throw MalformedInput("dihedral group needs m >= 2");
    if (m == 2) {
        auto e = regular_representation("V4", 4, {perm_from_cycles(4, {{1, 2}, {3, 4}}), perm_from_cycles(4, {{1, 3}, {2, 4}})});
        return e;
    }
    Perm r = cycle_perm(m, 0, m - 1);
    Perm s(m);
    for (int i = 0; i < m; ++i) s[i] = (m - i) % m;
    return {"D" + std::to_string(2 * m), m, {r, s}, 2 * m};
}

CatalogEntry dicyclic_group(int m) {
    if (m < 2) throw MalformedInput("dicyclic group needs m >= 2");
    // elements x^a y^b, 0 <= a < 2m, b in {0,1}; y x = x^-1 y, y^2 = x^m
    const int n = 2 * m, order = 4 * m;
    auto idx = [n](int a, int b) { return ((a % n + n) % n) + n * b; };
    auto mul = [&](int a, int b, int c, int d) {
        int e = a + (b ? -c : c);
        int f = b + d;
        if (f == 2) {
            e += m;
            f = 0;
        }
        return idx(e, f);
    };
    Perm x(order), y(order);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < 2; ++b) {
            x[idx(a, b)] = mul(a, b, 1, 0);
            y[idx(a, b)] = mul(a, b, 0, 1);
        }
    const std::string name = m == 2 ? "Q8" : (m == 4 ? "Q16" : "Dic" + std::to_string(order));
    return {name, order, {x, y}, order};
}

CatalogEntry symmetric_group(int n) {
    if (n < 1) throw MalformedInput("symmetric group degree must be positive");
    if (n == 1) return {"S1", 1, {}, 1};
    if (n == 2) return {"S2", 2, {perm_from_cycles(2, {{1, 2}})}, 2};
    int order = 1;
    for (int k = 2; k <= n; ++k) order *= k;
    return {"S" + std::to_string(n), n, {cycle_perm(n, 0, n - 1), perm_from_cycles(n, {{1, 2}})}, order};
}

CatalogEntry alternating_group(int n) {
    if (n < 3) throw MalformedInput("alternating group needs n >= 3");
    int order = 1;
    for (int k = 3; k <= n; ++k) order *= k;
    Perm a = perm_from_cycles(n, {{1, 2, 3}});
    if (n == 3) return {"A3", 3, {a}, 3};
    Perm b = (n % 2 == 1) ? cycle_perm(n, 0, n - 1) : cycle_perm(n, 1, n - 1);
    return {"A" + std::to_string(n), n, {a, b}, order};
}

CatalogEntry regular_representation(const std::string& name, int degree, const std::vector<Perm>& gens) {
    Group g = Group::enumerate(degree, gens);
    std::vector<Perm> reg;
    for (int s : g.generator_indices()) {
        Perm p(g.order());
        for (int i = 0; i < g.order(); ++i) p[i] = g.mul(i, s);
        reg.push_back(std::move(p));
    }
    return {name, g.order(), reg, g.order()};
}

CatalogEntry direct_product(const std::string& name, const CatalogEntry& a, const CatalogEntry& b) {
    const int d = a.degree + b.degree;
    std::vector<Perm> gens;
    for (const auto& p : a.generators) {
        Perm q = perm_identity(d);
        for (int i = 0; i < a.degree; ++i) q[i] = p[i];
        gens.push_back(q);
    }
    for (const auto& p : b.generators) {
        Perm q = perm_identity(d);
        for (int i = 0; i < b.degree; ++i) q[a.degree + i] = a.degree + p[i];
        gens.push_back(q);
    }
    return regular_representation(name, d, gens);
}

namespace {

// SL(2,3) acting on the eight nonzero row vectors of F_3^2 by v -> vM.
CatalogEntry sl23() {
    std::vector<std::pair<int, int>> pts;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            if (a || b) pts.emplace_back(a, b);
    auto perm_of = [&](int m00, int m01, int m10, int m11) {
        Perm p(8);
        for (int i = 0; i < 8; ++i) {
            auto [a, b] = pts[i];
            std::pair<int, int> v{(a * m00 + b * m10) % 3, (a * m01 + b * m11) % 3};
            p[i] = static_cast<int>(std::find(pts.begin(), pts.end(), v) - pts.begin());
        }
        return p;
    };
    return {"SL(2,3)", 8, {perm_of(1, 1, 0, 1), perm_of(0, 2, 1, 0)}, 24};
}

}  // namespace

std::vector<CatalogEntry> builtin_catalog(int max_order) {
    std::vector<CatalogEntry> all;
    for (int n = 1; n <= 24; ++n) all.push_back(cyclic_group(n));
    all.push_back(dihedral_group(2));
    for (int m = 3; m <= 12; ++m) all.push_back(dihedral_group(m));
    for (int m = 2; m <= 6; ++m) all.push_back(dicyclic_group(m));
    all.push_back(alternating_group(4));
    all.push_back(symmetric_group(4));
    all.push_back(sl23());
    all.push_back({"F20", 5, {perm_from_cycles(5, {{1, 2, 3, 4, 5}}), perm_from_cycles(5, {{2, 3, 5, 4}})}, 20});
    all.push_back({"C7:C3", 7, {perm_from_cycles(7, {{1, 2, 3, 4, 5, 6, 7}}), perm_from_cycles(7, {{2, 3, 5}, {4, 7, 6}})}, 21});
    all.push_back(direct_product("C2xC4", cyclic_group(2), cyclic_group(4)));
    all.push_back(direct_product("C2^3", direct_product("V4", cyclic_group(2), cyclic_group(2)), cyclic_group(2)));
    all.push_back(direct_product("C3xC3", cyclic_group(3), cyclic_group(3)));
    all.push_back(direct_product("C2xC6", cyclic_group(2), cyclic_group(6)));
    all.push_back(direct_product("C4xC4", cyclic_group(4), cyclic_group(4)));
    all.push_back(direct_product("C2xC8", cyclic_group(2), cyclic_group(8)));
    all.push_back(direct_product("C2xD8", cyclic_group(2), dihedral_group(4)));
    all.push_back(direct_product("C2xQ8", cyclic_group(2), dicyclic_group(2)));
    all.push_back(direct_product("C3xS3", cyclic_group(3), symmetric_group(3)));
    all.push_back(direct_product("C3xC6", cyclic_group(3), cyclic_group(6)));
    all.push_back(direct_product("C2xC10", cyclic_group(2), cyclic_group(10)));
    all.push_back(direct_product("C2xA4", cyclic_group(2), alternating_group(4)));
    all.push_back(direct_product("C2xC12", cyclic_group(2), cyclic_group(12)));
    all.push_back(direct_product("C3xD8", cyclic_group(3), dihedral_group(4)));
    all.push_back(direct_product("C3xQ8", cyclic_group(3), dicyclic_group(2)));
    all.push_back(direct_product("C4xS3", cyclic_group(4), symmetric_group(3)));
    all.push_back(direct_product("C2xDic12", cyclic_group(2), dicyclic_group(3)));

    std::vector<CatalogEntry> out;
    for (auto& e : all)
        if (e.order <= max_order) out.push_back(std::move(e));
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.order < b.order; });
    return out;
}

}  // namespace qdepth
