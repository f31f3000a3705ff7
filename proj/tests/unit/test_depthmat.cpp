#include "doctest.h"

#include "qdepth/catalog.hpp"
#include "qdepth/depth.hpp"
#include "qdepth/errors.hpp"
#include "qdepth/subgroups.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <deque>
#include <memory>
#include <random>

using namespace qdepth;

namespace {

Group make(const CatalogEntry& e) { return Group::enumerate(e.degree, e.generators); }

struct Pair {
    std::unique_ptr<Group> g;
    Subgroup h;
    std::unique_ptr<Group> hg;
};

Pair pair_of(const CatalogEntry& e, const std::vector<std::vector<int>>& h_gens) {
    Pair p;
    p.g = std::make_unique<Group>(make(e));
    p.h = Subgroup::from_images(*p.g, h_gens);
    p.hg = std::make_unique<Group>(p.h.as_group());
    return p;
}

DepthReport report_for(const Pair& p) {
    const auto tg = compute_character_table(*p.g);
    const auto th = compute_character_table(*p.hg);
    return analyze_pair(tg, p.h, *p.hg, th).report;
}

Rational q(long v) { return Rational(v); }

// Bipartite distances, whites 0..p-1, blacks p..p+q-1.
std::vector<std::vector<int>> distances(const ExactMatrix& m) {
    const int p = m.rows(), n = p + m.cols();
    std::vector<std::vector<int>> d(n, std::vector<int>(n, -1));
    for (int s = 0; s < n; ++s) {
        d[s][s] = 0;
        std::deque<int> queue{s};
        while (!queue.empty()) {
            const int v = queue.front();
            queue.pop_front();
            for (int w = 0; w < n; ++w) {
                const bool adj = (v < p) != (w < p) && !(v < p ? m(v, w - p) : m(w, v - p)).is_zero();
                if (adj && d[s][w] < 0) {
                    d[s][w] = d[s][v] + 1;
                    queue.push_back(w);
                }
            }
        }
    }
    return d;
}

ExactMatrix random_inclusion(std::mt19937& rng, int p, int q) {
    std::uniform_int_distribution<int> v(0, 4);
    for (;;) {
        ExactMatrix m(p, q);
        for (int i = 0; i < p; ++i)
            for (int j = 0; j < q; ++j) {
                const int x = v(rng);
                m(i, j) = Scalar(x >= 3 ? x - 2 : 0);
            }
        bool ok = true;
        for (int i = 0; i < p; ++i) {
            bool nz = false;
            for (int j = 0; j < q; ++j) nz |= !m(i, j).is_zero();
            ok &= nz;
        }
        for (int j = 0; j < q; ++j) {
            bool nz = false;
            for (int i = 0; i < p; ++i) nz |= !m(i, j).is_zero();
            ok &= nz;
        }
        if (ok) return m;
    }
}

}  // namespace

TEST_CASE("S2 in S3 from the bare matrix") {
    const auto r = depth_report(ExactMatrix{{1, 1, 0}, {0, 1, 1}});
    CHECK(r.b == ExactMatrix{{2, 1}, {1, 2}});
    CHECK(r.c == ExactMatrix{{1, 1, 0}, {1, 2, 1}, {0, 1, 1}});
    CHECK(r.minpoly_b == ExactPolynomial::linear(q(1)) * ExactPolynomial::linear(q(3)));
    CHECK(r.minpoly_c == ExactPolynomial::x() * ExactPolynomial::linear(q(1)) * ExactPolynomial::linear(q(3)));
    CHECK(r.eigen_c.factored_string() == "X(X - 1)(X - 3)");
    CHECK(r.d_odd == 3);
    CHECK(r.d_ev == 4);
    CHECK(r.d_0 == 3);
    CHECK(r.d_h == 5);
    CHECK(r.minpoly_c_form == "Xm");
    CHECK(r.indecomposable_c);
}

TEST_CASE("S2 in S3 from the groups") {
    const auto p = pair_of(symmetric_group(3), {{2, 1, 3}});
    const auto r = report_for(p);
    CHECK(r.m == ExactMatrix{{1, 1, 0}, {0, 1, 1}});
    CHECK(r.d_0 == 3);
    CHECK(r.d_h == 5);
    CHECK(r.adjoint_test == false);
    REQUIRE(r.class_eigenvalues);
    CHECK(r.class_eigenvalues->values == std::vector<Rational>{q(1), q(3)});
    CHECK(r.pf_check == true);
    CHECK(r.ell_c == 2);

    const std::string dot = bipartite_dot(r);
    CHECK(std::count(dot.begin(), dot.end(), '\n') > 0);
    auto count = [&](const std::string& needle) {
        std::size_t n = 0;
        for (auto pos = dot.find(needle); pos != std::string::npos; pos = dot.find(needle, pos + 1)) ++n;
        return n;
    };
    CHECK(count("fillcolor=white") == 2);
    CHECK(count("fillcolor=black") == 3);
    CHECK(count(" -- ") == 4);
}

TEST_CASE("A4 in A5") {
    const auto p = pair_of(alternating_group(5), {{2, 3, 1, 4, 5}, {1, 3, 4, 2, 5}});
    const auto r = report_for(p);
    // up to permuting the two degree-3 characters of A5
    const ExactMatrix expected{{1, 1, 0, 0, 0}, {0, 0, 1, 0, 0}, {0, 0, 1, 0, 0}, {0, 1, 1, 1, 1}};
    CHECK(r.m.rank() == 3);
    std::vector<int> perm{0, 1, 2, 3, 4};
    bool found = false;
    do {
        std::vector<int> rows{0, 1, 2, 3};
        do {
            bool eq = true;
            for (int i = 0; i < 4 && eq; ++i)
                for (int j = 0; j < 5 && eq; ++j) eq = r.m(rows[i], perm[j]) == expected(i, j);
            found |= eq;
        } while (!found && std::next_permutation(rows.begin(), rows.end()));
    } while (!found && std::next_permutation(perm.begin(), perm.end()));
    CHECK(found);
    std::vector<Rational> ev;
    for (const auto& v : r.eigen_c.values()) ev.push_back(v);
    CHECK(ev == std::vector<Rational>{q(0), q(1), q(2), q(5)});
    CHECK(r.minpoly_b == r.minpoly_c);
    CHECK(r.d_0 == 5);
    CHECK(r.d_h == 5);
    CHECK(r.b.pow(2).pattern().all_set());
    CHECK(r.c.pow(2).pattern().all_set());
    CHECK(r.class_eigenvalues->values == std::vector<Rational>{q(1), q(2), q(5)});
}

TEST_CASE("D8 in S4") {
    const ExactMatrix expected{{1, 1, 0, 0, 0}, {0, 1, 1, 0, 0}, {0, 0, 0, 1, 0}, {0, 0, 0, 1, 1}, {0, 0, 0, 0, 1}};
    const auto bare = depth_report(expected);
    CHECK(bare.d_0 == 4);
    CHECK(bare.d_odd == 5);
    CHECK(bare.d_h == 5);
    CHECK_FALSE(bare.indecomposable_c);
    CHECK(bare.c_components == 2);
    CHECK(bare.minpoly_b == bare.minpoly_c);

    const auto p = pair_of(symmetric_group(4), {{2, 3, 4, 1}, {3, 2, 1, 4}});
    REQUIRE(p.h.order() == 8);
    const auto r = report_for(p);
    CHECK(r.d_0 == 4);
    CHECK(r.d_odd == 5);
    CHECK(r.d_h == 5);
    CHECK(r.c_components == 2);
    // same matrix up to row and column permutation: compare sorted row and
    // column profiles
    auto profile = [](const ExactMatrix& m) {
        std::vector<std::vector<long>> rows = m.to_integers();
        for (auto& row : rows) std::sort(row.begin(), row.end());
        std::sort(rows.begin(), rows.end());
        return rows;
    };
    CHECK(profile(r.m) == profile(expected));
    CHECK(profile(r.m.transpose()) == profile(expected.transpose()));
}

TEST_CASE("symmetric towers") {
    for (int n = 3; n <= 5; ++n) {
        CAPTURE(n);
        std::vector<int> fix(n);
        std::vector<std::vector<int>> gens;
        // S_{n-1} on the first n-1 points
        for (int k = 1; k < n - 1; ++k) {
            std::vector<int> t(n);
            for (int i = 0; i < n; ++i) t[i] = i + 1;
            std::swap(t[k - 1], t[k]);
            gens.push_back(t);
        }
        const auto p = pair_of(symmetric_group(n), gens);
        const auto r = report_for(p);
        CHECK(r.d_h == 2 * n - 1);
        CHECK(r.d_0 == 2 * n - 3);
    }
}

TEST_CASE("identity inclusion") {
    const auto r = depth_report(ExactMatrix::identity(3));
    CHECK(r.d_0 == 1);
    CHECK(r.d_h == 1);
    CHECK(r.quiver.edges.size() == 3);
    for (const auto& e : r.quiver.edges) CHECK(e.from == e.to);
    CHECK(r.c_components == 3);
}

TEST_CASE("malformed matrices") {
    CHECK_THROWS_AS(depth_report(ExactMatrix{{1, 0}, {0, 0}}), MalformedInput);
    CHECK_THROWS_AS(depth_report(ExactMatrix{{1, -1}}), MalformedInput);
    CHECK_THROWS_AS(inclusion_matrix_from_json(nlohmann::json::parse(R"({"M": [[1, 2], [3]]})")), MalformedInput);
}

TEST_CASE("pattern rules agree with bipartite distances on random matrices") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        std::uniform_int_distribution<int> dim(1, 6);
        const ExactMatrix m = random_inclusion(rng, dim(rng), dim(rng));
        if (m.is_permutation()) continue;
        const auto r = depth_report(m);
        const auto d = distances(m);
        const int p = m.rows(), n = p + m.cols();
        int ww = 0, bb = 0, wb = 0;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                if (d[a][b] < 0) continue;
                if (a < p && b < p) ww = std::max(ww, d[a][b]);
                if (a >= p && b >= p) bb = std::max(bb, d[a][b]);
                if (a < p && b >= p) wb = std::max(wb, d[a][b]);
            }
        CHECK(r.d_odd == 2 * std::max(1, ww / 2) + 1);
        CHECK(r.d_h == 2 * std::max(1, bb / 2) + 1);
        CHECK(r.d_ev == 2 * std::max(1, (wb + 1) / 2));
        CHECK(r.d_0 == std::min(*r.d_odd, *r.d_ev));
        // C m_B(C) = 0 and the symmetric minimal polynomials are square-free
        CHECK((r.c * evaluate(r.minpoly_b, r.c)).is_zero());
        CHECK(gcd(r.minpoly_b, r.minpoly_b.derivative()).degree() == 0);
    }
}

TEST_CASE("corpus invariants") {
    int pairs = 0, violations = 0;
    for (const auto& e : builtin_catalog(24)) {
        const Group g = make(e);
        const auto tg = compute_character_table(g);
        for (const auto& h : subgroup_class_reps(g)) {
            CAPTURE(e.name);
            CAPTURE(h.order());
            const Group hg = h.as_group();
            const auto th = compute_character_table(hg);
            DepthReport r;
            REQUIRE_NOTHROW(r = analyze_pair(tg, h, hg, th).report);
            ++pairs;
            CHECK(r.eigen_match == true);
            CHECK(r.pf_check == true);
            REQUIRE(r.d_0);
            REQUIRE(r.d_h);
            if (*r.d_0 > *r.d_h) ++violations;
            CHECK(std::abs(*r.d_0 - *r.d_h) <= 2);
            CHECK(*r.d_0 <= r.class_eigenvalues->depth_bound());
            CHECK(r.indecomposable_c == (core_and_witness(h).core.order() == 1));
        }
    }
    CHECK(pairs > 100);
    CHECK(violations == 0);
}

TEST_CASE("json report round trip") {
    const auto p = pair_of(symmetric_group(4), {{2, 3, 4, 1}, {3, 2, 1, 4}});
    const auto r = report_for(p);
    const auto j = nlohmann::json::parse(depth_report_to_json(r).dump());
    CHECK_NOTHROW(validate_depth_report_json(j));
    auto bad = j;
    bad["d_h"] = 7;
    CHECK_THROWS_AS(validate_depth_report_json(bad), AssertionFailure);
    CHECK(j.at("method_tags").contains("d_h"));
}
