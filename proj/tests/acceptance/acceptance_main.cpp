// Acceptance runner: one PASS/FAIL line per criterion. Exits 0 when every
// criterion passes, or when the only failures are the documented ones and the
// counter-evidence for each of them checks out.

#include "qdepth/catalog.hpp"
#include "qdepth/chartab.hpp"
#include "qdepth/depth.hpp"
#include "qdepth/errors.hpp"
#include "qdepth/hopf.hpp"
#include "qdepth/mackey.hpp"
#include "qdepth/subgroups.hpp"
#include "qdepth/sweep.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

using namespace qdepth;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    // Set only for failures that are recorded as deviations; true when the
    // evidence for the computed value was itself verified.
    bool documented = false;
    bool evidence_ok = false;
};

class Checker {
public:
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass_ = false;
            if (failures_++ < 3) msg_ << (msg_.tellp() > 0 ? "; " : "") << what;
        }
    }
    Outcome done(const std::string& summary) const {
        return {pass_, pass_ ? summary : msg_.str() + (failures_ > 3 ? " (+" + std::to_string(failures_ - 3) + " more)" : "")};
    }

private:
    bool pass_ = true;
    int failures_ = 0;
    std::ostringstream msg_;
};

Group make(const CatalogEntry& e) { return Group::enumerate(e.degree, e.generators); }

DepthReport report_for(const Group& g, const Subgroup& h) {
    const Group hg = h.as_group();
    return analyze_pair(compute_character_table(g), h, hg, compute_character_table(hg)).report;
}

std::vector<int> transposition(int n, int a) {
    std::vector<int> t(n);
    for (int i = 0; i < n; ++i) t[i] = i + 1;
    std::swap(t[a - 1], t[a]);
    return t;
}

Subgroup point_stabilizer(const Group& g, int n) {
    std::vector<std::vector<int>> gens;
    for (int k = 1; k < n - 1; ++k) gens.push_back(transposition(n, k));
    return Subgroup::from_images(g, gens);
}

bool equal_up_to_permutation(const ExactMatrix& a, const ExactMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    std::vector<int> rows(a.rows()), cols(a.cols());
    for (int i = 0; i < a.rows(); ++i) rows[i] = i;
    do {
        for (int j = 0; j < a.cols(); ++j) cols[j] = j;
        do {
            bool eq = true;
            for (int i = 0; i < a.rows() && eq; ++i)
                for (int j = 0; j < a.cols() && eq; ++j) eq = a(rows[i], cols[j]) == b(i, j);
            if (eq) return true;
        } while (std::next_permutation(cols.begin(), cols.end()));
    } while (std::next_permutation(rows.begin(), rows.end()));
    return false;
}

ExactPolynomial lin(long r) { return ExactPolynomial::linear(Rational(r)); }

SparseVec e(int i) { return {{i, Scalar(1)}}; }
SparseVec add(SparseVec x, const SparseVec& y, const Scalar& c = Scalar(1)) {
    axpy(x, c, y);
    return x;
}
RowSpace span_sparse(int d, const std::vector<SparseVec>& vs) {
    RowSpace s(d);
    for (const auto& v : vs) s.insert(v);
    return s;
}

Outcome criterion1() {
    Checker c;
    const Group s3 = make(symmetric_group(3));
    const auto r = report_for(s3, Subgroup::from_images(s3, {{2, 1, 3}}));
    c.require(r.m == ExactMatrix{{1, 1, 0}, {0, 1, 1}}, "M");
    c.require(r.b == ExactMatrix{{2, 1}, {1, 2}}, "B");
    c.require(r.c == ExactMatrix{{1, 1, 0}, {1, 2, 1}, {0, 1, 1}}, "C");
    c.require(r.minpoly_b == lin(1) * lin(3), "minpoly(B)");
    c.require(r.minpoly_c == ExactPolynomial::x() * lin(1) * lin(3), "minpoly(C)");
    c.require(r.d_0 == 3, "d_0");
    c.require(r.d_h == 5, "d_h");
    return c.done("M, B, C, minpolys exact; d_0 = 3, d_h = 5");
}

Outcome criterion2() {
    Checker c;
    const Group a5 = make(alternating_group(5));
    const auto r = report_for(a5, Subgroup::from_images(a5, {{2, 3, 1, 4, 5}, {1, 3, 4, 2, 5}}));
    const ExactMatrix expected{{1, 1, 0, 0, 0}, {0, 0, 1, 0, 0}, {0, 0, 1, 0, 0}, {0, 1, 1, 1, 1}};
    c.require(equal_up_to_permutation(r.m, expected), "M differs from the 4x5 matrix");
    c.require(r.eigen_c.values() == std::vector<Rational>{0, 1, 2, 5}, "eigenvalues of C");
    c.require(r.d_0 == 5 && r.b.pow(2).pattern().all_set(), "d_0 = 5 with (MM^t)^2 positive");
    c.require(r.d_h == 5 && r.c.pow(2).pattern().all_set(), "d_h = 5 with (M^tM)^2 positive");
    return c.done("M matches up to ordering; spectrum of C {0,1,2,5}; d_0 = d_h = 5");
}

Outcome criterion3() {
    Checker c;
    const Group s4 = make(symmetric_group(4));
    const auto h = Subgroup::from_images(s4, {{2, 3, 4, 1}, {3, 2, 1, 4}});
    c.require(h.order() == 8, "|D8|");
    const auto r = report_for(s4, h);
    const ExactMatrix expected{{1, 1, 0, 0, 0}, {0, 1, 1, 0, 0}, {0, 0, 0, 1, 0}, {0, 0, 0, 1, 1}, {0, 0, 0, 0, 1}};
    c.require(equal_up_to_permutation(r.m, expected), "M differs from the two-block matrix");
    c.require(r.d_0 == 4 && r.d_odd == 5 && r.d_h == 5, "depths");
    c.require(!r.indecomposable_c && r.c_components == 2, "C components");
    return c.done("two-block M; d_0 = 4, d_odd = 5, d_h = 5; C has 2 components");
}

Outcome criterion4() {
    Checker c;
    int pairs = 0;
    for (const auto& entry : builtin_catalog(24)) {
        const Group g = make(entry);
        const auto tg = compute_character_table(g);
        for (const auto& h : subgroup_class_reps(g)) {
            const Group hg = h.as_group();
            const auto r = analyze_pair(tg, h, hg, compute_character_table(hg)).report;
            const std::string where = entry.name + "/" + std::to_string(h.order());
            std::vector<Rational> nonzero;
            for (const auto& v : r.eigen_b.values())
                if (v != 0) nonzero.push_back(v);
            const auto cls = eigenvalues_via_class_formula(h, hg).values;
            c.require(std::set<Rational>(cls.begin(), cls.end()) == std::set<Rational>(nonzero.begin(), nonzero.end()),
                      where + " class-formula set");
            const Rational index(g.order() / h.order());
            const auto roots_c = r.eigen_c.values();
            c.require(!roots_c.empty() && *std::max_element(roots_c.begin(), roots_c.end()) == index,
                      where + " Perron-Frobenius root");
            ++pairs;
        }
    }
    return c.done(std::to_string(pairs) + " pairs (up to conjugacy); class-formula set and PF root agree");
}

Outcome criterion5() {
    Checker c;
    for (int n = 3; n <= 5; ++n) {
        const Group g = make(symmetric_group(n));
        const Subgroup h = point_stabilizer(g, n);
        const auto r = report_for(g, h);
        const auto cb = core_depth_bound(h, r.d_h);
        const std::string tag = "n=" + std::to_string(n);
        c.require(r.d_h == 2 * n - 1, tag + " d_h");
        c.require(core_and_witness(h).r() == n - 2 && cb.r == n - 2, tag + " core witness");
        c.require(cb.bound_dh == r.d_h, tag + " bound not tight");
    }
    return c.done("d_h = 5, 7, 9; r = n-2; d_h = 2r+3");
}

ClassFunction pointwise_power(const ClassFunction& f, int n) {
    ClassFunction out(f.size(), Scalar(1));
    for (int i = 0; i < n; ++i)
        for (std::size_t k = 0; k < f.size(); ++k) out[k] = out[k] * f[k];
    return out;
}

Outcome criterion6() {
    Checker c;
    int pairs = 0;
    for (const auto& entry : builtin_catalog(24)) {
        const Group g = make(entry);
        for (const auto& h : subgroup_class_reps(g)) {
            const auto pc = permutation_character(h);
            for (int n = 1; n <= 3; ++n)
                c.require(q_tensor_decomposition(h, n).character() == pointwise_power(pc, n),
                          entry.name + "/" + std::to_string(h.order()) + " n=" + std::to_string(n));
            ++pairs;
        }
    }
    return c.done(std::to_string(pairs) + " pairs, n <= 3");
}

Outcome criterion7() {
    Checker c;
    int pairs = 0;
    for (const auto& entry : builtin_catalog(24)) {
        const Group g = make(entry);
        const HopfAlgebra kg = build_group_algebra(g);
        for (const auto& k : subgroup_class_reps(g)) {
            const std::string where = entry.name + "/" + std::to_string(k.order());
            const HeckeAlgebra a = hecke_algebra(k);
            const int dc = static_cast<int>(double_cosets(k, k).size());
            const auto r = group_subalgebra(kg, k);
            const auto end_q = idealizer_and_endq(kg, r, quotient_module(kg, r)).dim_end_q;
            c.require(a.dim() == dc && end_q == dc, where + " dimensions");
            const int d = a.dim();
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j) {
                    c.require(a.mu[0][i][j] == (i == j ? 1 : 0) && a.mu[i][0][j] == (i == j ? 1 : 0), where + " unit");
                    for (int l = 0; l < d; ++l)
                        for (int m = 0; m < d; ++m) {
                            Rational lhs = 0, rhs = 0;
                            for (int s = 0; s < d; ++s) {
                                lhs += a.mu[i][j][s] * a.mu[s][l][m];
                                rhs += a.mu[j][l][s] * a.mu[i][s][m];
                            }
                            if (lhs != rhs) c.require(false, where + " associativity");
                        }
                }
            ++pairs;
        }
    }
    return c.done(std::to_string(pairs) + " pairs; Hecke = double cosets = End Q; associative with unit");
}

Outcome criterion8() {
    Checker agreed;
    Checker disputed;
    Checker evidence;
    const SmallQuantumGroup u = build_small_quantum_group(2);
    const HopfAlgebra& h = u.h;
    const SparseVec one = e(u.pbw(0, 0, 0)), k = e(u.pbw(1, 0, 0)), E = e(u.pbw(0, 1, 0)), F = e(u.pbw(0, 0, 1));
    auto mul = [&](const SparseVec& x, const SparseVec& y) { return h.multiply(x, y); };
    const auto r = quantum_subalgebra(u, "R2");
    const QuotientModule q = quotient_module(h, r);
    const auto rep = analyze_hopf_pair(h, r);

    agreed.require(q.dim == 2, "dim Q");
    const SparseVec t = mul(E, add(one, k));
    agreed.require(span_sparse(8, {t, rep.integrals.t_r}).dim() == 1, "t_R");
    RowSpace htrh(8);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) htrh.insert(mul(mul(e(i), t), e(j)));
    agreed.require(!rep.traces.chain.empty() && rep.traces.chain[0] == htrh && htrh.dim() == 3, "tau(Q) = Ht_RH, dim 3");
    agreed.require(rep.idealizer.t.dim() == 7, "dim T");
    agreed.require(rep.idealizer.dim_end_q == 1, "dim End Q");
    agreed.require(!rep.idealizer.normal && !is_normal_subalgebra(h, r), "normality");
    agreed.require(hopf_pair_report_to_json(h, rep).dump().find("\"d_h\"") == std::string::npos, "d_h must not be reported");

    std::vector<SparseVec> eh;
    for (int i = 0; i < 8; ++i) eh.push_back(mul(E, e(i)));
    const RowSpace eh_space = span_sparse(8, eh);
    const auto& ann = rep.ann.chain.at(0);
    disputed.require(ann.space == eh_space && ann.dim() == 4, "Ann Q = EH of dim 4 (computed dim " +
                                                                  std::to_string(ann.dim()) + ")");
    disputed.require(ann.hopf_ideal, "Ann Q is a Hopf ideal (computed: not)");
    disputed.require(rep.ann.ell_q == 1, "ell_Q = 1 (computed " + std::to_string(rep.ann.ell_q.value_or(-1)) + ")");

    // (1-K)F kills 1̄ and F̄ by direct multiplication, S of it does not,
    // and Ann(Q⊗Q) is EH, a Hopf ideal.
    const SparseVec x = mul(add(one, k, Scalar(-1)), F);
    evidence.require(is_zero(q.project(x)) && is_zero(q.project(mul(F, x))), "(1-K)F annihilates Q");
    evidence.require(!eh_space.contains(x) && ann.space.contains(x), "(1-K)F lies outside EH");
    const SparseVec sx = h.antipode(x);
    evidence.require(!is_zero(q.project(sx)) || !is_zero(q.project(mul(F, sx))), "S((1-K)F) acts nontrivially");
    evidence.require(rep.ann.chain.size() >= 2 && rep.ann.chain[1].space == eh_space && rep.ann.chain[1].hopf_ideal,
                     "Ann(Q (x) Q) = EH is a Hopf ideal");
    evidence.require(rep.ann.hopf_core && rep.ann.hopf_core->space == eh_space, "Hopf core EH");

    const Outcome a = agreed.done(""), d = disputed.done(""), ev = evidence.done("");
    Outcome out;
    out.pass = a.pass && d.pass;
    if (out.pass) {
        out.detail = "all values as stated";
        return out;
    }
    out.documented = a.pass && !d.pass;
    out.evidence_ok = ev.pass;
    out.detail = a.pass ? "dim Q, t_R, tau(Q), T, End Q, normality agree; differs: " + d.detail +
                              "; documented deviation, computed Ann Q = EH + k(1-K)F, ell_Q = 2, Hopf core EH" +
                              (ev.pass ? " (evidence verified)" : " (EVIDENCE FAILED: " + ev.detail + ")")
                        : a.detail;
    return out;
}

Outcome criterion9() {
    Checker c;
    int pairs = 0;
    auto check = [&](const HopfAlgebra& h, const SubalgebraEmbedding& r, const std::string& where) {
        const QuotientModule q = quotient_module(h, r);
        const IntegralReport in = integrals_and_modular(h, r, q);
        bool restricts = true;
        for (int i = 0; i < r.dim(); ++i) {
            Scalar v;
            for (const auto& [j, cj] : r.basis[i]) v += cj * in.m_h[j];
            restricts &= v == in.m_r[i];
        }
        c.require(restricts == !in.q_integral_basis.empty(), where);
        ++pairs;
    };
    for (const auto& entry : builtin_catalog(24)) {
        const Group g = make(entry);
        const HopfAlgebra kg = build_group_algebra(g);
        for (const auto& k : subgroup_class_reps(g))
            check(kg, group_subalgebra(kg, k), entry.name + "/" + std::to_string(k.order()));
    }
    for (int n : {2, 3}) {
        const SmallQuantumGroup u = build_small_quantum_group(n);
        for (const char* w : {"R1", "R2", "B"}) check(u.h, quantum_subalgebra(u, w), "u_q n=" + std::to_string(n) + " " + w);
        check(u.h, trivial_subalgebra(u.h), "trivial");
        check(u.h, whole_subalgebra(u.h), "whole");
    }
    return c.done(std::to_string(pairs) + " Hopf pairs, no counterexample");
}

Outcome criterion10() {
    Checker c;
    int pairs = 0;
    for (const auto& entry : builtin_catalog(24)) {
        const Group g = make(entry);
        const HopfAlgebra kg = build_group_algebra(g);
        for (const auto& k : subgroup_class_reps(g)) {
            const Subgroup n = core_and_witness(k).core;
            RowSpace ideal(g.order());
            for (int x : n.elements())
                for (int y = 0; y < g.order(); ++y) ideal.insert(add(e(g.mul(x, y)), e(y), Scalar(-1)));
            const auto chain = annihilator_chain(kg, quotient_module(kg, group_subalgebra(kg, k)));
            c.require(chain.hopf_core && chain.hopf_core->space == ideal, entry.name + "/" + std::to_string(k.order()));
            ++pairs;
        }
    }
    return c.done(std::to_string(pairs) + " pairs; Hopf core = kN+kG");
}

Outcome criterion11() {
    Checker c;
    const SweepReport rep = run_sweep(builtin_catalog(24), 24);
    c.require(!rep.rows.empty(), "empty sweep");
    c.require(rep.violations.empty(), std::to_string(rep.violations.size()) + " violations of d_0 <= d_h");
    return c.done(std::to_string(rep.rows.size()) + " pairs over " + std::to_string(rep.groups.size()) +
                  " groups, 0 violations");
}

Outcome criterion12() {
    Checker c;
    int tables = 0, algebras = 0, chains = 0;
    for (const auto& entry : builtin_catalog(24)) {
        const Group g = make(entry);
        const auto t = compute_character_table(g);
        long sum_sq = 0;
        for (int i = 0; i < t.num_irr(); ++i) {
            sum_sq += static_cast<long>(t.degrees[i]) * t.degrees[i];
            for (int j = 0; j < t.num_irr(); ++j)
                c.require(t.inner(t.irr[i], t.irr[j]) == Scalar(i == j ? 1 : 0), entry.name + " orthogonality");
        }
        c.require(sum_sq == g.order() && t.num_irr() == t.num_classes(), entry.name + " degrees");
        ++tables;

        const HopfAlgebra kg = build_group_algebra(g);
        kg.verify();
        ++algebras;
        for (const auto& k : subgroup_class_reps(g)) {
            const auto r = group_subalgebra(kg, k);
            c.require(kg.dim() % r.dim() == 0, entry.name + " divisibility");
        }
    }
    for (int n : {2, 3, 5}) {
        const SmallQuantumGroup u = build_small_quantum_group(n);
        u.h.verify();
        ++algebras;
        for (const char* w : {"R1", "R2", "B"}) {
            const auto r = quantum_subalgebra(u, w);
            c.require(u.h.dim() % r.dim() == 0, "u_q divisibility");
            if (n > 3) continue;
            const QuotientModule q = quotient_module(u.h, r);
            const auto ann = annihilator_chain(u.h, q);
            for (std::size_t i = 1; i < ann.chain.size(); ++i)
                c.require(ann.chain[i - 1].space.contains_space(ann.chain[i].space), "annihilators descend");
            const auto in = integrals_and_modular(u.h, r, q);
            const auto tr = trace_ideals(u.h, q, in.t_r, 3);
            for (std::size_t i = 1; i < tr.chain.size(); ++i)
                c.require(tr.chain[i].contains_space(tr.chain[i - 1]), "trace ideals ascend");
            ++chains;
        }
    }
    return c.done(std::to_string(tables) + " tables orthogonal, " + std::to_string(algebras) +
                  " algebras verified, divisibility, " + std::to_string(chains) + " monotone chain pairs");
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double limit_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "S2 <= S3", 1, criterion1},
        {2, "A4 < A5", 10, criterion2},
        {3, "D8 < S4", 10, criterion3},
        {4, "class-formula eigenvalues and PF root", 120, criterion4},
        {5, "symmetric towers", 60, criterion5},
        {6, "Mackey vs characters", 120, criterion6},
        {7, "Hecke vs idealizer", 300, criterion7},
        {8, "8-dim quantum pair", 1, criterion8},
        {9, "integral/Frobenius equivalence", 300, criterion9},
        {10, "group-algebra Hopf core", 300, criterion10},
        {11, "conjecture sweep", 120, criterion11},
        {12, "property suites", 300, criterion12},
    };
    bool ok = true;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& ex) {
            o = {false, std::string("exception: ") + ex.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs > c.limit_s) {
            o.detail += " (over time limit " + std::to_string(static_cast<int>(c.limit_s)) + " s)";
            o.pass = false;
            o.documented = false;
        }
        std::printf("criterion %2d %s: %s (%.2f s) %s\n", c.id, o.pass ? "PASS" : "FAIL", c.name, secs,
                    o.detail.c_str());
        if (!o.pass && !(o.documented && o.evidence_ok)) ok = false;
    }
    return ok ? 0 : 1;
}
