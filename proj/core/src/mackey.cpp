#include "qdepth/mackey.hpp"

#include "qdepth/errors.hpp"
#include "qdepth/subgroups.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <map>

namespace qdepth {

namespace {

// Least element list among the conjugates S^b, b in base.
std::vector<int> canonical_key(const Subgroup& s, const Subgroup& base) {
    const Group& g = s.parent();
    std::vector<int> best = s.elements(), cur(s.order());
    for (int b : base.elements()) {
        for (int i = 0; i < s.order(); ++i) cur[i] = g.conj(s.elements()[i], b);
        std::sort(cur.begin(), cur.end());
        if (cur < best) best = cur;
    }
    return best;
}

class Accumulator {
public:
    explicit Accumulator(const Subgroup& base) : base_(base) {}
    void add(const Subgroup& s, long mult) {
        auto key = canonical_key(s, base_);
        auto it = slots_.find(key);
        if (it == slots_.end()) {
            slots_.emplace(std::move(key), QSummand{Subgroup::from_elements(base_.parent(), key), mult});
        } else {
            it->second.multiplicity += mult;
        }
    }
    std::vector<QSummand> take() {
        std::vector<QSummand> out;
        for (auto& [k, v] : slots_) out.push_back(std::move(v));
        std::sort(out.begin(), out.end(), [](const QSummand& a, const QSummand& b) { return a.sub < b.sub; });
        return out;
    }

private:
    const Subgroup& base_;
    std::map<std::vector<int>, QSummand> slots_;
};

}  // namespace

long QSummandMultiset::total_multiplicity() const {
    long t = 0;
    for (const auto& s : summands) t += s.multiplicity;
    return t;
}

long QSummandMultiset::dimension() const {
    long d = 0;
    for (const auto& s : summands) d += s.multiplicity * (base.order() / s.sub.order());
    return d;
}

ClassFunction QSummandMultiset::character() const {
    const Group& g = base.parent();
    if (base.order() != g.order()) throw MalformedInput("character() needs the whole group as base");
    ClassFunction out(g.classes().size());
    for (const auto& s : summands) {
        const auto pc = permutation_character(s.sub);
        for (std::size_t c = 0; c < out.size(); ++c) out[c] += Scalar(s.multiplicity) * pc[c];
    }
    return out;
}

QSummandMultiset mackey_restrict(const Subgroup& k, const Subgroup& h) {
    QSummandMultiset out{h, 1, {}, 0};
    Accumulator acc(h);
    for (const auto& d : double_cosets(k, h)) {
        acc.add(intersect(k.conjugate(d.rep), h), 1);
        ++out.raw_count;
    }
    out.summands = acc.take();
    const long expect = k.parent().order() / k.order();
    if (out.dimension() != expect) throw AssertionFailure("Mackey restriction has the wrong dimension");
    return out;
}

QSummandMultiset q_tensor_decomposition(const Subgroup& h, int n, const Caps& caps) {
    if (n < 1) throw MalformedInput("tensor power must be at least 1");
    const Group& g = h.parent();
    const Subgroup whole = Subgroup::whole(g);
    QSummandMultiset cur{whole, 1, {{h, 1}}, 1};
    {
        Accumulator acc(whole);
        acc.add(h, 1);
        cur.summands = acc.take();
    }
    for (int m = 2; m <= n; ++m) {
        QSummandMultiset next{whole, m, {}, 0};
        Accumulator acc(whole);
        for (const auto& s : cur.summands) {
            const auto dcs = double_cosets(h, s.sub);
            next.raw_count += static_cast<long>(dcs.size()) * s.multiplicity;
            if (static_cast<std::size_t>(next.raw_count) > caps.max_tensor_summands)
                throw CapExceeded("max_tensor_summands", caps.max_tensor_summands,
                                  "tensor power " + std::to_string(m) + " summand count");
            for (const auto& d : dcs) acc.add(intersect(s.sub, h.conjugate(d.rep)), s.multiplicity);
        }
        next.summands = acc.take();
        cur = std::move(next);
    }
    long expect = 1;
    for (int i = 0; i < n; ++i) expect *= g.order() / h.order();
    if (cur.dimension() != expect) throw AssertionFailure("tensor power dimension is not |G:H|^n");
    return cur;
}

CoreBound core_depth_bound(const Subgroup& h, std::optional<int> d_h, bool separable) {
    CoreBound b;
    b.r = core_and_witness(h).r();
    b.bound_dq = b.r + 1;
    b.bound_dh = 2 * b.r + 3;
    b.separable = separable;
    if (d_h) {
        b.holds = *d_h <= b.bound_dh;
        if (separable && !*b.holds)
            throw AssertionFailure("d_h = " + std::to_string(*d_h) + " exceeds 2r+3 = " + std::to_string(b.bound_dh));
    }
    return b;
}

CombinatorialBound combinatorial_bound_check(const Subgroup& h, std::optional<int> d_h) {
    const auto chain = intersection_chain(h);
    CombinatorialBound b{chain.d_c_ev, chain.bracket_low, chain.bracket_high, chain.d_c_is_one, std::nullopt};
    if (d_h) {
        b.holds = *d_h <= chain.d_c_ev + 1;
        if (!*b.holds)
            throw AssertionFailure("d_h = " + std::to_string(*d_h) + " exceeds d_c_ev + 1 = " +
                                   std::to_string(chain.d_c_ev + 1));
    }
    return b;
}

HeckeAlgebra hecke_algebra(const Subgroup& k) {
    const Group& g = k.parent();
    const auto dcs = double_cosets(k, k);
    const int t = static_cast<int>(dcs.size());
    std::vector<int> which(g.order(), -1);
    for (int i = 0; i < t; ++i)
        for (int x : dcs[i].members) which[x] = i;

    HeckeAlgebra a;
    a.k = k;
    for (const auto& d : dcs) {
        a.reps.push_back(d.rep);
        a.index.push_back(static_cast<long>(d.size()) / k.order());
    }
    if (a.reps[0] != Group::identity()) throw AssertionFailure("first double coset is not K");
    // counts[i][j][k] = |K| mu_ijk, an integer
    std::vector<long> counts(static_cast<std::size_t>(t) * t * t, 0);
    auto cnt = [&](int i, int j, int kk) -> long& { return counts[(static_cast<std::size_t>(i) * t + j) * t + kk]; };
    for (int kk = 0; kk < t; ++kk) {
        const int gamma = a.reps[kk];
        for (int i = 0; i < t; ++i)
            for (int x : dcs[i].members) ++cnt(i, which[g.mul(g.inv(x), gamma)], kk);
    }
    for (int i = 0; i < t; ++i)
        for (int kk = 0; kk < t; ++kk) {
            const long delta = i == kk ? k.order() : 0;
            if (cnt(0, i, kk) != delta || cnt(i, 0, kk) != delta) throw AssertionFailure("b_0 is not the unit");
        }
    // sparse rows: nz[i][j] = {(s, c_ijs) : c_ijs != 0}
    std::vector<std::vector<std::vector<std::pair<int, long>>>> nz(t, std::vector<std::vector<std::pair<int, long>>>(t));
    for (int i = 0; i < t; ++i)
        for (int j = 0; j < t; ++j)
            for (int s = 0; s < t; ++s)
                if (cnt(i, j, s)) nz[i][j].emplace_back(s, cnt(i, j, s));
    std::vector<long> left(t), right(t);
    for (int i = 0; i < t; ++i)
        for (int j = 0; j < t; ++j)
            for (int l = 0; l < t; ++l) {
                std::fill(left.begin(), left.end(), 0);
                std::fill(right.begin(), right.end(), 0);
                for (auto [s, c] : nz[i][j])
                    for (auto [m, d] : nz[s][l]) left[m] += c * d;
                for (auto [s, c] : nz[j][l])
                    for (auto [m, d] : nz[i][s]) right[m] += c * d;
                if (left != right) throw AssertionFailure("Hecke multiplication is not associative");
            }
    const Rational inv_k(Rational(1) / Rational(k.order()));
    a.mu.assign(t, std::vector<std::vector<Rational>>(t, std::vector<Rational>(t)));
    for (int i = 0; i < t; ++i)
        for (int j = 0; j < t; ++j)
            for (auto [s, c] : nz[i][j]) a.mu[i][j][s] = Rational(c) * inv_k;
    a.commutative = true;
    for (int i = 0; i < t && a.commutative; ++i)
        for (int j = 0; j < t && a.commutative; ++j)
            for (int m = 0; m < t; ++m)
                if (a.mu[i][j][m] != a.mu[j][i][m]) {
                    a.commutative = false;
                    break;
                }
    return a;
}

nlohmann::json summands_to_json(const QSummandMultiset& m) {
    const Group& g = m.base.parent();
    nlohmann::json out = nlohmann::json::array();
    for (const auto& s : m.summands) {
        nlohmann::json gens = nlohmann::json::array();
        for (int x : s.sub.generators()) gens.push_back(perm_to_images(g.element(x)));
        out.push_back({{"subgroup_generators", gens},
                       {"order", s.sub.order()},
                       {"multiplicity", s.multiplicity},
                       {"index", m.base.order() / s.sub.order()}});
    }
    return out;
}

nlohmann::json hecke_to_json(const HeckeAlgebra& a) {
    const Group& g = a.k.parent();
    nlohmann::json j;
    j["dim"] = a.dim();
    j["commutative"] = a.commutative;
    auto& basis = j["basis"] = nlohmann::json::array();
    for (int i = 0; i < a.dim(); ++i)
        basis.push_back({{"rep", perm_cycle_string(g.element(a.reps[i]))}, {"index", a.index[i]}});
    auto& mu = j["mu"] = nlohmann::json::array();
    for (int i = 0; i < a.dim(); ++i)
        for (int jj = 0; jj < a.dim(); ++jj)
            for (int k = 0; k < a.dim(); ++k)
                if (a.mu[i][jj][k] != 0) mu.push_back({i, jj, k, a.mu[i][jj][k].get_str()});
    return j;
}

}  // namespace qdepth
