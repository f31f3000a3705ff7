#include "qdepth/subgroups.hpp"

#include "qdepth/errors.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace qdepth {

std::vector<DoubleCoset> double_cosets(const Subgroup& k, const Subgroup& h) {
    const Group& g = k.parent();
    if (&h.parent() != &g) throw MalformedInput("double cosets of subgroups of different groups");
    std::vector<char> seen(g.order(), 0);
    std::vector<DoubleCoset> out;
    for (int x = 0; x < g.order(); ++x) {
        if (seen[x]) continue;
        DoubleCoset d{x, {}};
        std::vector<int> kx;
        for (int a : k.elements()) kx.push_back(g.mul(a, x));
        for (int y : kx)
            for (int b : h.elements()) {
                const int z = g.mul(y, b);
                if (!seen[z]) {
                    seen[z] = 1;
                    d.members.push_back(z);
                }
            }
        std::sort(d.members.begin(), d.members.end());
        out.push_back(std::move(d));
    }
    return out;
}

RightCosets right_cosets(const Subgroup& h) {
    const Group& g = h.parent();
    RightCosets rc;
    rc.coset_of.assign(g.order(), -1);
    for (int x = 0; x < g.order(); ++x) {
        if (rc.coset_of[x] >= 0) continue;
        const int c = rc.count();
        rc.reps.push_back(x);
        for (int a : h.elements()) rc.coset_of[g.mul(a, x)] = c;
    }
    return rc;
}

namespace {

struct Conjugate {
    int by;
    Subgroup sub;
};

std::vector<Conjugate> distinct_conjugates(const Subgroup& h) {
    const Subgroup n = normalizer(h);
    std::vector<Conjugate> out;
    for (int x : right_cosets(n).reps) out.push_back({x, h.conjugate(x)});
    return out;
}

}  // namespace

std::vector<Subgroup> conjugates(const Subgroup& h) {
    std::vector<Subgroup> out;
    for (auto& c : distinct_conjugates(h)) out.push_back(std::move(c.sub));
    return out;
}

std::vector<int> conjugacy_key(const Subgroup& h) {
    std::vector<int> best = h.elements();
    for (const auto& c : distinct_conjugates(h))
        if (c.sub.elements() < best) best = c.sub.elements();
    return best;
}

CoreWitness core_and_witness(const Subgroup& h) {
    const auto conj = distinct_conjugates(h);
    Subgroup core = h;
    for (const auto& c : conj) core = intersect(core, c.sub);

    // breadth-first over distinct partial intersections
    struct Node {
        Subgroup s;
        int parent;
        int by;
    };
    std::vector<Node> nodes{{h, -1, -1}};
    std::set<std::vector<int>> seen{h.elements()};
    int hit = (h == core) ? 0 : -1;
    for (std::size_t head = 0; hit < 0 && head < nodes.size(); ++head) {
        for (const auto& c : conj) {
            Subgroup next = intersect(nodes[head].s, c.sub);
            if (!seen.insert(next.elements()).second) continue;
            nodes.push_back({next, static_cast<int>(head), c.by});
            if (next == core) {
                hit = static_cast<int>(nodes.size()) - 1;
                break;
            }
        }
    }
    if (hit < 0) throw AssertionFailure("core not reached by conjugate intersections");
    CoreWitness out{core, {}};
    for (int v = hit; nodes[v].parent >= 0; v = nodes[v].parent) out.witness.push_back(nodes[v].by);
    std::reverse(out.witness.begin(), out.witness.end());
    if (!out.core.is_normal() || !out.core.is_subgroup_of(h)) throw AssertionFailure("core is not normal in G");
    return out;
}

IntersectionChain intersection_chain(const Subgroup& h) {
    const auto conj = conjugates(h);
    IntersectionChain out;
    std::set<Subgroup> level{h};
    out.levels.push_back({h});
    for (;;) {
        std::set<Subgroup> next = level;
        for (const auto& s : level)
            for (const auto& c : conj) next.insert(intersect(s, c));
        out.levels.emplace_back(next.begin(), next.end());
        if (next.size() == level.size()) break;
        level = std::move(next);
    }
    out.n = static_cast<int>(out.levels.size()) - 1;
    out.d_c_ev = 2 * out.n;
    const Subgroup c = centralizer(h);
    const long hc = static_cast<long>(h.order()) * c.order() / intersect(h, c).order();
    out.d_c_is_one = hc == h.parent().order();
    out.bracket_low = out.d_c_is_one ? 1 : out.d_c_ev - 1;
    out.bracket_high = out.d_c_is_one ? 1 : out.d_c_ev;
    return out;
}

bool depth_one_adjoint_test(const Subgroup& h) {
    const Group& g = h.parent();
    const Group hg = h.as_group();
    for (const auto& cls : hg.classes()) {
        const int rep = h.elements()[cls.rep];
        for (int s : g.generator_indices()) {
            const int y = g.conj(rep, s);
            const int local = h.local_index(y);
            if (local < 0 || hg.class_of(local) != hg.class_of(cls.rep)) return false;
        }
    }
    return true;
}

TIResult is_TI_subgroup(const Subgroup& h) {
    if (h.is_normal()) return {false, true};
    for (const auto& c : conjugates(h)) {
        if (c == h) continue;
        if (intersect(h, c).order() != 1) return {false, false};
    }
    return {true, false};
}

std::vector<Subgroup> all_subgroups(const Group& g) {
    std::set<Subgroup> found;
    std::vector<Subgroup> cyclic;
    for (int x = 0; x < g.order(); ++x) {
        Subgroup c = Subgroup::generated(g, {x});
        if (found.insert(c).second) cyclic.push_back(c);
    }
    std::vector<Subgroup> work(cyclic.begin(), cyclic.end());
    while (!work.empty()) {
        Subgroup a = std::move(work.back());
        work.pop_back();
        const auto ag = a.generators();
        for (const auto& c : cyclic) {
            if (c.is_subgroup_of(a)) continue;
            auto gens = ag;
            for (int y : c.generators()) gens.push_back(y);
            Subgroup j = Subgroup::generated(g, gens);
            if (found.insert(j).second) work.push_back(std::move(j));
        }
    }
    return {found.begin(), found.end()};
}

std::vector<Subgroup> subgroup_class_reps(const Group& g) {
    std::map<std::pair<int, std::vector<int>>, Subgroup> reps;
    for (const auto& s : all_subgroups(g)) {
        auto key = conjugacy_key(s);
        if (key != s.elements()) continue;  // keep the conjugate that is its own key
        reps.emplace(std::make_pair(s.order(), key), s);
    }
    std::vector<Subgroup> out;
    for (auto& [k, s] : reps) out.push_back(std::move(s));
    return out;
}

}  // namespace qdepth
