#include "qdepth/group.hpp"

#include "qdepth/errors.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <deque>
#include <numeric>

namespace qdepth {

namespace {
constexpr int kTableLimit = 1024;
}

Perm perm_identity(int degree) {
    Perm p(degree);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

Perm perm_compose(const Perm& x, const Perm& y) {
    Perm r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = y[x[i]];
    return r;
}

Perm perm_inverse(const Perm& x) {
    Perm r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[x[i]] = static_cast<int>(i);
    return r;
}

bool perm_is_valid(const Perm& x) {
    std::vector<char> seen(x.size(), 0);
    for (int v : x) {
        if (v < 0 || v >= static_cast<int>(x.size()) || seen[v]) return false;
        seen[v] = 1;
    }
    return true;
}

Perm perm_from_images(const std::vector<int>& one_based) {
    Perm p(one_based.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = one_based[i] - 1;
    if (!perm_is_valid(p)) throw MalformedInput("image array is not a permutation of 1.." + std::to_string(p.size()));
    return p;
}

std::vector<int> perm_to_images(const Perm& x) {
    std::vector<int> r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] + 1;
    return r;
}

Perm perm_from_cycles(int degree, const std::vector<std::vector<int>>& cycles) {
    Perm p = perm_identity(degree);
    std::vector<char> used(degree, 0);
    for (const auto& c : cycles) {
        for (std::size_t i = 0; i < c.size(); ++i) {
            const int a = c[i] - 1, b = c[(i + 1) % c.size()] - 1;
            if (a < 0 || a >= degree || b < 0 || b >= degree || used[a])
                throw MalformedInput("bad cycle for degree " + std::to_string(degree));
            used[a] = 1;
            p[a] = b;
        }
    }
    return p;
}

std::string perm_cycle_string(const Perm& x) {
    std::string s;
    std::vector<char> seen(x.size(), 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (seen[i] || x[i] == static_cast<int>(i)) continue;
        s += "(";
        std::size_t j = i;
        bool first = true;
        while (!seen[j]) {
            seen[j] = 1;
            if (!first) s += ",";
            s += std::to_string(j + 1);
            first = false;
            j = x[j];
        }
        s += ")";
    }
    return s.empty() ? "()" : s;
}

std::size_t PermHash::operator()(const Perm& p) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (int v : p) {
        h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull;
        h *= 1099511628211ull;
    }
    return h;
}

Group Group::enumerate(int degree, const std::vector<Perm>& generators, const Caps& caps) {
    if (degree <= 0) throw MalformedInput("group degree must be positive");
    Group g;
    g.degree_ = degree;
    for (const auto& s : generators) {
        if (static_cast<int>(s.size()) != degree)
            throw MalformedInput("generator of degree " + std::to_string(s.size()) + " in a group of degree " +
                                 std::to_string(degree));
        if (!perm_is_valid(s)) throw MalformedInput("generator is not a permutation");
    }
    g.generators_ = generators;

    std::vector<Perm> elems{perm_identity(degree)};
    std::unordered_map<Perm, int, PermHash> seen{{elems[0], 0}};
    for (std::size_t head = 0; head < elems.size(); ++head) {
        for (const auto& s : generators) {
            Perm y = perm_compose(elems[head], s);
            if (seen.emplace(y, static_cast<int>(elems.size())).second) {
                elems.push_back(std::move(y));
                if (elems.size() > caps.max_group_order)
                    throw CapExceeded("max_group_order", caps.max_group_order, "group order");
            }
        }
    }
    std::sort(elems.begin(), elems.end());
    g.elements_ = std::move(elems);
    g.index_.reserve(g.elements_.size());
    for (std::size_t i = 0; i < g.elements_.size(); ++i) g.index_.emplace(g.elements_[i], static_cast<int>(i));

    mpz_class fact;
    mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(degree));
    if (fact % g.order() != 0) throw AssertionFailure("group order does not divide degree!");

    for (const auto& s : generators) g.gen_idx_.push_back(g.index_of(s));
    g.build_tables();
    g.build_classes();
    return g;
}

void Group::build_tables() {
    const int n = order();
    inv_.resize(n);
    for (int i = 0; i < n; ++i) inv_[i] = index_of(perm_inverse(elements_[i]));
    if (n <= kTableLimit) {
        table_.resize(static_cast<std::size_t>(n) * n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                table_[static_cast<std::size_t>(i) * n + j] = index_of(perm_compose(elements_[i], elements_[j]));
    }
    elt_order_.assign(n, 0);
    exponent_ = 1;
    for (int i = 0; i < n; ++i) {
        int k = 1, x = i;
        while (x != 0) {
            x = mul(x, i);
            ++k;
        }
        elt_order_[i] = k;
        exponent_ = std::lcm(exponent_, k);
    }
}

void Group::build_classes() {
    const int n = order();
    class_of_.assign(n, -1);
    for (int i = 0; i < n; ++i) {
        if (class_of_[i] >= 0) continue;
        const int c = static_cast<int>(classes_.size());
        ConjugacyClass cls{i, {i}};
        class_of_[i] = c;
        for (std::size_t head = 0; head < cls.members.size(); ++head) {
            for (int s : gen_idx_) {
                const int y = conj(cls.members[head], s);
                if (class_of_[y] < 0) {
                    class_of_[y] = c;
                    cls.members.push_back(y);
                }
            }
        }
        std::sort(cls.members.begin(), cls.members.end());
        classes_.push_back(std::move(cls));
    }
}

int Group::find(const Perm& p) const {
    auto it = index_.find(p);
    return it == index_.end() ? -1 : it->second;
}

int Group::index_of(const Perm& p) const {
    const int i = find(p);
    if (i < 0) throw MalformedInput("permutation " + perm_cycle_string(p) + " is not in the group");
    return i;
}

int Group::mul(int a, int b) const {
    if (!table_.empty()) return table_[static_cast<std::size_t>(a) * order() + b];
    return index_of(perm_compose(elements_[a], elements_[b]));
}

int Group::power(int a, long k) const {
    const long o = elt_order_[a];
    k %= o;
    if (k < 0) k += o;
    int r = 0;
    for (long i = 0; i < k; ++i) r = mul(r, a);
    return r;
}

bool Group::is_abelian() const {
    for (int a : gen_idx_)
        for (int b : gen_idx_)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

bool Group::is_transitive() const {
    std::vector<char> seen(degree_, 0);
    std::deque<int> q{0};
    seen[0] = 1;
    int count = 1;
    while (!q.empty()) {
        const int p = q.front();
        q.pop_front();
        for (const auto& s : generators_)
            if (!seen[s[p]]) {
                seen[s[p]] = 1;
                ++count;
                q.push_back(s[p]);
            }
    }
    return count == degree_;
}

int Group::power_class(int c, long k) const { return class_of_[power(classes_[c].rep, k)]; }

std::string Group::describe() const {
    std::string s = "order " + std::to_string(order()) + " on " + std::to_string(degree_) + " points, gens";
    for (const auto& g : generators_) s += " " + perm_cycle_string(g);
    return s;
}

// ---------------------------------------------------------------------------

Subgroup Subgroup::generated(const Group& g, const std::vector<int>& gens) {
    Subgroup h;
    h.parent_ = &g;
    h.mask_.assign(g.order(), 0);
    h.elems_ = {0};
    h.mask_[0] = 1;
    for (std::size_t head = 0; head < h.elems_.size(); ++head)
        for (int s : gens) {
            const int y = g.mul(h.elems_[head], s);
            if (!h.mask_[y]) {
                h.mask_[y] = 1;
                h.elems_.push_back(y);
            }
        }
    std::sort(h.elems_.begin(), h.elems_.end());
    return h;
}

Subgroup Subgroup::from_elements(const Group& g, std::vector<int> elems) {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    Subgroup h;
    h.parent_ = &g;
    h.mask_.assign(g.order(), 0);
    for (int e : elems) {
        if (e < 0 || e >= g.order()) throw MalformedInput("element index out of range");
        h.mask_[e] = 1;
    }
    if (elems.empty() || elems[0] != 0) throw MalformedInput("subset does not contain the identity");
    h.elems_ = std::move(elems);
    if (generated(g, h.generators()).elems_ != h.elems_)
        throw MalformedInput("subset is not closed under multiplication");
    if (g.order() % h.order() != 0) throw AssertionFailure("subgroup order does not divide |G|");
    return h;
}

Subgroup Subgroup::whole(const Group& g) {
    std::vector<int> all(g.order());
    std::iota(all.begin(), all.end(), 0);
    Subgroup h;
    h.parent_ = &g;
    h.elems_ = std::move(all);
    h.mask_.assign(g.order(), 1);
    return h;
}

Subgroup Subgroup::trivial(const Group& g) { return generated(g, {}); }

Subgroup Subgroup::from_images(const Group& g, const std::vector<std::vector<int>>& gens) {
    std::vector<int> idx;
    for (const auto& im : gens) {
        if (static_cast<int>(im.size()) != g.degree())
            throw MalformedInput("subgroup generator has degree " + std::to_string(im.size()) + ", expected " +
                                 std::to_string(g.degree()));
        const int i = g.find(perm_from_images(im));
        if (i < 0) throw MalformedInput("subgroup generator is not an element of the group");
        idx.push_back(i);
    }
    return generated(g, idx);
}

std::vector<int> Subgroup::generators() const {
    std::vector<int> gens;
    Subgroup cur = trivial(*parent_);
    for (int e : elems_) {
        if (cur.contains(e)) continue;
        gens.push_back(e);
        cur = generated(*parent_, gens);
        if (cur.order() == order()) break;
    }
    return gens;
}

int Subgroup::local_index(int e) const {
    auto it = std::lower_bound(elems_.begin(), elems_.end(), e);
    return (it != elems_.end() && *it == e) ? static_cast<int>(it - elems_.begin()) : -1;
}

Subgroup Subgroup::conjugate(int g) const {
    Subgroup h;
    h.parent_ = parent_;
    h.mask_.assign(parent_->order(), 0);
    h.elems_.reserve(elems_.size());
    for (int e : elems_) {
        const int c = parent_->conj(e, g);
        h.mask_[c] = 1;
        h.elems_.push_back(c);
    }
    std::sort(h.elems_.begin(), h.elems_.end());
    return h;
}

bool Subgroup::is_normal() const {
    for (int s : parent_->generator_indices())
        for (int e : generators())
            if (!contains(parent_->conj(e, s))) return false;
    return true;
}

bool Subgroup::is_subgroup_of(const Subgroup& o) const {
    for (int e : elems_)
        if (!o.contains(e)) return false;
    return true;
}

Group Subgroup::as_group(const Caps& caps) const {
    std::vector<Perm> gens;
    for (int e : generators()) gens.push_back(parent_->element(e));
    Group g = Group::enumerate(parent_->degree(), gens, caps);
    if (g.order() != order()) throw AssertionFailure("subgroup re-enumeration changed its order");
    return g;
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
    if (a.parent_ != b.parent_) throw MalformedInput("intersection of subgroups of different groups");
    Subgroup h;
    h.parent_ = a.parent_;
    h.mask_.assign(a.mask_.size(), 0);
    for (int x : a.elems_)
        if (b.mask_[x]) {
            h.elems_.push_back(x);
            h.mask_[x] = 1;
        }
    return h;
}

Subgroup join(const Subgroup& a, const Subgroup& b) {
    auto gens = a.generators();
    for (int x : b.generators())
        if (!a.contains(x)) gens.push_back(x);
    return Subgroup::generated(a.parent(), gens);
}

Subgroup normalizer(const Subgroup& h) {
    const Group& g = h.parent();
    const auto hg = h.generators();
    std::vector<int> e;
    for (int x = 0; x < g.order(); ++x) {
        bool ok = true;
        for (int s : hg)
            if (!h.contains(g.conj(s, x))) {
                ok = false;
                break;
            }
        if (ok) e.push_back(x);
    }
    return Subgroup::from_elements(g, std::move(e));
}

Subgroup centralizer(const Subgroup& h) {
    const Group& g = h.parent();
    const auto hg = h.generators();
    std::vector<int> e;
    for (int x = 0; x < g.order(); ++x) {
        bool ok = true;
        for (int s : hg)
            if (g.mul(s, x) != g.mul(x, s)) {
                ok = false;
                break;
            }
        if (ok) e.push_back(x);
    }
    return Subgroup::from_elements(g, std::move(e));
}

}  // namespace qdepth
