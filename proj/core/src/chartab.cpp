#include "qdepth/chartab.hpp"

#include "qdepth/errors.hpp"
#include "qdepth/subgroups.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <optional>

namespace qdepth {

namespace {

using i64 = long long;

i64 mod(i64 a, i64 p) {
    a %= p;
    return a < 0 ? a + p : a;
}

i64 pow_mod(i64 b, i64 e, i64 p) {
    i64 r = 1;
    b = mod(b, p);
    while (e > 0) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

i64 inv_mod(i64 a, i64 p) { return pow_mod(a, p - 2, p); }

bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

i64 primitive_root(i64 p) {
    std::vector<i64> factors;
    i64 m = p - 1;
    for (i64 d = 2; d * d <= m; ++d)
        if (m % d == 0) {
            factors.push_back(d);
            while (m % d == 0) m /= d;
        }
    if (m > 1) factors.push_back(m);
    for (i64 g = 2; g < p; ++g) {
        bool ok = true;
        for (i64 f : factors)
            if (pow_mod(g, (p - 1) / f, p) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
    return 1;  // p = 2
}

using ModMat = std::vector<std::vector<i64>>;

// Characteristic polynomial mod p via reduction to Hessenberg form.
std::vector<i64> charpoly_mod(ModMat h, i64 p) {
    const int n = static_cast<int>(h.size());
    for (int j = 0; j + 2 < n; ++j) {
        int piv = -1;
        for (int i = j + 1; i < n; ++i)
            if (h[i][j] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != j + 1) {
            std::swap(h[piv], h[j + 1]);
            for (int r = 0; r < n; ++r) std::swap(h[r][piv], h[r][j + 1]);
        }
        const i64 inv = inv_mod(h[j + 1][j], p);
        for (int i = j + 2; i < n; ++i) {
            if (h[i][j] == 0) continue;
            const i64 u = h[i][j] * inv % p;
            for (int c = 0; c < n; ++c) h[i][c] = mod(h[i][c] - u * h[j + 1][c], p);
            for (int r = 0; r < n; ++r) h[r][j + 1] = (h[r][j + 1] + u * h[r][i]) % p;
        }
    }
    std::vector<std::vector<i64>> polys{{1}};
    for (int m = 0; m < n; ++m) {
        // (x - h[m][m]) * p_m
        const auto& pm = polys[m];
        std::vector<i64> next(pm.size() + 1, 0);
        for (std::size_t k = 0; k < pm.size(); ++k) {
            next[k + 1] = (next[k + 1] + pm[k]) % p;
            next[k] = mod(next[k] - h[m][m] * pm[k], p);
        }
        i64 prod = 1;
        for (int i = m - 1; i >= 0; --i) {
            prod = prod * h[i + 1][i] % p;
            const i64 coef = h[i][m] * prod % p;
            if (coef == 0) continue;
            for (std::size_t k = 0; k < polys[i].size(); ++k) next[k] = mod(next[k] - coef * polys[i][k], p);
        }
        polys.push_back(std::move(next));
    }
    return polys[n];
}

// Null space mod p, as row vectors.
std::vector<std::vector<i64>> kernel_mod(ModMat a, i64 p) {
    const int rows = static_cast<int>(a.size());
    const int cols = rows ? static_cast<int>(a[0].size()) : 0;
    std::vector<int> pivcol;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (a[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(a[piv], a[r]);
        const i64 inv = inv_mod(a[r][c], p);
        for (auto& x : a[r]) x = x * inv % p;
        for (int i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            const i64 f = a[i][c];
            for (int k = 0; k < cols; ++k) a[i][k] = mod(a[i][k] - f * a[r][k], p);
        }
        pivcol.push_back(c);
        ++r;
    }
    std::vector<std::vector<i64>> out;
    std::vector<char> is_piv(cols, 0);
    for (int c : pivcol) is_piv[c] = 1;
    for (int f = 0; f < cols; ++f) {
        if (is_piv[f]) continue;
        std::vector<i64> v(cols, 0);
        v[f] = 1;
        for (int i = 0; i < r; ++i) v[pivcol[i]] = mod(-a[i][f], p);
        out.push_back(std::move(v));
    }
    return out;
}

// Reduced echelon basis (rows) of the span of vs, with pivot columns.
struct ModSpace {
    std::vector<std::vector<i64>> rows;
    std::vector<int> piv;
};

ModSpace echelon(std::vector<std::vector<i64>> vs, i64 p) {
    ModSpace s;
    if (vs.empty()) return s;
    const int cols = static_cast<int>(vs[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < static_cast<int>(vs.size()); ++c) {
        int piv = -1;
        for (int i = r; i < static_cast<int>(vs.size()); ++i)
            if (vs[i][c] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        std::swap(vs[piv], vs[r]);
        const i64 inv = inv_mod(vs[r][c], p);
        for (auto& x : vs[r]) x = x * inv % p;
        for (int i = 0; i < static_cast<int>(vs.size()); ++i) {
            if (i == r || vs[i][c] == 0) continue;
            const i64 f = vs[i][c];
            for (int k = 0; k < cols; ++k) vs[i][k] = mod(vs[i][k] - f * vs[r][k], p);
        }
        s.piv.push_back(c);
        ++r;
    }
    vs.resize(r);
    s.rows = std::move(vs);
    return s;
}

struct ClassAlgebra {
    int r = 0;
    std::vector<i64> a;  // a[(i*r + j)*r + k]
    i64 at(int i, int j, int k) const { return a[(static_cast<std::size_t>(i) * r + j) * r + k]; }
};

ClassAlgebra class_constants(const Group& g) {
    const auto& cls = g.classes();
    ClassAlgebra ca;
    ca.r = static_cast<int>(cls.size());
    ca.a.assign(static_cast<std::size_t>(ca.r) * ca.r * ca.r, 0);
    for (int k = 0; k < ca.r; ++k) {
        const int z = cls[k].rep;
        for (int i = 0; i < ca.r; ++i)
            for (int x : cls[i].members) {
                const int j = g.class_of(g.mul(g.inv(x), z));
                ++ca.a[(static_cast<std::size_t>(i) * ca.r + j) * ca.r + k];
            }
    }
    return ca;
}

std::optional<CharacterTable> dixon_attempt(const Group& g, const ClassAlgebra& ca, i64 p) {
    const int r = ca.r;
    const auto& cls = g.classes();
    const i64 order = g.order();

    // split F_p^r into common eigenspaces of the maps w -> (sum_k a_ijk w_k)_i
    std::vector<ModSpace> spaces;
    {
        std::vector<std::vector<i64>> id(r, std::vector<i64>(r, 0));
        for (int i = 0; i < r; ++i) id[i][i] = 1;
        spaces.push_back(echelon(id, p));
    }
    for (int j = 1; j < r; ++j) {
        bool all_one = true;
        for (const auto& s : spaces) all_one &= s.rows.size() == 1;
        if (all_one) break;
        std::vector<ModSpace> next;
        for (auto& s : spaces) {
            const int d = static_cast<int>(s.rows.size());
            if (d == 1) {
                next.push_back(std::move(s));
                continue;
            }
            // image of each basis vector, in basis coordinates
            ModMat x(d, std::vector<i64>(d, 0));
            std::vector<std::vector<i64>> images(d, std::vector<i64>(r, 0));
            for (int t = 0; t < d; ++t) {
                for (int i = 0; i < r; ++i) {
                    i64 acc = 0;
                    for (int k = 0; k < r; ++k)
                        if (s.rows[t][k]) acc = (acc + ca.at(i, j, k) % p * s.rows[t][k]) % p;
                    images[t][i] = acc;
                }
                for (int u = 0; u < d; ++u) x[u][t] = images[t][s.piv[u]];
            }
            const auto cp = charpoly_mod(x, p);
            int found = 0;
            for (i64 lambda = 0; lambda < p && found < d; ++lambda) {
                i64 v = 0;
                for (std::size_t k = cp.size(); k-- > 0;) v = (v * lambda + cp[k]) % p;
                if (v != 0) continue;
                ModMat shifted = x;
                for (int u = 0; u < d; ++u) shifted[u][u] = mod(shifted[u][u] - lambda, p);
                const auto ker = kernel_mod(shifted, p);
                std::vector<std::vector<i64>> vecs;
                for (const auto& y : ker) {
                    std::vector<i64> w(r, 0);
                    for (int t = 0; t < d; ++t)
                        if (y[t])
                            for (int k = 0; k < r; ++k) w[k] = (w[k] + y[t] * s.rows[t][k]) % p;
                    vecs.push_back(std::move(w));
                }
                found += static_cast<int>(vecs.size());
                next.push_back(echelon(std::move(vecs), p));
            }
            if (found != d) return std::nullopt;  // not split over F_p
        }
        spaces = std::move(next);
    }
    if (static_cast<int>(spaces.size()) != r) return std::nullopt;

    const i64 e = g.exponent();
    const i64 z = pow_mod(primitive_root(p), (p - 1) / e, p);
    const i64 sq = static_cast<i64>(std::floor(std::sqrt(static_cast<double>(order)) + 1e-9));

    std::vector<std::vector<int>> pclass(r);
    for (int i = 0; i < r; ++i) {
        const int o = g.element_order(cls[i].rep);
        for (int l = 0; l < o; ++l) pclass[i].push_back(g.class_of(g.power(cls[i].rep, l)));
    }

    CharacterTable t;
    t.group = &g;
    t.exponent = static_cast<int>(e);
    t.prime = p;
    for (const auto& s : spaces) {
        std::vector<i64> w = s.rows[0];
        if (w[0] == 0) return std::nullopt;
        const i64 inv0 = inv_mod(w[0], p);
        for (auto& x : w) x = x * inv0 % p;
        i64 sum = 0;
        for (int i = 0; i < r; ++i) {
            const int ib = g.inverse_class(i);
            sum = (sum + w[i] * w[ib] % p * inv_mod(static_cast<i64>(cls[i].size()) % p, p)) % p;
        }
        if (sum == 0) return std::nullopt;
        const i64 target = order % p * inv_mod(sum, p) % p;
        i64 deg = 0;
        for (i64 d = 1; d <= sq; ++d)
            if (order % d == 0 && d * d % p == target) {
                if (deg) return std::nullopt;
                deg = d;
            }
        if (!deg) return std::nullopt;

        std::vector<i64> chi(r);
        for (int i = 0; i < r; ++i) chi[i] = deg * w[i] % p * inv_mod(static_cast<i64>(cls[i].size()) % p, p) % p;

        ClassFunction values(r);
        for (int i = 0; i < r; ++i) {
            const int o = static_cast<int>(pclass[i].size());
            const i64 step = e / o;
            const i64 inv_o = inv_mod(o, p);
            std::vector<Rational> coeffs(o);
            i64 total = 0;
            for (int k = 0; k < o; ++k) {
                i64 acc = 0;
                for (int l = 0; l < o; ++l) {
                    const i64 ex = mod(-step * k * l, e);
                    acc = (acc + chi[pclass[i][l]] * pow_mod(z, ex, p)) % p;
                }
                const i64 m = acc * inv_o % p;
                if (m > deg) return std::nullopt;
                coeffs[k] = Rational(static_cast<long>(m));
                total += m;
            }
            if (total != deg) return std::nullopt;
            values[i] = Scalar(o, std::move(coeffs));
        }
        t.degrees.push_back(static_cast<int>(deg));
        t.irr.push_back(std::move(values));
    }
    try {
        t.verify();
    } catch (const AssertionFailure&) {
        return std::nullopt;
    }
    return t;
}

}  // namespace

Scalar CharacterTable::inner(const ClassFunction& f, const ClassFunction& g) const {
    const auto& cls = group->classes();
    Scalar acc;
    for (std::size_t i = 0; i < cls.size(); ++i)
        if (!f[i].is_zero() && !g[i].is_zero()) acc += Scalar(static_cast<long>(cls[i].size())) * f[i] * g[i].conj();
    return acc / Scalar(group->order());
}

void CharacterTable::verify() const {
    const int r = num_classes();
    if (num_irr() != r) throw AssertionFailure("number of irreducibles differs from number of classes");
    long sum = 0;
    for (int d : degrees) sum += static_cast<long>(d) * d;
    if (sum != group->order()) throw AssertionFailure("sum of squared degrees is not |G|");
    for (int a = 0; a < r; ++a) {
        if (!(irr[a][0] == Scalar(degrees[a]))) throw AssertionFailure("degree column mismatch");
        for (int b = a; b < r; ++b)
            if (!(inner(irr[a], irr[b]) == Scalar(a == b ? 1 : 0)))
                throw AssertionFailure("row orthogonality fails");
    }
    const auto& cls = group->classes();
    for (int i = 0; i < r; ++i)
        for (int j = i; j < r; ++j) {
            Scalar acc;
            for (int a = 0; a < r; ++a) acc += irr[a][i] * irr[a][j].conj();
            const Scalar expect = i == j ? Scalar(Rational(group->order()) / Rational(static_cast<long>(cls[i].size()))) : Scalar(0);
            if (!(acc == expect)) throw AssertionFailure("column orthogonality fails");
        }
}

void sort_irreducibles(CharacterTable& t) {
    std::vector<int> idx(t.irr.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        if (t.degrees[a] != t.degrees[b]) return t.degrees[a] < t.degrees[b];
        for (std::size_t i = 0; i < t.irr[a].size(); ++i) {
            const auto c = canonical_compare(t.irr[a][i], t.irr[b][i]);
            if (c != 0) return c > 0;
        }
        return false;
    });
    std::vector<ClassFunction> irr;
    std::vector<int> deg;
    for (int i : idx) {
        irr.push_back(std::move(t.irr[i]));
        deg.push_back(t.degrees[i]);
    }
    t.irr = std::move(irr);
    t.degrees = std::move(deg);
}

CharacterTable compute_character_table(const Group& g, const Caps& caps) {
    if (static_cast<std::size_t>(g.order()) > caps.max_group_order)
        throw CapExceeded("max_group_order", caps.max_group_order, "group order " + std::to_string(g.order()));
    if (g.classes().size() > caps.max_classes)
        throw CapExceeded("max_classes", caps.max_classes, std::to_string(g.classes().size()) + " classes");
    const ClassAlgebra ca = class_constants(g);
    const i64 e = g.exponent();
    const i64 lower = 2 * static_cast<i64>(std::ceil(std::sqrt(static_cast<double>(g.order())))) + 1;
    i64 p = e + 1;
    while (p < lower) p += e;
    for (int attempts = 0; attempts < 64; p += e) {
        if (!is_prime(p) || g.order() % p == 0) continue;
        ++attempts;
        if (auto t = dixon_attempt(g, ca, p)) {
            sort_irreducibles(*t);
            return *t;
        }
    }
    throw AssertionFailure("character table computation failed for 64 primes");
}

nlohmann::json character_table_to_json(const CharacterTable& t) {
    nlohmann::json j;
    j["exponent"] = t.exponent;
    auto& cl = j["classes"] = nlohmann::json::array();
    for (const auto& c : t.group->classes())
        cl.push_back({{"rep", perm_to_images(t.group->element(c.rep))}, {"size", c.size()}});
    auto& ir = j["irreducibles"] = nlohmann::json::array();
    for (const auto& row : t.irr) {
        auto r = nlohmann::json::array();
        for (const auto& v : row) r.push_back(v.to_string());
        ir.push_back(std::move(r));
    }
    return j;
}

CharacterTable character_table_from_json(const Group& g, const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("classes") || !j.contains("irreducibles"))
        throw MalformedInput("character table needs 'classes' and 'irreducibles'");
    const auto& jc = j.at("classes");
    const int r = static_cast<int>(g.classes().size());
    if (!jc.is_array() || static_cast<int>(jc.size()) != r)
        throw MalformedInput("character table has " + std::to_string(jc.size()) + " classes, group has " +
                             std::to_string(r));
    std::vector<int> col_of(r, -1);  // imported column -> group class
    std::vector<char> used(r, 0);
    for (int c = 0; c < r; ++c) {
        const auto& entry = jc.at(c);
        const int e = g.find(perm_from_images(entry.at("rep").get<std::vector<int>>()));
        if (e < 0) throw MalformedInput("classes[" + std::to_string(c) + "].rep is not in the group");
        const int k = g.class_of(e);
        if (used[k]) throw MalformedInput("classes[" + std::to_string(c) + "] repeats a class");
        if (entry.contains("size") && entry.at("size").get<std::size_t>() != g.classes()[k].size())
            throw MalformedInput("classes[" + std::to_string(c) + "].size disagrees with the group");
        used[k] = 1;
        col_of[c] = k;
    }
    CharacterTable t;
    t.group = &g;
    t.exponent = j.value("exponent", g.exponent());
    for (const auto& row : j.at("irreducibles")) {
        if (!row.is_array() || static_cast<int>(row.size()) != r) throw MalformedInput("irreducible row of wrong length");
        ClassFunction f(r);
        for (int c = 0; c < r; ++c) {
            const auto& v = row.at(c);
            f[col_of[c]] = v.is_string() ? Scalar::parse(v.get<std::string>()) : Scalar(v.get<long>());
        }
        if (!f[0].is_rational() || f[0].to_rational().get_den() != 1)
            throw MalformedInput("character degree is not an integer");
        t.degrees.push_back(static_cast<int>(f[0].to_rational().get_num().get_si()));
        t.irr.push_back(std::move(f));
    }
    t.verify();
    sort_irreducibles(t);
    return t;
}

bool tables_agree(const CharacterTable& a, const CharacterTable& b) {
    if (a.group != b.group || a.num_irr() != b.num_irr()) return false;
    std::vector<char> used(b.num_irr(), 0);
    for (const auto& row : a.irr) {
        bool hit = false;
        for (int k = 0; k < b.num_irr() && !hit; ++k)
            if (!used[k] && b.irr[k] == row) {
                used[k] = 1;
                hit = true;
            }
        if (!hit) return false;
    }
    return true;
}

ClassFusion class_fusion(const Subgroup& h, const Group& h_group) {
    const Group& g = h.parent();
    ClassFusion f;
    for (const auto& c : h_group.classes()) {
        const int elem = h.elements()[c.rep];
        if (g.find(h_group.element(c.rep)) != elem) throw AssertionFailure("subgroup group does not match parent");
        f.map.push_back(g.class_of(elem));
    }
    return f;
}

ClassFunction restrict_class_function(const ClassFunction& f, const ClassFusion& fusion) {
    ClassFunction r;
    for (int c : fusion.map) r.push_back(f[c]);
    return r;
}

ExactMatrix raw_inclusion_matrix(const CharacterTable& tab_g, const CharacterTable& tab_h, const ClassFusion& fusion) {
    const int p = tab_h.num_irr(), q = tab_g.num_irr();
    ExactMatrix m(p, q);
    for (int j = 0; j < q; ++j) {
        const ClassFunction res = restrict_class_function(tab_g.irr[j], fusion);
        long dim = 0;
        for (int i = 0; i < p; ++i) {
            const Scalar v = tab_h.inner(res, tab_h.irr[i]);
            if (!v.is_rational() || v.to_rational().get_den() != 1 || v.to_rational() < 0)
                throw AssertionFailure("restriction multiplicity " + v.to_string() + " is not a nonnegative integer");
            m(i, j) = v;
            dim += v.to_rational().get_num().get_si() * tab_h.degrees[i];
        }
        if (dim != tab_g.degrees[j]) throw AssertionFailure("column dimension identity fails");
    }
    for (int i = 0; i < p; ++i) {
        bool nz = false;
        for (int j = 0; j < q; ++j) nz |= !m(i, j).is_zero();
        if (!nz) throw AssertionFailure("inclusion matrix has a zero row");
    }
    return m;
}

InclusionMatrix inclusion_matrix(const CharacterTable& tab_g, const CharacterTable& tab_h, const ClassFusion& fusion) {
    const ExactMatrix raw = raw_inclusion_matrix(tab_g, tab_h, fusion);
    const int p = raw.rows(), q = raw.cols();
    std::vector<char> seen_row(p, 0), seen_col(q, 0);
    std::vector<int> rows, cols;
    // entries: (is_row, index)
    std::deque<std::pair<bool, int>> queue;
    auto visit_col = [&](int j) {
        seen_col[j] = 1;
        cols.push_back(j);
        queue.emplace_back(false, j);
    };
    for (int start = 0; start < q; ++start) {
        if (seen_col[start]) continue;
        visit_col(start);
        while (!queue.empty()) {
            auto [is_row, k] = queue.front();
            queue.pop_front();
            if (is_row) {
                for (int j = 0; j < q; ++j)
                    if (!seen_col[j] && !raw(k, j).is_zero()) visit_col(j);
            } else {
                for (int i = 0; i < p; ++i)
                    if (!seen_row[i] && !raw(i, k).is_zero()) {
                        seen_row[i] = 1;
                        rows.push_back(i);
                        queue.emplace_back(true, i);
                    }
            }
        }
    }
    InclusionMatrix out{ExactMatrix(p, q), rows, cols};
    for (int a = 0; a < p; ++a)
        for (int b = 0; b < q; ++b) out.m(a, b) = raw(rows[a], cols[b]);
    return out;
}

ClassFunction permutation_character(const Subgroup& h) {
    const Group& g = h.parent();
    const RightCosets rc = right_cosets(h);
    ClassFunction f;
    for (const auto& c : g.classes()) {
        long fixed = 0;
        for (int k = 0; k < rc.count(); ++k)
            if (rc.act(g, k, c.rep) == k) ++fixed;
        f.emplace_back(fixed);
    }
    return f;
}

}  // namespace qdepth
