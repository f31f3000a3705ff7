#include "qdepth/hopf.hpp"

#include "qdepth/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <map>
#include <sstream>

namespace qdepth {

namespace {

void normalize(Tensor2& t) {
    std::sort(t.begin(), t.end(), [](const TensorTerm& x, const TensorTerm& y) {
        return x.a != y.a ? x.a < y.a : x.b < y.b;
    });
    Tensor2 out;
    for (auto& term : t) {
        if (!out.empty() && out.back().a == term.a && out.back().b == term.b) {
            out.back().c += term.c;
        } else {
            if (!out.empty() && out.back().c.is_zero()) out.pop_back();
            out.push_back(std::move(term));
        }
    }
    if (!out.empty() && out.back().c.is_zero()) out.pop_back();
    t = std::move(out);
}

bool equal_tensors(Tensor2 x, Tensor2 y) {
    normalize(x);
    normalize(y);
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i].a != y[i].a || x[i].b != y[i].b || x[i].c != y[i].c) return false;
    return true;
}

bool equal_sparse(const SparseVec& x, const SparseVec& y) {
    SparseVec diff = x;
    axpy(diff, Scalar(-1), y);
    return diff.empty();
}

// Σ c (x_a ⊗ y_b) for sparse vectors
void add_outer(Tensor2& out, const Scalar& c, const SparseVec& x, const SparseVec& y) {
    for (const auto& [i, u] : x)
        for (const auto& [j, v] : y) out.push_back({i, j, c * u * v});
}

SparseVec unit_vec(int i) { return {{i, Scalar(1)}}; }

// Coordinates in the RREF basis of a space that contains v.
Vec rref_coords(const RowSpace& s, const SparseVec& v) {
    if (!s.contains(v)) throw AssertionFailure("vector is not in the expected subspace");
    const auto piv = s.pivots();
    Vec out(piv.size());
    for (std::size_t k = 0; k < piv.size(); ++k) out[k] = entry(v, piv[k]);
    return out;
}

SparseVec combine(const std::vector<SparseVec>& basis, const Vec& coeffs) {
    SparseVec out;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        if (!coeffs[i].is_zero()) axpy(out, coeffs[i], basis[i]);
    return out;
}

// Concatenates blocks of length `block` into one sparse vector.
void append_block(SparseVec& out, int offset, const SparseVec& v) {
    for (const auto& [i, x] : v) out.emplace_back(offset + i, x);
}

}  // namespace

// ---------------------------------------------------------------- HopfAlgebra

HopfAlgebra::HopfAlgebra(int field_order, std::vector<std::string> labels, std::vector<SparseVec> mult, SparseVec unit,
                         std::vector<Tensor2> comult, Vec counit, std::vector<SparseVec> antipode)
    : d_(static_cast<int>(counit.size())),
      field_order_(field_order),
      labels_(std::move(labels)),
      mult_(std::move(mult)),
      unit_(std::move(unit)),
      comult_(std::move(comult)),
      counit_(std::move(counit)),
      antipode_(std::move(antipode)) {
    if (d_ < 1) throw MalformedInput("Hopf algebra dimension must be positive");
    if (labels_.empty())
        for (int i = 0; i < d_; ++i) labels_.push_back("e" + std::to_string(i));
    if (static_cast<int>(labels_.size()) != d_ || mult_.size() != static_cast<std::size_t>(d_) * d_ ||
        static_cast<int>(comult_.size()) != d_ || static_cast<int>(antipode_.size()) != d_)
        throw MalformedInput("Hopf algebra structure constants have inconsistent sizes");
    for (auto& t : comult_) normalize(t);
    verify();
}

SparseVec HopfAlgebra::multiply(const SparseVec& x, const SparseVec& y) const {
    SparseVec out;
    for (const auto& [i, u] : x)
        for (const auto& [j, v] : y) axpy(out, u * v, basis_product(i, j));
    return out;
}

Tensor2 HopfAlgebra::coproduct(const SparseVec& x) const {
    Tensor2 out;
    for (const auto& [i, u] : x)
        for (const auto& t : comult_[i]) out.push_back({t.a, t.b, u * t.c});
    normalize(out);
    return out;
}

Scalar HopfAlgebra::counit(const SparseVec& x) const {
    Scalar s;
    for (const auto& [i, u] : x) s += u * counit_[i];
    return s;
}

SparseVec HopfAlgebra::antipode(const SparseVec& x) const {
    SparseVec out;
    for (const auto& [i, u] : x) axpy(out, u, antipode_[i]);
    return out;
}

std::string HopfAlgebra::format(const SparseVec& x) const {
    if (x.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [i, u] : x) {
        if (!first) os << " + ";
        first = false;
        if (!u.is_one()) os << "(" << u.to_string() << ")";
        os << labels_[i];
    }
    return os.str();
}

std::vector<int> HopfAlgebra::right_generators() const {
    RowSpace span(d_);
    std::vector<SparseVec> words{unit_};
    span.insert(unit_);
    std::vector<int> gens;
    for (int i = 0; i < d_; ++i) {
        if (span.contains(unit_vec(i))) continue;
        gens.push_back(i);
        for (std::size_t k = 0; k < words.size() && !span.full(); ++k)
            for (int s : gens) {
                SparseVec w = multiply(words[k], unit_vec(s));
                if (span.insert(w)) words.push_back(std::move(w));
            }
    }
    return gens;
}

void HopfAlgebra::verify() const {
    const int d = d_;
    for (const auto& v : mult_)
        for (const auto& [k, c] : v)
            if (k < 0 || k >= d) throw MalformedInput("product index out of range");
    for (const auto& t : comult_)
        for (const auto& term : t)
            if (term.a < 0 || term.a >= d || term.b < 0 || term.b >= d)
                throw MalformedInput("coproduct index out of range");
    for (int i = 0; i < d; ++i) {
        if (!equal_sparse(multiply(unit_, unit_vec(i)), unit_vec(i)) ||
            !equal_sparse(multiply(unit_vec(i), unit_), unit_vec(i)))
            throw AssertionFailure("unit law fails at " + labels_[i]);
    }
    // Light's test: the elements s with (xs)y = x(sy) for all x, y are closed
    // under products, so checking a set whose right-normed words span H is enough.
    const std::vector<int> gens = right_generators();
    for (int s : gens)
        for (int i = 0; i < d; ++i) {
            const SparseVec& is = basis_product(i, s);
            for (int k = 0; k < d; ++k) {
                SparseVec left, right;
                for (const auto& [t, c] : is) axpy(left, c, basis_product(t, k));
                for (const auto& [t, c] : basis_product(s, k)) axpy(right, c, basis_product(i, t));
                if (!equal_sparse(left, right))
                    throw AssertionFailure("associativity fails at (" + labels_[i] + "," + labels_[s] + "," +
                                           labels_[k] + ")");
            }
        }
    for (int i = 0; i < d; ++i) {
        std::map<std::tuple<int, int, int>, Scalar> left, right;
        for (const auto& t : comult_[i]) {
            for (const auto& u : comult_[t.a]) left[{u.a, u.b, t.b}] += t.c * u.c;
            for (const auto& u : comult_[t.b]) right[{t.a, u.a, u.b}] += t.c * u.c;
        }
        std::erase_if(left, [](const auto& kv) { return kv.second.is_zero(); });
        std::erase_if(right, [](const auto& kv) { return kv.second.is_zero(); });
        if (left != right) throw AssertionFailure("coassociativity fails at " + labels_[i]);
        SparseVec l1, r1;
        for (const auto& t : comult_[i]) {
            axpy(l1, t.c * counit_[t.a], unit_vec(t.b));
            axpy(r1, t.c * counit_[t.b], unit_vec(t.a));
        }
        if (!equal_sparse(l1, unit_vec(i)) || !equal_sparse(r1, unit_vec(i)))
            throw AssertionFailure("counit law fails at " + labels_[i]);
    }
    if (counit(unit_) != Scalar(1)) throw AssertionFailure("counit of 1 is not 1");
    {
        Tensor2 one;
        add_outer(one, Scalar(1), unit_, unit_);
        if (!equal_tensors(coproduct(unit_), one)) throw AssertionFailure("coproduct of 1 is not 1 ⊗ 1");
    }
    // Multiplicativity against the generators gives it everywhere once the
    // product is associative.
    for (int i = 0; i < d; ++i)
        for (int j : gens) {
            const SparseVec& ij = basis_product(i, j);
            if (counit(ij) != counit_[i] * counit_[j])
                throw AssertionFailure("counit is not multiplicative at (" + labels_[i] + "," + labels_[j] + ")");
            Tensor2 prod;
            for (const auto& x : comult_[i])
                for (const auto& y : comult_[j])
                    add_outer(prod, x.c * y.c, basis_product(x.a, y.a), basis_product(x.b, y.b));
            if (!equal_tensors(coproduct(ij), prod))
                throw AssertionFailure("coproduct is not multiplicative at (" + labels_[i] + "," + labels_[j] + ")");
        }
    for (int i = 0; i < d; ++i) {
        SparseVec left, right;
        for (const auto& t : comult_[i]) {
            axpy(left, t.c, multiply(antipode_[t.a], unit_vec(t.b)));
            axpy(right, t.c, multiply(unit_vec(t.a), antipode_[t.b]));
        }
        const SparseVec expect = scaled(unit_, counit_[i]);
        if (!equal_sparse(left, expect) || !equal_sparse(right, expect))
            throw AssertionFailure("antipode axiom fails at " + labels_[i]);
    }
}

// ---------------------------------------------------------------- subalgebras

SubalgebraEmbedding make_subalgebra(const HopfAlgebra& h, std::vector<SparseVec> rows, std::string name) {
    const int d = h.dim();
    RowSpace span(d);
    for (const auto& r : rows)
        if (!span.insert(r)) throw MalformedInput("subalgebra rows of " + name + " are linearly dependent");
    if (!span.contains(h.unit())) throw MalformedInput(name + " does not contain the unit");
    const auto basis = span.basis();
    for (const auto& x : basis)
        for (const auto& y : basis)
            if (!span.contains(h.multiply(x, y))) throw MalformedInput(name + " is not closed under multiplication");
    for (const auto& x : basis) {
        if (!span.contains(h.antipode(x))) throw MalformedInput(name + " is not closed under the antipode");
        // Δ(x) ∈ R ⊗ R: each row and each column of the coefficient matrix lies in R
        std::map<int, SparseVec> by_left, by_right;
        for (const auto& t : h.coproduct(x)) {
            by_left[t.a].emplace_back(t.b, t.c);
            by_right[t.b].emplace_back(t.a, t.c);
        }
        auto sorted_in = [&](std::map<int, SparseVec>& m) {
            for (auto& [k, v] : m) {
                std::sort(v.begin(), v.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
                if (!span.contains(v)) return false;
            }
            return true;
        };
        if (!sorted_in(by_left) || !sorted_in(by_right))
            throw MalformedInput(name + " is not closed under the coproduct");
    }
    if (d % span.dim() != 0) throw AssertionFailure("dim " + name + " does not divide dim H");
    return SubalgebraEmbedding{&h, std::move(name), basis, std::move(span)};
}

SubalgebraEmbedding generated_subalgebra(const HopfAlgebra& h, const std::vector<SparseVec>& gens, std::string name) {
    RowSpace span(h.dim());
    std::vector<SparseVec> frontier{h.unit()};
    span.insert(h.unit());
    while (!frontier.empty()) {
        std::vector<SparseVec> next;
        for (const auto& x : frontier)
            for (const auto& g : gens) {
                SparseVec y = h.multiply(x, g);
                if (span.insert(y)) next.push_back(std::move(y));
            }
        frontier = std::move(next);
    }
    return make_subalgebra(h, span.basis(), std::move(name));
}

SubalgebraEmbedding trivial_subalgebra(const HopfAlgebra& h) { return make_subalgebra(h, {h.unit()}, "k1"); }

SubalgebraEmbedding whole_subalgebra(const HopfAlgebra& h) {
    std::vector<SparseVec> rows;
    for (int i = 0; i < h.dim(); ++i) rows.push_back(unit_vec(i));
    return make_subalgebra(h, std::move(rows), "H");
}

HopfAlgebra build_group_algebra(const Group& g) {
    const int d = g.order();
    std::vector<std::string> labels;
    std::vector<SparseVec> mult(static_cast<std::size_t>(d) * d);
    std::vector<Tensor2> comult(d);
    std::vector<SparseVec> antipode(d);
    for (int i = 0; i < d; ++i) {
        labels.push_back(perm_cycle_string(g.element(i)));
        for (int j = 0; j < d; ++j) mult[static_cast<std::size_t>(i) * d + j] = unit_vec(g.mul(i, j));
        comult[i] = {{i, i, Scalar(1)}};
        antipode[i] = unit_vec(g.inv(i));
    }
    return HopfAlgebra(1, std::move(labels), std::move(mult), unit_vec(Group::identity()), std::move(comult),
                       Vec(d, Scalar(1)), std::move(antipode));
}

SubalgebraEmbedding group_subalgebra(const HopfAlgebra& kg, const Subgroup& k) {
    std::vector<SparseVec> rows;
    for (int e : k.elements()) rows.push_back(unit_vec(e));
    return make_subalgebra(kg, std::move(rows), "kK");
}

// ---------------------------------------------------------------- ū_q(sl_2)

namespace {

// Right multiplication of PBW monomials by K, E, F.
class PbwEngine {
public:
    explicit PbwEngine(int n) : n_(n) {
        if (n == 2) {
            q2pow_ = {Scalar(1), Scalar(-1)};
            comm_ = Scalar(0);  // EF = FE
            field_order_ = 1;
        } else {
            for (int k = 0; k < n; ++k) q2pow_.push_back(Scalar::root_of_unity(n, 2L * k));
            const Scalar q = Scalar::root_of_unity(n, 1);
            comm_ = (q - q.inverse()).inverse();
            field_order_ = n;
        }
    }
    int dim() const { return n_ * n_ * n_; }
    int field_order() const { return field_order_; }
    int index(int a, int b, int c) const { return (((a % n_) + n_) % n_ * n_ + b) * n_ + c; }
    const Scalar& q2(long k) const { return q2pow_[((k % n_) + n_) % n_]; }

    SparseVec times(const SparseVec& x, char gen) const {
        SparseVec out;
        for (const auto& [idx, u] : x) {
            const int a = idx / (n_ * n_), b = (idx / n_) % n_, c = idx % n_;
            switch (gen) {
                case 'K':
                    axpy(out, u * q2(c - b), unit_vec(index(a + 1, b, c)));
                    break;
                case 'F':
                    if (c + 1 < n_) axpy(out, u, unit_vec(index(a, b, c + 1)));
                    break;
                case 'E':
                    if (b + 1 < n_) axpy(out, u, unit_vec(index(a, b + 1, c)));
                    if (!comm_.is_zero())
                        for (int j = 0; j < c; ++j) {
                            axpy(out, -comm_ * u * q2(j - b), unit_vec(index(a + 1, b, c - 1)));
                            axpy(out, comm_ * u * q2(b - j), unit_vec(index(a - 1, b, c - 1)));
                        }
                    break;
                default:
                    break;
            }
        }
        return out;
    }

private:
    int n_;
    int field_order_ = 1;
    std::vector<Scalar> q2pow_;
    Scalar comm_;
};

Tensor2 tensor_product(const std::vector<SparseVec>& mult, int d, const Tensor2& x, const Tensor2& y) {
    Tensor2 out;
    for (const auto& s : x)
        for (const auto& t : y)
            add_outer(out, s.c * t.c, mult[static_cast<std::size_t>(s.a) * d + t.a],
                      mult[static_cast<std::size_t>(s.b) * d + t.b]);
    normalize(out);
    return out;
}

}  // namespace

SmallQuantumGroup build_small_quantum_group(int n) {
    if (n != 2 && (n < 3 || n % 2 == 0)) throw MalformedInput("small quantum group needs n odd >= 3 or n = 2");
    const PbwEngine eng(n);
    const int d = eng.dim();
    std::vector<std::string> labels(d);
    std::vector<SparseVec> mult(static_cast<std::size_t>(d) * d);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                std::string s;
                auto part = [&](char g, int e) {
                    if (e == 0) return;
                    s += g;
                    if (e > 1) s += "^" + std::to_string(e);
                };
                part('K', a);
                part('E', b);
                part('F', c);
                labels[eng.index(a, b, c)] = s.empty() ? "1" : s;
            }
    for (int x = 0; x < d; ++x)
        for (int y = 0; y < d; ++y) {
            const int a = y / (n * n), b = (y / n) % n, c = y % n;
            SparseVec v = unit_vec(x);
            for (int i = 0; i < a; ++i) v = eng.times(v, 'K');
            for (int i = 0; i < b; ++i) v = eng.times(v, 'E');
            for (int i = 0; i < c; ++i) v = eng.times(v, 'F');
            mult[static_cast<std::size_t>(x) * d + y] = std::move(v);
        }
    const int one = eng.index(0, 0, 0), k = eng.index(1, 0, 0), kinv = eng.index(n - 1, 0, 0);
    const int e = eng.index(0, 1, 0), f = eng.index(0, 0, 1);
    const Tensor2 dk{{k, k, Scalar(1)}};
    const Tensor2 de{{e, one, Scalar(1)}, {k, e, Scalar(1)}};
    const Tensor2 df{{f, kinv, Scalar(1)}, {one, f, Scalar(1)}};
    const SparseVec sk = unit_vec(kinv);
    // S(E) = -K^{-1}E, S(F) = -FK
    const SparseVec se = scaled(mult[static_cast<std::size_t>(kinv) * d + e], Scalar(-1));
    const SparseVec sf = scaled(mult[static_cast<std::size_t>(f) * d + k], Scalar(-1));

    std::vector<Tensor2> comult(d);
    std::vector<SparseVec> antipode(d);
    Vec counit(d);
    auto mul_sv = [&](const SparseVec& x, const SparseVec& y) {
        SparseVec out;
        for (const auto& [i, u] : x)
            for (const auto& [j, v] : y) axpy(out, u * v, mult[static_cast<std::size_t>(i) * d + j]);
        return out;
    };
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                const int idx = eng.index(a, b, c);
                counit[idx] = (b == 0 && c == 0) ? Scalar(1) : Scalar(0);
                if (c > 0) {
                    const int prev = eng.index(a, b, c - 1);
                    comult[idx] = tensor_product(mult, d, comult[prev], df);
                    antipode[idx] = mul_sv(sf, antipode[prev]);
                } else if (b > 0) {
                    const int prev = eng.index(a, b - 1, 0);
                    comult[idx] = tensor_product(mult, d, comult[prev], de);
                    antipode[idx] = mul_sv(se, antipode[prev]);
                } else if (a > 0) {
                    const int prev = eng.index(a - 1, 0, 0);
                    comult[idx] = tensor_product(mult, d, comult[prev], dk);
                    antipode[idx] = mul_sv(sk, antipode[prev]);
                } else {
                    comult[idx] = {{one, one, Scalar(1)}};
                    antipode[idx] = unit_vec(one);
                }
            }
    return SmallQuantumGroup{n, HopfAlgebra(eng.field_order(), std::move(labels), std::move(mult), unit_vec(one),
                                            std::move(comult), std::move(counit), std::move(antipode))};
}

SubalgebraEmbedding quantum_subalgebra(const SmallQuantumGroup& u, const std::string& which) {
    const int n = u.n;
    std::vector<SparseVec> rows;
    for (int a = 0; a < n; ++a) {
        if (which == "B") {
            rows.push_back(unit_vec(u.pbw(a, 0, 0)));
            continue;
        }
        for (int x = 0; x < n; ++x) {
            if (which == "R1")
                rows.push_back(unit_vec(u.pbw(a, 0, x)));
            else if (which == "R2")
                rows.push_back(unit_vec(u.pbw(a, x, 0)));
            else
                throw MalformedInput("unknown quantum subalgebra " + which);
        }
    }
    return make_subalgebra(u.h, std::move(rows), which);
}

// ---------------------------------------------------------------- modules

SparseVec RightModule::apply(const SparseVec& v, int h) const {
    SparseVec out;
    for (const auto& [j, c] : v) axpy(out, c, act[h][j]);
    return out;
}

RightModule regular_module(const HopfAlgebra& h) {
    RightModule m{h.dim(), std::vector<std::vector<SparseVec>>(h.dim())};
    for (int s = 0; s < h.dim(); ++s)
        for (int j = 0; j < h.dim(); ++j) m.act[s].push_back(h.basis_product(j, s));
    return m;
}

namespace {

SparseVec outer(const SparseVec& x, const SparseVec& y, int ydim) {
    SparseVec out;
    out.reserve(x.size() * y.size());
    for (const auto& [i, u] : x)
        for (const auto& [j, v] : y) out.emplace_back(i * ydim + j, u * v);
    return out;
}

void check_tensor_cap(std::size_t dim, const Caps& caps, const std::string& what) {
    if (dim > caps.max_tensor_dim) throw CapExceeded("max_tensor_dim", caps.max_tensor_dim, what);
}

}  // namespace

RightModule tensor_modules(const HopfAlgebra& h, const RightModule& m, const RightModule& n, const Caps& caps) {
    const std::size_t dim = static_cast<std::size_t>(m.dim) * n.dim;
    check_tensor_cap(dim, caps, "tensor module of dimension " + std::to_string(dim));
    RightModule out{static_cast<int>(dim), std::vector<std::vector<SparseVec>>(h.dim())};
    for (int s = 0; s < h.dim(); ++s) {
        out.act[s].resize(dim);
        const Tensor2& cs = h.basis_coproduct(s);
        for (int i = 0; i < m.dim; ++i)
            for (int j = 0; j < n.dim; ++j) {
                SparseVec v;
                for (const auto& t : cs) axpy(v, t.c, outer(m.act[t.a][i], n.act[t.b][j], n.dim));
                out.act[s][static_cast<std::size_t>(i) * n.dim + j] = std::move(v);
            }
    }
    return out;
}

Vec QuotientModule::one() const { return project(parent->unit()); }

QuotientModule quotient_module(const HopfAlgebra& h, const SubalgebraEmbedding& r) {
    if (r.parent != &h) throw MalformedInput("subalgebra belongs to a different Hopf algebra");
    const int d = h.dim();
    QuotientModule q;
    q.parent = &h;
    q.rplus_h = RowSpace(d);
    for (const auto& x : r.basis) {
        SparseVec plus = x;
        axpy(plus, -h.counit(x), h.unit());
        if (plus.empty()) continue;
        for (int j = 0; j < d && !q.rplus_h.full(); ++j) q.rplus_h.insert(h.multiply(plus, unit_vec(j)));
    }
    q.reps = q.rplus_h.free_columns();
    q.dim = static_cast<int>(q.reps.size());
    if (q.dim * r.dim() != d) throw AssertionFailure("dim Q · dim R != dim H");

    std::vector<SparseVec> proj(d);
    for (int i = 0; i < d; ++i) proj[i] = to_sparse(q.project(unit_vec(i)));
    auto pi2 = [&](const Tensor2& t) {
        Tensor2 out;
        for (const auto& term : t) add_outer(out, term.c, proj[term.a], proj[term.b]);
        normalize(out);
        return out;
    };

    q.module.dim = q.dim;
    q.module.act.assign(d, {});
    for (int s = 0; s < d; ++s)
        for (int j = 0; j < q.dim; ++j) q.module.act[s].push_back(to_sparse(q.project(h.basis_product(q.reps[j], s))));
    for (int j = 0; j < q.dim; ++j) {
        q.coproduct.push_back(pi2(h.basis_coproduct(q.reps[j])));
        q.counit.push_back(h.basis_counit(q.reps[j]));
    }
    // well defined: ε(R⁺H) = 0 and (π⊗π)Δ(R⁺H) = 0
    for (const auto& w : q.rplus_h.basis()) {
        if (!h.counit(w).is_zero()) throw AssertionFailure("counit does not vanish on R⁺H");
        if (!pi2(h.coproduct(w)).empty()) throw AssertionFailure("R⁺H is not a coideal");
    }
    // module coalgebra axioms
    for (int j = 0; j < q.dim; ++j)
        for (int s = 0; s < d; ++s) {
            const SparseVec& qh = q.module.act[s][j];
            Tensor2 left;
            for (const auto& [k, c] : qh)
                for (const auto& t : q.coproduct[k]) left.push_back({t.a, t.b, c * t.c});
            Tensor2 right;
            for (const auto& t : q.coproduct[j])
                for (const auto& u : h.basis_coproduct(s))
                    add_outer(right, t.c * u.c, q.module.act[u.a][t.a], q.module.act[u.b][t.b]);
            if (!equal_tensors(left, right)) throw AssertionFailure("Δ_Q(q·h) != q_1 h_1 ⊗ q_2 h_2");
            Scalar eps;
            for (const auto& [k, c] : qh) eps += c * q.counit[k];
            if (eps != q.counit[j] * h.basis_counit(s)) throw AssertionFailure("ε_Q(q·h) != ε_Q(q) ε(h)");
        }
    return q;
}

RightModule tensor_power_action(const HopfAlgebra& h, const QuotientModule& q, int n, const Caps& caps) {
    if (n < 1) throw MalformedInput("tensor power must be at least 1");
    double dim = 1;
    for (int i = 0; i < n; ++i) dim *= q.dim;
    if (dim > static_cast<double>(caps.max_tensor_dim))
        throw CapExceeded("max_tensor_dim", caps.max_tensor_dim, "Q^⊗" + std::to_string(n));
    RightModule m = q.module;
    for (int i = 1; i < n; ++i) m = tensor_modules(h, m, q.module, caps);
    return m;
}

bool fundamental_iso_check(const HopfAlgebra& h, const RightModule& m, const Caps& caps) {
    const int d = h.dim();
    const std::size_t dim = static_cast<std::size_t>(m.dim) * d;
    check_tensor_cap(dim, caps, "M ⊗ H");
    // φ(m_j ⊗ e_s) = Σ m_j·s_1 ⊗ s_2
    std::vector<SparseVec> phi(dim);
    RowSpace image(static_cast<int>(dim));
    for (int j = 0; j < m.dim; ++j)
        for (int s = 0; s < d; ++s) {
            SparseVec v;
            for (const auto& t : h.basis_coproduct(s)) axpy(v, t.c, outer(m.act[t.a][j], unit_vec(t.b), d));
            image.insert(v);
            phi[static_cast<std::size_t>(j) * d + s] = std::move(v);
        }
    if (!image.full()) return false;
    const RightModule reg = regular_module(h);
    const RightModule diag = tensor_modules(h, m, reg, caps);
    for (int j = 0; j < m.dim; ++j)
        for (int s = 0; s < d; ++s)
            for (int x = 0; x < d; ++x) {
                // φ((m ⊗ s)·x) = φ(m ⊗ s x)
                SparseVec left;
                for (const auto& [k, c] : h.basis_product(s, x)) axpy(left, c, phi[static_cast<std::size_t>(j) * d + k]);
                const SparseVec right = diag.apply(phi[static_cast<std::size_t>(j) * d + s], x);
                if (!equal_sparse(left, right)) return false;
            }
    return true;
}

// ---------------------------------------------------------------- ideals

IdealSubspace classify_ideal(const HopfAlgebra& h, RowSpace space) {
    IdealSubspace out;
    const auto basis = space.basis();
    const int d = h.dim();
    out.right_ideal = true;
    for (const auto& w : basis)
        for (int s = 0; s < d && out.right_ideal; ++s)
            if (!space.contains(h.multiply(w, unit_vec(s)))) out.right_ideal = false;
    out.two_sided = out.right_ideal;
    for (const auto& w : basis)
        for (int s = 0; s < d && out.two_sided; ++s)
            if (!space.contains(h.multiply(unit_vec(s), w))) out.two_sided = false;
    out.hopf_ideal = out.two_sided;
    for (const auto& w : basis) {
        if (!out.hopf_ideal) break;
        if (!h.counit(w).is_zero() || !space.contains(h.antipode(w))) {
            out.hopf_ideal = false;
            break;
        }
        Tensor2 t;
        for (const auto& term : h.coproduct(w))
            add_outer(t, term.c, to_sparse(space.quotient_coords(unit_vec(term.a))),
                      to_sparse(space.quotient_coords(unit_vec(term.b))));
        normalize(t);
        if (!t.empty()) out.hopf_ideal = false;
    }
    out.space = std::move(space);
    return out;
}

namespace {

// Streams the equations Σ_s c_s (m·e_s) = 0 for each basis vector m.
template <class ImageFn>
RowSpace annihilator_from_images(int d, long mdim, ImageFn images) {
    RowSpace eqs(d);
    for (long j = 0; j < mdim && !eqs.full(); ++j) {
        std::map<int, SparseVec> rows;
        for (int s = 0; s < d; ++s)
            for (const auto& [i, c] : images(j, s)) rows[i].emplace_back(s, c);
        for (const auto& [i, r] : rows) {
            eqs.insert(r);
            if (eqs.full()) break;
        }
    }
    return span_of(d, eqs.kernel_basis());
}

// Δ^{(n-1)}(e_s) as (factor indices, coefficient)
using IterTerm = std::pair<std::vector<int>, Scalar>;

std::vector<std::vector<IterTerm>> iterated_coproducts(const HopfAlgebra& h, int n) {
    std::vector<std::vector<IterTerm>> out(h.dim());
    for (int s = 0; s < h.dim(); ++s) {
        std::map<std::vector<int>, Scalar> cur{{{s}, Scalar(1)}};
        for (int m = 1; m < n; ++m) {
            std::map<std::vector<int>, Scalar> next;
            for (const auto& [idx, c] : cur)
                for (const auto& t : h.basis_coproduct(idx.back())) {
                    auto k = idx;
                    k.back() = t.a;
                    k.push_back(t.b);
                    next[k] += c * t.c;
                }
            std::erase_if(next, [](const auto& kv) { return kv.second.is_zero(); });
            cur = std::move(next);
        }
        out[s].assign(cur.begin(), cur.end());
    }
    return out;
}

RowSpace tensor_power_annihilator(const HopfAlgebra& h, const QuotientModule& q, int n) {
    const auto iter = iterated_coproducts(h, n);
    long mdim = 1;
    for (int i = 0; i < n; ++i) mdim *= q.dim;
    std::vector<int> digits(n);
    return annihilator_from_images(h.dim(), mdim, [&](long j, int s) {
        long x = j;
        for (int i = n - 1; i >= 0; --i) {
            digits[i] = static_cast<int>(x % q.dim);
            x /= q.dim;
        }
        SparseVec out;
        for (const auto& [idx, c] : iter[s]) {
            SparseVec v{{0, c}};
            for (int i = 0; i < n; ++i) {
                v = outer(v, q.module.act[idx[i]][digits[i]], q.dim);
                if (v.empty()) break;
            }
            if (!v.empty()) axpy(out, Scalar(1), v);
        }
        return out;
    });
}

}  // namespace

RowSpace module_annihilator(const HopfAlgebra& h, const RightModule& m) {
    return annihilator_from_images(h.dim(), m.dim, [&](long j, int s) { return m.act[s][j]; });
}

AnnihilatorChain annihilator_chain(const HopfAlgebra& h, const QuotientModule& q, const Caps& caps) {
    AnnihilatorChain out;
    double dim = 1;
    for (int n = 1;; ++n) {
        dim *= q.dim;
        if (dim > static_cast<double>(caps.max_tensor_dim)) {
            if (!out.ell_q) out.ell_lower_bound = n - 1;
            return out;
        }
        IdealSubspace ideal = classify_ideal(h, tensor_power_annihilator(h, q, n));
        if (!ideal.two_sided) throw AssertionFailure("Ann Q^⊗" + std::to_string(n) + " is not two-sided");
        if (!out.chain.empty() && !out.chain.back().space.contains_space(ideal.space))
            throw AssertionFailure("annihilator chain is not descending at n = " + std::to_string(n));
        if (out.ell_q) {
            if (!(ideal.space == out.chain.back().space))
                throw AssertionFailure("annihilator chain moves after reaching a Hopf ideal");
            out.chain.push_back(std::move(ideal));
            out.stabilization_checked = true;
            return out;
        }
        const bool hopf = ideal.hopf_ideal;
        out.chain.push_back(std::move(ideal));
        if (hopf) {
            out.ell_q = n;
            out.hopf_core = out.chain.back();
        }
    }
}

// ---------------------------------------------------------------- integrals

SparseVec right_integral(const HopfAlgebra& h, const SubalgebraEmbedding& r) {
    const int d = h.dim(), m = r.dim();
    std::vector<SparseVec> cols(m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            SparseVec v = h.multiply(r.basis[a], r.basis[b]);
            axpy(v, -h.counit(r.basis[b]), r.basis[a]);
            append_block(cols[a], b * d, v);
        }
    const auto ker = kernel_of_columns(cols, m * d);
    if (ker.size() != 1)
        throw AssertionFailure("right integral space of " + r.name + " has dimension " + std::to_string(ker.size()));
    SparseVec t = combine(r.basis, ker[0]);
    return scaled(t, t.front().second.inverse());
}

namespace {

// Scalar s with x·t = s t, or throws.
Scalar eigen_scalar(const SparseVec& xt, const SparseVec& t) {
    const int p = t.front().first;
    const Scalar s = entry(xt, p) / t.front().second;
    if (!equal_sparse(xt, scaled(t, s))) throw AssertionFailure("integral is not an eigenvector of left multiplication");
    return s;
}

}  // namespace

IntegralReport integrals_and_modular(const HopfAlgebra& h, const SubalgebraEmbedding& r, const QuotientModule& q) {
    const int d = h.dim();
    IntegralReport rep;
    rep.t_h = right_integral(h, whole_subalgebra(h));
    rep.t_r = right_integral(h, r);
    for (int i = 0; i < d; ++i) rep.m_h.push_back(eigen_scalar(h.multiply(unit_vec(i), rep.t_h), rep.t_h));
    for (const auto& x : r.basis) rep.m_r.push_back(eigen_scalar(h.multiply(x, rep.t_r), rep.t_r));
    rep.unimodular = true;
    for (int i = 0; i < d; ++i)
        if (rep.m_h[i] != h.basis_counit(i)) rep.unimodular = false;
    rep.frobenius = true;
    for (int b = 0; b < r.dim(); ++b) {
        Scalar v;
        for (const auto& [i, c] : r.basis[b]) v += c * rep.m_h[i];
        if (v != rep.m_r[b]) rep.frobenius = false;
    }
    std::vector<SparseVec> cols(q.dim);
    for (int j = 0; j < q.dim; ++j)
        for (int s = 0; s < d; ++s) {
            SparseVec v = q.module.act[s][j];
            axpy(v, -h.basis_counit(s), unit_vec(j));
            append_block(cols[j], s * q.dim, v);
        }
    rep.q_integral_basis = kernel_of_columns(cols, d * q.dim);
    for (const auto& t : rep.q_integral_basis) {
        Scalar e;
        for (int j = 0; j < q.dim; ++j) e += t[j] * q.counit[j];
        if (!e.is_zero()) rep.semisimple_extension = true;
    }
    if (rep.q_integral_basis.empty() == rep.frobenius)
        throw AssertionFailure("Q has a nonzero integral but m_H|_R != m_R, or conversely");

    bool well_defined = true;
    for (const auto& w : q.rplus_h.basis())
        if (!h.multiply(rep.t_r, w).empty()) well_defined = false;
    RowSpace image(d);
    for (int i = 0; i < d; ++i) image.insert(h.multiply(rep.t_r, unit_vec(i)));
    rep.q_iso_trh = well_defined && image.dim() == q.dim;
    if (!rep.q_iso_trh) throw AssertionFailure("Q → t_R H is not a bijection");
    return rep;
}

// ---------------------------------------------------------------- trace ideals

RowSpace trace_ideal(const HopfAlgebra& h, const RightModule& m, const Caps& caps) {
    const int d = h.dim();
    const std::size_t unknowns = static_cast<std::size_t>(m.dim) * d;
    if (unknowns > caps.max_hom_unknowns)
        throw CapExceeded("max_hom_unknowns", caps.max_hom_unknowns, "Hom(M, H) with " + std::to_string(unknowns) +
                                                                         " unknowns");
    // right multiplication by e_s, transposed: tr[s][k] = {(i, c) : (e_i e_s)_k = c}
    std::vector<std::vector<SparseVec>> tr(d, std::vector<SparseVec>(d));
    for (int s = 0; s < d; ++s)
        for (int i = 0; i < d; ++i)
            for (const auto& [k, c] : h.basis_product(i, s)) tr[s][k].emplace_back(i, c);
    // f_j = f(m_j) has unknowns j*d + i; f(m_j e_s) = f(m_j) e_s
    RowSpace eqs(static_cast<int>(unknowns));
    for (int j = 0; j < m.dim && !eqs.full(); ++j)
        for (int s = 0; s < d && !eqs.full(); ++s) {
            const SparseVec& img = m.act[s][j];
            for (int k = 0; k < d; ++k) {
                SparseVec row;
                for (const auto& [l, c] : img) row.emplace_back(l * d + k, c);
                for (const auto& [i, c] : tr[s][k]) row.emplace_back(j * d + i, -c);
                std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
                SparseVec merged;
                for (auto& [idx, c] : row) {
                    if (!merged.empty() && merged.back().first == idx)
                        merged.back().second += c;
                    else
                        merged.emplace_back(idx, c);
                }
                std::erase_if(merged, [](const auto& p) { return p.second.is_zero(); });
                if (!merged.empty()) eqs.insert(merged);
            }
        }
    RowSpace tau(d);
    for (const auto& f : eqs.kernel_basis()) {
        for (int j = 0; j < m.dim && !tau.full(); ++j) {
            SparseVec v;
            for (int i = 0; i < d; ++i)
                if (!f[static_cast<std::size_t>(j) * d + i].is_zero()) v.emplace_back(i, f[static_cast<std::size_t>(j) * d + i]);
            tau.insert(v);
        }
        if (tau.full()) break;
    }
    return tau;
}

TraceIdealChain trace_ideals(const HopfAlgebra& h, const QuotientModule& q, const SparseVec& t_r, int n_max,
                             const Caps& caps) {
    const int d = h.dim();
    TraceIdealChain out;
    out.htrh = RowSpace(d);
    for (int i = 0; i < d; ++i) {
        const SparseVec left = h.multiply(unit_vec(i), t_r);
        for (int j = 0; j < d && !out.htrh.full(); ++j) out.htrh.insert(h.multiply(left, unit_vec(j)));
    }
    RightModule m = q.module;
    for (int n = 1; n <= n_max; ++n) {
        if (n > 1) {
            const std::size_t dim = static_cast<std::size_t>(m.dim) * q.dim;
            if (dim > caps.max_tensor_dim || dim * d > caps.max_hom_unknowns) {
                out.partial = true;
                break;
            }
            m = tensor_modules(h, m, q.module, caps);
        }
        RowSpace tau = trace_ideal(h, m, caps);
        if (!out.chain.empty()) {
            if (!tau.contains_space(out.chain.back()))
                throw AssertionFailure("trace ideal chain is not ascending at n = " + std::to_string(n));
            if (!out.l_q && tau == out.chain.back()) out.l_q = n - 1;
        }
        out.chain.push_back(std::move(tau));
        if (!out.l_q && out.chain.back().full()) out.l_q = n;
        if (out.l_q) break;
    }
    if (!out.l_q) out.partial = true;
    out.htrh_check = !out.chain.empty() && out.chain.front() == out.htrh;
    if (!out.chain.empty() && !out.htrh_check) throw AssertionFailure("τ(Q) != H t_R H");
    return out;
}

// ---------------------------------------------------------------- idealizer, center

IdealizerReport idealizer_and_endq(const HopfAlgebra& h, const SubalgebraEmbedding& r, const QuotientModule& q) {
    const int d = h.dim();
    const auto basis = q.rplus_h.basis();
    std::vector<SparseVec> cols(d);
    for (int i = 0; i < d; ++i)
        for (std::size_t w = 0; w < basis.size(); ++w)
            append_block(cols[i], static_cast<int>(w) * q.dim,
                         to_sparse(q.project(h.multiply(unit_vec(i), basis[w]))));
    IdealizerReport out;
    out.t = span_of(d, kernel_of_columns(cols, static_cast<int>(basis.size()) * q.dim));
    if (!out.t.contains_space(q.rplus_h)) throw AssertionFailure("idealizer does not contain R⁺H");
    out.dim_end_q = out.t.dim() - q.rplus_h.dim();
    RowSpace hr(d);
    for (const auto& x : r.basis) {
        SparseVec plus = x;
        axpy(plus, -h.counit(x), h.unit());
        if (plus.empty()) continue;
        for (int i = 0; i < d && !hr.full(); ++i) hr.insert(h.multiply(unit_vec(i), plus));
    }
    out.normal = hr == q.rplus_h;
    if ((out.dim_end_q == q.dim) != out.normal)
        throw AssertionFailure("End Q → Q is an isomorphism exactly when R⁺H = HR⁺ fails");
    return out;
}

RowSpace center(const HopfAlgebra& h) {
    const int d = h.dim();
    std::vector<SparseVec> cols(d);
    for (int i = 0; i < d; ++i)
        for (int s = 0; s < d; ++s) {
            SparseVec v = h.basis_product(i, s);
            axpy(v, Scalar(-1), h.basis_product(s, i));
            append_block(cols[i], s * d, v);
        }
    return span_of(d, kernel_of_columns(cols, d * d));
}

FaithfulReport faithful_check(const HopfAlgebra& h, const QuotientModule& q) {
    FaithfulReport out;
    out.rplus_h_meets_center_trivially = intersection(q.rplus_h, center(h)).dim() == 0;
    out.ann_q_zero = module_annihilator(h, q.module).dim() == 0;
    if (out.rplus_h_meets_center_trivially != out.ann_q_zero)
        throw AssertionFailure("faithfulness disagrees with R⁺H ∩ Z(H) = 0");
    return out;
}

// ---------------------------------------------------------------- towers and pairs

namespace {

RowSpace plus_times(const HopfAlgebra& h, const std::vector<SparseVec>& sub, const std::vector<SparseVec>& right) {
    RowSpace out(h.dim());
    for (const auto& x : sub) {
        SparseVec plus = x;
        axpy(plus, -h.counit(x), h.unit());
        if (plus.empty()) continue;
        for (const auto& y : right) out.insert(h.multiply(plus, y));
    }
    return out;
}

std::vector<SparseVec> all_basis(const HopfAlgebra& h) {
    std::vector<SparseVec> out;
    for (int i = 0; i < h.dim(); ++i) out.push_back(unit_vec(i));
    return out;
}

}  // namespace

LinearDisjointReport linear_disjoint_check(const HopfAlgebra& h, const SubalgebraEmbedding& r,
                                           const SubalgebraEmbedding& k) {
    LinearDisjointReport out;
    out.dim_r = r.dim();
    out.dim_k = k.dim();
    RowSpace rk(h.dim());
    for (const auto& x : r.basis)
        for (const auto& y : k.basis) rk.insert(h.multiply(x, y));
    out.dim_rk = rk.dim();
    const RowSpace b = intersection(r.span, k.span);
    out.dim_b = b.dim();
    out.linear_disjoint = rk.full() && h.dim() * out.dim_b == out.dim_r * out.dim_k;
    if (!out.linear_disjoint) return out;
    const QuotientModule q = quotient_module(h, r);
    const RowSpace bplus_k = plus_times(h, b.basis(), k.basis);
    bool ok = k.dim() - bplus_k.dim() == q.dim;
    for (const auto& w : bplus_k.basis())
        if (!is_zero(q.project(w))) ok = false;
    RowSpace image(q.dim);
    for (const auto& x : k.basis) image.insert(q.project(x));
    out.quotient_iso = ok && image.full();
    return out;
}

SubalgebraModule restrict_regular(const HopfAlgebra& h, const SubalgebraEmbedding& r) {
    SubalgebraModule w{r.dim(), std::vector<std::vector<SparseVec>>(r.dim())};
    for (int i = 0; i < r.dim(); ++i)
        for (int j = 0; j < r.dim(); ++j) w.act[i].push_back(to_sparse(rref_coords(r.span, h.multiply(r.basis[j], r.basis[i]))));
    return w;
}

SubalgebraModule trivial_module(const SubalgebraEmbedding& r) {
    SubalgebraModule w{1, std::vector<std::vector<SparseVec>>(r.dim())};
    for (int i = 0; i < r.dim(); ++i) {
        const Scalar e = r.parent->counit(r.basis[i]);
        w.act[i].push_back(e.is_zero() ? SparseVec{} : SparseVec{{0, e}});
    }
    return w;
}

namespace {

// W ⊗_R H as a quotient of W ⊗ H (index j*d + s)
struct Induced {
    int wdim = 0;
    RowSpace rel{0};
    std::vector<int> free;
    int dim() const { return static_cast<int>(free.size()); }
};

Induced induce(const HopfAlgebra& h, const SubalgebraEmbedding& r, const SubalgebraModule& w, const Caps& caps) {
    const int d = h.dim();
    const std::size_t total = static_cast<std::size_t>(w.dim) * d;
    if (total > caps.max_hom_unknowns)
        throw CapExceeded("max_hom_unknowns", caps.max_hom_unknowns, "W ⊗ H of dimension " + std::to_string(total));
    Induced x{w.dim, RowSpace(static_cast<int>(total)), {}};
    for (int j = 0; j < w.dim; ++j)
        for (int i = 0; i < r.dim(); ++i)
            for (int s = 0; s < d; ++s) {
                SparseVec v = outer(w.act[i][j], unit_vec(s), d);
                axpy(v, Scalar(-1), outer(unit_vec(j), h.multiply(r.basis[i], unit_vec(s)), d));
                x.rel.insert(v);
            }
    x.free = x.rel.free_columns();
    return x;
}

// x · e_s for x in X coordinates
Vec induced_act(const HopfAlgebra& h, const Induced& x, const Vec& v, int s) {
    const int d = h.dim();
    SparseVec lifted;
    for (int f = 0; f < x.dim(); ++f) {
        if (v[f].is_zero()) continue;
        const int j = x.free[f] / d, t = x.free[f] % d;
        axpy(lifted, v[f], outer(unit_vec(j), h.basis_product(t, s), d));
    }
    return x.rel.quotient_coords(lifted);
}

}  // namespace

UlbrichReport ulbrich_verify(const HopfAlgebra& h, const SubalgebraEmbedding& r, const QuotientModule& q,
                             const SubalgebraModule& w, const Caps& caps) {
    const int d = h.dim();
    const Induced x = induce(h, r, w, caps);
    UlbrichReport out;
    out.dim_x = x.dim();
    if (static_cast<std::size_t>(x.dim()) * q.dim > caps.max_hom_unknowns)
        throw CapExceeded("max_hom_unknowns", caps.max_hom_unknowns, "X ⊗ Q");
    std::vector<SparseVec> proj(d);
    for (int i = 0; i < d; ++i) proj[i] = to_sparse(q.project(unit_vec(i)));
    // ρ(w_j ⊗ e_s) = Σ [w_j ⊗ s_1] ⊗ π(s_2) in X ⊗ Q
    auto rho_pair = [&](int j, int s) {
        SparseVec out_v;
        for (const auto& t : h.basis_coproduct(s)) {
            const SparseVec xj = to_sparse(x.rel.quotient_coords(unit_vec(j * d + t.a)));
            axpy(out_v, t.c, outer(xj, proj[t.b], q.dim));
        }
        return out_v;
    };
    auto rho = [&](const SparseVec& v) {
        SparseVec out_v;
        for (const auto& [idx, c] : v) axpy(out_v, c, rho_pair(idx / d, idx % d));
        return out_v;
    };
    for (const auto& rel : x.rel.basis())
        if (!rho(rel).empty()) throw AssertionFailure("coaction is not defined on W ⊗_R H");
    const SparseVec one = to_sparse(q.one());
    std::vector<SparseVec> cols(x.dim());
    for (int f = 0; f < x.dim(); ++f) {
        SparseVec v = rho(unit_vec(x.free[f]));
        axpy(v, Scalar(-1), outer(unit_vec(f), one, q.dim));
        cols[f] = std::move(v);
    }
    const RowSpace co = span_of(x.dim(), kernel_of_columns(cols, x.dim() * q.dim));
    out.dim_coinvariants = co.dim();
    // R acts on the coinvariants; induce again and map [c ⊗ h] ↦ c·h
    const auto cbasis = co.dense_basis();
    SubalgebraModule cw{co.dim(), std::vector<std::vector<SparseVec>>(r.dim())};
    for (int i = 0; i < r.dim(); ++i)
        for (const auto& c : cbasis) {
            Vec v(x.dim());
            for (const auto& [s, coef] : r.basis[i]) {
                const Vec part = induced_act(h, x, c, s);
                for (int f = 0; f < x.dim(); ++f) v[f] += coef * part[f];
            }
            cw.act[i].push_back(to_sparse(rref_coords(co, to_sparse(v))));
        }
    const Induced y = induce(h, r, cw, caps);
    RowSpace image(x.dim());
    for (std::size_t k = 0; k < cbasis.size(); ++k)
        for (int s = 0; s < d; ++s) image.insert(induced_act(h, x, cbasis[k], s));
    out.bijective = y.dim() == x.dim() && image.full();
    return out;
}

bool tower_dimension_check(const HopfAlgebra& h, const SubalgebraEmbedding& r, const SubalgebraEmbedding& k) {
    if (!r.span.contains_space(k.span)) throw MalformedInput("K is not contained in R");
    const int d = h.dim();
    const int q_hk = d - plus_times(h, k.basis, all_basis(h)).dim();
    const int q_hr = d - plus_times(h, r.basis, all_basis(h)).dim();
    const int q_rk = r.dim() - plus_times(h, k.basis, r.basis).dim();
    return q_hk == (q_rk - 1) * (d / r.dim()) + q_hr;
}

bool is_normal_subalgebra(const HopfAlgebra& h, const SubalgebraEmbedding& k) {
    RowSpace left(h.dim());
    for (const auto& x : k.basis) {
        SparseVec plus = x;
        axpy(plus, -h.counit(x), h.unit());
        if (plus.empty()) continue;
        for (int i = 0; i < h.dim(); ++i) left.insert(h.multiply(unit_vec(i), plus));
    }
    return left == plus_times(h, k.basis, all_basis(h));
}

bool core_containment_check(const HopfAlgebra& h, const SubalgebraEmbedding& k, const RowSpace& core) {
    if (!is_normal_subalgebra(h, k)) throw MalformedInput("core containment needs a normal Hopf subalgebra");
    return core.contains_space(plus_times(h, k.basis, all_basis(h)));
}

HopfPairReport analyze_hopf_pair(const HopfAlgebra& h, const SubalgebraEmbedding& r, int trace_n_max,
                                 const Caps& caps) {
    HopfPairReport out;
    const QuotientModule q = quotient_module(h, r);
    out.dim_h = h.dim();
    out.dim_r = r.dim();
    out.dim_q = q.dim;
    out.dim_rplus_h = q.rplus_h.dim();
    out.ann = annihilator_chain(h, q, caps);
    out.integrals = integrals_and_modular(h, r, q);
    out.traces = trace_ideals(h, q, out.integrals.t_r, trace_n_max, caps);
    out.idealizer = idealizer_and_endq(h, r, q);
    out.faithful = faithful_check(h, q);
    if (!out.traces.chain.empty() && out.traces.chain.front().full() && h.counit(out.integrals.t_r).is_zero())
        throw AssertionFailure("Q is a generator but ε(t_R) = 0");
    const bool some_power_faithful =
        std::any_of(out.ann.chain.begin(), out.ann.chain.end(), [](const IdealSubspace& i) { return i.dim() == 0; });
    if (some_power_faithful && out.ann.ell_q && out.traces.l_q && *out.ann.ell_q != *out.traces.l_q)
        throw AssertionFailure("L_Q != ℓ_Q although a tensor power of Q is faithful");
    return out;
}

// ---------------------------------------------------------------- JSON

namespace {

Scalar scalar_from_json(const nlohmann::json& v) {
    if (v.is_number_integer()) return Scalar(v.get<long>());
    if (v.is_string()) return Scalar::parse(v.get<std::string>());
    throw MalformedInput("expected an integer or a scalar string, got " + v.dump());
}

nlohmann::json dense_row(const SparseVec& v, int d) {
    nlohmann::json row = nlohmann::json::array();
    for (const auto& x : to_dense(v, d)) row.push_back(x.to_string());
    return row;
}

SparseVec row_from_json(const nlohmann::json& row, int d, const std::string& where) {
    if (!row.is_array() || static_cast<int>(row.size()) != d)
        throw MalformedInput(where + ": expected a row of length " + std::to_string(d));
    Vec v;
    for (const auto& x : row) v.push_back(scalar_from_json(x));
    return to_sparse(v);
}

int index_from_json(const nlohmann::json& v, int d, const std::string& where) {
    if (!v.is_number_integer() || v.get<int>() < 0 || v.get<int>() >= d)
        throw MalformedInput(where + ": index out of range");
    return v.get<int>();
}

}  // namespace

nlohmann::json hopf_to_json(const HopfAlgebra& h, const std::vector<SubalgebraEmbedding>& subs) {
    const int d = h.dim();
    nlohmann::json j;
    j["dim"] = d;
    j["field_order"] = h.field_order();
    j["labels"] = h.labels();
    auto& mult = j["mult"] = nlohmann::json::array();
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
            for (const auto& [k, c] : h.basis_product(a, b)) mult.push_back({a, b, k, c.to_string()});
    auto& comult = j["comult"] = nlohmann::json::array();
    for (int i = 0; i < d; ++i)
        for (const auto& t : h.basis_coproduct(i)) comult.push_back({i, t.a, t.b, t.c.to_string()});
    auto& counit = j["counit"] = nlohmann::json::array();
    for (int i = 0; i < d; ++i) counit.push_back(h.basis_counit(i).to_string());
    auto& antipode = j["antipode"] = nlohmann::json::array();
    for (int i = 0; i < d; ++i) antipode.push_back(dense_row(h.basis_antipode(i), d));
    j["unit"] = dense_row(h.unit(), d);
    auto& sj = j["subalgebras"] = nlohmann::json::object();
    for (const auto& s : subs) {
        auto& rows = sj[s.name] = nlohmann::json::array();
        for (const auto& r : s.basis) rows.push_back(dense_row(r, d));
    }
    return j;
}

HopfAlgebra hopf_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw MalformedInput("Hopf algebra JSON must be an object");
    for (const char* key : {"dim", "mult", "comult", "counit", "antipode"})
        if (!j.contains(key)) throw MalformedInput(std::string("Hopf algebra JSON is missing \"") + key + "\"");
    const int d = j["dim"].get<int>();
    if (d < 1) throw MalformedInput("dim: must be positive");
    const int field_order = j.value("field_order", 1);
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j["labels"].get<std::vector<std::string>>();
    std::vector<SparseVec> mult(static_cast<std::size_t>(d) * d);
    for (std::size_t t = 0; t < j["mult"].size(); ++t) {
        const auto& e = j["mult"][t];
        const std::string where = "mult[" + std::to_string(t) + "]";
        if (!e.is_array() || e.size() != 4) throw MalformedInput(where + ": expected [i, j, k, scalar]");
        const int a = index_from_json(e[0], d, where), b = index_from_json(e[1], d, where),
                  k = index_from_json(e[2], d, where);
        axpy(mult[static_cast<std::size_t>(a) * d + b], scalar_from_json(e[3]), unit_vec(k));
    }
    std::vector<Tensor2> comult(d);
    for (std::size_t t = 0; t < j["comult"].size(); ++t) {
        const auto& e = j["comult"][t];
        const std::string where = "comult[" + std::to_string(t) + "]";
        if (!e.is_array() || e.size() != 4) throw MalformedInput(where + ": expected [i, a, b, scalar]");
        const int i = index_from_json(e[0], d, where);
        comult[i].push_back({index_from_json(e[1], d, where), index_from_json(e[2], d, where), scalar_from_json(e[3])});
    }
    if (j["counit"].size() != static_cast<std::size_t>(d)) throw MalformedInput("counit: wrong length");
    Vec counit;
    for (const auto& x : j["counit"]) counit.push_back(scalar_from_json(x));
    if (j["antipode"].size() != static_cast<std::size_t>(d)) throw MalformedInput("antipode: wrong number of rows");
    std::vector<SparseVec> antipode;
    for (int i = 0; i < d; ++i) antipode.push_back(row_from_json(j["antipode"][i], d, "antipode[" + std::to_string(i) + "]"));
    const SparseVec unit = j.contains("unit") ? row_from_json(j["unit"], d, "unit") : unit_vec(0);
    return HopfAlgebra(field_order, std::move(labels), std::move(mult), unit, std::move(comult), std::move(counit),
                       std::move(antipode));
}

std::vector<SubalgebraEmbedding> subalgebras_from_json(const HopfAlgebra& h, const nlohmann::json& j) {
    std::vector<SubalgebraEmbedding> out;
    if (!j.contains("subalgebras")) return out;
    for (const auto& [name, rows] : j["subalgebras"].items()) {
        std::vector<SparseVec> vs;
        for (std::size_t i = 0; i < rows.size(); ++i)
            vs.push_back(row_from_json(rows[i], h.dim(), "subalgebras." + name + "[" + std::to_string(i) + "]"));
        out.push_back(make_subalgebra(h, std::move(vs), name));
    }
    return out;
}

nlohmann::json hopf_pair_report_to_json(const HopfAlgebra& h, const HopfPairReport& r) {
    nlohmann::json j;
    j["dim_H"] = r.dim_h;
    j["dim_R"] = r.dim_r;
    j["dim_Q"] = r.dim_q;
    j["dim_RplusH"] = r.dim_rplus_h;
    auto& ann = j["annihilators"];
    ann["dims"] = nlohmann::json::array();
    for (const auto& i : r.ann.chain) ann["dims"].push_back(i.dim());
    ann["ell_Q"] = r.ann.ell_q ? nlohmann::json(*r.ann.ell_q) : nlohmann::json(nullptr);
    ann["ell_Q_lower_bound"] = r.ann.ell_lower_bound ? nlohmann::json(*r.ann.ell_lower_bound) : nlohmann::json(nullptr);
    ann["hopf_core_dim"] = r.ann.hopf_core ? nlohmann::json(r.ann.hopf_core->dim()) : nlohmann::json(nullptr);
    ann["stabilization_checked"] = r.ann.stabilization_checked;
    if (!r.ann.chain.empty()) {
        ann["ann_Q_is_hopf_ideal"] = r.ann.chain.front().hopf_ideal;
        auto& b = ann["ann_Q_basis"] = nlohmann::json::array();
        for (const auto& v : r.ann.chain.front().space.basis()) b.push_back(h.format(v));
    }
    auto& in = j["integrals"];
    in["t_R"] = h.format(r.integrals.t_r);
    in["t_H"] = h.format(r.integrals.t_h);
    in["frobenius"] = r.integrals.frobenius;
    in["unimodular"] = r.integrals.unimodular;
    in["q_integral_dim"] = r.integrals.q_integral_basis.size();
    in["semisimple_extension"] = r.integrals.semisimple_extension;
    auto& tr = j["trace_ideals"];
    tr["dims"] = nlohmann::json::array();
    for (const auto& t : r.traces.chain) tr["dims"].push_back(t.dim());
    tr["L_Q"] = r.traces.l_q ? nlohmann::json(*r.traces.l_q) : nlohmann::json(nullptr);
    tr["partial"] = r.traces.partial;
    tr["HtRH_check"] = r.traces.htrh_check;
    if (!r.traces.chain.empty()) {
        auto& b = tr["tau_Q_basis"] = nlohmann::json::array();
        for (const auto& v : r.traces.chain.front().basis()) b.push_back(h.format(v));
    }
    j["idealizer"] = {{"dim_T", r.idealizer.t.dim()}, {"dim_End_Q", r.idealizer.dim_end_q}, {"normal", r.idealizer.normal}};
    j["faithful"] = {{"ann_Q_zero", r.faithful.ann_q_zero},
                     {"RplusH_meets_center_trivially", r.faithful.rplus_h_meets_center_trivially}};
    return j;
}

}  // namespace qdepth
