#include "qdepth/depth.hpp"

#include "qdepth/errors.hpp"
#include "qdepth/subgroups.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace qdepth {

namespace {

std::string opt_str(const std::optional<int>& v) { return v ? std::to_string(*v) : "unbounded"; }

// Powers with the previous one kept, for the sequential pattern scans.
class PowerCache {
public:
    PowerCache(ExactMatrix left, ExactMatrix base) : left_(std::move(left)), base_(std::move(base)) {}
    // left * base^k for k = 0, 1, 2, ... requested in nondecreasing order
    const ExactMatrix& at(int k) {
        if (k < k_) throw std::logic_error("power cache queried backwards");
        while (k_ < k) {
            cur_ = cur_ * base_;
            ++k_;
        }
        return cur_;
    }
    void start() {
        cur_ = left_;
        k_ = 0;
    }

private:
    ExactMatrix left_, base_, cur_;
    int k_ = 0;
};

std::optional<int> stabilization(const ExactMatrix& left, const ExactMatrix& base, int offset, int budget) {
    PowerCache pc(left, base);
    pc.start();
    return pattern_stabilization_index([&](int k) { return pc.at(k + offset); }, budget);
}

int bipartite_white_diameter(const ExactMatrix& m) {
    const int p = m.rows(), q = m.cols();
    int best = 0;
    for (int s = 0; s < p; ++s) {
        std::vector<int> dist(p + q, -1);
        std::deque<int> queue{s};
        dist[s] = 0;
        while (!queue.empty()) {
            const int v = queue.front();
            queue.pop_front();
            if (v < p) {
                for (int j = 0; j < q; ++j)
                    if (!m(v, j).is_zero() && dist[p + j] < 0) {
                        dist[p + j] = dist[v] + 1;
                        queue.push_back(p + j);
                    }
            } else {
                for (int i = 0; i < p; ++i)
                    if (!m(i, v - p).is_zero() && dist[i] < 0) {
                        dist[i] = dist[v] + 1;
                        queue.push_back(i);
                    }
            }
        }
        for (int i = 0; i < p; ++i) best = std::max(best, dist[i]);
    }
    return best;
}

std::optional<int> trivial_row_stabilization(const ExactMatrix& c, int budget) {
    const int q = c.cols();
    Vec v(q);
    v[0] = Scalar(1);
    auto support = [](const Vec& x) {
        std::vector<char> s(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) s[i] = !x[i].is_zero();
        return s;
    };
    std::vector<char> prev = support(v);
    for (int n = 0; n <= budget; ++n) {
        Vec next(q);
        for (int j = 0; j < q; ++j)
            for (int i = 0; i < q; ++i)
                if (!v[i].is_zero() && !c(i, j).is_zero()) next[j] += v[i] * c(i, j);
        auto s = support(next);
        if (s == prev) return n;
        prev = std::move(s);
        v = std::move(next);
    }
    return std::nullopt;
}

void check_inclusion_shape(const ExactMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) throw MalformedInput("inclusion matrix is empty");
    if (!m.is_nonnegative_integer()) throw MalformedInput("inclusion matrix must have nonnegative integer entries");
    for (int i = 0; i < m.rows(); ++i) {
        bool nz = false;
        for (int j = 0; j < m.cols(); ++j) nz |= !m(i, j).is_zero();
        if (!nz) throw MalformedInput("inclusion matrix row " + std::to_string(i + 1) + " is zero");
    }
    for (int j = 0; j < m.cols(); ++j) {
        bool nz = false;
        for (int i = 0; i < m.rows(); ++i) nz |= !m(i, j).is_zero();
        if (!nz) throw MalformedInput("inclusion matrix column " + std::to_string(j + 1) + " is zero");
    }
}

std::vector<std::string> default_labels(const std::string& stem, int n) {
    std::vector<std::string> out;
    for (int i = 0; i < n; ++i) out.push_back(stem + std::to_string(i + 1));
    return out;
}

}  // namespace

EigenvalueSet eigenvalues_via_class_formula(const Subgroup& h, const Group& h_group) {
    const Group& g = h.parent();
    const auto& gcls = g.classes();
    std::vector<long> meet(gcls.size(), 0);
    std::vector<std::set<int>> hclasses(gcls.size());
    for (int k = 0; k < h.order(); ++k) {
        const int c = g.class_of(h.elements()[k]);
        ++meet[c];
        hclasses[c].insert(h_group.class_of(k));
    }
    EigenvalueSet out;
    out.source = "class-formula";
    out.all_classes_restrict_to_one = true;
    std::set<Rational> vals;
    const Rational index(static_cast<long>(g.order() / h.order()));
    for (std::size_t c = 0; c < gcls.size(); ++c) {
        if (meet[c] == 0) continue;
        vals.insert(index * Rational(meet[c]) / Rational(static_cast<long>(gcls[c].size())));
        if (hclasses[c].size() != 1) out.all_classes_restrict_to_one = false;
    }
    out.values.assign(vals.begin(), vals.end());
    return out;
}

McKayQuiver mckay_quiver(const ExactMatrix& c, const std::vector<std::string>& labels) {
    McKayQuiver q;
    q.vertices = c.rows();
    q.labels = labels.empty() ? default_labels("chi", c.rows()) : labels;
    const auto ints = c.to_integers();
    for (int i = 0; i < c.rows(); ++i)
        for (int j = 0; j < c.cols(); ++j)
            if (ints[i][j] > 0) q.edges.push_back({i, j, ints[i][j]});
    return q;
}

DepthReport depth_report(const ExactMatrix& m, const std::optional<PairContext>& ctx, std::vector<std::string> row_labels,
                         std::vector<std::string> col_labels) {
    check_inclusion_shape(m);
    DepthReport r;
    r.m = m;
    r.b = m * m.transpose();
    r.c = m.transpose() * m;
    const int p = m.rows(), q = m.cols();
    r.row_labels = row_labels.empty() ? default_labels("phi", p) : std::move(row_labels);
    r.col_labels = col_labels.empty() ? default_labels("chi", q) : std::move(col_labels);
    r.budget = std::max(p, q);

    const auto nb = stabilization(r.b, r.b, -1, r.budget);
    const auto ne = stabilization(m, r.c, -1, r.budget);
    const auto nh = stabilization(r.c, r.c, -1, r.budget);
    if (nb) r.d_odd = 2 * *nb + 1;
    if (ne) r.d_ev = 2 * *ne;
    if (nh) r.d_h = 2 * *nh + 1;
    r.method_tags["d_odd"] = "pattern(B^n)";
    r.method_tags["d_ev"] = "pattern(M C^(n-1)) vs pattern(M C^n)";
    r.method_tags["d_h"] = "pattern(C^n)";

    if (m.is_permutation()) {
        r.d_odd = 1;
        r.d_h = 1;
        r.method_tags["d_odd"] = r.method_tags["d_h"] = "permutation matrix";
    }
    if (ctx && ctx->h) {
        r.adjoint_test = depth_one_adjoint_test(*ctx->h);
        if (*r.adjoint_test) {
            r.d_odd = 1;
            r.method_tags["d_odd"] = "adjoint test";
        }
    }
    if (r.d_odd && r.d_ev)
        r.d_0 = std::min(*r.d_odd, *r.d_ev);
    else if (r.d_odd || r.d_ev)
        r.d_0 = r.d_odd ? r.d_odd : r.d_ev;  // lower of what is known; the other is unbounded
    r.method_tags["d_0"] = "min(d_ev, d_odd)";

    r.minpoly_b = minimal_polynomial(r.b);
    r.minpoly_c = minimal_polynomial(r.c);
    r.eigen_b = factor_rational_roots(r.minpoly_b);
    r.eigen_c = factor_rational_roots(r.minpoly_c);
    r.method_tags["minpoly"] = "Krylov";

    r.cm_relation = (r.c * evaluate(r.minpoly_b, r.c)).is_zero();
    if (!r.cm_relation) throw AssertionFailure("C m_B(C) is not zero");
    if (r.minpoly_c == r.minpoly_b)
        r.minpoly_c_form = "m";
    else if (r.minpoly_c == ExactPolynomial::x() * r.minpoly_b)
        r.minpoly_c_form = "Xm";
    else if (ExactPolynomial::x() * r.minpoly_c == r.minpoly_b)
        r.minpoly_c_form = "m/X";  // C invertible, B singular; impossible for proper subgroups
    else
        throw AssertionFailure("minpoly_C does not divide X m_B");

    const auto comps = support_components(r.c);
    r.c_components = static_cast<int>(comps.size());
    r.indecomposable_c = comps.size() == 1;
    r.quiver = mckay_quiver(r.c, r.col_labels);

    r.white_diameter = bipartite_white_diameter(m);
    if (!m.is_permutation() && !(r.adjoint_test && *r.adjoint_test) && r.d_odd &&
        *r.d_odd != std::max(3, r.white_diameter + 1))
        throw AssertionFailure("d_odd disagrees with the white-vertex diameter");

    r.ell_c = trivial_row_stabilization(r.c, q);
    // only meaningful when column 0 is the trivial character of a group pair
    if (ctx && ctx->h && r.ell_c && r.d_h && *r.d_h != 2 * *r.ell_c + 1)
        throw AssertionFailure("d_h " + std::to_string(*r.d_h) + " disagrees with 2 ell_C + 1 = " +
                               std::to_string(2 * *r.ell_c + 1));
    r.method_tags["ell_c"] = "supp(e_0 C^n)";

    if (ctx && ctx->h && ctx->h_group) {
        const Subgroup& h = *ctx->h;
        r.index = Rational(static_cast<long>(h.parent().order() / h.order()));
        const auto roots = r.eigen_c.values();
        r.pf_check = r.minpoly_c.evaluate(*r.index) == 0 && !roots.empty() && roots.back() == *r.index;
        if (!*r.pf_check) throw AssertionFailure("Perron-Frobenius root of C is not the index");

        r.class_eigenvalues = eigenvalues_via_class_formula(h, *ctx->h_group);
        std::vector<Rational> nonzero;
        for (const auto& v : r.eigen_b.values())
            if (v != 0) nonzero.push_back(v);
        r.eigen_match = r.eigen_b.residual.degree() == 0 && nonzero == r.class_eigenvalues->values;
        if (!*r.eigen_match) throw AssertionFailure("class-formula eigenvalues differ from the spectrum of B");
        r.method_tags["eigenvalues"] = "class-formula and minpoly";
    }
    if (r.d_0 && r.d_h) r.conjecture_holds = *r.d_0 <= *r.d_h;
    return r;
}

PairAnalysis analyze_pair(const CharacterTable& tab_g, const Subgroup& h, const Group& h_group,
                          const CharacterTable& tab_h) {
    PairAnalysis a{inclusion_matrix(tab_g, tab_h, class_fusion(h, h_group)), {}};
    std::vector<std::string> rows, cols;
    for (int i : a.inclusion.row_labels) rows.push_back("phi" + std::to_string(i + 1));
    for (int j : a.inclusion.col_labels) cols.push_back("chi" + std::to_string(j + 1));
    a.report = depth_report(a.inclusion.m, PairContext{&h, &h_group}, rows, cols);
    return a;
}

namespace {

nlohmann::json matrix_json(const ExactMatrix& a) { return a.to_integers(); }

nlohmann::json opt_json(const std::optional<int>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); }

nlohmann::json roots_json(const RationalRoots& rr) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& [v, mult] : rr.roots) out.push_back({{"value", v.get_str()}, {"multiplicity", mult}});
    return out;
}

}  // namespace

nlohmann::json depth_report_to_json(const DepthReport& r) {
    nlohmann::json j;
    j["M"] = matrix_json(r.m);
    j["B"] = matrix_json(r.b);
    j["C"] = matrix_json(r.c);
    j["row_labels"] = r.row_labels;
    j["col_labels"] = r.col_labels;
    j["budget"] = r.budget;
    j["d_odd"] = opt_json(r.d_odd);
    j["d_ev"] = opt_json(r.d_ev);
    j["d_0"] = opt_json(r.d_0);
    j["d_h"] = opt_json(r.d_h);
    j["minpoly_B"] = r.minpoly_b.to_string();
    j["minpoly_C"] = r.minpoly_c.to_string();
    j["minpoly_B_factored"] = r.eigen_b.factored_string();
    j["minpoly_C_factored"] = r.eigen_c.factored_string();
    j["eigen_B"] = roots_json(r.eigen_b);
    j["eigen_C"] = roots_json(r.eigen_c);
    j["minpoly_C_form"] = r.minpoly_c_form;
    j["cm_relation"] = r.cm_relation;
    j["indecomposable_C"] = r.indecomposable_c;
    j["C_components"] = r.c_components;
    j["ell_C"] = opt_json(r.ell_c);
    j["white_diameter"] = r.white_diameter;
    auto& edges = j["mckay_edges"] = nlohmann::json::array();
    for (const auto& e : r.quiver.edges) edges.push_back({e.from, e.to, e.weight});
    j["index"] = r.index ? nlohmann::json(r.index->get_str()) : nlohmann::json(nullptr);
    j["pf_check"] = r.pf_check ? nlohmann::json(*r.pf_check) : nlohmann::json(nullptr);
    j["adjoint_test"] = r.adjoint_test ? nlohmann::json(*r.adjoint_test) : nlohmann::json(nullptr);
    if (r.class_eigenvalues) {
        nlohmann::json vals = nlohmann::json::array();
        for (const auto& v : r.class_eigenvalues->values) vals.push_back(v.get_str());
        j["class_eigenvalues"] = {{"values", vals},
                                  {"t", r.class_eigenvalues->t()},
                                  {"all_classes_restrict_to_one", r.class_eigenvalues->all_classes_restrict_to_one},
                                  {"depth_bound", r.class_eigenvalues->depth_bound()}};
        j["eigen_match"] = *r.eigen_match;
    } else {
        j["class_eigenvalues"] = nullptr;
        j["eigen_match"] = nullptr;
    }
    j["conjecture_holds"] = r.conjecture_holds ? nlohmann::json(*r.conjecture_holds) : nlohmann::json(nullptr);
    j["method_tags"] = r.method_tags;
    return j;
}

ExactMatrix inclusion_matrix_from_json(const nlohmann::json& j) {
    const nlohmann::json* rows = &j;
    if (j.is_object()) {
        if (!j.contains("M")) throw MalformedInput("matrix input needs field 'M'");
        rows = &j.at("M");
    }
    if (!rows->is_array() || rows->empty()) throw MalformedInput("'M' must be a nonempty array of rows");
    const std::size_t cols = rows->at(0).size();
    std::vector<Vec> vs;
    for (std::size_t i = 0; i < rows->size(); ++i) {
        const auto& row = rows->at(i);
        if (!row.is_array() || row.size() != cols || cols == 0)
            throw MalformedInput("M[" + std::to_string(i) + "] has the wrong length");
        Vec v;
        for (std::size_t k = 0; k < cols; ++k) {
            const auto& x = row.at(k);
            if (x.is_number_integer())
                v.emplace_back(x.get<long>());
            else if (x.is_string())
                v.push_back(Scalar::parse(x.get<std::string>()));
            else
                throw MalformedInput("M[" + std::to_string(i) + "][" + std::to_string(k) + "] is not an integer");
        }
        vs.push_back(std::move(v));
    }
    return ExactMatrix::from_rows(vs);
}

void validate_depth_report_json(const nlohmann::json& j) {
    for (const char* key : {"M", "B", "C", "d_odd", "d_ev", "d_0", "d_h", "minpoly_B", "minpoly_C", "method_tags"})
        if (!j.contains(key)) throw MalformedInput(std::string("depth report lacks field '") + key + "'");
    const ExactMatrix m = inclusion_matrix_from_json(j.at("M"));
    const DepthReport r = depth_report(m);
    const auto fresh = depth_report_to_json(r);
    for (const char* key : {"B", "C", "d_ev", "d_h", "minpoly_B", "minpoly_C", "ell_C", "white_diameter"})
        if (j.at(key) != fresh.at(key)) throw AssertionFailure(std::string("report field '") + key + "' does not re-derive");
    // d_odd and d_0 may have been lowered to 1 by group data
    for (const char* key : {"d_odd", "d_0"}) {
        const auto& v = j.at(key);
        if (v != fresh.at(key) && v != nlohmann::json(1))
            throw AssertionFailure(std::string("report field '") + key + "' does not re-derive");
    }
}

std::string depth_report_text(const DepthReport& r) {
    std::ostringstream os;
    os << "M =\n" << r.m.to_string() << "B = M M^t =\n" << r.b.to_string() << "C = M^t M =\n" << r.c.to_string();
    os << "minpoly(B) = " << r.eigen_b.factored_string() << "\n";
    os << "minpoly(C) = " << r.eigen_c.factored_string() << "  (" << r.minpoly_c_form << ")\n";
    os << "d_odd = " << opt_str(r.d_odd) << "\n";
    os << "d_ev  = " << opt_str(r.d_ev) << "\n";
    os << "d_0   = " << opt_str(r.d_0) << "\n";
    os << "d_h   = " << opt_str(r.d_h) << "\n";
    os << "ell_C = " << opt_str(r.ell_c) << ", white diameter = " << r.white_diameter << "\n";
    os << "C indecomposable: " << (r.indecomposable_c ? "yes" : "no") << " (" << r.c_components << " component"
       << (r.c_components == 1 ? "" : "s") << ")\n";
    if (r.index) os << "index |G:H| = " << r.index->get_str() << ", PF check " << (*r.pf_check ? "ok" : "FAILED") << "\n";
    if (r.adjoint_test) os << "adjoint depth-one test: " << (*r.adjoint_test ? "passes" : "fails") << "\n";
    if (r.class_eigenvalues) {
        os << "class-formula eigenvalues: {";
        for (std::size_t i = 0; i < r.class_eigenvalues->values.size(); ++i)
            os << (i ? ", " : "") << r.class_eigenvalues->values[i].get_str();
        os << "}, t = " << r.class_eigenvalues->t() << ", bound d_0 <= " << r.class_eigenvalues->depth_bound() << "\n";
    }
    if (r.conjecture_holds) os << "d_0 <= d_h: " << (*r.conjecture_holds ? "yes" : "VIOLATED") << "\n";
    return os.str();
}

std::string bipartite_dot(const DepthReport& r) {
    std::ostringstream os;
    os << "graph inclusion {\n  rankdir=TB;\n";
    os << "  { rank=same;";
    for (const auto& l : r.col_labels) os << " \"G:" << l << "\"";
    os << " }\n  { rank=same;";
    for (const auto& l : r.row_labels) os << " \"H:" << l << "\"";
    os << " }\n";
    for (const auto& l : r.col_labels)
        os << "  \"G:" << l << "\" [label=\"" << l << "\", style=filled, fillcolor=black, fontcolor=white];\n";
    for (const auto& l : r.row_labels)
        os << "  \"H:" << l << "\" [label=\"" << l << "\", style=filled, fillcolor=white];\n";
    const auto ints = r.m.to_integers();
    for (int i = 0; i < r.m.rows(); ++i)
        for (int j = 0; j < r.m.cols(); ++j)
            if (ints[i][j] > 0) {
                os << "  \"H:" << r.row_labels[i] << "\" -- \"G:" << r.col_labels[j] << "\"";
                if (ints[i][j] > 1) os << " [label=\"" << ints[i][j] << "\"]";
                os << ";\n";
            }
    os << "}\n";
    return os.str();
}

std::string quiver_dot(const McKayQuiver& q) {
    std::ostringstream os;
    os << "digraph mckay {\n";
    for (int v = 0; v < q.vertices; ++v) os << "  \"" << q.labels[v] << "\";\n";
    for (const auto& e : q.edges)
        os << "  \"" << q.labels[e.from] << "\" -> \"" << q.labels[e.to] << "\" [label=\"" << e.weight << "\"];\n";
    os << "}\n";
    return os.str();
}

}  // namespace qdepth
