// qdepth: command-line front end for the depth, Mackey, Hecke, character
// table, Hopf and sweep computations.

#include "CLI11.hpp"

#include "qdepth/catalog.hpp"
#include "qdepth/chartab.hpp"
#include "qdepth/depth.hpp"
#include "qdepth/errors.hpp"
#include "qdepth/hopf.hpp"
#include "qdepth/io.hpp"
#include "qdepth/mackey.hpp"
#include "qdepth/subgroups.hpp"
#include "qdepth/sweep.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace qdepth;

namespace {

enum ExitCode { kOk = 0, kAssertion = 1, kMalformed = 2, kCap = 3, kViolation = 4 };

struct Options {
    std::string format = "text";
    std::string json_path;
    std::string dot_path;
    std::size_t cap_order = Caps{}.max_group_order;
    std::size_t cap_tensor_dim = Caps{}.max_tensor_dim;

    Caps caps() const {
        Caps c;
        c.max_group_order = cap_order;
        c.max_tensor_dim = cap_tensor_dim;
        return c;
    }
};

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw MalformedInput(path + ": cannot write file");
    out << text;
}

// Prints `text` or the JSON to stdout per --format, and writes --json if given.
void emit(const Options& o, const nlohmann::json& j, const std::string& text) {
    if (o.format == "json")
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
    if (!o.json_path.empty()) write_file(o.json_path, j.dump(2) + "\n");
}

std::string table_text(const CharacterTable& t) {
    std::ostringstream os;
    const Group& g = *t.group;
    os << "classes:";
    for (const auto& c : g.classes()) os << "  " << perm_cycle_string(g.element(c.rep)) << " (" << c.size() << ")";
    os << "\n";
    for (int i = 0; i < t.num_irr(); ++i) {
        os << "chi" << i << ":";
        for (const auto& v : t.irr[i]) os << "  " << v.to_string();
        os << "\n";
    }
    return os.str();
}

struct PairInput {
    GroupInput in;
    const Subgroup* h = nullptr;
};

PairInput load_pair(const std::string& path, const std::string& key, const Options& o) {
    PairInput p{group_input_from_json(read_json_file(path), o.caps()), nullptr};
    p.h = &p.in.subgroup(key);
    return p;
}

int cmd_depth_group(const Options& o, const std::string& path, const std::string& key) {
    const PairInput p = load_pair(path, key, o);
    const Group& g = *p.in.group;
    const Group hg = p.h->as_group(o.caps());
    const CharacterTable tg = compute_character_table(g, o.caps());
    const CharacterTable th = compute_character_table(hg, o.caps());
    const auto pa = analyze_pair(tg, *p.h, hg, th);
    const auto& r = pa.report;
    nlohmann::json j = depth_report_to_json(r);
    validate_depth_report_json(nlohmann::json::parse(j.dump()));
    const auto q2 = q_tensor_decomposition(*p.h, 2, o.caps());
    j["mackey"] = {{"power", 2}, {"summands", summands_to_json(q2)}};
    j["hecke"] = hecke_to_json(hecke_algebra(*p.h));
    const auto cb = core_depth_bound(*p.h, r.d_h);
    const auto comb = combinatorial_bound_check(*p.h, r.d_h);
    j["core"] = {{"r", cb.r}, {"bound_d_h", cb.bound_dh}, {"d_c_ev", comb.d_c_ev}};
    std::ostringstream text;
    text << "G order " << g.order() << ", H order " << p.h->order() << "\n" << depth_report_text(r);
    text << "core witness r = " << cb.r << ", d_h <= 2r+3 = " << cb.bound_dh << ", d_c_ev = " << comb.d_c_ev << "\n";
    text << "Hecke algebra dimension " << hecke_algebra(*p.h).dim() << "\n";
    emit(o, j, text.str());
    if (!o.dot_path.empty()) write_file(o.dot_path, bipartite_dot(r) + quiver_dot(r.quiver));
    return kOk;
}

int cmd_depth_matrix(const Options& o, const std::string& path) {
    const auto j = read_json_file(path);
    std::vector<std::string> rows, cols;
    if (j.is_object()) {
        if (j.contains("row_labels")) rows = j["row_labels"].get<std::vector<std::string>>();
        if (j.contains("col_labels")) cols = j["col_labels"].get<std::vector<std::string>>();
    }
    const auto r = depth_report(inclusion_matrix_from_json(j), std::nullopt, rows, cols);
    const nlohmann::json out = depth_report_to_json(r);
    validate_depth_report_json(nlohmann::json::parse(out.dump()));
    emit(o, out, depth_report_text(r));
    if (!o.dot_path.empty()) write_file(o.dot_path, bipartite_dot(r) + quiver_dot(r.quiver));
    return kOk;
}

int cmd_mackey(const Options& o, const std::string& path, const std::string& key, const std::string& k_key,
               int power) {
    const PairInput p = load_pair(path, key, o);
    Caps caps = o.caps();
    const auto dec = q_tensor_decomposition(*p.h, power, caps);
    nlohmann::json j{{"power", power}, {"dimension", dec.dimension()}, {"summands", summands_to_json(dec)}};
    std::ostringstream text;
    text << "Q^" << power << " = sum of " << dec.total_multiplicity() << " permutation modules, dimension "
         << dec.dimension() << "\n";
    for (const auto& s : dec.summands)
        text << "  " << s.multiplicity << " x Q_S with |S| = " << s.sub.order() << "\n";
    if (!k_key.empty()) {
        const auto res = mackey_restrict(p.in.subgroup(k_key), *p.h);
        j["restriction"] = summands_to_json(res);
        text << "Q_K restricted to H: " << res.summands.size() << " distinct summands\n";
    }
    emit(o, j, text.str());
    return kOk;
}

int cmd_hecke(const Options& o, const std::string& path, const std::string& key) {
    const PairInput p = load_pair(path, key, o);
    const auto a = hecke_algebra(*p.h);
    std::ostringstream text;
    text << "Hecke algebra of dimension " << a.dim() << (a.commutative ? ", commutative" : ", noncommutative")
         << "\n";
    for (int i = 0; i < a.dim(); ++i)
        text << "  b" << i << ": rep " << perm_cycle_string(p.in.group->element(a.reps[i])) << ", index "
             << a.index[i] << "\n";
    emit(o, hecke_to_json(a), text.str());
    return kOk;
}

int cmd_chartab(const Options& o, const std::string& path, const std::string& import_path) {
    const GroupInput in = group_input_from_json(read_json_file(path), o.caps());
    const CharacterTable t = compute_character_table(*in.group, o.caps());
    t.verify();
    nlohmann::json j = character_table_to_json(t);
    std::string text = table_text(t);
    if (!import_path.empty()) {
        const CharacterTable imported = character_table_from_json(*in.group, read_json_file(import_path));
        const bool agree = tables_agree(t, imported);
        j["import_agrees"] = agree;
        text += std::string("imported table ") + (agree ? "agrees" : "DISAGREES") + "\n";
        emit(o, j, text);
        return agree ? kOk : kAssertion;
    }
    emit(o, j, text);
    return kOk;
}

int cmd_hopf(const Options& o, const std::string& path, const std::string& builtin, const std::string& sub,
             const std::string& export_path, int trace_n) {
    std::optional<SmallQuantumGroup> u;
    HopfAlgebra parsed;
    std::vector<SubalgebraEmbedding> subs;
    const HopfAlgebra* h = nullptr;
    if (!builtin.empty()) {
        if (builtin.rfind("smallqg", 0) != 0) throw MalformedInput("--builtin: expected smallqgN");
        u = build_small_quantum_group(std::stoi(builtin.substr(7)));
        h = &u->h;
        for (const char* w : {"R1", "R2", "B"}) subs.push_back(quantum_subalgebra(*u, w));
    } else {
        const auto j = read_json_file(path);
        parsed = hopf_from_json(j);
        h = &parsed;
        subs = subalgebras_from_json(parsed, j);
    }
    if (!export_path.empty()) write_file(export_path, hopf_to_json(*h, subs).dump(1) + "\n");
    const SubalgebraEmbedding* r = nullptr;
    for (const auto& s : subs)
        if (sub.empty() ? &s == &subs.front() : s.name == sub) r = &s;
    if (r == nullptr) throw MalformedInput("subalgebras: no subalgebra named \"" + sub + "\"");
    const auto rep = analyze_hopf_pair(*h, *r, trace_n, o.caps());
    auto j = hopf_pair_report_to_json(*h, rep);
    j["subalgebra"] = r->name;
    std::ostringstream text;
    text << "H dim " << rep.dim_h << ", " << r->name << " dim " << rep.dim_r << ", Q dim " << rep.dim_q << "\n";
    text << "Ann Q^n dims:";
    for (const auto& i : rep.ann.chain) text << " " << i.dim();
    text << "; ell_Q = " << (rep.ann.ell_q ? std::to_string(*rep.ann.ell_q) : ">= " + std::to_string(rep.ann.ell_lower_bound.value_or(0)))
         << "; Hopf core dim " << (rep.ann.hopf_core ? std::to_string(rep.ann.hopf_core->dim()) : "?") << "\n";
    text << "t_R = " << h->format(rep.integrals.t_r) << "; t_H = " << h->format(rep.integrals.t_h) << "\n";
    text << "Frobenius extension: " << (rep.integrals.frobenius ? "yes" : "no")
         << "; Q-integrals: " << rep.integrals.q_integral_basis.size() << "\n";
    text << "trace ideal dims:";
    for (const auto& t : rep.traces.chain) text << " " << t.dim();
    text << "; L_Q = " << (rep.traces.l_q ? std::to_string(*rep.traces.l_q) : "?") << "\n";
    text << "idealizer dim " << rep.idealizer.t.dim() << ", End Q dim " << rep.idealizer.dim_end_q << ", normal "
         << (rep.idealizer.normal ? "yes" : "no") << "\n";
    text << "Q faithful: " << (rep.faithful.ann_q_zero ? "yes" : "no") << "\n";
    emit(o, j, text.str());
    return kOk;
}

int cmd_sweep(const Options& o, int max_order, bool conjecture, const std::vector<std::string>& extra, int threads) {
    std::vector<CatalogEntry> groups = builtin_catalog(std::min(max_order, 24));
    for (const auto& path : extra) {
        const GroupInput in = group_input_from_json(read_json_file(path), o.caps());
        groups.push_back(CatalogEntry{in.name, in.group->degree(), in.group->generators(), in.group->order()});
    }
    const SweepReport rep = run_sweep(groups, max_order, o.caps(), threads);
    emit(o, sweep_report_to_json(rep), sweep_report_text(rep));
    if (conjecture && !rep.violations.empty()) {
        std::cerr << "conjecture d_0 <= d_h violated on " << rep.violations.size() << " pairs\n";
        return kViolation;
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Depth of subgroups and Hopf subalgebras by exact computation"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--format", o.format, "stdout format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--json", o.json_path, "also write the JSON report here");
    app.add_option("--dot", o.dot_path, "write Graphviz output here (depth commands)");
    app.add_option("--cap-order", o.cap_order, "largest group order to enumerate");
    app.add_option("--cap-tensor-dim", o.cap_tensor_dim, "largest tensor power dimension");

    std::string file, key = "H", k_key, import_path, builtin, sub, export_path;
    int power = 2, max_order = 24, trace_n = 4, threads = 0;
    bool conjecture = false;
    std::vector<std::string> extra;

    auto* depth = app.add_subcommand("depth", "depth report for a subgroup or a bare inclusion matrix");
    depth->require_subcommand(1);
    auto* dgroup = depth->add_subcommand("group", "group input with a subgroup");
    dgroup->add_option("file", file, "group JSON")->required();
    dgroup->add_option("--subgroup", key, "key under \"subgroups\"");
    auto* dmatrix = depth->add_subcommand("matrix", "inclusion matrix only");
    dmatrix->add_option("file", file, "matrix JSON")->required();

    auto* mackey = app.add_subcommand("mackey", "tensor powers of Q as permutation modules");
    mackey->add_option("file", file, "group JSON")->required();
    mackey->add_option("--power", power, "tensor power n")->check(CLI::PositiveNumber);
    mackey->add_option("--subgroup", key, "H key");
    mackey->add_option("--restrict", k_key, "K key: also restrict Q^G_K to H");

    auto* hecke = app.add_subcommand("hecke", "Hecke algebra of the subgroup");
    hecke->add_option("file", file, "group JSON")->required();
    hecke->add_option("--subgroup", key, "key under \"subgroups\"");

    auto* chartab = app.add_subcommand("chartab", "character table by Dixon-Schneider");
    chartab->add_option("file", file, "group JSON")->required();
    chartab->add_option("--import", import_path, "table JSON to compare against");

    auto* hopf = app.add_subcommand("hopf", "quotient module, integrals, ideals and idealizer of a Hopf pair");
    hopf->add_option("file", file, "Hopf JSON");
    hopf->add_option("--builtin", builtin, "smallqg2, smallqg3, ... instead of a file");
    hopf->add_option("--subalgebra", sub, "name under \"subalgebras\" (default: first)");
    hopf->add_option("--export", export_path, "write the Hopf algebra as JSON");
    hopf->add_option("--trace-powers", trace_n, "largest tensor power for trace ideals")->check(CLI::PositiveNumber);

    auto* sweep = app.add_subcommand("sweep", "depth of every subgroup of every catalog group");
    sweep->add_option("--max-order", max_order, "largest group order")->check(CLI::PositiveNumber);
    sweep->add_flag("--conjecture", conjecture, "exit nonzero if some pair has d_0 > d_h");
    sweep->add_option("--groups", extra, "extra group JSON files");
    sweep->add_option("--threads", threads, "worker threads (0: one per hardware thread)")->check(CLI::NonNegativeNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        if (dgroup->parsed()) return cmd_depth_group(o, file, key);
        if (dmatrix->parsed()) return cmd_depth_matrix(o, file);
        if (mackey->parsed()) return cmd_mackey(o, file, key, k_key, power);
        if (hecke->parsed()) return cmd_hecke(o, file, key);
        if (chartab->parsed()) return cmd_chartab(o, file, import_path);
        if (hopf->parsed()) {
            if (file.empty() == builtin.empty()) throw MalformedInput("hopf: give exactly one of <file> or --builtin");
            return cmd_hopf(o, file, builtin, sub, export_path, trace_n);
        }
        if (sweep->parsed()) return cmd_sweep(o, max_order, conjecture, extra, threads);
    } catch (const AssertionFailure& e) {
        std::cerr << "assertion failed: " << e.what() << "\n";
        return kAssertion;
    } catch (const CapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return kCap;
    } catch (const MalformedInput& e) {
        std::cerr << "malformed input: " << e.what() << "\n";
        return kMalformed;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "malformed input: " << e.what() << "\n";
        return kMalformed;
    }
    return kOk;
}
