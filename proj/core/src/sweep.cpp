#include "qdepth/sweep.hpp"

#include "qdepth/chartab.hpp"
#include "qdepth/depth.hpp"
#include "qdepth/subgroups.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <exception>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>

namespace qdepth {

namespace {

struct GroupJob {
    const CatalogEntry* entry;
    std::unique_ptr<Group> g;
    std::unique_ptr<CharacterTable> table;
    std::vector<Subgroup> subs;
};

SweepRow sweep_row(const GroupJob& job, const Subgroup& h, const Caps& caps) {
    const Group& g = *job.g;
    const Group hg = h.as_group(caps);
    const auto rep = analyze_pair(*job.table, h, hg, compute_character_table(hg, caps)).report;
    SweepRow row;
    row.group = job.entry->name;
    row.group_order = g.order();
    row.subgroup_order = h.order();
    for (int x : h.generators()) row.subgroup_generators.push_back(perm_cycle_string(g.element(x)));
    row.d_odd = rep.d_odd;
    row.d_ev = rep.d_ev;
    row.d_0 = rep.d_0;
    row.d_h = rep.d_h;
    row.core_r = core_and_witness(h).r();
    row.d_c_ev = intersection_chain(h).d_c_ev;
    row.eigen_match = rep.eigen_match.value_or(false);
    row.pf_check = rep.pf_check.value_or(false);
    row.conjecture_holds = !(rep.d_0 && rep.d_h && *rep.d_0 > *rep.d_h);
    return row;
}

}  // namespace

SweepReport run_sweep(const std::vector<CatalogEntry>& groups, int max_order, const Caps& caps, int threads) {
    SweepReport out;
    out.max_order = max_order;
    std::vector<GroupJob> jobs;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (job, subgroup)
    for (const auto& entry : groups) {
        if (entry.order > max_order) continue;
        out.groups.push_back(entry.name);
        GroupJob job{&entry, std::make_unique<Group>(Group::enumerate(entry.degree, entry.generators, caps)), nullptr, {}};
        job.table = std::make_unique<CharacterTable>(compute_character_table(*job.g, caps));
        job.subs = subgroup_class_reps(*job.g);
        for (std::size_t i = 0; i < job.subs.size(); ++i) pairs.emplace_back(jobs.size(), i);
        jobs.push_back(std::move(job));
    }

    std::vector<SweepRow> rows(pairs.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t k; (k = next.fetch_add(1)) < pairs.size();) {
            try {
                const auto& job = jobs[pairs[k].first];
                rows[k] = sweep_row(job, job.subs[pairs[k].second], caps);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = pairs.size();
            }
        }
    };
    const unsigned n = threads > 0 ? static_cast<unsigned>(threads) : std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < std::min<std::size_t>(n, pairs.size()); ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    for (auto& row : rows) {
        if (!row.conjecture_holds) out.violations.push_back(row);
        out.rows.push_back(std::move(row));
    }
    return out;
}

namespace {

nlohmann::json opt(const std::optional<int>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); }

nlohmann::json row_json(const SweepRow& r) {
    return {{"group", r.group},
            {"group_order", r.group_order},
            {"subgroup_order", r.subgroup_order},
            {"subgroup_generators", r.subgroup_generators},
            {"d_odd", opt(r.d_odd)},
            {"d_ev", opt(r.d_ev)},
            {"d_0", opt(r.d_0)},
            {"d_h", opt(r.d_h)},
            {"core_r", r.core_r},
            {"d_c_ev", r.d_c_ev},
            {"eigen_match", r.eigen_match},
            {"pf_check", r.pf_check},
            {"conjecture_holds", r.conjecture_holds}};
}

}  // namespace

nlohmann::json sweep_report_to_json(const SweepReport& r) {
    nlohmann::json j;
    j["max_order"] = r.max_order;
    j["groups"] = r.groups;
    j["pairs"] = r.rows.size();
    auto& rows = j["rows"] = nlohmann::json::array();
    for (const auto& row : r.rows) rows.push_back(row_json(row));
    auto& v = j["violations"] = nlohmann::json::array();
    for (const auto& row : r.violations) v.push_back(row_json(row));
    return j;
}

std::string sweep_report_text(const SweepReport& r) {
    std::ostringstream os;
    os << "groups " << r.groups.size() << ", pairs " << r.rows.size() << ", max order " << r.max_order << "\n";
    os << "group        |G|  |H|  d_0  d_h  r  d_c_ev\n";
    auto show = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string("-"); };
    for (const auto& row : r.rows) {
        std::string name = row.group;
        name.resize(12, ' ');
        os << name << ' ' << row.group_order << "  " << row.subgroup_order << "  " << show(row.d_0) << "  "
           << show(row.d_h) << "  " << row.core_r << "  " << row.d_c_ev << (row.conjecture_holds ? "" : "  VIOLATION")
           << "\n";
    }
    os << "violations of d_0 <= d_h: " << r.violations.size() << "\n";
    return os.str();
}

}  // namespace qdepth
