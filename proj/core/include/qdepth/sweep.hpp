#pragma once

#include "qdepth/caps.hpp"
#include "qdepth/catalog.hpp"

#include <nlohmann/json_fwd.hpp>

#include <optional>
#include <string>
#include <vector>

namespace qdepth {

struct SweepRow {
    std::string group;
    int group_order = 0;
    int subgroup_order = 0;
    std::vector<std::string> subgroup_generators;  // cycle notation
    std::optional<int> d_odd, d_ev, d_0, d_h;
    int core_r = 0;
    int d_c_ev = 0;
    bool eigen_match = false;
    bool pf_check = false;
    bool conjecture_holds = true;
};

/// One row per subgroup class representative of each group; `violations`
/// holds exactly the rows with d_0 > d_h.
struct SweepReport {
    int max_order = 0;
    std::vector<std::string> groups;
    std::vector<SweepRow> rows;
    std::vector<SweepRow> violations;
};

/// Runs every group of order <= max_order from `groups`, pairs spread over
/// `threads` workers (0: one per hardware thread). Rows come out in catalog
/// order, then by subgroup order and elements, whatever the thread count.
SweepReport run_sweep(const std::vector<CatalogEntry>& groups, int max_order, const Caps& caps = {},
                      int threads = 0);

nlohmann::json sweep_report_to_json(const SweepReport& r);
std::string sweep_report_text(const SweepReport& r);

}  // namespace qdepth
