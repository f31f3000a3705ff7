#include "doctest.h"

#include "qdepth/catalog.hpp"
#include "qdepth/errors.hpp"
#include "qdepth/io.hpp"
#include "qdepth/subgroups.hpp"
#include "qdepth/sweep.hpp"

#include <nlohmann/json.hpp>

#include <cstdio>
#include <fstream>

using namespace qdepth;
using nlohmann::json;

namespace {

const json s4_input = json::parse(R"({
  "name": "S4",
  "degree": 4,
  "generators": [[2, 1, 3, 4], [2, 3, 4, 1]],
  "subgroups": {"D8": [[2, 3, 4, 1], [4, 3, 2, 1]], "V4": [[2, 1, 4, 3], [3, 4, 1, 2]]}
})");

std::string error_of(const json& j) {
    try {
        group_input_from_json(j);
    } catch (const MalformedInput& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("group input") {
    const GroupInput in = group_input_from_json(s4_input);
    CHECK(in.name == "S4");
    CHECK(in.group->order() == 24);
    CHECK(in.subgroup("D8").order() == 8);
    CHECK(in.subgroup("V4").is_normal());
    CHECK_THROWS_AS(in.subgroup("H"), MalformedInput);

    const json back = group_input_to_json(*in.group, in.subgroups);
    const GroupInput again = group_input_from_json(back);
    CHECK(again.group->elements() == in.group->elements());
    CHECK(again.subgroup("D8").elements() == in.subgroup("D8").elements());
}

TEST_CASE("group input errors name the field") {
    auto j = s4_input;
    j.erase("degree");
    CHECK(error_of(j).starts_with("degree"));
    j = s4_input;
    j["generators"][1] = {1, 2, 3};
    CHECK(error_of(j).starts_with("generators[1]"));
    j = s4_input;
    j["generators"][0] = {1, 1, 3, 4};
    CHECK(error_of(j).starts_with("generators[0]"));
    j = s4_input;
    j["subgroups"]["V4"][0] = {"a", 1, 4, 3};
    CHECK(error_of(j).starts_with("subgroups.V4[0]"));
    j = s4_input;
    j["generators"] = {{2, 1, 3, 4}};
    j["subgroups"]["V4"][0] = {2, 3, 1, 4};
    CHECK(error_of(j).starts_with("subgroups.D8[0]: not an element"));
    CHECK(error_of(json::array()) != "");

    Caps caps;
    caps.max_group_order = 10;
    CHECK_THROWS_AS(group_input_from_json(s4_input, caps), CapExceeded);
}

TEST_CASE("json files") {
    const std::string path = "test_io_tmp.json";
    {
        std::ofstream out(path);
        out << "{\n  \"degree\": 3,\n  \"generators\": [[2, 1, 3],]\n}\n";
    }
    try {
        read_json_file(path);
        CHECK(false);
    } catch (const MalformedInput& e) {
        CHECK(std::string(e.what()).starts_with(path + ":3:"));
    }
    std::remove(path.c_str());
    CHECK_THROWS_AS(read_json_file("does_not_exist.json"), MalformedInput);
}

TEST_CASE("sweep") {
    const auto groups = builtin_catalog(24);
    const SweepReport small = run_sweep(groups, 6);
    std::size_t expected = 0;
    for (const auto& e : groups)
        if (e.order <= 6) expected += subgroup_class_reps(Group::enumerate(e.degree, e.generators)).size();
    CHECK(small.rows.size() == expected);
    CHECK(small.violations.empty());
    for (const auto& row : small.rows) {
        CHECK(row.group_order <= 6);
        CHECK(row.group_order % row.subgroup_order == 0);
        CHECK(row.eigen_match);
        CHECK(row.pf_check);
        REQUIRE(row.d_0);
        REQUIRE(row.d_h);
        CHECK(row.conjecture_holds == (*row.d_0 <= *row.d_h));
        if (row.subgroup_order == row.group_order) CHECK(row.d_h == 1);
    }
    const json j = sweep_report_to_json(small);
    CHECK(j["pairs"] == expected);
    CHECK(j["violations"].empty());
    CHECK(sweep_report_text(small).find("violations of d_0 <= d_h: 0") != std::string::npos);
}

TEST_CASE("sweep output does not depend on the thread count") {
    const auto groups = builtin_catalog(24);
    const std::string one = sweep_report_to_json(run_sweep(groups, 12, {}, 1)).dump();
    CHECK(sweep_report_to_json(run_sweep(groups, 12, {}, 4)).dump() == one);
    CHECK(sweep_report_to_json(run_sweep(groups, 12, {}, 3)).dump() == one);
}
