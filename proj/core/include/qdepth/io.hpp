#pragma once

#include "qdepth/group.hpp"

#include <nlohmann/json_fwd.hpp>

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace qdepth {

/// {"degree": d, "generators": [[images...]], "subgroups": {"H": [[...]], ...}}
/// with 1-based images. The group lives on the heap so that subgroups can keep
/// pointing at it when the struct moves.
struct GroupInput {
    std::string name;
    std::unique_ptr<Group> group;
    std::vector<std::pair<std::string, Subgroup>> subgroups;

    const Subgroup& subgroup(const std::string& key) const;
};
/// Throws MalformedInput naming the offending field.
GroupInput group_input_from_json(const nlohmann::json& j, const Caps& caps = {});
nlohmann::json group_input_to_json(const Group& g, const std::vector<std::pair<std::string, Subgroup>>& subs);

/// Reads a whole file and parses it as JSON; parse errors carry the path, line and column.
nlohmann::json read_json_file(const std::string& path);

}  // namespace qdepth
