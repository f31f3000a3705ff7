#include "qdepth/io.hpp"

#include "qdepth/errors.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

namespace qdepth {

namespace {

std::vector<int> images_from_json(const nlohmann::json& v, int degree, const std::string& where) {
    if (!v.is_array() || static_cast<int>(v.size()) != degree)
        throw MalformedInput(where + ": expected " + std::to_string(degree) + " images");
    std::vector<int> out;
    for (const auto& x : v) {
        if (!x.is_number_integer()) throw MalformedInput(where + ": images must be integers");
        out.push_back(x.get<int>());
    }
    try {
        perm_from_images(out);
    } catch (const MalformedInput& e) {
        throw MalformedInput(where + ": " + e.what());
    }
    return out;
}

}  // namespace

const Subgroup& GroupInput::subgroup(const std::string& key) const {
    for (const auto& [k, s] : subgroups)
        if (k == key) return s;
    throw MalformedInput("subgroups: no entry named \"" + key + "\"");
}

GroupInput group_input_from_json(const nlohmann::json& j, const Caps& caps) {
    if (!j.is_object()) throw MalformedInput("group input must be a JSON object");
    if (!j.contains("degree") || !j["degree"].is_number_integer() || j["degree"].get<int>() < 1)
        throw MalformedInput("degree: expected a positive integer");
    const int degree = j["degree"].get<int>();
    if (!j.contains("generators") || !j["generators"].is_array())
        throw MalformedInput("generators: expected a list of image lists");
    std::vector<Perm> gens;
    for (std::size_t i = 0; i < j["generators"].size(); ++i)
        gens.push_back(perm_from_images(
            images_from_json(j["generators"][i], degree, "generators[" + std::to_string(i) + "]")));
    GroupInput out;
    out.name = j.value("name", std::string("G"));
    out.group = std::make_unique<Group>(Group::enumerate(degree, gens, caps));
    if (j.contains("subgroups")) {
        if (!j["subgroups"].is_object()) throw MalformedInput("subgroups: expected an object");
        for (const auto& [key, list] : j["subgroups"].items()) {
            const std::string where = "subgroups." + key;
            if (!list.is_array()) throw MalformedInput(where + ": expected a list of image lists");
            std::vector<int> idx;
            for (std::size_t i = 0; i < list.size(); ++i) {
                const auto im = images_from_json(list[i], degree, where + "[" + std::to_string(i) + "]");
                const int e = out.group->find(perm_from_images(im));
                if (e < 0) throw MalformedInput(where + "[" + std::to_string(i) + "]: not an element of the group");
                idx.push_back(e);
            }
            out.subgroups.emplace_back(key, Subgroup::generated(*out.group, idx));
        }
    }
    return out;
}

nlohmann::json group_input_to_json(const Group& g, const std::vector<std::pair<std::string, Subgroup>>& subs) {
    nlohmann::json j;
    j["degree"] = g.degree();
    j["generators"] = nlohmann::json::array();
    for (const auto& p : g.generators()) j["generators"].push_back(perm_to_images(p));
    auto& sj = j["subgroups"] = nlohmann::json::object();
    for (const auto& [k, s] : subs) {
        auto& list = sj[k] = nlohmann::json::array();
        for (int x : s.generators()) list.push_back(perm_to_images(g.element(x)));
    }
    return j;
}

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MalformedInput(path + ": cannot open file");
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw MalformedInput(path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": invalid JSON");
    }
}

}  // namespace qdepth
