#include "qml/model_io.hpp"

#include "qml/errors.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qml {

namespace {

using nlohmann::json;

int world_index(const json& value, int world_count, const char* where)
{
    if (!value.is_number_integer())
        throw MalformedInput{std::string{where} + ": world index must be an integer"};
    const auto w = value.get<long long>();
    if (w < 0 || w >= world_count)
        throw MalformedInput{std::string{where} + ": world " + std::to_string(w) + " out of range"};
    return static_cast<int>(w);
}

template <typename Set>
void read_pairs(const json& doc, const char* key, int world_count, Set&& set)
{
    if (!doc.contains(key))
        return;
    const json& pairs = doc.at(key);
    if (!pairs.is_array())
        throw MalformedInput{std::string{key} + " must be an array of pairs"};
    for (const auto& pair : pairs) {
        if (!pair.is_array() || pair.size() != 2)
            throw MalformedInput{std::string{key} + " entries must be [i, j] pairs"};
        set(world_index(pair[0], world_count, key), world_index(pair[1], world_count, key));
    }
}

json pairs_of(const std::vector<WorldSet>& rows)
{
    json out = json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (int j : rows[i].members())
            out.push_back({static_cast<int>(i), j});
    }
    return out;
}

} // namespace

QuantumModalStructure load_model(std::string_view json_text, LoadOptions options)
{
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw MalformedInput{std::string{"invalid JSON: "} + e.what()};
    }
    if (!doc.is_object())
        throw MalformedInput{"model must be a JSON object"};
    if (!doc.contains("worlds") || !doc["worlds"].is_number_integer())
        throw MalformedInput{"model needs an integer \"worlds\""};
    const auto k = doc["worlds"].get<long long>();
    if (k < 1 || k > kMaxWorlds)
        throw MalformedInput{"worlds must be in 1.." + std::to_string(kMaxWorlds)};

    QuantumModalStructure s{static_cast<int>(k)};
    read_pairs(doc, "rq", s.world_count(), [&](int i, int j) { s.set_rq(i, j); });
    read_pairs(doc, "rm", s.world_count(), [&](int i, int l) { s.set_rm(i, l); });
    s.complete_rq();

    if (doc.contains("valuation")) {
        const json& valuation = doc["valuation"];
        if (!valuation.is_object())
            throw MalformedInput{"valuation must map atoms to world lists"};
        for (const auto& [atom, worlds] : valuation.items()) {
            if (!worlds.is_array())
                throw MalformedInput{"valuation of " + atom + " must be an array"};
            WorldSet ws;
            for (const auto& w : worlds)
                ws.insert(world_index(w, s.world_count(), "valuation"));
            s.set_valuation(atom, ws);
        }
    }

    if (!options.no_validate) {
        const auto violations = validate(s);
        if (!violations.empty())
            throw MalformedInput{"invalid structure: " + violations.front().describe()};
    }
    return s;
}

QuantumModalStructure load_model_file(const std::string& path, LoadOptions options)
{
    std::ifstream in{path};
    if (!in)
        throw MalformedInput{"cannot open " + path};
    std::ostringstream text;
    text << in.rdbuf();
    return load_model(text.str(), options);
}

std::string dump_model(const QuantumModalStructure& s)
{
    json doc;
    doc["worlds"] = s.world_count();
    doc["rq"] = pairs_of(s.rq_rows());
    doc["rm"] = pairs_of(s.rm_rows());
    json valuation = json::object();
    for (const auto& [atom, worlds] : s.valuations())
        valuation[atom] = worlds.members();
    doc["valuation"] = valuation;
    return doc.dump();
}

std::string to_dot(const QuantumModalStructure& s)
{
    std::ostringstream out;
    out << "digraph structure {\n";
    for (int i = 0; i < s.world_count(); ++i) {
        out << "  w" << i << " [label=\"" << i;
        std::string atoms;
        for (const auto& [atom, worlds] : s.valuations()) {
            if (worlds.contains(i))
                atoms += (atoms.empty() ? "" : ",") + atom;
        }
        if (!atoms.empty())
            out << ": " << atoms;
        out << "\"];\n";
    }
    for (int i = 0; i < s.world_count(); ++i) {
        for (int j = i + 1; j < s.world_count(); ++j) {
            if (s.rq(i, j))
                out << "  w" << i << " -> w" << j << " [dir=none, style=dashed];\n";
        }
    }
    for (int i = 0; i < s.world_count(); ++i) {
        for (int l : s.rm_successors(i).members())
            out << "  w" << i << " -> w" << l << ";\n";
    }
    out << "}\n";
    return out.str();
}

} // namespace qml
