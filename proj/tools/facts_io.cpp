#include "facts_io.hpp"

#include <fstream>

#include <json.hpp>

#include "twistsha/errors.hpp"

namespace twistsha::cli {

FactsFile parse_facts_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open facts file: " + path);

    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InputError("facts file is not valid JSON: " + std::string(e.what()));
    }
    if (!j.is_object())
        throw InputError("facts file must be a JSON object keyed by fact keys");

    FactsFile facts;
    for (const auto& [key, entry] : j.items()) {
        if (!entry.is_object() || !entry.contains("value") ||
            !entry["value"].is_boolean())
            throw InputError("fact \"" + key + "\" must carry a boolean \"value\"");
        if (!entry.contains("provenance") || !entry["provenance"].is_string() ||
            entry["provenance"].get<std::string>().empty())
            throw InputError("fact \"" + key + "\" lacks provenance text");
        facts[key] = FactEntry{entry["value"].get<bool>(),
                               entry["provenance"].get<std::string>()};
    }
    return facts;
}

}  // namespace twistsha::cli
