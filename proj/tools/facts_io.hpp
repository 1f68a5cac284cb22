#pragma once

#include <string>

#include "twistsha/hypotheses.hpp"

namespace twistsha::cli {

// Reads a facts file: a JSON object mapping fact keys to
// {"value": bool, "provenance": nonempty string}. Entries without
// provenance text are rejected (InputError, exit 2).
FactsFile parse_facts_file(const std::string& path);

}  // namespace twistsha::cli
