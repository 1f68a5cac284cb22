#pragma once

#include <optional>
#include <string>

#include "twistsha/qseries.hpp"

namespace twistsha::cli {

// Version string for the cached kohnen-lift expansion. Encodes the reading
// of the generating formula (differentiate G4 first, then substitute 4z);
// a cache written under any other reading is ignored wholesale.
inline constexpr const char* kCacheVersion = "kz-deriv-then-dilate-v1";

// Returns the kohnen-lift expansion at precision >= min_prec, serving it
// from the cache file when possible. When cache_path is empty no file is
// touched. A cache with a mismatched version or form, or one that is
// unreadable or too short, is regenerated and rewritten (write-then-rename,
// never partially reused).
QSeries kohnen_with_cache(const std::string& cache_path, std::size_t min_prec);

}  // namespace twistsha::cli
