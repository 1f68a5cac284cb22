#include "cache.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <vector>

#include <json.hpp>

#include "twistsha/errors.hpp"
#include "twistsha/forms.hpp"

namespace twistsha::cli {

namespace {

std::optional<QSeries> load_cache(const std::string& path, std::size_t min_prec) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception&) {
        return std::nullopt;
    }
    if (!j.is_object()) return std::nullopt;
    if (!j.contains("version") || j["version"] != kCacheVersion) return std::nullopt;
    if (!j.contains("form") || j["form"] != "kohnen-lift") return std::nullopt;
    if (!j.contains("prec") || !j.contains("coefficients")) return std::nullopt;
    const auto& coeffs = j["coefficients"];
    if (!coeffs.is_array()) return std::nullopt;
    const std::size_t prec = j["prec"].get<std::size_t>();
    if (coeffs.size() != prec + 1 || prec < min_prec) return std::nullopt;

    std::vector<mpq_class> c(prec + 1);
    for (std::size_t i = 0; i <= prec; ++i) {
        if (!coeffs[i].is_string()) return std::nullopt;
        c[i] = mpq_class(mpz_class(coeffs[i].get<std::string>()));
    }
    return QSeries(std::move(c));
}

void store_cache(const std::string& path, const QSeries& g) {
    nlohmann::json j;
    j["version"] = kCacheVersion;
    j["form"] = "kohnen-lift";
    j["prec"] = g.prec();
    std::vector<std::string> coeffs;
    coeffs.reserve(g.prec() + 1);
    for (const mpq_class& c : g.coeffs())
        coeffs.push_back(mpz_class(mpq_numref(c.get_mpq_t())).get_str());
    j["coefficients"] = coeffs;

    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw InputError("cannot write cache file: " + tmp);
        out << j.dump() << "\n";
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::remove(tmp.c_str());
        throw InputError("cannot move cache file into place: " + path);
    }
}

}  // namespace

QSeries kohnen_with_cache(const std::string& cache_path, std::size_t min_prec) {
    if (min_prec < 1) min_prec = 1;
    if (!cache_path.empty()) {
        if (auto cached = load_cache(cache_path, min_prec)) return *std::move(cached);
    }
    QSeries g = kohnen_lift(min_prec);
    if (!cache_path.empty()) store_cache(cache_path, g);
    return g;
}

}  // namespace twistsha::cli
