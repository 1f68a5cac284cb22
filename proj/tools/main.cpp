// twistsha: exact q-expansions of the classical level-1 forms, the
// half-integral-weight plus-space lift of delta, and machine-checkable
// certificates for class-group surjections built from p-adic valuations of
// twisted central L-value ratios.
//
// Exit codes: 0 proven / computed, 3 inconclusive, 2 bad input, 1 internal.

#include <cstdlib>
#include <ctime>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cache.hpp"
#include "facts_io.hpp"
#include "render.hpp"
#include "twistsha/bkratio.hpp"
#include "twistsha/errors.hpp"
#include "twistsha/forms.hpp"

namespace {

using namespace twistsha;
using cli::json;

constexpr int kExitProven = 0;
constexpr int kExitInternal = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitInconclusive = 3;

struct Output {
    bool as_json = false;
    bool stamp = false;
};

void emit(const json& doc, const Output& out) {
    json j = doc;
    if (out.stamp) {
        char buf[64];
        const std::time_t now = std::time(nullptr);
        std::tm tm{};
        gmtime_r(&now, &tm);
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
        j["stamp"] = {{"generated_at", buf}};
    }
    std::cout << cli::dump(j);
}

std::string resolve_cache_path(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("TWISTSHA_CACHE")) return env;
    return {};
}

std::string coeff_string(const mpq_class& c) {
    return mpq_class(c).get_str();
}

// Cusp forms start at q^1; the Eisenstein series and theta at q^0.
std::size_t leading_index(FormId id) {
    switch (id) {
        case FormId::G4:
        case FormId::Theta: return 0;
        default: return 1;
    }
}

int cmd_expand(const std::string& tag, std::size_t terms, const Output& out) {
    const auto id = parse_form_tag(tag);
    if (!id) throw InputError("unknown form tag: " + tag);
    const QSeries s = form_series(*id, terms);
    const std::size_t from = leading_index(*id);

    std::vector<std::string> coeffs;
    for (std::size_t i = from; i <= terms; ++i)
        coeffs.push_back(coeff_string(s.coeff(i)));

    if (out.as_json) {
        json j;
        j["form"] = form_tag(*id);
        j["weight"] = weight_string(*id);
        j["from"] = from;
        j["to"] = terms;
        j["coefficients"] = coeffs;
        emit(j, out);
    } else {
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            std::cout << (i ? ", " : "") << coeffs[i];
        std::cout << "\n";
    }
    return kExitProven;
}

std::string factored_rendering(const mpz_class& value) {
    if (value == 0) return "0";
    if (value == 1) return "1";
    if (value == -1) return "-1";
    const Factorization f = factorize(static_cast<std::int64_t>(value.get_si()));
    return value.get_str() + "=" + f.to_string();
}

int cmd_coeff(std::uint64_t n, const std::string& cache_flag, const Output& out) {
    if (n < 1) throw InputError("coefficient index must be >= 1");
    const QSeries g = cli::kohnen_with_cache(resolve_cache_path(cache_flag), n);
    const PlusCoefficient c = plus_coeff(g, n);
    json j;
    j["n"] = n;
    j["c"] = c.value.get_str();
    if (c.value != 0 && c.value.fits_slong_p())
        j["factorization"] =
            factorize(static_cast<std::int64_t>(c.value.get_si())).to_string();
    emit(j, out);
    return kExitProven;
}

int cmd_table(std::uint64_t p, std::uint64_t i_from, std::uint64_t i_to,
              const std::string& cache_flag, const Output& out) {
    if (i_from < 1 || i_from > i_to)
        throw InputError("table requires 1 <= i_from <= i_to");
    if (!is_prime(p)) throw InputError("table requires a prime p");
    const QSeries g = cli::kohnen_with_cache(resolve_cache_path(cache_flag), p * i_to);

    json rows = json::array();
    for (std::uint64_t i = i_from; i <= i_to; ++i) {
        const std::uint64_t n = p * i;
        const PlusCoefficient c = plus_coeff(g, n);
        if (out.as_json) {
            json row;
            row["i"] = i;
            row["n"] = n;
            row["c"] = c.value.get_str();
            if (c.value != 0)
                row["factorization"] =
                    factorize(static_cast<std::int64_t>(c.value.get_si())).to_string();
            rows.push_back(row);
        } else {
            std::cout << i << " | " << n << " | " << factored_rendering(c.value)
                      << "\n";
        }
    }
    if (out.as_json) {
        json j;
        j["p"] = p;
        j["rows"] = rows;
        emit(j, out);
    }
    return kExitProven;
}

int cmd_ratio(std::uint64_t p, std::int64_t d, std::int64_t dprime,
              const std::string& cache_flag, const Output& out) {
    const TwistContext ctx = TwistContext::for_delta(p, d);
    const TwistContext ctxp = TwistContext::for_delta(p, dprime);
    const std::uint64_t need = std::max<std::uint64_t>(std::abs(d), std::abs(dprime));
    const QSeries g = cli::kohnen_with_cache(resolve_cache_path(cache_flag), need);
    const PlusCoefficient cd = plus_coeff(g, static_cast<std::uint64_t>(std::abs(d)));
    const PlusCoefficient cdp =
        plus_coeff(g, static_cast<std::uint64_t>(std::abs(dprime)));
    const RatioCertificate cert =
        make_ratio_certificate(p, ctx.k, cd.value, cdp.value, ctx.d, ctxp.d);
    emit(cli::certificate_json(cert), out);
    return cert.conclusion == RatioConclusion::Inconclusive ? kExitInconclusive
                                                            : kExitProven;
}

int cmd_check(std::uint64_t p, std::int64_t d, const std::string& facts_path,
              const Output& out) {
    const FactsFile facts =
        facts_path.empty() ? FactsFile{} : cli::parse_facts_file(facts_path);
    const TwistContext ctx = TwistContext::for_delta(p, d);
    const ConditionReport rep = check_conditions(ctx, std::nullopt, facts);
    emit(cli::report_json(ctx, rep), out);
    return rep.all_hold() ? kExitProven : kExitInconclusive;
}

int cmd_verdict(std::uint64_t p, std::int64_t d, std::int64_t dprime,
                const std::string& facts_path, const std::string& cache_flag,
                const Output& out) {
    const FactsFile facts =
        facts_path.empty() ? FactsFile{} : cli::parse_facts_file(facts_path);
    const TwistContext ctx = TwistContext::for_delta(p, d);
    const TwistContext ctxp = TwistContext::for_delta(p, dprime);
    const std::uint64_t need = std::max<std::uint64_t>(std::abs(d), std::abs(dprime));
    const QSeries g = cli::kohnen_with_cache(resolve_cache_path(cache_flag), need);
    const Verdict v = verdict(ctx, ctxp, facts, g);
    emit(cli::verdict_json(v), out);
    return v.conclusion == VerdictConclusion::ExistsSurjection ? kExitProven
                                                               : kExitInconclusive;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact modular-form expansions and Bloch-Kato ratio certificates"};
    app.require_subcommand(1);

    bool flag_json = false, flag_text = false, flag_stamp = false;
    app.add_flag("--json", flag_json, "JSON output");
    app.add_flag("--text", flag_text, "plain-text output");
    app.add_flag("--stamp", flag_stamp, "add a provenance stamp with a timestamp");

    std::string expand_form;
    std::uint64_t expand_terms = 0;
    auto* expand = app.add_subcommand("expand", "print coefficients of a named form");
    expand->add_option("form", expand_form, "delta | g4 | theta | x0-11 | kohnen-lift")
        ->required();
    expand->add_option("terms", expand_terms, "last exponent to print")->required();

    std::uint64_t coeff_n = 0;
    std::string coeff_cache;
    auto* coeff = app.add_subcommand("coeff", "one plus-space coefficient c_n");
    coeff->add_option("n", coeff_n)->required();
    coeff->add_option("--cache", coeff_cache, "cache file (default $TWISTSHA_CACHE)");

    std::uint64_t table_p = 0, table_from = 0, table_to = 0;
    std::string table_cache;
    auto* table = app.add_subcommand("table", "factored c_{p*i} for i in a range");
    table->add_option("p", table_p)->required();
    table->add_option("i_from", table_from)->required();
    table->add_option("i_to", table_to)->required();
    table->add_option("--cache", table_cache, "cache file (default $TWISTSHA_CACHE)");

    std::uint64_t ratio_p = 0;
    std::int64_t ratio_d = 0, ratio_dp = 0;
    std::string ratio_cache;
    auto* ratio = app.add_subcommand("ratio", "p-adic valuation of the central-value ratio");
    ratio->add_option("p", ratio_p)->required();
    ratio->add_option("D", ratio_d)->required();
    ratio->add_option("Dprime", ratio_dp)->required();
    ratio->add_option("--cache", ratio_cache, "cache file (default $TWISTSHA_CACHE)");

    std::uint64_t check_p = 0;
    std::int64_t check_d = 0;
    std::string check_facts;
    auto* check = app.add_subcommand("check", "evaluate hypotheses (A)-(D) for delta");
    check->add_option("p", check_p)->required();
    check->add_option("D", check_d)->required();
    check->add_option("--facts", check_facts, "facts file with external assertions");

    std::uint64_t verdict_p = 0;
    std::int64_t verdict_d = 0, verdict_dp = 0;
    std::string verdict_facts, verdict_cache;
    auto* verd = app.add_subcommand("verdict", "full certificate for a (D, D') pair");
    verd->add_option("p", verdict_p)->required();
    verd->add_option("D", verdict_d)->required();
    verd->add_option("Dprime", verdict_dp)->required();
    verd->add_option("--facts", verdict_facts, "facts file with external assertions");
    verd->add_option("--cache", verdict_cache, "cache file (default $TWISTSHA_CACHE)");

    for (CLI::App* sub : {expand, coeff, table, ratio, check, verd})
        sub->fallthrough();  // output flags may follow the subcommand

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitBadInput;
    }

    Output out;
    out.stamp = flag_stamp;

    try {
        if (expand->parsed()) {
            out.as_json = flag_json && !flag_text;
            return cmd_expand(expand_form, expand_terms, out);
        }
        out.as_json = !flag_text;  // machine commands default to JSON
        if (coeff->parsed()) return cmd_coeff(coeff_n, coeff_cache, out);
        if (table->parsed()) {
            out.as_json = flag_json && !flag_text;
            return cmd_table(table_p, table_from, table_to, table_cache, out);
        }
        if (ratio->parsed()) return cmd_ratio(ratio_p, ratio_d, ratio_dp, ratio_cache, out);
        if (check->parsed()) return cmd_check(check_p, check_d, check_facts, out);
        if (verd->parsed())
            return cmd_verdict(verdict_p, verdict_d, verdict_dp, verdict_facts,
                               verdict_cache, out);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const Error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitBadInput;
}
