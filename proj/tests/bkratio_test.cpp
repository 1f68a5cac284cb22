#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "twistsha/bkratio.hpp"
#include "twistsha/errors.hpp"

using namespace twistsha;

namespace {

Discriminant disc(std::int64_t d) { return classify_discriminant(d); }

const std::int64_t kPositiveFundamental[] = {5,  8,  12, 13, 17, 21, 24,
                                             28, 29, 33, 517, 201, 2881};

}  // namespace

TEST_CASE("ratio exponent") {
    CHECK(kz_ratio_exponent(12) == 5);
    CHECK(kz_ratio_exponent(2) == 0);
    CHECK(kz_ratio_exponent(4) == 1);
    CHECK_THROWS_AS(kz_ratio_exponent(11), InputError);
    CHECK_THROWS_AS(kz_ratio_exponent(0), InputError);
}

TEST_CASE("ratio valuation on the worked dossiers") {
    // v_11(c_517) = 1, v_11(c_33) = 0, v_11(33) = v_11(517) = 1, e = 5
    CHECK(ratio_valuation(11, 12, mpz_class(52000080), mpz_class(-6480),
                          disc(517), disc(33)) == 2);
    // v_67(c_2881) = 1, v_67(c_201) = 0, v_67(201) = v_67(2881) = 1
    CHECK(ratio_valuation(67, 12, mpz_class(-2622438960), mpz_class(-2686320),
                          disc(2881), disc(201)) == 2);
}

TEST_CASE("ratio valuation rejects bad inputs") {
    CHECK_THROWS_AS(ratio_valuation(11, 12, mpz_class(0), mpz_class(5),
                                    disc(517), disc(33)),
                    VanishingCoefficientError);
    CHECK_THROWS_AS(ratio_valuation(11, 12, mpz_class(5), mpz_class(0),
                                    disc(517), disc(33)),
                    VanishingCoefficientError);
    CHECK_THROWS_AS(ratio_valuation(11, 12, mpz_class(5), mpz_class(7),
                                    disc(517), disc(517)),
                    InputError);
    // k = 12 needs positive discriminants
    CHECK_THROWS_AS(ratio_valuation(11, 12, mpz_class(5), mpz_class(7),
                                    disc(-3), disc(33)),
                    InputError);
    // k = 2 (k/2 odd) needs negative ones
    CHECK_THROWS_AS(ratio_valuation(11, 2, mpz_class(5), mpz_class(7),
                                    disc(33), disc(517)),
                    InputError);
    CHECK_NOTHROW(ratio_valuation(11, 2, mpz_class(5), mpz_class(7),
                                  disc(-3), disc(-4)));
}

TEST_CASE("sha nontriviality from the valuation sign") {
    CHECK(sha_nontriviality(2) == RatioConclusion::ShaDNontrivial);
    CHECK(sha_nontriviality(0) == RatioConclusion::Inconclusive);
    CHECK(sha_nontriviality(-2) == RatioConclusion::ShaDprimeNontrivial);
}

TEST_CASE("ratio valuation is antisymmetric and scales correctly in p") {
    std::mt19937_64 rng(5577006791947779410ull);
    std::uniform_int_distribution<int> pick(
        0, static_cast<int>(std::size(kPositiveFundamental)) - 1);
    std::uniform_int_distribution<long> cs(1, 2000000);
    std::uniform_int_distribution<int> signs(0, 1);
    const std::uint64_t p = 11;

    for (int trial = 0; trial < 100; ++trial) {
        const int di = pick(rng);
        int dj = pick(rng);
        while (dj == di) dj = pick(rng);
        const Discriminant d = disc(kPositiveFundamental[di]);
        const Discriminant dp = disc(kPositiveFundamental[dj]);
        const mpz_class cd = (signs(rng) ? 1 : -1) * mpz_class(cs(rng));
        const mpz_class cdp = (signs(rng) ? 1 : -1) * mpz_class(cs(rng));

        const long v = ratio_valuation(p, 12, cd, cdp, d, dp);
        CHECK(ratio_valuation(p, 12, cdp, cd, dp, d) == -v);

        // multiplying both coefficients by the same p-free integer is a no-op
        const mpz_class scale = 13 * cs(rng) % 100000 + 1;
        if (mpz_fdiv_ui(scale.get_mpz_t(), p) != 0) {
            CHECK(ratio_valuation(p, 12, cd * scale, cdp * scale, d, dp) == v);
        }
        // one extra factor of p on c_D raises the valuation by exactly 2
        CHECK(ratio_valuation(p, 12, cd * static_cast<long>(p), cdp, d, dp) ==
              v + 2);
    }
}

TEST_CASE("certificate fields") {
    const RatioCertificate cert = make_ratio_certificate(
        11, 12, mpz_class(52000080), mpz_class(-6480), disc(517), disc(33));
    CHECK(cert.exponent == 5);
    CHECK(cert.valuation == 2);
    CHECK(cert.v_c_d == 1);
    CHECK(cert.v_c_dprime == 0);
    CHECK(cert.v_d == 1);
    CHECK(cert.v_dprime == 1);
    CHECK(cert.conclusion == RatioConclusion::ShaDNontrivial);
    CHECK(cert.c_d_fact.to_string() == "2^4·3·5·11·19697");
    CHECK(cert.c_dprime_fact.to_string() == "-2^4·3^4·5");
    CHECK(cert.valuation ==
          (2 * cert.v_c_d + cert.exponent * cert.v_dprime) -
              (2 * cert.v_c_dprime + cert.exponent * cert.v_d));
}

TEST_CASE("verdict reproduces the p = 11 dossier") {
    const TwistContext ctx = TwistContext::for_delta(11, 517);
    const TwistContext ctxp = TwistContext::for_delta(11, 33);
    FactsFile facts;
    facts[fact_key_tamagawa_equal_at_p(FormId::Delta, 11, 517, 33)] =
        FactEntry{true, "worked example"};

    const QSeries g = kohnen_lift(517);
    const Verdict v = verdict(ctx, ctxp, facts, g);
    CHECK(v.conclusion == VerdictConclusion::ExistsSurjection);
    CHECK(v.target == "M_{delta,517}");
    CHECK(v.ratio.valuation == 2);
    CHECK(v.ratio.tamagawa_at_p == "equal_by_assumption");
    CHECK(v.report.all_hold());

    // both Bloch-Kato assumptions and the consumed fact are on the ledger
    REQUIRE(!v.assumptions.empty());
    const auto has = [&](const std::string& needle) {
        return std::any_of(v.assumptions.begin(), v.assumptions.end(),
                           [&](const std::string& a) {
                               return a.find(needle) != std::string::npos;
                           });
    };
    CHECK(has("Bloch-Kato conjecture for delta twisted by chi_517"));
    CHECK(has("Bloch-Kato conjecture for delta twisted by chi_33"));
    CHECK(has("tamagawa_equal_at_p:delta:11:517:33"));
    CHECK(has("worked example"));

    // swapped order: the valuation flips to -2 and nothing is concluded
    // for D = 33, though the certificate flags Sha(517)
    const Verdict swapped = verdict(ctxp, ctx, facts, g);
    CHECK(swapped.conclusion == VerdictConclusion::Inconclusive);
    CHECK(swapped.ratio.valuation == -2);
    CHECK(swapped.ratio.conclusion == RatioConclusion::ShaDprimeNontrivial);

    // without the external fact the pair equality is Unknown: inconclusive
    const Verdict bare = verdict(ctx, ctxp, {}, g);
    CHECK(bare.conclusion == VerdictConclusion::Inconclusive);
    CHECK(bare.ratio.valuation == 2);
}

TEST_CASE("verdict rejects mismatched contexts") {
    const TwistContext a = TwistContext::for_delta(11, 517);
    const TwistContext b = TwistContext::for_delta(67, 201);
    CHECK_THROWS_AS(verdict(a, b, {}, kohnen_lift(4)), InputError);
}
