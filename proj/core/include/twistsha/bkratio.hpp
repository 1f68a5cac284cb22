#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "twistsha/arith.hpp"
#include "twistsha/hypotheses.hpp"
#include "twistsha/qseries.hpp"

namespace twistsha {

enum class RatioConclusion { ShaDNontrivial, ShaDprimeNontrivial, Inconclusive };

const char* ratio_conclusion_name(RatioConclusion c);

/// The exponent k/2 - 1 of (D'/D) in the central-value ratio, after the
/// sqrt(D)/sqrt(D') volume factor cancels against |D|^((k-1)/2).
int kz_ratio_exponent(int k);

// v_p( c_D^2 * D'^(k/2-1) ) - v_p( c_D'^2 * D^(k/2-1) ), computed on
// factored integers; no rational arithmetic, hence no rounding. Preconds:
// both coefficients nonzero (else VanishingCoefficientError), D != D', both
// valid discriminants with (-1)^(k/2) D > 0 and (-1)^(k/2) D' > 0.
long ratio_valuation(std::uint64_t p, int k,
                     const mpz_class& c_d, const mpz_class& c_dprime,
                     const Discriminant& d, const Discriminant& dprime);

/// valuation > 0 certifies Sha(D)[p] != 0 (hence dimension >= 2 by
/// evenness); < 0 the same for D'; 0 decides nothing.
RatioConclusion sha_nontriviality(long valuation);

// The exact p-adic bookkeeping behind one ratio: both coefficients with
// factorizations, the per-factor valuations, and the final valuation.
struct RatioCertificate {
    std::uint64_t p = 0;
    int k = 0;
    Discriminant d, dprime;
    mpz_class c_d, c_dprime;
    Factorization c_d_fact, c_dprime_fact;
    int exponent = 0;  // k/2 - 1
    long v_c_d = 0, v_c_dprime = 0, v_d = 0, v_dprime = 0;
    long valuation = 0;
    RatioConclusion conclusion = RatioConclusion::Inconclusive;
    // "1" when c(Q_p, A) = 1 was certified for both twists,
    // "equal_by_assumption" when equality was externally asserted.
    std::optional<std::string> tamagawa_at_p;
};

RatioCertificate make_ratio_certificate(std::uint64_t p, int k,
                                        const mpz_class& c_d, const mpz_class& c_dprime,
                                        const Discriminant& d, const Discriminant& dprime);

enum class VerdictConclusion { ExistsSurjection, Inconclusive };

const char* verdict_conclusion_name(VerdictConclusion c);

// The machine-checkable record: under the listed assumptions, a Galois-
// equivariant surjection from cl(K_{f,D}) tensor F_p onto the twisted
// representation space exists. Never concludes from an Unknown condition or
// an inconclusive ratio.
struct Verdict {
    TwistContext ctx_d;
    TwistContext ctx_dprime;
    ConditionReport report;
    RatioCertificate ratio;
    std::vector<std::string> assumptions;
    VerdictConclusion conclusion = VerdictConclusion::Inconclusive;
    std::string target;        // e.g. "M_{delta,517}"
    std::string explanation;   // one line on how the conclusion was reached
};

/// Full pipeline against a precomputed kohnen_lift series (prec >= max |D|).
Verdict verdict(const TwistContext& ctx_d, const TwistContext& ctx_dprime,
                const FactsFile& facts, const QSeries& kohnen);

/// Convenience: computes the series at precision max(|D|, |D'|).
Verdict verdict(const TwistContext& ctx_d, const TwistContext& ctx_dprime,
                const FactsFile& facts);

}  // namespace twistsha
