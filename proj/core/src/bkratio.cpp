#include "twistsha/bkratio.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "twistsha/errors.hpp"

namespace twistsha {

const char* ratio_conclusion_name(RatioConclusion c) {
    switch (c) {
        case RatioConclusion::ShaDNontrivial: return "sha_D_nontrivial";
        case RatioConclusion::ShaDprimeNontrivial: return "sha_Dprime_nontrivial";
        case RatioConclusion::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

const char* verdict_conclusion_name(VerdictConclusion c) {
    return c == VerdictConclusion::ExistsSurjection ? "exists_surjection"
                                                    : "inconclusive";
}

int kz_ratio_exponent(int k) {
    if (k < 2 || k % 2 != 0)
        throw InputError("the ratio exponent is defined for even k >= 2");
    return k / 2 - 1;
}

namespace {

void require_sign_condition(int k, const Discriminant& d) {
    if (d.kind == DiscKind::Invalid)
        throw InputError("ratio requires valid quadratic discriminants");
    const bool want_positive = ((k / 2) % 2 == 0);
    if (want_positive != (d.value > 0)) {
        std::ostringstream os;
        os << "sign condition violated: (-1)^(k/2) D > 0 requires D "
           << (want_positive ? "> 0" : "< 0") << ", got " << d.value;
        throw InputError(os.str());
    }
}

std::int64_t to_desk_int64(const mpz_class& v, const char* what) {
    if (!v.fits_slong_p()) {
        std::ostringstream os;
        os << what << " exceeds the desk-scale factoring range";
        throw InputError(os.str());
    }
    return static_cast<std::int64_t>(v.get_si());
}

}  // namespace

long ratio_valuation(std::uint64_t p, int k,
                     const mpz_class& c_d, const mpz_class& c_dprime,
                     const Discriminant& d, const Discriminant& dprime) {
    if (c_d == 0 || c_dprime == 0)
        throw VanishingCoefficientError(
            "a plus-space coefficient vanishes: the central L-value may be zero "
            "and the coefficient ratio is unusable");
    if (d.value == dprime.value)
        throw InputError("ratio requires two distinct discriminants");
    require_sign_condition(k, d);
    require_sign_condition(k, dprime);

    const long e = kz_ratio_exponent(k);
    const long num = 2 * padic_valuation(p, c_d) +
                     e * padic_valuation(p, mpz_class(static_cast<long>(dprime.value)));
    const long den = 2 * padic_valuation(p, c_dprime) +
                     e * padic_valuation(p, mpz_class(static_cast<long>(d.value)));
    return num - den;
}

RatioConclusion sha_nontriviality(long valuation) {
    if (valuation > 0) return RatioConclusion::ShaDNontrivial;
    if (valuation < 0) return RatioConclusion::ShaDprimeNontrivial;
    return RatioConclusion::Inconclusive;
}

RatioCertificate make_ratio_certificate(std::uint64_t p, int k,
                                        const mpz_class& c_d, const mpz_class& c_dprime,
                                        const Discriminant& d, const Discriminant& dprime) {
    RatioCertificate cert;
    cert.p = p;
    cert.k = k;
    cert.d = d;
    cert.dprime = dprime;
    cert.c_d = c_d;
    cert.c_dprime = c_dprime;
    cert.exponent = kz_ratio_exponent(k);
    cert.valuation = ratio_valuation(p, k, c_d, c_dprime, d, dprime);
    cert.c_d_fact = factorize(to_desk_int64(c_d, "c_D"));
    cert.c_dprime_fact = factorize(to_desk_int64(c_dprime, "c_D'"));
    cert.v_c_d = padic_valuation(p, c_d);
    cert.v_c_dprime = padic_valuation(p, c_dprime);
    cert.v_d = padic_valuation(p, mpz_class(static_cast<long>(d.value)));
    cert.v_dprime = padic_valuation(p, mpz_class(static_cast<long>(dprime.value)));
    cert.conclusion = sha_nontriviality(cert.valuation);
    return cert;
}

namespace {

std::string bk_assumption(const TwistContext& ctx) {
    std::ostringstream os;
    os << "Bloch-Kato conjecture for " << form_tag(ctx.form) << " twisted by chi_"
       << ctx.d.value;
    return os.str();
}

void append_consumed_facts(std::vector<std::string>& assumptions,
                           const ConditionReport& rep, const FactsFile& facts) {
    std::vector<std::string> keys;
    for (const Tri* t : {&rep.a, &rep.b, &rep.c, &rep.d, &rep.tamagawa_equal_at_p})
        keys.insert(keys.end(), t->fact_dependencies.begin(),
                    t->fact_dependencies.end());
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    for (const auto& k : keys) {
        auto it = facts.find(k);
        std::string line = "external fact " + k;
        if (it != facts.end()) line += ": " + it->second.provenance;
        assumptions.push_back(std::move(line));
    }
}

}  // namespace

Verdict verdict(const TwistContext& ctx_d, const TwistContext& ctx_dprime,
                const FactsFile& facts, const QSeries& kohnen) {
    if (ctx_d.form != ctx_dprime.form || ctx_d.k != ctx_dprime.k ||
        ctx_d.level != ctx_dprime.level || ctx_d.p != ctx_dprime.p)
        throw InputError("the two twist contexts must share form, weight, level and p");
    if (ctx_d.form != FormId::Delta)
        throw InputError("plus-space coefficients are available for delta only");

    Verdict v{ctx_d, ctx_dprime, {}, {}, {}, VerdictConclusion::Inconclusive, {}, {}};
    v.report = check_conditions(ctx_d, ctx_dprime, facts);

    const PlusCoefficient cd =
        plus_coeff(kohnen, static_cast<std::uint64_t>(std::abs(ctx_d.d.value)));
    const PlusCoefficient cdp =
        plus_coeff(kohnen, static_cast<std::uint64_t>(std::abs(ctx_dprime.d.value)));

    v.ratio = make_ratio_certificate(ctx_d.p, ctx_d.k, cd.value, cdp.value,
                                     ctx_d.d, ctx_dprime.d);
    {
        const Tri t1 = tamagawa_triviality(ctx_d, ctx_d.p, facts);
        const Tri t2 = tamagawa_triviality(ctx_dprime, ctx_d.p, facts);
        if (t1.state == TriState::Holds && t2.state == TriState::Holds)
            v.ratio.tamagawa_at_p = "1";
        else if (v.report.tamagawa_equal_at_p.state == TriState::Holds)
            v.ratio.tamagawa_at_p = "equal_by_assumption";
    }

    v.target = "M_{" + form_tag(ctx_d.form) + "," + std::to_string(ctx_d.d.value) + "}";

    v.assumptions.push_back(bk_assumption(ctx_d));
    v.assumptions.push_back(bk_assumption(ctx_dprime));
    v.assumptions.push_back(
        "the F_p-dimension of Sha^BK[p] is even (self-duality and the "
        "Cassels-Tate pairing)");
    append_consumed_facts(v.assumptions, v.report, facts);

    const bool conditions_ok = v.report.all_hold();
    const bool pair_ok = v.report.tamagawa_equal_at_p.state == TriState::Holds;
    const bool ratio_ok = v.ratio.valuation > 0;

    if (conditions_ok && pair_ok && ratio_ok) {
        v.conclusion = VerdictConclusion::ExistsSurjection;
        std::ostringstream os;
        os << "v_" << ctx_d.p << " of the ratio is " << v.ratio.valuation
           << " > 0, so Sha(D)[p] != 0 and by evenness its dimension is >= 2; "
              "conditions (A)-(D) hold, so the surjection onto " << v.target
           << " exists under the listed assumptions";
        v.explanation = os.str();
    } else {
        std::ostringstream os;
        if (!conditions_ok || !pair_ok) {
            os << "not every hypothesis is certified (";
            bool first = true;
            const std::pair<const char*, const Tri*> items[] = {
                {"A", &v.report.a}, {"B", &v.report.b}, {"C", &v.report.c},
                {"D", &v.report.d}, {"tamagawa_equal_at_p", &v.report.tamagawa_equal_at_p}};
            for (const auto& [name, tri] : items) {
                if (tri->state == TriState::Holds) continue;
                if (!first) os << ", ";
                first = false;
                os << name << " " << tri_state_name(tri->state);
            }
            os << ")";
        } else if (v.ratio.valuation < 0) {
            os << "the valuation is " << v.ratio.valuation
               << " < 0: the certificate flags Sha(" << ctx_dprime.d.value
               << ")[p] as nontrivial instead; no conclusion for D = "
               << ctx_d.d.value;
        } else {
            os << "the valuation is 0: the ratio decides nothing";
        }
        v.explanation = os.str();
    }
    return v;
}

Verdict verdict(const TwistContext& ctx_d, const TwistContext& ctx_dprime,
                const FactsFile& facts) {
    const std::uint64_t need =
        std::max<std::uint64_t>(std::abs(ctx_d.d.value), std::abs(ctx_dprime.d.value));
    return verdict(ctx_d, ctx_dprime, facts, kohnen_lift(need));
}

}  // namespace twistsha
