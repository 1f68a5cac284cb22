#include "twistsha/hypotheses.hpp"

#include <algorithm>
#include <sstream>

#include "twistsha/errors.hpp"

namespace twistsha {

const char* tri_state_name(TriState s) {
    switch (s) {
        case TriState::Holds: return "holds";
        case TriState::Fails: return "fails";
        case TriState::Unknown: return "unknown";
    }
    return "unknown";
}

Tri Tri::holds(std::string reason, std::vector<std::string> deps) {
    return Tri{TriState::Holds, std::move(reason), std::move(deps)};
}

Tri Tri::fails(std::string reason, std::vector<std::string> deps) {
    return Tri{TriState::Fails, std::move(reason), std::move(deps)};
}

Tri Tri::unknown(std::string reason, std::vector<std::string> deps) {
    if (reason.empty())
        throw InternalError("Unknown verdicts must name the missing fact");
    return Tri{TriState::Unknown, std::move(reason), std::move(deps)};
}

namespace {

std::string join_key(std::initializer_list<std::string> parts) {
    std::string out;
    for (const auto& p : parts) {
        if (!out.empty()) out += ':';
        out += p;
    }
    return out;
}

std::optional<bool> fact_value(const FactsFile& facts, const std::string& key) {
    auto it = facts.find(key);
    if (it == facts.end()) return std::nullopt;
    return it->second.value;
}

}  // namespace

std::string fact_key_image_contains_sl2(FormId form, std::uint64_t p) {
    return join_key({"image_contains_sl2", form_tag(form), std::to_string(p)});
}

std::string fact_key_m_splits_at_p(FormId form, std::uint64_t p, std::int64_t d) {
    return join_key({"m_splits_at_p", form_tag(form), std::to_string(p),
                     std::to_string(d)});
}

std::string fact_key_t_mod_pn_splits_all_n(FormId form, std::uint64_t p, std::int64_t d) {
    return join_key({"t_mod_pn_splits_all_n", form_tag(form), std::to_string(p),
                     std::to_string(d)});
}

std::string fact_key_tamagawa_equal_at_p(FormId form, std::uint64_t p,
                                         std::int64_t d, std::int64_t dprime) {
    return join_key({"tamagawa_equal_at_p", form_tag(form), std::to_string(p),
                     std::to_string(d), std::to_string(dprime)});
}

std::string fact_key_m_invariants_vanish_at_ell(FormId form, std::uint64_t p,
                                                std::int64_t d, std::uint64_t ell) {
    return join_key({"m_invariants_vanish_at_ell", form_tag(form), std::to_string(p),
                     std::to_string(d), std::to_string(ell)});
}

TwistContext::TwistContext(FormId form_, int k_, std::uint64_t level_,
                           std::uint64_t p_, Discriminant d_, mpz_class a_p_)
    : form(form_), k(k_), level(level_), p(p_), d(d_), a_p(std::move(a_p_)) {
    if (k < 2 || k % 2 != 0)
        throw InputError("weight must be an even integer >= 2");
    if (level < 1) throw InputError("level must be >= 1");
    if (p < 3 || !is_prime(p))
        throw InputError("p must be an odd prime");
    if (d.kind == DiscKind::Invalid)
        throw InputError("twist discriminant is not a quadratic discriminant");
}

TwistContext TwistContext::for_delta(std::uint64_t p, std::int64_t d) {
    if (p < 3 || !is_prime(p))
        throw InputError("p must be an odd prime");
    const Discriminant disc = classify_discriminant(d);
    if (disc.kind == DiscKind::Invalid) {
        std::ostringstream os;
        os << d << " is not a quadratic discriminant";
        throw InputError(os.str());
    }
    const QSeries delta = delta_series(p);
    const mpq_class& tau_p = delta.coeff(static_cast<std::size_t>(p));
    return TwistContext(FormId::Delta, 12, 1, p, disc,
                        mpz_class(mpq_numref(tau_p.get_mpq_t())));
}

const char* reduction_type_name(ReductionType r) {
    return r == ReductionType::Ordinary ? "ordinary" : "supersingular";
}

ReductionType reduction_type(const TwistContext& ctx) {
    if (ctx.level % ctx.p == 0)
        throw InputError("reduction type needs good reduction (p divides N)");
    const unsigned long r = mpz_fdiv_ui(ctx.a_p.get_mpz_t(), ctx.p);
    return r == 0 ? ReductionType::Supersingular : ReductionType::Ordinary;
}

namespace {

enum class DClass { CoprimeToP, DivisibleNotPStar, PStar };

DClass d_class_of(std::uint64_t p, std::int64_t d) {
    if (d % static_cast<std::int64_t>(p) != 0) return DClass::CoprimeToP;
    const std::int64_t pstar = (p % 4 == 1) ? static_cast<std::int64_t>(p)
                                            : -static_cast<std::int64_t>(p);
    return d == pstar ? DClass::PStar : DClass::DivisibleNotPStar;
}

const char* d_class_name(DClass c) {
    switch (c) {
        case DClass::CoprimeToP: return "p_coprime_to_D";
        case DClass::DivisibleNotPStar: return "p_divides_D_not_pstar";
        case DClass::PStar: return "D_equals_pstar";
    }
    return "";
}

bool divides(std::int64_t m, std::int64_t x) {
    return ((x % m) + m) % m == 0;
}

// One exclusion situation: arithmetic conjuncts already evaluated to a
// bool, plus up to two splitting-type requirements that may be unresolved.
// `want` is the splitting value the situation requires.
struct SplitLiteral {
    std::string key;
    std::optional<bool> actual;
    bool want = true;
};

Tri eval_situation(bool arithmetic_ok, const std::string& arithmetic_reason,
                   const std::vector<SplitLiteral>& lits) {
    if (!arithmetic_ok) return Tri::fails(arithmetic_reason);

    std::vector<std::string> deps;
    std::vector<std::string> missing;
    for (const auto& l : lits) {
        if (l.actual.has_value()) {
            deps.push_back(l.key);
            if (*l.actual != l.want)
                return Tri::fails("asserted splitting behavior rules this case out",
                                  std::move(deps));
        } else {
            missing.push_back(l.key);
        }
    }
    if (!missing.empty()) {
        std::string r = "undetermined: missing fact";
        if (missing.size() > 1) r += "s";
        for (const auto& k : missing) r += " " + k;
        return Tri::unknown(std::move(r), std::move(deps));
    }
    return Tri::holds("every conjunct holds", std::move(deps));
}

}  // namespace

bool OrdinaryExclusions::any_holds() const {
    for (const Tri* t : {&i1, &i2, &ii, &iii, &iv})
        if (t->state == TriState::Holds) return true;
    return false;
}

bool OrdinaryExclusions::any_unknown() const {
    for (const Tri* t : {&i1, &i2, &ii, &iii, &iv})
        if (t->state == TriState::Unknown) return true;
    return false;
}

OrdinaryExclusions ordinary_exclusions(const TwistContext& ctx, const FactsFile& facts) {
    OrdinaryExclusions out;
    const DClass cls = d_class_of(ctx.p, ctx.d.value);
    out.d_class = d_class_name(cls);

    const std::int64_t p = static_cast<std::int64_t>(ctx.p);
    const std::int64_t pm1 = p - 1;
    const bool ap_is_one = mpz_fdiv_ui(ctx.a_p.get_mpz_t(), ctx.p) == 1;

    if (!ap_is_one) {
        // Every situation requires a_p = 1 (mod p); nothing else matters.
        const Tri f = Tri::fails("a_p is not 1 (mod p)");
        out.i1 = out.i2 = out.ii = out.iii = out.iv = f;
        return out;
    }

    if (cls == DClass::DivisibleNotPStar) {
        const Tri f = Tri::fails(
            "p | D with D != p*: the local invariants vanish for every "
            "splitting type");
        out.i1 = out.i2 = out.ii = out.iii = out.iv = f;
        return out;
    }

    const std::string split_key = fact_key_m_splits_at_p(ctx.form, ctx.p, ctx.d.value);
    const std::string tsplit_key =
        fact_key_t_mod_pn_splits_all_n(ctx.form, ctx.p, ctx.d.value);
    const std::optional<bool> split = fact_value(facts, split_key);
    const std::optional<bool> tsplit = fact_value(facts, tsplit_key);

    const Tri other_class = Tri::fails("not applicable to this D-class");

    if (cls == DClass::CoprimeToP) {
        const bool div_half = divides(pm1, ctx.k / 2);
        const bool div_half_m1 = divides(pm1, ctx.k / 2 - 1);

        out.i1 = eval_situation(
            ctx.k > 2 && (div_half || div_half_m1),
            ctx.k <= 2 ? "requires k > 2"
                       : "p-1 divides neither k/2 nor k/2 - 1",
            {{split_key, split, true}});
        // T/p^nT non-split for some n means the all-n assertion is false.
        out.i2 = eval_situation(
            ctx.k == 2, "requires k = 2",
            {{split_key, split, true}, {tsplit_key, tsplit, false}});
        out.ii = eval_situation(div_half, "p-1 does not divide k/2",
                                {{split_key, split, false}});
        out.iii = other_class;
        out.iv = other_class;
        return out;
    }

    // cls == DClass::PStar
    if ((ctx.k - p + 1) % 2 != 0 || (ctx.k + p - 3) % 2 != 0)
        throw InternalError("(k-p+1)/2 and (k+p-3)/2 must be integers");
    const std::int64_t h1 = (ctx.k - p + 1) / 2;
    const std::int64_t h2 = (ctx.k + p - 3) / 2;
    const bool div1 = divides(pm1, h1);
    const bool div2 = divides(pm1, h2);

    out.i1 = other_class;
    out.i2 = other_class;
    out.ii = other_class;
    out.iii = eval_situation(div1 || div2,
                             "p-1 divides neither (k-p+1)/2 nor (k+p-3)/2",
                             {{split_key, split, true}});
    out.iv = eval_situation(div1, "p-1 does not divide (k-p+1)/2",
                            {{split_key, split, false}});
    return out;
}

Tri tamagawa_triviality(const TwistContext& ctx, std::uint64_t ell,
                        const FactsFile& facts) {
    if (!is_prime(ell)) throw InputError("tamagawa_triviality requires a prime");

    if (ell != ctx.p && ctx.level % ell != 0) {
        return Tri::holds(
            "ell coprime to N*p: inertia acts trivially on A, so c(Q_ell, A) = 1 "
            "whether or not sqrt(D) is unramified at ell");
    }
    if (ell == ctx.p && ctx.level % ctx.p != 0 &&
        static_cast<std::int64_t>(ctx.p) > ctx.k) {
        return Tri::holds("good reduction with p > k: c(Q_p, A) = 1");
    }
    const std::string key =
        fact_key_m_invariants_vanish_at_ell(ctx.form, ctx.p, ctx.d.value, ell);
    const std::optional<bool> asserted = fact_value(facts, key);
    if (asserted.has_value()) {
        if (*asserted)
            return Tri::holds("M^{G_Qell} = 0 asserted, which forces c(Q_ell, A) = 1",
                              {key});
        return Tri::unknown(
            "asserted nonvanishing invariants decide nothing about c(Q_ell, A)",
            {key});
    }
    std::ostringstream os;
    os << "no rule applies at ell = " << ell << "; missing fact " << key;
    return Tri::unknown(os.str());
}

bool ConditionReport::all_hold() const {
    return a.state == TriState::Holds && b.state == TriState::Holds &&
           c.state == TriState::Holds && d.state == TriState::Holds;
}

SelmerBoundResult selmer_bound(const TwistContext& ctx, const ConditionReport& report) {
    (void)ctx;
    if (report.b.state == TriState::Holds) {
        // No local invariants: the image of the localization is at most the
        // tangent-space line.
        return {1, SelmerLedger{0, 1, 0}};
    }
    if (report.reduction == ReductionType::Ordinary && report.exclusions &&
        report.exclusions->any_holds()) {
        // An exclusion situation definitely occurs: the invariants
        // contribute exactly one extra dimension.
        return {2, SelmerLedger{1, 1, 0}};
    }
    return {std::nullopt, std::nullopt};
}

ConditionReport check_conditions(const TwistContext& ctx,
                                 const std::optional<TwistContext>& ctx_prime,
                                 const FactsFile& facts) {
    ConditionReport rep;

    // (A) good reduction at p
    if (ctx.level % ctx.p != 0) {
        std::ostringstream os;
        os << "p = " << ctx.p << " does not divide N = " << ctx.level;
        rep.a = Tri::holds(os.str());
    } else {
        std::ostringstream os;
        os << "p = " << ctx.p << " divides N = " << ctx.level;
        rep.a = Tri::fails(os.str());
    }

    // (B) the local dichotomy
    if (rep.a.state != TriState::Holds) {
        rep.b = Tri::unknown("reduction type undefined: p divides N");
    } else {
        const ReductionType rt = reduction_type(ctx);
        rep.reduction = rt;
        if (rt == ReductionType::Supersingular) {
            rep.local_case = "supersingular";
            if (ctx.k <= static_cast<int>(ctx.p) + 1)
                rep.b = Tri::holds("supersingular with k <= p+1: the residual "
                                   "representation is locally irreducible");
            else
                rep.b = Tri::fails("supersingular with k > p+1");
        } else if (divides(static_cast<std::int64_t>(ctx.p) - 1, ctx.k - 1)) {
            rep.local_case = "ordinary";
            rep.b = Tri::fails("ordinary with p-1 | k-1");
        } else {
            OrdinaryExclusions ex = ordinary_exclusions(ctx, facts);
            rep.local_case = ex.d_class;
            const std::pair<const char*, const Tri*> items[] = {
                {"i1", &ex.i1}, {"i2", &ex.i2}, {"ii", &ex.ii},
                {"iii", &ex.iii}, {"iv", &ex.iv}};
            const char* holding = nullptr;
            std::vector<std::string> deps;
            std::string missing;
            for (const auto& [name, tri] : items) {
                deps.insert(deps.end(), tri->fact_dependencies.begin(),
                            tri->fact_dependencies.end());
                if (tri->state == TriState::Holds && !holding) holding = name;
                if (tri->state == TriState::Unknown) {
                    if (!missing.empty()) missing += "; ";
                    missing += std::string("(") + name + ") " + tri->reason;
                }
            }
            std::sort(deps.begin(), deps.end());
            deps.erase(std::unique(deps.begin(), deps.end()), deps.end());
            if (holding) {
                rep.b = Tri::fails(
                    std::string("ordinary, p-1 does not divide k-1, but exclusion (") +
                        holding + ") occurs",
                    deps);
            } else if (!missing.empty()) {
                rep.b = Tri::unknown("ordinary, undecided exclusions: " + missing, deps);
            } else {
                rep.b = Tri::holds(
                    "ordinary, p-1 does not divide k-1, and no exclusion occurs",
                    deps);
            }
            rep.exclusions = std::move(ex);
        }
    }

    // (C) size of the mod-p image
    if (ctx.form == FormId::Delta) {
        static constexpr std::uint64_t kExceptional[] = {2, 3, 5, 7, 23, 691};
        const bool exceptional =
            std::find(std::begin(kExceptional), std::end(kExceptional), ctx.p) !=
            std::end(kExceptional);
        if (exceptional) {
            std::ostringstream os;
            os << "p = " << ctx.p
               << " is an exceptional prime for delta: the mod-p image does not "
                  "contain SL2(F_p)";
            rep.c = Tri::fails(os.str());
        } else {
            rep.c = Tri::holds(
                "built-in: the mod-p image for delta contains SL2(F_p) for every "
                "p outside {2, 3, 5, 7, 23, 691} (Serre, Swinnerton-Dyer)");
        }
    } else {
        const std::string key = fact_key_image_contains_sl2(ctx.form, ctx.p);
        const std::optional<bool> asserted = fact_value(facts, key);
        if (!asserted.has_value())
            rep.c = Tri::unknown("image of the mod-p representation is not "
                                 "computed here; missing fact " + key);
        else if (*asserted)
            rep.c = Tri::holds("image contains SL2(F_p), externally asserted", {key});
        else
            rep.c = Tri::fails("image does not contain SL2(F_p), externally asserted",
                               {key});
    }

    // (D) Tamagawa triviality at the bad primes
    if (ctx.level == 1) {
        rep.d = Tri::holds("N = 1: no primes divide the level");
    } else {
        const Factorization nf = factorize(static_cast<std::int64_t>(ctx.level));
        std::vector<std::string> deps;
        std::string missing;
        bool all_hold = true;
        for (const auto& [ell, e] : nf.factors) {
            Tri t = tamagawa_triviality(ctx, ell, facts);
            deps.insert(deps.end(), t.fact_dependencies.begin(),
                        t.fact_dependencies.end());
            if (t.state != TriState::Holds) {
                all_hold = false;
                if (!missing.empty()) missing += "; ";
                missing += "ell = " + std::to_string(ell) + ": " + t.reason;
            }
        }
        if (all_hold)
            rep.d = Tri::holds("c(Q_ell, A) = 1 for every ell | N", deps);
        else
            rep.d = Tri::unknown("Tamagawa factors undetermined: " + missing, deps);
    }

    // Equality of the Tamagawa factors at p across the pair
    if (!ctx_prime.has_value()) {
        rep.tamagawa_equal_at_p =
            Tri::unknown("no second discriminant provided for the pair");
    } else {
        const Tri t1 = tamagawa_triviality(ctx, ctx.p, facts);
        const Tri t2 = tamagawa_triviality(*ctx_prime, ctx.p, facts);
        if (t1.state == TriState::Holds && t2.state == TriState::Holds) {
            std::vector<std::string> deps = t1.fact_dependencies;
            deps.insert(deps.end(), t2.fact_dependencies.begin(),
                        t2.fact_dependencies.end());
            rep.tamagawa_equal_at_p =
                Tri::holds("c(Q_p, A) = 1 for both twists", deps);
        } else {
            // The equality is symmetric in (D, D'); accept either key order.
            std::string key = fact_key_tamagawa_equal_at_p(
                ctx.form, ctx.p, ctx.d.value, ctx_prime->d.value);
            std::optional<bool> asserted = fact_value(facts, key);
            if (!asserted.has_value()) {
                const std::string swapped = fact_key_tamagawa_equal_at_p(
                    ctx.form, ctx.p, ctx_prime->d.value, ctx.d.value);
                asserted = fact_value(facts, swapped);
                if (asserted.has_value()) key = swapped;
            }
            if (asserted.has_value()) {
                if (*asserted)
                    rep.tamagawa_equal_at_p =
                        Tri::holds("equality externally asserted", {key});
                else
                    rep.tamagawa_equal_at_p =
                        Tri::fails("inequality externally asserted", {key});
            } else {
                rep.tamagawa_equal_at_p = Tri::unknown(
                    "Tamagawa factors at p not individually certified; missing fact " +
                    key);
            }
        }
    }

    const SelmerBoundResult sb = selmer_bound(ctx, rep);
    rep.selmer_bound = sb.bound;
    rep.selmer_ledger = sb.ledger;
    return rep;
}

}  // namespace twistsha
