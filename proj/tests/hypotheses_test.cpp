#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "twistsha/errors.hpp"
#include "twistsha/hypotheses.hpp"

using namespace twistsha;

namespace {

// Synthetic context for decision-table sweeps; the production path is
// TwistContext::for_delta, which binds k = 12, N = 1, a_p = tau(p).
TwistContext synthetic(std::uint64_t p, int k, std::int64_t d, long a_p,
                       std::uint64_t level = 1) {
    return TwistContext(FormId::Delta, k, level, p, classify_discriminant(d),
                        mpz_class(a_p));
}

FactsFile facts_with(std::initializer_list<std::pair<std::string, bool>> kv) {
    FactsFile f;
    for (const auto& [k, v] : kv) f[k] = FactEntry{v, "test assertion"};
    return f;
}

std::vector<const Tri*> all(const OrdinaryExclusions& ex) {
    return {&ex.i1, &ex.i2, &ex.ii, &ex.iii, &ex.iv};
}

}  // namespace

TEST_CASE("context construction") {
    const TwistContext ctx = TwistContext::for_delta(11, 517);
    CHECK(ctx.k == 12);
    CHECK(ctx.level == 1);
    CHECK(ctx.a_p == 534612);
    CHECK(ctx.d.kind == DiscKind::Fundamental);

    CHECK_THROWS_AS(TwistContext::for_delta(4, 517), InputError);
    CHECK_THROWS_AS(TwistContext::for_delta(11, 7), InputError);
    CHECK_THROWS_AS(synthetic(11, 7, 517, 1), InputError);   // odd weight
    CHECK_THROWS_AS(synthetic(11, 0, 517, 1), InputError);
}

TEST_CASE("reduction type") {
    CHECK(reduction_type(TwistContext::for_delta(11, 517)) ==
          ReductionType::Ordinary);
    // tau(5) = 4830 = 0 (mod 5)
    CHECK(reduction_type(TwistContext::for_delta(5, 517)) ==
          ReductionType::Supersingular);
    CHECK(reduction_type(TwistContext::for_delta(67, 2881)) ==
          ReductionType::Ordinary);

    CHECK_THROWS_AS(reduction_type(synthetic(11, 12, 517, 1, 22)), InputError);
}

TEST_CASE("exclusion table: the worked dossiers") {
    const FactsFile none;

    // p = 11, D = 517 = 11*47: p | D and D != p* = -11, so every situation
    // fails outright even though tau(11) = 1 (mod 11).
    {
        const auto ex = ordinary_exclusions(TwistContext::for_delta(11, 517), none);
        CHECK(ex.d_class == "p_divides_D_not_pstar");
        for (const Tri* t : all(ex)) CHECK(t->state == TriState::Fails);
    }

    // a_p != 1 (mod p) settles everything with no facts.
    {
        const auto ex = ordinary_exclusions(synthetic(13, 12, 8, 2), none);
        for (const Tri* t : all(ex)) CHECK(t->state == TriState::Fails);
    }

    // p = 13, p coprime to D, a_p = 1: p-1 = 12 divides neither k/2 = 6 nor
    // k/2 - 1 = 5, which settles both splitting worlds identically.
    {
        const auto ex = ordinary_exclusions(synthetic(13, 12, 8, 1), none);
        CHECK(ex.d_class == "p_coprime_to_D");
        for (const Tri* t : all(ex)) CHECK(t->state == TriState::Fails);
    }

    // p = 7, k = 12: p-1 = 6 | k/2 = 6, a_p = 1. Splitting now matters:
    // without facts (i1) and (ii) are undetermined.
    {
        const TwistContext ctx = synthetic(7, 12, 8, 1);
        const auto ex = ordinary_exclusions(ctx, none);
        CHECK(ex.i1.state == TriState::Unknown);
        CHECK(ex.ii.state == TriState::Unknown);
        CHECK(ex.i2.state == TriState::Fails);  // k != 2

        const std::string key = fact_key_m_splits_at_p(FormId::Delta, 7, 8);
        const auto split = ordinary_exclusions(ctx, facts_with({{key, true}}));
        CHECK(split.i1.state == TriState::Holds);
        CHECK(split.ii.state == TriState::Fails);
        const auto nonsplit = ordinary_exclusions(ctx, facts_with({{key, false}}));
        CHECK(nonsplit.i1.state == TriState::Fails);
        CHECK(nonsplit.ii.state == TriState::Holds);
    }

    // D = p*: for p = 5, k = 12 the divisibilities (k-p+1)/2 = 4 and
    // (k+p-3)/2 = 7 against p-1 = 4: (iii) eligible, (iv) eligible.
    {
        const TwistContext ctx = synthetic(5, 12, 5, 1);
        const auto ex = ordinary_exclusions(ctx, none);
        CHECK(ex.d_class == "D_equals_pstar");
        CHECK(ex.iii.state == TriState::Unknown);
        CHECK(ex.iv.state == TriState::Unknown);
        CHECK(ex.i1.state == TriState::Fails);
    }
}

TEST_CASE("exclusion table: exhaustive decision sweep") {
    // Over all p in {3..97}, even k in {2..26}, the three D-classes,
    // a_p mod p in {0,1,2}, and split fact absent/true/false:
    //   - a_p != 1 (mod p) never leaves an Unknown;
    //   - the p | D, D != p* class always fails everything;
    //   - with the fact absent, a branch is Unknown only when the split
    //     worlds genuinely disagree;
    //   - resolving a fact never flips Holds <-> Fails.
    for (std::uint64_t p = 3; p <= 97; ++p) {
        if (!is_prime(p)) continue;
        for (int k = 2; k <= 26; k += 2) {
            const std::int64_t pstar = (p % 4 == 1) ? static_cast<std::int64_t>(p)
                                                    : -static_cast<std::int64_t>(p);
            const std::int64_t class_reps[3] = {
                8, 4 * static_cast<std::int64_t>(p), pstar};
            for (const std::int64_t d : class_reps) {
                for (long ap = 0; ap <= 2; ++ap) {
                    const TwistContext ctx = synthetic(p, k, d, ap);
                    const std::string skey =
                        fact_key_m_splits_at_p(FormId::Delta, p, d);
                    const std::string tkey =
                        fact_key_t_mod_pn_splits_all_n(FormId::Delta, p, d);

                    const auto absent = ordinary_exclusions(ctx, {});
                    const auto split = ordinary_exclusions(
                        ctx, facts_with({{skey, true}, {tkey, false}}));
                    const auto nonsplit = ordinary_exclusions(
                        ctx, facts_with({{skey, false}, {tkey, true}}));

                    const auto aa = all(absent);
                    const auto ss = all(split);
                    const auto nn = all(nonsplit);
                    for (std::size_t i = 0; i < aa.size(); ++i) {
                        // fully-asserted worlds are always decided
                        CHECK(ss[i]->state != TriState::Unknown);
                        CHECK(nn[i]->state != TriState::Unknown);

                        if (ap != 1) CHECK(aa[i]->state == TriState::Fails);
                        if (d == class_reps[1])
                            CHECK(aa[i]->state == TriState::Fails);

                        if (aa[i]->state == TriState::Unknown) {
                            CHECK(ss[i]->state != nn[i]->state);
                        } else {
                            // monotone: a definite answer persists in any world
                            CHECK(aa[i]->state == ss[i]->state);
                            CHECK(aa[i]->state == nn[i]->state);
                        }
                    }
                }
            }
        }
    }
}

TEST_CASE("tamagawa triviality rules") {
    const FactsFile none;
    const TwistContext exam1 = TwistContext::for_delta(11, 517);

    CHECK(tamagawa_triviality(exam1, 3, none).state == TriState::Holds);
    CHECK(tamagawa_triviality(exam1, 11, none).state == TriState::Unknown);

    const TwistContext exam2 = TwistContext::for_delta(67, 2881);
    CHECK(tamagawa_triviality(exam2, 67, none).state == TriState::Holds);

    const std::string key =
        fact_key_m_invariants_vanish_at_ell(FormId::Delta, 11, 517, 11);
    CHECK(tamagawa_triviality(exam1, 11, facts_with({{key, true}})).state ==
          TriState::Holds);
    CHECK(tamagawa_triviality(exam1, 11, facts_with({{key, false}})).state ==
          TriState::Unknown);
}

TEST_CASE("check_conditions on the two worked examples") {
    // p = 11, (D, D') = (517, 33), Tamagawa equality asserted externally.
    {
        const TwistContext ctx = TwistContext::for_delta(11, 517);
        const TwistContext ctxp = TwistContext::for_delta(11, 33);
        const std::string key =
            fact_key_tamagawa_equal_at_p(FormId::Delta, 11, 517, 33);
        const FactsFile facts = facts_with({{key, true}});
        const ConditionReport rep = check_conditions(ctx, ctxp, facts);
        CHECK(rep.a.state == TriState::Holds);
        CHECK(rep.b.state == TriState::Holds);
        CHECK(rep.c.state == TriState::Holds);
        CHECK(rep.d.state == TriState::Holds);
        CHECK(rep.all_hold());
        CHECK(rep.tamagawa_equal_at_p.state == TriState::Holds);
        CHECK(rep.tamagawa_equal_at_p.fact_dependencies ==
              std::vector<std::string>{key});
        CHECK(rep.reduction == ReductionType::Ordinary);
        CHECK(rep.selmer_bound == 1);

        // without the fact the pair equality is undetermined
        const ConditionReport bare = check_conditions(ctx, ctxp, {});
        CHECK(bare.all_hold());
        CHECK(bare.tamagawa_equal_at_p.state == TriState::Unknown);
    }

    // p = 67, (D, D') = (2881, 201): p > k certifies both Tamagawa factors,
    // no facts needed.
    {
        const TwistContext ctx = TwistContext::for_delta(67, 2881);
        const TwistContext ctxp = TwistContext::for_delta(67, 201);
        const ConditionReport rep = check_conditions(ctx, ctxp, {});
        CHECK(rep.all_hold());
        CHECK(rep.tamagawa_equal_at_p.state == TriState::Holds);
        CHECK(rep.selmer_bound == 1);
    }
}

TEST_CASE("condition C catches the exceptional primes") {
    const ConditionReport rep =
        check_conditions(TwistContext::for_delta(691, 33), std::nullopt, {});
    CHECK(rep.c.state == TriState::Fails);
    CHECK_FALSE(rep.all_hold());

    const ConditionReport ok =
        check_conditions(TwistContext::for_delta(13, 33), std::nullopt, {});
    CHECK(ok.c.state == TriState::Holds);
}

TEST_CASE("selmer bound tracks the exclusion table") {
    // supersingular with k <= p+1: bound 1
    {
        const TwistContext ctx = synthetic(3, 2, 8, 0);
        const ConditionReport rep = check_conditions(ctx, std::nullopt, {});
        CHECK(rep.reduction == ReductionType::Supersingular);
        CHECK(rep.b.state == TriState::Holds);
        CHECK(rep.selmer_bound == 1);
        CHECK(rep.selmer_ledger->a_invariants == 0);
    }

    // split CM-like configuration at k = 2: no exclusion occurs, bound 1
    {
        const TwistContext ctx = synthetic(7, 2, 8, 1);
        const FactsFile facts = facts_with(
            {{fact_key_m_splits_at_p(FormId::Delta, 7, 8), true},
             {fact_key_t_mod_pn_splits_all_n(FormId::Delta, 7, 8), true}});
        const ConditionReport rep = check_conditions(ctx, std::nullopt, facts);
        CHECK(rep.b.state == TriState::Holds);
        CHECK(rep.selmer_bound == 1);
    }

    // an exclusion definitely occurs: bound 2 with a one-dimensional
    // invariant line on the ledger
    {
        const TwistContext ctx = synthetic(7, 12, 8, 1);
        const FactsFile facts =
            facts_with({{fact_key_m_splits_at_p(FormId::Delta, 7, 8), true}});
        const ConditionReport rep = check_conditions(ctx, std::nullopt, facts);
        CHECK(rep.b.state == TriState::Fails);
        CHECK(rep.selmer_bound == 2);
        CHECK(rep.selmer_ledger->a_invariants == 1);
        CHECK(rep.selmer_ledger->tangent == 1);
        CHECK(rep.selmer_ledger->h0_v == 0);
    }

    // splitting unknown: bound unknown
    {
        const TwistContext ctx = synthetic(7, 12, 8, 1);
        const ConditionReport rep = check_conditions(ctx, std::nullopt, {});
        CHECK(rep.b.state == TriState::Unknown);
        CHECK_FALSE(rep.selmer_bound.has_value());
    }

    // supersingular with k > p+1: bound unknown
    {
        const TwistContext ctx = synthetic(3, 12, 8, 0);
        const ConditionReport rep = check_conditions(ctx, std::nullopt, {});
        CHECK(rep.b.state == TriState::Fails);
        CHECK_FALSE(rep.selmer_bound.has_value());
    }
}

TEST_CASE("adding facts only resolves Unknown, never flips a decision") {
    const TwistContext ctx = synthetic(7, 12, 8, 1);
    const std::string skey = fact_key_m_splits_at_p(FormId::Delta, 7, 8);
    const ConditionReport bare = check_conditions(ctx, std::nullopt, {});
    for (const bool split : {true, false}) {
        const ConditionReport with =
            check_conditions(ctx, std::nullopt, facts_with({{skey, split}}));
        const std::pair<const Tri*, const Tri*> pairs[] = {
            {&bare.a, &with.a}, {&bare.b, &with.b},
            {&bare.c, &with.c}, {&bare.d, &with.d}};
        for (const auto& [before, after] : pairs) {
            if (before->state != TriState::Unknown)
                CHECK(before->state == after->state);
        }
    }
}
