#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "twistsha/arith.hpp"
#include "twistsha/forms.hpp"

namespace twistsha {

// ---------------------------------------------------------------------------
// Three-valued results
// ---------------------------------------------------------------------------

enum class TriState { Holds, Fails, Unknown };

const char* tri_state_name(TriState s);

// Outcome of one hypothesis check. `reason` states the rule that decided it
// (or, for Unknown, names the missing fact); `fact_dependencies` lists the
// externally asserted fact keys that were actually consumed.
struct Tri {
    TriState state = TriState::Unknown;
    std::string reason;
    std::vector<std::string> fact_dependencies;

    static Tri holds(std::string reason, std::vector<std::string> deps = {});
    static Tri fails(std::string reason, std::vector<std::string> deps = {});
    /// Unknown must carry a nonempty reason naming what is missing.
    static Tri unknown(std::string reason, std::vector<std::string> deps = {});
};

// ---------------------------------------------------------------------------
// Externally asserted facts
// ---------------------------------------------------------------------------

// Facts that cannot be computed from Fourier coefficients (local splitting
// behavior, images of Galois representations, Tamagawa equalities) enter as
// assertions with provenance text. The decision engine consumes the parsed
// map; file I/O lives in the CLI.
struct FactEntry {
    bool value = false;
    std::string provenance;  // required nonempty
};

using FactsFile = std::map<std::string, FactEntry>;

// Recognized key builders. Keys are colon-joined:
//   image_contains_sl2:<form>:<p>
//   m_splits_at_p:<form>:<p>:<D>
//   t_mod_pn_splits_all_n:<form>:<p>:<D>
//   tamagawa_equal_at_p:<form>:<p>:<D>:<D'>
//   m_invariants_vanish_at_ell:<form>:<p>:<D>:<ell>
std::string fact_key_image_contains_sl2(FormId form, std::uint64_t p);
std::string fact_key_m_splits_at_p(FormId form, std::uint64_t p, std::int64_t d);
std::string fact_key_t_mod_pn_splits_all_n(FormId form, std::uint64_t p, std::int64_t d);
std::string fact_key_tamagawa_equal_at_p(FormId form, std::uint64_t p,
                                         std::int64_t d, std::int64_t dprime);
std::string fact_key_m_invariants_vanish_at_ell(FormId form, std::uint64_t p,
                                                std::int64_t d, std::uint64_t ell);

// ---------------------------------------------------------------------------
// Contexts
// ---------------------------------------------------------------------------

// Everything a hypothesis check depends on: the form, its weight and level,
// the odd prime p, the twisting discriminant, and the p-th coefficient.
struct TwistContext {
    FormId form;
    int k;                 // even weight >= 2
    std::uint64_t level;   // N
    std::uint64_t p;       // odd prime
    Discriminant d;
    mpz_class a_p;

    TwistContext(FormId form, int k, std::uint64_t level, std::uint64_t p,
                 Discriminant d, mpz_class a_p);

    /// Binds k = 12, N = 1, a_p = tau(p) (computed from the product formula).
    static TwistContext for_delta(std::uint64_t p, std::int64_t d);
};

enum class ReductionType { Ordinary, Supersingular };

const char* reduction_type_name(ReductionType r);

/// Ordinary iff a_p is a unit mod p. Requires good reduction (p not
/// dividing N); throws InputError otherwise.
ReductionType reduction_type(const TwistContext& ctx);

// ---------------------------------------------------------------------------
// The ordinary-case exclusion table
// ---------------------------------------------------------------------------

// In the ordinary case (with p-1 not dividing k-1 established upstream),
// the local invariants M^{G_Qp} vanish unless one of five situations occurs.
// Which situations are even eligible depends on the class of D relative to
// p, with p* = (-1)^((p-1)/2) p:
//
//   p coprime to D:
//     (i1)  k > 2, M splits, p-1 | k/2 or p-1 | k/2 - 1, a_p = 1 (mod p)
//     (i2)  k = 2, M splits, T/p^nT non-split for some n, a_p = 1 (mod p)
//     (ii)  M non-split, p-1 | k/2, a_p = 1 (mod p)
//   p | D, D != p*:
//     no situation can occur (the invariants vanish for every splitting
//     type), so all five evaluate to Fails unconditionally.
//   D = p*:
//     (iii) M splits, p-1 | (k-p+1)/2 or p-1 | (k+p-3)/2, a_p = 1 (mod p)
//     (iv)  M non-split, p-1 | (k-p+1)/2, a_p = 1 (mod p)
//
// Splitting of M (or of T/p^nT) is not computable from coefficients; when
// the corresponding fact is absent a branch is Unknown only if the two
// splitting worlds genuinely disagree. Any failed arithmetic conjunct
// (a_p != 1 mod p, a divisibility miss, wrong k) settles a branch to Fails
// outright.
struct OrdinaryExclusions {
    Tri i1, i2, ii, iii, iv;
    std::string d_class;  // "p_coprime_to_D" | "p_divides_D_not_pstar" | "D_equals_pstar"

    bool any_holds() const;
    bool any_unknown() const;
};

OrdinaryExclusions ordinary_exclusions(const TwistContext& ctx, const FactsFile& facts);

// ---------------------------------------------------------------------------
// Tamagawa triviality and the condition report
// ---------------------------------------------------------------------------

// c(Q_ell, A) = 1 is certified by one of three rules:
//   - ell coprime to N*p (inertia acts trivially, both ramification cases),
//   - ell = p with good reduction and p > k,
//   - an external assertion that M^{G_Qell} = 0.
// Otherwise Unknown, naming the missing fact.
Tri tamagawa_triviality(const TwistContext& ctx, std::uint64_t ell,
                        const FactsFile& facts);

struct SelmerLedger {
    int a_invariants = 0;  // dim of A^{G_Qp} tensor F_p
    int tangent = 1;       // de Rham tangent-space term, always 1 here
    int h0_v = 0;          // dim H^0(Q_p, V), always 0 here
};

// Per-hypothesis outcome for one twist context (conditions A-D), the
// equality of Tamagawa factors at p across the (D, D') pair, and the
// derived bound on the localized Selmer dimension.
struct ConditionReport {
    Tri a, b, c, d;
    Tri tamagawa_equal_at_p;
    std::optional<ReductionType> reduction;
    std::string local_case;  // "supersingular" or the exclusion-table D-class
    std::optional<OrdinaryExclusions> exclusions;
    std::optional<int> selmer_bound;  // 1 or 2 when determined
    std::optional<SelmerLedger> selmer_ledger;

    bool all_hold() const;
};

struct SelmerBoundResult {
    std::optional<int> bound;
    std::optional<SelmerLedger> ledger;
};

// dim Im(Res^ur_p) <= a_invariants + tangent + h0_v. The bound is 1 when
// condition (B) holds (no local invariants), 2 when the only obstruction is
// a one-dimensional invariant line from an exclusion that definitely
// occurs, and unknown otherwise.
SelmerBoundResult selmer_bound(const TwistContext& ctx, const ConditionReport& report);

// Evaluates conditions (A)-(D) for ctx, plus the Tamagawa equality at p for
// the pair (ctx, ctx_prime) when a second context is given:
//   (A) p does not divide N.
//   (B) supersingular: k <= p+1; ordinary: p-1 does not divide k-1 and no
//       exclusion-table situation occurs. Unknown propagates.
//   (C) for delta: built-in (the mod-p image contains SL2(F_p) for every
//       p outside {2,3,5,7,23,691}); other forms: external fact.
//   (D) Tamagawa triviality at every prime dividing N (vacuous at N = 1).
ConditionReport check_conditions(const TwistContext& ctx,
                                 const std::optional<TwistContext>& ctx_prime,
                                 const FactsFile& facts);

}  // namespace twistsha
