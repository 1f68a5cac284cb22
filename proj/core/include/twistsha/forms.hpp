#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "twistsha/qseries.hpp"

namespace twistsha {

// The named expansions this library knows how to generate. Each tag has a
// fixed weight: delta -> 12, g4 -> 4, theta -> 1/2, x0-11 -> 2,
// kohnen-lift -> 13/2.
enum class FormId { Delta, G4, Theta, X0_11, KohnenLift };

/// Twice the weight (so half-integral weights stay exact integers).
int weight_times_two(FormId id);

/// Canonical tag: "delta", "g4", "theta", "x0-11", "kohnen-lift".
std::string form_tag(FormId id);

/// Weight rendered as "12", "1/2", "13/2", ...
std::string weight_string(FormId id);

/// Accepts canonical tags and their underscore variants.
std::optional<FormId> parse_form_tag(std::string_view tag);

/// Sum of cubes of the positive divisors of n (n >= 1).
mpz_class sigma3(std::uint64_t n);

/// 1/240 + sum_{n>=1} sigma3(n) q^n.
QSeries g4_series(std::size_t prec);

/// 1 + 2 sum_{n>=1} q^{n^2}.
QSeries theta_series(std::size_t prec);

/// q prod_{n>=1} (1-q^n)^24, the normalized weight-12 level-1 cusp form.
/// Coefficients are the tau values; prec >= 1.
QSeries delta_series(std::size_t prec);

/// q prod_{n>=1} (1-q^n)^2 (1-q^{11n})^2, the weight-2 level-11 newform.
QSeries x0_11_series(std::size_t prec);

// The weight-13/2 plus-space preimage of delta under the Shimura-Kohnen
// correspondence, generated as
//     120 * dilate(G4, 4) * D(theta) - 60 * dilate(D(G4), 4) * theta
// with D = q d/dq. The two z-derivatives in the classical expression
// contribute a common 2*pi*i that cancels against the 1/(2*pi*i) prefactor,
// and the 60 is absorbed into the integer prefactors above; the dilation is
// applied after differentiating. Every coefficient is checked to be an
// integer before returning.
QSeries kohnen_lift(std::size_t prec);

/// Dispatch by tag.
QSeries form_series(FormId id, std::size_t prec);

// A Fourier coefficient c_n of the Kohnen plus-space lift. Support lives on
// n = 0, 1 (mod 4); the constructor rejects a nonzero value elsewhere.
struct PlusCoefficient {
    std::uint64_t index;
    mpz_class value;

    PlusCoefficient(std::uint64_t n, mpz_class v);
};

/// Extracts c_n from a precomputed kohnen_lift series (n <= prec).
PlusCoefficient plus_coeff(const QSeries& kohnen, std::uint64_t n);

/// Convenience: computes the series at precision n, then extracts.
PlusCoefficient plus_coeff(std::uint64_t n);

}  // namespace twistsha
