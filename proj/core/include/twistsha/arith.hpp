#pragma once

#include <cstdint>
#include <map>
#include <string>

#include <gmpxx.h>

namespace twistsha {

enum class DiscKind { Fundamental, NonFundamental, Invalid };

// A quadratic discriminant: a nonzero integer = 0 or 1 (mod 4).
// Fundamental when it is the discriminant of a quadratic field
// (or 1, which stands for the trivial character).
struct Discriminant {
    std::int64_t value = 0;
    DiscKind kind = DiscKind::Invalid;
};

/// Classifies a nonzero integer as fundamental / non-fundamental / invalid.
Discriminant classify_discriminant(std::int64_t d);

bool is_valid_discriminant(std::int64_t d);

const char* disc_kind_name(DiscKind kind);

/// chi_D(n) as the Kronecker symbol (D|n). D must be a valid quadratic
/// discriminant or 1; anything else throws InputError. Completely
/// multiplicative in n, zero exactly on gcd(n, D) > 1, periodic mod |D|.
int kronecker(std::int64_t d, std::int64_t n);

/// Deterministic Miller-Rabin, valid for every n < 2^64.
bool is_prime(std::uint64_t n);

/// v_p(x) for an odd prime p and nonzero x. Zero input throws InputError.
long padic_valuation(std::uint64_t p, const mpz_class& x);
long padic_valuation(std::uint64_t p, const mpq_class& x);

struct Factorization {
    int sign = 1;  // +1 or -1
    std::map<std::uint64_t, unsigned> factors;

    mpz_class reconstruct() const;

    /// Renders like "-2^4·3^4·5"; units render as "1" / "-1".
    std::string to_string() const;
};

/// Factors a nonzero integer by trial division with a deterministic
/// primality shortcut. Sized for desk-scale inputs (|n| < 2^63).
Factorization factorize(std::int64_t n);

}  // namespace twistsha
