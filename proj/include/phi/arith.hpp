#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "phi/config.hpp"
#include "phi/errors.hpp"

namespace phi {

/// Arbitrary-precision natural number. Callers keep values non-negative;
/// GMP keeps the representation canonical.
using Nat = mpz_class;

/// mpz_class has no long long constructor; long is 64-bit here.
inline Nat nat_of(long long v) { return Nat(static_cast<long>(v)); }

/// Three-valued answer of a partial decision procedure.
enum class Tri { Yes, No, Unknown };

enum class PrimeStatus { Composite, Prime, ProbablePrime };

struct PrimalityResult {
    PrimeStatus status = PrimeStatus::Composite;
    /// A divisor, when the compositeness proof produced one.
    std::optional<Nat> witness;

    bool prime_or_probable() const { return status != PrimeStatus::Composite; }
};

struct FactorEntry {
    Nat prime;
    unsigned exponent = 1;
};

/// Prime factorization, possibly partial. Primes are strictly increasing.
/// When complete, the product of the prime powers equals the input.
struct Factorization {
    std::vector<FactorEntry> factors;
    bool complete = false;
};

struct FactorEffort {
    unsigned long trial_limit = 1000000UL;
    unsigned long rho_step_budget = 200000UL;
};

/// Exact decimal digit count (1 for zero).
long digit_count(const Nat& n);

/// Log-based estimate of the decimal digit count of n!, good to well
/// under one digit over the materializable range.
double factorial_digits_estimate(const Nat& n);

/// n! when its decimal digit count fits digit_cap, nullopt otherwise.
/// The nullopt is a routing signal: the caller falls back to a symbolic
/// tower, it is not a failure.
std::optional<Nat> factorial(const Nat& n, long digit_cap);

/// k! mod m by iterated modular multiplication. Throws IterationCapError
/// when k exceeds iter_cap.
Nat factorial_mod(const Nat& k, const Nat& m,
                  unsigned long iter_cap = 10000000UL);

/// Deterministic below 2^64 (fixed strong-pseudoprime base set); above,
/// a composite answer is always correct and a prime answer is reported
/// ProbablePrime (strong base-2 test plus a strong Lucas test).
PrimalityResult is_prime(const Nat& n);

/// Trial division up to effort.trial_limit, then a deterministic
/// Brent-rho with a step budget. Exhausting the budget gives
/// complete = false rather than looping.
Factorization factorize(const Nat& m, const FactorEffort& effort = {});

/// Exact p-adic valuation of k! (Legendre's formula). Throws
/// NotPrimeError when p is not prime.
Nat legendre_valuation(const Nat& k, const Nat& p);

/// Does m divide k! ? Decided by the k >= m shortcut, the Wilson
/// patterns m = k+1 and m = k+3 (routed through is_prime), or a complete
/// factorization compared against Legendre valuations. Unknown only when
/// the factorization stays incomplete and no pattern applies.
Tri divides_factorial(const Nat& m, const Nat& k,
                      const FactorEffort& effort = {});

/// Primes up to 10^6 (shared sieve), ascending.
const std::vector<std::uint32_t>& small_primes();

namespace detail {
/// Strong probable-prime test to base a (n odd, > 2).
bool strong_prp(const Nat& n, const Nat& a);
/// Strong Lucas probable-prime test with Selfridge parameters
/// (n odd, > 2, not a perfect square).
bool strong_lucas_prp(const Nat& n);
/// Deterministic Miller-Rabin for word-sized n.
bool is_prime_u64(std::uint64_t n);
}  // namespace detail

}  // namespace phi
