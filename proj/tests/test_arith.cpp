#include "phi/arith.hpp"

#include <random>

#include "doctest.h"

using namespace phi;

namespace {

// Independent oracle: n! by a plain product loop.
Nat product_factorial(long n) {
    Nat r = 1;
    for (long i = 2; i <= n; ++i) r *= i;
    return r;
}

// Independent oracle: plain sieve.
std::vector<bool> sieve(long n) {
    std::vector<bool> p(n + 1, true);
    p[0] = false;
    if (n >= 1) p[1] = false;
    for (long i = 2; i * i <= n; ++i)
        if (p[i])
            for (long j = i * i; j <= n; j += i) p[j] = false;
    return p;
}

}  // namespace

TEST_CASE("factorial basics and digit cap routing") {
    CHECK(*factorial(0, 100000) == 1);
    CHECK(*factorial(1, 100000) == 1);
    CHECK(*factorial(6, 100000) == 720);
    CHECK(*factorial(11, 100000) == product_factorial(11));
    CHECK(*factorial(11, 100000) == 39916800);

    // 720! has 1747 digits: materializes at the default cap, not below it.
    Nat f720 = *factorial(720, 100000);
    CHECK(digit_count(f720) == 1747);
    CHECK(!factorial(720, 1746).has_value());
    CHECK(factorial(720, 1747).has_value());

    // n beyond any ulong clearly exceeds the cap
    Nat huge = f720;
    CHECK(!factorial(huge, 100000).has_value());
}

TEST_CASE("digit_count is exact") {
    CHECK(digit_count(Nat(0)) == 1);
    CHECK(digit_count(Nat(9)) == 1);
    CHECK(digit_count(Nat(10)) == 2);
    Nat v = 1;
    for (int d = 1; d < 40; ++d) {
        CHECK(digit_count(v) == d);
        v *= 10;
        CHECK(digit_count(v - 1) == d);
    }
}

TEST_CASE("factorial digit estimate stays within one digit up to 5000!") {
    for (long n = 1; n <= 5000; ++n) {
        Nat f;
        mpz_fac_ui(f.get_mpz_t(), n);
        double est = factorial_digits_estimate(Nat(n));
        double exact = static_cast<double>(digit_count(f));
        CHECK(std::abs(est - exact) <= 1.0);
    }
}

TEST_CASE("factorial_mod") {
    CHECK(factorial_mod(3, 4) == 2);   // 6 mod 4
    CHECK(factorial_mod(4, 5) == 4);   // Wilson at p = 5
    CHECK(factorial_mod(1, 7) == 1);
    CHECK(factorial_mod(0, 1) == 0);
    CHECK(factorial_mod(10, 1) == 0);

    // big modulus path
    Nat m("1000000000000000000000000");
    Nat expected = product_factorial(20) % m;
    CHECK(factorial_mod(20, m) == expected);

    CHECK_THROWS_AS(factorial_mod(Nat(100), Nat(7), 10), IterationCapError);
    CHECK_THROWS_AS(factorial_mod(5, 0), RangeError);
}

TEST_CASE("Wilson: (p-1)! = -1 mod p for every prime p <= 10^4") {
    auto p = sieve(10000);
    for (long n = 2; n <= 10000; ++n) {
        if (!p[n]) continue;
        CHECK(factorial_mod(Nat(n - 1), Nat(n)) == n - 1);
    }
}

TEST_CASE("is_prime: word-size determinism against a sieve") {
    auto p = sieve(100000);
    for (long n = 0; n <= 100000; ++n) {
        PrimalityResult r = is_prime(Nat(n));
        CHECK(r.prime_or_probable() == p[n]);
        if (r.status != PrimeStatus::Composite) CHECK(r.status == PrimeStatus::Prime);
    }
}

TEST_CASE("is_prime: paper witnesses") {
    CHECK(is_prime(Nat(39916801)).status == PrimeStatus::Prime);  // 11!+1
    CHECK(is_prime(Nat(5039)).status == PrimeStatus::Prime);      // 7!-1
    CHECK(is_prime(Nat(1)).status == PrimeStatus::Composite);
    CHECK(is_prime(Nat(0)).status == PrimeStatus::Composite);
    CHECK(is_prime(Nat(721)).status == PrimeStatus::Composite);   // 7 * 103
}

TEST_CASE("is_prime above 2^64: probable-prime labeling") {
    // 2^89 - 1 is a Mersenne prime, well above the word threshold.
    Nat m89 = (Nat(1) << 89) - 1;
    PrimalityResult r = is_prime(m89);
    CHECK(r.status == PrimeStatus::ProbablePrime);

    // 2^67 - 1 = 193707721 * 761838257287 (composite).
    Nat m67 = (Nat(1) << 67) - 1;
    CHECK(is_prime(m67).status == PrimeStatus::Composite);

    // 38! - 1 is prime, 39! - 1 is not.
    Nat f38 = product_factorial(38);
    CHECK(is_prime(f38 - 1).status == PrimeStatus::ProbablePrime);
    Nat f39 = product_factorial(39);
    CHECK(is_prime(f39 - 1).status == PrimeStatus::Composite);
}

TEST_CASE("strong Lucas and strong base-2 tests disagree on pseudoprimes") {
    // Strong Lucas pseudoprimes (Selfridge parameters): composite, pass
    // the Lucas side, must fail the base-2 side.
    for (long n : {5459L, 5777L, 10877L, 16109L, 18971L}) {
        Nat nn(n);
        CHECK(is_prime(nn).status == PrimeStatus::Composite);
        CHECK(detail::strong_lucas_prp(nn));
        CHECK(!detail::strong_prp(nn, Nat(2)));
    }
    // Strong base-2 pseudoprimes: must fail the Lucas side.
    for (long n : {2047L, 3277L, 4033L, 4681L, 8321L}) {
        Nat nn(n);
        CHECK(is_prime(nn).status == PrimeStatus::Composite);
        CHECK(detail::strong_prp(nn, Nat(2)));
        CHECK(!detail::strong_lucas_prp(nn));
    }
    // Primes pass both.
    for (long n : {101L, 5039L, 99991L}) {
        Nat nn(n);
        CHECK(detail::strong_lucas_prp(nn));
        CHECK(detail::strong_prp(nn, Nat(2)));
    }
}

TEST_CASE("factorize") {
    Factorization f = factorize(720);
    REQUIRE(f.complete);
    REQUIRE(f.factors.size() == 3);
    CHECK(f.factors[0].prime == 2);
    CHECK(f.factors[0].exponent == 4);
    CHECK(f.factors[1].prime == 3);
    CHECK(f.factors[1].exponent == 2);
    CHECK(f.factors[2].prime == 5);
    CHECK(f.factors[2].exponent == 1);

    CHECK(factorize(1).complete);
    CHECK(factorize(1).factors.empty());

    Factorization p = factorize(39916801);
    REQUIRE(p.complete);
    REQUIRE(p.factors.size() == 1);
    CHECK(p.factors[0].prime == 39916801);

    // rho splits a semiprime out of trial range
    Nat semi = Nat(1000003) * Nat(1000033);
    FactorEffort effort;
    effort.trial_limit = 1000;
    Factorization s = factorize(semi, effort);
    REQUIRE(s.complete);
    REQUIRE(s.factors.size() == 2);
    CHECK(s.factors[0].prime == 1000003);
    CHECK(s.factors[1].prime == 1000033);

    // exhausted budget yields an honest partial result
    effort.rho_step_budget = 0;
    Factorization t = factorize(semi, effort);
    CHECK(!t.complete);

    // product and strictly-increasing invariants on random values
    std::mt19937_64 rng(42);
    for (int i = 0; i < 200; ++i) {
        Nat m = nat_of(static_cast<long long>(rng() % 1000000000000ULL) + 1);
        Factorization g = factorize(m);
        REQUIRE(g.complete);  // everything below 10^12 factors completely
        Nat prod = 1;
        for (size_t j = 0; j < g.factors.size(); ++j) {
            if (j > 0) CHECK(g.factors[j - 1].prime < g.factors[j].prime);
            CHECK(is_prime(g.factors[j].prime).prime_or_probable());
            for (unsigned e = 0; e < g.factors[j].exponent; ++e)
                prod *= g.factors[j].prime;
        }
        CHECK(prod == m);
    }
}

TEST_CASE("legendre_valuation") {
    // floor-sum oracle
    auto oracle = [](long k, long p) {
        long long total = 0;
        for (long long pw = p; pw <= k; pw *= p) total += k / pw;
        return total;
    };
    CHECK(legendre_valuation(6, 3) == 2);
    CHECK(legendre_valuation(4, 5) == 0);
    CHECK(legendre_valuation(720, 2) == oracle(720, 2));
    CHECK(legendre_valuation(720, 2) == 716);  // 720 - popcount(720)

    // cross-check against factorial_mod: 2^716 | 720! and 2^717 does not
    Nat pw716 = Nat(1) << 716;
    CHECK(factorial_mod(720, pw716) == 0);
    CHECK(factorial_mod(720, pw716 * 2) != 0);

    CHECK(legendre_valuation(100, 97) == 1);
    CHECK_THROWS_AS(legendre_valuation(10, 6), NotPrimeError);
}

TEST_CASE("divides_factorial: paper instances and shortcuts") {
    CHECK(divides_factorial(4, 3) == Tri::No);    // 4 does not divide 3!
    CHECK(divides_factorial(9, 6) == Tri::Yes);   // 720 / 9 = 80
    CHECK(divides_factorial(721, 720) == Tri::Yes);  // 721 = 7*103 composite
    CHECK(divides_factorial(1, 0) == Tri::Yes);
    CHECK(divides_factorial(5039, 5038) == Tri::No);  // 7!-1 is prime

    // k >= m shortcut, property-style
    std::mt19937_64 rng(7);
    for (int i = 0; i < 300; ++i) {
        long long m = static_cast<long long>(rng() % 100000) + 1;
        long long k = m + static_cast<long long>(rng() % 100000);
        CHECK(divides_factorial(nat_of(m), nat_of(k)) == Tri::Yes);
    }
}

TEST_CASE("divides_factorial agrees with the factorial_mod oracle on a grid") {
    // Unit-scale grid; the acceptance suite runs the full one.
    for (long m = 1; m <= 400; ++m) {
        Nat nm(m);
        Nat fmod = 1;
        for (long k = 1; k <= 200; ++k) {
            fmod = (fmod * k) % nm;
            Tri d = divides_factorial(nm, Nat(k));
            REQUIRE(d != Tri::Unknown);
            CHECK((d == Tri::Yes) == (fmod == 0));
        }
    }
}

TEST_CASE("divides_factorial decides everything below 10^12") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 50; ++i) {
        Nat m = nat_of(static_cast<long long>(rng() % 999999999999ULL) + 1);
        Nat k = nat_of(static_cast<long long>(rng() % 5000));
        CHECK(divides_factorial(m, k) != Tri::Unknown);
    }
}

TEST_CASE("lemma 0 equivalence on [1, 2000]") {
    auto p = sieve(2000);
    for (long x = 1; x <= 2000; ++x) {
        bool member = p[x] || x == 4;
        bool not_div = factorial_mod(Nat(x - 1), Nat(x)) != 0;
        CHECK(member == not_div);
        CHECK((divides_factorial(Nat(x), Nat(x - 1)) == Tri::No) == member);
    }
}

TEST_CASE("lemma 0a equivalence on [4, 2000]") {
    auto p = sieve(2000);
    for (long n = 4; n <= 2000; ++n) {
        bool member = p[n] || n == 4;
        bool not_div = factorial_mod(Nat(n - 3), Nat(n)) != 0;
        CHECK(member == not_div);
        CHECK((divides_factorial(Nat(n), Nat(n - 3)) == Tri::No) == member);
    }
}
