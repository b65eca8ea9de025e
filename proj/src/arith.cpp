#include "phi/arith.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

namespace phi {

namespace {

constexpr double kLn10 = 2.302585092994045684;

bool fits_ulong(const Nat& n) { return n.fits_ulong_p(); }

}  // namespace

const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> primes = [] {
        constexpr std::uint32_t limit = 1000000;
        std::vector<bool> composite(limit + 1, false);
        std::vector<std::uint32_t> out;
        for (std::uint32_t i = 2; i <= limit; ++i) {
            if (composite[i]) continue;
            out.push_back(i);
            for (std::uint64_t j = std::uint64_t(i) * i; j <= limit; j += i)
                composite[j] = true;
        }
        return out;
    }();
    return primes;
}

long digit_count(const Nat& n) {
    if (n == 0) return 1;
    long d = static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 10));
    if (d <= 1) return d;
    // sizeinbase may overestimate by one; compare against 10^(d-1)
    Nat p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(d - 1));
    return n < p ? d - 1 : d;
}

double factorial_digits_estimate(const Nat& n) {
    if (n <= 1) return 1.0;
    double nd = n.get_d();
    // lgamma(n+1) = ln(n!)
    return std::lgamma(nd + 1.0) / kLn10 + 1.0;
}

std::optional<Nat> factorial(const Nat& n, long digit_cap) {
    if (n <= 1) return Nat(1);
    if (!fits_ulong(n)) return std::nullopt;  // digits(n!) >= n, far past any cap
    unsigned long nn = n.get_ui();
    double est = factorial_digits_estimate(n);
    if (est > static_cast<double>(digit_cap) + 2.0) return std::nullopt;
    Nat r;
    mpz_fac_ui(r.get_mpz_t(), nn);
    if (est >= static_cast<double>(digit_cap) - 2.0 &&
        digit_count(r) > digit_cap)
        return std::nullopt;
    return r;
}

Nat factorial_mod(const Nat& k, const Nat& m, unsigned long iter_cap) {
    if (m < 1) throw RangeError("factorial_mod: modulus must be >= 1");
    if (m == 1) return Nat(0);
    if (!fits_ulong(k) || k.get_ui() > iter_cap)
        throw IterationCapError("factorial_mod: k exceeds the iteration cap");
    unsigned long kk = k.get_ui();
    if (fits_ulong(m)) {
        unsigned long mm = m.get_ui();
        unsigned long r = 1 % mm;
        for (unsigned long i = 2; i <= kk; ++i) {
            r = static_cast<unsigned long>(
                (static_cast<unsigned __int128>(r) * i) % mm);
            if (r == 0) break;
        }
        return Nat(r);
    }
    Nat r = 1;
    for (unsigned long i = 2; i <= kk; ++i) {
        r *= i;
        r %= m;
        if (r == 0) break;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Primality
// ---------------------------------------------------------------------------

namespace detail {

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e > 0) {
        if (e & 1) r = mulmod_u64(r, b, m);
        b = mulmod_u64(b, b, m);
        e >>= 1;
    }
    return r;
}

bool strong_prp_u64(std::uint64_t n, std::uint64_t a) {
    a %= n;
    if (a == 0) return true;
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < s; ++i) {
        x = mulmod_u64(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL,
                            19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    // Deterministic for all n < 2^64 with this base set.
    for (std::uint64_t a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL,
                            9780504ULL, 1795265022ULL}) {
        if (!strong_prp_u64(n, a)) return false;
    }
    return true;
}

bool strong_prp(const Nat& n, const Nat& a) {
    Nat base = a % n;
    if (base == 0) return true;
    Nat d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    Nat x;
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    Nat nm1 = n - 1;
    if (x == 1 || x == nm1) return true;
    for (unsigned long i = 1; i < s; ++i) {
        x = (x * x) % n;
        if (x == nm1) return true;
    }
    return false;
}

bool strong_lucas_prp(const Nat& n) {
    // Selfridge parameter search: D = 5, -7, 9, -11, ... with (D|n) = -1.
    Nat d_param;
    long sign = 1;
    long mag = 5;
    for (int tries = 0;; ++tries) {
        d_param = sign * mag;
        int j = mpz_jacobi(d_param.get_mpz_t(), n.get_mpz_t());
        if (j == -1) break;
        if (j == 0) {
            // gcd(|D|, n) > 1; n is composite unless it equals |D|.
            return n == (sign > 0 ? d_param : Nat(-d_param));
        }
        sign = -sign;
        mag += 2;
        if (tries > 100)
            throw std::logic_error("strong_lucas_prp: no D found (square input?)");
    }
    // P = 1, Q = (1 - D) / 4
    Nat q = (1 - d_param) / 4;

    Nat dd = n + 1;
    unsigned long s = mpz_scan1(dd.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(dd.get_mpz_t(), dd.get_mpz_t(), s);  // dd now odd

    auto mod_n = [&](Nat v) {
        v %= n;
        if (v < 0) v += n;
        return v;
    };
    auto halve = [&](Nat v) {
        v = mod_n(v);
        if (mpz_odd_p(v.get_mpz_t())) v += n;
        v >>= 1;
        return v;
    };

    // Compute U_dd, V_dd, Q^dd by the binary chain over dd's bits.
    Nat u = 1, v = 1, qk = mod_n(q);
    long bits = static_cast<long>(mpz_sizeinbase(dd.get_mpz_t(), 2));
    for (long i = bits - 2; i >= 0; --i) {
        // double: (U, V, Q^k) -> (U V, V^2 - 2 Q^k, Q^2k)
        u = mod_n(u * v);
        v = mod_n(v * v - 2 * qk);
        qk = mod_n(qk * qk);
        if (mpz_tstbit(dd.get_mpz_t(), static_cast<unsigned long>(i))) {
            // increment: U' = (P U + V)/2, V' = (D U + P V)/2, with P = 1
            Nat nu = halve(u + v);
            Nat nv = halve(d_param * u + v);
            u = nu;
            v = nv;
            qk = mod_n(qk * q);
        }
    }
    if (u == 0 || v == 0) return true;
    for (unsigned long r = 1; r < s; ++r) {
        v = mod_n(v * v - 2 * qk);
        if (v == 0) return true;
        qk = mod_n(qk * qk);
    }
    return false;
}

}  // namespace detail

PrimalityResult is_prime(const Nat& n) {
    if (n < 2) return {PrimeStatus::Composite, std::nullopt};
    if (fits_ulong(n)) {
        std::uint64_t v = n.get_ui();
        if (detail::is_prime_u64(v)) return {PrimeStatus::Prime, std::nullopt};
        for (std::uint32_t p : small_primes()) {
            if (std::uint64_t(p) * p > v) break;
            if (v % p == 0) return {PrimeStatus::Composite, Nat(p)};
        }
        return {PrimeStatus::Composite, std::nullopt};
    }

    // Size-scaled trial division before the expensive modexp tests.
    long digits = digit_count(n);
    unsigned long trial_to =
        std::min<unsigned long>(100000UL,
                                std::max(10000UL, 40UL * static_cast<unsigned long>(digits)));
    for (std::uint32_t p : small_primes()) {
        if (p > trial_to) break;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p))
            return {PrimeStatus::Composite, Nat(p)};
    }
    if (mpz_perfect_square_p(n.get_mpz_t())) {
        Nat r;
        mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
        return {PrimeStatus::Composite, r};
    }
    if (!detail::strong_prp(n, Nat(2)))
        return {PrimeStatus::Composite, std::nullopt};
    if (!detail::strong_lucas_prp(n))
        return {PrimeStatus::Composite, std::nullopt};
    return {PrimeStatus::ProbablePrime, std::nullopt};
}

// ---------------------------------------------------------------------------
// Factorization
// ---------------------------------------------------------------------------

namespace {

// Brent's cycle-finding rho with batched gcd. Deterministic: fixed start
// point and increment sequence.
std::optional<Nat> rho_find_factor(const Nat& n, unsigned long& budget) {
    for (unsigned long c = 1; budget > 0; ++c) {
        Nat y = 2, g = 1, q = 1, x, ys;
        unsigned long r = 1;
        const unsigned long batch = 128;
        while (g == 1 && budget > 0) {
            x = y;
            for (unsigned long i = 0; i < r && budget > 0; ++i) {
                y = (y * y + c) % n;
                --budget;
            }
            unsigned long k = 0;
            while (k < r && g == 1 && budget > 0) {
                ys = y;
                unsigned long lim = std::min(batch, r - k);
                for (unsigned long i = 0; i < lim && budget > 0; ++i) {
                    y = (y * y + c) % n;
                    Nat diff = x > y ? x - y : y - x;
                    q = (q * diff) % n;
                    --budget;
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += lim;
            }
            r *= 2;
        }
        if (g == n) {
            // backtrack one step at a time
            g = 1;
            while (g == 1) {
                ys = (ys * ys + c) % n;
                Nat diff = x > ys ? x - ys : ys - x;
                mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
            }
        }
        if (g > 1 && g < n) return g;
        // g == n: cycle degenerate for this c, try the next increment.
    }
    return std::nullopt;
}

void factor_rec(const Nat& m, std::vector<FactorEntry>& out, bool& complete,
                unsigned long& budget) {
    if (m == 1) return;
    PrimalityResult pr = is_prime(m);
    if (pr.prime_or_probable()) {
        out.push_back({m, 1});
        return;
    }
    std::optional<Nat> g = rho_find_factor(m, budget);
    if (!g) {
        complete = false;  // unsplit composite cofactor is dropped
        return;
    }
    factor_rec(*g, out, complete, budget);
    factor_rec(m / *g, out, complete, budget);
}

}  // namespace

Factorization factorize(const Nat& m, const FactorEffort& effort) {
    if (m < 1) throw RangeError("factorize: argument must be >= 1");
    Factorization result;
    result.complete = true;
    if (m == 1) return result;

    Nat work = m;
    for (std::uint32_t p : small_primes()) {
        if (p > effort.trial_limit) break;
        if (Nat(p) * p > work) break;
        if (!mpz_divisible_ui_p(work.get_mpz_t(), p)) continue;
        unsigned e = 0;
        do {
            mpz_divexact_ui(work.get_mpz_t(), work.get_mpz_t(), p);
            ++e;
        } while (mpz_divisible_ui_p(work.get_mpz_t(), p));
        result.factors.push_back({Nat(p), e});
    }
    if (work > 1) {
        std::vector<FactorEntry> rest;
        if (work <= Nat(effort.trial_limit) * effort.trial_limit) {
            // no factor below the trial limit survived, so work is prime
            rest.push_back({work, 1});
        } else {
            unsigned long budget = effort.rho_step_budget;
            factor_rec(work, rest, result.complete, budget);
        }
        std::sort(rest.begin(), rest.end(),
                  [](const FactorEntry& a, const FactorEntry& b) {
                      return a.prime < b.prime;
                  });
        for (auto& fe : rest) {
            if (!result.factors.empty() && result.factors.back().prime == fe.prime)
                result.factors.back().exponent += fe.exponent;
            else
                result.factors.push_back(std::move(fe));
        }
    }
    return result;
}

Nat legendre_valuation(const Nat& k, const Nat& p) {
    if (!is_prime(p).prime_or_probable())
        throw NotPrimeError("legendre_valuation: p is not prime");
    Nat total = 0;
    Nat pw = p;
    while (pw <= k) {
        total += k / pw;
        pw *= p;
    }
    return total;
}

Tri divides_factorial(const Nat& m, const Nat& k, const FactorEffort& effort) {
    if (m < 1) throw RangeError("divides_factorial: m must be >= 1");
    if (m == 1) return Tri::Yes;
    if (k >= m) return Tri::Yes;  // m is one of the factors of k!

    // Wilson patterns: m = k+1 (offset 1) and m = k+3 (offset 3, m >= 4)
    // turn the question into a primality test.
    if (m == k + 1 || (m == k + 3 && m >= 4)) {
        bool member = is_prime(m).prime_or_probable() || m == 4;
        return member ? Tri::No : Tri::Yes;
    }

    Factorization f = factorize(m, effort);
    for (const FactorEntry& fe : f.factors) {
        if (legendre_valuation(k, fe.prime) < fe.exponent) return Tri::No;
    }
    return f.complete ? Tri::Yes : Tri::Unknown;
}

}  // namespace phi
