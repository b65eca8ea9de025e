#pragma once

#include <cstdint>

namespace phi {

/// Tunables shared across modules. Defaults are chosen so that every
/// desk-scale run (lemma sweeps, cross-checks, phi sweeps) completes in
/// seconds while values like (720!)! stay symbolic.
struct Config {
    /// Factorials materialize only while their decimal digit count stays
    /// at or below this; beyond it values are kept as symbolic towers.
    long digit_cap = 100000;

    /// Iteration limit for factorial_mod (modular multiplications).
    unsigned long factorial_mod_iter_cap = 10000000UL;

    /// Trial division bound used by factorize before switching to rho.
    unsigned long trial_limit = 1000000UL;

    /// Step budget for the rho stage of factorize; exhausting it yields
    /// an incomplete factorization instead of looping.
    unsigned long rho_step_budget = 200000UL;

    /// Free seeds are enumerated over [1, seed_bound].
    long seed_bound = 50;

    /// Direct search range for values of variables on functional cycles.
    /// Values above 2 cannot close a cycle; the margin is deliberate.
    long cycle_cap = 30;

    /// Upper bound on candidate assignments tested per enumeration run;
    /// beyond it the run is marked truncated (deterministically, by
    /// global candidate rank).
    long long candidate_budget = 2000000;

    /// Abort instead of counting a candidate whose divisibility atoms
    /// cannot be decided.
    bool strict_unknown = false;

    /// Worker count for range-partitioned operations. Output is
    /// identical for every value.
    int jobs = 1;

    /// Twin search uses a sieve up to this bound and per-candidate
    /// testing above it.
    unsigned long sieve_threshold = 1000000UL;

    /// Sampled phi sweeps: number of random systems and generator seed.
    int samples = 64;
    std::uint64_t sample_seed = 20260810ULL;

    /// Enables the far-beyond-desk-scale paths (e.g. primality of
    /// 26951!+1). Raises digit_cap accordingly.
    bool long_run = false;
};

}  // namespace phi
