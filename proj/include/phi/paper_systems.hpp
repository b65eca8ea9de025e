#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "phi/solver.hpp"

namespace phi {

/// The four built-in systems. Variable layouts (1-based indices):
///   A: x=1, x1=2, x2=3, x3=4
///   B: x=1, x1=2, x2=3, x3=4, x4=5
///   C: x=1, x1=2, x2=3, x3=4, x4=5, x5=6
///   D: x=1, y=2, x1=3, x2=4, x3=5
enum class PaperSystemId { A, B, C, D };

int arity(PaperSystemId id);
const char* paper_system_name(PaperSystemId id);
std::optional<PaperSystemId> paper_system_from_name(std::string_view name);
/// Name of the tuple component at 1-based index, e.g. "x" or "x3".
const char* paper_var_name(PaperSystemId id, int index);

/// Built-in systems of a given variable count (sampled phi sweeps embed
/// these unpinned).
std::vector<PaperSystemId> paper_systems_of_arity(int n);

/// Seed bound that reaches the system's known witness when enumerated
/// unpinned (e.g. D needs 808 for the 809/811 pair).
long long recommended_seed_bound(PaperSystemId id);

/// The figure's atoms with x (and y for D) pinned.
ConstraintSystem build(PaperSystemId id, const Nat& x,
                       const std::optional<Nat>& y = std::nullopt);

/// Same atoms with every variable free.
ConstraintSystem build_unpinned(PaperSystemId id);

struct SolvableResult {
    bool solvable = false;
    /// Some primality in the characterization was only ProbablePrime.
    bool probable_prime = false;
};

/// The characterization of solvability:
///   A: x!+1 prime; B: x!-1 prime; C: x and x!+1 prime;
///   D: x and y prime with x+2 = y.
SolvableResult solvable(PaperSystemId id, const Nat& x,
                        const std::optional<Nat>& y, const Config& cfg);

/// The unique solution tuple when the system is solvable; nullopt
/// otherwise. Components in the layout order above, as towers.
std::optional<Solution> closed_form(PaperSystemId id, const Nat& x,
                                    const std::optional<Nat>& y,
                                    const Config& cfg);

struct CrossCheckRow {
    long long x = 0;
    long long y = 0;  // 0 when the system has no y
    bool solver_solvable = false;
    bool oracle_solvable = false;
    bool unique = true;
    bool tuple_matches = true;
    bool probable_prime = false;
    bool deviation = false;
};

struct CrossCheckReport {
    PaperSystemId id = PaperSystemId::A;
    long long lo = 1, hi = 1;
    std::vector<CrossCheckRow> rows;
    std::vector<long long> solvable_set;  // x values where both routes agree solvable
    long long deviations = 0;
    bool any_probable_prime = false;
};

/// For each x in [lo, hi] (y = x+2 for D): solver-based solvability of
/// the pinned system must equal the primality characterization, and the
/// solver's unique tuple must equal the closed form.
CrossCheckReport cross_check(PaperSystemId id, long long lo, long long hi,
                             const Config& cfg);

}  // namespace phi
