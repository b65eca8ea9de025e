#pragma once

#include <optional>
#include <string>
#include <vector>

#include "phi/chains.hpp"
#include "phi/config.hpp"
#include "phi/dsl.hpp"
#include "phi/tower.hpp"

namespace phi {

struct FunctionalEdge {
    int from = 0;
    int to = 0;
    AtomKind kind = AtomKind::Successor;
};

struct PlanStep {
    enum Kind {
        AssignPin,        // var := pinned value
        AssignRoot,       // var := current root value (cycle root or seed)
        Forward,          // var := op(source)       along edge
        Backward,         // var := op^-1(target)    along edge
        Verify,           // edge must hold between two assigned vars
    } kind;
    int var = 0;   // variable assigned (unused for Verify)
    int edge = -1; // index into StructureReport::edges
};

struct EnumRoot {
    int var = 0;
    bool cyclic = false;  // domain is [1, cycle_cap] instead of [1, seed_bound]
};

/// Structural analysis of a system: functional edges, cycles, which
/// variables are anchored (finitely valued by structure), which are free
/// seeds, and a deterministic propagation plan that assigns every
/// variable from pins, cycle roots and seeds, inverting edges where the
/// target is known first.
struct StructureReport {
    std::vector<FunctionalEdge> edges;
    std::vector<std::vector<int>> cyclic_sccs;
    bool unsat_cycle = false;  // a cyclic SCC contains a successor edge
    std::vector<int> cycle_vars;
    std::vector<int> anchored;
    std::vector<int> free_seeds;
    std::vector<Atom> not_divides;

    std::vector<PlanStep> plan;
    std::vector<EnumRoot> roots;  // ascending by variable index

    // Determination chains per variable, relative to the root variable
    // that determines it. root_var_of[v] = 0 when v is not determined by
    // a chain-expressible path (then only numeric propagation applies).
    std::vector<int> root_var_of;    // size n+1, 1-based
    std::vector<OpChain> chain_of;   // size n+1
    std::vector<int> dep_origin;     // root/pin variable that determines v
};

StructureReport analyze(const ConstraintSystem& sys);

struct Solution {
    std::vector<TowerInt> values;  // index 0 holds x1

    bool operator==(const Solution&) const = default;
};

struct EnumerationResult {
    std::vector<Solution> solutions;
    long long unresolved = 0;        // candidates excluded as undecidable
    long long candidates_tested = 0;
    bool truncated = false;          // candidate budget hit
};

/// All solutions whose free seeds lie in [1, seed_bound] and cycle roots
/// in [1, cycle_cap], in ascending mixed-radix seed order. Values reached
/// by propagation may exceed seed_bound (as towers).
EnumerationResult enumerate(const ConstraintSystem& sys, long long seed_bound,
                            const Config& cfg);

/// Re-checks a solution atom by atom through tower semantics,
/// independently of the propagation plan.
bool verify_solution(const ConstraintSystem& sys, const Solution& sol,
                     const Config& cfg);

enum class Verdict { ProvablyFinite, ProvablyInfinite, OpenUnknown };

struct Certificate {
    enum Rule { R1, R2, R3 } rule = R1;
    int pump_var = 0;          // unused variable (R1) or pumped seed (R2/R3)
    long long threshold = 1;   // family valid for seed >= threshold
    std::vector<std::pair<int, Nat>> context;  // frozen roots, ascending var
    std::optional<Solution> witness;           // R1 base solution
    std::string detail;
};

const char* certificate_rule_name(Certificate::Rule r);

struct Classification {
    Verdict verdict = Verdict::OpenUnknown;
    std::vector<Solution> solutions;  // complete iff ProvablyFinite
    std::optional<Certificate> certificate;
    std::optional<TowerInt> max_component;
    long long unresolved = 0;
    long long candidates_tested = 0;
    bool truncated = false;
    std::string reason;
};

Classification classify(const ConstraintSystem& sys, const Config& cfg);

/// Independent validation of a ProvablyInfinite certificate: structural
/// re-derivation plus numeric spot checks of pumped candidates.
bool validate_certificate(const ConstraintSystem& sys, const Certificate& cert,
                          const Config& cfg);

// ---------------------------------------------------------------------------
// Phi sweeps
// ---------------------------------------------------------------------------

enum class PhiVerdict { PASS, VACUOUS, ATTENTION, FAIL, OPEN };

const char* phi_verdict_name(PhiVerdict v);
const char* verdict_name(Verdict v);

struct PhiEntry {
    std::string system;  // canonical text
    Verdict classification = Verdict::OpenUnknown;
    PhiVerdict verdict = PhiVerdict::OPEN;
    std::optional<std::string> certificate;
    long long solution_count = 0;
    std::optional<std::string> max_component;
    std::optional<std::string> annotation;  // which component exceeds f(n)
    std::vector<std::string> exceeding_solution;
    long long unresolved = 0;
};

struct PhiReport {
    int n = 1;
    std::string f_n;
    std::vector<PhiEntry> entries;
    long long pass = 0, vacuous = 0, attention = 0, fail = 0, open = 0;
    bool any_fail = false;
};

/// n in {1, 2}: every one of the 2^(3n^2) systems. Deterministic and
/// reproducible; workers only partition the system index range.
PhiReport phi_check_exhaustive(int n, const Config& cfg);

/// n in {3..6}: the built-in paper systems of that arity (unpinned)
/// followed by seeded random systems.
PhiReport phi_check_sampled(int n, const Config& cfg);

}  // namespace phi
