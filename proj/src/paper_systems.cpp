#include "phi/paper_systems.hpp"

#include <algorithm>
#include <stdexcept>

#include "phi/parallel.hpp"

namespace phi {

int arity(PaperSystemId id) {
    switch (id) {
        case PaperSystemId::A: return 4;
        case PaperSystemId::B: return 5;
        case PaperSystemId::C: return 6;
        case PaperSystemId::D: return 5;
    }
    return 0;
}

const char* paper_system_name(PaperSystemId id) {
    switch (id) {
        case PaperSystemId::A: return "A";
        case PaperSystemId::B: return "B";
        case PaperSystemId::C: return "C";
        case PaperSystemId::D: return "D";
    }
    return "?";
}

std::optional<PaperSystemId> paper_system_from_name(std::string_view name) {
    if (name == "A" || name == "a") return PaperSystemId::A;
    if (name == "B" || name == "b") return PaperSystemId::B;
    if (name == "C" || name == "c") return PaperSystemId::C;
    if (name == "D" || name == "d") return PaperSystemId::D;
    return std::nullopt;
}

const char* paper_var_name(PaperSystemId id, int index) {
    static const char* a_names[] = {"x", "x1", "x2", "x3"};
    static const char* b_names[] = {"x", "x1", "x2", "x3", "x4"};
    static const char* c_names[] = {"x", "x1", "x2", "x3", "x4", "x5"};
    static const char* d_names[] = {"x", "y", "x1", "x2", "x3"};
    switch (id) {
        case PaperSystemId::A: return a_names[index - 1];
        case PaperSystemId::B: return b_names[index - 1];
        case PaperSystemId::C: return c_names[index - 1];
        case PaperSystemId::D: return d_names[index - 1];
    }
    return "?";
}

std::vector<PaperSystemId> paper_systems_of_arity(int n) {
    std::vector<PaperSystemId> out;
    for (PaperSystemId id : {PaperSystemId::A, PaperSystemId::B,
                             PaperSystemId::C, PaperSystemId::D})
        if (arity(id) == n) out.push_back(id);
    return out;
}

long long recommended_seed_bound(PaperSystemId id) {
    switch (id) {
        case PaperSystemId::A: return 50;
        case PaperSystemId::B: return 50;
        case PaperSystemId::C: return 50;
        case PaperSystemId::D: return 1000;  // reaches the 809/811 pair
    }
    return 50;
}

ConstraintSystem build_unpinned(PaperSystemId id) {
    ConstraintSystem sys;
    sys.n = arity(id);
    switch (id) {
        case PaperSystemId::A:
            // x! = x1, x1+1 = x2, x1! = x3, x2 !| x3
            sys.add({AtomKind::FactorialEq, 1, 2});
            sys.add({AtomKind::Successor, 2, 3});
            sys.add({AtomKind::FactorialEq, 2, 4});
            sys.add({AtomKind::NotDivides, 3, 4});
            break;
        case PaperSystemId::B:
            // x! = x1, x2+1 = x1, x3+1 = x2, x3! = x4, x2 !| x4
            sys.add({AtomKind::FactorialEq, 1, 2});
            sys.add({AtomKind::Successor, 3, 2});
            sys.add({AtomKind::Successor, 4, 3});
            sys.add({AtomKind::FactorialEq, 4, 5});
            sys.add({AtomKind::NotDivides, 3, 5});
            break;
        case PaperSystemId::C:
            // x1+1 = x, x! = x2, x2+1 = x3, x1! = x4, x2! = x5,
            // x !| x4, x3 !| x5
            sys.add({AtomKind::Successor, 2, 1});
            sys.add({AtomKind::FactorialEq, 1, 3});
            sys.add({AtomKind::Successor, 3, 4});
            sys.add({AtomKind::FactorialEq, 2, 5});
            sys.add({AtomKind::FactorialEq, 3, 6});
            sys.add({AtomKind::NotDivides, 1, 5});
            sys.add({AtomKind::NotDivides, 4, 6});
            break;
        case PaperSystemId::D:
            // x1+1 = x, x+1 = x2, x2+1 = y, x1! = x3,
            // x !| x3, y !| x3, x !| y
            sys.add({AtomKind::Successor, 3, 1});
            sys.add({AtomKind::Successor, 1, 4});
            sys.add({AtomKind::Successor, 4, 2});
            sys.add({AtomKind::FactorialEq, 3, 5});
            sys.add({AtomKind::NotDivides, 1, 5});
            sys.add({AtomKind::NotDivides, 2, 5});
            sys.add({AtomKind::NotDivides, 1, 2});
            break;
    }
    return sys;
}

ConstraintSystem build(PaperSystemId id, const Nat& x,
                       const std::optional<Nat>& y) {
    if ((id == PaperSystemId::D) != y.has_value())
        throw ArityError(id == PaperSystemId::D
                             ? "system D needs a pinned y"
                             : "only system D takes a y");
    if (x < 1 || (y && *y < 1))
        throw RangeError("pinned values must be >= 1");
    ConstraintSystem sys = build_unpinned(id);
    sys.pins[1] = x;
    if (y) sys.pins[2] = *y;
    return sys;
}

namespace {

Nat require_factorial(const Nat& x, const Config& cfg) {
    auto f = factorial(x, cfg.digit_cap);
    if (!f)
        throw RangeError(
            "x! exceeds the digit cap at x = " + x.get_str() +
            "; rerun with --long-run (no desk-scale result depends on it)");
    return *f;
}

}  // namespace

SolvableResult solvable(PaperSystemId id, const Nat& x,
                        const std::optional<Nat>& y, const Config& cfg) {
    if ((id == PaperSystemId::D) != y.has_value())
        throw ArityError("y is given iff the system is D");
    SolvableResult out;
    auto note = [&](const PrimalityResult& pr) {
        if (pr.status == PrimeStatus::ProbablePrime) out.probable_prime = true;
        return pr.prime_or_probable();
    };
    switch (id) {
        case PaperSystemId::A:
            out.solvable = note(is_prime(require_factorial(x, cfg) + 1));
            break;
        case PaperSystemId::B:
            out.solvable = note(is_prime(require_factorial(x, cfg) - 1));
            break;
        case PaperSystemId::C: {
            bool xp = note(is_prime(x));
            out.solvable = xp && note(is_prime(require_factorial(x, cfg) + 1));
            break;
        }
        case PaperSystemId::D: {
            bool xp = note(is_prime(x));
            bool yp = note(is_prime(*y));
            out.solvable = xp && yp && (*y == x + 2);
            break;
        }
    }
    return out;
}

std::optional<Solution> closed_form(PaperSystemId id, const Nat& x,
                                    const std::optional<Nat>& y,
                                    const Config& cfg) {
    if (!solvable(id, x, y, cfg).solvable) return std::nullopt;
    const long cap = cfg.digit_cap;
    Solution sol;
    switch (id) {
        case PaperSystemId::A: {
            Nat f = require_factorial(x, cfg);
            sol.values = {tower_from_nat(x), tower_from_nat(f),
                          tower_from_nat(f + 1), make_tower(f, 1, cap)};
            break;
        }
        case PaperSystemId::B: {
            Nat f = require_factorial(x, cfg);
            sol.values = {tower_from_nat(x), tower_from_nat(f),
                          tower_from_nat(f - 1), tower_from_nat(f - 2),
                          make_tower(f - 2, 1, cap)};
            break;
        }
        case PaperSystemId::C: {
            Nat f = require_factorial(x, cfg);
            sol.values = {tower_from_nat(x),     tower_from_nat(x - 1),
                          tower_from_nat(f),     tower_from_nat(f + 1),
                          make_tower(x - 1, 1, cap), make_tower(f, 1, cap)};
            break;
        }
        case PaperSystemId::D: {
            sol.values = {tower_from_nat(x), tower_from_nat(*y),
                          tower_from_nat(x - 1), tower_from_nat(*y - 1),
                          make_tower(x - 1, 1, cap)};
            break;
        }
    }
    return sol;
}

CrossCheckReport cross_check(PaperSystemId id, long long lo, long long hi,
                             const Config& cfg) {
    if (lo < 1 || hi < lo) throw RangeError("cross_check: bad range");
    CrossCheckReport rep;
    rep.id = id;
    rep.lo = lo;
    rep.hi = hi;
    rep.rows.resize(hi - lo + 1);

    Config local = cfg;
    local.jobs = 1;
    auto run_one = [&](long long idx) {
        long long xv = lo + idx;
        Nat x = nat_of(xv);
        std::optional<Nat> y;
        if (id == PaperSystemId::D) y = x + 2;
        CrossCheckRow row;
        row.x = xv;
        row.y = y ? static_cast<long long>(mpz_get_si(y->get_mpz_t())) : 0;

        SolvableResult oracle = solvable(id, x, y, local);
        row.oracle_solvable = oracle.solvable;
        row.probable_prime = oracle.probable_prime;

        ConstraintSystem sys = build(id, x, y);
        EnumerationResult res = enumerate(sys, local.seed_bound, local);
        row.solver_solvable = !res.solutions.empty();
        if (row.solver_solvable) {
            row.unique = res.solutions.size() == 1;
            auto expected = closed_form(id, x, y, local);
            row.tuple_matches =
                expected && res.solutions.front().values.size() ==
                                expected->values.size();
            if (row.tuple_matches) {
                for (size_t i = 0; i < expected->values.size(); ++i) {
                    if (tower_cmp(res.solutions.front().values[i],
                                  expected->values[i]) != Ordering::Equal) {
                        row.tuple_matches = false;
                        break;
                    }
                }
            }
        }
        row.deviation = row.solver_solvable != row.oracle_solvable ||
                        (row.solver_solvable && (!row.unique || !row.tuple_matches));
        rep.rows[idx] = row;
    };
    parallel_for_indexed(static_cast<long long>(rep.rows.size()), cfg.jobs,
                         run_one);

    for (const CrossCheckRow& row : rep.rows) {
        if (row.deviation) ++rep.deviations;
        if (row.probable_prime) rep.any_probable_prime = true;
        if (row.solver_solvable && row.oracle_solvable)
            rep.solvable_set.push_back(row.x);
    }
    return rep;
}

}  // namespace phi
