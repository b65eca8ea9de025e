#include "phi/solver.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

#include "phi/paper_systems.hpp"
#include "phi/parallel.hpp"

namespace phi {

namespace {

FactorEffort effort_of(const Config& cfg) {
    return {cfg.trial_limit, cfg.rho_step_budget};
}

bool tower_equal(const TowerInt& a, const TowerInt& b) {
    return tower_cmp(a, b) == Ordering::Equal;
}

}  // namespace

const char* certificate_rule_name(Certificate::Rule r) {
    switch (r) {
        case Certificate::R1: return "R1";
        case Certificate::R2: return "R2";
        case Certificate::R3: return "R3";
    }
    return "?";
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::ProvablyFinite: return "ProvablyFinite";
        case Verdict::ProvablyInfinite: return "ProvablyInfinite";
        case Verdict::OpenUnknown: return "OpenUnknown";
    }
    return "?";
}

const char* phi_verdict_name(PhiVerdict v) {
    switch (v) {
        case PhiVerdict::PASS: return "PASS";
        case PhiVerdict::VACUOUS: return "VACUOUS";
        case PhiVerdict::ATTENTION: return "ATTENTION";
        case PhiVerdict::FAIL: return "FAIL";
        case PhiVerdict::OPEN: return "OPEN";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Structural analysis
// ---------------------------------------------------------------------------

namespace {

// Iterative Tarjan SCC over the functional graph.
std::vector<std::vector<int>> strongly_connected(int n,
                                                 const std::vector<FunctionalEdge>& edges) {
    std::vector<std::vector<int>> adj(n + 1);
    for (const auto& e : edges) adj[e.from].push_back(e.to);
    std::vector<int> index(n + 1, 0), low(n + 1, 0);
    std::vector<bool> on_stack(n + 1, false);
    std::vector<int> stack;
    std::vector<std::vector<int>> sccs;
    int counter = 0;

    struct Frame {
        int v;
        size_t child = 0;
    };
    for (int start = 1; start <= n; ++start) {
        if (index[start] != 0) continue;
        std::vector<Frame> call{{start}};
        index[start] = low[start] = ++counter;
        stack.push_back(start);
        on_stack[start] = true;
        while (!call.empty()) {
            Frame& f = call.back();
            if (f.child < adj[f.v].size()) {
                int w = adj[f.v][f.child++];
                if (index[w] == 0) {
                    index[w] = low[w] = ++counter;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.push_back({w});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
            } else {
                if (low[f.v] == index[f.v]) {
                    std::vector<int> comp;
                    while (true) {
                        int w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        comp.push_back(w);
                        if (w == f.v) break;
                    }
                    std::sort(comp.begin(), comp.end());
                    sccs.push_back(std::move(comp));
                }
                int v = f.v;
                call.pop_back();
                if (!call.empty())
                    low[call.back().v] = std::min(low[call.back().v], low[v]);
            }
        }
    }
    return sccs;
}

}  // namespace

StructureReport analyze(const ConstraintSystem& sys) {
    StructureReport rep;
    const int n = sys.n;
    for (const Atom& a : sys.atoms) {
        if (a.kind == AtomKind::NotDivides)
            rep.not_divides.push_back(a);
        else
            rep.edges.push_back({a.i, a.k, a.kind});
    }

    std::vector<bool> cyclic(n + 1, false);
    std::vector<int> scc_id(n + 1, -1);
    auto sccs = strongly_connected(n, rep.edges);
    for (size_t s = 0; s < sccs.size(); ++s)
        for (int v : sccs[s]) scc_id[v] = static_cast<int>(s);
    for (const auto& comp : sccs) {
        bool has_internal_edge = false;
        bool has_succ = false;
        for (const auto& e : rep.edges) {
            if (scc_id[e.from] == scc_id[comp[0]] && scc_id[e.to] == scc_id[comp[0]] &&
                (comp.size() > 1 || (e.from == comp[0] && e.to == comp[0]))) {
                has_internal_edge = true;
                if (e.kind == AtomKind::Successor) has_succ = true;
            }
        }
        if (comp.size() > 1 || has_internal_edge) {
            rep.cyclic_sccs.push_back(comp);
            for (int v : comp) cyclic[v] = true;
            if (has_succ) rep.unsat_cycle = true;
        }
    }
    for (int v = 1; v <= n; ++v)
        if (cyclic[v]) rep.cycle_vars.push_back(v);

    // Propagation plan: pins first, then repeatedly pick a root
    // (cyclic variables before plain seeds) and close over the edges in
    // both directions.
    rep.root_var_of.assign(n + 1, 0);
    rep.chain_of.assign(n + 1, OpChain::seed());
    rep.dep_origin.assign(n + 1, 0);
    std::vector<bool> known(n + 1, false);
    std::vector<bool> used(rep.edges.size(), false);

    auto set_root_chain = [&](int v) {
        rep.root_var_of[v] = v;
        rep.chain_of[v] = OpChain::seed();
        rep.dep_origin[v] = v;
    };

    auto sweep = [&] {
        bool changed = true;
        while (changed) {
            changed = false;
            for (size_t e = 0; e < rep.edges.size(); ++e) {
                if (used[e]) continue;
                const auto& edge = rep.edges[e];
                bool kf = known[edge.from], kt = known[edge.to];
                if (!kf && !kt) continue;
                used[e] = true;
                changed = true;
                if (kf && kt) {
                    rep.plan.push_back({PlanStep::Verify, 0, static_cast<int>(e)});
                    continue;
                }
                if (kf) {
                    int v = edge.to;
                    rep.plan.push_back({PlanStep::Forward, v, static_cast<int>(e)});
                    known[v] = true;
                    rep.dep_origin[v] = rep.dep_origin[edge.from];
                    if (rep.root_var_of[edge.from] != 0) {
                        rep.root_var_of[v] = rep.root_var_of[edge.from];
                        rep.chain_of[v] = edge.kind == AtomKind::Successor
                                              ? rep.chain_of[edge.from].after_offset(1)
                                              : rep.chain_of[edge.from].after_fact();
                    }
                } else {
                    int v = edge.from;
                    rep.plan.push_back({PlanStep::Backward, v, static_cast<int>(e)});
                    known[v] = true;
                    rep.dep_origin[v] = rep.dep_origin[edge.to];
                    if (rep.root_var_of[edge.to] != 0) {
                        if (edge.kind == AtomKind::Successor) {
                            rep.root_var_of[v] = rep.root_var_of[edge.to];
                            rep.chain_of[v] = rep.chain_of[edge.to].after_offset(-1);
                        } else if (auto inv = rep.chain_of[edge.to].after_fact_inverse()) {
                            rep.root_var_of[v] = rep.root_var_of[edge.to];
                            rep.chain_of[v] = *inv;
                        }
                    }
                }
            }
        }
    };

    for (const auto& [v, value] : sys.pins) {
        if (known[v]) continue;
        rep.plan.push_back({PlanStep::AssignPin, v, -1});
        known[v] = true;
        set_root_chain(v);
    }
    sweep();
    while (true) {
        int pick = 0;
        for (int v = 1; v <= n && pick == 0; ++v)
            if (!known[v] && cyclic[v]) pick = v;
        for (int v = 1; v <= n && pick == 0; ++v)
            if (!known[v]) pick = v;
        if (pick == 0) break;
        rep.roots.push_back({pick, cyclic[pick]});
        rep.plan.push_back({PlanStep::AssignRoot, pick, -1});
        known[pick] = true;
        set_root_chain(pick);
        sweep();
    }
    std::sort(rep.roots.begin(), rep.roots.end(),
              [](const EnumRoot& a, const EnumRoot& b) { return a.var < b.var; });

    std::set<int> anchored_origins(rep.cycle_vars.begin(), rep.cycle_vars.end());
    for (const auto& [v, value] : sys.pins) anchored_origins.insert(v);
    for (int v = 1; v <= n; ++v) {
        if (anchored_origins.count(rep.dep_origin[v]))
            rep.anchored.push_back(v);
    }
    for (const auto& r : rep.roots)
        if (!r.cyclic) rep.free_seeds.push_back(r.var);
    std::sort(rep.free_seeds.begin(), rep.free_seeds.end());
    return rep;
}

// ---------------------------------------------------------------------------
// Candidate execution
// ---------------------------------------------------------------------------

namespace {

enum class ExecStatus { Accept, Reject, Unresolved };

// Inverse factorial of a materialized value; nullopt when the value is
// not a factorial.
std::optional<Nat> factorial_inverse(const Nat& v) {
    if (v == 1) return Nat(1);
    Nat f = 1;
    Nat k = 1;
    while (f < v) {
        k += 1;
        f *= k;
    }
    if (f == v) return k;
    return std::nullopt;
}

struct Executor {
    const ConstraintSystem& sys;
    const StructureReport& rep;
    const Config& cfg;
    FactorEffort effort;

    Executor(const ConstraintSystem& s, const StructureReport& r, const Config& c)
        : sys(s), rep(r), cfg(c), effort(effort_of(c)) {}

    ExecStatus run(const std::map<int, Nat>& root_values,
                   std::vector<TowerInt>& out) const {
        std::vector<std::optional<TowerInt>> val(sys.n + 1);
        for (const PlanStep& step : rep.plan) {
            switch (step.kind) {
                case PlanStep::AssignPin:
                    val[step.var] = tower_from_nat(sys.pins.at(step.var));
                    break;
                case PlanStep::AssignRoot:
                    val[step.var] = tower_from_nat(root_values.at(step.var));
                    break;
                case PlanStep::Forward: {
                    const auto& e = rep.edges[step.edge];
                    const TowerInt& src = *val[e.from];
                    if (e.kind == AtomKind::Successor) {
                        auto s = succ_of(src);
                        if (!s) return ExecStatus::Unresolved;
                        val[e.to] = *s;
                    } else {
                        val[e.to] = tower_factorial(src, cfg.digit_cap);
                    }
                    break;
                }
                case PlanStep::Backward: {
                    const auto& e = rep.edges[step.edge];
                    const TowerInt& tgt = *val[e.to];
                    if (e.kind == AtomKind::Successor) {
                        if (!tgt.materialized()) return ExecStatus::Unresolved;
                        if (tgt.base == 1) return ExecStatus::Reject;  // x_i = 0
                        val[e.from] = tower_from_nat(tgt.base - 1);
                    } else {
                        if (!tgt.materialized()) {
                            val[e.from] = TowerInt{tgt.base, tgt.height - 1};
                        } else {
                            auto inv = factorial_inverse(tgt.base);
                            if (!inv) return ExecStatus::Reject;
                            val[e.from] = tower_from_nat(*inv);
                        }
                    }
                    break;
                }
                case PlanStep::Verify: {
                    const auto& e = rep.edges[step.edge];
                    const TowerInt& a = *val[e.from];
                    const TowerInt& b = *val[e.to];
                    if (e.kind == AtomKind::Successor) {
                        // A symbolic tower and its successor can never
                        // both be towers (factorials past 2 are even).
                        if (!a.materialized()) return ExecStatus::Reject;
                        if (!tower_equal(tower_from_nat(a.base + 1), b))
                            return ExecStatus::Reject;
                    } else {
                        if (!tower_equal(tower_factorial(a, cfg.digit_cap), b))
                            return ExecStatus::Reject;
                    }
                    break;
                }
            }
        }
        for (const Atom& atom : rep.not_divides) {
            Tri d = tower_divides(*val[atom.i], *val[atom.k], effort);
            if (d == Tri::Yes) return ExecStatus::Reject;
            if (d == Tri::Unknown) return ExecStatus::Unresolved;
        }
        out.clear();
        out.reserve(sys.n);
        for (int v = 1; v <= sys.n; ++v) out.push_back(*val[v]);
        return ExecStatus::Accept;
    }
};

EnumerationResult enumerate_with_bounds(const ConstraintSystem& sys,
                                        const StructureReport& rep,
                                        const std::vector<long long>& bounds,
                                        const Config& cfg) {
    EnumerationResult res;
    if (rep.unsat_cycle) return res;
    for (const Atom& a : rep.not_divides)
        if (a.i == a.k) return res;  // x | x always holds
    for (long long b : bounds)
        if (b <= 0) return res;

    Executor exec(sys, rep, cfg);
    size_t r = rep.roots.size();
    std::vector<long long> counters(r, 1);
    std::map<int, Nat> root_values;
    std::vector<TowerInt> tuple;
    while (true) {
        if (res.candidates_tested >= cfg.candidate_budget) {
            res.truncated = true;
            break;
        }
        ++res.candidates_tested;
        for (size_t i = 0; i < r; ++i)
            root_values[rep.roots[i].var] = nat_of(counters[i]);
        ExecStatus st = exec.run(root_values, tuple);
        if (st == ExecStatus::Accept) {
            Solution sol{tuple};
            if (!verify_solution(sys, sol, cfg))
                throw std::logic_error(
                    "enumerate: accepted candidate failed independent re-check");
            res.solutions.push_back(std::move(sol));
        } else if (st == ExecStatus::Unresolved) {
            if (cfg.strict_unknown)
                throw std::runtime_error(
                    "strict mode: candidate with undecidable atom");
            ++res.unresolved;
        }
        // advance mixed-radix counters, last root fastest
        if (r == 0) break;
        bool advanced = false;
        size_t pos = r;
        while (pos > 0) {
            --pos;
            if (counters[pos] < bounds[pos]) {
                ++counters[pos];
                for (size_t j = pos + 1; j < r; ++j) counters[j] = 1;
                advanced = true;
                break;
            }
        }
        if (!advanced) break;
    }
    return res;
}

std::vector<long long> default_bounds(const StructureReport& rep, long long seed_bound,
                                      const Config& cfg) {
    std::vector<long long> bounds;
    for (const auto& root : rep.roots)
        bounds.push_back(root.cyclic ? cfg.cycle_cap : seed_bound);
    return bounds;
}

}  // namespace

EnumerationResult enumerate(const ConstraintSystem& sys, long long seed_bound,
                            const Config& cfg) {
    StructureReport rep = analyze(sys);
    return enumerate_with_bounds(sys, rep, default_bounds(rep, seed_bound, cfg), cfg);
}

bool verify_solution(const ConstraintSystem& sys, const Solution& sol,
                     const Config& cfg) {
    if (static_cast<int>(sol.values.size()) != sys.n) return false;
    FactorEffort effort = effort_of(cfg);
    for (const TowerInt& v : sol.values)
        if (v.base < 1) return false;
    for (const auto& [var, value] : sys.pins) {
        if (!tower_equal(sol.values[var - 1], tower_from_nat(value))) return false;
    }
    for (const Atom& a : sys.atoms) {
        const TowerInt& vi = sol.values[a.i - 1];
        const TowerInt& vk = sol.values[a.k - 1];
        switch (a.kind) {
            case AtomKind::Successor: {
                if (!vi.materialized()) return false;
                if (!tower_equal(tower_from_nat(vi.base + 1), vk)) return false;
                break;
            }
            case AtomKind::FactorialEq: {
                if (!tower_equal(tower_factorial(vi, cfg.digit_cap), vk)) return false;
                break;
            }
            case AtomKind::NotDivides: {
                if (tower_divides(vi, vk, effort) != Tri::No)
                    return false;
                break;
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

namespace {

std::optional<TowerInt> max_component_of(const std::vector<Solution>& sols) {
    std::optional<TowerInt> best;
    for (const auto& s : sols)
        for (const auto& v : s.values)
            if (!best || tower_cmp(v, *best) == Ordering::Greater) best = v;
    return best;
}

bool var_in_any_atom(const ConstraintSystem& sys, int v) {
    for (const Atom& a : sys.atoms)
        if (a.i == v || a.k == v) return true;
    return false;
}

// One pumping attempt: grow seed s, other roots frozen at the base
// solution (when present). Returns the certificate on success.
std::optional<Certificate> attempt_pump(const ConstraintSystem& sys,
                                        const StructureReport& rep, int s,
                                        const Solution* base, const Config& cfg) {
    const int n = sys.n;
    FactorEffort effort = effort_of(cfg);
    long long T = 1;

    auto grows = [&](int v) { return rep.dep_origin[v] == s; };

    for (int v = 1; v <= n; ++v) {
        if (grows(v)) {
            if (rep.root_var_of[v] != s) return std::nullopt;  // opaque step in between
            T = std::max(T, chain_min_valid_t(rep.chain_of[v]));
        }
    }
    // Functional double determinations must hold along the family.
    for (const PlanStep& step : rep.plan) {
        if (step.kind != PlanStep::Verify) continue;
        const auto& e = rep.edges[step.edge];
        bool gi = grows(e.from), gk = grows(e.to);
        if (!gi && !gk) continue;  // frozen; holds in the base solution
        if (gi != gk) return std::nullopt;
        OpChain expect = e.kind == AtomKind::Successor
                             ? rep.chain_of[e.from].after_offset(1)
                             : rep.chain_of[e.from].after_fact();
        if (!(expect == rep.chain_of[e.to])) return std::nullopt;
    }

    std::string detail;
    for (const Atom& a : rep.not_divides) {
        bool gi = grows(a.i), gk = grows(a.k);
        if (!gi && !gk) {
            if (!base) return std::nullopt;
            const TowerInt& vi = base->values[a.i - 1];
            const TowerInt& vk = base->values[a.k - 1];
            if (tower_divides(vi, vk, effort) != Tri::No)
                return std::nullopt;
            continue;
        }
        if (gi && gk) {
            EventualDivResult r =
                chain_divides_eventually(rep.chain_of[a.i], rep.chain_of[a.k]);
            if (r.kind != EventualDiv::NeverBeyond) return std::nullopt;
            T = std::max(T, r.threshold);
            detail += atom_to_string(a) + ": divisor outgrows dividend; ";
            continue;
        }
        if (gi && !gk) {
            // growing divisor against a frozen dividend
            if (!base) return std::nullopt;
            const TowerInt& c = base->values[a.k - 1];
            long long t = std::max(T, chain_min_valid_t(rep.chain_of[a.i]));
            bool found = false;
            for (int step = 0; step < 4000; ++step, ++t) {
                auto ev = chain_eval(rep.chain_of[a.i], nat_of(t), cfg.digit_cap);
                if (ev && tower_cmp(*ev, c) == Ordering::Greater) {
                    T = std::max(T, t);
                    found = true;
                    break;
                }
                if (!ev) break;
            }
            if (!found) return std::nullopt;
            detail += atom_to_string(a) + ": divisor grows past the frozen side; ";
            continue;
        }
        // frozen divisor against a growing dividend
        if (!base) return std::nullopt;
        const TowerInt& cv = base->values[a.i - 1];
        if (!cv.materialized() || cv.base == 1) return std::nullopt;
        const OpChain& ck = rep.chain_of[a.k];
        if (ck.facts() == 0) return std::nullopt;  // c | t + r is periodic
        long long r_off = ck.offsets.back();
        if (r_off == 0) return std::nullopt;  // c | w! eventually: identically false
        Nat rr = nat_of(r_off < 0 ? -r_off : r_off);
        if (rr % cv.base == 0) return std::nullopt;
        OpChain w;
        w.offsets.assign(ck.offsets.begin(), ck.offsets.end() - 1);
        long long t = std::max(T, chain_min_valid_t(ck));
        bool found = false;
        for (int step = 0; step < 4000; ++step, ++t) {
            auto ev = chain_eval(w, nat_of(t), cfg.digit_cap);
            if (ev && tower_cmp(*ev, cv) != Ordering::Less) {
                T = std::max(T, t);
                found = true;
                break;
            }
            if (!ev) break;
        }
        if (!found) return std::nullopt;
        detail += atom_to_string(a) + ": frozen divisor cannot divide w!+r; ";
    }

    Certificate cert;
    cert.pump_var = s;
    cert.threshold = T;
    for (const auto& root : rep.roots) {
        if (root.var == s) continue;
        if (!base) return std::nullopt;
        const TowerInt& v = base->values[root.var - 1];
        if (!v.materialized()) return std::nullopt;
        cert.context.emplace_back(root.var, v.base);
    }
    cert.rule = (T <= 1 && cert.context.empty()) ? Certificate::R3 : Certificate::R2;
    if (cert.rule == Certificate::R3) cert.threshold = 1;
    cert.detail = detail.empty() ? "no divisibility atoms constrain the family"
                                 : detail;
    return cert;
}

}  // namespace

bool validate_certificate(const ConstraintSystem& sys, const Certificate& cert,
                          const Config& cfg) {
    if (cert.rule == Certificate::R1) {
        if (cert.pump_var < 1 || cert.pump_var > sys.n) return false;
        if (var_in_any_atom(sys, cert.pump_var)) return false;
        if (sys.pins.count(cert.pump_var)) return false;
        return cert.witness && verify_solution(sys, *cert.witness, cfg);
    }
    // R2/R3: the pumped variable must be a free seed, the context must
    // freeze every other root, and pumped candidates must re-verify.
    StructureReport rep = analyze(sys);
    bool is_seed = std::find(rep.free_seeds.begin(), rep.free_seeds.end(),
                             cert.pump_var) != rep.free_seeds.end();
    if (!is_seed) return false;
    std::map<int, Nat> root_values;
    for (const auto& [var, value] : cert.context) root_values[var] = value;
    for (const auto& root : rep.roots) {
        if (root.var == cert.pump_var) continue;
        if (!root_values.count(root.var)) return false;
    }
    Executor exec(sys, rep, cfg);
    int accepted = 0;
    std::vector<TowerInt> tuple;
    for (long long delta : {0LL, 1LL, 2LL, 6LL}) {
        root_values[cert.pump_var] = nat_of(cert.threshold + delta);
        ExecStatus st = exec.run(root_values, tuple);
        if (st == ExecStatus::Reject) return false;
        if (st == ExecStatus::Accept) {
            if (!verify_solution(sys, Solution{tuple}, cfg)) return false;
            ++accepted;
        }
    }
    return accepted >= 1;
}

Classification classify(const ConstraintSystem& sys, const Config& cfg) {
    StructureReport rep = analyze(sys);
    Classification out;

    auto finish_finite = [&](EnumerationResult res, std::string reason) {
        if (res.unresolved > 0 || res.truncated) {
            out.verdict = Verdict::OpenUnknown;
            out.reason = "enumeration left undecided candidates";
        } else {
            out.verdict = Verdict::ProvablyFinite;
            out.reason = std::move(reason);
        }
        out.solutions = std::move(res.solutions);
        out.unresolved = res.unresolved;
        out.candidates_tested = res.candidates_tested;
        out.truncated = res.truncated;
        out.max_component = max_component_of(out.solutions);
        return out;
    };

    if (rep.unsat_cycle)
        return finish_finite({}, "a functional cycle with a successor edge has no solution");
    for (const Atom& a : rep.not_divides)
        if (a.i == a.k)
            return finish_finite({}, "x" + std::to_string(a.i) +
                                         " !| x" + std::to_string(a.i) +
                                         " is identically false");

    // Divisibility atoms whose two sides are chains over the same seed can
    // bound that seed outright: beyond the threshold the divisor always
    // divides, so no solution exists there.
    std::map<int, long long> bound_by_seed;
    bool all_seeds_bounded = !rep.free_seeds.empty();
    for (int s : rep.free_seeds) {
        long long best = -1;
        for (const Atom& a : rep.not_divides) {
            if (rep.root_var_of[a.i] != s || rep.root_var_of[a.k] != s) continue;
            EventualDivResult r =
                chain_divides_eventually(rep.chain_of[a.i], rep.chain_of[a.k]);
            if (r.kind == EventualDiv::AlwaysDivides) {
                long long b = r.threshold - 1;
                best = best < 0 ? b : std::min(best, b);
            }
        }
        if (best < 0 || best > 100000)
            all_seeds_bounded = false;
        else
            bound_by_seed[s] = best;
    }
    if (rep.free_seeds.empty()) {
        EnumerationResult res =
            enumerate_with_bounds(sys, rep, default_bounds(rep, 1, cfg), cfg);
        return finish_finite(std::move(res), "no free seeds: all variables anchored");
    }
    if (all_seeds_bounded) {
        std::vector<long long> bounds;
        for (const auto& root : rep.roots)
            bounds.push_back(root.cyclic ? cfg.cycle_cap
                                         : bound_by_seed.at(root.var));
        EnumerationResult res = enumerate_with_bounds(sys, rep, bounds, cfg);
        return finish_finite(std::move(res),
                             "every free seed is bounded: beyond the bound some "
                             "divisibility atom is identically false");
    }

    EnumerationResult res = enumerate_with_bounds(
        sys, rep, default_bounds(rep, cfg.seed_bound, cfg), cfg);

    // R1: a variable in no atom pumps any witness solution.
    for (int v = 1; v <= sys.n; ++v) {
        if (sys.pins.count(v) || var_in_any_atom(sys, v)) continue;
        if (res.solutions.empty()) break;
        Certificate cert;
        cert.rule = Certificate::R1;
        cert.pump_var = v;
        cert.witness = res.solutions.front();
        cert.detail = "x" + std::to_string(v) +
                      " occurs in no atom; any value extends the witness";
        if (validate_certificate(sys, cert, cfg)) {
            out.verdict = Verdict::ProvablyInfinite;
            out.certificate = std::move(cert);
            out.solutions = std::move(res.solutions);
            out.unresolved = res.unresolved;
            out.candidates_tested = res.candidates_tested;
            out.truncated = res.truncated;
            out.max_component = max_component_of(out.solutions);
            out.reason = "unconstrained variable";
            return out;
        }
    }

    // R2/R3: pump one seed with the other roots frozen.
    for (int s : rep.free_seeds) {
        std::vector<const Solution*> bases;
        if (rep.roots.size() == 1 && sys.pins.empty()) {
            bases.push_back(nullptr);
        } else {
            std::set<std::vector<std::string>> seen;
            for (const auto& sol : res.solutions) {
                std::vector<std::string> key;
                for (const auto& root : rep.roots)
                    if (root.var != s)
                        key.push_back(tower_to_string(sol.values[root.var - 1]));
                if (seen.insert(key).second) bases.push_back(&sol);
                if (bases.size() >= 8) break;
            }
        }
        for (const Solution* base : bases) {
            auto cert = attempt_pump(sys, rep, s, base, cfg);
            if (cert && validate_certificate(sys, *cert, cfg)) {
                out.verdict = Verdict::ProvablyInfinite;
                out.certificate = std::move(cert);
                out.solutions = std::move(res.solutions);
                out.unresolved = res.unresolved;
                out.candidates_tested = res.candidates_tested;
                out.truncated = res.truncated;
                out.max_component = max_component_of(out.solutions);
                out.reason = "pumped seed family";
                return out;
            }
        }
    }

    out.verdict = Verdict::OpenUnknown;
    out.solutions = std::move(res.solutions);
    out.unresolved = res.unresolved;
    out.candidates_tested = res.candidates_tested;
    out.truncated = res.truncated;
    out.max_component = max_component_of(out.solutions);
    out.reason = "finiteness not decided within the certificate rules";
    return out;
}

// ---------------------------------------------------------------------------
// Phi sweeps
// ---------------------------------------------------------------------------

namespace {

std::string tower_display(const TowerInt& t) {
    std::string s = tower_to_string(t);
    if (s.size() <= 40) return s;
    long digits = digit_count(t.base);
    std::string approx = "<" + std::to_string(digits) + "-digit value>";
    for (int i = 0; i < t.height; ++i)
        approx = i == 0 ? approx + "!" : "(" + approx + ")!";
    return approx;
}

PhiEntry make_phi_entry(const ConstraintSystem& sys, Classification cls,
                        const TowerInt& f_n, int n) {
    PhiEntry e;
    e.system = serialize_system(sys);
    e.classification = cls.verdict;
    if (cls.certificate)
        e.certificate = certificate_rule_name(cls.certificate->rule);
    e.solution_count = static_cast<long long>(cls.solutions.size());
    if (cls.max_component) e.max_component = tower_to_string(*cls.max_component);
    e.unresolved = cls.unresolved;

    auto first_exceeding = [&]() -> std::optional<std::pair<int, const Solution*>> {
        for (const auto& sol : cls.solutions)
            for (int idx = 0; idx < static_cast<int>(sol.values.size()); ++idx)
                if (tower_cmp(sol.values[idx], f_n) == Ordering::Greater)
                    return std::make_pair(idx + 1, &sol);
        return std::nullopt;
    };

    if (cls.verdict == Verdict::ProvablyInfinite) {
        e.verdict = PhiVerdict::VACUOUS;
    } else if (cls.verdict == Verdict::ProvablyFinite) {
        if (cls.solutions.empty()) {
            e.verdict = PhiVerdict::VACUOUS;
        } else if (first_exceeding()) {
            e.verdict = PhiVerdict::FAIL;
        } else {
            e.verdict = PhiVerdict::PASS;
        }
    } else {
        e.verdict = first_exceeding() ? PhiVerdict::ATTENTION : PhiVerdict::OPEN;
    }
    if (e.verdict == PhiVerdict::ATTENTION || e.verdict == PhiVerdict::FAIL) {
        auto ex = first_exceeding();
        e.annotation = "x" + std::to_string(ex->first) + " = " +
                       tower_display(ex->second->values[ex->first - 1]) +
                       " > f(" + std::to_string(n) + ") = " + tower_display(f_n);
        for (const auto& v : ex->second->values)
            e.exceeding_solution.push_back(tower_to_string(v));
    }
    return e;
}

std::vector<Atom> all_atoms(int n) {
    std::vector<Atom> atoms;
    for (AtomKind kind :
         {AtomKind::Successor, AtomKind::FactorialEq, AtomKind::NotDivides})
        for (int i = 1; i <= n; ++i)
            for (int k = 1; k <= n; ++k) atoms.push_back({kind, i, k});
    std::sort(atoms.begin(), atoms.end());
    return atoms;
}

void aggregate(PhiReport& rep) {
    for (const auto& e : rep.entries) {
        switch (e.verdict) {
            case PhiVerdict::PASS: ++rep.pass; break;
            case PhiVerdict::VACUOUS: ++rep.vacuous; break;
            case PhiVerdict::ATTENTION: ++rep.attention; break;
            case PhiVerdict::FAIL: ++rep.fail; rep.any_fail = true; break;
            case PhiVerdict::OPEN: ++rep.open; break;
        }
    }
}

}  // namespace

PhiReport phi_check_exhaustive(int n, const Config& cfg) {
    if (n < 1 || n > 2)
        throw RangeError("phi_check_exhaustive: n must be 1 or 2");
    PhiReport rep;
    rep.n = n;
    TowerInt f_n = f_sequence(n, cfg.digit_cap);
    rep.f_n = tower_to_string(f_n);
    std::vector<Atom> atoms = all_atoms(n);
    long long total = 1LL << atoms.size();
    rep.entries.resize(total);
    parallel_for_indexed(total, cfg.jobs, [&](long long mask) {
        ConstraintSystem sys;
        sys.n = n;
        for (size_t b = 0; b < atoms.size(); ++b)
            if (mask & (1LL << b)) sys.add(atoms[b]);
        rep.entries[mask] = make_phi_entry(sys, classify(sys, cfg), f_n, n);
    });
    aggregate(rep);
    return rep;
}

PhiReport phi_check_sampled(int n, const Config& cfg) {
    if (n < 3 || n > 6)
        throw RangeError("phi_check_sampled: n must be in 3..6");
    PhiReport rep;
    rep.n = n;
    TowerInt f_n = f_sequence(n, cfg.digit_cap);
    rep.f_n = tower_to_string(f_n);

    struct Job {
        ConstraintSystem sys;
        long long seed_bound;
    };
    std::vector<Job> jobs_list;
    for (PaperSystemId id : paper_systems_of_arity(n)) {
        Job j;
        j.sys = build_unpinned(id);
        j.seed_bound = std::max<long long>(cfg.seed_bound, recommended_seed_bound(id));
        jobs_list.push_back(std::move(j));
    }

    std::mt19937_64 rng(cfg.sample_seed * 1000003ULL + static_cast<unsigned>(n));
    std::vector<Atom> atoms = all_atoms(n);
    double p = 2.0 / (3.0 * n);
    auto threshold = static_cast<std::uint64_t>(p * 18446744073709551615.0);
    for (int s = 0; s < cfg.samples; ++s) {
        ConstraintSystem sys;
        sys.n = n;
        for (const Atom& a : atoms)
            if (rng() < threshold) sys.add(a);
        jobs_list.push_back({std::move(sys), cfg.seed_bound});
    }

    rep.entries.resize(jobs_list.size());
    parallel_for_indexed(static_cast<long long>(jobs_list.size()), cfg.jobs,
                         [&](long long i) {
                             Config local = cfg;
                             local.seed_bound = jobs_list[i].seed_bound;
                             local.jobs = 1;
                             rep.entries[i] = make_phi_entry(
                                 jobs_list[i].sys,
                                 classify(jobs_list[i].sys, local), f_n, n);
                         });
    aggregate(rep);
    return rep;
}

}  // namespace phi
