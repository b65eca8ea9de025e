#include "phi/search.hpp"

#include <algorithm>

namespace phi {

const char* search_pattern_name(SearchPattern p) {
    switch (p) {
        case SearchPattern::FactPlus: return "fact-plus";
        case SearchPattern::FactMinus: return "fact-minus";
        case SearchPattern::PrimeFactPlus: return "prime-fact-plus";
        case SearchPattern::Twin: return "twin";
    }
    return "?";
}

std::optional<SearchPattern> search_pattern_from_name(std::string_view name) {
    if (name == "fact-plus") return SearchPattern::FactPlus;
    if (name == "fact-minus") return SearchPattern::FactMinus;
    if (name == "prime-fact-plus") return SearchPattern::PrimeFactPlus;
    if (name == "twin") return SearchPattern::Twin;
    return std::nullopt;
}

PaperSystemId system_of_pattern(SearchPattern p) {
    switch (p) {
        case SearchPattern::FactPlus: return PaperSystemId::A;
        case SearchPattern::FactMinus: return PaperSystemId::B;
        case SearchPattern::PrimeFactPlus: return PaperSystemId::C;
        case SearchPattern::Twin: return PaperSystemId::D;
    }
    return PaperSystemId::A;
}

int phi_level_of_pattern(SearchPattern p) {
    switch (p) {
        case SearchPattern::FactPlus: return 4;
        case SearchPattern::FactMinus: return 5;
        case SearchPattern::PrimeFactPlus: return 6;
        case SearchPattern::Twin: return 5;
    }
    return 0;
}

namespace {

std::vector<bool> prime_sieve(long long limit) {
    std::vector<bool> is_p(limit + 1, true);
    if (limit >= 0) is_p[0] = false;
    if (limit >= 1) is_p[1] = false;
    for (long long i = 2; i * i <= limit; ++i)
        if (is_p[i])
            for (long long j = i * i; j <= limit; j += i) is_p[j] = false;
    return is_p;
}

Witness make_witness(SearchPattern p, long long x, std::optional<long long> y,
                     bool probable, const Config& cfg) {
    Witness w;
    w.x = x;
    w.y = y;
    w.probable_prime = probable;
    std::optional<Nat> ny;
    if (y) ny = nat_of(*y);
    auto tuple = closed_form(system_of_pattern(p), nat_of(x), ny, cfg);
    if (!tuple)
        throw std::logic_error("search: witness fails its own closed form");
    w.tuple = std::move(tuple->values);
    return w;
}

}  // namespace

std::vector<Witness> search_pattern(SearchPattern p, long long limit,
                                    const Config& cfg) {
    if (limit < 1) throw RangeError("search_pattern: limit must be >= 1");
    std::vector<Witness> out;
    if (p == SearchPattern::Twin) {
        long long sieve_to =
            std::min<long long>(limit + 2, static_cast<long long>(cfg.sieve_threshold));
        std::vector<bool> is_p = prime_sieve(sieve_to);
        auto prime_at = [&](long long v) {
            if (v <= sieve_to) return static_cast<bool>(is_p[v]);
            return is_prime(nat_of(v)).prime_or_probable();
        };
        for (long long x = 2; x <= limit; ++x) {
            if (prime_at(x) && prime_at(x + 2))
                out.push_back(make_witness(p, x, x + 2, false, cfg));
        }
        return out;
    }

    // x! built incrementally: one multiplication per step of the scan.
    Nat fact = 1;
    std::vector<bool> is_p;
    if (p == SearchPattern::PrimeFactPlus)
        is_p = prime_sieve(limit);
    for (long long x = 1; x <= limit; ++x) {
        fact *= static_cast<long>(x);
        if (p == SearchPattern::PrimeFactPlus && !is_p[x]) continue;
        Nat candidate = p == SearchPattern::FactMinus ? Nat(fact - 1) : Nat(fact + 1);
        PrimalityResult pr = is_prime(candidate);
        if (!pr.prime_or_probable()) continue;
        bool probable = pr.status == PrimeStatus::ProbablePrime;
        out.push_back(make_witness(p, x, std::nullopt, probable, cfg));
    }
    return out;
}

std::optional<Consequence> conditional_consequence(SearchPattern p,
                                                   const Witness& w,
                                                   const Config& cfg) {
    PaperSystemId id = system_of_pattern(p);
    int phi_n = phi_level_of_pattern(p);
    // The component the theorem proofs compare against f(n):
    //   A: x1 = x!,  B: x4 = (x!-2)!,  C: x5 = (x!)!,  D: x3 = (x-1)!
    int idx = 0;
    switch (p) {
        case SearchPattern::FactPlus: idx = 2; break;
        case SearchPattern::FactMinus: idx = 5; break;
        case SearchPattern::PrimeFactPlus: idx = 6; break;
        case SearchPattern::Twin: idx = 5; break;
    }
    const TowerInt& comp = w.tuple.at(idx - 1);
    TowerInt f_n = f_sequence(phi_n, cfg.digit_cap);
    if (tower_cmp(comp, f_n) != Ordering::Greater) return std::nullopt;

    Consequence c;
    c.component_index = idx;
    c.component_name = paper_var_name(id, idx);
    c.component = tower_to_string(comp);
    c.phi_n = phi_n;
    auto brief = [](const TowerInt& t) {
        std::string s = tower_to_string(t);
        if (s.size() <= 24) return s;
        std::string approx = "<" + std::to_string(digit_count(t.base)) + "-digit value>";
        for (int i = 0; i < t.height; ++i)
            approx = i == 0 ? approx + "!" : "(" + approx + ")!";
        return approx;
    };
    c.text = std::string(c.component_name) + " = " + brief(comp) + " > f(" +
             std::to_string(phi_n) + ") = " + brief(f_n) + "; Phi_" +
             std::to_string(phi_n) + " => infinitude";
    return c;
}

}  // namespace phi
