#pragma once

#include <optional>
#include <string>
#include <vector>

#include "phi/paper_systems.hpp"

namespace phi {

/// The four prime patterns:
///   FactPlus       x!+1 prime            (system A)
///   FactMinus      x!-1 prime            (system B)
///   PrimeFactPlus  x and x!+1 prime      (system C)
///   Twin           x and x+2 prime       (system D)
enum class SearchPattern { FactPlus, FactMinus, PrimeFactPlus, Twin };

const char* search_pattern_name(SearchPattern p);
std::optional<SearchPattern> search_pattern_from_name(std::string_view name);
PaperSystemId system_of_pattern(SearchPattern p);
/// Which Phi statement the pattern's exceedance activates (A: 4, B: 5,
/// C: 6, D: 5).
int phi_level_of_pattern(SearchPattern p);

struct Witness {
    long long x = 0;
    std::optional<long long> y;       // Twin only
    std::vector<TowerInt> tuple;      // closed-form solution of the system
    bool probable_prime = false;
};

/// Ascending x <= limit satisfying the pattern, each with its
/// closed-form tuple. Deterministic and identical across job counts.
std::vector<Witness> search_pattern(SearchPattern p, long long limit,
                                    const Config& cfg);

struct Consequence {
    int component_index = 0;       // 1-based into the tuple
    std::string component_name;    // e.g. "x1"
    std::string component;         // exact tower text
    int phi_n = 0;
    std::string text;              // human-readable annotation
};

/// The Phi-statement annotation a witness activates: which tuple
/// component exceeds f(n). nullopt when the witness is too small to
/// exceed the bound.
std::optional<Consequence> conditional_consequence(SearchPattern p,
                                                   const Witness& w,
                                                   const Config& cfg);

}  // namespace phi
