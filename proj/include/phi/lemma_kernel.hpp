#pragma once

#include <optional>
#include <vector>

#include "phi/arith.hpp"
#include "phi/config.hpp"

namespace phi {

/// x in P ∪ {4}  vs  x does not divide (x-1)!, both sides computed
/// independently (primality test vs incremental factorial-mod).
struct Lemma0Record {
    long long x = 0;
    bool in_set = false;       // x in P ∪ {4}
    bool not_divides = false;  // x does not divide (x-1)!
    bool agree = false;
};

enum class Lemma0aCase { PrimeOrFour, Square, SmallestFactor };

/// n in P ∪ {4}  vs  n does not divide (n-3)!, plus the proof case for
/// composite n > 4 with its divisor construction re-verified.
struct Lemma0aRecord {
    long long n = 0;
    bool in_set = false;
    bool not_divides = false;
    bool agree = false;
    std::optional<Lemma0aCase> case_tag;
    bool construction_ok = true;
};

Lemma0Record check_lemma0(long long x, const Config& cfg = {});
Lemma0aRecord check_lemma0a(long long n, const Config& cfg = {});

enum class LemmaId { L0, L0a };

struct LemmaRangeSummary {
    LemmaId which = LemmaId::L0;
    long long lo = 0, hi = 0;
    long long checked = 0;
    long long members = 0;  // values in P ∪ {4}
    std::vector<long long> mismatches;
    bool constructions_ok = true;
};

/// Verifies the lemma over [lo, hi]; a non-empty mismatch list is a
/// build-stopping defect. Parallelizes by subrange, merged ascending.
LemmaRangeSummary verify_lemma_range(LemmaId which, long long lo, long long hi,
                                     const Config& cfg = {});

}  // namespace phi
