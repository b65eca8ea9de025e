#pragma once

#include <optional>
#include <vector>

#include "phi/tower.hpp"

namespace phi {

/// A determination chain: the value of a variable as a composition of
/// successor/predecessor steps and factorials applied to a root quantity
/// t (a free seed). Normal form is the vector of integer offsets between
/// factorial applications:
///
///   value(t) = (((t + off[0])! + off[1])! + ... )! + off[k]
///
/// with facts() = offsets.size() - 1 factorial levels. Every chain is a
/// strictly increasing function of t on its validity range.
struct OpChain {
    std::vector<long long> offsets{0};

    int facts() const { return static_cast<int>(offsets.size()) - 1; }

    static OpChain seed() { return {}; }
    OpChain after_offset(long long delta) const;  // successor/predecessor
    OpChain after_fact() const;
    /// Undo one factorial; only possible when no offsets follow the last
    /// factorial level.
    std::optional<OpChain> after_fact_inverse() const;

    bool operator==(const OpChain&) const = default;
};

/// Smallest t >= 1 such that every intermediate value of the chain is a
/// positive integer (monotone: valid for all larger t as well).
long long chain_min_valid_t(const OpChain& c);

/// If a(t) > b(t) for all t beyond some computable threshold, returns
/// that threshold. Decided structurally: more factorial levels dominate,
/// equal levels compare offset vectors lexicographically.
std::optional<long long> chain_dominates(const OpChain& a, const OpChain& b);

enum class EventualDiv {
    AlwaysDivides,   // divisor | dividend for every t >= threshold
    NeverBeyond,     // divisor never divides dividend once t >= threshold
    Inconclusive,
};

struct EventualDivResult {
    EventualDiv kind = EventualDiv::Inconclusive;
    long long threshold = 1;
};

/// Eventual behaviour of "divisor(t) | dividend(t)" for two chains over
/// the same root. Sound, deliberately incomplete: Inconclusive covers
/// exactly the shapes whose answer is an open number-theoretic question
/// (Wilson-style divisibilities).
EventualDivResult chain_divides_eventually(const OpChain& divisor,
                                           const OpChain& dividend);

/// Concrete evaluation at t as a tower; nullopt when an offset would
/// apply to a symbolic level or a value would leave the positives.
std::optional<TowerInt> chain_eval(const OpChain& c, const Nat& t,
                                   long digit_cap);

}  // namespace phi
