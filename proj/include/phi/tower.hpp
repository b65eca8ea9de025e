#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "phi/arith.hpp"

namespace phi {

enum class Ordering { Less, Equal, Greater };

/// A positive integer stored as a materialized base with `height` pending
/// factorial applications. Canonical form: bases 1 and 2 always have
/// height 0 (their factorials collapse), and whenever height > 0 the next
/// factorial of base would exceed the digit cap — every materializable
/// level is folded into base. Two canonical towers built under the same
/// digit cap are equal as records iff they denote the same integer.
struct TowerInt {
    Nat base = 1;
    int height = 0;

    bool operator==(const TowerInt&) const = default;
    bool materialized() const { return height == 0; }
};

/// Canonical tower for base with `height` factorial applications.
TowerInt make_tower(Nat base, int height, long digit_cap);

/// Height-0 tower holding v (v >= 1).
TowerInt tower_from_nat(Nat v);

/// One factorial application, staying canonical.
TowerInt tower_factorial(const TowerInt& a, long digit_cap);

/// f(1) = 2, f(2) = 3, f(n+1) = f(n)!.
TowerInt f_sequence(int n, long digit_cap);

/// Total order agreeing with integer value; never materializes a level
/// past the digit cap.
Ordering tower_cmp(const TowerInt& a, const TowerInt& b);

/// a + 1 when a is materialized; nullopt (symbolic overflow) otherwise —
/// the successor of a symbolic tower has no tower form, which routes the
/// solver to the divisibility patterns instead.
std::optional<TowerInt> succ_of(const TowerInt& a);

/// Does a divide b? Exact on materialized pairs; a > b decides No; a
/// symbolic factorial of c reduces to divides-factorial questions.
Tri tower_divides(const TowerInt& a, const TowerInt& b,
                  const FactorEffort& effort = {});

/// Decimal digits with one "!" per level: "720", "720!", "(720!)!".
std::string tower_to_string(const TowerInt& a);

/// Inverse of tower_to_string (canonicalizing, so parse of a canonical
/// string round-trips bit-exactly). nullopt on malformed input.
std::optional<TowerInt> tower_parse(std::string_view text, long digit_cap);

}  // namespace phi
