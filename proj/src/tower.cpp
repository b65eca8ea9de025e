#include "phi/tower.hpp"

#include <cassert>

namespace phi {

namespace {

// Compare x against F^d(y) (d factorial applications of y) without ever
// materializing more digits than x itself carries. Each level either
// materializes under a cap tied to x's size or is already provably
// larger than x.
Ordering cmp_nat_vs_iterated_factorial(const Nat& x, Nat y, int d) {
    long local_cap = digit_count(x) + 10;
    for (int i = 0; i < d; ++i) {
        std::optional<Nat> f = factorial(y, local_cap);
        if (!f) return Ordering::Less;  // this level alone exceeds x
        y = *f;
    }
    if (x < y) return Ordering::Less;
    if (x == y) return Ordering::Equal;
    return Ordering::Greater;
}

Ordering flip(Ordering o) {
    if (o == Ordering::Less) return Ordering::Greater;
    if (o == Ordering::Greater) return Ordering::Less;
    return Ordering::Equal;
}

}  // namespace

TowerInt make_tower(Nat base, int height, long digit_cap) {
    assert(base >= 1);
    if (base <= 2) return {std::move(base), 0};  // 1! = 1, 2! = 2
    while (height > 0) {
        std::optional<Nat> f = factorial(base, digit_cap);
        if (!f) break;
        base = std::move(*f);
        --height;
    }
    return {std::move(base), height};
}

TowerInt tower_from_nat(Nat v) {
    assert(v >= 1);
    return {std::move(v), 0};
}

TowerInt tower_factorial(const TowerInt& a, long digit_cap) {
    if (a.height == 0) return make_tower(a.base, 1, digit_cap);
    return {a.base, a.height + 1};
}

TowerInt f_sequence(int n, long digit_cap) {
    if (n < 1) throw RangeError("f_sequence: n must be >= 1");
    if (n == 1) return tower_from_nat(2);
    TowerInt t = tower_from_nat(3);
    for (int i = 3; i <= n; ++i) t = tower_factorial(t, digit_cap);
    return t;
}

Ordering tower_cmp(const TowerInt& a, const TowerInt& b) {
    if (a.height == b.height) {
        int c = cmp(a.base, b.base);
        return c < 0 ? Ordering::Less : c > 0 ? Ordering::Greater : Ordering::Equal;
    }
    // Reduce to the shorter side's height: with d = |h_a - h_b|, a vs b
    // is decided by base vs F^d(other base), since factorial is strictly
    // increasing on the values involved (canonical bases at height > 0
    // are >= 3).
    if (a.height < b.height)
        return cmp_nat_vs_iterated_factorial(a.base, b.base, b.height - a.height);
    return flip(cmp_nat_vs_iterated_factorial(b.base, a.base, a.height - b.height));
}

std::optional<TowerInt> succ_of(const TowerInt& a) {
    if (a.height > 0) return std::nullopt;
    return tower_from_nat(a.base + 1);
}

Tri tower_divides(const TowerInt& a, const TowerInt& b,
                  const FactorEffort& effort) {
    switch (tower_cmp(a, b)) {
        case Ordering::Equal: return Tri::Yes;
        case Ordering::Greater: return Tri::No;  // a | b with b >= 1 forces a <= b
        case Ordering::Less: break;
    }
    if (a.height == 0 && b.height == 0)
        return mpz_divisible_p(b.base.get_mpz_t(), a.base.get_mpz_t())
                   ? Tri::Yes
                   : Tri::No;
    if (b.height >= 1) {
        // b = c! with c one level down.
        TowerInt c{b.base, b.height - 1};
        if (a.height == 0 && c.height == 0)
            return divides_factorial(a.base, c.base, effort);
        if (tower_cmp(a, c) != Ordering::Greater)
            return Tri::Yes;  // a <= c, so a divides c!
        if (a.height >= 1 && a.base == b.base && a.height < b.height)
            return Tri::Yes;  // same chain: m | m! transitively
        return Tri::Unknown;
    }
    // a symbolic, b materialized, a < b: only reachable through
    // out-of-band literals larger than the digit cap.
    return Tri::Unknown;
}

std::string tower_to_string(const TowerInt& a) {
    std::string s = a.base.get_str();
    for (int i = 0; i < a.height; ++i) {
        if (i == 0)
            s += "!";
        else
            s = "(" + s + ")!";
    }
    return s;
}

std::optional<TowerInt> tower_parse(std::string_view text, long digit_cap) {
    // Shape: "(" * h-1 DIGITS "!" (")!") * h-1 for height h >= 1, or bare
    // DIGITS for height 0. No leading zeros.
    size_t open = 0;
    while (open < text.size() && text[open] == '(') ++open;
    size_t pos = open;
    size_t dig_start = pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
    if (pos == dig_start) return std::nullopt;
    if (text[dig_start] == '0') return std::nullopt;
    Nat base;
    if (base.set_str(std::string(text.substr(dig_start, pos - dig_start)), 10) != 0)
        return std::nullopt;
    int height = 0;
    if (pos < text.size() && text[pos] == '!') {
        ++pos;
        height = 1;
    }
    for (size_t closes = 0; closes < open; ++closes) {
        if (pos + 2 > text.size() || text[pos] != ')' || text[pos + 1] != '!')
            return std::nullopt;
        pos += 2;
        ++height;
    }
    if (pos != text.size()) return std::nullopt;
    if (open > 0 && height != static_cast<int>(open) + 1)
        return std::nullopt;  // parens only wrap already-suffixed forms
    return make_tower(std::move(base), height, digit_cap);
}

}  // namespace phi
