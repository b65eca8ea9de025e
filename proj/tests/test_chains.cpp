#include "phi/chains.hpp"

#include "doctest.h"

using namespace phi;

namespace {

constexpr long kCap = 100000;

OpChain chain_from(std::initializer_list<long long> offs) {
    OpChain c;
    c.offsets.assign(offs);
    return c;
}

// Brute confirmation over a window of seed values.
void confirm_dominance(const OpChain& a, const OpChain& b, long long thr) {
    for (long long t = thr; t < thr + 15; ++t) {
        auto va = chain_eval(a, nat_of(t), kCap);
        auto vb = chain_eval(b, nat_of(t), kCap);
        if (!va || !vb) return;  // beyond representable offsets
        CHECK(tower_cmp(*va, *vb) == Ordering::Greater);
    }
}

}  // namespace

TEST_CASE("chain composition normal forms") {
    OpChain c = OpChain::seed();
    CHECK(c.offsets == std::vector<long long>{0});
    c = c.after_fact();                    // t!
    c = c.after_offset(-2);                // t! - 2
    c = c.after_fact();                    // (t! - 2)!
    CHECK(c.offsets == std::vector<long long>({0, -2, 0}));
    CHECK(c.facts() == 2);

    auto inv = c.after_fact_inverse();
    REQUIRE(inv.has_value());
    CHECK(inv->offsets == std::vector<long long>({0, -2}));
    CHECK(!inv->after_fact_inverse().has_value());  // trailing offset nonzero
}

TEST_CASE("chain_min_valid_t tracks positivity") {
    CHECK(chain_min_valid_t(OpChain::seed()) == 1);
    CHECK(chain_min_valid_t(chain_from({-2})) == 3);
    // x! - 2 needs x >= 3 (2! - 2 = 0 is not positive)
    CHECK(chain_min_valid_t(chain_from({0, -2})) == 3);
    // x! - 7 needs x >= 4
    CHECK(chain_min_valid_t(chain_from({0, -7})) == 4);
}

TEST_CASE("chain_eval") {
    // (t! - 2)! at t = 7 is 5038!
    auto v = chain_eval(chain_from({0, -2, 0}), Nat(7), kCap);
    REQUIRE(v.has_value());
    CHECK(*v == make_tower(5038, 1, kCap));
    // offsets cannot apply past a symbolic level
    OpChain deep = chain_from({0, 0, 1});  // (t!)! + 1
    CHECK(!chain_eval(deep, Nat(720), kCap).has_value());
    CHECK(chain_eval(deep, Nat(3), kCap).has_value());
    // non-positive start
    CHECK(!chain_eval(chain_from({-5}), Nat(3), kCap).has_value());
}

TEST_CASE("dominance: extra factorial levels win") {
    auto thr = chain_dominates(chain_from({0, 0}), chain_from({0}));  // t! vs t
    REQUIRE(thr.has_value());
    confirm_dominance(chain_from({0, 0}), chain_from({0}), *thr);

    // (t+1)! dominates t! + 6
    auto thr2 = chain_dominates(chain_from({1, 0}), chain_from({0, 6}));
    REQUIRE(thr2.has_value());
    confirm_dominance(chain_from({1, 0}), chain_from({0, 6}), *thr2);

    // t + 1000 does not dominate t!
    CHECK(!chain_dominates(chain_from({1000}), chain_from({0, 0})).has_value());
}

TEST_CASE("dominance: equal levels compare offsets") {
    auto thr = chain_dominates(chain_from({1}), chain_from({0}));  // t+1 vs t
    REQUIRE(thr.has_value());
    CHECK(*thr == 1);
    CHECK(!chain_dominates(chain_from({0}), chain_from({1})).has_value());
    CHECK(!chain_dominates(chain_from({0, -1}), chain_from({0, -1})).has_value());

    // t! - 1 vs t! - 2
    auto thr2 = chain_dominates(chain_from({0, -1}), chain_from({0, -2}));
    REQUIRE(thr2.has_value());
    confirm_dominance(chain_from({0, -1}), chain_from({0, -2}), *thr2);

    // earlier offsets outweigh later ones: (t+1)! - 5 vs t! + 5
    auto thr3 = chain_dominates(chain_from({1, -5}), chain_from({0, 5}));
    REQUIRE(thr3.has_value());
    confirm_dominance(chain_from({1, -5}), chain_from({0, 5}), *thr3);
}

TEST_CASE("eventual divisibility: same-shape offset gap") {
    // t | t + 2 only while t <= 2
    auto r = chain_divides_eventually(chain_from({0}), chain_from({2}));
    CHECK(r.kind == EventualDiv::NeverBeyond);
    CHECK(r.threshold == 3);
    for (long long t = r.threshold; t < r.threshold + 20; ++t)
        CHECK(tower_divides(*chain_eval(chain_from({0}), nat_of(t), kCap),
                            *chain_eval(chain_from({2}), nat_of(t), kCap)) == Tri::No);

    // t + 1 never divides t (divisor dominates)
    auto r2 = chain_divides_eventually(chain_from({1}), chain_from({0}));
    CHECK(r2.kind == EventualDiv::NeverBeyond);
    CHECK(r2.threshold == 1);
}

TEST_CASE("eventual divisibility: chains extended by factorials") {
    // t | t! always
    auto r = chain_divides_eventually(chain_from({0}), chain_from({0, 0}));
    CHECK(r.kind == EventualDiv::AlwaysDivides);
    for (long long t = r.threshold; t < r.threshold + 20; ++t)
        CHECK(tower_divides(*chain_eval(chain_from({0}), nat_of(t), kCap),
                            *chain_eval(chain_from({0, 0}), nat_of(t), kCap)) == Tri::Yes);

    // t | t! + 1 fails once t > 1
    auto r2 = chain_divides_eventually(chain_from({0}), chain_from({0, 1}));
    CHECK(r2.kind == EventualDiv::NeverBeyond);
    for (long long t = r2.threshold; t < r2.threshold + 20; ++t)
        CHECK(tower_divides(*chain_eval(chain_from({0}), nat_of(t), kCap),
                            *chain_eval(chain_from({0, 1}), nat_of(t), kCap)) == Tri::No);

    // t | (t+2)! always (prefix with a nonnegative gap before the factorial)
    auto r3 = chain_divides_eventually(chain_from({0}), chain_from({2, 0}));
    CHECK(r3.kind == EventualDiv::AlwaysDivides);
}

TEST_CASE("eventual divisibility: the open shapes stay inconclusive") {
    // x | (x-1)!   (Wilson)
    CHECK(chain_divides_eventually(chain_from({0}), chain_from({-1, 0})).kind ==
          EventualDiv::Inconclusive);
    // x!+1 | (x!)!
    CHECK(chain_divides_eventually(chain_from({0, 1}), chain_from({0, 0, 0})).kind ==
          EventualDiv::Inconclusive);
    // x!-1 | (x!-2)!
    CHECK(chain_divides_eventually(chain_from({0, -1}), chain_from({0, -2, 0})).kind ==
          EventualDiv::Inconclusive);
}
