#include "phi/chains.hpp"

#include <algorithm>
#include <stdexcept>

namespace phi {

namespace {

// Saturating evaluation domain for threshold searches. 20! is the last
// factorial below the cap.
constexpr long long kSat = 4000000000000000000LL;

long long fact_sat(long long v) {
    if (v > 20) return kSat;
    long long r = 1;
    for (long long i = 2; i <= v; ++i) r *= i;
    return r;
}

long long add_sat(long long v, long long d) {
    if (v >= kSat) return kSat;
    return v + d;
}

// Stage values of the chain at t, saturating; empty if some stage
// leaves the positives.
std::vector<long long> stages_sat(const OpChain& c, long long t) {
    std::vector<long long> out;
    long long v = t + c.offsets[0];
    if (v < 1) return {};
    out.push_back(v);
    for (size_t i = 1; i < c.offsets.size(); ++i) {
        v = add_sat(fact_sat(v), c.offsets[i]);
        if (v < 1) return {};
        out.push_back(v);
    }
    return out;
}

long long neg_total(const OpChain& c) {
    long long s = 0;
    for (long long o : c.offsets) s += o < 0 ? -o : 0;
    return s;
}

long long pos_total(const OpChain& c) {
    long long s = 0;
    for (long long o : c.offsets) s += o > 0 ? o : 0;
    return s;
}

constexpr long long kSearchLimit = 1000000;

}  // namespace

OpChain OpChain::after_offset(long long delta) const {
    OpChain r = *this;
    r.offsets.back() += delta;
    return r;
}

OpChain OpChain::after_fact() const {
    OpChain r = *this;
    r.offsets.push_back(0);
    return r;
}

std::optional<OpChain> OpChain::after_fact_inverse() const {
    if (offsets.size() < 2 || offsets.back() != 0) return std::nullopt;
    OpChain r = *this;
    r.offsets.pop_back();
    return r;
}

long long chain_min_valid_t(const OpChain& c) {
    long long t = std::max(1LL, 1 - c.offsets[0]);
    while (t < kSearchLimit) {
        if (!stages_sat(c, t).empty()) return t;
        ++t;
    }
    throw std::logic_error("chain_min_valid_t: no valid start found");
}

std::optional<long long> chain_dominates(const OpChain& a, const OpChain& b) {
    if (a.offsets == b.offsets) return std::nullopt;
    int ka = a.facts(), kb = b.facts();
    if (ka < kb) return std::nullopt;

    long long valid = std::max(chain_min_valid_t(a), chain_min_valid_t(b));

    if (ka > kb) {
        // a(t) >= F^ka(t - Na) and b(t) <= F^kb(t + Pb); with at least one
        // extra factorial level, (t - Na)! > t + Pb settles it.
        long long na = neg_total(a), pb = pos_total(b);
        long long t = std::max(valid, na + 4);
        while (t < kSearchLimit) {
            if (fact_sat(t - na) > add_sat(t, pb)) return t;
            ++t;
        }
        return std::nullopt;
    }

    // Equal factorial counts: compare offset vectors lexicographically.
    size_t j = 0;
    while (j < a.offsets.size() && a.offsets[j] == b.offsets[j]) ++j;
    if (a.offsets[j] < b.offsets[j]) return std::nullopt;

    // With the first difference at stage j (a_j > b_j), a(t) exceeds b(t)
    // once every later stage satisfies vb! * vb >= b_i - a_i + 1, which
    // the stagewise induction then carries through.
    long long t = valid;
    while (t < kSearchLimit) {
        std::vector<long long> vb = stages_sat(b, t);
        std::vector<long long> va = stages_sat(a, t);
        if (!vb.empty() && !va.empty() && va[j] > vb[j]) {
            bool ok = true;
            for (size_t i = j + 1; i < b.offsets.size(); ++i) {
                long long prev = vb[i - 1];
                long long need = b.offsets[i] - a.offsets[i] + 1;
                if (need <= 0) continue;
                if (prev < 2) { ok = false; break; }
                long long f = fact_sat(prev);
                if (f >= kSat / prev) continue;  // product saturates past any need
                if (f * prev < need) { ok = false; break; }
            }
            if (ok) return t;
        }
        ++t;
    }
    return std::nullopt;
}

EventualDivResult chain_divides_eventually(const OpChain& divisor,
                                           const OpChain& dividend) {
    const OpChain& d = divisor;
    const OpChain& v = dividend;
    long long valid = std::max(chain_min_valid_t(d), chain_min_valid_t(v));

    if (d == v) return {EventualDiv::AlwaysDivides, valid};

    // Same shape, constant gap c: d | d + c  iff  d | c.
    if (d.facts() == v.facts()) {
        bool prefix_eq = std::equal(d.offsets.begin(), d.offsets.end() - 1,
                                    v.offsets.begin());
        if (prefix_eq) {
            long long c = v.offsets.back() - d.offsets.back();
            if (c > 0) {
                long long t = valid;
                while (t < kSearchLimit) {
                    auto s = stages_sat(d, t);
                    if (!s.empty() && s.back() > c)
                        return {EventualDiv::NeverBeyond, t};
                    ++t;
                }
            }
            // c < 0 falls through to dominance below.
        }
    }

    if (auto thr = chain_dominates(d, v))
        return {EventualDiv::NeverBeyond, std::max(*thr, valid)};

    // Divisor chain extended by at least one factorial level: the value
    // right before the dividend's last factorial, w, satisfies d | w!
    // whenever w >= d, so everything reduces to the trailing offset r.
    if (d.facts() < v.facts()) {
        bool prefix_eq = true;
        for (int i = 0; i < d.facts(); ++i)
            if (d.offsets[i] != v.offsets[i]) { prefix_eq = false; break; }
        if (prefix_eq) {
            OpChain w;
            w.offsets.assign(v.offsets.begin(), v.offsets.end() - 1);
            long long w_ge_d_thr = -1;
            if (w == d) {
                w_ge_d_thr = valid;
            } else if (auto thr = chain_dominates(w, d)) {
                w_ge_d_thr = std::max(*thr, valid);
            } else if (w.facts() == d.facts()) {
                bool pe = std::equal(d.offsets.begin(), d.offsets.end() - 1,
                                     w.offsets.begin());
                if (pe && w.offsets.back() >= d.offsets.back())
                    w_ge_d_thr = valid;
            }
            if (w_ge_d_thr >= 0) {
                long long r = v.offsets.back();
                if (r == 0) return {EventualDiv::AlwaysDivides, w_ge_d_thr};
                long long rr = r < 0 ? -r : r;
                long long t = w_ge_d_thr;
                while (t < kSearchLimit) {
                    auto s = stages_sat(d, t);
                    if (!s.empty() && s.back() > rr)
                        return {EventualDiv::NeverBeyond, t};
                    ++t;
                }
            }
        }
    }

    return {EventualDiv::Inconclusive, 1};
}

std::optional<TowerInt> chain_eval(const OpChain& c, const Nat& t,
                                   long digit_cap) {
    Nat v0 = t + static_cast<long>(c.offsets[0]);
    if (v0 < 1) return std::nullopt;
    TowerInt v = tower_from_nat(v0);
    for (size_t i = 1; i < c.offsets.size(); ++i) {
        v = tower_factorial(v, digit_cap);
        long long off = c.offsets[i];
        if (off != 0) {
            if (!v.materialized()) return std::nullopt;
            Nat nb = v.base + static_cast<long>(off);
            if (nb < 1) return std::nullopt;
            v = tower_from_nat(nb);
        }
    }
    return v;
}

}  // namespace phi
