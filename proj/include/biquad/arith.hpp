#pragma once

// Integer number-theory kit: squarefree testing, greedy four-square
// decomposition, fundamental units of real quadratic fields via continued
// fractions, 2-adic square-root lifting, and a small keyed RNG used by the
// sampling layers.

#include "rational.hpp"

#include <cassert>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace biquad {

// Smallest prime p with p^2 | n, or nullopt when |n| is squarefree.
// Trial division; radicands in this library are small, so this is plenty.
// n == 0 counts as non-squarefree (4 | 0), witnessed by 2.
inline std::optional<Int> square_divisor_witness(Int n) {
    if (n < 0) n = -n;
    if (n == 0) return Int(2);
    for (Int p = 2; p * p <= n; p = (p == 2 ? Int(3) : p + 2)) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return p;
        }
    }
    return std::nullopt;
}

inline bool squarefree(const Int& n) {
    return n != 0 && !square_divisor_witness(n).has_value();
}

namespace detail {

// Non-increasing representation with at most `slots` squares, each at most
// cap^2, chosen largest-first.  Any k admits one with slots = 4 (Lagrange),
// and the largest part of a non-increasing representation is always at
// least ceil(sqrt(k/slots)), which bounds the scan below.
inline bool four_square_rec(const Int& k, int slots, const Int& cap, std::vector<Int>& out) {
    if (k == 0) return true;
    if (slots == 0) return false;
    Int hi = isqrt(k);
    if (hi > cap) hi = cap;
    Int q = (k + slots - 1) / slots; // ceil(k/slots)
    Int lo = isqrt(q);
    if (lo * lo < q) ++lo;
    for (Int a = hi; a >= lo; --a) {
        out.push_back(a);
        if (four_square_rec(k - a * a, slots - 1, a, out)) return true;
        out.pop_back();
    }
    return false;
}

} // namespace detail

// Greedy descending Lagrange decomposition: take the largest feasible first
// square, then recurse; first success wins.  Zero terms never appear, so
// four_square(0) = [], four_square(4) = [2], four_square(7) = [2,1,1,1].
inline std::vector<Int> four_square(const Int& k) {
    if (k < 0) throw std::domain_error("four_square: negative argument");
    std::vector<Int> out;
    bool ok = detail::four_square_rec(k, 4, isqrt(k), out);
    assert(ok);
    (void)ok;
    return out;
}

// Fundamental unit of the ring of integers of Q(sqrt(D)), D >= 2 squarefree.
// The unit is t + u*sqrt(D), or (t + u*sqrt(D))/2 when `halved`.
struct PellUnit {
    Int t;
    Int u;
    bool halved;
    Int D;
    int norm; // +1 or -1
};

// Continued-fraction sweep for the fundamental solution of x^2 - D y^2 = ±1
// (the fundamental unit of Z[sqrt(D)]); if the CF period has odd length the
// norm is -1.  For D ≡ 1 (mod 4) the maximal order can be strictly larger:
// [O^* : Z[sqrt(D)]^*] divides 3, and equals 3 exactly when the equation
// (t + u sqrt(D))^3 = 8 (x1 + y1 sqrt(D)) has a solution in odd t, u with
// t^2 - D u^2 = 4n, n the norm.  Substituting t^2 = D u^2 + 4n into the
// expanded cube 8 y1 = u (3 t^2 + u^2 D) pins u exactly:
//     D u^3 + 3 n u = 2 y1,
// so u sits at the integer cube root of 2 y1 / D and only a handful of
// nearby values need testing (y1 can be astronomically large, so scanning
// u from 1 upward is not an option).
inline PellUnit pell_fundamental_unit(const Int& D) {
    if (D < 2 || !squarefree(D))
        throw std::invalid_argument("pell_fundamental_unit: D must be squarefree and >= 2");
    Int a0 = isqrt(D);
    Int m = 0, dd = 1, a = a0;
    Int hprev = 1, h = a0, kprev = 0, k = 1; // convergents h_i / k_i
    long period = 0;
    while (true) {
        m = dd * a - m;
        dd = (D - m * m) / dd;
        a = (a0 + m) / dd;
        ++period;
        if (dd == 1) break; // period closes; (h, k) is the fundamental solution
        Int hn = a * h + hprev;
        hprev = h;
        h = hn;
        Int kn = a * k + kprev;
        kprev = k;
        k = kn;
    }
    Int x1 = h, y1 = k;
    int nrm = (period % 2 == 0) ? +1 : -1;
    assert(x1 * x1 - D * y1 * y1 == nrm);
    if (D % 4 == 1) {
        Int u0 = icbrt(2 * y1 / D);
        for (Int u = u0 - 2; u <= u0 + 2; ++u) {
            if (u < 1 || u % 2 == 0) continue;
            if (D * u * u * u + 3 * nrm * u != 2 * y1) continue;
            Int t2 = D * u * u + 4 * nrm;
            Int t;
            if (!is_square(t2, &t)) continue;
            if (t % 2 == 0) continue;                         // need t odd, matching odd u
            if (t * (t2 + 3 * D * u * u) != 8 * x1) continue; // x-component of the cube
            return PellUnit{t, u, true, D, nrm};
        }
    }
    return PellUnit{x1, y1, false, D, nrm};
}

// Canonical 2-adic square root.  For a ∈ 4Z put N = 1 + 2a ≡ 1 (mod 8); N is
// a square in Z_2 with a unique root x ≡ 1 (mod 4).  Returns beta = (x-1)/4
// reduced into [0, 2^(k-2)), so (1 + 4*beta)^2 ≡ N (mod 2^k).
//
// Division-free Newton iteration on the inverse root, y <- y*(3 - N*y^2)/2:
// if N*y^2 ≡ 1 (mod 2^m) then the update gives 1 (mod 2^(2m-2)), and y ≡ 1
// (mod 4) is preserved, so x = N*y converges to the canonical root.  Each
// halving can shave one bit off the working precision, so we keep a bit
// buffer well beyond the ~14 iterations ever needed.  Guard bits also make
// the reduction mod 2^k unambiguous: the two roots ≡ 1 (mod 4) modulo a
// higher power of two differ by at least 2^(k+1) and so agree modulo 2^k.
inline Int two_adic_square_lift(const Int& a, unsigned k) {
    if (k < 3 || k > 8192)
        throw std::invalid_argument("two_adic_square_lift: need 3 <= k <= 8192");
    if (a % 4 != 0)
        throw std::invalid_argument("two_adic_square_lift: a must be divisible by 4");
    const Int N = 1 + 2 * a;
    const unsigned work = k + 20; // k + 2 needed + headroom for halvings
    const Int M = Int(1) << work;
    auto redu = [&M](Int v) {
        v %= M;
        if (v < 0) v += M;
        return v;
    };
    Int y = 1;
    unsigned prec = 3; // N*y^2 ≡ 1 (mod 2^prec)
    while (prec < k + 4) {
        Int t = redu(3 - N * y * y); // even: odd minus odd*odd^2
        y = redu(y * (t / 2));
        prec = 2 * prec - 2;
    }
    const Int Mk = Int(1) << k;
    Int x = redu(N * y) % Mk;
    assert(x % 4 == 1);
    Int beta = (x - 1) / 4; // in [0, 2^(k-2))
    Int check = ((1 + 4 * beta) * (1 + 4 * beta) - N) % Mk;
    assert(check == 0);
    (void)check;
    return beta;
}

// splitmix64: tiny, well-distributed, perfectly reproducible.  Used for all
// seeded sampling (surveys, randomized checks) so runs are deterministic.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    // uniform on [lo, hi], rejection-sampled so the distribution is exact
    std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
        std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        if (span == 0) return static_cast<std::int64_t>(next()); // full range
        std::uint64_t limit = (~0ull / span) * span;
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return lo + static_cast<std::int64_t>(v % span);
    }
};

// Mix several labels into one seed, so each (seed, r1, r2) stream is
// independent of every other.
inline std::uint64_t derive_seed(std::uint64_t seed, std::int64_t a, std::int64_t b) {
    SplitMix64 g(seed);
    g.state ^= 0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(a);
    g.next();
    g.state ^= 0xc2b2ae3d27d4eb4full * static_cast<std::uint64_t>(b);
    g.next();
    return g.next();
}

} // namespace biquad
