#pragma once

// Complex biquadratic fields K = Q(sqrt(r1), sqrt(r2)) and their rings of
// integers.  A field carries three quadratic subfields, with radicands
// r1, r2 and r3 = r1*r2/gcd(|r1|,|r2|)^2; "complex" means not both
// generators positive, which forces exactly two of the three radicands
// negative.  Everything here is exact: elements are rational coordinate
// vectors over the power basis {1, w1, w2, w3}, w_i = sqrt(r_i), with
// w3 oriented so that w1*w2 = d*w3.
//
// classify_field picks a canonical generator pair, sorts the field into one
// of ten classes keyed by the radicand residues mod 4 and the sign pattern,
// and constructs an integral basis for the class; construction is verified
// on the spot (ring closure with integer structure constants, containment
// of the w_i, integrality of subfield traces) and the handle is memoized.

#include "quadratic.hpp"

#include <array>
#include <memory>
#include <numeric>

namespace biquad {

// Raised when an operation is only defined for a class the field is not in.
struct wrong_class_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FieldData {
    long long r1 = 0, r2 = 0, r3 = 0; // canonical generators + third radicand
    long long d = 1;                  // gcd(|r1|, |r2|), so w1*w2 = d*w3
    std::string tag;                  // A(i), B(i), A(ii), B(ii), C(ii), A(iii), B(iii), C(iii), A(iv), B(iv)
    std::array<std::array<Rat, 4>, 4> basis;     // basis[i] = omega-coords of B_i, B_0 = 1
    std::array<std::array<Rat, 4>, 4> basis_inv; // omega-coords -> basis coordinates
    long long sc[4][4][4] = {};                  // B_i*B_j = sum_k sc[i][j][k] B_k

    long long radicand(int q) const { return q == 1 ? r1 : (q == 2 ? r2 : r3); }
    bool is_class_one() const { return tag == "A(i)" || tag == "B(i)"; }
};

using Field = std::shared_ptr<const FieldData>;

// Multiplication over the power basis, from w1^2 = r1, w2^2 = r2, w3^2 = r3,
// w1*w2 = d*w3, w1*w3 = (r1/d)*w2, w2*w3 = (r2/d)*w1.
inline std::array<Rat, 4> omega_mul(const FieldData& F, const std::array<Rat, 4>& x,
                                    const std::array<Rat, 4>& y) {
    const Rat r1{F.r1}, r2{F.r2}, r3{F.r3}, dd{F.d};
    const Rat q1{F.r1 / F.d}, q2{F.r2 / F.d};
    return {x[0] * y[0] + r1 * x[1] * y[1] + r2 * x[2] * y[2] + r3 * x[3] * y[3],
            x[0] * y[1] + x[1] * y[0] + q2 * (x[2] * y[3] + x[3] * y[2]),
            x[0] * y[2] + x[2] * y[0] + q1 * (x[1] * y[3] + x[3] * y[1]),
            x[0] * y[3] + x[3] * y[0] + dd * (x[1] * y[2] + x[2] * y[1])};
}

namespace detail {

inline std::array<std::array<Rat, 4>, 4> invert4(const std::array<std::array<Rat, 4>, 4>& M) {
    std::array<std::array<Rat, 8>, 4> A{};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) A[i][j] = M[i][j];
        A[i][4 + i] = 1;
    }
    for (int c = 0; c < 4; ++c) {
        int piv = -1;
        for (int r = c; r < 4; ++r)
            if (A[r][c] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) throw std::logic_error("invert4: singular basis matrix");
        std::swap(A[c], A[piv]);
        Rat pv = A[c][c];
        for (int j = 0; j < 8; ++j) A[c][j] /= pv;
        for (int r = 0; r < 4; ++r) {
            if (r == c || A[r][c] == 0) continue;
            Rat f = A[r][c];
            for (int j = 0; j < 8; ++j) A[r][j] -= f * A[c][j];
        }
    }
    std::array<std::array<Rat, 4>, 4> inv{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) inv[i][j] = A[i][4 + j];
    return inv;
}

// order radicands by (|x|, negatives first) — the tie at equal absolute
// value can only be x vs -x
inline bool rad_key_less(long long x, long long y) {
    long long ax = std::llabs(x), ay = std::llabs(y);
    if (ax != ay) return ax < ay;
    return x < y;
}

} // namespace detail

// Validates one radicand of a generator pair.
inline void check_radicand(long long r) {
    if (r == 0 || r == 1)
        throw std::invalid_argument("radicand must not be 0 or 1");
    if (std::llabs(r) > 1000000)
        throw std::invalid_argument("|radicand| must be at most 10^6");
    if (!squarefree(Int(r)))
        throw std::invalid_argument("radicand " + std::to_string(r) + " is not squarefree (divisible by " +
                                    to_string(*square_divisor_witness(Int(r))) + "^2)");
}

inline Field classify_field(long long r1_in, long long r2_in) {
    check_radicand(r1_in);
    check_radicand(r2_in);
    if (r1_in == r2_in) throw std::invalid_argument("generators must be distinct radicands");
    if (r1_in > 0 && r2_in > 0)
        throw std::invalid_argument("field must be complex: generators cannot both be positive");

    // ------------------------------------------------------------------
    // canonical generator pair + class tag
    // ------------------------------------------------------------------
    long long d0 = std::gcd(std::llabs(r1_in), std::llabs(r2_in));
    long long third = (r1_in / d0) * (r2_in / d0);
    std::array<long long, 3> tri{r1_in, r2_in, third};
    std::sort(tri.begin(), tri.end(), detail::rad_key_less);

    long long m = 0, n = 0;
    std::string tag;
    int evens = 0;
    for (long long q : tri) evens += (mod4(q) == 2);

    if (evens == 0 && mod4(tri[0]) == 1 && mod4(tri[1]) == 1 && mod4(tri[2]) == 1) {
        // all radicands ≡ 1 (mod 4); two are negative, one positive
        std::array<long long, 2> neg{};
        long long pos = 0;
        int ni = 0;
        for (long long q : tri) (q < 0 ? neg[ni++] = q : pos = q);
        // candidate pairs: the two negatives (tag A) or one negative with
        // the positive (tag B); smallest (|m|, |n|) key wins
        struct Cand {
            long long k1, k2, m, n;
            const char* t;
        };
        std::array<Cand, 3> cs{{{std::llabs(neg[0]), std::llabs(neg[1]), neg[0], neg[1], "A(i)"},
                                {std::llabs(neg[0]), std::llabs(pos), neg[0], pos, "B(i)"},
                                {std::llabs(neg[1]), std::llabs(pos), neg[1], pos, "B(i)"}}};
        const Cand* best = &cs[0];
        for (const auto& c : cs)
            if (c.k1 < best->k1 || (c.k1 == best->k1 && c.k2 < best->k2)) best = &c;
        m = best->m;
        n = best->n;
        tag = best->t;
    } else if (evens == 2) {
        // even field: radicand residues {2, 2, odd}; the pair is the odd
        // radicand with the smaller-key even one, ordered by the case
        long long odd = 0;
        std::array<long long, 2> ev{};
        int ei = 0;
        for (long long q : tri) (mod4(q) == 2 ? ev[ei++] = q : odd = q);
        long long e = detail::rad_key_less(ev[0], ev[1]) ? ev[0] : ev[1];
        if (mod4(odd) == 1) {
            m = odd;
            n = e; // case (1,2): odd first
            tag = (m < 0 && n < 0) ? "A(ii)" : (m < 0 ? "B(ii)" : "C(ii)");
        } else {
            m = e;
            n = odd; // case (2,3): even first
            tag = (m < 0 && n < 0) ? "A(iii)" : (m < 0 ? "B(iii)" : "C(iii)");
        }
    } else {
        // odd field with residues {1, 3, 3}: pair the two ≡ 3 radicands,
        // negative generator first when the signs are mixed
        std::array<long long, 2> th{};
        int ti = 0;
        for (long long q : tri)
            if (mod4(q) == 3) th[ti++] = q;
        if (th[0] < 0 && th[1] < 0) {
            m = th[0];
            n = th[1];
            tag = "A(iv)";
        } else {
            m = th[0] < 0 ? th[0] : th[1];
            n = th[0] < 0 ? th[1] : th[0];
            tag = "B(iv)";
        }
    }

    static std::map<std::pair<long long, long long>, Field> memo;
    static std::mutex mx;
    std::lock_guard<std::mutex> lock(mx);
    auto key = std::make_pair(m, n);
    auto hit = memo.find(key);
    if (hit != memo.end()) return hit->second;

    // ------------------------------------------------------------------
    // integral basis over the canonical pair
    // ------------------------------------------------------------------
    auto F = std::make_shared<FieldData>();
    F->r1 = m;
    F->r2 = n;
    F->d = std::gcd(std::llabs(m), std::llabs(n));
    F->r3 = (m / F->d) * (n / F->d);
    F->tag = tag;

    const Rat h{1, 2}, q4{1, 4};
    auto vec = [](Rat a, Rat b, Rat c, Rat e) { return std::array<Rat, 4>{a, b, c, e}; };
    const auto one = vec(1, 0, 0, 0);
    if (tag == "A(i)" || tag == "B(i)") {
        auto H1 = vec(h, h, 0, 0);
        auto H2 = vec(h, 0, h, 0);
        // (1+w1)(1+w3)/4 = (1 + w1 + (r1/d) w2 + w3)/4
        auto P = vec(q4, q4, Rat(m / F->d) / 4, q4);
        F->basis = (tag == "A(i)") ? std::array<std::array<Rat, 4>, 4>{one, H1, H2, P}
                                   : std::array<std::array<Rat, 4>, 4>{one, P, H1, H2};
    } else if (tag == "A(ii)" || tag == "B(ii)" || tag == "C(ii)") {
        F->basis = {one, vec(h, h, 0, 0), vec(0, 0, 1, 0), vec(0, 0, h, h)};
    } else if (tag == "A(iii)" || tag == "B(iii)" || tag == "C(iii)") {
        F->basis = {one, vec(0, 1, 0, 0), vec(0, 0, 1, 0), vec(0, h, 0, h)};
    } else {
        F->basis = {one, vec(0, 1, 0, 0), vec(0, h, h, 0), vec(h, 0, 0, h)};
    }

    // invert the basis matrix (columns = basis vectors)
    std::array<std::array<Rat, 4>, 4> M{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) M[i][j] = F->basis[j][i];
    F->basis_inv = detail::invert4(M);

    // ------------------------------------------------------------------
    // construction-time verification
    // ------------------------------------------------------------------
    auto coords_of = [&](const std::array<Rat, 4>& e) {
        std::array<Rat, 4> x{};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) x[i] += F->basis_inv[i][j] * e[j];
        return x;
    };
    if (!(F->basis[0] == one)) throw std::logic_error("integral basis must start with 1");
    // ring closure with integer structure constants
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            auto prod = omega_mul(*F, F->basis[i], F->basis[j]);
            auto x = coords_of(prod);
            for (int k = 0; k < 4; ++k) {
                if (!is_integer(x[k]))
                    throw std::logic_error("integral basis is not multiplicatively closed");
                Int v = num(x[k]);
                if (abs(v) > (Int(1) << 50))
                    throw std::logic_error("structure constants out of range");
                F->sc[i][j][k] = static_cast<long long>(v);
            }
        }
    }
    // the power basis generators lie in the span
    for (int q = 1; q <= 3; ++q) {
        std::array<Rat, 4> w{};
        w[q] = 1;
        auto x = coords_of(w);
        for (int k = 0; k < 4; ++k)
            if (!is_integer(x[k])) throw std::logic_error("sqrt(r_i) escapes the integral basis");
    }
    // subfield traces of basis vectors are integral: Tr(B_i) into the
    // subfield Q(sqrt(r_q)) equals 2*c0 + 2*c_q*sqrt(r_q)
    for (int i = 0; i < 4; ++i) {
        for (int q = 1; q <= 3; ++q) {
            QuadElem tr = make_quad(F->radicand(q), 2 * F->basis[i][0], 2 * F->basis[i][q]);
            if (!is_integral(tr)) throw std::logic_error("subfield trace of basis vector not integral");
        }
    }

    Field handle = F;
    memo.emplace(key, handle);
    return handle;
}

// ---------------------------------------------------------------------------
// Elements
// ---------------------------------------------------------------------------

struct BiquadElem {
    Field K;
    std::array<Rat, 4> c{}; // coordinates over {1, w1, w2, w3}
};

inline bool same_field(const BiquadElem& x, const BiquadElem& y) {
    return x.K.get() == y.K.get() || (x.K->r1 == y.K->r1 && x.K->r2 == y.K->r2);
}

inline BiquadElem elem(Field K, std::array<Rat, 4> c) { return {std::move(K), std::move(c)}; }

inline BiquadElem integer_elem(Field K, const Int& v) {
    return {std::move(K), {Rat(v), 0, 0, 0}};
}

inline BiquadElem omega_elem(Field K, int q) {
    if (q < 1 || q > 3) throw std::invalid_argument("omega_elem: index must be 1, 2 or 3");
    std::array<Rat, 4> c{};
    c[q] = 1;
    return {std::move(K), c};
}

inline BiquadElem basis_elem(Field K, int i) {
    if (i < 0 || i > 3) throw std::invalid_argument("basis_elem: index must be 0..3");
    auto c = K->basis[i];
    return {std::move(K), c};
}

inline BiquadElem from_basis_coords(Field K, const std::array<Rat, 4>& x) {
    std::array<Rat, 4> c{};
    for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i) c[i] += x[j] * K->basis[j][i];
    return {std::move(K), c};
}

inline bool is_zero(const BiquadElem& x) {
    return x.c[0] == 0 && x.c[1] == 0 && x.c[2] == 0 && x.c[3] == 0;
}

inline bool operator==(const BiquadElem& x, const BiquadElem& y) {
    return same_field(x, y) && x.c == y.c;
}

inline BiquadElem operator+(const BiquadElem& x, const BiquadElem& y) {
    if (!same_field(x, y)) throw std::invalid_argument("elements from different fields");
    return {x.K, {x.c[0] + y.c[0], x.c[1] + y.c[1], x.c[2] + y.c[2], x.c[3] + y.c[3]}};
}

inline BiquadElem operator-(const BiquadElem& x, const BiquadElem& y) {
    if (!same_field(x, y)) throw std::invalid_argument("elements from different fields");
    return {x.K, {x.c[0] - y.c[0], x.c[1] - y.c[1], x.c[2] - y.c[2], x.c[3] - y.c[3]}};
}

inline BiquadElem operator-(const BiquadElem& x) {
    return {x.K, {-x.c[0], -x.c[1], -x.c[2], -x.c[3]}};
}

inline BiquadElem operator*(const BiquadElem& x, const BiquadElem& y) {
    if (!same_field(x, y)) throw std::invalid_argument("elements from different fields");
    return {x.K, omega_mul(*x.K, x.c, y.c)};
}

inline BiquadElem operator*(const Rat& s, const BiquadElem& x) {
    return {x.K, {s * x.c[0], s * x.c[1], s * x.c[2], s * x.c[3]}};
}

// Galois conjugation fixing the subfield Q(sqrt(r_q)): w_q stays, the other
// two power-basis radicals change sign.
inline BiquadElem sigma(const BiquadElem& x, int q) {
    if (q < 1 || q > 3) throw std::invalid_argument("sigma: index must be 1, 2 or 3");
    std::array<Rat, 4> c = x.c;
    for (int j = 1; j <= 3; ++j)
        if (j != q) c[j] = -c[j];
    return {x.K, c};
}

inline Rat trace_to_q(const BiquadElem& x) { return 4 * x.c[0]; }

// Tr_{K / Q(sqrt(r_q))}(x) = x + sigma_q(x) = 2*c0 + 2*c_q*sqrt(r_q)
inline QuadElem trace_to_subfield(const BiquadElem& x, int q) {
    if (q < 1 || q > 3) throw std::invalid_argument("trace_to_subfield: index must be 1, 2 or 3");
    return make_quad(x.K->radicand(q), 2 * x.c[0], 2 * x.c[q]);
}

inline std::array<Rat, 4> basis_coords(const BiquadElem& x) {
    std::array<Rat, 4> out{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out[i] += x.K->basis_inv[i][j] * x.c[j];
    return out;
}

inline std::optional<std::array<Int, 4>> integral_coords(const BiquadElem& x) {
    auto bc = basis_coords(x);
    std::array<Int, 4> out{};
    for (int i = 0; i < 4; ++i) {
        if (!is_integer(bc[i])) return std::nullopt;
        out[i] = num(bc[i]);
    }
    return out;
}

inline bool is_integral(const BiquadElem& x) { return integral_coords(x).has_value(); }

// A quadratic element embeds when its radicand is one of the three subfield
// radicands.
inline BiquadElem embed_quad(Field K, const QuadElem& e) {
    int q = (e.rad == K->r1) ? 1 : (e.rad == K->r2) ? 2 : (e.rad == K->r3) ? 3 : 0;
    if (q == 0)
        throw std::invalid_argument("embed_quad: radicand " + std::to_string(e.rad) +
                                    " is not a subfield radicand of this field");
    std::array<Rat, 4> c{};
    c[0] = e.a;
    c[q] = e.b;
    return {std::move(K), c};
}

inline std::string to_string(const BiquadElem& x) {
    if (is_zero(x)) return "0";
    std::string out;
    if (x.c[0] != 0) out = to_string(x.c[0]);
    for (int q = 1; q <= 3; ++q) {
        if (x.c[q] == 0) continue;
        std::string t = detail::radical_term(x.c[q], x.K->radicand(q));
        if (out.empty()) out = t;
        else if (t[0] == '-') out += " - " + t.substr(1);
        else out += " + " + t;
    }
    return out;
}

} // namespace biquad
