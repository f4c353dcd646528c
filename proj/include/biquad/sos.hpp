#pragma once

// Sums of integral squares in complex biquadratic fields.
//
// The engine has three moving parts:
//
//   * a representation of -1 with s squares, pulled from the better of the
//     field's two imaginary quadratic subfields (s <= 4 always);
//
//   * a compression step: for any finite list of integral squares with sum
//     of terms S and sum of pairwise products P = (S^2 + Q)/2 (diagonal
//     included, Q the represented value), the elements
//         g1 = S + P + 1,   g2 = S + P,   g3 = S + 1
//     satisfy g1^2 - g2^2 - g3^2 = Q identically; the two negated squares
//     fold into the minus-one representation, and the two-square product
//     identity (a^2+b^2)(x^2+y^2) = (ax+by)^2 + (ay-bx)^2 pairs the terms
//     down to s+1 squares for even s, s+2 for odd s;
//
//   * per-class decompositions: over a class-(i) field every algebraic
//     integer decomposes along the integral basis (each basis vector is a
//     product of half-integer squares), and over any complex biquadratic
//     field 4*alpha decomposes through 2*w = (1+w)^2 - (1+w^2).
//
// Everything is exact; each public entry point re-verifies what it built.

#include "biquadratic.hpp"

#include <set>

namespace biquad {

struct SosRep {
    Field K;
    BiquadElem target;
    std::vector<BiquadElem> squares;
};

inline bool sos_verify(const SosRep& rep) {
    if (!rep.K || !rep.target.K || !same_field(rep.target, integer_elem(rep.K, 0))) return false;
    BiquadElem sum = integer_elem(rep.K, 0);
    for (const auto& s : rep.squares) {
        if (!s.K || !same_field(s, rep.target)) return false;
        sum = sum + s * s;
    }
    return sum == rep.target;
}

// product of two square lists: (sum a_i^2)(sum b_j^2) = sum_{i,j} (a_i b_j)^2
inline std::vector<BiquadElem> sos_mul(const std::vector<BiquadElem>& a,
                                       const std::vector<BiquadElem>& b) {
    std::vector<BiquadElem> out;
    out.reserve(a.size() * b.size());
    for (const auto& x : a)
        for (const auto& y : b) out.push_back(x * y);
    return out;
}

// number of squares compression emits, given an s-term minus-one rep
inline int compressed_length(int s) { return s + 1 + (s % 2); }

// Shortest known representation of -1 over the ring, taken from the better
// of the two imaginary quadratic subfields; ties go to the smaller |D|.
inline std::vector<BiquadElem> minus_one_rep(const Field& K) {
    std::array<long long, 2> D{};
    int nd = 0;
    for (int q = 1; q <= 3; ++q)
        if (K->radicand(q) < 0) D[nd++] = -K->radicand(q);
    if (nd != 2) throw std::logic_error("complex field must have two imaginary subfields");
    std::sort(D.begin(), D.end());
    const auto& a = minus_one_rep_quad(D[0]);
    const auto& b = minus_one_rep_quad(D[1]);
    const auto& best = (b.size() < a.size()) ? b : a;
    std::vector<BiquadElem> out;
    out.reserve(best.size());
    for (const auto& e : best) out.push_back(embed_quad(K, e));
    return out;
}

// rational integer k as a sum of squares: Lagrange for k >= 0, otherwise
// |k| tensored with the minus-one representation
inline std::vector<BiquadElem> int_rep(const Field& K, const Int& k) {
    std::vector<BiquadElem> out;
    if (k >= 0) {
        for (const Int& t : four_square(k)) out.push_back(integer_elem(K, t));
        return out;
    }
    std::vector<BiquadElem> pos;
    for (const Int& t : four_square(-k)) pos.push_back(integer_elem(K, t));
    return sos_mul(pos, minus_one_rep(K));
}

// H = (1+sqrt(r))/2 for r = 1 (mod 4) satisfies H^2 = H + (r-1)/4, so
// H = H^2 + (1-r)/4 is a sum of squares once the integer part is expanded
inline std::vector<BiquadElem> half_basis_rep(const Field& K, long long r) {
    int q = (r == K->r1) ? 1 : (r == K->r2) ? 2 : (r == K->r3) ? 3 : 0;
    if (q == 0 || mod4(r) != 1)
        throw std::invalid_argument("half_basis_rep: radicand must be a subfield radicand = 1 (mod 4)");
    std::array<Rat, 4> c{};
    c[0] = Rat(1, 2);
    c[q] = Rat(1, 2);
    std::vector<BiquadElem> out{elem(K, c)};
    auto tail = int_rep(K, Int((1 - r) / 4));
    out.insert(out.end(), tail.begin(), tail.end());
    return out;
}

// 2*sqrt(r_q) = (1 + sqrt(r_q))^2 - (1 + r_q)
inline std::vector<BiquadElem> two_sqrt_rep(const Field& K, int q) {
    if (q < 1 || q > 3) throw std::invalid_argument("two_sqrt_rep: index must be 1, 2 or 3");
    std::array<Rat, 4> c{};
    c[0] = 1;
    c[q] = 1;
    std::vector<BiquadElem> out{elem(K, c)};
    auto tail = int_rep(K, Int(-(1 + K->radicand(q))));
    out.insert(out.end(), tail.begin(), tail.end());
    return out;
}

// Compress an arbitrary list of integral squares to the bounded form.  The
// input list is only read for its sum and pairwise products; the output
// represents the same value with at most compressed_length(s) squares.
inline std::vector<BiquadElem> compress(const Field& K, const std::vector<BiquadElem>& beta) {
    const BiquadElem zero = integer_elem(K, 0), one = integer_elem(K, 1);
    BiquadElem S = zero, Q = zero;
    for (const auto& b : beta) {
        S = S + b;
        Q = Q + b * b;
    }
    BiquadElem P = Rat(1, 2) * (S * S + Q);
    BiquadElem g1 = S + P + one, g2 = S + P, g3 = S + one;
    if (!(g1 * g1 - g2 * g2 - g3 * g3 == Q))
        throw std::logic_error("compression identity failed");
    auto eps = minus_one_rep(K);
    std::vector<BiquadElem> out{g1};
    for (std::size_t i = 0; i < eps.size(); i += 2) {
        if (i + 1 < eps.size()) {
            out.push_back(eps[i] * g2 + eps[i + 1] * g3);
            out.push_back(eps[i] * g3 - eps[i + 1] * g2);
        } else {
            out.push_back(eps[i] * g2);
            out.push_back(eps[i] * g3);
        }
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const BiquadElem& e) { return is_zero(e); }),
              out.end());
    BiquadElem check = zero;
    for (const auto& e : out) check = check + e * e;
    if (!(check == Q)) throw std::logic_error("compressed representation failed re-verification");
    return out;
}

// the three g's of the compression step, exposed for direct inspection
inline std::array<BiquadElem, 3> compress_gammas(const Field& K,
                                                 const std::vector<BiquadElem>& beta) {
    const BiquadElem one = integer_elem(K, 1);
    BiquadElem S = integer_elem(K, 0), Q = integer_elem(K, 0);
    for (const auto& b : beta) {
        S = S + b;
        Q = Q + b * b;
    }
    BiquadElem P = Rat(1, 2) * (S * S + Q);
    return {S + P + one, S + P, S + one};
}

// ---------------------------------------------------------------------------
// Decompositions
// ---------------------------------------------------------------------------

// Every algebraic integer of a class-(i) field is a sum of integral squares.
// The basis vectors are 1, H_m = (1+sqrt(m))/2, H_n and the quarter element
// (1+sqrt(m))(1+sqrt(r3))/4 = H_m * H_{r3}; each coordinate contributes its
// integer representation tensored with the basis vector's own, and the
// concatenation is compressed.
inline SosRep decompose_any(const BiquadElem& alpha) {
    if (!alpha.K) throw std::invalid_argument("element has no field attached");
    const Field& K = alpha.K;
    if (!K->is_class_one())
        throw wrong_class_error("decompose_any needs all three radicands = 1 (mod 4); field (" +
                                std::to_string(K->r1) + ", " + std::to_string(K->r2) + ") is class " +
                                K->tag);
    auto xc = integral_coords(alpha);
    if (!xc) throw std::invalid_argument("element is not an algebraic integer");

    SosRep rep{K, alpha, {}};
    if (is_zero(alpha)) return rep;
    const int s = static_cast<int>(minus_one_rep(K).size());

    if (alpha.c[1] == 0 && alpha.c[2] == 0 && alpha.c[3] == 0) {
        // rational integer shortcuts
        Int k = num(alpha.c[0]);
        if (k == -1) {
            rep.squares = minus_one_rep(K);
            return rep;
        }
        Int rt;
        if (k > 0 && is_square(k, &rt)) {
            rep.squares = {integer_elem(K, rt)};
            return rep;
        }
        auto raw = int_rep(K, k);
        rep.squares = (static_cast<int>(raw.size()) > compressed_length(s)) ? compress(K, raw)
                                                                            : std::move(raw);
        return rep;
    }

    std::vector<BiquadElem> one_rep{integer_elem(K, 1)};
    auto hm = half_basis_rep(K, K->r1);
    auto hn = half_basis_rep(K, K->r2);
    auto quarter = sos_mul(half_basis_rep(K, K->r1), half_basis_rep(K, K->r3));
    std::array<const std::vector<BiquadElem>*, 4> breps{};
    if (K->tag == "A(i)") breps = {&one_rep, &hm, &hn, &quarter};
    else breps = {&one_rep, &quarter, &hm, &hn};

    std::vector<BiquadElem> raw;
    for (int j = 0; j < 4; ++j) {
        if ((*xc)[j] == 0) continue;
        auto part = sos_mul(int_rep(K, (*xc)[j]), *breps[j]);
        raw.insert(raw.end(), part.begin(), part.end());
    }
    rep.squares = compress(K, raw);
    return rep;
}

// 4*alpha is a sum of at most five integral squares for every algebraic
// integer alpha, over every complex biquadratic field.  Class (i) fields
// reuse the full decomposition; elsewhere the doubled coordinates are
// integers and 4*alpha = 4*c0 + sum 2c_q * (2*sqrt(r_q)).
inline SosRep decompose_4(const BiquadElem& alpha) {
    if (!alpha.K) throw std::invalid_argument("element has no field attached");
    const Field& K = alpha.K;
    auto xc = integral_coords(alpha);
    if (!xc) throw std::invalid_argument("element is not an algebraic integer");

    if (K->is_class_one()) return decompose_any(Rat(4) * alpha);

    SosRep rep{K, Rat(4) * alpha, {}};
    if (is_zero(alpha)) return rep;
    const int s = static_cast<int>(minus_one_rep(K).size());

    if (alpha.c[1] == 0 && alpha.c[2] == 0 && alpha.c[3] == 0) {
        Int k = num(alpha.c[0]);
        Int rt;
        if (k > 0 && is_square(k, &rt)) {
            rep.squares = {integer_elem(K, 2 * rt)};
            return rep;
        }
        auto raw = int_rep(K, 4 * k);
        rep.squares = (static_cast<int>(raw.size()) > compressed_length(s)) ? compress(K, raw)
                                                                            : std::move(raw);
        return rep;
    }

    std::array<Int, 4> twoc{};
    for (int j = 0; j < 4; ++j) {
        Rat t = 2 * alpha.c[j];
        if (!is_integer(t))
            throw std::logic_error("integral element has non-half coordinates outside class (i)");
        twoc[j] = num(t);
    }
    std::vector<BiquadElem> raw = int_rep(K, 2 * twoc[0]); // 4*c0
    for (int q = 1; q <= 3; ++q) {
        if (twoc[q] == 0) continue;
        auto part = sos_mul(int_rep(K, twoc[q]), two_sqrt_rep(K, q));
        raw.insert(raw.end(), part.begin(), part.end());
    }
    rep.squares = compress(K, raw);
    return rep;
}

// ---------------------------------------------------------------------------
// Exhaustive shortest-representation search
// ---------------------------------------------------------------------------

// Candidates are integral elements with basis coordinates in a box, stored
// sign-canonically (squares are sign-blind).  Squares are computed once with
// the integer structure constants; everything stays in 64-bit range under
// the guards below, and any witness is re-verified with exact arithmetic.
struct BiquadSearchBox {
    Field K;
    long long box = 0;
    std::vector<std::array<long long, 4>> cand; // (height, lex)-sorted coordinate vectors
    std::vector<std::array<long long, 4>> sq;   // basis coordinates of cand[i]^2
    struct Key4Hash {
        std::size_t operator()(const std::array<long long, 4>& a) const {
            std::uint64_t h = 0xcbf29ce484222325ull;
            for (long long v : a) {
                h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
                h *= 0x100000001b3ull;
            }
            return static_cast<std::size_t>(h);
        }
    };
    std::unordered_map<std::array<long long, 4>, std::vector<int>, Key4Hash> producers;
};

inline BiquadSearchBox build_biquad_box(const Field& K, long long box) {
    if (box < 1 || box > 1024) throw std::invalid_argument("search box must be in [1, 1024]");
    long long scmax = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k) scmax = std::max(scmax, std::llabs(K->sc[i][j][k]));
    if (scmax > (1ll << 30))
        throw search_limit_error("structure constants too large for the 64-bit search path");

    BiquadSearchBox B;
    B.K = K;
    B.box = box;
    std::array<long long, 4> v{};
    for (v[0] = -box; v[0] <= box; ++v[0])
        for (v[1] = -box; v[1] <= box; ++v[1])
            for (v[2] = -box; v[2] <= box; ++v[2])
                for (v[3] = -box; v[3] <= box; ++v[3]) {
                    long long lead = 0;
                    for (long long c : v)
                        if (c != 0) {
                            lead = c;
                            break;
                        }
                    if (lead <= 0) continue; // zero vector or non-canonical sign
                    B.cand.push_back(v);
                }
    auto height = [](const std::array<long long, 4>& a) {
        long long h = 0;
        for (long long c : a) h = std::max(h, std::llabs(c));
        return h;
    };
    std::sort(B.cand.begin(), B.cand.end(),
              [&](const auto& a, const auto& b) {
                  long long ha = height(a), hb = height(b);
                  if (ha != hb) return ha < hb;
                  return a < b;
              });
    B.sq.resize(B.cand.size());
    for (std::size_t idx = 0; idx < B.cand.size(); ++idx) {
        const auto& c = B.cand[idx];
        std::array<long long, 4> s{};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                long long cij = c[i] * c[j];
                if (cij == 0) continue;
                for (int k = 0; k < 4; ++k) s[k] += cij * K->sc[i][j][k];
            }
        B.sq[idx] = s;
        B.producers[s].push_back(static_cast<int>(idx)); // ascending by construction
    }
    return B;
}

namespace detail {

inline bool biquad_search_rec(const BiquadSearchBox& B, std::array<long long, 4>& rem, int slots,
                              int start, std::vector<int>& pick) {
    if (slots == 1) {
        auto it = B.producers.find(rem);
        if (it == B.producers.end()) return false;
        const auto& v = it->second;
        auto lo = std::lower_bound(v.begin(), v.end(), start);
        if (lo == v.end()) return false;
        pick.push_back(*lo);
        return true;
    }
    for (int i = start; i < static_cast<int>(B.cand.size()); ++i) {
        pick.push_back(i);
        for (int k = 0; k < 4; ++k) rem[k] -= B.sq[i][k];
        if (biquad_search_rec(B, rem, slots - 1, i, pick)) return true;
        for (int k = 0; k < 4; ++k) rem[k] += B.sq[i][k];
        pick.pop_back();
    }
    return false;
}

} // namespace detail

// Shortest representation of the target within the box, scanning lengths
// min_len..max_len in order; a found witness is therefore length-minimal
// among representations whose terms all lie in the box.  Exact arithmetic
// re-checks the witness before it is returned.
inline std::optional<std::vector<BiquadElem>> minimal_search(const BiquadSearchBox& B,
                                                             const BiquadElem& target, int min_len,
                                                             int max_len) {
    if (!B.K || !same_field(target, integer_elem(B.K, 0)))
        throw std::invalid_argument("search target must live in the box's field");
    if (min_len < 1 || max_len < min_len || max_len > 8)
        throw std::invalid_argument("search lengths must satisfy 1 <= min <= max <= 8");
    auto tc = integral_coords(target);
    if (!tc) throw std::invalid_argument("search target must be an algebraic integer");
    std::array<long long, 4> t{};
    for (int j = 0; j < 4; ++j) {
        if (abs((*tc)[j]) > (Int(1) << 40))
            throw search_limit_error("search target coordinates exceed the 64-bit guard");
        t[j] = static_cast<long long>((*tc)[j]);
    }
    if (is_zero(target)) return std::vector<BiquadElem>{};

    for (int len = min_len; len <= max_len; ++len) {
        std::array<long long, 4> rem = t;
        std::vector<int> pick;
        if (detail::biquad_search_rec(B, rem, len, 0, pick)) {
            std::vector<BiquadElem> out;
            BiquadElem sum = integer_elem(B.K, 0);
            for (int idx : pick) {
                std::array<Rat, 4> bc;
                for (int j = 0; j < 4; ++j) bc[j] = Rat(B.cand[idx][j]);
                auto e = from_basis_coords(B.K, bc);
                out.push_back(e);
                sum = sum + e * e;
            }
            if (!(sum == target))
                throw std::logic_error("search witness failed exact re-verification");
            return out;
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Field survey
// ---------------------------------------------------------------------------

struct SurveyRow {
    long long r1 = 0, r2 = 0;
    std::string class_tag;
    int s_classifier = 0;    // min of the transcribed per-subfield rule
    int s_oracle = 0;        // length of the constructed minus-one representation
    int max_decomp4_len = 0; // observed maximum over the random sample
    int sample_size = 0;
    bool discrepancy_flag = false;
};

// Walks every canonical field with |radicand| <= rmax, compares the
// transcribed minus-one-length rule against the constructed representation,
// and stress-tests decompose_4 on random integral elements (basis
// coordinates uniform in [-10, 10], per-field deterministic streams).
inline std::vector<SurveyRow> run_survey(long long rmax, int samples, std::uint64_t seed) {
    if (rmax < 2 || rmax > 200) throw std::invalid_argument("survey radicand bound must be in [2, 200]");
    if (samples < 0 || samples > 10000)
        throw std::invalid_argument("survey sample count must be in [0, 10000]");

    std::set<std::pair<long long, long long>> seen;
    std::vector<SurveyRow> rows;
    for (long long a = -rmax; a <= rmax; ++a) {
        if (a == 0 || a == 1 || !squarefree(Int(a))) continue;
        for (long long b = a + 1; b <= rmax; ++b) {
            if (b == 0 || b == 1 || !squarefree(Int(b))) continue;
            if (a > 0 && b > 0) continue;
            auto K = classify_field(a, b);
            if (!seen.insert({K->r1, K->r2}).second) continue;

            SurveyRow row;
            row.r1 = K->r1;
            row.r2 = K->r2;
            row.class_tag = K->tag;
            int sc = 5;
            for (int q = 1; q <= 3; ++q)
                if (K->radicand(q) < 0) sc = std::min(sc, moser_s_ring(-K->radicand(q)));
            row.s_classifier = sc;
            row.s_oracle = static_cast<int>(minus_one_rep(K).size());
            row.discrepancy_flag = (row.s_oracle != row.s_classifier);
            row.sample_size = samples;

            SplitMix64 rng(derive_seed(seed, K->r1, K->r2));
            for (int t = 0; t < samples; ++t) {
                std::array<Rat, 4> bc;
                for (auto& v : bc) v = Rat(rng.uniform(-10, 10));
                auto rep = decompose_4(from_basis_coords(K, bc));
                if (!sos_verify(rep)) throw std::logic_error("survey hit an unverifiable decomposition");
                row.max_decomp4_len = std::max(row.max_decomp4_len,
                                               static_cast<int>(rep.squares.size()));
            }
            rows.push_back(std::move(row));
        }
    }
    std::sort(rows.begin(), rows.end(), [](const SurveyRow& x, const SurveyRow& y) {
        return std::make_pair(x.r1, x.r2) < std::make_pair(y.r1, y.r2);
    });
    return rows;
}

} // namespace biquad
