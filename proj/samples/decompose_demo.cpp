// decompose_demo: a guided tour of the library on two small fields.
//
//   * Q(sqrt(-3), sqrt(5))  — every algebraic integer is a sum of squares;
//                             we decompose the half element (1+sqrt(-3))/2.
//   * Q(sqrt(5),  sqrt(-6)) — not every integer is, but four times any
//                             integer needs at most five squares.
//
// Build:  cmake --build build --target decompose_demo
#include <biquad/sos.hpp>

#include <cassert>
#include <cstdio>

using namespace biquad;

static void show(const SosRep& rep) {
    std::printf("  %s =\n", to_string(rep.target).c_str());
    for (const auto& s : rep.squares) std::printf("      + (%s)^2\n", to_string(s).c_str());
    assert(sos_verify(rep));
    std::printf("  %zu squares, re-verified exactly\n\n", rep.squares.size());
}

int main() {
    // --- a field where the square sums fill the whole ring of integers ---
    auto K = classify_field(-3, 5);
    std::printf("Q(sqrt(%lld), sqrt(%lld)): class %s, third radicand %lld\n", K->r1, K->r2,
                K->tag.c_str(), K->r3);
    std::printf("integral basis:\n");
    for (int i = 0; i < 4; ++i)
        std::printf("  B%d = %s\n", i, to_string(basis_elem(K, i)).c_str());
    std::printf("\n");

    // -1 itself is a sum of two squares here, which is what makes the
    // general decomposition possible
    auto eps = minus_one_rep(K);
    std::printf("-1 as a sum of %zu squares:\n", eps.size());
    for (const auto& e : eps) std::printf("      + (%s)^2\n", to_string(e).c_str());
    std::printf("\n");

    auto h = elem(K, {Rat(1, 2), Rat(1, 2), 0, 0}); // (1 + sqrt(-3))/2
    std::printf("decomposing the half element (1+sqrt(-3))/2:\n");
    show(decompose_any(h));

    // --- a field outside class (i): decompose 4*alpha instead -------------
    auto L = classify_field(5, -6);
    std::printf("Q(sqrt(%lld), sqrt(%lld)): class %s\n", L->r1, L->r2, L->tag.c_str());
    auto alpha = omega_elem(L, 2); // sqrt(-6)
    std::printf("decomposing 4*sqrt(-6):\n");
    show(decompose_4(alpha));

    // --- and an exhaustive cross-check on a tiny target -------------------
    auto B = build_biquad_box(K, 4);
    auto found = minimal_search(B, Rat(4) * h, 1, 3);
    assert(found && found->size() == 2);
    std::printf("exhaustive search: 4*(1+sqrt(-3))/2 needs exactly %zu squares:\n",
                found->size());
    for (const auto& e : *found) std::printf("      + (%s)^2\n", to_string(e).c_str());
    std::printf("\nall demo checks passed\n");
    return 0;
}
