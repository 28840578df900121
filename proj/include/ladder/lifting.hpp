#pragma once

#include "ladder/laurent.hpp"
#include "ladder/penner.hpp"
#include "ladder/real_matrix.hpp"

namespace ladder {

struct LiftedCurveSystem {
    CurveSystem base;
    IntMatrix sigma_within;  // level 0 against level 0
    IntMatrix sigma_cross;   // row at level 0 against column at level +1
};

// Throws Decomposition when the lifted data does not add up to the base system.
void check_lifted(const LiftedCurveSystem& ls);

// crossᵀ t^-1 + within + cross t
LaurentBlockMatrix lift_sigma(const LiftedCurveSystem& ls);
// prod_k (I + E_k sigma(t))^|delta_k| in word order.
LaurentBlockMatrix lift_penner_matrix(const LiftedCurveSystem& ls, const TwistWord& word);
LaurentBlockMatrix lift_penner_matrix_unchecked(const LaurentBlockMatrix& sigma_t, const TwistWord& word);

// Band-1 chain; block at +1 moves one level up.
struct ShiftChain {
    IntMatrix minus, zero, plus;

    std::size_t dim() const { return zero.rows(); }
    IntMatrix base() const { return mat_add(mat_add(minus, zero), plus); }
    LaurentBlockMatrix laurent() const;
    static ShiftChain from_laurent(const LaurentBlockMatrix& L);  // band must be <= 1
    bool operator==(const ShiftChain&) const = default;
};

// Groups `group` consecutive levels into one superlevel; 0 picks the band (at least 1).
// State (J, a*d + i) of the result is (J*group + a, i) of the original.
ShiftChain reblock(const LaurentBlockMatrix& L, std::size_t group = 0);
inline std::size_t literal_group(const LaurentBlockMatrix& L) { return 2 * static_cast<std::size_t>(L.band()) + 1; }

template <class M>
struct QbdBlocks {
    M corner, down, level, up;  // C, M0, M1, M2 (or B, Q0, Q1, Q2)
};

QbdBlocks<IntMatrix> qbd_fold(const ShiftChain& chain);
QbdBlocks<RealMatrix> qbd_fold(const RealMatrix& minus, const RealMatrix& zero, const RealMatrix& plus);

enum class Tri { False, True, Inconclusive };
const char* to_string(Tri t);

struct BandedVerdict {
    Tri verdict = Tri::Inconclusive;
    unsigned period = 0;  // 0 unless the window graph is strongly connected
    int window = 0;       // the smaller of the two widths compared
};

// Truncate to levels [-w, w]; true when every state on the middle levels [-w/2, w/2] lies in the
// strong component of (level 0, index 0). The verdict must agree at w and w + 1.
BandedVerdict banded_irreducible(const LaurentBlockMatrix& L, int window_levels);
BandedVerdict banded_irreducible(const ShiftChain& chain, int window_levels);
// Doubles the window on Inconclusive up to max_window.
BandedVerdict banded_irreducible_widening(const ShiftChain& chain, int window_levels, int max_window = 256);

// Window digraph of the folded chain on levels 0..levels-1 (used for the period report).
unsigned folded_period(const ShiftChain& chain, int levels);

}  // namespace ladder
