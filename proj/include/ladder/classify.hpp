#pragma once

#include <string>
#include <vector>

#include "ladder/lifting.hpp"
#include "ladder/perron.hpp"
#include "ladder/real_matrix.hpp"

namespace ladder {

struct ParryData {
    RealMatrix P;
    std::vector<double> p;
};

// P_ij = A_ij v_j / (lambda v_i), p_i = u_i v_i / (u.v).
ParryData parry(const IntMatrix& A, const PerronData& pd);

struct StochasticChain {
    RealMatrix minus, zero, plus;
    std::size_t dim() const { return zero.rows; }
};

StochasticChain lift_stochastic(const ShiftChain& chain, const PerronData& pd);

enum class Verdict { Transient, NullRecurrent, Reducible };
const char* to_string(Verdict v);
// Reports carry this instead of ever emitting a positive-recurrent verdict.
inline constexpr const char* kPositiveRecurrentNote =
    "PositiveRecurrent is impossible for these lifts: the drift test only separates null recurrence from transience";

struct Classification {
    Verdict verdict = Verdict::Reducible;
    double drift_left = 0;   // u A_-1 v
    double drift_right = 0;  // u A_1 v
    double tolerance = 0;
    unsigned period = 0;
    bool exact_symmetric = false;  // decided by A0 = A0ᵀ, A1 = A-1ᵀ
    BandedVerdict banded;
};

// Throws Inconclusive if the banded check never stabilizes.
Classification classify_drift(const ShiftChain& chain, const PerronData& pd, double tol = 1e-9, int window = 8);

struct ReturnSeries {
    std::size_t index = 0;
    long level = 0;
    double lambda = 0;
    std::vector<BigInt> a;  // a[n-1] = loops of length n
    std::vector<BigInt> f;  // first returns
    std::vector<double> partial_sums;
    unsigned period = 0;    // gcd of n with a_n > 0, 0 if none
};

inline constexpr int kSeriesCap = 64;

// Row propagation of e_x through the chain, exact; OpenMP over levels.
ReturnSeries return_series(const ShiftChain& chain, const PerronData& pd, std::size_t index, long level, int N,
                           int cap = kSeriesCap);

namespace serial {
// a_n straight from successive Laurent powers.
std::vector<BigInt> return_counts(const ShiftChain& chain, std::size_t index, int N);
std::vector<BigInt> return_counts_propagated(const ShiftChain& chain, std::size_t index, int N);
}

struct SeriesVerdict {
    bool tends_to_one = false;
    double plateau = 0;     // extrapolated limit of the partial sums
    double ratio = 0;       // fitted per-step decay of a_n / lambda^n beyond n^-1/2
    double last_partial = 0;
};

inline constexpr double kPlateauThreshold = 0.95;

// Tail fit of log(a_n / lambda^n) + log(n)/2 = c + n log r over n in (N/2, N] on the period class.
SeriesVerdict series_verdict(const ReturnSeries& rs);

double entropy(const PerronData& pd);

}  // namespace ladder
