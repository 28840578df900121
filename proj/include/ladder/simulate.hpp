#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ladder/classify.hpp"

namespace ladder {

struct State {
    std::size_t index = 0;
    long level = 0;
    bool operator==(const State&) const = default;
};

struct Trajectory {
    State start;
    std::vector<State> steps;
    std::uint64_t seed = 0;
};

Trajectory simulate(const StochasticChain& chain, State start, long steps, std::uint64_t seed);

struct Quantile {
    double q;
    std::optional<long> value;  // empty when the quantile falls among censored trials
};

struct ReturnStats {
    long trials = 0;
    long horizon = 0;
    double returned_fraction = 0;
    long censored_count = 0;
    std::vector<Quantile> return_time_quantiles;
    double mean_return_time_censored = 0;
    std::optional<double> tail_exponent_estimate;  // alpha in P(T > t) ~ t^-alpha
    std::vector<std::pair<long, double>> cdf;      // (t, fraction returned by t), dyadic t
};

inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) { return seed ^ trial; }

// Trials run under OpenMP; results are reduced in trial order.
ReturnStats return_stats(const StochasticChain& chain, State start, long horizon, long trials, std::uint64_t seed);

struct Diffusion {
    double exponent = 0;
    std::vector<std::pair<long, double>> mean_abs_level;  // (n, E|level_n - level_0|), dyadic n
};

Diffusion diffusion_exponent(const StochasticChain& chain, State start, long steps, long trials, std::uint64_t seed);

namespace serial {
ReturnStats return_stats(const StochasticChain& chain, State start, long horizon, long trials, std::uint64_t seed);
Diffusion diffusion_exponent(const StochasticChain& chain, State start, long steps, long trials, std::uint64_t seed);
}

}  // namespace ladder
