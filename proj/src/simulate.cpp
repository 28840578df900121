#include "ladder/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include "ladder/error.hpp"
#include "ladder/rng.hpp"

namespace ladder {

namespace {

struct Move {
    double cum;
    int shift;
    std::uint32_t to;
};

// Successor tables per index, cumulative probabilities normalized by the row mass.
class Sampler {
public:
    explicit Sampler(const StochasticChain& c) : rows_(c.dim()) {
        const RealMatrix* blocks[3] = {&c.minus, &c.zero, &c.plus};
        for (std::size_t i = 0; i < c.dim(); ++i) {
            double acc = 0;
            for (int s = -1; s <= 1; ++s)
                for (std::size_t j = 0; j < c.dim(); ++j) {
                    const double p = (*blocks[s + 1])(i, j);
                    if (p > 0) {
                        acc += p;
                        rows_[i].push_back({acc, s, static_cast<std::uint32_t>(j)});
                    }
                }
            for (auto& m : rows_[i]) m.cum /= acc;
        }
    }

    void check(std::size_t i) const {
        if (i >= rows_.size()) throw Error(ErrorKind::DimensionMismatch, fmt::format("state index {} out of range", i + 1));
        if (rows_[i].empty()) throw Error(ErrorKind::ZeroMassRow, fmt::format("state {} has no outgoing mass", i + 1));
    }

    void step(State& x, Xoshiro256& rng) const {
        const auto& row = rows_[x.index];
        const double u = rng.uniform();
        std::size_t k = 0;
        while (k + 1 < row.size() && row[k].cum <= u) ++k;
        x.level += row[k].shift;
        x.index = row[k].to;
    }

    void check_all() const {
        for (std::size_t i = 0; i < rows_.size(); ++i) check(i);
    }

private:
    std::vector<std::vector<Move>> rows_;
};

// First return time to start, or -1 if censored at horizon.
long one_return(const Sampler& s, State start, long horizon, std::uint64_t seed) {
    Xoshiro256 rng(seed);
    State x = start;
    for (long t = 1; t <= horizon; ++t) {
        s.step(x, rng);
        if (x == start) return t;
    }
    return -1;
}

std::vector<long> dyadic_points(long limit) {
    std::vector<long> pts;
    for (long n = 1; n <= limit; n *= 2) pts.push_back(n);
    return pts;
}

std::vector<double> one_diffusion(const Sampler& s, State start, const std::vector<long>& pts, std::uint64_t seed) {
    Xoshiro256 rng(seed);
    State x = start;
    std::vector<double> out;
    out.reserve(pts.size());
    long t = 0;
    for (long p : pts) {
        for (; t < p; ++t) s.step(x, rng);
        out.push_back(std::fabs(static_cast<double>(x.level - start.level)));
    }
    return out;
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double k = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= k;
    my /= k;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    return sxy / sxx;
}

ReturnStats summarize(const std::vector<long>& times, long horizon) {
    ReturnStats st;
    st.trials = static_cast<long>(times.size());
    st.horizon = horizon;
    std::vector<long> sorted;
    double total = 0;
    for (long t : times) {
        if (t < 0) {
            ++st.censored_count;
            total += static_cast<double>(horizon);
        } else {
            sorted.push_back(t);
            total += static_cast<double>(t);
        }
    }
    std::sort(sorted.begin(), sorted.end());
    st.returned_fraction = st.trials ? static_cast<double>(st.trials - st.censored_count) / static_cast<double>(st.trials) : 0.0;
    st.mean_return_time_censored = st.trials ? total / static_cast<double>(st.trials) : 0.0;
    for (double q : {0.1, 0.25, 0.5, 0.75, 0.9}) {
        // nearest-rank over all trials; censored trials rank last
        const long rank = static_cast<long>(std::ceil(q * static_cast<double>(st.trials)));
        Quantile qu{q, std::nullopt};
        if (rank >= 1 && rank <= static_cast<long>(sorted.size())) qu.value = sorted[static_cast<std::size_t>(rank - 1)];
        st.return_time_quantiles.push_back(qu);
    }
    std::vector<double> lx, ly;
    std::size_t k = 0;
    for (long t : dyadic_points(horizon)) {
        while (k < sorted.size() && sorted[k] <= t) ++k;
        const double frac = st.trials ? static_cast<double>(k) / static_cast<double>(st.trials) : 0.0;
        st.cdf.push_back({t, frac});
        const long survivors = st.trials - static_cast<long>(k);
        if (t >= 16 && survivors >= 20) {
            lx.push_back(std::log(static_cast<double>(t)));
            ly.push_back(std::log(static_cast<double>(survivors) / static_cast<double>(st.trials)));
        }
    }
    if (lx.size() >= 3) st.tail_exponent_estimate = -slope(lx, ly);
    return st;
}

Diffusion fit_diffusion(const std::vector<std::vector<double>>& per_trial, const std::vector<long>& pts) {
    Diffusion d;
    std::vector<double> lx, ly;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        double sum = 0;
        for (const auto& tr : per_trial) sum += tr[k];
        const double mean = per_trial.empty() ? 0.0 : sum / static_cast<double>(per_trial.size());
        d.mean_abs_level.push_back({pts[k], mean});
        if (pts[k] >= 16 && mean > 0) {
            lx.push_back(std::log(static_cast<double>(pts[k])));
            ly.push_back(std::log(mean));
        }
    }
    d.exponent = lx.size() >= 2 ? slope(lx, ly) : 0.0;
    return d;
}

void check_args(long horizon_or_steps, long trials, long min_len) {
    if (horizon_or_steps < min_len)
        throw Error(ErrorKind::ValidationFailed, fmt::format("simulation length must be at least {}", min_len));
    if (trials < 1) throw Error(ErrorKind::ValidationFailed, "trials must be at least 1");
}

}  // namespace

Trajectory simulate(const StochasticChain& chain, State start, long steps, std::uint64_t seed) {
    if (steps < 1) throw Error(ErrorKind::ValidationFailed, "steps must be at least 1");
    Sampler s(chain);
    s.check(start.index);
    Trajectory tr{start, {}, seed};
    tr.steps.reserve(static_cast<std::size_t>(steps));
    Xoshiro256 rng(seed);
    State x = start;
    for (long t = 0; t < steps; ++t) {
        s.check(x.index);
        s.step(x, rng);
        tr.steps.push_back(x);
    }
    return tr;
}

ReturnStats return_stats(const StochasticChain& chain, State start, long horizon, long trials, std::uint64_t seed) {
    check_args(horizon, trials, 2);
    Sampler s(chain);
    s.check_all();
    s.check(start.index);
    std::vector<long> times(static_cast<std::size_t>(trials));
#pragma omp parallel for schedule(dynamic, 1)
    for (long t = 0; t < trials; ++t)
        times[static_cast<std::size_t>(t)] = one_return(s, start, horizon, trial_seed(seed, static_cast<std::uint64_t>(t)));
    return summarize(times, horizon);
}

ReturnStats serial::return_stats(const StochasticChain& chain, State start, long horizon, long trials, std::uint64_t seed) {
    check_args(horizon, trials, 2);
    Sampler s(chain);
    s.check_all();
    s.check(start.index);
    std::vector<long> times(static_cast<std::size_t>(trials));
    for (long t = 0; t < trials; ++t)
        times[static_cast<std::size_t>(t)] = one_return(s, start, horizon, trial_seed(seed, static_cast<std::uint64_t>(t)));
    return summarize(times, horizon);
}

Diffusion diffusion_exponent(const StochasticChain& chain, State start, long steps, long trials, std::uint64_t seed) {
    check_args(steps, trials, 1000);
    Sampler s(chain);
    s.check_all();
    s.check(start.index);
    const auto pts = dyadic_points(steps);
    std::vector<std::vector<double>> per_trial(static_cast<std::size_t>(trials));
#pragma omp parallel for schedule(dynamic, 1)
    for (long t = 0; t < trials; ++t)
        per_trial[static_cast<std::size_t>(t)] = one_diffusion(s, start, pts, trial_seed(seed, static_cast<std::uint64_t>(t)));
    return fit_diffusion(per_trial, pts);
}

Diffusion serial::diffusion_exponent(const StochasticChain& chain, State start, long steps, long trials, std::uint64_t seed) {
    check_args(steps, trials, 1000);
    Sampler s(chain);
    s.check_all();
    s.check(start.index);
    const auto pts = dyadic_points(steps);
    std::vector<std::vector<double>> per_trial(static_cast<std::size_t>(trials));
    for (long t = 0; t < trials; ++t)
        per_trial[static_cast<std::size_t>(t)] = one_diffusion(s, start, pts, trial_seed(seed, static_cast<std::uint64_t>(t)));
    return fit_diffusion(per_trial, pts);
}

}  // namespace ladder
