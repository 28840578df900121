#include "ladder/classify.hpp"

#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "ladder/error.hpp"
#include "ladder/graph.hpp"

namespace ladder {

ParryData parry(const IntMatrix& A, const PerronData& pd) {
    if (!strongly_connected(A)) throw Error(ErrorKind::Reducible, "parry: matrix is not irreducible");
    const std::size_t n = A.rows();
    if (pd.u.size() != n || pd.v.size() != n) throw Error(ErrorKind::DimensionMismatch, "parry: Perron data has wrong size");
    if (!(pd.residual <= 1e-9))
        throw Error(ErrorKind::NonConvergence, fmt::format("parry: Perron residual {} too large", pd.residual));
    ParryData out{RealMatrix(n, n), std::vector<double>(n)};
    double dot = 0;
    for (std::size_t i = 0; i < n; ++i) dot += pd.u[i] * pd.v[i];
    for (std::size_t i = 0; i < n; ++i) {
        out.p[i] = pd.u[i] * pd.v[i] / dot;
        for (std::size_t j = 0; j < n; ++j)
            if (sgn(A(i, j)) > 0) out.P.at(i, j) = A(i, j).get_d() * pd.v[j] / (pd.lambda * pd.v[i]);
    }
    return out;
}

StochasticChain lift_stochastic(const ShiftChain& chain, const PerronData& pd) {
    const std::size_t d = chain.dim();
    if (pd.v.size() != d) throw Error(ErrorKind::DimensionMismatch, "lift_stochastic: Perron data has wrong size");
    if (!strongly_connected(chain.base())) throw Error(ErrorKind::Reducible, "lift_stochastic: base matrix is reducible");
    auto conv = [&](const IntMatrix& B) {
        RealMatrix R(d, d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                if (sgn(B(i, j)) > 0) R.at(i, j) = B(i, j).get_d() * pd.v[j] / (pd.lambda * pd.v[i]);
        return R;
    };
    return {conv(chain.minus), conv(chain.zero), conv(chain.plus)};
}

const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::Transient: return "Transient";
    case Verdict::NullRecurrent: return "NullRecurrent";
    case Verdict::Reducible: return "Reducible";
    }
    return "?";
}

namespace {

double bilinear(const std::vector<double>& u, const IntMatrix& B, const std::vector<double>& v) {
    long double s = 0;
    for (std::size_t i = 0; i < B.rows(); ++i)
        for (std::size_t j = 0; j < B.cols(); ++j)
            if (sgn(B(i, j)) > 0) s += static_cast<long double>(u[i]) * B(i, j).get_d() * v[j];
    return static_cast<double>(s);
}

}  // namespace

Classification classify_drift(const ShiftChain& chain, const PerronData& pd, double tol, int window) {
    Classification c;
    c.tolerance = tol;
    c.drift_left = bilinear(pd.u, chain.minus, pd.v);
    c.drift_right = bilinear(pd.u, chain.plus, pd.v);
    c.banded = banded_irreducible_widening(chain, window);
    if (c.banded.verdict == Tri::Inconclusive)
        throw Error(ErrorKind::Inconclusive, "banded irreducibility check did not stabilize");
    if (c.banded.verdict == Tri::False) {
        c.verdict = Verdict::Reducible;
        return c;
    }
    c.period = folded_period(chain, 2 * c.banded.window + 2);
    if (chain.zero.is_symmetric() && chain.plus == chain.minus.transpose()) {
        c.exact_symmetric = true;
        c.verdict = Verdict::NullRecurrent;
        return c;
    }
    const double mx = std::max(c.drift_left, c.drift_right);
    const bool balanced = c.drift_left > 0 && c.drift_right > 0 && std::fabs(c.drift_left - c.drift_right) <= tol * mx;
    c.verdict = balanced ? Verdict::NullRecurrent : Verdict::Transient;
    return c;
}

namespace {

void check_state(const ShiftChain& chain, std::size_t index) {
    if (index >= chain.dim())
        throw Error(ErrorKind::DimensionMismatch, fmt::format("state index {} outside 1..{}", index + 1, chain.dim()));
}

// r(level, j) for levels -n..n stored at offset n; one step of r <- r * A(t).
void propagate(const ShiftChain& c, const std::vector<BigInt>& r, std::vector<BigInt>& next, int n, bool parallel) {
    const std::size_t d = c.dim();
    const int width = 2 * n + 1;  // output levels -n..n; input levels -(n-1)..(n-1)
    const IntMatrix* blocks[3] = {&c.minus, &c.zero, &c.plus};
    next.assign(static_cast<std::size_t>(width) * d, BigInt(0));
    auto body = [&](int out) {
        const int L = out - n;
        for (int s = -1; s <= 1; ++s) {
            const int from = L - s;
            if (from < -(n - 1) || from > n - 1) continue;
            const IntMatrix& B = *blocks[s + 1];
            const std::size_t base = static_cast<std::size_t>(from + n - 1) * d;
            for (std::size_t i = 0; i < d; ++i) {
                const BigInt& x = r[base + i];
                if (sgn(x) == 0) continue;
                for (std::size_t j = 0; j < d; ++j)
                    if (sgn(B(i, j)) > 0)
                        mpz_addmul(next[static_cast<std::size_t>(out) * d + j].get_mpz_t(), x.get_mpz_t(),
                                   B(i, j).get_mpz_t());
            }
        }
    };
    if (parallel) {
#pragma omp parallel for schedule(dynamic, 4)
        for (int out = 0; out < width; ++out) body(out);
    } else {
        for (int out = 0; out < width; ++out) body(out);
    }
}

std::vector<BigInt> counts_by_propagation(const ShiftChain& chain, std::size_t index, int N, bool parallel) {
    const std::size_t d = chain.dim();
    std::vector<BigInt> r(d, BigInt(0)), next;
    r[index] = 1;
    std::vector<BigInt> a;
    for (int n = 1; n <= N; ++n) {
        propagate(chain, r, next, n, parallel);
        r.swap(next);
        a.push_back(r[static_cast<std::size_t>(n) * d + index]);
    }
    return a;
}

// x / lambda^n without overflowing doubles.
double scaled(const BigInt& x, int n, double log2_lambda) {
    if (sgn(x) == 0) return 0.0;
    long e = 0;
    double m = mpz_get_d_2exp(&e, x.get_mpz_t());
    return std::ldexp(m, 0) * std::exp2(static_cast<double>(e) - n * log2_lambda);
}

double log_scaled(const BigInt& x, int n, double log_lambda) {
    long e = 0;
    double m = mpz_get_d_2exp(&e, x.get_mpz_t());
    return std::log(m) + static_cast<double>(e) * std::log(2.0) - n * log_lambda;
}

}  // namespace

std::vector<BigInt> serial::return_counts(const ShiftChain& chain, std::size_t index, int N) {
    check_state(chain, index);
    const LaurentBlockMatrix A = chain.laurent();
    LaurentBlockMatrix power = LaurentBlockMatrix::identity(chain.dim());
    std::vector<BigInt> a;
    for (int n = 1; n <= N; ++n) {
        power = serial::laurent_mul(power, A);
        a.push_back(power.block(0)(index, index));
    }
    return a;
}

std::vector<BigInt> serial::return_counts_propagated(const ShiftChain& chain, std::size_t index, int N) {
    check_state(chain, index);
    return counts_by_propagation(chain, index, N, false);
}

ReturnSeries return_series(const ShiftChain& chain, const PerronData& pd, std::size_t index, long level, int N, int cap) {
    if (N > cap) throw Error(ErrorKind::CapExceeded, fmt::format("series length {} exceeds the cap {}", N, cap));
    if (N < 0) throw Error(ErrorKind::ValidationFailed, "series length must be nonnegative");
    check_state(chain, index);
    ReturnSeries rs;
    rs.index = index;
    rs.level = level;  // translation invariant; kept for reporting
    rs.lambda = pd.lambda;
    rs.a = counts_by_propagation(chain, index, N, true);
    const double l2 = std::log2(pd.lambda);
    double sum = 0;
    long q = 0;
    for (int n = 1; n <= N; ++n) {
        BigInt fn = rs.a[static_cast<std::size_t>(n - 1)];
        for (int k = 1; k < n; ++k) fn -= rs.f[static_cast<std::size_t>(k - 1)] * rs.a[static_cast<std::size_t>(n - k - 1)];
        if (sgn(fn) < 0) throw Error(ErrorKind::NonConvergence, "renewal identity produced a negative first-return count");
        rs.f.push_back(fn);
        sum += scaled(fn, n, l2);
        rs.partial_sums.push_back(sum);
        if (sgn(rs.a[static_cast<std::size_t>(n - 1)]) > 0) q = std::gcd(q, static_cast<long>(n));
    }
    rs.period = static_cast<unsigned>(q);
    return rs;
}

SeriesVerdict series_verdict(const ReturnSeries& rs) {
    SeriesVerdict sv;
    const int N = static_cast<int>(rs.a.size());
    sv.last_partial = rs.partial_sums.empty() ? 0.0 : rs.partial_sums.back();
    sv.plateau = sv.last_partial;
    const int q = rs.period ? static_cast<int>(rs.period) : 1;
    const double ll = std::log(rs.lambda);
    std::vector<double> xs, ys;
    for (int n = N / 2 + 1; n <= N; ++n) {
        if (n % q != 0 || sgn(rs.a[static_cast<std::size_t>(n - 1)]) == 0) continue;
        xs.push_back(n);
        ys.push_back(log_scaled(rs.a[static_cast<std::size_t>(n - 1)], n, ll) + 0.5 * std::log(static_cast<double>(n)));
    }
    if (xs.size() < 3) {
        sv.tends_to_one = sv.plateau >= kPlateauThreshold;
        return sv;
    }
    const double k = static_cast<double>(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / k;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / k;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    const double slope = std::min(sxy / sxx, 0.0);
    const double c = my - slope * mx;
    sv.ratio = std::exp(slope);
    if (1.0 - sv.ratio < 1e-3) {
        sv.plateau = 1.0;
        sv.tends_to_one = true;
        return sv;
    }
    double G = 1.0;
    for (int n = 1; n <= N; ++n) G += scaled(rs.a[static_cast<std::size_t>(n - 1)], n, std::log2(rs.lambda));
    double tail = 0;
    for (long n = N + q; n < 100000000L; n += q) {
        const double term = std::exp(c + slope * static_cast<double>(n) - 0.5 * std::log(static_cast<double>(n)));
        tail += term;
        if (term < 1e-17 * (G + tail)) break;
    }
    G += tail;
    sv.plateau = 1.0 - 1.0 / G;
    sv.tends_to_one = sv.plateau >= kPlateauThreshold;
    return sv;
}

double entropy(const PerronData& pd) { return std::log(pd.lambda); }

}  // namespace ladder
