#include "ladder/perron.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <quadmath.h>

#include "ladder/error.hpp"
#include "ladder/graph.hpp"

namespace ladder {

namespace {

using quad = __float128;

quad to_quad(const BigInt& x) {
    const std::size_t bits = mpz_sizeinbase(x.get_mpz_t(), 2);
    if (bits > 16000) throw Error(ErrorKind::NonConvergence, "matrix entry exceeds floating range");
    const std::size_t drop = bits > 120 ? bits - 120 : 0;
    mpz_class top = x >> drop;
    // top < 2^120: split into two 60-bit halves
    mpz_class hi = top >> 60;
    mpz_class lo = top - (hi << 60);
    quad r = static_cast<quad>(mpz_get_ui(hi.get_mpz_t())) * 1152921504606846976.0Q +
             static_cast<quad>(mpz_get_ui(lo.get_mpz_t()));
    return ldexpq(r, static_cast<int>(drop));
}

template <class T>
struct Dense {
    std::size_t n;
    std::vector<T> a;
    T operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

template <class T>
Dense<T> convert(const IntMatrix& m, bool transpose) {
    Dense<T> d{m.rows(), std::vector<T>(m.rows() * m.rows())};
    for (std::size_t i = 0; i < d.n; ++i)
        for (std::size_t j = 0; j < d.n; ++j) {
            quad q = to_quad(m(i, j));
            d.a[transpose ? j * d.n + i : i * d.n + j] = static_cast<T>(q);
        }
    return d;
}

template <class T>
void apply(const Dense<T>& m, const std::vector<T>& x, std::vector<T>& y) {
    for (std::size_t i = 0; i < m.n; ++i) {
        T s = 0;
        for (std::size_t j = 0; j < m.n; ++j) s += m(i, j) * x[j];
        y[i] = s;
    }
}

template <class T>
T abs_t(T x) { return x < 0 ? -x : x; }

struct Bounds {
    quad lo, hi;
};

// One sweep of x <- (M+I)x normalized to sum n; returns Collatz-Wielandt bounds for M.
template <class T>
Bounds step(const Dense<T>& m, std::vector<T>& x, std::vector<T>& y) {
    apply(m, x, y);
    T lo = 0, hi = 0, sum = 0;
    for (std::size_t i = 0; i < m.n; ++i) {
        T r = y[i] / x[i];
        if (i == 0 || r < lo) lo = r;
        if (i == 0 || r > hi) hi = r;
        y[i] += x[i];
        sum += y[i];
    }
    for (std::size_t i = 0; i < m.n; ++i) x[i] = y[i] * static_cast<T>(m.n) / sum;
    return {static_cast<quad>(lo), static_cast<quad>(hi)};
}

struct Side {
    std::vector<quad> x;
    quad lambda;
    long iterations;
};

Side power_side(const IntMatrix& m, bool transpose, const PerronOptions& opt) {
    const std::size_t n = m.rows();
    long it = 0;
    // double warm start
    Dense<double> md = convert<double>(m, transpose);
    std::vector<double> xd(n, 1.0), yd(n);
    const long warm_cap = std::min<long>(opt.max_iterations / 2, 200000);
    for (; it < warm_cap; ++it) {
        Bounds b = step(md, xd, yd);
        if (b.hi - b.lo <= 1e-14Q * b.hi) break;
        if (std::any_of(xd.begin(), xd.end(), [](double v) { return !(v > 0) || !std::isfinite(v); })) {
            std::fill(xd.begin(), xd.end(), 1.0);
            break;
        }
    }
    Dense<quad> mq = convert<quad>(m, transpose);
    std::vector<quad> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = xd[i];
    quad best = 1e300Q;
    long since_best = 0;
    Bounds b{0, 0};
    for (; it < opt.max_iterations; ++it) {
        b = step(mq, x, y);
        quad gap = b.hi - b.lo;
        if (gap <= 1e-30Q * b.hi) break;
        if (gap < best * 0.999Q) {
            best = gap;
            since_best = 0;
        } else if (++since_best > 2000) {
            break;  // stalled at working precision
        }
    }
    if (it >= opt.max_iterations)
        throw Error(ErrorKind::NonConvergence,
                    "power iteration did not converge in " + std::to_string(opt.max_iterations) + " iterations");
    return {x, (b.lo + b.hi) / 2, it};
}

}  // namespace

PerronData perron_eigenpair(const IntMatrix& m, const PerronOptions& opt) {
    if (!m.square() || m.rows() == 0) throw Error(ErrorKind::DimensionMismatch, "Perron: matrix must be square");
    if (!strongly_connected(m)) throw Error(ErrorKind::Reducible, "Perron: matrix is not irreducible");
    const std::size_t n = m.rows();
    Side right = power_side(m, false, opt);
    Side left = power_side(m, true, opt);

    quad lambda = right.lambda;
    quad dot = 0;
    for (std::size_t i = 0; i < n; ++i) dot += left.x[i] * right.x[i];

    PerronData pd;
    pd.lambda = static_cast<double>(lambda);
    pd.iterations = right.iterations + left.iterations;
    pd.v.resize(n);
    pd.u.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        pd.v[i] = static_cast<double>(right.x[i]);
        pd.u[i] = static_cast<double>(left.x[i] / dot);
    }
    for (std::size_t i = 0; i < n; ++i)
        if (!(pd.u[i] > 0) || !(pd.v[i] > 0))
            throw Error(ErrorKind::NonConvergence, "Perron vector has a nonpositive entry");

    // residuals of the returned (rounded) data, evaluated in 128-bit
    Dense<quad> mq = convert<quad>(m, false);
    quad rv = 0, ru = 0;
    const quad lam = pd.lambda;
    for (std::size_t i = 0; i < n; ++i) {
        quad sv = 0, su = 0;
        for (std::size_t j = 0; j < n; ++j) {
            sv += mq(i, j) * static_cast<quad>(pd.v[j]);
            su += static_cast<quad>(pd.u[j]) * mq(j, i);
        }
        rv = std::max(rv, abs_t(sv - lam * static_cast<quad>(pd.v[i])));
        ru = std::max(ru, abs_t(su - lam * static_cast<quad>(pd.u[i])));
    }
    pd.residual = static_cast<double>(std::max(rv, ru));
    if (!(pd.residual <= opt.tol))
        throw Error(ErrorKind::NonConvergence,
                    "Perron residual " + std::to_string(pd.residual) + " exceeds tolerance");
    return pd;
}

}  // namespace ladder
