#include "ladder/lifting.hpp"

#include <algorithm>
#include <array>
#include <fmt/format.h>

#include "ladder/error.hpp"
#include "ladder/graph.hpp"

namespace ladder {

void check_lifted(const LiftedCurveSystem& ls) {
    const std::size_t N = ls.base.size();
    const auto& w = ls.sigma_within;
    const auto& c = ls.sigma_cross;
    if (w.rows() != N || w.cols() != N || c.rows() != N || c.cols() != N || ls.base.sigma.rows() != N)
        throw Error(ErrorKind::Decomposition, "lifted intersection matrices do not match the curve count");
    for (std::size_t i = 0; i < N; ++i) {
        if (sgn(w(i, i)) != 0) throw Error(ErrorKind::Decomposition, "sigma_within has a nonzero diagonal entry");
        for (std::size_t j = 0; j < N; ++j) {
            if (w(i, j) != w(j, i))
                throw Error(ErrorKind::Decomposition,
                            fmt::format("sigma_within is not symmetric at ({}, {})", ls.base.labels[i], ls.base.labels[j]));
            if (ls.base.family[i] == ls.base.family[j] && (sgn(w(i, j)) != 0 || sgn(c(i, j)) != 0))
                throw Error(ErrorKind::Decomposition,
                            fmt::format("{} and {} share a family but intersect after lifting", ls.base.labels[i],
                                        ls.base.labels[j]));
            if (w(i, j) + c(i, j) + c(j, i) != ls.base.sigma(i, j))
                throw Error(ErrorKind::Decomposition,
                            fmt::format("within + cross + crossT differs from sigma at ({}, {})", ls.base.labels[i],
                                        ls.base.labels[j]));
        }
    }
}

LaurentBlockMatrix lift_sigma(const LiftedCurveSystem& ls) {
    check_lifted(ls);
    LaurentBlockMatrix L(ls.base.size());
    L.set(-1, ls.sigma_cross.transpose());
    L.set(0, ls.sigma_within);
    L.set(1, ls.sigma_cross);
    return L;
}

LaurentBlockMatrix lift_penner_matrix_unchecked(const LaurentBlockMatrix& sigma_t, const TwistWord& word) {
    const std::size_t N = sigma_t.dim();
    LaurentBlockMatrix M = LaurentBlockMatrix::identity(N);
    for (const auto& l : word) {
        if (l.curve >= N) throw Error(ErrorKind::ValidationFailed, "twist letter index out of range");
        LaurentBlockMatrix B = LaurentBlockMatrix::identity(N);
        for (const auto& [s, blk] : sigma_t.blocks()) {
            IntMatrix row(N, N);
            for (std::size_t j = 0; j < N; ++j) row.at(l.curve, j) = blk(l.curve, j);
            B.add(s, row);
        }
        const unsigned e = static_cast<unsigned>(l.exponent < 0 ? -l.exponent : l.exponent);
        M = laurent_mul(M, laurent_pow(B, e));
    }
    return M;
}

LaurentBlockMatrix lift_penner_matrix(const LiftedCurveSystem& ls, const TwistWord& word) {
    auto rep = validate(ls.base, word);
    if (!rep.ok()) throw Error(ErrorKind::ValidationFailed, rep.violations.front().message);
    return lift_penner_matrix_unchecked(lift_sigma(ls), word);
}

LaurentBlockMatrix ShiftChain::laurent() const {
    LaurentBlockMatrix L(dim());
    L.set(-1, minus);
    L.set(0, zero);
    L.set(1, plus);
    return L;
}

ShiftChain ShiftChain::from_laurent(const LaurentBlockMatrix& L) {
    if (L.band() > 1) throw Error(ErrorKind::DimensionMismatch, "chain needs band <= 1; reblock first");
    return {L.block(-1), L.block(0), L.block(1)};
}

ShiftChain reblock(const LaurentBlockMatrix& L, std::size_t group) {
    const std::size_t k = static_cast<std::size_t>(L.band());
    const std::size_t m = group ? group : std::max<std::size_t>(k, 1);
    if (m < k) throw Error(ErrorKind::DimensionMismatch, fmt::format("group size {} is below the band {}", m, k));
    const std::size_t d = L.dim();
    std::array<IntMatrix, 3> out{IntMatrix(m * d, m * d), IntMatrix(m * d, m * d), IntMatrix(m * d, m * d)};
    for (int s = -1; s <= 1; ++s)
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < m; ++b) {
                const long shift = static_cast<long>(m) * s + static_cast<long>(b) - static_cast<long>(a);
                auto it = L.blocks().find(static_cast<int>(shift));
                if (it == L.blocks().end()) continue;
                for (std::size_t i = 0; i < d; ++i)
                    for (std::size_t j = 0; j < d; ++j) out[s + 1].at(a * d + i, b * d + j) = it->second(i, j);
            }
    return {out[0], out[1], out[2]};
}

namespace {

template <class M>
M block2(const M& a, const M& b, const M& c, const M& d);

template <>
IntMatrix block2(const IntMatrix& a, const IntMatrix& b, const IntMatrix& c, const IntMatrix& d) {
    const std::size_t n = a.rows();
    IntMatrix r(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            r.at(i, j) = a(i, j);
            r.at(i, n + j) = b(i, j);
            r.at(n + i, j) = c(i, j);
            r.at(n + i, n + j) = d(i, j);
        }
    return r;
}

template <>
RealMatrix block2(const RealMatrix& a, const RealMatrix& b, const RealMatrix& c, const RealMatrix& d) {
    const std::size_t n = a.rows;
    RealMatrix r(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            r.at(i, j) = a(i, j);
            r.at(i, n + j) = b(i, j);
            r.at(n + i, j) = c(i, j);
            r.at(n + i, n + j) = d(i, j);
        }
    return r;
}

template <class M>
QbdBlocks<M> fold(const M& minus, const M& zero, const M& plus, const M& z) {
    return {block2(zero, plus, minus, zero), block2(plus, z, z, minus), block2(zero, z, z, zero),
            block2(minus, z, z, plus)};
}

}  // namespace

QbdBlocks<IntMatrix> qbd_fold(const ShiftChain& c) {
    return fold(c.minus, c.zero, c.plus, IntMatrix(c.dim(), c.dim()));
}

QbdBlocks<RealMatrix> qbd_fold(const RealMatrix& minus, const RealMatrix& zero, const RealMatrix& plus) {
    return fold(minus, zero, plus, RealMatrix(zero.rows, zero.cols));
}

const char* to_string(Tri t) {
    switch (t) {
    case Tri::False: return "false";
    case Tri::True: return "true";
    case Tri::Inconclusive: return "inconclusive";
    }
    return "?";
}

namespace {

Digraph window_graph(const LaurentBlockMatrix& L, int w) {
    const std::size_t d = L.dim();
    const int levels = 2 * w + 1;
    Digraph g(static_cast<std::size_t>(levels) * d);
    for (int lv = 0; lv < levels; ++lv)
        for (const auto& [s, blk] : L.blocks()) {
            const int to = lv + s;
            if (to < 0 || to >= levels) continue;
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j)
                    if (sgn(blk(i, j)) > 0) g.edge(static_cast<std::size_t>(lv) * d + i, static_cast<std::size_t>(to) * d + j);
        }
    return g;
}

struct WindowResult {
    bool connected = false;
    unsigned period = 0;
};

// The window is certified when every vertex on the core levels [-w/2, w/2] lies in
// one strong component of the truncation. By translation invariance that makes each
// vertex reach, and be reached from, every vertex one level up or down.
WindowResult check_window(const LaurentBlockMatrix& L, int w) {
    Digraph g = window_graph(L, w);
    const std::size_t d = L.dim();
    const std::size_t src = static_cast<std::size_t>(w) * d;
    auto member = strong_component(g, src);
    WindowResult r;
    r.connected = true;
    const int core = std::max(1, w / 2);
    for (int lv = w - core; lv <= w + core && r.connected; ++lv)
        for (std::size_t i = 0; i < d; ++i)
            if (!member[static_cast<std::size_t>(lv) * d + i]) {
                r.connected = false;
                break;
            }
    // a lone vertex with no loop is not on any cycle
    if (r.connected && g.out[src].empty()) r.connected = false;
    if (r.connected) r.period = component_period(g, member, src);
    return r;
}

}  // namespace

BandedVerdict banded_irreducible(const LaurentBlockMatrix& L, int window_levels) {
    if (window_levels < 3) throw Error(ErrorKind::ValidationFailed, "window_levels must be at least 3");
    std::array<WindowResult, 2> res;
#pragma omp parallel for schedule(static, 1)
    for (int k = 0; k < 2; ++k) res[static_cast<std::size_t>(k)] = check_window(L, window_levels + k);
    BandedVerdict v;
    v.window = window_levels;
    if (res[0].connected != res[1].connected || res[0].period != res[1].period) {
        v.verdict = Tri::Inconclusive;
    } else if (res[1].connected) {
        v.verdict = Tri::True;
        v.period = res[1].period;
    } else {
        v.verdict = Tri::False;
    }
    return v;
}

BandedVerdict banded_irreducible(const ShiftChain& chain, int window_levels) {
    return banded_irreducible(chain.laurent(), window_levels);
}

BandedVerdict banded_irreducible_widening(const ShiftChain& chain, int window_levels, int max_window) {
    BandedVerdict v = banded_irreducible(chain, window_levels);
    while (v.verdict == Tri::Inconclusive && window_levels * 2 <= max_window) {
        window_levels *= 2;
        v = banded_irreducible(chain, window_levels);
    }
    return v;
}

unsigned folded_period(const ShiftChain& chain, int levels) {
    auto q = qbd_fold(chain);
    const std::size_t b = 2 * chain.dim();
    Digraph g(static_cast<std::size_t>(levels) * b);
    auto link = [&](int from, int to, const IntMatrix& blk) {
        if (to < 0 || to >= levels) return;
        for (std::size_t i = 0; i < b; ++i)
            for (std::size_t j = 0; j < b; ++j)
                if (sgn(blk(i, j)) > 0) g.edge(static_cast<std::size_t>(from) * b + i, static_cast<std::size_t>(to) * b + j);
    };
    for (int n = 0; n < levels; ++n) {
        if (n == 0) {
            link(0, 0, q.corner);
        } else {
            link(n, n - 1, q.down);
            link(n, n, q.level);
        }
        link(n, n + 1, q.up);
    }
    const auto member = strong_component(g, 0);
    return component_period(g, member, 0);
}

}  // namespace ladder
