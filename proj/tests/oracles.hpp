#pragma once

// Independent reference computations used only by the tests.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ladder/classify.hpp"
#include "ladder/int_matrix.hpp"
#include "ladder/laurent.hpp"
#include "ladder/rng.hpp"

namespace oracle {

// Base-1e9 schoolbook arithmetic on decimal strings.
using Limbs = std::vector<std::uint32_t>;

inline Limbs to_limbs(const std::string& s) {
    Limbs out;
    for (long end = static_cast<long>(s.size()); end > 0; end -= 9) {
        long start = std::max(0L, end - 9);
        out.push_back(static_cast<std::uint32_t>(std::stoul(s.substr(static_cast<std::size_t>(start), static_cast<std::size_t>(end - start)))));
    }
    while (out.size() > 1 && out.back() == 0) out.pop_back();
    return out;
}

inline std::string from_limbs(const Limbs& x) {
    std::string s = std::to_string(x.back());
    for (long i = static_cast<long>(x.size()) - 2; i >= 0; --i) {
        std::string part = std::to_string(x[static_cast<std::size_t>(i)]);
        s += std::string(9 - part.size(), '0') + part;
    }
    return s;
}

inline Limbs add(const Limbs& a, const Limbs& b) {
    Limbs r;
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < std::max(a.size(), b.size()) || carry; ++i) {
        std::uint64_t s = carry + (i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0);
        r.push_back(static_cast<std::uint32_t>(s % 1000000000ULL));
        carry = s / 1000000000ULL;
    }
    return r;
}

inline Limbs mul(const Limbs& a, const Limbs& b) {
    std::vector<std::uint64_t> acc(a.size() + b.size() + 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::uint64_t carry = 0;
        for (std::size_t j = 0; j < b.size() || carry; ++j) {
            std::uint64_t cur = acc[i + j] + carry + (j < b.size() ? static_cast<std::uint64_t>(a[i]) * b[j] : 0);
            acc[i + j] = cur % 1000000000ULL;
            carry = cur / 1000000000ULL;
        }
    }
    Limbs r(acc.begin(), acc.end());
    while (r.size() > 1 && r.back() == 0) r.pop_back();
    return r;
}

inline std::vector<std::vector<std::string>> schoolbook_matmul(const std::vector<std::vector<std::string>>& a,
                                                               const std::vector<std::vector<std::string>>& b) {
    std::vector<std::vector<std::string>> c(a.size(), std::vector<std::string>(b[0].size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b[0].size(); ++j) {
            Limbs s{0};
            for (std::size_t k = 0; k < b.size(); ++k) s = add(s, mul(to_limbs(a[i][k]), to_limbs(b[k][j])));
            c[i][j] = from_limbs(s);
        }
    return c;
}

// Number of +-1 paths of length n from 0 back to 0, by exhaustive enumeration.
inline long lattice_loops(int n) {
    long count = 0;
    for (long mask = 0; mask < (1L << n); ++mask)
        if (__builtin_popcountl(static_cast<unsigned long>(mask)) * 2 == n) ++count;
    return count;
}

// First-return paths: no prefix sums to 0 before the end.
inline long lattice_first_returns(int n) {
    long count = 0;
    for (long mask = 0; mask < (1L << n); ++mask) {
        int pos = 0;
        bool early = false;
        for (int k = 0; k < n; ++k) {
            pos += (mask >> k) & 1 ? 1 : -1;
            if (pos == 0 && k + 1 < n) early = true;
        }
        if (pos == 0 && !early) ++count;
    }
    return count;
}

// Dense truncation of a Laurent operator to levels [lo, hi), entries as mpz.
inline ladder::IntMatrix window_matrix(const ladder::LaurentBlockMatrix& L, long lo, long hi) {
    const std::size_t d = L.dim();
    const std::size_t n = static_cast<std::size_t>(hi - lo) * d;
    ladder::IntMatrix W(n, n);
    for (long lv = lo; lv < hi; ++lv)
        for (const auto& [s, b] : L.blocks()) {
            long to = lv + s;
            if (to < lo || to >= hi) continue;
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j)
                    W.at(static_cast<std::size_t>(lv - lo) * d + i, static_cast<std::size_t>(to - lo) * d + j) = b(i, j);
        }
    return W;
}

// a_n at (index, level 0) from powers of a window wide enough that no path leaves it.
inline std::vector<ladder::BigInt> window_return_counts(const ladder::LaurentBlockMatrix& L, std::size_t index, int N) {
    const long reach = static_cast<long>(N) * std::max(1, L.band());
    ladder::IntMatrix W = window_matrix(L, -reach, reach + 1);
    const std::size_t x = static_cast<std::size_t>(reach) * L.dim() + index;
    std::vector<ladder::BigInt> out;
    ladder::IntMatrix P = ladder::IntMatrix::identity(W.rows());
    for (int n = 1; n <= N; ++n) {
        P = ladder::serial::mat_mul(P, W);
        out.push_back(P(x, x));
    }
    return out;
}

// Exact return probability of a transient QBD: minimal G solving G = P- + P0 G + P+ G^2
// (first passage one level down), its mirror for one level up, then a censoring step.
inline double return_probability(const ladder::StochasticChain& c, std::size_t i) {
    using Eigen::MatrixXd;
    const long d = static_cast<long>(c.dim());
    auto E = [&](const ladder::RealMatrix& m) {
        MatrixXd r(d, d);
        for (long a = 0; a < d; ++a)
            for (long b = 0; b < d; ++b) r(a, b) = m(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
        return r;
    };
    const MatrixXd Pm = E(c.minus), P0 = E(c.zero), Pp = E(c.plus);
    const MatrixXd I = MatrixXd::Identity(d, d);
    auto minimal = [&](const MatrixXd& down, const MatrixXd& up) {
        MatrixXd G = MatrixXd::Zero(d, d);
        for (int it = 0; it < 200000; ++it) {
            MatrixXd next = (I - P0 - up * G).partialPivLu().solve(down);
            if ((next - G).cwiseAbs().maxCoeff() < 1e-15) return next;
            G = next;
        }
        return G;
    };
    const MatrixXd G = minimal(Pm, Pp);
    const MatrixXd Gu = minimal(Pp, Pm);
    // U(a,b): first return to level 0, landing at index b
    const MatrixXd U = P0 + Pp * G + Pm * Gu;
    if (d == 1) return U(0, 0);
    std::vector<long> others;
    for (long k = 0; k < d; ++k)
        if (k != static_cast<long>(i)) others.push_back(k);
    const long m = static_cast<long>(others.size());
    MatrixXd Uoo(m, m), Uio(1, m), Uoi(m, 1);
    for (long a = 0; a < m; ++a) {
        Uio(0, a) = U(static_cast<long>(i), others[static_cast<std::size_t>(a)]);
        Uoi(a, 0) = U(others[static_cast<std::size_t>(a)], static_cast<long>(i));
        for (long b = 0; b < m; ++b) Uoo(a, b) = U(others[static_cast<std::size_t>(a)], others[static_cast<std::size_t>(b)]);
    }
    const MatrixXd rest = Uio * (MatrixXd::Identity(m, m) - Uoo).partialPivLu().solve(Uoi);
    return U(static_cast<long>(i), static_cast<long>(i)) + rest(0, 0);
}

inline ladder::IntMatrix random_matrix(ladder::Xoshiro256& rng, std::size_t n, unsigned max_entry, double density) {
    ladder::IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (rng.uniform() < density) m.at(i, j) = static_cast<unsigned long>(rng.next() % (max_entry + 1));
    return m;
}

}  // namespace oracle
