#include <cmath>
#include <string>

#include "doctest.h"
#include "ladder/error.hpp"
#include "ladder/graph.hpp"
#include "ladder/int_matrix.hpp"
#include "ladder/laurent.hpp"
#include "ladder/perron.hpp"
#include "ladder/rng.hpp"
#include "oracles.hpp"

using namespace ladder;

namespace {

std::string random_digits(Xoshiro256& rng, std::size_t n) {
    std::string s(1, static_cast<char>('1' + rng.next() % 9));
    while (s.size() < n) s += static_cast<char>('0' + rng.next() % 10);
    return s;
}

LaurentBlockMatrix random_laurent(Xoshiro256& rng, std::size_t d, int band, unsigned max_entry = 3) {
    LaurentBlockMatrix L(d);
    for (int s = -band; s <= band; ++s) L.set(s, oracle::random_matrix(rng, d, max_entry, 0.6));
    return L;
}

// Strongly connected by construction: a Hamiltonian cycle plus random extra edges.
IntMatrix random_irreducible(Xoshiro256& rng, std::size_t n, unsigned max_entry = 3) {
    IntMatrix m = oracle::random_matrix(rng, n, max_entry, 0.3);
    for (std::size_t i = 0; i < n; ++i)
        if (m(i, (i + 1) % n) == 0) m.at(i, (i + 1) % n) = 1;
    return m;
}

}  // namespace

TEST_CASE("matrix products on small examples") {
    IntMatrix x{{1, 2}, {3, 4}};
    CHECK(mat_mul(IntMatrix::identity(2), x) == x);
    CHECK(mat_mul(IntMatrix{{1, 1}, {0, 1}}, IntMatrix{{1, 0}, {1, 1}}) == IntMatrix{{2, 1}, {1, 1}});
    CHECK(mat_mul(IntMatrix{{0, 1}, {1, 0}}, IntMatrix{{0, 1}, {1, 0}}) == IntMatrix::identity(2));
    CHECK(mat_pow(IntMatrix{{1, 1}, {1, 0}}, 10) == IntMatrix{{89, 55}, {55, 34}});
    CHECK(mat_add(x, x) == IntMatrix{{2, 4}, {6, 8}});
}

TEST_CASE("shape mismatch and negative entries are rejected") {
    CHECK_THROWS_AS(mat_mul(IntMatrix(2, 3), IntMatrix(2, 3)), Error);
    CHECK_THROWS_AS(mat_add(IntMatrix(2, 2), IntMatrix(3, 3)), Error);
    CHECK_THROWS_AS((IntMatrix{{1, -1}}), Error);
    try {
        mat_mul(IntMatrix(2, 3), IntMatrix(2, 3));
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DimensionMismatch);
    }
}

TEST_CASE("ten-thousand digit entries agree with schoolbook multiplication") {
    Xoshiro256 rng(7);
    std::vector<std::vector<std::string>> a(2, std::vector<std::string>(2)), b = a;
    for (auto& row : a)
        for (auto& e : row) e = random_digits(rng, 10000);
    for (auto& row : b)
        for (auto& e : row) e = random_digits(rng, 10000);
    auto to_mat = [](const std::vector<std::vector<std::string>>& g) {
        std::vector<std::vector<BigInt>> rows;
        for (const auto& r : g) {
            rows.emplace_back();
            for (const auto& e : r) rows.back().emplace_back(e);
        }
        return IntMatrix::from_rows(rows);
    };
    IntMatrix c = mat_mul(to_mat(a), to_mat(b));
    auto expect = oracle::schoolbook_matmul(a, b);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) CHECK(c(i, j).get_str() == expect[i][j]);
}

TEST_CASE("parallel and serial products are identical") {
    Xoshiro256 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = 1 + rng.next() % 12;
        IntMatrix a = oracle::random_matrix(rng, n, 1000, 0.7), b = oracle::random_matrix(rng, n, 1000, 0.7);
        CHECK(mat_mul(a, b) == serial::mat_mul(a, b));
    }
}

TEST_CASE("laurent arithmetic") {
    IntMatrix I = IntMatrix::identity(1);
    LaurentBlockMatrix t(1), tinv(1), s(1);
    t.set(1, I);
    tinv.set(-1, I);
    CHECK(laurent_mul(t, tinv) == LaurentBlockMatrix::identity(1));
    s.set(1, I);
    s.set(-1, I);
    LaurentBlockMatrix sq = laurent_mul(s, s);
    CHECK(sq.block(2) == I);
    CHECK(sq.block(0) == IntMatrix{{2}});
    CHECK(sq.block(-2) == I);
    CHECK(sq.blocks().size() == 3);
    CHECK(sq.band() == 2);
    CHECK(laurent_pow(s, 3).block(1) == IntMatrix{{3}});
    CHECK(laurent_eval_one(laurent_pow(s, 5)) == IntMatrix{{32}});

    LaurentBlockMatrix z(2);
    z.set(3, IntMatrix(2, 2));
    CHECK(z.empty());
    CHECK(z.band() == 0);
}

TEST_CASE("adjoint reverses shifts and transposes blocks") {
    LaurentBlockMatrix L(2);
    L.set(1, IntMatrix{{0, 1}, {0, 0}});
    L.set(0, IntMatrix{{1, 2}, {0, 1}});
    LaurentBlockMatrix adj = L.adjoint();
    CHECK(adj.block(-1) == IntMatrix{{0, 0}, {1, 0}});
    CHECK(adj.block(0) == IntMatrix{{1, 0}, {2, 1}});
    CHECK(adj.adjoint() == L);
}

TEST_CASE("evaluation at one is a ring homomorphism") {
    Xoshiro256 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t d = 1 + rng.next() % 3;
        LaurentBlockMatrix a = random_laurent(rng, d, 1 + static_cast<int>(rng.next() % 3));
        LaurentBlockMatrix b = random_laurent(rng, d, 1 + static_cast<int>(rng.next() % 3));
        CHECK(laurent_eval_one(laurent_mul(a, b)) == mat_mul(laurent_eval_one(a), laurent_eval_one(b)));
        CHECK(laurent_eval_one(laurent_add(a, b)) == mat_add(laurent_eval_one(a), laurent_eval_one(b)));
        CHECK(laurent_mul(a, b) == serial::laurent_mul(a, b));
    }
}

TEST_CASE("laurent products agree with products of banded windows") {
    Xoshiro256 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t d = 1 + rng.next() % 2;
        LaurentBlockMatrix a = random_laurent(rng, d, 2), b = random_laurent(rng, d, 1);
        LaurentBlockMatrix ab = laurent_mul(a, b);
        // Interior rows of the window product see no truncation.
        IntMatrix wa = oracle::window_matrix(a, -10, 11), wb = oracle::window_matrix(b, -10, 11);
        IntMatrix wab = oracle::window_matrix(ab, -10, 11);
        IntMatrix prod = serial::mat_mul(wa, wb);
        for (std::size_t r = 5 * d; r < 16 * d; ++r)
            for (std::size_t c = 0; c < prod.cols(); ++c) CHECK(prod(r, c) == wab(r, c));
    }
}

TEST_CASE("strong connectivity and period") {
    CHECK(strongly_connected(IntMatrix{{2, 1}, {1, 1}}));
    CHECK_FALSE(strongly_connected(IntMatrix{{1, 1}, {0, 1}}));
    CHECK(strongly_connected(IntMatrix{{1}}));
    CHECK_FALSE(strongly_connected(IntMatrix{{0}}));
    CHECK(period(IntMatrix{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}) == 3);
    CHECK(period(IntMatrix{{2, 1}, {1, 1}}) == 1);
    CHECK(period(IntMatrix{{0, 1}, {1, 0}}) == 2);
    // path graph with back edges: the truncated simple random walk
    IntMatrix path(6, 6);
    for (std::size_t i = 0; i + 1 < 6; ++i) {
        path.at(i, i + 1) = 1;
        path.at(i + 1, i) = 1;
    }
    CHECK(period(path) == 2);
    CHECK_THROWS_AS(period(IntMatrix{{1, 1}, {0, 1}}), Error);
}

TEST_CASE("period divides every closed walk found by random walking") {
    Xoshiro256 rng(13);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = 2 + rng.next() % 8;
        IntMatrix m = oracle::random_matrix(rng, n, 1, 0.2);
        for (std::size_t i = 0; i < n; ++i) m.at(i, (i + 1) % n) = 1;
        Digraph g = Digraph::from_matrix(m);
        unsigned p = period(g);
        std::vector<long> last(n, -1);
        std::size_t at = 0;
        for (long step = 0; step < 2000; ++step) {
            if (last[at] >= 0) CHECK((step - last[at]) % p == 0);
            last[at] = step;
            at = g.out[at][rng.next() % g.out[at].size()];
        }
    }
}

TEST_CASE("strong component of a vertex") {
    IntMatrix m{{0, 1, 0}, {1, 0, 1}, {0, 0, 1}};
    auto comp = strong_component(Digraph::from_matrix(m), 0);
    CHECK(comp == std::vector<bool>{true, true, false});
    CHECK(component_period(Digraph::from_matrix(m), comp, 0) == 2);
}

TEST_CASE("perron pair of small matrices") {
    PerronData pd = perron_eigenpair(IntMatrix{{2, 1}, {1, 1}});
    const double phi = (1 + std::sqrt(5.0)) / 2;
    CHECK(pd.lambda == doctest::Approx((3 + std::sqrt(5.0)) / 2).epsilon(1e-14));
    CHECK(pd.v[0] / pd.v[1] == doctest::Approx(phi).epsilon(1e-13));
    CHECK(pd.v[0] + pd.v[1] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(pd.u[0] * pd.v[0] + pd.u[1] * pd.v[1] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(pd.residual <= 1e-12);

    CHECK(perron_eigenpair(IntMatrix{{1}}).lambda == 1.0);
    PerronData swap = perron_eigenpair(IntMatrix{{0, 1}, {1, 0}});
    CHECK(swap.lambda == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(swap.v[0] == doctest::Approx(1.0));
    CHECK_THROWS_AS(perron_eigenpair(IntMatrix{{1, 1}, {0, 1}}), Error);
}

TEST_CASE("perron residual, normalization and positivity on random irreducible matrices") {
    Xoshiro256 rng(17);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t n = 1 + rng.next() % 10;
        IntMatrix m = random_irreducible(rng, n, 5);
        PerronData pd = perron_eigenpair(m);
        CHECK(pd.residual <= 1e-12);
        double sv = 0, uv = 0;
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(pd.v[i] > 0);
            CHECK(pd.u[i] > 0);
            sv += pd.v[i];
            uv += pd.u[i] * pd.v[i];
        }
        CHECK(sv == doctest::Approx(static_cast<double>(n)).epsilon(1e-12));
        CHECK(uv == doctest::Approx(1.0).epsilon(1e-12));
        // same input, same bits
        PerronData again = perron_eigenpair(m);
        CHECK(again.lambda == pd.lambda);
        CHECK(again.v == pd.v);
    }
}

TEST_CASE("perron root is monotone in the entries") {
    Xoshiro256 rng(19);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t n = 1 + rng.next() % 8;
        IntMatrix m = random_irreducible(rng, n, 3);
        IntMatrix bigger = mat_add(m, oracle::random_matrix(rng, n, 2, 0.3));
        CHECK(perron_eigenpair(m).lambda <= perron_eigenpair(bigger).lambda * (1 + 1e-12));
    }
}
