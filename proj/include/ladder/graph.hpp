#pragma once

#include <cstddef>
#include <vector>

#include "ladder/int_matrix.hpp"

namespace ladder {

struct Digraph {
    std::vector<std::vector<std::size_t>> out;

    explicit Digraph(std::size_t n = 0) : out(n) {}
    static Digraph from_matrix(const IntMatrix& m);
    std::size_t size() const { return out.size(); }
    void edge(std::size_t u, std::size_t v) { out[u].push_back(v); }
};

// Every ordered pair (including i == i) joined by a path of length >= 1.
bool strongly_connected(const Digraph& g);
bool strongly_connected(const IntMatrix& m);

// gcd of cycle lengths, via BFS levels: gcd over edges u->w of level[u] + 1 - level[w].
// Throws Reducible when the graph is not strongly connected.
unsigned period(const Digraph& g);
unsigned period(const IntMatrix& m);

// Vertices that both reach and are reached from src.
std::vector<bool> strong_component(const Digraph& g, std::size_t src);
// Period of the subgraph induced by a strongly connected vertex set containing src.
unsigned component_period(const Digraph& g, const std::vector<bool>& member, std::size_t src);

}  // namespace ladder
