#include "ladder/graph.hpp"

#include <cstdlib>
#include <numeric>
#include <queue>

#include "ladder/error.hpp"

namespace ladder {

Digraph Digraph::from_matrix(const IntMatrix& m) {
    if (!m.square()) throw Error(ErrorKind::DimensionMismatch, "adjacency matrix must be square");
    Digraph g(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (sgn(m(i, j)) > 0) g.edge(i, j);
    return g;
}

namespace {

std::vector<long> bfs_levels(const std::vector<std::vector<std::size_t>>& adj, std::size_t src) {
    std::vector<long> level(adj.size(), -1);
    std::queue<std::size_t> q;
    level[src] = 0;
    q.push(src);
    while (!q.empty()) {
        std::size_t u = q.front();
        q.pop();
        for (std::size_t w : adj[u])
            if (level[w] < 0) {
                level[w] = level[u] + 1;
                q.push(w);
            }
    }
    return level;
}

bool all_reached(const std::vector<long>& level) {
    for (long l : level)
        if (l < 0) return false;
    return true;
}

}  // namespace

bool strongly_connected(const Digraph& g) {
    if (g.size() == 0) return false;
    if (!all_reached(bfs_levels(g.out, 0))) return false;
    std::vector<std::vector<std::size_t>> rev(g.size());
    bool has_edge = false;
    for (std::size_t u = 0; u < g.size(); ++u)
        for (std::size_t w : g.out[u]) {
            rev[w].push_back(u);
            has_edge = true;
        }
    // A lone vertex needs a self-loop to lie on a cycle.
    if (!has_edge) return false;
    return all_reached(bfs_levels(rev, 0));
}

bool strongly_connected(const IntMatrix& m) { return strongly_connected(Digraph::from_matrix(m)); }

unsigned period(const Digraph& g) {
    if (!strongly_connected(g)) throw Error(ErrorKind::Reducible, "period: graph is not strongly connected");
    auto level = bfs_levels(g.out, 0);
    long p = 0;
    for (std::size_t u = 0; u < g.size(); ++u)
        for (std::size_t w : g.out[u]) p = std::gcd(p, std::labs(level[u] + 1 - level[w]));
    return static_cast<unsigned>(p);
}

unsigned period(const IntMatrix& m) { return period(Digraph::from_matrix(m)); }

std::vector<bool> strong_component(const Digraph& g, std::size_t src) {
    std::vector<std::vector<std::size_t>> rev(g.size());
    for (std::size_t u = 0; u < g.size(); ++u)
        for (std::size_t w : g.out[u]) rev[w].push_back(u);
    auto fwd = bfs_levels(g.out, src);
    auto bwd = bfs_levels(rev, src);
    std::vector<bool> member(g.size());
    for (std::size_t v = 0; v < g.size(); ++v) member[v] = fwd[v] >= 0 && bwd[v] >= 0;
    return member;
}

unsigned component_period(const Digraph& g, const std::vector<bool>& member, std::size_t src) {
    std::vector<std::vector<std::size_t>> sub(g.size());
    for (std::size_t u = 0; u < g.size(); ++u)
        if (member[u])
            for (std::size_t w : g.out[u])
                if (member[w]) sub[u].push_back(w);
    auto level = bfs_levels(sub, src);
    long p = 0;
    for (std::size_t u = 0; u < g.size(); ++u)
        for (std::size_t w : sub[u]) p = std::gcd(p, std::labs(level[u] + 1 - level[w]));
    return static_cast<unsigned>(p);
}

}  // namespace ladder
