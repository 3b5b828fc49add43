#include "gibbslab/graph.hpp"

#include <algorithm>
#include <fstream>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

#include "gibbslab/errors.hpp"

namespace gibbslab {

int Graph::edge_between(int u, int v) const {
    for (const Arc& a : adj[u])
        if (a.to == v) return a.edge;
    return -1;
}

bool Graph::is_regular(int* degree_out) const {
    if (n == 0) return false;
    const int d = degree(0);
    for (int v = 1; v < n; ++v)
        if (degree(v) != d) return false;
    if (degree_out) *degree_out = d;
    return true;
}

Graph Graph::from_edges(int n, std::vector<std::pair<int, int>> edge_list) {
    Graph g;
    g.n = n;
    g.adj.resize(n);
    std::set<std::pair<int, int>> seen;
    for (auto& [u, v] : edge_list) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw std::invalid_argument("edge endpoint out of range");
        if (u == v)
            throw SelfLoopError("self-loop at vertex " + std::to_string(u));
        if (u > v) std::swap(u, v);
        if (!seen.insert({u, v}).second)
            throw DuplicateEdgeError("duplicate edge " + std::to_string(u) + "-" +
                                     std::to_string(v));
        const int e = static_cast<int>(g.edges.size());
        g.edges.emplace_back(u, v);
        g.adj[u].push_back({v, e});
        g.adj[v].push_back({u, e});
    }
    return g;
}

Graph build_graph(const std::vector<std::pair<int, int>>& edge_list) {
    if (edge_list.empty())
        throw std::invalid_argument("edge list is empty");
    int n = 0;
    for (const auto& [u, v] : edge_list) {
        if (u < 0 || v < 0)
            throw std::invalid_argument("negative vertex id");
        n = std::max({n, u + 1, v + 1});
    }

    // Canonical edge order keeps indices stable across save/load.
    std::vector<std::pair<int, int>> sorted;
    sorted.reserve(edge_list.size());
    for (auto [u, v] : edge_list) {
        if (u == v)
            throw SelfLoopError("self-loop at vertex " + std::to_string(u));
        if (u > v) std::swap(u, v);
        sorted.emplace_back(u, v);
    }
    std::sort(sorted.begin(), sorted.end());

    Graph g = Graph::from_edges(n, std::move(sorted));

    for (int v = 0; v < n; ++v)
        if (g.degree(v) == 0)
            throw DisconnectedError("vertex " + std::to_string(v) + " has no incident edges");

    // BFS connectivity check.
    std::vector<char> visited(n, 0);
    std::queue<int> frontier;
    frontier.push(0);
    visited[0] = 1;
    int reached = 1;
    while (!frontier.empty()) {
        const int v = frontier.front();
        frontier.pop();
        for (const Arc& a : g.adj[v]) {
            if (!visited[a.to]) {
                visited[a.to] = 1;
                ++reached;
                frontier.push(a.to);
            }
        }
    }
    if (reached != n)
        throw DisconnectedError("graph is not connected");
    return g;
}

Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open graph file: " + path);
    std::vector<std::pair<int, int>> edges;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        int u, v;
        if (ls >> u >> v) edges.emplace_back(u, v);
    }
    return build_graph(edges);
}

void save_graph(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write graph file: " + path);
    for (const auto& [u, v] : g.edges)
        out << u << " " << v << "\n";
}

Graph builtin_graph(const std::string& name) {
    if (name == "k2") return build_graph({{0, 1}});
    if (name == "path3") return build_graph({{0, 1}, {1, 2}});
    if (name == "c3") return build_graph({{0, 1}, {1, 2}, {2, 0}});
    if (name == "c4") return build_graph({{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    if (name == "c5") return build_graph({{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
    if (name == "k4")
        return build_graph({{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    if (name == "petersen")
        return build_graph({{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0},
                            {0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9},
                            {5, 7}, {7, 9}, {9, 6}, {6, 8}, {8, 5}});
    return load_graph(name);
}

} // namespace gibbslab
