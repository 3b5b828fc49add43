#ifndef GIBBSLAB_GRAPH_HPP
#define GIBBSLAB_GRAPH_HPP

#include <string>
#include <utility>
#include <vector>

namespace gibbslab {

struct Arc {
    int to = -1;
    int edge = -1; // index into Graph::edges
};

// Finite simple undirected graph on vertices {0..n-1}. Edges are stored with
// the canonical orientation u < v; adjacency carries the edge index so that
// per-edge tables can be looked up from either endpoint.
struct Graph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<Arc>> adj;

    int vertex_count() const { return n; }
    int edge_count() const { return static_cast<int>(edges.size()); }
    int degree(int v) const { return static_cast<int>(adj[v].size()); }

    // -1 if u and v are not adjacent.
    int edge_between(int u, int v) const;

    bool is_regular(int* degree_out = nullptr) const;

    // Builds adjacency from an edge list without the connectivity check.
    // Rejects self-loops and duplicates; covering graphs (which may be
    // disconnected) are assembled through this.
    static Graph from_edges(int n, std::vector<std::pair<int, int>> edge_list);
};

// Validated construction: vertex ids must form {0..n-1}, the graph must be
// simple and connected. Throws SelfLoopError, DuplicateEdgeError,
// DisconnectedError.
Graph build_graph(const std::vector<std::pair<int, int>>& edge_list);

// Edge-list text format: one "u v" per line, '#' starts a comment.
Graph load_graph(const std::string& path);
void save_graph(const Graph& g, const std::string& path);

// Small graphs used throughout the experiments: k2, path3, c3, c4, c5, k4,
// petersen. Unknown names fall through to load_graph(name).
Graph builtin_graph(const std::string& name);

} // namespace gibbslab

#endif // GIBBSLAB_GRAPH_HPP
