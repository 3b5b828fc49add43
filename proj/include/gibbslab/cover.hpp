#ifndef GIBBSLAB_COVER_HPP
#define GIBBSLAB_COVER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "gibbslab/graph.hpp"

namespace gibbslab {

// Radius-R piece of the universal cover around a base vertex: vertices are
// the non-backtracking paths of length <= R starting there, two paths
// adjacent when one extends the other by a single edge. Vertex 0 is the
// trivial path.
struct RootedBall {
    int root = 0;   // base vertex the trivial path sits over
    int radius = 0;
    std::vector<std::pair<int, int>> tree_edges; // parent -> child
    std::vector<int> parent;     // parent[0] == -1
    std::vector<int> depth;
    std::vector<int> projection; // ball vertex -> base vertex (path endpoint)

    int vertex_count() const { return static_cast<int>(projection.size()); }
};

RootedBall universal_cover_ball(const Graph& g, int root, int radius);

// N-fold covering of a base graph: one permutation of {0..N-1} per base edge
// (edges always taken in the canonical u < v orientation), fiber element i
// over u matched with sigma_e(i) over v. Cover vertex (v, sheet i) has id
// v*N + i; the cover edge over base edge e on sheet i has id e*N + i.
struct NFoldCovering {
    Graph base;
    int fold = 1;
    std::vector<std::vector<int>> sigma; // [base edge][sheet]
    Graph cover;                         // derived, may be disconnected

    NFoldCovering() = default;
    NFoldCovering(Graph base_graph, int n_fold, std::vector<std::vector<int>> sigmas);

    int cover_vertex(int base_vertex, int sheet) const { return base_vertex * fold + sheet; }
    int base_of_vertex(int cover_vertex) const { return cover_vertex / fold; }
    int sheet_of_vertex(int cover_vertex) const { return cover_vertex % fold; }
    int base_of_edge(int cover_edge) const { return cover_edge / fold; }
};

// Every matching drawn independently and uniformly; deterministic per seed.
NFoldCovering random_covering(const Graph& g, int n_fold, std::uint64_t seed);

// Whether each fiber vertex sees the universal cover out to radius R, decided
// by comparing ball cardinalities: |Ball(u,R)| in the cover never exceeds the
// universal-cover ball over the same base vertex, with equality exactly at
// the R-nice vertices. An edge is R-nice when both of its ends are.
struct NicenessAudit {
    int radius = 0;
    std::vector<char> vertex_nice;       // per cover vertex
    std::vector<double> vertex_fraction; // per base vertex: nice share of the fiber
    std::vector<double> edge_fraction;   // per base edge
    std::vector<int> universal_ball_size; // per base vertex

    double min_vertex_fraction() const;
    double min_edge_fraction() const;
    // (R,eps)-nice: every fiber (vertex and edge) has nice share > 1 - eps.
    bool is_nice(double eps) const;
};

NicenessAudit niceness_audit(const NFoldCovering& c, int radius);

// Number of cover vertices within distance `radius` of u.
int ball_size(const Graph& g, int u, int radius);

// Text format: "N <fold>" line, base edge lines "u v", then one
// "sigma i0 i1 ..." line per base edge in the same order.
void save_covering(const NFoldCovering& c, const std::string& path);
NFoldCovering load_covering(const std::string& path);

} // namespace gibbslab

#endif // GIBBSLAB_COVER_HPP
