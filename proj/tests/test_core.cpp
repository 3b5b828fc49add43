#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <queue>
#include <vector>

#include "gibbslab/cover.hpp"
#include "gibbslab/errors.hpp"
#include "gibbslab/graph.hpp"
#include "gibbslab/rng.hpp"

using namespace gibbslab;

namespace {

int component_count(const Graph& g) {
    std::vector<char> visited(g.n, 0);
    int components = 0;
    for (int s = 0; s < g.n; ++s) {
        if (visited[s]) continue;
        ++components;
        std::queue<int> q;
        q.push(s);
        visited[s] = 1;
        while (!q.empty()) {
            const int v = q.front();
            q.pop();
            for (const Arc& a : g.adj[v])
                if (!visited[a.to]) {
                    visited[a.to] = 1;
                    q.push(a.to);
                }
        }
    }
    return components;
}

// Connected graph on 2..6 vertices: random spanning tree plus extra edges.
Graph random_connected_graph(RandomEngine& rng) {
    const int n = 2 + static_cast<int>(rng.uniform_below(5));
    std::vector<std::pair<int, int>> edges;
    for (int v = 1; v < n; ++v)
        edges.emplace_back(static_cast<int>(rng.uniform_below(v)), v);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            if (std::find(edges.begin(), edges.end(), std::make_pair(u, v)) !=
                edges.end())
                continue;
            if (rng.uniform01() < 0.35) edges.emplace_back(u, v);
        }
    return build_graph(edges);
}

} // namespace

TEST_CASE("build_graph validates the smallest graphs") {
    const Graph k2 = build_graph({{0, 1}});
    CHECK(k2.n == 2);
    CHECK(k2.degree(0) == 1);
    CHECK(k2.degree(1) == 1);

    const Graph c3 = build_graph({{0, 1}, {1, 2}, {2, 0}});
    CHECK(c3.n == 3);
    for (int v = 0; v < 3; ++v) CHECK(c3.degree(v) == 2);
    CHECK(c3.edges == std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 2}});
}

TEST_CASE("build_graph rejects invariant violations") {
    CHECK_THROWS_AS(build_graph({{0, 1}, {0, 1}}), DuplicateEdgeError);
    CHECK_THROWS_AS(build_graph({{0, 1}, {1, 0}}), DuplicateEdgeError);
    CHECK_THROWS_AS(build_graph({{0, 0}}), SelfLoopError);
    CHECK_THROWS_AS(build_graph({{0, 1}, {2, 3}}), DisconnectedError);
    CHECK_THROWS_AS(build_graph({{0, 2}}), DisconnectedError); // vertex 1 isolated
    CHECK_THROWS_AS(build_graph({}), std::invalid_argument);
}

TEST_CASE("graph edge-list file round-trip") {
    const Graph g = builtin_graph("petersen");
    const std::string path = "core_graph_roundtrip.txt";
    save_graph(g, path);
    const Graph h = load_graph(path);
    CHECK(h.n == g.n);
    CHECK(h.edges == g.edges);
    std::remove(path.c_str());
}

TEST_CASE("universal cover ball of a tree is the tree itself") {
    const Graph k2 = builtin_graph("k2");
    const RootedBall ball = universal_cover_ball(k2, 0, 5);
    CHECK(ball.vertex_count() == 2);
    CHECK(ball.tree_edges.size() == 1);
    CHECK(ball.projection == std::vector<int>{0, 1});
}

TEST_CASE("universal cover ball of the triangle is a path of 5 vertices") {
    const Graph c3 = builtin_graph("c3");
    const RootedBall ball = universal_cover_ball(c3, 0, 2);
    CHECK(ball.vertex_count() == 5);
    // Root has two children, each child one grandchild.
    int root_children = 0, leaves = 0;
    std::vector<int> child_count(ball.vertex_count(), 0);
    for (const auto& [p, c] : ball.tree_edges) ++child_count[p];
    for (int v = 0; v < ball.vertex_count(); ++v) {
        if (ball.parent[v] == 0) ++root_children;
        if (child_count[v] == 0) ++leaves;
    }
    CHECK(root_children == 2);
    CHECK(leaves == 2);
}

TEST_CASE("universal cover ball of K4 at radius 2 has 10 vertices") {
    const Graph k4 = builtin_graph("k4");
    const RootedBall ball = universal_cover_ball(k4, 0, 2);
    CHECK(ball.vertex_count() == 10); // 1 + 3 + 6
}

TEST_CASE("universal cover ball projects non-backtracking paths onto edges") {
    RandomEngine rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const Graph g = random_connected_graph(rng);
        const int root = static_cast<int>(rng.uniform_below(g.n));
        const RootedBall ball = universal_cover_ball(g, root, 3);
        CHECK(ball.projection[0] == root);
        for (const auto& [p, c] : ball.tree_edges) {
            CHECK(ball.depth[c] == ball.depth[p] + 1);
            // projected edge exists in the base graph
            CHECK(g.edge_between(ball.projection[p], ball.projection[c]) >= 0);
            // non-backtracking: the child never projects onto the grandparent
            if (ball.parent[p] >= 0)
                CHECK(ball.projection[c] != ball.projection[ball.parent[p]]);
        }
    }
}

TEST_CASE("1-fold covering is the base graph") {
    const Graph c4 = builtin_graph("c4");
    const NFoldCovering cov = random_covering(c4, 1, 99);
    CHECK(cov.cover.n == c4.n);
    CHECK(cov.cover.edges == c4.edges);
}

TEST_CASE("K2 3-fold covering is three disjoint edges") {
    const NFoldCovering cov = random_covering(builtin_graph("k2"), 3, 5);
    CHECK(cov.cover.n == 6);
    CHECK(cov.cover.edge_count() == 3); // exactly N preimages of the base edge
    for (int v = 0; v < 6; ++v) CHECK(cov.cover.degree(v) == 1);
    CHECK(component_count(cov.cover) == 3);
}

TEST_CASE("C3 double covers split by the parity of the matchings") {
    const Graph c3 = builtin_graph("c3");
    // Base edges in canonical order: (0,1), (0,2), (1,2). The monodromy
    // around the triangle is sigma_{02}^{-1} sigma_{12} sigma_{01}; the cover
    // is one 6-cycle exactly when an odd number of matchings swap the sheets.
    const std::vector<int> keep{0, 1}, swap{1, 0};
    for (int mask = 0; mask < 8; ++mask) {
        std::vector<std::vector<int>> sigmas;
        int swaps = 0;
        for (int e = 0; e < 3; ++e) {
            const bool flip = mask & (1 << e);
            swaps += flip;
            sigmas.push_back(flip ? swap : keep);
        }
        const NFoldCovering cov(c3, 2, sigmas);
        for (int v = 0; v < 6; ++v) CHECK(cov.cover.degree(v) == 2);
        CHECK(component_count(cov.cover) == (swaps % 2 ? 1 : 2));
    }
}

TEST_CASE("coverings project onto the base and preserve degrees") {
    RandomEngine rng(17);
    for (int trial = 0; trial < 15; ++trial) {
        const Graph g = random_connected_graph(rng);
        const int n = 1 + static_cast<int>(rng.uniform_below(6));
        const NFoldCovering cov = random_covering(g, n, rng.next());
        for (int u = 0; u < cov.cover.n; ++u)
            CHECK(cov.cover.degree(u) == g.degree(cov.base_of_vertex(u)));
        for (int e = 0; e < cov.cover.edge_count(); ++e) {
            const auto [cu, cv] = cov.cover.edges[e];
            const auto [bu, bv] = g.edges[cov.base_of_edge(e)];
            const int pu = cov.base_of_vertex(cu), pv = cov.base_of_vertex(cv);
            CHECK(std::minmax(pu, pv) == std::minmax(bu, bv));
        }
        for (int v = 0; v < g.n; ++v) {
            int fiber = 0;
            for (int u = 0; u < cov.cover.n; ++u)
                if (cov.base_of_vertex(u) == v) ++fiber;
            CHECK(fiber == n);
        }
    }
}

TEST_CASE("equal seeds reproduce the covering") {
    const Graph k4 = builtin_graph("k4");
    const NFoldCovering a = random_covering(k4, 7, 123);
    const NFoldCovering b = random_covering(k4, 7, 123);
    const NFoldCovering c = random_covering(k4, 7, 124);
    CHECK(a.sigma == b.sigma);
    CHECK(a.sigma != c.sigma);
}

TEST_CASE("covering file round-trip") {
    const NFoldCovering cov = random_covering(builtin_graph("c4"), 5, 321);
    const std::string path = "core_cover_roundtrip.txt";
    save_covering(cov, path);
    const NFoldCovering back = load_covering(path);
    CHECK(back.fold == cov.fold);
    CHECK(back.base.edges == cov.base.edges);
    CHECK(back.sigma == cov.sigma);
    std::remove(path.c_str());
}

TEST_CASE("covers of K2 are fully nice") {
    const NFoldCovering cov = random_covering(builtin_graph("k2"), 20, 7);
    for (int r = 1; r <= 3; ++r) {
        const NicenessAudit audit = niceness_audit(cov, r);
        CHECK(audit.min_vertex_fraction() == 1.0);
        CHECK(audit.min_edge_fraction() == 1.0);
        CHECK(audit.is_nice(0.01));
    }
}

TEST_CASE("the triangle itself is nowhere 2-nice") {
    const Graph c3 = builtin_graph("c3");
    const NFoldCovering cov(c3, 1, {{0}, {0}, {0}});
    const NicenessAudit audit = niceness_audit(cov, 2);
    CHECK(audit.universal_ball_size[0] == 5); // only 3 vertices available
    CHECK(audit.min_vertex_fraction() == 0.0);
    CHECK(audit.min_edge_fraction() == 0.0);
    CHECK_FALSE(audit.is_nice(0.5));
}

TEST_CASE("cover balls never exceed the universal ball, equality = nice") {
    RandomEngine rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        const Graph g = random_connected_graph(rng);
        const int n = 2 + static_cast<int>(rng.uniform_below(5));
        const NFoldCovering cov = random_covering(g, n, rng.next());
        const int radius = 1 + static_cast<int>(rng.uniform_below(3));
        const NicenessAudit audit = niceness_audit(cov, radius);
        for (int u = 0; u < cov.cover.n; ++u) {
            const int cover_ball = ball_size(cov.cover, u, radius);
            const int universal = audit.universal_ball_size[cov.base_of_vertex(u)];
            CHECK(cover_ball <= universal);
            CHECK((cover_ball == universal) == static_cast<bool>(audit.vertex_nice[u]));
        }
    }
}

TEST_CASE("niceness fractions shrink as the radius grows") {
    RandomEngine rng(29);
    for (int trial = 0; trial < 10; ++trial) {
        const Graph g = random_connected_graph(rng);
        const NFoldCovering cov =
            random_covering(g, 2 + static_cast<int>(rng.uniform_below(8)), rng.next());
        double prev = 2.0;
        for (int radius = 1; radius <= 4; ++radius) {
            const double frac = niceness_audit(cov, radius).min_vertex_fraction();
            CHECK(frac <= prev + 1e-12);
            prev = frac;
        }
    }
}

TEST_CASE("large C3 covers are mostly 2-nice") {
    std::vector<double> fracs;
    for (int s = 0; s < 20; ++s) {
        const NicenessAudit audit =
            niceness_audit(random_covering(builtin_graph("c3"), 200, 1000 + s), 2);
        fracs.push_back(audit.min_vertex_fraction());
    }
    std::sort(fracs.begin(), fracs.end());
    CHECK(fracs[fracs.size() / 2] >= 0.95); // median
}
