#include "gibbslab/cover.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "gibbslab/errors.hpp"
#include "gibbslab/rng.hpp"

namespace gibbslab {

RootedBall universal_cover_ball(const Graph& g, int root, int radius) {
    if (root < 0 || root >= g.n)
        throw std::invalid_argument("root out of range");
    if (radius < 0)
        throw std::invalid_argument("radius must be >= 0");

    RootedBall ball;
    ball.root = root;
    ball.radius = radius;
    ball.parent.push_back(-1);
    ball.depth.push_back(0);
    ball.projection.push_back(root);

    // BFS over non-backtracking paths; a path is identified by its ball
    // vertex, its endpoint, and the vertex stepped from.
    struct Frontier {
        int id;
        int at;
        int from; // -1 for the trivial path
    };
    std::queue<Frontier> queue;
    queue.push({0, root, -1});
    while (!queue.empty()) {
        const Frontier f = queue.front();
        queue.pop();
        if (ball.depth[f.id] == radius) continue;
        for (const Arc& a : g.adj[f.at]) {
            if (a.to == f.from) continue; // backtracking step
            const int child = ball.vertex_count();
            ball.parent.push_back(f.id);
            ball.depth.push_back(ball.depth[f.id] + 1);
            ball.projection.push_back(a.to);
            ball.tree_edges.emplace_back(f.id, child);
            queue.push({child, a.to, f.at});
        }
    }
    return ball;
}

NFoldCovering::NFoldCovering(Graph base_graph, int n_fold,
                             std::vector<std::vector<int>> sigmas)
    : base(std::move(base_graph)), fold(n_fold), sigma(std::move(sigmas)) {
    if (fold < 1)
        throw std::invalid_argument("fold count must be >= 1");
    if (sigma.size() != base.edges.size())
        throw std::invalid_argument("need one permutation per base edge");
    for (const auto& s : sigma) {
        if (static_cast<int>(s.size()) != fold)
            throw std::invalid_argument("permutation has wrong length");
        std::vector<char> seen(fold, 0);
        for (int x : s) {
            if (x < 0 || x >= fold || seen[x])
                throw std::invalid_argument("not a permutation of {0..N-1}");
            seen[x] = 1;
        }
    }

    std::vector<std::pair<int, int>> cover_edges;
    cover_edges.reserve(base.edges.size() * fold);
    for (int e = 0; e < base.edge_count(); ++e) {
        const auto [u, v] = base.edges[e];
        for (int i = 0; i < fold; ++i)
            cover_edges.emplace_back(cover_vertex(u, i), cover_vertex(v, sigma[e][i]));
    }
    cover = Graph::from_edges(base.n * fold, std::move(cover_edges));
}

NFoldCovering random_covering(const Graph& g, int n_fold, std::uint64_t seed) {
    if (n_fold < 1)
        throw std::invalid_argument("fold count must be >= 1");
    RandomEngine rng(seed);
    std::vector<std::vector<int>> sigmas(g.edges.size());
    for (auto& s : sigmas) {
        s.resize(n_fold);
        std::iota(s.begin(), s.end(), 0);
        rng.shuffle(s);
    }
    return NFoldCovering(g, n_fold, std::move(sigmas));
}

int ball_size(const Graph& g, int u, int radius) {
    std::vector<int> dist(g.n, -1);
    std::queue<int> frontier;
    dist[u] = 0;
    frontier.push(u);
    int count = 1;
    while (!frontier.empty()) {
        const int v = frontier.front();
        frontier.pop();
        if (dist[v] == radius) continue;
        for (const Arc& a : g.adj[v]) {
            if (dist[a.to] < 0) {
                dist[a.to] = dist[v] + 1;
                ++count;
                frontier.push(a.to);
            }
        }
    }
    return count;
}

double NicenessAudit::min_vertex_fraction() const {
    return *std::min_element(vertex_fraction.begin(), vertex_fraction.end());
}

double NicenessAudit::min_edge_fraction() const {
    return *std::min_element(edge_fraction.begin(), edge_fraction.end());
}

bool NicenessAudit::is_nice(double eps) const {
    return min_vertex_fraction() > 1.0 - eps && min_edge_fraction() > 1.0 - eps;
}

NicenessAudit niceness_audit(const NFoldCovering& c, int radius) {
    if (radius < 1)
        throw std::invalid_argument("radius must be >= 1");

    NicenessAudit audit;
    audit.radius = radius;
    audit.universal_ball_size.resize(c.base.n);
    for (int v = 0; v < c.base.n; ++v)
        audit.universal_ball_size[v] =
            universal_cover_ball(c.base, v, radius).vertex_count();

    audit.vertex_nice.assign(c.cover.n, 0);
    audit.vertex_fraction.assign(c.base.n, 0.0);
    for (int v = 0; v < c.base.n; ++v) {
        int nice = 0;
        for (int i = 0; i < c.fold; ++i) {
            const int u = c.cover_vertex(v, i);
            if (ball_size(c.cover, u, radius) == audit.universal_ball_size[v]) {
                audit.vertex_nice[u] = 1;
                ++nice;
            }
        }
        audit.vertex_fraction[v] = static_cast<double>(nice) / c.fold;
    }

    audit.edge_fraction.assign(c.base.edge_count(), 0.0);
    for (int e = 0; e < c.base.edge_count(); ++e) {
        const auto [u, v] = c.base.edges[e];
        int nice = 0;
        for (int i = 0; i < c.fold; ++i) {
            if (audit.vertex_nice[c.cover_vertex(u, i)] &&
                audit.vertex_nice[c.cover_vertex(v, c.sigma[e][i])])
                ++nice;
        }
        audit.edge_fraction[e] = static_cast<double>(nice) / c.fold;
    }
    return audit;
}

void save_covering(const NFoldCovering& c, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write covering file: " + path);
    out << "N " << c.fold << "\n";
    for (const auto& [u, v] : c.base.edges)
        out << u << " " << v << "\n";
    for (const auto& s : c.sigma) {
        out << "sigma";
        for (int x : s) out << " " << x;
        out << "\n";
    }
}

NFoldCovering load_covering(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open covering file: " + path);
    std::string line;
    int fold = -1;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<int>> sigmas;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head)) continue;
        if (head == "N") {
            if (!(ls >> fold)) throw std::runtime_error("bad N line in " + path);
        } else if (head == "sigma") {
            std::vector<int> s;
            int x;
            while (ls >> x) s.push_back(x);
            sigmas.push_back(std::move(s));
        } else {
            const int u = std::stoi(head);
            int v;
            if (!(ls >> v)) throw std::runtime_error("bad edge line in " + path);
            edges.emplace_back(u, v);
        }
    }
    if (fold < 1)
        throw std::runtime_error("covering file missing N line: " + path);
    return NFoldCovering(build_graph(edges), fold, std::move(sigmas));
}

} // namespace gibbslab
