#include "gibbslab/empirical.hpp"

#include <stdexcept>
#include <string>

#include "gibbslab/errors.hpp"
#include "gibbslab/info.hpp"

namespace gibbslab {

MarginalFamily empirical_dists(const NFoldCovering& cov,
                               const std::vector<int>& coloring,
                               int out_alphabet) {
    if (static_cast<int>(coloring.size()) != cov.cover.n)
        throw std::invalid_argument("coloring does not cover the graph");
    const double n = cov.fold;

    // Integer counts first, one division at the end.
    MarginalFamily fam;
    fam.vertex.reserve(cov.base.n);
    std::vector<long long> count;
    for (int v = 0; v < cov.base.n; ++v) {
        count.assign(out_alphabet, 0);
        for (int i = 0; i < cov.fold; ++i)
            ++count[coloring[cov.cover_vertex(v, i)]];
        DistTable mu({v}, out_alphabet);
        for (int a = 0; a < out_alphabet; ++a) mu.p[a] = count[a] / n;
        fam.vertex.push_back(std::move(mu));
    }

    const auto q = static_cast<std::size_t>(out_alphabet);
    fam.edge.reserve(cov.base.edge_count());
    for (int e = 0; e < cov.base.edge_count(); ++e) {
        const auto [u, v] = cov.base.edges[e];
        count.assign(q * q, 0);
        for (int i = 0; i < cov.fold; ++i) {
            const int a = coloring[cov.cover_vertex(u, i)];
            const int b = coloring[cov.cover_vertex(v, cov.sigma[e][i])];
            ++count[static_cast<std::size_t>(a) * q + b];
        }
        DistTable mu({u, v}, out_alphabet);
        for (std::size_t i = 0; i < q * q; ++i) mu.p[i] = count[i] / n;
        fam.edge.push_back(std::move(mu));
    }
    return fam;
}

MarginalFamily homogeneous_family(const Graph& g, const DistTable& mu_v,
                                  const DistTable& mu_e) {
    MarginalFamily fam;
    fam.vertex.reserve(g.n);
    for (int v = 0; v < g.n; ++v)
        fam.vertex.push_back(mu_v.with_domain({v}));
    fam.edge.reserve(g.edge_count());
    for (const auto& [u, v] : g.edges)
        fam.edge.push_back(mu_e.with_domain({u, v}));
    return fam;
}

double edge_vertex_slack(const Graph& g, const MarginalFamily& mus,
                         double consistency_tol) {
    if (static_cast<int>(mus.vertex.size()) != g.n ||
        static_cast<int>(mus.edge.size()) != g.edge_count())
        throw std::invalid_argument("marginal family does not match the graph");

    for (int e = 0; e < g.edge_count(); ++e) {
        const auto [u, v] = g.edges[e];
        const double du = tv_distance(mus.edge[e].marginal_positions({0}), mus.vertex[u]);
        const double dv = tv_distance(mus.edge[e].marginal_positions({1}), mus.vertex[v]);
        if (du > consistency_tol || dv > consistency_tol)
            throw InconsistentMarginalsError(
                "edge " + std::to_string(u) + "-" + std::to_string(v) +
                " marginals mismatch endpoint laws (tv " + std::to_string(du) +
                ", " + std::to_string(dv) + ")");
    }

    double slack = 0.0;
    for (const DistTable& mu : mus.edge) slack += entropy(mu);
    for (int v = 0; v < g.n; ++v)
        slack -= (g.degree(v) - 1) * entropy(mus.vertex[v]);
    return slack;
}

} // namespace gibbslab
