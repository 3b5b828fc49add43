#ifndef GIBBSLAB_EMPIRICAL_HPP
#define GIBBSLAB_EMPIRICAL_HPP

#include <vector>

#include "gibbslab/cover.hpp"
#include "gibbslab/dist_table.hpp"

namespace gibbslab {

// One distribution per base vertex (over B) and per base edge (over B x B,
// first component at the smaller endpoint).
struct MarginalFamily {
    std::vector<DistTable> vertex;
    std::vector<DistTable> edge;
};

// Fiber-frequency tables of a coloring: mu_v counts symbols over the fiber
// of v, mu_e counts symbol pairs over the matched pairs of the fiber of e.
// Marginal consistency is exact because every fiber element lies in exactly
// one matched pair per incident base edge.
MarginalFamily empirical_dists(const NFoldCovering& cov,
                               const std::vector<int>& coloring,
                               int out_alphabet);

// Replicates one vertex law and one edge law over a whole (vertex- and
// edge-transitive) collection of targets for a given base graph.
MarginalFamily homogeneous_family(const Graph& g, const DistTable& mu_v,
                                  const DistTable& mu_e);

// Signed slack  sum_e H(mu_e) - sum_v (deg(v)-1) H(mu_v).  Marginals of each
// edge law must match the endpoint laws within `consistency_tol` in total
// variation, else InconsistentMarginalsError.
double edge_vertex_slack(const Graph& g, const MarginalFamily& mus,
                         double consistency_tol = 1e-9);

} // namespace gibbslab

#endif // GIBBSLAB_EMPIRICAL_HPP
