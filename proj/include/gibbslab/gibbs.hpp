#ifndef GIBBSLAB_GIBBS_HPP
#define GIBBSLAB_GIBBS_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "gibbslab/dist_table.hpp"
#include "gibbslab/graph.hpp"
#include "gibbslab/potential.hpp"
#include "gibbslab/rng.hpp"

namespace gibbslab {

// Exact finite-graph measure: nu({w}) = exp(-energy(w)) / Z over all of
// A^V. Energies are shifted by their minimum before exponentiation, so the
// computation stays in range for any coupling strength.
DistTable brute_force_gibbs(const Graph& g, const Potential& p,
                            std::size_t cap = kDefaultEnumerationCap);

// Conditional of the coloring on `lambda` given boundary symbols on the
// 2-neighborhood of lambda (nearest-neighbor tables, memory 1). The boundary
// map may cover more vertices; it must contain at least the 2-neighborhood
// or IncompleteBoundaryError is thrown.
DistTable conditional_table(const Potential& p, const Graph& g,
                            const std::map<int, int>& boundary,
                            std::vector<int> lambda);

// Exterior vertices of lambda at distance <= range.
std::vector<int> neighborhood(const Graph& g, const std::vector<int>& lambda,
                              int range);

// Max over exterior completions t (with nu-positive probability) and interior
// colorings s of |nu(s|t) - conditional_table(s | t restricted to the
// 2-neighborhood)|. Zero for a Gibbs table; also certifies that the exact
// conditional depends on the exterior only through the 2-neighborhood.
double dlr_check(const DistTable& nu, const Potential& p, const Graph& g,
                 const std::vector<int>& lambda);

// Single-site heat-bath dynamics. One sweep picks |V| sites uniformly at
// random (with replacement) and resamples each from its conditional given
// the current neighbors.
class GlauberChain {
public:
    GlauberChain(const Graph& g, const Potential& p, std::uint64_t seed);

    void sweep();
    void sweeps(int count);
    const std::vector<int>& state() const { return state_; }

private:
    void update_site(int v);

    const Graph& graph_;
    const Potential& potential_;
    RandomEngine rng_;
    std::vector<int> state_;
    std::vector<double> weights_;
};

// Coloring after `sweeps` full heat-bath passes from a uniform random start.
std::vector<int> glauber_sample(const Graph& g, const Potential& p, int sweeps,
                                std::uint64_t seed);

} // namespace gibbslab

#endif // GIBBSLAB_GIBBS_HPP
