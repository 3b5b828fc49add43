#ifndef GIBBSLAB_INFO_HPP
#define GIBBSLAB_INFO_HPP

#include <cstdint>
#include <vector>

#include "gibbslab/dist_table.hpp"

namespace gibbslab {

// Real-valued function of a single symbol.
struct Observable {
    std::vector<double> values;

    double operator()(int symbol) const { return values[symbol]; }
    double max_abs() const;

    static Observable spin();              // {0,1} -> {+1,-1}
    static Observable indicator(int symbol, int alphabet); // centered: 1[a=s] - 1/q
};

// Shannon entropy in nats, with 0 log 0 = 0.
double entropy(const DistTable& p);

// H(X) + H(Y) - H(X,Y) of a two-component table; clamped at 0.
double mutual_information(const DistTable& joint);

// Half L1 distance; tables must share domain arity and alphabet.
double tv_distance(const DistTable& p, const DistTable& q);

// E[f(X) g(Y)] - E[f(X)] E[g(Y)] under a two-component table.
double covariance(const DistTable& joint, const Observable& f, const Observable& g);

// Product of the two marginals of a pair table.
DistTable product_of_marginals(const DistTable& joint);

// Empirical probe of the quadratic lower bound I(xi) >= C' * tv(xi, eta x eta)^2
// over the polytope of pair measures with both marginals equal to eta.
// Draws random zero-marginal perturbation directions, rescales each to total
// variation `magnitude`, and returns the smallest observed I / magnitude^2.
// Throws PerturbationInfeasibleError when the magnitude pushes the perturbed
// table out of the simplex.
double quadratic_info_bound_check(const DistTable& eta, int n_perturbations,
                                  double magnitude, std::uint64_t seed);

} // namespace gibbslab

#endif // GIBBSLAB_INFO_HPP
