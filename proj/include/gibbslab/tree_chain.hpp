#ifndef GIBBSLAB_TREE_CHAIN_HPP
#define GIBBSLAB_TREE_CHAIN_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "gibbslab/dist_table.hpp"

namespace gibbslab {

// Homogeneous nearest-neighbor model on the d-regular tree: one symmetric
// pair table shared by every edge and one field table shared by every vertex.
struct TreeModel {
    int alphabet = 0;
    std::vector<double> coupling; // q*q, symmetric
    std::vector<double> field;    // q

    double j(int a, int b) const { return coupling[static_cast<std::size_t>(a) * alphabet + b]; }
};

TreeModel ising_tree_model(double beta, double field = 0.0);
TreeModel potts_tree_model(int q, double beta);

// Fixed point of the directed-message recursion
//   m'(a) = exp(-h(a)) * (sum_b exp(-J(a,b)) m(b))^(d-1),  normalized.
struct BPResult {
    std::vector<double> message; // fixed point reached from the uniform start
    bool converged = false;
    bool unique = false; // all starts (uniform, corners, random) agree
    int iterations = 0;
    double residual = 0.0;
};

// Multi-start solver: the returned message comes from the uniform
// initialization; corner starts (mass 0.99 on one symbol) plus n_inits - 1
// random starts probe for coexisting fixed points, and the uniqueness verdict
// requires all of them to land within 10*tol of each other. Damping 0.5 kicks
// in when the residual stops decreasing. Throws NotConvergedError if the
// uniform start fails to converge.
BPResult bp_solve(int degree, const TreeModel& model, double tol = 1e-13,
                  int n_inits = 8, std::uint64_t seed = 1,
                  int max_iterations = 50000);

// Tree-indexed Markov chain form of the unique measure: root marginal pi and
// a reversible row-stochastic transition matrix along every edge.
struct TreeChain {
    int alphabet = 0;
    int degree = 0;
    std::vector<double> pi;    // q
    std::vector<double> trans; // q*q row-stochastic

    double p(int a, int b) const { return trans[static_cast<std::size_t>(a) * alphabet + b]; }
    DistTable root_marginal() const; // DistTable over a single slot

    // pi positive and normalized, rows stochastic, detailed balance.
    void validate(double tol = 1e-10) const;
};

// pi(a) proportional to exp(-h(a)) * mu(a)^d and P(a,b) = exp(-J(a,b)) m(b) / mu(a),
// where mu(a) = sum_b exp(-J(a,b)) m(b) is the incoming message. Throws
// InvariantViolationError when the result fails detailed balance (a wrong or
// unconverged fixed point).
TreeChain chain_from_bp(const BPResult& bp, int degree, const TreeModel& model);

// xi(a,b) = pi(a) P^k(a,b): the joint law of two vertices at distance k.
DistTable joint_at_distance(const TreeChain& chain, int k);

// 2 / (d (d-1)^l) for odd k = 2l+1, 1 / (d-1)^l for even k = 2l.
double information_decay_bound(int degree, int k);

struct DecayRow {
    int k = 0;
    double mutual_info = 0.0;
    double entropy = 0.0;
    double ratio = 0.0;
    double bound = 0.0;
    bool pass = false;
};

// One row per distance k = 1..k_max; ratio = I(k)/H(pi) checked against the
// decay bound. Callers are expected to have a uniqueness-certified chain.
std::vector<DecayRow> decay_table(const TreeChain& chain, int k_max);

std::string decay_table_csv(const std::vector<DecayRow>& rows);

// Finite subtree of the regular tree given as a parent array: parent[0] = -1
// and parent[i] < i. Vertex degrees must fit inside T_d.
struct TreeShape {
    std::vector<int> parent;

    int size() const { return static_cast<int>(parent.size()); }
    std::vector<std::vector<int>> children() const;
    void validate(int degree) const;
};

// Ball of radius r around a vertex: root with d subtrees of depth r-1.
TreeShape radius_ball_shape(int degree, int radius);
// Union of the r-balls around the two ends of an edge; vertex 0 is one end,
// vertex 1 the other.
TreeShape edge_union_shape(int degree, int radius);

// Exact law of the chain restricted to the shape:
// P(w) = pi(w(0)) * prod_edges P(w(parent), w(child)).
DistTable ball_measure(const TreeChain& chain, const TreeShape& shape,
                       std::size_t cap = kDefaultEnumerationCap);

} // namespace gibbslab

#endif // GIBBSLAB_TREE_CHAIN_HPP
