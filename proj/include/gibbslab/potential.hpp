#ifndef GIBBSLAB_POTENTIAL_HPP
#define GIBBSLAB_POTENTIAL_HPP

#include <string>
#include <vector>

#include "gibbslab/cover.hpp"
#include "gibbslab/graph.hpp"

namespace gibbslab {

// Nearest-neighbor specification: a field table per vertex and a pair table
// per edge. Pair tables are stored in the canonical u < v orientation,
// coupling[e][a*q + b] with a the symbol at u. The site energy convention is
//   psi_v(w) = field_v(w(v)) + 1/2 * sum_{e at v} coupling_e(...),
// so that the total energy is sum_v field_v + sum_e coupling_e with each edge
// counted once.
struct Potential {
    int alphabet = 0;
    std::vector<std::string> symbols;           // names, for file round-trips
    std::vector<std::vector<double>> field;     // [vertex][symbol]
    std::vector<std::vector<double>> coupling;  // [edge][a*q+b]

    double pair_term(const Graph& g, int edge, int endpoint, int symbol_here,
                     int symbol_other) const;

    // field + coupling energy of a full coloring; the Boltzmann weight is
    // exp(-energy).
    double energy(const Graph& g, const std::vector<int>& coloring) const;

    void check_compatible(const Graph& g) const;
};

// Two-symbol model with coupling -beta when endpoints agree and +beta when
// they differ, field -h on symbol 0 and +h on symbol 1 (spins +1/-1).
Potential ising_potential(const Graph& g, double beta, double field = 0.0);

// q symbols, coupling -beta on agreement and 0 otherwise.
Potential potts_potential(const Graph& g, int q, double beta);

// Same tables on every lifted vertex and edge: h_{(i,v)} = h_v and the
// coupling of a cover edge is that of its base edge. Cover edges preserve the
// base orientation, so tables carry over untransposed.
Potential transfer_potential(const Potential& p, const NFoldCovering& c);

// Plain-text sections [alphabet], [fields] (vertex symbol value) and
// [pairs] (u v symbol symbol value); omitted entries are zero.
Potential load_potential(const Graph& g, const std::string& path);
void save_potential(const Potential& p, const Graph& g, const std::string& path);

} // namespace gibbslab

#endif // GIBBSLAB_POTENTIAL_HPP
