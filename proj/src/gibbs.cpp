#include "gibbslab/gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

#include "gibbslab/errors.hpp"

namespace gibbslab {

DistTable brute_force_gibbs(const Graph& g, const Potential& p, std::size_t cap) {
    p.check_compatible(g);
    std::vector<int> domain(g.n);
    for (int v = 0; v < g.n; ++v) domain[v] = v;
    DistTable::table_size(p.alphabet, domain.size(), cap);

    DistTable nu(domain, p.alphabet);
    std::vector<double> energies(nu.size());
    std::vector<int> coloring(g.n, 0);
    double emin = std::numeric_limits<double>::infinity();
    for (std::size_t idx = 0; idx < nu.size(); ++idx) {
        nu.decode(idx, coloring);
        energies[idx] = p.energy(g, coloring);
        emin = std::min(emin, energies[idx]);
    }
    for (std::size_t idx = 0; idx < nu.size(); ++idx)
        nu.p[idx] = std::exp(-(energies[idx] - emin));
    nu.normalize();
    return nu;
}

std::vector<int> neighborhood(const Graph& g, const std::vector<int>& lambda,
                              int range) {
    std::vector<int> dist(g.n, -1);
    std::queue<int> frontier;
    for (int v : lambda) {
        if (v < 0 || v >= g.n)
            throw std::invalid_argument("lambda vertex out of range");
        dist[v] = 0;
        frontier.push(v);
    }
    std::vector<int> out;
    while (!frontier.empty()) {
        const int v = frontier.front();
        frontier.pop();
        if (dist[v] == range) continue;
        for (const Arc& a : g.adj[v])
            if (dist[a.to] < 0) {
                dist[a.to] = dist[v] + 1;
                out.push_back(a.to);
                frontier.push(a.to);
            }
    }
    std::sort(out.begin(), out.end());
    return out;
}

DistTable conditional_table(const Potential& p, const Graph& g,
                            const std::map<int, int>& boundary,
                            std::vector<int> lambda) {
    p.check_compatible(g);
    std::sort(lambda.begin(), lambda.end());
    if (std::adjacent_find(lambda.begin(), lambda.end()) != lambda.end())
        throw std::invalid_argument("lambda has repeated vertices");
    for (int v : lambda)
        if (boundary.count(v))
            throw std::invalid_argument("lambda and boundary overlap");

    for (int v : neighborhood(g, lambda, 2))
        if (!boundary.count(v))
            throw IncompleteBoundaryError("boundary misses vertex " +
                                          std::to_string(v));

    std::vector<char> in_lambda(g.n, 0);
    std::vector<int> slot(g.n, -1);
    for (std::size_t k = 0; k < lambda.size(); ++k) {
        in_lambda[lambda[k]] = 1;
        slot[lambda[k]] = static_cast<int>(k);
    }

    // psi is summed over lambda and its 1-neighborhood; every symbol those
    // sites read lives in lambda or the supplied boundary.
    std::vector<int> active = lambda;
    for (int v : neighborhood(g, lambda, 1)) active.push_back(v);

    const auto symbol_at = [&](int v, const std::vector<int>& s) {
        if (in_lambda[v]) return s[slot[v]];
        const auto it = boundary.find(v);
        if (it == boundary.end())
            throw IncompleteBoundaryError("boundary misses vertex " + std::to_string(v));
        return it->second;
    };

    DistTable table(lambda, p.alphabet);
    std::vector<double> energies(table.size());
    std::vector<int> s(lambda.size());
    double emin = std::numeric_limits<double>::infinity();
    for (std::size_t idx = 0; idx < table.size(); ++idx) {
        table.decode(idx, s);
        double e = 0.0;
        for (int v : active) {
            const int a = symbol_at(v, s);
            e += p.field[v][a];
            for (const Arc& arc : g.adj[v])
                e += 0.5 * p.pair_term(g, arc.edge, v, a, symbol_at(arc.to, s));
        }
        energies[idx] = e;
        emin = std::min(emin, e);
    }
    for (std::size_t idx = 0; idx < table.size(); ++idx)
        table.p[idx] = std::exp(-(energies[idx] - emin));
    table.normalize();
    return table;
}

double dlr_check(const DistTable& nu, const Potential& p, const Graph& g,
                 const std::vector<int>& lambda) {
    p.check_compatible(g);
    if (static_cast<int>(nu.domain.size()) != g.n || nu.alphabet != p.alphabet)
        throw DomainMismatchError("nu must be a full table over the graph");

    std::vector<int> sorted = lambda;
    std::sort(sorted.begin(), sorted.end());
    std::vector<char> in_lambda(g.n, 0);
    for (int v : sorted) in_lambda[v] = 1;
    std::vector<int> exterior;
    for (int v = 0; v < g.n; ++v)
        if (!in_lambda[v]) exterior.push_back(v);
    const std::vector<int> closure = neighborhood(g, sorted, 2);

    const auto q = static_cast<std::size_t>(p.alphabet);
    std::size_t n_ext = 1, n_int = 1;
    for (std::size_t k = 0; k < exterior.size(); ++k) n_ext *= q;
    for (std::size_t k = 0; k < sorted.size(); ++k) n_int *= q;

    // The formula table depends on the exterior only through the
    // 2-neighborhood; cache it per boundary restriction.
    std::map<std::vector<int>, DistTable> cache;

    double worst = 0.0;
    std::vector<int> full(g.n), t(exterior.size()), key(closure.size());
    for (std::size_t te = 0; te < n_ext; ++te) {
        std::size_t rest = te;
        for (std::size_t k = exterior.size(); k-- > 0;) {
            t[k] = static_cast<int>(rest % q);
            rest /= q;
        }
        for (std::size_t k = 0; k < exterior.size(); ++k) full[exterior[k]] = t[k];

        double pt = 0.0;
        for (std::size_t si = 0; si < n_int; ++si) {
            std::size_t r = si;
            for (std::size_t k = sorted.size(); k-- > 0;) {
                full[sorted[k]] = static_cast<int>(r % q);
                r /= q;
            }
            pt += nu.at(full);
        }
        if (pt <= 0.0) continue;

        for (std::size_t k = 0; k < closure.size(); ++k) key[k] = full[closure[k]];
        auto it = cache.find(key);
        if (it == cache.end()) {
            std::map<int, int> boundary;
            for (std::size_t k = 0; k < closure.size(); ++k)
                boundary[closure[k]] = key[k];
            it = cache.emplace(key, conditional_table(p, g, boundary, sorted)).first;
        }
        const DistTable& formula = it->second;

        for (std::size_t si = 0; si < n_int; ++si) {
            std::size_t r = si;
            for (std::size_t k = sorted.size(); k-- > 0;) {
                full[sorted[k]] = static_cast<int>(r % q);
                r /= q;
            }
            const double conditional = nu.at(full) / pt;
            worst = std::max(worst, std::abs(conditional - formula.p[si]));
        }
    }
    return worst;
}

GlauberChain::GlauberChain(const Graph& g, const Potential& p, std::uint64_t seed)
    : graph_(g), potential_(p), rng_(seed), state_(g.n),
      weights_(static_cast<std::size_t>(p.alphabet)) {
    p.check_compatible(g);
    for (int v = 0; v < g.n; ++v)
        state_[v] = static_cast<int>(rng_.uniform_below(p.alphabet));
}

void GlauberChain::update_site(int v) {
    const int q = potential_.alphabet;
    double emin = std::numeric_limits<double>::infinity();
    for (int a = 0; a < q; ++a) {
        double e = potential_.field[v][a];
        for (const Arc& arc : graph_.adj[v])
            e += potential_.pair_term(graph_, arc.edge, v, a, state_[arc.to]);
        weights_[a] = e;
        emin = std::min(emin, e);
    }
    double total = 0.0;
    for (int a = 0; a < q; ++a) {
        weights_[a] = std::exp(-(weights_[a] - emin));
        total += weights_[a];
    }
    const double u = rng_.uniform01() * total;
    double acc = 0.0;
    for (int a = 0; a < q; ++a) {
        acc += weights_[a];
        if (u < acc || a == q - 1) {
            state_[v] = a;
            return;
        }
    }
}

void GlauberChain::sweep() {
    for (int step = 0; step < graph_.n; ++step)
        update_site(static_cast<int>(rng_.uniform_below(graph_.n)));
}

void GlauberChain::sweeps(int count) {
    for (int i = 0; i < count; ++i) sweep();
}

std::vector<int> glauber_sample(const Graph& g, const Potential& p, int sweeps,
                                std::uint64_t seed) {
    if (sweeps < 1)
        throw std::invalid_argument("sweeps must be >= 1");
    GlauberChain chain(g, p, seed);
    chain.sweeps(sweeps);
    return chain.state();
}

} // namespace gibbslab
