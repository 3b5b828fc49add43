#include "gibbslab/tree_chain.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>

#include "gibbslab/errors.hpp"
#include "gibbslab/info.hpp"
#include "gibbslab/rng.hpp"

namespace gibbslab {

TreeModel ising_tree_model(double beta, double field) {
    TreeModel m;
    m.alphabet = 2;
    const double spin[2] = {+1.0, -1.0};
    m.coupling = {-beta, beta, beta, -beta};
    m.field = {-field * spin[0], -field * spin[1]};
    return m;
}

TreeModel potts_tree_model(int q, double beta) {
    if (q < 2) throw std::invalid_argument("potts needs q >= 2");
    TreeModel m;
    m.alphabet = q;
    m.coupling.assign(static_cast<std::size_t>(q) * q, 0.0);
    for (int a = 0; a < q; ++a) m.coupling[static_cast<std::size_t>(a) * q + a] = -beta;
    m.field.assign(q, 0.0);
    return m;
}

namespace {

void normalize(std::vector<double>& v) {
    double sum = 0.0;
    for (double x : v) sum += x;
    for (double& x : v) x /= sum;
}

double linf(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

// Incoming message mu(a) = sum_b exp(-J(a,b)) m(b).
std::vector<double> incoming(const TreeModel& model, const std::vector<double>& m) {
    const int q = model.alphabet;
    std::vector<double> mu(q, 0.0);
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            mu[a] += std::exp(-model.j(a, b)) * m[b];
    return mu;
}

struct IterationOutcome {
    std::vector<double> message;
    bool converged = false;
    int iterations = 0;
    double residual = 0.0;
};

IterationOutcome iterate_bp(int degree, const TreeModel& model,
                            std::vector<double> m, double tol, int max_iterations) {
    const int q = model.alphabet;
    normalize(m);
    std::vector<double> next(q);
    bool damping = false;
    double prev_residual = std::numeric_limits<double>::infinity();
    IterationOutcome out;
    for (int it = 1; it <= max_iterations; ++it) {
        const std::vector<double> mu = incoming(model, m);
        for (int a = 0; a < q; ++a)
            next[a] = std::exp(-model.field[a]) * std::pow(mu[a], degree - 1);
        normalize(next);
        const double residual = linf(next, m);
        if (damping)
            for (int a = 0; a < q; ++a) next[a] = 0.5 * next[a] + 0.5 * m[a];
        m = next;
        out.iterations = it;
        out.residual = residual;
        if (residual <= tol) {
            out.converged = true;
            break;
        }
        // Non-decreasing residual signals oscillation around the fixed point.
        if (!damping && it > 8 && residual >= prev_residual) damping = true;
        prev_residual = residual;
    }
    out.message = std::move(m);
    return out;
}

} // namespace

BPResult bp_solve(int degree, const TreeModel& model, double tol, int n_inits,
                  std::uint64_t seed, int max_iterations) {
    if (degree < 3) throw std::invalid_argument("degree must be >= 3");
    if (tol <= 0.0) throw std::invalid_argument("tolerance must be positive");
    if (n_inits < 2) throw std::invalid_argument("need at least two starts");
    const int q = model.alphabet;

    std::vector<std::vector<double>> starts;
    starts.emplace_back(q, 1.0 / q);
    for (int a = 0; a < q; ++a) {
        std::vector<double> corner(q, 0.01 / std::max(1, q - 1));
        corner[a] = 0.99;
        starts.push_back(std::move(corner));
    }
    RandomEngine rng(seed);
    for (int i = 0; i < n_inits - 1; ++i) {
        std::vector<double> r(q);
        for (double& x : r) x = 0.05 + rng.uniform01();
        starts.push_back(std::move(r));
    }

    BPResult result;
    bool all_agree = true;
    for (std::size_t i = 0; i < starts.size(); ++i) {
        IterationOutcome run =
            iterate_bp(degree, model, starts[i], tol, max_iterations);
        if (i == 0) {
            if (!run.converged)
                throw NotConvergedError("message iteration did not converge in " +
                                        std::to_string(max_iterations) + " iterations");
            result.message = run.message;
            result.converged = true;
            result.iterations = run.iterations;
            result.residual = run.residual;
        } else if (!run.converged || linf(run.message, result.message) > 10.0 * tol) {
            all_agree = false;
        }
    }
    result.unique = all_agree;
    return result;
}

DistTable TreeChain::root_marginal() const {
    DistTable out({0}, alphabet);
    out.p = pi;
    return out;
}

void TreeChain::validate(double tol) const {
    const int q = alphabet;
    double sum = 0.0;
    for (double x : pi) {
        if (!(x > 0.0))
            throw InvariantViolationError("root marginal must be strictly positive");
        sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw InvariantViolationError("root marginal does not sum to 1");
    for (int a = 0; a < q; ++a) {
        double row = 0.0;
        for (int b = 0; b < q; ++b) row += p(a, b);
        if (std::abs(row - 1.0) > 1e-12)
            throw InvariantViolationError("transition row " + std::to_string(a) +
                                          " does not sum to 1");
    }
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            if (std::abs(pi[a] * p(a, b) - pi[b] * p(b, a)) > tol)
                throw InvariantViolationError("detailed balance fails at (" +
                                              std::to_string(a) + "," +
                                              std::to_string(b) + ")");
}

TreeChain chain_from_bp(const BPResult& bp, int degree, const TreeModel& model) {
    if (!bp.converged)
        throw std::invalid_argument("chain requires a converged fixed point");
    const int q = model.alphabet;
    const std::vector<double> mu = incoming(model, bp.message);

    TreeChain chain;
    chain.alphabet = q;
    chain.degree = degree;
    chain.pi.resize(q);
    for (int a = 0; a < q; ++a)
        chain.pi[a] = std::exp(-model.field[a]) * std::pow(mu[a], degree);
    normalize(chain.pi);

    chain.trans.assign(static_cast<std::size_t>(q) * q, 0.0);
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            chain.trans[static_cast<std::size_t>(a) * q + b] =
                std::exp(-model.j(a, b)) * bp.message[b] / mu[a];

    chain.validate();
    return chain;
}

DistTable joint_at_distance(const TreeChain& chain, int k) {
    if (k < 1) throw std::invalid_argument("distance must be >= 1");
    const int q = chain.alphabet;
    std::vector<double> pk = chain.trans;
    std::vector<double> tmp(static_cast<std::size_t>(q) * q);
    for (int step = 1; step < k; ++step) {
        std::fill(tmp.begin(), tmp.end(), 0.0);
        for (int a = 0; a < q; ++a)
            for (int c = 0; c < q; ++c) {
                const double w = pk[static_cast<std::size_t>(a) * q + c];
                if (w == 0.0) continue;
                for (int b = 0; b < q; ++b)
                    tmp[static_cast<std::size_t>(a) * q + b] += w * chain.p(c, b);
            }
        pk.swap(tmp);
    }
    DistTable joint({0, 1}, q);
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            joint.p[static_cast<std::size_t>(a) * q + b] =
                chain.pi[a] * pk[static_cast<std::size_t>(a) * q + b];
    return joint;
}

double information_decay_bound(int degree, int k) {
    const int l = k / 2;
    double growth = 1.0;
    for (int i = 0; i < l; ++i) growth *= degree - 1;
    if (k % 2 == 1) return 2.0 / (degree * growth);
    return 1.0 / growth;
}

std::vector<DecayRow> decay_table(const TreeChain& chain, int k_max) {
    const double h = entropy(chain.root_marginal());
    std::vector<DecayRow> rows;
    rows.reserve(k_max);
    for (int k = 1; k <= k_max; ++k) {
        DecayRow row;
        row.k = k;
        row.mutual_info = mutual_information(joint_at_distance(chain, k));
        row.entropy = h;
        row.ratio = h > 0.0 ? row.mutual_info / h : 0.0;
        row.bound = information_decay_bound(chain.degree, k);
        row.pass = row.ratio <= row.bound;
        rows.push_back(row);
    }
    return rows;
}

std::string decay_table_csv(const std::vector<DecayRow>& rows) {
    std::string out = "k,mutual_info,entropy,ratio,bound,pass\n";
    char buf[160];
    for (const DecayRow& r : rows) {
        std::snprintf(buf, sizeof(buf), "%d,%.12g,%.12g,%.12g,%.12g,%d\n", r.k,
                      r.mutual_info, r.entropy, r.ratio, r.bound, r.pass ? 1 : 0);
        out += buf;
    }
    return out;
}

std::vector<std::vector<int>> TreeShape::children() const {
    std::vector<std::vector<int>> ch(parent.size());
    for (std::size_t i = 1; i < parent.size(); ++i)
        ch[parent[i]].push_back(static_cast<int>(i));
    return ch;
}

void TreeShape::validate(int degree) const {
    if (parent.empty() || parent[0] != -1)
        throw std::invalid_argument("shape root must be vertex 0 with parent -1");
    for (std::size_t i = 1; i < parent.size(); ++i)
        if (parent[i] < 0 || parent[i] >= static_cast<int>(i))
            throw std::invalid_argument("shape parents must precede children");
    const auto ch = children();
    for (std::size_t i = 0; i < parent.size(); ++i) {
        const int deg = static_cast<int>(ch[i].size()) + (i == 0 ? 0 : 1);
        if (deg > degree)
            throw std::invalid_argument("shape vertex exceeds tree degree");
    }
}

TreeShape radius_ball_shape(int degree, int radius) {
    if (radius < 0) throw std::invalid_argument("radius must be >= 0");
    TreeShape shape;
    shape.parent.push_back(-1);
    std::vector<int> depth{0};
    for (int v = 0; v < static_cast<int>(shape.parent.size()); ++v) {
        if (depth[v] == radius) continue;
        const int fanout = (v == 0) ? degree : degree - 1;
        for (int c = 0; c < fanout; ++c) {
            shape.parent.push_back(v);
            depth.push_back(depth[v] + 1);
        }
    }
    return shape;
}

TreeShape edge_union_shape(int degree, int radius) {
    if (radius < 0) throw std::invalid_argument("radius must be >= 0");
    // Vertex 0 and its child 1 are the edge; a tree vertex belongs to the
    // shape when it lies within `radius` of either end. Vertex 0 already
    // carries the child 1 and every other vertex a parent, so each expansion
    // adds degree - 1 children.
    TreeShape shape;
    shape.parent = {-1, 0};
    std::vector<int> dist_u{0, 1};
    std::vector<int> dist_v{1, 0};
    for (int w = 0; w < static_cast<int>(shape.parent.size()); ++w) {
        if (std::min(dist_u[w], dist_v[w]) >= radius) continue;
        for (int c = 0; c < degree - 1; ++c) {
            shape.parent.push_back(w);
            dist_u.push_back(dist_u[w] + 1);
            dist_v.push_back(dist_v[w] + 1);
        }
    }
    return shape;
}

DistTable ball_measure(const TreeChain& chain, const TreeShape& shape,
                       std::size_t cap) {
    shape.validate(chain.degree);
    const int m = shape.size();
    DistTable::table_size(chain.alphabet, static_cast<std::size_t>(m), cap);
    std::vector<int> domain(m);
    for (int i = 0; i < m; ++i) domain[i] = i;
    DistTable table(domain, chain.alphabet);
    std::vector<int> w(m);
    for (std::size_t idx = 0; idx < table.size(); ++idx) {
        table.decode(idx, w);
        double prob = chain.pi[w[0]];
        for (int i = 1; i < m; ++i) prob *= chain.p(w[shape.parent[i]], w[i]);
        table.p[idx] = prob;
    }
    return table;
}

} // namespace gibbslab
