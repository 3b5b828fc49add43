#include "gibbslab/info.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gibbslab/errors.hpp"
#include "gibbslab/rng.hpp"

namespace gibbslab {

double Observable::max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

Observable Observable::spin() { return Observable{{+1.0, -1.0}}; }

Observable Observable::indicator(int symbol, int alphabet) {
    std::vector<double> values(alphabet, -1.0 / alphabet);
    values[symbol] += 1.0;
    return Observable{values};
}

double entropy(const DistTable& table) {
    double h = 0.0;
    for (double x : table.p)
        if (x > 0.0) h -= x * std::log(x);
    return h;
}

double mutual_information(const DistTable& joint) {
    if (joint.domain.size() != 2)
        throw DomainMismatchError("mutual information needs a two-component table");
    const DistTable mx = joint.marginal_positions({0});
    const DistTable my = joint.marginal_positions({1});
    const auto q = static_cast<std::size_t>(joint.alphabet);

    // KL(joint || product) in the cell-wise nonnegative Bregman form
    //   sum_ab m * f((xi - m)/m),  f(x) = (1+x) log1p(x) - x >= 0,
    // which stays accurate when the joint is within rounding distance of the
    // product; the entropy-difference form cancels to zero there.
    double total = 0.0;
    double acc = 0.0;
    for (std::size_t a = 0; a < q; ++a)
        for (std::size_t b = 0; b < q; ++b) {
            const double xi = joint.p[a * q + b];
            total += xi;
            const double m = mx.p[a] * my.p[b];
            if (m <= 0.0) continue; // whole row or column is empty
            if (xi <= 0.0) {
                acc += m; // f(-1) = 1
                continue;
            }
            const double x = (xi - m) / m;
            acc += m * ((1.0 + x) * std::log1p(x) - x);
        }
    // normalization drift of the stored table enters only at second order
    const double drift = total - 1.0;
    return std::max(0.0, acc / total - 0.5 * drift * drift);
}

double tv_distance(const DistTable& p, const DistTable& q) {
    if (p.alphabet != q.alphabet || p.p.size() != q.p.size())
        throw DomainMismatchError("total variation over mismatched domains");
    double sum = 0.0;
    for (std::size_t i = 0; i < p.p.size(); ++i)
        sum += std::abs(p.p[i] - q.p[i]);
    return 0.5 * sum;
}

double covariance(const DistTable& joint, const Observable& f, const Observable& g) {
    if (joint.domain.size() != 2)
        throw DomainMismatchError("covariance needs a two-component table");
    const auto q = static_cast<std::size_t>(joint.alphabet);
    if (f.values.size() < q || g.values.size() < q)
        throw std::invalid_argument("observable does not cover the alphabet");
    double exy = 0.0, ex = 0.0, ey = 0.0;
    for (std::size_t a = 0; a < q; ++a) {
        for (std::size_t b = 0; b < q; ++b) {
            const double w = joint.p[a * q + b];
            exy += w * f.values[a] * g.values[b];
            ex += w * f.values[a];
            ey += w * g.values[b];
        }
    }
    return exy - ex * ey;
}

DistTable product_of_marginals(const DistTable& joint) {
    if (joint.domain.size() != 2)
        throw DomainMismatchError("needs a two-component table");
    return DistTable::product(joint.marginal_positions({0}),
                              joint.marginal_positions({1}));
}

double quadratic_info_bound_check(const DistTable& eta, int n_perturbations,
                                  double magnitude, std::uint64_t seed) {
    if (eta.domain.size() != 1)
        throw DomainMismatchError("eta must be a single-component table");
    if (magnitude <= 0.0)
        throw std::invalid_argument("perturbation magnitude must be positive");
    if (n_perturbations < 1)
        throw std::invalid_argument("need at least one perturbation");
    for (double x : eta.p)
        if (x <= 0.0)
            throw PerturbationInfeasibleError("eta must be strictly positive");

    const int q = eta.alphabet;
    const DistTable base = DistTable::product(eta, eta);

    RandomEngine rng(seed);
    double worst = std::numeric_limits<double>::infinity();
    std::vector<double> delta(static_cast<std::size_t>(q) * q);

    for (int sample = 0; sample < n_perturbations;) {
        for (double& d : delta) d = 2.0 * rng.uniform01() - 1.0;

        // Project onto the directions that leave both marginals fixed:
        // subtract row and column means, add back the grand mean.
        std::vector<double> row(q, 0.0), col(q, 0.0);
        double grand = 0.0;
        for (int a = 0; a < q; ++a)
            for (int b = 0; b < q; ++b) {
                const double d = delta[static_cast<std::size_t>(a) * q + b];
                row[a] += d / q;
                col[b] += d / q;
                grand += d / (q * q);
            }
        double l1 = 0.0;
        for (int a = 0; a < q; ++a)
            for (int b = 0; b < q; ++b) {
                double& d = delta[static_cast<std::size_t>(a) * q + b];
                d += grand - row[a] - col[b];
                l1 += std::abs(d);
            }
        if (l1 < 1e-12) continue; // degenerate direction, redraw

        const double scale = magnitude / (0.5 * l1);
        DistTable xi = base;
        for (std::size_t i = 0; i < xi.p.size(); ++i) {
            xi.p[i] += scale * delta[i];
            if (xi.p[i] < 0.0)
                throw PerturbationInfeasibleError(
                    "magnitude too large: perturbed table leaves the simplex");
        }

        worst = std::min(worst, mutual_information(xi) / (magnitude * magnitude));
        ++sample;
    }
    return worst;
}

} // namespace gibbslab
