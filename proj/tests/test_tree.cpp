#include <doctest.h>

#include <cmath>
#include <vector>

#include "gibbslab/errors.hpp"
#include "gibbslab/gibbs.hpp"
#include "gibbslab/graph.hpp"
#include "gibbslab/info.hpp"
#include "gibbslab/potential.hpp"
#include "gibbslab/rng.hpp"
#include "gibbslab/tree_chain.hpp"

using namespace gibbslab;

namespace {

DistTable random_table(std::vector<int> domain, int alphabet, RandomEngine& rng) {
    DistTable t(std::move(domain), alphabet);
    for (double& x : t.p) x = 0.01 + rng.uniform01();
    t.normalize();
    return t;
}

TreeChain random_reversible_chain(int alphabet, int degree, RandomEngine& rng) {
    // Symmetric positive weights give a reversible chain directly.
    std::vector<double> w(static_cast<std::size_t>(alphabet) * alphabet);
    for (int a = 0; a < alphabet; ++a)
        for (int b = a; b < alphabet; ++b) {
            const double x = 0.1 + rng.uniform01();
            w[static_cast<std::size_t>(a) * alphabet + b] = x;
            w[static_cast<std::size_t>(b) * alphabet + a] = x;
        }
    TreeChain chain;
    chain.alphabet = alphabet;
    chain.degree = degree;
    chain.pi.assign(alphabet, 0.0);
    chain.trans.assign(w.size(), 0.0);
    double total = 0.0;
    for (int a = 0; a < alphabet; ++a) {
        double row = 0.0;
        for (int b = 0; b < alphabet; ++b)
            row += w[static_cast<std::size_t>(a) * alphabet + b];
        chain.pi[a] = row;
        total += row;
        for (int b = 0; b < alphabet; ++b)
            chain.trans[static_cast<std::size_t>(a) * alphabet + b] =
                w[static_cast<std::size_t>(a) * alphabet + b] / row;
    }
    for (double& x : chain.pi) x /= total;
    chain.validate();
    return chain;
}

} // namespace

// ---- entropy / information -------------------------------------------------

TEST_CASE("entropy of point mass, uniform and a skewed coin") {
    DistTable point = DistTable::point_mass({0}, 4, {2});
    CHECK(entropy(point) == 0.0);
    CHECK(entropy(DistTable::uniform({0}, 4)) ==
          doctest::Approx(std::log(4.0)).epsilon(1e-12));
    DistTable coin({0}, 2);
    coin.p = {0.25, 0.75};
    CHECK(entropy(coin) == doctest::Approx(0.5623351446188083).epsilon(1e-12));
}

TEST_CASE("mutual information of product, copy and noisy-copy pairs") {
    RandomEngine rng(3);
    const DistTable a = random_table({0}, 3, rng);
    const DistTable b = random_table({1}, 3, rng);
    CHECK(mutual_information(DistTable::product(a, b)) <= 1e-14);

    DistTable copy({0, 1}, 3);
    for (int s = 0; s < 3; ++s) copy.p[s * 3 + s] = 1.0 / 3.0;
    CHECK(mutual_information(copy) == doctest::Approx(std::log(3.0)).epsilon(1e-12));

    DistTable bsc({0, 1}, 2);
    bsc.p = {0.45, 0.05, 0.05, 0.45};
    CHECK(mutual_information(bsc) == doctest::Approx(0.368064207168497).epsilon(1e-10));
}

TEST_CASE("total variation basics") {
    DistTable p({0}, 2), q({0}, 2);
    p.p = {0.5, 0.5};
    q.p = {0.25, 0.75};
    CHECK(tv_distance(p, p) == 0.0);
    CHECK(tv_distance(p, q) == doctest::Approx(0.25));
    DistTable r({0}, 3);
    r.p = {1.0, 0.0, 0.0};
    DistTable s({0}, 3);
    s.p = {0.0, 0.4, 0.6};
    CHECK(tv_distance(r, s) == doctest::Approx(1.0));
    CHECK_THROWS_AS(tv_distance(p, r), DomainMismatchError);
}

TEST_CASE("covariance on product and diagonal tables") {
    RandomEngine rng(5);
    const Observable f{{0.0, 1.0}};
    const DistTable prod =
        DistTable::product(random_table({0}, 2, rng), random_table({1}, 2, rng));
    CHECK(covariance(prod, f, f) == doctest::Approx(0.0).epsilon(1e-14));

    DistTable diag({0, 1}, 2);
    diag.p = {0.5, 0.0, 0.0, 0.5};
    CHECK(covariance(diag, f, f) == doctest::Approx(0.25));
}

TEST_CASE("pinsker and the coupling covariance bound on random joints") {
    RandomEngine rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const int q = 2 + static_cast<int>(rng.uniform_below(3));
        const DistTable joint = random_table({0, 1}, q, rng);
        const DistTable prod = product_of_marginals(joint);
        const double i = mutual_information(joint);
        const double tv = tv_distance(joint, prod);
        CHECK(tv <= std::sqrt(i / 2.0) + 1e-10);

        Observable f{std::vector<double>(q)}, g{std::vector<double>(q)};
        for (double& x : f.values) x = 2.0 * rng.uniform01() - 1.0;
        for (double& x : g.values) x = 2.0 * rng.uniform01() - 1.0;
        CHECK(std::abs(covariance(joint, f, g)) <=
              4.0 * f.max_abs() * g.max_abs() * tv + 1e-10);
    }
}

TEST_CASE("entropy is concave under mixing") {
    RandomEngine rng(9);
    for (int trial = 0; trial < 30; ++trial) {
        const DistTable p = random_table({0}, 4, rng);
        const DistTable q = random_table({0}, 4, rng);
        const double lam = rng.uniform01();
        DistTable mix({0}, 4);
        for (int i = 0; i < 4; ++i) mix.p[i] = lam * p.p[i] + (1 - lam) * q.p[i];
        CHECK(entropy(mix) >= lam * entropy(p) + (1 - lam) * entropy(q) - 1e-12);
    }
}

TEST_CASE("mutual information is symmetric under transposition") {
    RandomEngine rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        const DistTable joint = random_table({0, 1}, 3, rng);
        CHECK(mutual_information(joint) ==
              doctest::Approx(mutual_information(joint.transposed())).epsilon(1e-12));
    }
}

TEST_CASE("quadratic information bound looks quadratic near the product") {
    DistTable eta = DistTable::uniform({0}, 2);
    const double worst = quadratic_info_bound_check(eta, 1000, 0.01, 17);
    CHECK(worst > 0.0);
    CHECK(worst == doctest::Approx(2.0).epsilon(0.05));

    // one perturbation direction exists for binary uniform marginals, so two
    // independent draws land within a whisker of each other
    const double a = quadratic_info_bound_check(eta, 1, 0.01, 100);
    const double b = quadratic_info_bound_check(eta, 1, 0.01, 200);
    CHECK(std::abs(a - b) / a <= 0.2);
}

TEST_CASE("the diagonal one-parameter family has I / t^2 -> 2") {
    const auto ratio = [](double t) {
        DistTable xi({0, 1}, 2);
        xi.p = {0.25 + t / 2, 0.25 - t / 2, 0.25 - t / 2, 0.25 + t / 2};
        return mutual_information(xi) / (t * t);
    };
    CHECK(std::abs(ratio(1e-2) - 2.0) < 5e-3);
    CHECK(std::abs(ratio(1e-3) - 2.0) < 1e-3);
    CHECK(std::abs(ratio(1e-3) - 2.0) < std::abs(ratio(1e-2) - 2.0));
}

TEST_CASE("infeasible or degenerate perturbations are rejected") {
    DistTable eta = DistTable::uniform({0}, 2);
    CHECK_THROWS_AS(quadratic_info_bound_check(eta, 10, 0.6, 1),
                    PerturbationInfeasibleError);
    CHECK_THROWS_AS(quadratic_info_bound_check(eta, 10, 0.0, 1),
                    std::invalid_argument);
    DistTable degenerate({0}, 2);
    degenerate.p = {1.0, 0.0};
    CHECK_THROWS_AS(quadratic_info_bound_check(degenerate, 10, 0.01, 1),
                    PerturbationInfeasibleError);
}

// ---- belief propagation ------------------------------------------------------

TEST_CASE("free coupling fixes the message in one step") {
    TreeModel m;
    m.alphabet = 2;
    m.coupling = {0, 0, 0, 0};
    m.field = {0.3, -0.2};
    const BPResult bp = bp_solve(3, m);
    CHECK(bp.converged);
    CHECK(bp.unique);
    const double w0 = std::exp(-0.3), w1 = std::exp(0.2);
    CHECK(bp.message[0] == doctest::Approx(w0 / (w0 + w1)).epsilon(1e-12));
}

TEST_CASE("subcritical ising is unique with the uniform message") {
    const BPResult bp = bp_solve(3, ising_tree_model(0.4));
    CHECK(bp.converged);
    CHECK(bp.unique);
    CHECK(bp.message[0] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("supercritical ising shows coexisting fixed points") {
    const BPResult bp = bp_solve(3, ising_tree_model(1.2));
    CHECK(bp.converged); // the symmetric point is still a fixed point
    CHECK_FALSE(bp.unique);
}

TEST_CASE("non-convergence is reported") {
    CHECK_THROWS_AS(bp_solve(3, ising_tree_model(0.4, 0.3), 1e-13, 8, 1, 1),
                    NotConvergedError);
}

TEST_CASE("solver preconditions are enforced") {
    const TreeModel m = ising_tree_model(0.2);
    CHECK_THROWS_AS(bp_solve(2, m), std::invalid_argument);
    CHECK_THROWS_AS(bp_solve(3, m, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(bp_solve(3, m, 1e-13, 1), std::invalid_argument);
}

TEST_CASE("free chain has independent rows") {
    TreeModel m;
    m.alphabet = 2;
    m.coupling = {0, 0, 0, 0};
    m.field = {0.3, -0.2};
    const TreeChain chain = chain_from_bp(bp_solve(3, m), 3, m);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            CHECK(chain.p(a, b) == doctest::Approx(chain.pi[b]).epsilon(1e-12));
}

TEST_CASE("subcritical ising chain matches the closed form") {
    const TreeModel m = ising_tree_model(0.4);
    const TreeChain chain = chain_from_bp(bp_solve(3, m), 3, m);
    const double p = std::exp(0.4) / (std::exp(0.4) + std::exp(-0.4));
    CHECK(chain.pi[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(chain.p(0, 0) == doctest::Approx(p).epsilon(1e-12));
    CHECK(chain.p(1, 0) == doctest::Approx(1.0 - p).epsilon(1e-12));
}

TEST_CASE("potts root marginal is uniform by symmetry") {
    const TreeModel m = potts_tree_model(3, 0.3);
    const TreeChain chain = chain_from_bp(bp_solve(3, m), 3, m);
    for (int a = 0; a < 3; ++a)
        CHECK(chain.pi[a] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("chain agrees with a message-weighted star") {
    // K_{1,3} with the fixed-point message as leaf weight reproduces the root
    // marginal and the edge conditionals of the infinite-tree chain.
    const TreeModel m = ising_tree_model(0.4, 0.15);
    const BPResult bp = bp_solve(3, m);
    const TreeChain chain = chain_from_bp(bp, 3, m);

    const Graph star = build_graph({{0, 1}, {0, 2}, {0, 3}});
    Potential p = ising_potential(star, 0.4, 0.0);
    p.field[0] = m.field;
    for (int leaf = 1; leaf <= 3; ++leaf)
        p.field[leaf] = {-std::log(bp.message[0]), -std::log(bp.message[1])};
    const DistTable nu = brute_force_gibbs(star, p);

    const DistTable root = nu.marginal({0});
    for (int a = 0; a < 2; ++a)
        CHECK(root.p[a] == doctest::Approx(chain.pi[a]).epsilon(1e-10));

    const DistTable pair = nu.marginal({0, 1});
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            CHECK(pair.at({a, b}) / root.p[a] ==
                  doctest::Approx(chain.p(a, b)).epsilon(1e-10));
}

TEST_CASE("broken chains are rejected") {
    TreeChain chain;
    chain.alphabet = 2;
    chain.degree = 3;
    chain.pi = {0.3, 0.7};
    chain.trans = {0.9, 0.1, 0.9, 0.1}; // not reversible against pi
    CHECK_THROWS_AS(chain.validate(), InvariantViolationError);
}

// ---- joints and decay ---------------------------------------------------------

TEST_CASE("copy chain joint is the diagonal") {
    TreeChain chain;
    chain.alphabet = 2;
    chain.degree = 3;
    chain.pi = {0.3, 0.7};
    chain.trans = {1.0, 0.0, 0.0, 1.0};
    chain.validate();
    const DistTable joint = joint_at_distance(chain, 3);
    CHECK(joint.at({0, 0}) == doctest::Approx(0.3));
    CHECK(joint.at({1, 1}) == doctest::Approx(0.7));
    CHECK(joint.at({0, 1}) == 0.0);
}

TEST_CASE("independent chain joint is the product at every distance") {
    RandomEngine rng(19);
    const DistTable pi = random_table({0}, 3, rng);
    TreeChain chain;
    chain.alphabet = 3;
    chain.degree = 3;
    chain.pi = pi.p;
    chain.trans.resize(9);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) chain.trans[a * 3 + b] = pi.p[b];
    chain.validate();
    for (int k : {1, 4}) {
        const DistTable joint = joint_at_distance(chain, k);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                CHECK(joint.at({a, b}) ==
                      doctest::Approx(pi.p[a] * pi.p[b]).epsilon(1e-12));
    }
    for (const DecayRow& row : decay_table(chain, 6)) {
        CHECK(row.ratio == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(row.pass);
    }
}

TEST_CASE("two-step ising joint matches the hand power") {
    const TreeModel m = ising_tree_model(0.4);
    const TreeChain chain = chain_from_bp(bp_solve(3, m), 3, m);
    const double p = std::exp(0.4) / (std::exp(0.4) + std::exp(-0.4));
    const DistTable joint = joint_at_distance(chain, 2);
    CHECK(joint.at({0, 0}) ==
          doctest::Approx(0.5 * (p * p + (1 - p) * (1 - p))).epsilon(1e-12));
}

TEST_CASE("joint marginals reproduce pi and stationarity holds") {
    RandomEngine rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        const int q = 2 + static_cast<int>(rng.uniform_below(3));
        const TreeChain chain = random_reversible_chain(q, 3, rng);
        // pi P = pi
        for (int b = 0; b < q; ++b) {
            double x = 0.0;
            for (int a = 0; a < q; ++a) x += chain.pi[a] * chain.p(a, b);
            CHECK(x == doctest::Approx(chain.pi[b]).epsilon(1e-10));
        }
        for (int k : {1, 3}) {
            const DistTable joint = joint_at_distance(chain, k);
            const DistTable left = joint.marginal_positions({0});
            const DistTable right = joint.marginal_positions({1});
            for (int a = 0; a < q; ++a) {
                CHECK(left.p[a] == doctest::Approx(chain.pi[a]).epsilon(1e-12));
                CHECK(right.p[a] == doctest::Approx(chain.pi[a]).epsilon(1e-10));
            }
        }
        // data processing: information cannot grow with distance
        double prev = std::numeric_limits<double>::infinity();
        for (const DecayRow& row : decay_table(chain, 6)) {
            CHECK(row.mutual_info <= prev + 1e-12);
            prev = row.mutual_info;
        }
    }
}

TEST_CASE("decay bounds for the 3-regular tree are the exact fractions") {
    const double expected[8] = {2.0 / 3.0, 1.0 / 2.0, 1.0 / 3.0, 1.0 / 4.0,
                                1.0 / 6.0, 1.0 / 8.0, 1.0 / 12.0, 1.0 / 16.0};
    for (int k = 1; k <= 8; ++k)
        CHECK(information_decay_bound(3, k) == expected[k - 1]);
    CHECK(information_decay_bound(4, 2) == 1.0 / 3.0);
    CHECK(information_decay_bound(4, 3) == 2.0 / 12.0);
}

TEST_CASE("subcritical ising rows pass the decay bound and die off") {
    for (double beta : {0.1, 0.25, 0.4}) {
        const TreeModel m = ising_tree_model(beta);
        const TreeChain chain = chain_from_bp(bp_solve(3, m), 3, m);
        const auto rows = decay_table(chain, 8);
        for (const DecayRow& row : rows) CHECK(row.pass);
        CHECK(rows[7].mutual_info < rows[0].mutual_info / 10.0);
    }
}

TEST_CASE("decay csv carries the documented header") {
    const TreeModel m = ising_tree_model(0.25);
    const TreeChain chain = chain_from_bp(bp_solve(3, m), 3, m);
    const std::string csv = decay_table_csv(decay_table(chain, 3));
    CHECK(csv.rfind("k,mutual_info,entropy,ratio,bound,pass\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
}

// ---- ball measures --------------------------------------------------------------

TEST_CASE("ball measures of the smallest shapes") {
    const TreeModel m = ising_tree_model(0.4);
    const TreeChain chain = chain_from_bp(bp_solve(3, m), 3, m);

    const DistTable root = ball_measure(chain, radius_ball_shape(3, 0));
    CHECK(root.p[0] == doctest::Approx(chain.pi[0]).epsilon(1e-12));

    TreeShape edge;
    edge.parent = {-1, 0};
    const DistTable pair = ball_measure(chain, edge);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            CHECK(pair.at({a, b}) ==
                  doctest::Approx(chain.pi[a] * chain.p(a, b)).epsilon(1e-12));
            CHECK(pair.at({a, b}) == doctest::Approx(pair.at({b, a})).epsilon(1e-12));
        }
}

TEST_CASE("radius-1 ball of T3 marginalizes to pi on every leaf") {
    const TreeModel m = ising_tree_model(0.4);
    const TreeChain chain = chain_from_bp(bp_solve(3, m), 3, m);
    const TreeShape shape = radius_ball_shape(3, 1);
    REQUIRE(shape.size() == 4);
    const DistTable ball = ball_measure(chain, shape);
    CHECK(ball.size() == 16);
    CHECK_NOTHROW(ball.validate(1e-12));
    for (int leaf = 1; leaf <= 3; ++leaf) {
        const DistTable marg = ball.marginal_positions({leaf});
        for (int a = 0; a < 2; ++a)
            CHECK(marg.p[a] == doctest::Approx(chain.pi[a]).epsilon(1e-12));
    }
}

TEST_CASE("ball measures are projectively consistent") {
    RandomEngine rng(29);
    for (int trial = 0; trial < 5; ++trial) {
        const TreeChain chain = random_reversible_chain(2, 3, rng);
        const DistTable ball = ball_measure(chain, radius_ball_shape(3, 1));
        TreeShape edge;
        edge.parent = {-1, 0};
        const DistTable small = ball_measure(chain, edge);
        const DistTable projected = ball.marginal_positions({0, 1});
        for (std::size_t i = 0; i < small.size(); ++i)
            CHECK(projected.p[i] == doctest::Approx(small.p[i]).epsilon(1e-12));
    }
}

TEST_CASE("oversized shapes hit the enumeration cap") {
    const TreeModel m = ising_tree_model(0.2);
    const TreeChain chain = chain_from_bp(bp_solve(3, m), 3, m);
    CHECK_THROWS_AS(ball_measure(chain, radius_ball_shape(3, 6)),
                    CapExceededError);
}

TEST_CASE("shapes that do not fit in the tree are rejected") {
    TreeShape bad;
    bad.parent = {-1, 0, 0, 0, 0}; // root of degree 4 cannot sit in T_3
    const TreeModel m = ising_tree_model(0.2);
    const TreeChain chain = chain_from_bp(bp_solve(3, m), 3, m);
    CHECK_THROWS_AS(ball_measure(chain, bad), std::invalid_argument);
}
