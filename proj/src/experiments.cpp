#include "gibbslab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "gibbslab/errors.hpp"
#include "gibbslab/gibbs.hpp"
#include "gibbslab/rng.hpp"

namespace gibbslab {

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

double sample_mean(const std::vector<double>& xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

double sample_variance(const std::vector<double>& xs) {
    if (xs.size() < 2) return 0.0;
    const double m = sample_mean(xs);
    double s = 0.0;
    for (double x : xs) s += (x - m) * (x - m);
    return s / static_cast<double>(xs.size() - 1);
}

double median_of(std::vector<double> xs) {
    std::sort(xs.begin(), xs.end());
    const std::size_t n = xs.size();
    if (n % 2 == 1) return xs[n / 2];
    return 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

} // namespace

void ExperimentConfig::validate() const {
    if (!std::isfinite(beta)) throw std::invalid_argument("beta must be finite");
    if (model != "ising" && model != "potts")
        throw std::invalid_argument("model must be ising or potts");
    for (int n : n_list)
        if (n < 1) throw std::invalid_argument("covering fold must be >= 1");
    if (!(eps > 0.0 && eps <= 1.0))
        throw std::invalid_argument("eps must lie in (0, 1]");
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (sweeps < 1) throw std::invalid_argument("sweeps must be >= 1");
}

std::string ExperimentConfig::canonical() const {
    std::ostringstream out;
    out << "beta=" << fmt(beta) << "\ncode=" << code << "\nd=" << d
        << "\neps=" << fmt(eps) << "\nfield=" << fmt(field)
        << "\ngraph=" << graph << "\nkmax=" << k_max << "\nmethod=" << method
        << "\nmodel=" << model << "\nn=";
    for (std::size_t i = 0; i < n_list.size(); ++i)
        out << (i ? "," : "") << n_list[i];
    out << "\nout_alphabet=" << out_alphabet << "\nq=" << q
        << "\nr=" << radius << "\nseed=" << seed << "\nsweeps=" << sweeps
        << "\ntarget=" << target << "\nthin=" << thin
        << "\ntrials=" << trials << "\n";
    return out.str();
}

std::uint64_t ExperimentConfig::hash() const {
    // FNV-1a, 64 bit.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string ExperimentConfig::hash_hex() const {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(hash()));
    return buf;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file: " + path);
    ExperimentConfig cfg;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash_pos = line.find('#');
        if (hash_pos != std::string::npos) line.erase(hash_pos);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        const auto trim = [](std::string& s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            s = (a == std::string::npos) ? "" : s.substr(a, b - a + 1);
        };
        trim(key);
        trim(value);
        if (key.empty() || value.empty()) continue;
        if (key == "model") cfg.model = value;
        else if (key == "beta") cfg.beta = std::stod(value);
        else if (key == "field") cfg.field = std::stod(value);
        else if (key == "q") cfg.q = std::stoi(value);
        else if (key == "graph") cfg.graph = value;
        else if (key == "d") cfg.d = std::stoi(value);
        else if (key == "n") {
            cfg.n_list.clear();
            std::istringstream ns(value);
            std::string piece;
            while (std::getline(ns, piece, ','))
                cfg.n_list.push_back(std::stoi(piece));
        } else if (key == "r") cfg.radius = std::stoi(value);
        else if (key == "eps") cfg.eps = std::stod(value);
        else if (key == "seed") cfg.seed = std::stoull(value);
        else if (key == "trials") cfg.trials = std::stoi(value);
        else if (key == "sweeps") cfg.sweeps = std::stoi(value);
        else if (key == "thin") cfg.thin = std::stoi(value);
        else if (key == "kmax") cfg.k_max = std::stoi(value);
        else if (key == "code") cfg.code = value;
        else if (key == "b") cfg.out_alphabet = std::stoi(value);
        else if (key == "target") cfg.target = value;
        else if (key == "method") cfg.method = value;
        else if (key == "out") cfg.out = value;
        else throw std::runtime_error("unknown config key: " + key);
    }
    return cfg;
}

TreeModel config_tree_model(const ExperimentConfig& cfg) {
    if (cfg.model == "ising") return ising_tree_model(cfg.beta, cfg.field);
    return potts_tree_model(cfg.q, cfg.beta);
}

Potential config_potential(const ExperimentConfig& cfg, const Graph& g) {
    if (cfg.model == "ising") return ising_potential(g, cfg.beta, cfg.field);
    return potts_potential(g, cfg.q, cfg.beta);
}

Observable config_observable(int alphabet) {
    if (alphabet == 2) return Observable::spin();
    return Observable::indicator(0, alphabet);
}

std::string Csv::str() const {
    std::string out = header + "\n";
    for (const std::string& r : rows) out += r + "\n";
    return out;
}

void Csv::write_or_print(const std::string& path) const {
    if (path.empty()) {
        std::cout << str();
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write csv: " + path);
    out << str();
}

// ---- decay ---------------------------------------------------------------

bool DecayReport::violation() const {
    if (!unique) return false;
    for (const DecayRow& r : rows)
        if (!r.pass) return true;
    return false;
}

Csv DecayReport::csv(const ExperimentConfig& cfg) const {
    Csv out;
    out.header =
        "k,mutual_info,entropy,ratio,bound,pass,cov,tv,pinsker,flag,seed,config";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const DecayRow& r = rows[i];
        std::string line = std::to_string(r.k) + "," + fmt(r.mutual_info) + "," +
                           fmt(r.entropy) + "," + fmt(r.ratio) + "," +
                           fmt(r.bound) + ",";
        line += unique ? (r.pass ? "1" : "0") : "na";
        line += "," + fmt(cov[i]) + "," + fmt(tv[i]) + "," + fmt(pinsker[i]);
        line += unique ? ",ok" : ",nonunique";
        line += "," + std::to_string(cfg.seed) + "," + cfg.hash_hex();
        out.rows.push_back(std::move(line));
    }
    return out;
}

DecayReport run_decay(const ExperimentConfig& cfg) {
    cfg.validate();
    const TreeModel model = config_tree_model(cfg);
    const BPResult bp = bp_solve(cfg.d, model, 1e-13, 8, cfg.seed);

    DecayReport report;
    report.unique = bp.unique;
    report.chain = chain_from_bp(bp, cfg.d, model);
    report.rows = decay_table(report.chain, cfg.k_max);

    const Observable f = config_observable(model.alphabet);
    for (const DecayRow& r : report.rows) {
        const DistTable joint = joint_at_distance(report.chain, r.k);
        report.cov.push_back(covariance(joint, f, f));
        report.tv.push_back(tv_distance(joint, product_of_marginals(joint)));
        report.pinsker.push_back(std::sqrt(r.mutual_info / 2.0));
    }
    return report;
}

// ---- edge-vertex ----------------------------------------------------------

const EdgeVertexRow* EdgeVertexReport::exact_row() const {
    for (const EdgeVertexRow& r : rows)
        if (r.method == "exact") return &r;
    return nullptr;
}

bool EdgeVertexReport::violation() const {
    for (const EdgeVertexRow& r : rows) {
        if (r.method == "exact" && r.slack < -1e-9) return true;
        if (r.method == "mc" && r.slack < -(3.0 * r.stderr_slack + 1e-9)) return true;
    }
    return false;
}

Csv EdgeVertexReport::csv(const ExperimentConfig& cfg) const {
    Csv out;
    out.header = "graph,code,model,beta,method,n,trials,slack,stderr,seed,config";
    for (const EdgeVertexRow& r : rows) {
        std::string line = cfg.graph + "," + cfg.code + "," + cfg.model + "," +
                           fmt(cfg.beta) + "," + r.method + "," +
                           std::to_string(r.n) + "," + std::to_string(r.trials) +
                           "," + fmt(r.slack) + ",";
        line += r.method == "mc" ? fmt(r.stderr_slack) : std::string("");
        line += "," + std::to_string(cfg.seed) + "," + cfg.hash_hex();
        out.rows.push_back(std::move(line));
    }
    return out;
}

EdgeVertexReport run_edge_vertex(const ExperimentConfig& cfg) {
    cfg.validate();
    const Graph g = builtin_graph(cfg.graph);
    const TreeModel model = config_tree_model(cfg);

    EdgeVertexReport report;

    int degree = 0;
    const bool regular = g.is_regular(&degree);

    if (cfg.method == "exact" || cfg.method == "both") {
        if (!regular || degree < 3)
            throw std::invalid_argument(
                "exact marginals need a base graph regular of degree >= 3");
        const BlockCode code = builtin_code(cfg.code, model.alphabet, degree);
        const BPResult bp = bp_solve(degree, model, 1e-13, 8, cfg.seed);
        const TreeChain chain = chain_from_bp(bp, degree, model);
        const auto [mu_v, mu_e] = factor_marginals_exact(chain, code);
        EdgeVertexRow row;
        row.method = "exact";
        row.slack = edge_vertex_slack(g, homogeneous_family(g, mu_v, mu_e));
        report.rows.push_back(row);
    }

    if (cfg.method == "mc" || cfg.method == "both") {
        const Potential base_potential = config_potential(cfg, g);
        const BlockCode code =
            builtin_code(cfg.code, model.alphabet, regular ? degree : cfg.d);
        for (int n : cfg.n_list) {
            std::vector<double> slacks;
            for (int t = 0; t < cfg.trials; ++t) {
                const std::uint64_t s =
                    RandomEngine::derive_seed(cfg.seed, 1000003ULL * n + t);
                const NFoldCovering cov = random_covering(g, n, s);
                const Potential lifted = transfer_potential(base_potential, cov);
                const std::vector<int> coloring = glauber_sample(
                    cov.cover, lifted, cfg.sweeps, RandomEngine::derive_seed(s, 1));
                const std::vector<int> factored =
                    apply_block_code(cov, coloring, code);
                const MarginalFamily fam =
                    empirical_dists(cov, factored, code.out_alphabet);
                slacks.push_back(edge_vertex_slack(g, fam));
            }
            EdgeVertexRow row;
            row.method = "mc";
            row.n = n;
            row.trials = cfg.trials;
            row.slack = sample_mean(slacks);
            row.stderr_slack = std::sqrt(sample_variance(slacks) /
                                         static_cast<double>(slacks.size()));
            report.rows.push_back(row);
        }
    }
    return report;
}

// ---- coloring counts -------------------------------------------------------

std::uint64_t count_good_colorings(const NFoldCovering& cov,
                                   const MarginalFamily& targets, double eps,
                                   std::size_t cap) {
    const int b = targets.edge.empty() ? 0 : targets.edge[0].alphabet;
    if (b < 1) throw std::invalid_argument("empty target family");
    for (const DistTable& t : targets.edge)
        if (t.alphabet != b)
            throw DomainMismatchError("edge targets must share one alphabet");
    DistTable::table_size(b, static_cast<std::size_t>(cov.cover.n), cap);

    const int m = cov.base.edge_count();
    const int n_cover = cov.cover.n;
    const auto bq = static_cast<std::size_t>(b);

    // Pair counts per base edge, maintained under single-symbol changes.
    std::vector<std::vector<int>> counts(m, std::vector<int>(bq * bq, 0));
    std::vector<int> coloring(n_cover, 0);
    for (int e = 0; e < m; ++e) counts[e][0] = cov.fold;

    // Incidences of each cover vertex: (base edge, side, partner vertex).
    struct Incidence {
        int base_edge;
        int side;
        int partner;
    };
    std::vector<std::vector<Incidence>> incident(n_cover);
    for (int e = 0; e < m; ++e) {
        const auto [u, v] = cov.base.edges[e];
        for (int i = 0; i < cov.fold; ++i) {
            const int cu = cov.cover_vertex(u, i);
            const int cvx = cov.cover_vertex(v, cov.sigma[e][i]);
            incident[cu].push_back({e, 0, cvx});
            incident[cvx].push_back({e, 1, cu});
        }
    }

    const double inv_n = 1.0 / cov.fold;
    const auto all_within = [&] {
        for (int e = 0; e < m; ++e) {
            double tv = 0.0;
            for (std::size_t i = 0; i < bq * bq; ++i)
                tv += std::abs(counts[e][i] * inv_n - targets.edge[e].p[i]);
            if (0.5 * tv > eps) return false;
        }
        return true;
    };

    const auto change_symbol = [&](int vertex, int to) {
        const int from = coloring[vertex];
        for (const Incidence& inc : incident[vertex]) {
            const int other = coloring[inc.partner];
            if (inc.side == 0) {
                --counts[inc.base_edge][static_cast<std::size_t>(from) * bq + other];
                ++counts[inc.base_edge][static_cast<std::size_t>(to) * bq + other];
            } else {
                --counts[inc.base_edge][static_cast<std::size_t>(other) * bq + from];
                ++counts[inc.base_edge][static_cast<std::size_t>(other) * bq + to];
            }
        }
        coloring[vertex] = to;
    };

    std::uint64_t good = 0;
    while (true) {
        if (all_within()) ++good;
        int pos = n_cover - 1;
        while (pos >= 0 && coloring[pos] == b - 1) {
            change_symbol(pos, 0);
            --pos;
        }
        if (pos < 0) break;
        change_symbol(pos, coloring[pos] + 1);
    }
    return good;
}

MarginalFamily config_targets(const ExperimentConfig& cfg, const Graph& g) {
    const int b = cfg.out_alphabet;
    DistTable mu_v({0}, b), mu_e({0, 1}, b);
    if (cfg.target == "uniform") {
        mu_v = DistTable::uniform({0}, b);
        mu_e = DistTable::uniform({0, 1}, b);
    } else if (cfg.target == "point") {
        mu_v = DistTable::point_mass({0}, b, {0});
        mu_e = DistTable::point_mass({0, 1}, b, {0, 0});
    } else {
        throw std::invalid_argument("unknown target: " + cfg.target);
    }
    return homogeneous_family(g, mu_v, mu_e);
}

Csv CountReport::csv(const ExperimentConfig& cfg) const {
    Csv out;
    out.header = "n,count,rate,predicted_rate,seed,config";
    for (const CountRow& r : rows)
        out.rows.push_back(std::to_string(r.n) + "," + std::to_string(r.count) +
                           "," + fmt(r.rate) + "," + fmt(r.predicted_rate) + "," +
                           std::to_string(cfg.seed) + "," + cfg.hash_hex());
    return out;
}

CountReport run_count_colorings(const ExperimentConfig& cfg) {
    cfg.validate();
    const Graph g = builtin_graph(cfg.graph);
    const MarginalFamily targets = config_targets(cfg, g);

    double predicted = 0.0;
    for (const DistTable& mu : targets.edge) predicted += entropy(mu);
    for (int v = 0; v < g.n; ++v)
        predicted -= (g.degree(v) - 1) * entropy(targets.vertex[v]);

    CountReport report;
    for (int n : cfg.n_list) {
        const NFoldCovering cov =
            random_covering(g, n, RandomEngine::derive_seed(cfg.seed, n));
        CountRow row;
        row.n = n;
        row.count = count_good_colorings(cov, targets, cfg.eps);
        row.rate = row.count > 0
                       ? std::log(static_cast<double>(row.count)) / n
                       : -std::numeric_limits<double>::infinity();
        row.predicted_rate = predicted;
        report.rows.push_back(row);
    }
    return report;
}

// ---- concentration ---------------------------------------------------------

Csv ConcentrationReport::csv(const ExperimentConfig& cfg) const {
    Csv out;
    out.header = "n,trials,var,var_lo,var_hi,nice_fraction,seed,config";
    for (const ConcentrationRow& r : rows)
        out.rows.push_back(std::to_string(r.n) + "," + std::to_string(r.trials) +
                           "," + fmt(r.variance) + "," + fmt(r.var_lo) + "," +
                           fmt(r.var_hi) + "," + fmt(r.nice_fraction) + "," +
                           std::to_string(cfg.seed) + "," + cfg.hash_hex());
    return out;
}

ConcentrationReport run_concentration(const ExperimentConfig& cfg) {
    cfg.validate();
    const Graph g = builtin_graph(cfg.graph);
    const Potential base_potential = config_potential(cfg, g);
    int degree = 0;
    g.is_regular(&degree);
    const BlockCode code =
        builtin_code(cfg.code, base_potential.alphabet, degree > 0 ? degree : cfg.d);

    ConcentrationReport report;
    for (std::size_t ni = 0; ni < cfg.n_list.size(); ++ni) {
        const int n = cfg.n_list[ni];
        std::vector<double> fbars, fractions;
        for (int t = 0; t < cfg.trials; ++t) {
            const std::uint64_t s =
                RandomEngine::derive_seed(cfg.seed, 1000003ULL * n + t);
            const NFoldCovering cov = random_covering(g, n, s);
            const Potential lifted = transfer_potential(base_potential, cov);
            const std::vector<int> coloring = glauber_sample(
                cov.cover, lifted, cfg.sweeps, RandomEngine::derive_seed(s, 1));
            const std::vector<int> factored = apply_block_code(cov, coloring, code);
            const MarginalFamily fam =
                empirical_dists(cov, factored, code.out_alphabet);
            fbars.push_back(fam.edge[0].p[0]); // pair (0,0) on base edge 0
            fractions.push_back(niceness_audit(cov, cfg.radius).min_vertex_fraction());
        }

        ConcentrationRow row;
        row.n = n;
        row.trials = cfg.trials;
        row.variance = sample_variance(fbars);
        row.nice_fraction = sample_mean(fractions);

        // Percentile bootstrap for the variance.
        RandomEngine boot(RandomEngine::derive_seed(cfg.seed, 777000 + ni));
        const int reps = 1000;
        std::vector<double> vars(reps);
        std::vector<double> resample(fbars.size());
        for (int r = 0; r < reps; ++r) {
            for (double& x : resample)
                x = fbars[boot.uniform_below(fbars.size())];
            vars[r] = sample_variance(resample);
        }
        std::sort(vars.begin(), vars.end());
        row.var_lo = vars[static_cast<std::size_t>(0.025 * (reps - 1))];
        row.var_hi = vars[static_cast<std::size_t>(0.975 * (reps - 1))];
        report.rows.push_back(row);
    }
    return report;
}

// ---- cover stats -----------------------------------------------------------

Csv CoverStatsReport::csv(const ExperimentConfig& cfg) const {
    Csv out;
    out.header = "n,r,eps,trials,median_vertex_fraction,median_edge_fraction,"
                 "median_min_fraction,achieved_fraction,seed,config";
    for (const CoverStatsRow& r : rows)
        out.rows.push_back(std::to_string(r.n) + "," + std::to_string(cfg.radius) +
                           "," + fmt(cfg.eps) + "," + std::to_string(r.trials) +
                           "," + fmt(r.median_vertex_fraction) + "," +
                           fmt(r.median_edge_fraction) + "," +
                           fmt(r.median_min_fraction) + "," +
                           fmt(r.achieved_fraction) + "," +
                           std::to_string(cfg.seed) + "," + cfg.hash_hex());
    return out;
}

CoverStatsReport run_cover_stats(const ExperimentConfig& cfg) {
    cfg.validate();
    const Graph g = builtin_graph(cfg.graph);

    CoverStatsReport report;
    for (int n : cfg.n_list) {
        std::vector<double> vfrac, efrac, minfrac;
        int achieved = 0;
        for (int t = 0; t < cfg.trials; ++t) {
            const std::uint64_t s =
                RandomEngine::derive_seed(cfg.seed, 1000003ULL * n + t);
            const NicenessAudit audit =
                niceness_audit(random_covering(g, n, s), cfg.radius);
            const double mv = audit.min_vertex_fraction();
            const double me = audit.min_edge_fraction();
            vfrac.push_back(mv);
            efrac.push_back(me);
            minfrac.push_back(std::min(mv, me));
            if (audit.is_nice(cfg.eps)) ++achieved;
        }
        CoverStatsRow row;
        row.n = n;
        row.trials = cfg.trials;
        row.median_vertex_fraction = median_of(vfrac);
        row.median_edge_fraction = median_of(efrac);
        row.median_min_fraction = median_of(minfrac);
        row.achieved_fraction = static_cast<double>(achieved) / cfg.trials;
        report.rows.push_back(row);
    }
    return report;
}

} // namespace gibbslab
