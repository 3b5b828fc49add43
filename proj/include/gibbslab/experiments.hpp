#ifndef GIBBSLAB_EXPERIMENTS_HPP
#define GIBBSLAB_EXPERIMENTS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "gibbslab/block_code.hpp"
#include "gibbslab/cover.hpp"
#include "gibbslab/empirical.hpp"
#include "gibbslab/graph.hpp"
#include "gibbslab/info.hpp"
#include "gibbslab/potential.hpp"
#include "gibbslab/tree_chain.hpp"

namespace gibbslab {

// Shared experiment parameters. Every CSV row ends with the base seed and
// the FNV-1a hash of the canonical serialization, so identical configs give
// byte-identical files.
struct ExperimentConfig {
    std::string model = "ising";
    double beta = 0.4;
    double field = 0.0;
    int q = 3; // potts states
    std::string graph = "k4";
    int d = 3;
    std::vector<int> n_list = {100};
    int radius = 2;
    double eps = 0.1;
    std::uint64_t seed = 1;
    int trials = 10;
    int sweeps = 100; // burn-in sweeps before a sample is taken
    int thin = 10;
    int k_max = 8;
    std::string code = "identity";
    int out_alphabet = 2; // |B| for coloring counts
    std::string target = "uniform";
    std::string method = "both"; // edge-vertex: exact | mc | both
    std::string out;             // csv destination, empty = stdout

    void validate() const;
    std::string canonical() const;
    std::uint64_t hash() const;
    std::string hash_hex() const;
};

ExperimentConfig parse_config_file(const std::string& path);

TreeModel config_tree_model(const ExperimentConfig& cfg);
Potential config_potential(const ExperimentConfig& cfg, const Graph& g);
// Observable used for covariance columns: the +/-1 spin for two symbols, the
// centered first-symbol indicator otherwise.
Observable config_observable(int alphabet);

struct Csv {
    std::string header;
    std::vector<std::string> rows;

    std::string str() const;
    void write_or_print(const std::string& path) const;
};

// ---- decay ---------------------------------------------------------------

struct DecayReport {
    bool unique = false;
    std::vector<DecayRow> rows;
    std::vector<double> cov;          // spin covariance at distance k
    std::vector<double> tv;           // tv(joint, product of marginals)
    std::vector<double> pinsker;      // sqrt(I/2)
    TreeChain chain;

    bool violation() const; // a bound fails while uniqueness is certified
    Csv csv(const ExperimentConfig& cfg) const;
};

DecayReport run_decay(const ExperimentConfig& cfg);

// ---- edge-vertex ----------------------------------------------------------

struct EdgeVertexRow {
    std::string method; // "exact" or "mc"
    int n = 0;          // covering fold for mc rows
    int trials = 0;
    double slack = 0.0;
    double stderr_slack = 0.0;
};

struct EdgeVertexReport {
    std::vector<EdgeVertexRow> rows;

    const EdgeVertexRow* exact_row() const;
    bool violation() const;
    Csv csv(const ExperimentConfig& cfg) const;
};

EdgeVertexReport run_edge_vertex(const ExperimentConfig& cfg);

// ---- coloring counts -------------------------------------------------------

// Exhaustive count of colorings whose empirical edge distributions are all
// within eps of the targets, over the given covering.
std::uint64_t count_good_colorings(const NFoldCovering& cov,
                                   const MarginalFamily& targets, double eps,
                                   std::size_t cap = kDefaultEnumerationCap);

struct CountRow {
    int n = 0;
    std::uint64_t count = 0;
    double rate = 0.0;            // ln(count)/N
    double predicted_rate = 0.0;  // sum_e H(mu_e) - sum_v (deg-1) H(mu_v)
};

struct CountReport {
    std::vector<CountRow> rows;
    Csv csv(const ExperimentConfig& cfg) const;
};

MarginalFamily config_targets(const ExperimentConfig& cfg, const Graph& g);
CountReport run_count_colorings(const ExperimentConfig& cfg);

// ---- concentration ---------------------------------------------------------

struct ConcentrationRow {
    int n = 0;
    int trials = 0;
    double variance = 0.0;
    double var_lo = 0.0; // 95% bootstrap interval for the variance
    double var_hi = 0.0;
    double nice_fraction = 0.0;
};

struct ConcentrationReport {
    std::vector<ConcentrationRow> rows;
    Csv csv(const ExperimentConfig& cfg) const;
};

// Sample variance of f-bar = mu_e^c({(0,0)}) on base edge 0 across
// independent (covering, Glauber sample) trials, per covering size.
ConcentrationReport run_concentration(const ExperimentConfig& cfg);

// ---- cover stats -----------------------------------------------------------

struct CoverStatsRow {
    int n = 0;
    int trials = 0;
    double median_vertex_fraction = 0.0; // median over trials of min over fibers
    double median_edge_fraction = 0.0;
    double median_min_fraction = 0.0;
    double achieved_fraction = 0.0; // share of trials that are (R,eps)-nice
};

struct CoverStatsReport {
    std::vector<CoverStatsRow> rows;
    Csv csv(const ExperimentConfig& cfg) const;
};

CoverStatsReport run_cover_stats(const ExperimentConfig& cfg);

} // namespace gibbslab

#endif // GIBBSLAB_EXPERIMENTS_HPP
