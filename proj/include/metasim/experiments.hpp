#ifndef METASIM_EXPERIMENTS_HPP
#define METASIM_EXPERIMENTS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "metasim/identifiability.hpp"
#include "metasim/sample.hpp"

namespace metasim {

/// Seeded Monte Carlo harness. Trials are independent work units; the
/// worker pool may execute them in any order and the aggregate is merged by
/// (L, trial) index, so summaries and CSV output are byte-identical for a
/// fixed master seed regardless of thread count.

enum class ExperimentMode { Identifiability, Assembly, Moments, RepeatProb };

const char* to_string(ExperimentMode m);

struct ExperimentConfig {
    Alphabet alphabet = Alphabet::dna();
    int num_genomes = 0;
    int genome_length = 0;
    std::vector<Distribution> dists;    // per genome, size M
    std::vector<int> read_lengths;      // one summary row per value
    int trials = 0;
    std::uint64_t master_seed = 0;
    std::optional<double> eta;          // default: default_eta(L, N) per L
    ExperimentMode mode = ExperimentMode::Identifiability;

    void validate() const;
    ProblemSpec problem_spec(int read_length) const;
    double eta_for(int read_length) const;
};

// Flat key=value text: M, N, L (comma-separated list), trials, seed, mode,
// eta (optional), alphabet (optional, default ACGT), dist=uniform or
// dist.<m>=p1,p2,... lines (1-based m, comma-separated reals in alphabet
// order). '#' starts a comment.
ExperimentConfig parse_experiment_config(std::istream& in);
ExperimentConfig parse_experiment_config_file(const std::string& path);

struct TrialResult {
    int read_length = 0;
    int trial_index = 0;
    Verdict verdict = Verdict::Unknown;
    bool swap_witness_present = false;
    bool distinct_segments = false;
    std::int64_t z_count = 0;
    bool assembly_recovered = false;
    double elapsed_ms = 0.0; // informational, excluded from aggregates
};

struct SummaryRow {
    int read_length = 0;
    int trials = 0;
    double p_identifiable = 0.0;
    double p_nonidentifiable = 0.0;
    double p_unknown = 0.0;
    double p_assembly_success = 0.0;
    double z_mean = 0.0;
    double z_var = 0.0;
    double z_mean_analytic = 0.0;
    double se_binomial = 0.0; // SE of the row's headline proportion
};

struct ExperimentSummary {
    std::vector<SummaryRow> rows;
};

// One seeded trial: child seed = derive_seed(master, {L, trial}); generates
// the sample, counts B events, classifies identifiability (Identifiability
// and Assembly modes), and in Assembly mode checks that greedy assembly
// returns exactly the true genome multiset. Moments mode computes the Z
// count only and leaves the verdict Unknown.
TrialResult run_trial(const ExperimentConfig& config, int read_length, int trial_index);

// Exact first moment of the Z statistic:
// sum_{m<m'} |eta-restricted position range| e^{-L F(p^m, p^{m'})}.
double analytic_expectation_z(const ProblemSpec& spec, int read_length, double eta);

// Empirical probability that two independent length-`length` windows drawn
// from p and q are equal, over `trials` paired draws. Single RNG stream
// seeded from `seed`.
double estimate_repeat_match_rate(const Distribution& p, const Distribution& q, int length,
                                  std::int64_t trials, std::uint64_t seed);

// Runs trials for every configured L and aggregates one row per L.
// RepeatProb mode instead estimates the window-match rate and reports it in
// the z_mean column against repeat_probability in z_mean_analytic.
ExperimentSummary run_experiment(const ExperimentConfig& config, int threads = 1);

// Fixed schema:
// L,trials,p_identifiable,p_nonidentifiable,p_unknown,p_assembly_success,
// z_mean,z_var,z_mean_analytic,se_binomial
void write_summary_csv(const ExperimentSummary& summary, std::ostream& out);
void write_summary_csv_file(const ExperimentSummary& summary, const std::string& path);

/// Analytic bound package for a problem instance.
struct TheoremBounds {
    double h_star = 0.0;  // min_m H2(p^m)
    double f_star = 0.0;  // max_{m,m'} F
    double f_lower = 0.0; // min_{m,m'} F
    double e1_bound = 0.0;            // overlapping (L-1)-repeat
    double e2_bound = 0.0;            // non-overlapping (L-1)-repeat
    double non_identifiability_bound = 0.0; // e1 + e2
    double t_exclusion_bound = 0.0;   // worst-position B \ E exclusion bound
    double upper_threshold = 0.0;     // epsilon = 0
    double lower_threshold = 0.0;     // epsilon = 0
};

// Evaluates the repeat bounds, the swap-exclusion bound
// e^{-(j-1)F_*} + e^{-(N-(j+L)+1)F_*} + M^2 e^{-2N H_*} at the worst j in
// the eta-restricted range, and both thresholds.
TheoremBounds theorem_bounds_report(const ProblemSpec& spec, int read_length, double eta);

} // namespace metasim

#endif
