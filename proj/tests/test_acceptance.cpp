// Acceptance suite: one test case per criterion, each printing a PASS/FAIL
// line so the run log doubles as a checklist. Statistical criteria use fixed
// master seeds and 3-sigma tolerances; analytic values are frozen from
// independent arithmetic.

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "metasim/assembler.hpp"
#include "metasim/entropy.hpp"
#include "metasim/experiments.hpp"
#include "metasim/identifiability.hpp"
#include "metasim/reads.hpp"
#include "metasim/repeats.hpp"
#include "metasim/rng.hpp"

using namespace metasim;

namespace {

void report(int criterion, const char* name, bool ok) {
    std::printf("[acceptance] criterion %d (%s): %s\n", criterion, name, ok ? "PASS" : "FAIL");
    std::fflush(stdout);
}

Distribution random_distribution(const Alphabet& alphabet, RngEngine& eng) {
    std::vector<double> w(static_cast<std::size_t>(alphabet.size()));
    double sum = 0.0;
    for (double& x : w) {
        x = uniform_unit(eng) + 1e-12;
        sum += x;
    }
    for (double& x : w) x /= sum;
    return Distribution(alphabet, std::move(w));
}

ExperimentConfig uniform_config(int m, int n, std::vector<int> ls, int trials,
                                std::uint64_t seed, ExperimentMode mode, double eta) {
    ExperimentConfig config;
    config.num_genomes = m;
    config.genome_length = n;
    config.dists.assign(static_cast<std::size_t>(m), Distribution::uniform(config.alphabet));
    config.read_lengths = std::move(ls);
    config.trials = trials;
    config.master_seed = seed;
    config.mode = mode;
    if (eta >= 0.0) config.eta = eta;
    return config;
}

} // namespace

TEST_CASE("criterion 1: formula correctness") {
    bool ok = true;
    const Alphabet& dna = Alphabet::dna();
    const double log4 = std::log(4.0);

    ok = ok && std::fabs(renyi2_entropy(Distribution::uniform(dna)) - log4) <= 1e-12;

    RngEngine eng = make_engine(0xC0FFEE);
    for (int i = 0; i < 10000 && ok; ++i) {
        const Distribution p = random_distribution(dna, eng);
        const Distribution q = random_distribution(dna, eng);
        ok = ok && std::fabs(cross_collision_entropy(p, p) - renyi2_entropy(p)) <= 1e-12;
        // Cauchy-Schwarz: F(p,q) >= (H2(p) + H2(q)) / 2.
        ok = ok && cross_collision_entropy(p, q) >=
                       (renyi2_entropy(p) + renyi2_entropy(q)) / 2.0 - 1e-12;
    }

    report(1, "formula correctness", ok);
    CHECK(ok);
}

TEST_CASE("criterion 2: repeat probability Monte Carlo at 1e7 trials") {
    const Distribution u = Distribution::uniform(Alphabet::dna());
    const std::int64_t trials = 10000000;
    const double p = 9.765625e-4; // 4^-5
    const double rate = estimate_repeat_match_rate(u, u, 5, trials, 0xE25EED);
    const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
    const bool ok = std::fabs(rate - p) <= 3.0 * se;
    std::printf("  match rate %.8g vs analytic %.8g (3se = %.3g)\n", rate, p, 3.0 * se);
    report(2, "repeat probability Monte Carlo", ok);
    CHECK(ok);
}

TEST_CASE("criterion 3: identifiable regime at M=4 N=2000 L=26") {
    const ExperimentConfig config =
        uniform_config(4, 2000, {26}, 200, 0xAC03, ExperimentMode::Assembly, -1.0);
    const SummaryRow row = run_experiment(config, 1).rows.at(0);

    const TheoremBounds bounds =
        theorem_bounds_report(config.problem_spec(26), 26, config.eta_for(26));
    const double p_repeat = 1.0 - row.p_identifiable;
    const double se = std::sqrt(p_repeat * (1.0 - p_repeat) / row.trials);
    const bool bound_ok = p_repeat <= bounds.non_identifiability_bound + 3.0 * se;

    std::printf("  p_identifiable=%.4f p_assembly=%.4f repeat-bound=%.4g\n",
                row.p_identifiable, row.p_assembly_success, bounds.non_identifiability_bound);
    const bool ok = row.p_identifiable >= 0.95 && row.p_assembly_success >= 0.95 && bound_ok;
    report(3, "upper-threshold regime identifiability and recovery", ok);
    CHECK(row.p_identifiable >= 0.95);
    CHECK(row.p_assembly_success >= 0.95);
    CHECK(bound_ok);
}

TEST_CASE("criterion 4: non-identifiable regime at M=16 N=10000 L=8") {
    const ExperimentConfig config =
        uniform_config(16, 10000, {8}, 100, 0xAC04, ExperimentMode::Identifiability, -1.0);
    const SummaryRow row = run_experiment(config, 1).rows.at(0);
    std::printf("  p_nonidentifiable=%.4f analytic E[Z]=%.4g\n", row.p_nonidentifiable,
                row.z_mean_analytic);
    const bool ok = row.p_nonidentifiable >= 0.90;
    report(4, "lower-threshold regime swap witnesses", ok);
    CHECK(ok);
}

TEST_CASE("criterion 5: Z moments against the analytic expectation") {
    // Exact first moment at the worked point.
    const ExperimentConfig base =
        uniform_config(4, 1000, {6}, 5000, 0xAC05, ExperimentMode::Moments, 0.1);
    const SummaryRow row = run_experiment(base, 1).rows.at(0);
    const double analytic = 1.16455078125; // 6 pairs * 795 positions * 4^-6
    const bool mean_ok = std::fabs(row.z_mean - analytic) <= 0.05 * analytic &&
                         std::fabs(row.z_mean_analytic - analytic) <= 1e-9;
    std::printf("  z_mean=%.6g analytic=%.6g (tolerance 5%%)\n", row.z_mean, analytic);

    // Var/E^2 along the scale sequence at sub-threshold L = floor(C log(MN)).
    struct Point {
        int m;
        int n;
        int l;
        int trials;
    };
    const std::vector<Point> points{{4, 1000, 5, 5000}, {8, 4000, 7, 2000}, {16, 16000, 8, 800}};
    std::vector<double> ratios;
    for (const Point& pt : points) {
        const ExperimentConfig config = uniform_config(pt.m, pt.n, {pt.l}, pt.trials, 0xAC55,
                                                       ExperimentMode::Moments, 0.1);
        const SummaryRow r = run_experiment(config, 1).rows.at(0);
        ratios.push_back(r.z_var / (r.z_mean * r.z_mean));
        std::printf("  (M=%d,N=%d,L=%d) var/mean^2 = %.4f (z_mean=%.4g)\n", pt.m, pt.n, pt.l,
                    ratios.back(), r.z_mean);
    }
    const bool decreasing = ratios[0] > ratios[1] && ratios[1] > ratios[2];

    report(5, "second-moment trend and exact expectation", mean_ok && decreasing);
    CHECK(mean_ok);
    CHECK(decreasing);
}

TEST_CASE("criterion 6: exhaustive oracle equivalence on binary M=2 N=5") {
    const Alphabet binary("AB");
    bool ok = true;
    long identifiable = 0;
    long non_identifiable = 0;
    long unknown = 0;

    for (int bits = 0; bits < 1024 && ok; ++bits) {
        std::string g1(5, 'A');
        std::string g2(5, 'A');
        for (int i = 0; i < 5; ++i) {
            if (bits & (1 << i)) g1[static_cast<std::size_t>(i)] = 'B';
            if (bits & (1 << (5 + i))) g2[static_cast<std::size_t>(i)] = 'B';
        }
        const Sample sample(binary, {g1, g2});
        for (int l = 2; l <= 5 && ok; ++l) {
            const IdentVerdict verdict = check_identifiable(sample, l, 0.0);
            switch (verdict.tag) {
                case Verdict::Identifiable:
                    ++identifiable;
                    ok = ok && brute_force_identifiable(sample, l);
                    break;
                case Verdict::NonIdentifiable: {
                    ++non_identifiable;
                    ok = ok && !brute_force_identifiable(sample, l);
                    const Sample swapped = apply_swap(sample, *verdict.witness);
                    ok = ok && multiset_equal(extract_reads(sample, l),
                                              extract_reads(swapped, l));
                    break;
                }
                case Verdict::Unknown:
                    ++unknown;
                    break;
            }
        }
    }
    std::printf("  verdicts over 4096 cases: %ld identifiable, %ld non-identifiable, %ld unknown\n",
                identifiable, non_identifiable, unknown);
    report(6, "exhaustive oracle equivalence", ok);
    CHECK(ok);
    CHECK(identifiable > 0);
    CHECK(non_identifiable > 0);
}

TEST_CASE("criterion 7: byte-identical CSV across runs and worker counts") {
    const ExperimentConfig config =
        uniform_config(3, 400, {6, 10}, 40, 0xAC07, ExperimentMode::Assembly, -1.0);
    std::vector<std::string> outputs;
    for (int threads : {1, 2, 8, 1}) {
        std::stringstream out;
        write_summary_csv(run_experiment(config, threads), out);
        outputs.push_back(out.str());
    }
    bool ok = true;
    for (const std::string& csv : outputs) ok = ok && csv == outputs.front();
    report(7, "deterministic experiment CSV", ok);
    CHECK(ok);
}
