// metasim: command-line front end for the shotgun metagenome toolkit.
// Subcommands: generate | reads | assemble | check | thresholds | experiment.
// Exit codes: 0 success, 1 usage error, 2 validation error, 3 incomplete
// assembly, 4 I/O error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>

#include <CLI11.hpp>

#include "metasim/assembler.hpp"
#include "metasim/entropy.hpp"
#include "metasim/errors.hpp"
#include "metasim/experiments.hpp"
#include "metasim/identifiability.hpp"
#include "metasim/reads.hpp"
#include "metasim/repeats.hpp"
#include "metasim/sample.hpp"

namespace {

constexpr const char* kVersion = "metasim 1.0.0";

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitIncomplete = 3;
constexpr int kExitIo = 4;

struct DistOptions {
    std::string alphabet = "ACGT";
    std::string dist = "uniform";
    std::string dist_file;
};

void add_dist_options(CLI::App* cmd, DistOptions& opts) {
    cmd->add_option("--alphabet", opts.alphabet, "Alphabet symbols in index order")
        ->capture_default_str();
    cmd->add_option("--dist", opts.dist, "Distribution shorthand (uniform)")
        ->capture_default_str();
    cmd->add_option("--dist-file", opts.dist_file,
                    "Heterogeneous distributions: lines 'dist.<m>=p1,p2,...' plus optional "
                    "'alphabet=...'");
}

// Per-genome distributions from the shorthand flag or a key=value file.
std::vector<metasim::Distribution> resolve_dists(const DistOptions& opts, int num_genomes) {
    using namespace metasim;
    if (opts.dist_file.empty()) {
        if (opts.dist != "uniform") {
            throw ValidationError("unknown --dist '" + opts.dist + "' (use uniform or --dist-file)");
        }
        const Alphabet alphabet(opts.alphabet);
        return std::vector<Distribution>(static_cast<std::size_t>(num_genomes),
                                         Distribution::uniform(alphabet));
    }
    std::ifstream in(opts.dist_file);
    if (!in) throw IoError("cannot open '" + opts.dist_file + "'");
    std::string alphabet_symbols = opts.alphabet;
    std::map<int, std::string> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("expected key=value", lineno);
        const std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);
        if (key == "alphabet") {
            alphabet_symbols = value;
        } else if (key.rfind("dist.", 0) == 0) {
            rows[std::stoi(key.substr(5))] = value;
        } else {
            throw ParseError("unknown key '" + key + "'", lineno);
        }
    }
    const Alphabet alphabet(alphabet_symbols);
    std::vector<Distribution> dists;
    for (int m = 1; m <= num_genomes; ++m) {
        auto it = rows.find(m);
        if (it == rows.end()) {
            throw ValidationError("missing dist." + std::to_string(m) + " in '" +
                                  opts.dist_file + "'");
        }
        std::vector<double> probs;
        std::stringstream ss(it->second);
        std::string part;
        while (std::getline(ss, part, ',')) probs.push_back(std::stod(part));
        dists.emplace_back(alphabet, std::move(probs));
    }
    return dists;
}

std::string infer_alphabet_header(const std::map<std::string, std::int64_t>& contigs) {
    std::set<char> chars;
    for (const auto& [text, count] : contigs) chars.insert(text.begin(), text.end());
    const std::string dna = "ACGT";
    bool subset_of_dna = true;
    for (char c : chars) subset_of_dna = subset_of_dna && dna.find(c) != std::string::npos;
    if (subset_of_dna) return dna;
    return std::string(chars.begin(), chars.end());
}

int run(int argc, char** argv) {
    using namespace metasim;

    CLI::App app{"Shotgun metagenome simulation, assembly and identifiability toolkit"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    int exit_code = kExitOk;

    // generate ------------------------------------------------------------
    auto* generate = app.add_subcommand("generate", "Sample a random genome collection");
    struct {
        int num_genomes = 0;
        int genome_length = 0;
        int read_length = 1;
        std::uint64_t seed = 0;
        std::string out;
        DistOptions dist;
    } gen;
    generate->add_option("--M", gen.num_genomes, "Number of genomes")->required();
    generate->add_option("--N", gen.genome_length, "Genome length")->required();
    generate->add_option("--L", gen.read_length, "Read length (validated, not used in sampling)")
        ->capture_default_str();
    generate->add_option("--seed", gen.seed, "Master seed")->capture_default_str();
    generate->add_option("--out", gen.out, "Output sample file")->required();
    add_dist_options(generate, gen.dist);
    generate->callback([&] {
        ProblemSpec spec;
        spec.num_genomes = gen.num_genomes;
        spec.genome_length = gen.genome_length;
        spec.read_length = gen.read_length;
        spec.dists = resolve_dists(gen.dist, gen.num_genomes);
        write_sample_file(sample_metagenome(spec, gen.seed), gen.out);
    });

    // reads ---------------------------------------------------------------
    auto* reads_cmd = app.add_subcommand("reads", "Extract the read multiset from a sample");
    struct {
        std::string sample;
        int read_length = 0;
        std::string out;
    } rd;
    reads_cmd->add_option("--sample", rd.sample, "Sample file")->required();
    reads_cmd->add_option("--L", rd.read_length, "Read length")->required();
    reads_cmd->add_option("--out", rd.out, "Output reads file")->required();
    reads_cmd->callback([&] {
        const Sample sample = read_sample_file(rd.sample);
        write_reads_file(extract_reads(sample, rd.read_length), rd.out);
    });

    // assemble --------------------------------------------------------------
    auto* assemble = app.add_subcommand("assemble", "Greedy-assemble a reads file");
    struct {
        std::string reads;
        int num_genomes = 0;
        int genome_length = 0;
        std::uint64_t seed = 0;
        std::string out;
    } as;
    assemble->add_option("--reads", as.reads, "Reads file")->required();
    assemble->add_option("--genomes", as.num_genomes, "Number of genomes M")->required();
    assemble->add_option("--length", as.genome_length, "Genome length N")->required();
    assemble->add_option("--seed", as.seed, "Tie-break seed")->capture_default_str();
    assemble->add_option("--out", as.out, "Output contigs file (sample text format)")->required();
    assemble->callback([&] {
        const ReadMultiset reads = read_reads_file(as.reads);
        const AssemblyResult result =
            greedy_assemble(reads, as.num_genomes, as.genome_length, as.seed);
        std::ofstream out(as.out);
        if (!out) throw IoError("cannot open '" + as.out + "' for writing");
        out << "#alphabet=" << infer_alphabet_header(result.contigs) << '\n';
        for (const auto& [text, count] : result.contigs) {
            for (std::int64_t i = 0; i < count; ++i) out << text << '\n';
        }
        out.flush();
        if (!out) throw IoError("write failed on '" + as.out + "'");
        if (!result.complete) {
            std::cerr << "assembly incomplete: " << result.contigs.size()
                      << " distinct contigs remain\n";
            exit_code = kExitIncomplete;
        }
    });

    // check -----------------------------------------------------------------
    auto* check = app.add_subcommand("check", "Classify a sample's identifiability");
    struct {
        std::string sample;
        int read_length = 0;
        double eta = -1.0;
        bool dump = false;
        std::uint64_t limit = 100;
    } ck;
    check->add_option("--sample", ck.sample, "Sample file")->required();
    check->add_option("--L", ck.read_length, "Read length")->required();
    check->add_option("--eta", ck.eta, "Search restriction (default: min(d/2,(1-d)/2)/2, d=L/N)");
    check->add_flag("--dump", ck.dump, "Dump repeat witnesses at length L-1");
    check->add_option("--limit", ck.limit, "Max dumped repeat witnesses")->capture_default_str();
    check->callback([&] {
        const Sample sample = read_sample_file(ck.sample);
        const double eta =
            ck.eta >= 0.0 ? ck.eta : default_eta(ck.read_length, sample.genome_length());
        const IdentVerdict verdict = check_identifiable(sample, ck.read_length, eta);
        if (ck.dump) {
            for (const RepeatWitness& w :
                 find_repeats(sample, ck.read_length - 1, ck.limit)) {
                std::cout << "S " << w.genome_a << ' ' << w.pos_a << ' ' << w.genome_b << ' '
                          << w.pos_b << ' ' << w.length << ' ' << (w.overlapping ? 1 : 0) << '\n';
            }
        }
        if (verdict.witness) {
            const SwapWitness& w = *verdict.witness;
            std::cout << "SWAP " << w.genome_a << ' ' << w.genome_b << ' ' << w.pos << ' '
                      << w.word << '\n';
        }
        std::cout << "reason: " << verdict.reason << '\n';
        std::cout << "verdict=" << to_string(verdict.tag) << '\n';
    });

    // thresholds --------------------------------------------------------------
    auto* thresholds = app.add_subcommand("thresholds", "Print theorem thresholds and bounds");
    struct {
        int num_genomes = 0;
        int genome_length = 0;
        int read_length = 0;
        double epsilon = 0.0;
        double eta = -1.0;
        DistOptions dist;
    } th;
    thresholds->add_option("--M", th.num_genomes, "Number of genomes")->required();
    thresholds->add_option("--N", th.genome_length, "Genome length")->required();
    thresholds->add_option("--L", th.read_length, "Read length (adds repeat/exclusion bounds)");
    thresholds->add_option("--eps", th.epsilon, "Threshold slack epsilon")->capture_default_str();
    thresholds->add_option("--eta", th.eta, "Search restriction for the exclusion bound");
    add_dist_options(thresholds, th.dist);
    thresholds->callback([&] {
        const std::vector<Distribution> dists = resolve_dists(th.dist, th.num_genomes);
        const EntropyExtremes e = entropy_extremes(dists);
        std::printf("H_star=%.10g\n", e.h_star);
        std::printf("F_star=%.10g\n", e.f_star);
        std::printf("F_lower=%.10g\n", e.f_lower);
        std::printf("upper_threshold=%.10g\n",
                    upper_threshold(th.num_genomes, th.genome_length, e.h_star, th.epsilon));
        std::printf("lower_threshold=%.10g\n",
                    lower_threshold(th.num_genomes, th.genome_length, e.f_star, e.f_lower,
                                    th.epsilon));
        if (th.read_length > 0) {
            ProblemSpec spec;
            spec.num_genomes = th.num_genomes;
            spec.genome_length = th.genome_length;
            spec.read_length = th.read_length;
            spec.dists = dists;
            const double eta = th.eta >= 0.0
                                   ? th.eta
                                   : default_eta(th.read_length, th.genome_length);
            const TheoremBounds b = theorem_bounds_report(spec, th.read_length, eta);
            std::printf("e1_bound=%.10g\n", b.e1_bound);
            std::printf("e2_bound=%.10g\n", b.e2_bound);
            std::printf("non_identifiability_bound=%.10g\n", b.non_identifiability_bound);
            std::printf("t_exclusion_bound=%.10g\n", b.t_exclusion_bound);
            std::printf("analytic_E_Z=%.10g\n",
                        analytic_expectation_z(spec, th.read_length, eta));
        }
    });

    // experiment ---------------------------------------------------------------
    auto* experiment = app.add_subcommand("experiment", "Run a Monte Carlo experiment");
    struct {
        std::string config;
        std::string out;
        int threads = 1;
    } ex;
    experiment->add_option("--config", ex.config, "key=value config file")->required();
    experiment->add_option("--out", ex.out, "Output CSV path")->required();
    experiment->add_option("--threads", ex.threads, "Worker count")->capture_default_str();
    experiment->callback([&] {
        const ExperimentConfig config = parse_experiment_config_file(ex.config);
        const ExperimentSummary summary = run_experiment(config, ex.threads);
        write_summary_csv_file(summary, ex.out);
        for (const SummaryRow& row : summary.rows) {
            std::printf("L=%d p_ident=%.4f p_nonident=%.4f p_unknown=%.4f z_mean=%.6g "
                        "z_analytic=%.6g\n",
                        row.read_length, row.p_identifiable, row.p_nonidentifiable, row.p_unknown,
                        row.z_mean, row.z_mean_analytic);
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }
    return exit_code;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const metasim::IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return kExitIo;
    } catch (const metasim::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const metasim::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }
}
