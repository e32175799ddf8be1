#include "metasim/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "metasim/assembler.hpp"
#include "metasim/entropy.hpp"
#include "metasim/errors.hpp"
#include "metasim/reads.hpp"
#include "metasim/rng.hpp"

namespace metasim {

namespace {

// Tag word separating assembly tie-break streams from generation streams.
constexpr std::uint64_t kAssemblySeedTag = 0x61736d626c7900ull;

std::string trim(std::string_view s) {
    const auto begin = s.find_first_not_of(" \t");
    if (begin == std::string_view::npos) return "";
    const auto end = s.find_last_not_of(" \t");
    return std::string(s.substr(begin, end - begin + 1));
}

} // namespace

const char* to_string(ExperimentMode m) {
    switch (m) {
        case ExperimentMode::Identifiability: return "identifiability";
        case ExperimentMode::Assembly: return "assembly";
        case ExperimentMode::Moments: return "moments";
        case ExperimentMode::RepeatProb: return "repeat-prob";
    }
    return "identifiability";
}

void ExperimentConfig::validate() const {
    if (num_genomes < 1) throw ValidationError("config: M must be >= 1");
    if (genome_length < 1) throw ValidationError("config: N must be >= 1");
    if (dists.size() != static_cast<std::size_t>(num_genomes)) {
        throw ValidationError("config: expected " + std::to_string(num_genomes) +
                              " distributions");
    }
    for (const Distribution& d : dists) {
        if (!(d.alphabet() == alphabet)) {
            throw ValidationError("config: distribution alphabet mismatch");
        }
    }
    if (read_lengths.empty()) throw ValidationError("config: need at least one L value");
    for (int l : read_lengths) {
        if (l < 2 || l > genome_length) {
            throw ValidationError("config: L values must lie in [2, N], got " +
                                  std::to_string(l));
        }
    }
    if (trials < 1) throw ValidationError("config: trials must be >= 1");
    if (eta && (!(*eta >= 0.0) || !(*eta < 0.5))) {
        throw ValidationError("config: eta must lie in [0, 1/2)");
    }
}

ProblemSpec ExperimentConfig::problem_spec(int read_length) const {
    ProblemSpec spec;
    spec.num_genomes = num_genomes;
    spec.genome_length = genome_length;
    spec.read_length = read_length;
    spec.dists = dists;
    return spec;
}

double ExperimentConfig::eta_for(int read_length) const {
    return eta ? *eta : default_eta(read_length, genome_length);
}

namespace {

int parse_int(const std::string& text, std::size_t lineno) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ParseError("bad integer '" + text + "'", lineno);
    }
    return value;
}

std::uint64_t parse_u64(const std::string& text, std::size_t lineno) {
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ParseError("bad unsigned integer '" + text + "'", lineno);
    }
    return value;
}

double parse_double(const std::string& text, std::size_t lineno) {
    try {
        std::size_t pos = 0;
        const double value = std::stod(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
        return value;
    } catch (const std::exception&) {
        throw ParseError("bad real '" + text + "'", lineno);
    }
}

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) parts.push_back(trim(part));
    return parts;
}

} // namespace

ExperimentConfig parse_experiment_config(std::istream& in) {
    struct Entry {
        std::string value;
        std::size_t lineno;
    };
    std::map<std::string, Entry> entries;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos) throw ParseError("expected key=value", lineno);
        const std::string key = trim(stripped.substr(0, eq));
        if (key.empty()) throw ParseError("empty key", lineno);
        if (!entries.emplace(key, Entry{trim(stripped.substr(eq + 1)), lineno}).second) {
            throw ParseError("duplicate key '" + key + "'", lineno);
        }
    }

    auto take = [&](const std::string& key) -> std::optional<Entry> {
        auto it = entries.find(key);
        if (it == entries.end()) return std::nullopt;
        Entry e = it->second;
        entries.erase(it);
        return e;
    };
    auto require = [&](const std::string& key) -> Entry {
        auto e = take(key);
        if (!e) throw ParseError("missing required key '" + key + "'");
        return *e;
    };

    ExperimentConfig config;
    if (auto a = take("alphabet")) config.alphabet = Alphabet(a->value);
    {
        const Entry m = require("M");
        config.num_genomes = parse_int(m.value, m.lineno);
        const Entry n = require("N");
        config.genome_length = parse_int(n.value, n.lineno);
        const Entry l = require("L");
        for (const std::string& part : split_commas(l.value)) {
            config.read_lengths.push_back(parse_int(part, l.lineno));
        }
        const Entry t = require("trials");
        config.trials = parse_int(t.value, t.lineno);
    }
    if (auto s = take("seed")) config.master_seed = parse_u64(s->value, s->lineno);
    if (auto e = take("eta")) config.eta = parse_double(e->value, e->lineno);
    if (auto m = take("mode")) {
        const std::string& v = m->value;
        if (v == "identifiability") config.mode = ExperimentMode::Identifiability;
        else if (v == "assembly") config.mode = ExperimentMode::Assembly;
        else if (v == "moments") config.mode = ExperimentMode::Moments;
        else if (v == "repeat-prob") config.mode = ExperimentMode::RepeatProb;
        else throw ParseError("unknown mode '" + v + "'", m->lineno);
    }

    // Distributions: uniform shorthand or explicit dist.<m> vectors.
    std::map<int, Entry> per_genome;
    for (auto it = entries.begin(); it != entries.end();) {
        if (it->first.rfind("dist.", 0) == 0) {
            per_genome.emplace(parse_int(it->first.substr(5), it->second.lineno), it->second);
            it = entries.erase(it);
        } else {
            ++it;
        }
    }
    const auto dist_kind = take("dist");
    if (!per_genome.empty()) {
        if (dist_kind && dist_kind->value != "explicit") {
            throw ParseError("cannot combine dist=" + dist_kind->value + " with dist.<m> lines",
                             dist_kind->lineno);
        }
        for (int m = 1; m <= config.num_genomes; ++m) {
            auto it = per_genome.find(m);
            if (it == per_genome.end()) {
                throw ParseError("missing dist." + std::to_string(m));
            }
            std::vector<double> probs;
            for (const std::string& part : split_commas(it->second.value)) {
                probs.push_back(parse_double(part, it->second.lineno));
            }
            config.dists.emplace_back(config.alphabet, std::move(probs));
        }
    } else {
        if (dist_kind && dist_kind->value != "uniform") {
            throw ParseError("unknown dist '" + dist_kind->value + "'", dist_kind->lineno);
        }
        config.dists.assign(static_cast<std::size_t>(config.num_genomes),
                            Distribution::uniform(config.alphabet));
    }

    if (!entries.empty()) {
        throw ParseError("unknown key '" + entries.begin()->first + "'",
                         entries.begin()->second.lineno);
    }
    config.validate();
    return config;
}

ExperimentConfig parse_experiment_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    return parse_experiment_config(in);
}

TrialResult run_trial(const ExperimentConfig& config, int read_length, int trial_index) {
    const auto start = std::chrono::steady_clock::now();
    const std::uint64_t child =
        derive_seed(config.master_seed, {static_cast<std::uint64_t>(read_length),
                                         static_cast<std::uint64_t>(trial_index)});
    const ProblemSpec spec = config.problem_spec(read_length);
    const Sample sample = sample_metagenome(spec, child);
    const double eta = config.eta_for(read_length);

    TrialResult result;
    result.read_length = read_length;
    result.trial_index = trial_index;
    if (read_length <= config.genome_length - 2) {
        result.z_count = count_b_events(sample, read_length, eta);
    }
    if (config.mode == ExperimentMode::Identifiability || config.mode == ExperimentMode::Assembly) {
        const IdentVerdict verdict = check_identifiable(sample, read_length, eta);
        result.verdict = verdict.tag;
        result.swap_witness_present = verdict.witness.has_value();
        result.distinct_segments = verdict.tag == Verdict::Identifiable;
    }
    if (config.mode == ExperimentMode::Assembly) {
        const ReadMultiset reads = extract_reads(sample, read_length);
        const AssemblyResult assembly = greedy_assemble(
            reads, config.num_genomes, config.genome_length, derive_seed(child, kAssemblySeedTag));
        if (assembly.complete) {
            std::vector<std::string> truth = sample.genomes();
            std::sort(truth.begin(), truth.end());
            result.assembly_recovered = assembly.sorted_contigs() == truth;
        }
    }
    result.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return result;
}

double analytic_expectation_z(const ProblemSpec& spec, int read_length, double eta) {
    spec.validate();
    const auto [lo, hi] = b_event_position_range(spec.genome_length, read_length, eta);
    if (lo > hi) return 0.0;
    const double positions = hi - lo + 1;
    double sum = 0.0;
    for (std::size_t m = 0; m < spec.dists.size(); ++m) {
        for (std::size_t m2 = m + 1; m2 < spec.dists.size(); ++m2) {
            sum += positions * repeat_probability(spec.dists[m], spec.dists[m2], read_length);
        }
    }
    return sum;
}

double estimate_repeat_match_rate(const Distribution& p, const Distribution& q, int length,
                                  std::int64_t trials, std::uint64_t seed) {
    if (length < 0) throw ValidationError("window length must be >= 0");
    if (trials < 1) throw ValidationError("trials must be >= 1");
    const CategoricalSampler sp(p.probs());
    const CategoricalSampler sq(q.probs());
    RngEngine eng = make_engine(seed);
    std::int64_t matches = 0;
    for (std::int64_t t = 0; t < trials; ++t) {
        bool equal = true;
        for (int i = 0; i < length && equal; ++i) {
            equal = sp.sample(eng) == sq.sample(eng);
        }
        matches += equal ? 1 : 0;
    }
    return static_cast<double>(matches) / static_cast<double>(trials);
}

namespace {

SummaryRow aggregate_row(const ExperimentConfig& config, int read_length,
                         const TrialResult* results, int trials) {
    SummaryRow row;
    row.read_length = read_length;
    row.trials = trials;
    std::int64_t identifiable = 0;
    std::int64_t non_identifiable = 0;
    std::int64_t unknown = 0;
    std::int64_t recovered = 0;
    double z_sum = 0.0;
    for (int t = 0; t < trials; ++t) {
        switch (results[t].verdict) {
            case Verdict::Identifiable: ++identifiable; break;
            case Verdict::NonIdentifiable: ++non_identifiable; break;
            case Verdict::Unknown: ++unknown; break;
        }
        recovered += results[t].assembly_recovered ? 1 : 0;
        z_sum += static_cast<double>(results[t].z_count);
    }
    const double n = trials;
    row.p_identifiable = identifiable / n;
    row.p_nonidentifiable = non_identifiable / n;
    row.p_unknown = unknown / n;
    row.p_assembly_success = recovered / n;
    row.z_mean = z_sum / n;
    double ss = 0.0;
    for (int t = 0; t < trials; ++t) {
        const double d = static_cast<double>(results[t].z_count) - row.z_mean;
        ss += d * d;
    }
    row.z_var = trials > 1 ? ss / (n - 1.0) : 0.0;
    row.z_mean_analytic = analytic_expectation_z(config.problem_spec(read_length), read_length,
                                                 config.eta_for(read_length));
    row.se_binomial = std::sqrt(row.p_identifiable * (1.0 - row.p_identifiable) / n);
    return row;
}

} // namespace

ExperimentSummary run_experiment(const ExperimentConfig& config, int threads) {
    config.validate();
    ExperimentSummary summary;

    if (config.mode == ExperimentMode::RepeatProb) {
        // Independent-window match-rate estimation; one row per length, the
        // rate reported in the z columns against e^{-l F}.
        const Distribution& p = config.dists.front();
        const Distribution& q = config.dists.size() > 1 ? config.dists[1] : config.dists.front();
        for (int length : config.read_lengths) {
            const double rate = estimate_repeat_match_rate(
                p, q, length, config.trials,
                derive_seed(config.master_seed, static_cast<std::uint64_t>(length)));
            SummaryRow row;
            row.read_length = length;
            row.trials = config.trials;
            row.p_unknown = 1.0;
            row.z_mean = rate;
            row.z_var = rate * (1.0 - rate);
            row.z_mean_analytic = repeat_probability(p, q, length);
            row.se_binomial = std::sqrt(rate * (1.0 - rate) / config.trials);
            summary.rows.push_back(row);
        }
        return summary;
    }

    const std::size_t total =
        config.read_lengths.size() * static_cast<std::size_t>(config.trials);
    std::vector<TrialResult> results(total);
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr error;

    auto worker = [&]() {
        while (true) {
            const std::size_t task = next.fetch_add(1);
            if (task >= total) break;
            const int l_index = static_cast<int>(task / static_cast<std::size_t>(config.trials));
            const int trial = static_cast<int>(task % static_cast<std::size_t>(config.trials));
            try {
                results[task] =
                    run_trial(config, config.read_lengths[static_cast<std::size_t>(l_index)], trial);
            } catch (...) {
                std::scoped_lock lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(total);
                break;
            }
        }
    };

    const int worker_count = std::max(1, threads);
    if (worker_count == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(worker_count));
        for (int i = 0; i < worker_count; ++i) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    if (error) std::rethrow_exception(error);

    for (std::size_t li = 0; li < config.read_lengths.size(); ++li) {
        summary.rows.push_back(aggregate_row(config, config.read_lengths[li],
                                             results.data() + li * static_cast<std::size_t>(config.trials),
                                             config.trials));
    }
    return summary;
}

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

} // namespace

void write_summary_csv(const ExperimentSummary& summary, std::ostream& out) {
    out << "L,trials,p_identifiable,p_nonidentifiable,p_unknown,p_assembly_success,"
           "z_mean,z_var,z_mean_analytic,se_binomial\n";
    for (const SummaryRow& row : summary.rows) {
        out << row.read_length << ',' << row.trials << ',' << format_double(row.p_identifiable)
            << ',' << format_double(row.p_nonidentifiable) << ',' << format_double(row.p_unknown)
            << ',' << format_double(row.p_assembly_success) << ',' << format_double(row.z_mean)
            << ',' << format_double(row.z_var) << ',' << format_double(row.z_mean_analytic)
            << ',' << format_double(row.se_binomial) << '\n';
    }
}

void write_summary_csv_file(const ExperimentSummary& summary, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    write_summary_csv(summary, out);
    out.flush();
    if (!out) throw IoError("write failed on '" + path + "'");
}

TheoremBounds theorem_bounds_report(const ProblemSpec& spec, int read_length, double eta) {
    spec.validate();
    const int m_count = spec.num_genomes;
    const int n = spec.genome_length;
    const int l = read_length;

    TheoremBounds b;
    const EntropyExtremes extremes = entropy_extremes(spec.dists);
    b.h_star = extremes.h_star;
    b.f_star = extremes.f_star;
    b.f_lower = extremes.f_lower;

    const double mn = static_cast<double>(m_count) * n;
    b.e1_bound = mn * l * std::exp(-(l - 1) * b.h_star / 2.0);
    b.e2_bound = mn * mn * std::exp(-(l - 1) * b.f_lower);
    b.non_identifiability_bound = b.e1_bound + b.e2_bound;

    const auto [lo, hi] = b_event_position_range(n, l, eta);
    if (lo > hi) {
        b.t_exclusion_bound = 0.0;
    } else {
        const double t_term = static_cast<double>(m_count) * m_count * std::exp(-2.0 * n * b.h_star);
        auto exclusion_at = [&](int j) {
            return std::exp(-(j - 1) * b.f_lower) +
                   std::exp(-(n - (j + l) + 1) * b.f_lower) + t_term;
        };
        b.t_exclusion_bound = std::max(exclusion_at(lo), exclusion_at(hi));
    }

    b.upper_threshold = 2.0 / b.h_star * std::log(mn);
    const double c = std::min(1.0 / b.f_star, 1.0 / (2.0 * b.f_star - b.f_lower));
    b.lower_threshold = c * std::log(mn);
    return b;
}

} // namespace metasim
