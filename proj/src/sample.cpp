#include "metasim/sample.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "metasim/errors.hpp"
#include "metasim/rng.hpp"

namespace metasim {

void ProblemSpec::validate() const {
    if (num_genomes < 1) throw ValidationError("num_genomes must be >= 1");
    if (genome_length < 1) throw ValidationError("genome_length must be >= 1");
    if (read_length < 1 || read_length > genome_length) {
        throw ValidationError("read_length must satisfy 1 <= L <= N, got L=" +
                              std::to_string(read_length) + " N=" +
                              std::to_string(genome_length));
    }
    if (dists.size() != static_cast<std::size_t>(num_genomes)) {
        throw ValidationError("expected " + std::to_string(num_genomes) +
                              " distributions, got " + std::to_string(dists.size()));
    }
    for (const Distribution& d : dists) {
        if (!(d.alphabet() == dists.front().alphabet())) {
            throw ValidationError("all distributions must share one alphabet");
        }
    }
}

ProblemSpec ProblemSpec::homogeneous(int num_genomes, int genome_length, int read_length,
                                     const Distribution& dist) {
    ProblemSpec spec;
    spec.num_genomes = num_genomes;
    spec.genome_length = genome_length;
    spec.read_length = read_length;
    spec.dists.assign(static_cast<std::size_t>(num_genomes), dist);
    return spec;
}

Sample::Sample(Alphabet alphabet, std::vector<std::string> genomes)
    : alphabet_(std::move(alphabet)), genomes_(std::move(genomes)) {
    if (genomes_.empty()) throw ValidationError("sample needs at least one genome");
    for (const std::string& g : genomes_) {
        if (g.size() != genomes_.front().size()) {
            throw ValidationError("genomes must all have the same length");
        }
        for (char c : g) {
            if (!alphabet_.contains(c)) {
                throw ValidationError(std::string("character '") + c + "' not in alphabet");
            }
        }
    }
}

Sample sample_metagenome(const ProblemSpec& spec, std::uint64_t seed) {
    spec.validate();
    std::vector<std::string> genomes;
    genomes.reserve(static_cast<std::size_t>(spec.num_genomes));
    for (int m = 0; m < spec.num_genomes; ++m) {
        const Distribution& dist = spec.dists[static_cast<std::size_t>(m)];
        const CategoricalSampler sampler(dist.probs());
        RngEngine eng = make_engine(derive_seed(seed, static_cast<std::uint64_t>(m)));
        std::string g(static_cast<std::size_t>(spec.genome_length), '\0');
        for (char& c : g) c = dist.alphabet().at(sampler.sample(eng));
        genomes.push_back(std::move(g));
    }
    return Sample(spec.alphabet(), std::move(genomes));
}

void write_sample(const Sample& sample, std::ostream& out) {
    out << "#alphabet=" << sample.alphabet().symbols() << '\n';
    for (const std::string& g : sample.genomes()) out << g << '\n';
}

void write_sample_file(const Sample& sample, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    write_sample(sample, out);
    out.flush();
    if (!out) throw IoError("write failed on '" + path + "'");
}

Sample read_sample(std::istream& in) {
    std::string line;
    std::vector<std::string> genomes;
    std::string alphabet_symbols = "ACGT";
    std::size_t lineno = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.front() == '#') {
            constexpr const char* kKey = "#alphabet=";
            if (line.rfind(kKey, 0) == 0) {
                if (saw_header || !genomes.empty()) {
                    throw ParseError("alphabet header must be the first line", lineno);
                }
                alphabet_symbols = line.substr(std::string(kKey).size());
                saw_header = true;
            }
            continue;
        }
        genomes.push_back(line);
    }
    if (genomes.empty()) throw ParseError("no genomes in sample input");
    try {
        return Sample(Alphabet(alphabet_symbols), std::move(genomes));
    } catch (const ValidationError& e) {
        throw ParseError(std::string("invalid sample: ") + e.what());
    }
}

Sample read_sample_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    return read_sample(in);
}

} // namespace metasim
