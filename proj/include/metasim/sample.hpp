#ifndef METASIM_SAMPLE_HPP
#define METASIM_SAMPLE_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "metasim/distribution.hpp"

namespace metasim {

/// Problem instance: M genomes of length N generated symbol-by-symbol from
/// per-genome distributions, later observed through reads of length L.
struct ProblemSpec {
    int num_genomes = 0;  // M >= 1
    int genome_length = 0; // N >= 1
    int read_length = 0;   // 1 <= L <= N
    std::vector<Distribution> dists; // exactly M entries, same alphabet

    // Throws ValidationError when any field is out of range.
    void validate() const;
    const Alphabet& alphabet() const { return dists.front().alphabet(); }

    // M copies of one distribution.
    static ProblemSpec homogeneous(int num_genomes, int genome_length, int read_length,
                                   const Distribution& dist);
};

/// A generated genome collection. Genomes all have the same length and are
/// made of alphabet characters only; both are checked at construction.
class Sample {
public:
    Sample(Alphabet alphabet, std::vector<std::string> genomes);

    const Alphabet& alphabet() const { return alphabet_; }
    const std::vector<std::string>& genomes() const { return genomes_; }
    const std::string& genome(int m) const { return genomes_[static_cast<std::size_t>(m)]; }
    int num_genomes() const { return static_cast<int>(genomes_.size()); }
    int genome_length() const { return genomes_.empty() ? 0 : static_cast<int>(genomes_.front().size()); }

    friend bool operator==(const Sample& a, const Sample& b) {
        return a.alphabet_ == b.alphabet_ && a.genomes_ == b.genomes_;
    }

private:
    Alphabet alphabet_;
    std::vector<std::string> genomes_;
};

// Draws each genome IID from its distribution. Pure in (spec, seed): genome m
// uses engine mt19937_64(derive_seed(seed, m)), so streams are independent
// per genome and the result does not depend on evaluation order.
Sample sample_metagenome(const ProblemSpec& spec, std::uint64_t seed);

// Text format: header line "#alphabet=<symbols>", then one genome per line.
// The header is optional on input and defaults to ACGT.
void write_sample(const Sample& sample, std::ostream& out);
void write_sample_file(const Sample& sample, const std::string& path);
Sample read_sample(std::istream& in);
Sample read_sample_file(const std::string& path);

} // namespace metasim

#endif
