#ifndef METASIM_ASSEMBLER_HPP
#define METASIM_ASSEMBLER_HPP

#include <cstdint>
#include <map>
#include <string>

#include "metasim/reads.hpp"

namespace metasim {

/// Greedy overlap assembly: repeatedly merge the pair of active contigs with
/// the largest suffix-prefix overlap, breaking ties uniformly at random.

struct AssemblyResult {
    // Final contigs with multiplicity (identical contigs coalesced).
    std::map<std::string, std::int64_t> contigs;
    // True iff exactly M contigs, all of length N, remain.
    bool complete = false;

    // Flattened, lexicographically sorted contig list (multiplicity expanded).
    std::vector<std::string> sorted_contigs() const;
};

// Largest k <= min(cap, |s1|, |s2|) such that the length-k suffix of s1
// equals the length-k prefix of s2 (k = 0 always qualifies).
int max_overlap(const std::string& s1, const std::string& s2, int cap = -1);

// Greedy reconstruction of `num_genomes` genomes of length `genome_length`
// from the read multiset. Candidate overlaps range from L-1 down to 0 and
// are indexed by prefix/suffix buckets per overlap length; merges that would
// exceed the genome length are forbidden; a contig reaching exactly the
// genome length is retired. Ties among maximum-overlap merge pairs are
// broken uniformly at random by a dedicated mt19937_64 stream seeded from
// `seed`, so the result is a pure function of (reads, M, N, seed).
//
// Terminates when M contigs are retired or no admissible merge remains;
// `complete` is set when the final state is exactly M retired contigs.
// Throws ValidationError unless reads.total() == M (N - L + 1).
AssemblyResult greedy_assemble(const ReadMultiset& reads, int num_genomes, int genome_length,
                               std::uint64_t seed);

} // namespace metasim

#endif
