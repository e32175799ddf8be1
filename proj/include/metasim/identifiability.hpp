#ifndef METASIM_IDENTIFIABILITY_HPP
#define METASIM_IDENTIFIABILITY_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "metasim/repeats.hpp"
#include "metasim/sample.hpp"

namespace metasim {

/// Identifiability classification. The two criteria are one-sided: distinct
/// (L-1)-segments is sufficient for identifiability, a verified swap witness
/// is sufficient for non-identifiability, and samples that meet neither stay
/// Unknown -- the gap between the two conditions is real, not an artifact.

enum class Verdict { Identifiable, NonIdentifiable, Unknown };

const char* to_string(Verdict v);

struct IdentVerdict {
    Verdict tag = Verdict::Unknown;
    std::optional<SwapWitness> witness; // present iff NonIdentifiable
    std::string reason;
};

// Identifiable iff all (L-1)-segments are distinct; otherwise
// NonIdentifiable with a witness when the swap search succeeds; otherwise
// Unknown. Requires 2 <= L <= N (the L-1 criterion is undefined at L = 1).
// The swap search is skipped when L > N - 2, where no witness can exist.
IdentVerdict check_identifiable(const Sample& sample, int read_length, double eta);

// The exchanged sample: genome m becomes a w d and genome m' becomes c w b,
// all others unchanged. Throws ValidationError if the witness does not
// re-verify against the sample. The output has the same read multiset at
// length |w|, and applying the corresponding witness again restores the
// original pair.
Sample apply_swap(const Sample& sample, const SwapWitness& witness);

// Exhaustive ground truth for tiny instances: enumerates every candidate
// collection of M genomes of length N over the alphabet and checks that all
// candidates with an equal read multiset are permutations of the input.
// Refuses (ValidationError) when |alphabet|^(M N) exceeds `candidate_cap`.
bool brute_force_identifiable(const Sample& sample, int read_length,
                              std::uint64_t candidate_cap = 1ull << 20);

} // namespace metasim

#endif
