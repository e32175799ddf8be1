#ifndef METASIM_REPEATS_HPP
#define METASIM_REPEATS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "metasim/distribution.hpp"
#include "metasim/sample.hpp"

namespace metasim {

/// Repeat and swap-configuration detection. Genome indices and positions in
/// the witness types are 1-based, matching the dump formats and the usual
/// sequence-coordinate convention.

/// Two distinct positions carrying equal length-`length` windows.
/// Overlapping means same genome with offset at most length - 1.
struct RepeatWitness {
    int genome_a = 0;  // m
    int pos_a = 0;     // i
    int genome_b = 0;  // m'
    int pos_b = 0;     // i'
    int length = 0;    // l
    bool overlapping = false;

    friend bool operator==(const RepeatWitness&, const RepeatWitness&) = default;
    friend auto operator<=>(const RepeatWitness&, const RepeatWitness&) = default;
};

/// The non-identifiability configuration: genomes m != m' share the length-L
/// word `word` at position j, with differing prefixes (a != c) and differing
/// suffixes (b != d). 2 <= j <= N - L so all four flanks are nonempty.
struct SwapWitness {
    int genome_a = 0; // m
    int genome_b = 0; // m'
    int pos = 0;      // j
    std::string word; // w, |w| = L

    friend bool operator==(const SwapWitness&, const SwapWitness&) = default;
};

// All pairs of positions with equal length-`length` windows, or the first
// `limit` of them in canonical order: (genome_a, pos_a) < (genome_b, pos_b)
// within each witness, list sorted by (genome_a, pos_a, genome_b, pos_b).
// Indexing-based (packed or rolling-hashed window codes with exact
// confirmation), near-linear in M N plus output size.
std::vector<RepeatWitness> find_repeats(const Sample& sample, int length,
                                        std::optional<std::uint64_t> limit = std::nullopt);

// True iff the sample has no repeated length-`length` window.
bool all_segments_distinct(const Sample& sample, int length);

// Probability that two independent length-`length` windows drawn from p and q
// coincide: e^{-l F(p,q)} = (sum_a p(a) q(a))^l. Valid for non-overlapping
// windows; the caller is responsible for independence.
double repeat_probability(const Distribution& p, const Distribution& q, int length);

// Union bound on the probability of a self-overlapping length-(L-1) repeat:
// M N L e^{-(L-1) h_star / 2}.
double overlap_repeat_bound(int num_genomes, int genome_length, int read_length, double h_star);

// Union bound on the probability of a non-overlapping length-(L-1) repeat:
// M^2 N^2 e^{-(L-1) f_lower}.
double nonoverlap_repeat_bound(int num_genomes, int genome_length, int read_length,
                               double f_lower);

// Four-genome exchange configuration at position j (all indices 1-based,
// genomes mutually distinct, 2 <= j <= N - L): with a = X^{m1}[1, j-1],
// w = X^{m1}[j, j+L-1], b = X^{m1}[j+L, N] and c, d the same on m2, tests
// X^{m3} == a w d and X^{m4} == c w b (which requires w shared by all four).
bool is_t_event(const Sample& sample, int read_length, int pos, int m1, int m2, int m3, int m4);

// Position range actually searched for B events: the window
// [ceil(eta N), floor((1-eta) N) - L] intersected with [2, N - L], the
// domain on which the four flanks of a swap exist. Empty ranges are returned
// as (lo, hi) with lo > hi.
std::pair<int, int> b_event_position_range(int genome_length, int read_length, double eta);

// Default restriction parameter: min(delta/2, (1-delta)/2) / 2 with
// delta = L / N, strictly inside the open constraint eta < min(...).
double default_eta(int read_length, int genome_length);

// Scans the eta-restricted range for a B event (equal length-L windows at
// the same position on two genomes), then verifies a != c, b != d and that
// no pair of other genomes forms a T configuration that would explain the
// exchange by permutation. Returns the first verified witness in canonical
// (genome_a, genome_b, pos) order. Requires 0 <= eta < 1/2 and L <= N - 2.
std::optional<SwapWitness> find_swap_witness(const Sample& sample, int read_length, double eta);

// Z statistic: number of (unordered genome pair, position) B events in the
// eta-restricted range.
std::int64_t count_b_events(const Sample& sample, int read_length, double eta);

// Re-checks a SwapWitness against a sample: equal windows, a != c, b != d,
// position in range. Used by apply_swap and the self-validation tests.
bool swap_witness_valid(const Sample& sample, const SwapWitness& witness);

} // namespace metasim

#endif
