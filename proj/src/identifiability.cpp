#include "metasim/identifiability.hpp"

#include <algorithm>
#include <cmath>

#include "metasim/errors.hpp"
#include "metasim/reads.hpp"

namespace metasim {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Identifiable: return "Identifiable";
        case Verdict::NonIdentifiable: return "NonIdentifiable";
        case Verdict::Unknown: return "Unknown";
    }
    return "Unknown";
}

IdentVerdict check_identifiable(const Sample& sample, int read_length, double eta) {
    const int n = sample.genome_length();
    if (read_length < 2 || read_length > n) {
        throw ValidationError("check_identifiable requires 2 <= L <= N");
    }
    if (all_segments_distinct(sample, read_length - 1)) {
        return IdentVerdict{Verdict::Identifiable, std::nullopt,
                            "all (L-1)-segments distinct"};
    }
    if (read_length <= n - 2) {
        if (auto witness = find_swap_witness(sample, read_length, eta)) {
            return IdentVerdict{Verdict::NonIdentifiable, witness,
                                "verified swap configuration"};
        }
    }
    return IdentVerdict{Verdict::Unknown, std::nullopt,
                        "(L-1)-repeat present but no verified swap configuration"};
}

Sample apply_swap(const Sample& sample, const SwapWitness& witness) {
    if (!swap_witness_valid(sample, witness)) {
        throw ValidationError("swap witness does not verify against this sample");
    }
    const std::size_t head =
        static_cast<std::size_t>(witness.pos - 1) + witness.word.size(); // |a w|
    std::vector<std::string> genomes = sample.genomes();
    const std::string& xa = sample.genome(witness.genome_a - 1); // a w b
    const std::string& xb = sample.genome(witness.genome_b - 1); // c w d
    genomes[static_cast<std::size_t>(witness.genome_a - 1)] =
        xa.substr(0, head) + xb.substr(head); // a w d
    genomes[static_cast<std::size_t>(witness.genome_b - 1)] =
        xb.substr(0, head) + xa.substr(head); // c w b
    return Sample(sample.alphabet(), std::move(genomes));
}

namespace {

// Window multiset of one digit matrix, as sorted packed codes.
void collect_window_codes(const std::vector<int>& digits, int num_genomes, int genome_length,
                          int read_length, int bits, std::vector<std::uint64_t>& out) {
    out.clear();
    const std::uint64_t mask =
        (bits * read_length >= 64) ? ~0ull : ((1ull << (bits * read_length)) - 1);
    for (int m = 0; m < num_genomes; ++m) {
        const int base = m * genome_length;
        std::uint64_t code = 0;
        for (int i = 0; i < genome_length; ++i) {
            code = ((code << bits) | static_cast<std::uint64_t>(digits[static_cast<std::size_t>(
                       base + i)])) & mask;
            if (i >= read_length - 1) out.push_back(code);
        }
    }
    std::sort(out.begin(), out.end());
}

} // namespace

bool brute_force_identifiable(const Sample& sample, int read_length,
                              std::uint64_t candidate_cap) {
    const int n = sample.genome_length();
    const int m_count = sample.num_genomes();
    if (read_length < 1 || read_length > n) {
        throw ValidationError("brute_force_identifiable requires 1 <= L <= N");
    }
    const Alphabet& alphabet = sample.alphabet();
    const int cells = m_count * n;
    const double log_candidates = cells * std::log2(static_cast<double>(alphabet.size()));
    if (log_candidates > std::log2(static_cast<double>(candidate_cap)) + 1e-9) {
        throw ValidationError("brute-force candidate count |A|^(M N) exceeds cap " +
                              std::to_string(candidate_cap));
    }
    const int bits = alphabet.bits_per_symbol();
    if (bits * read_length > 64) {
        throw ValidationError("brute-force windows exceed 64-bit packing");
    }

    // Target read multiset and equivalence class.
    std::vector<int> target_digits(static_cast<std::size_t>(cells));
    for (int m = 0; m < m_count; ++m) {
        for (int i = 0; i < n; ++i) {
            target_digits[static_cast<std::size_t>(m * n + i)] =
                alphabet.index_of(sample.genome(m)[static_cast<std::size_t>(i)]);
        }
    }
    std::vector<std::uint64_t> target_reads;
    collect_window_codes(target_digits, m_count, n, read_length, bits, target_reads);
    std::vector<std::string> target_sorted = sample.genomes();
    std::sort(target_sorted.begin(), target_sorted.end());

    // Odometer over all |A|^(M N) digit matrices.
    std::vector<int> digits(static_cast<std::size_t>(cells), 0);
    std::vector<std::uint64_t> reads;
    reads.reserve(target_reads.size());
    std::vector<std::string> genomes(static_cast<std::size_t>(m_count),
                                     std::string(static_cast<std::size_t>(n), '\0'));
    while (true) {
        collect_window_codes(digits, m_count, n, read_length, bits, reads);
        if (reads == target_reads) {
            for (int m = 0; m < m_count; ++m) {
                for (int i = 0; i < n; ++i) {
                    genomes[static_cast<std::size_t>(m)][static_cast<std::size_t>(i)] =
                        alphabet.at(digits[static_cast<std::size_t>(m * n + i)]);
                }
            }
            std::vector<std::string> candidate_sorted = genomes;
            std::sort(candidate_sorted.begin(), candidate_sorted.end());
            if (candidate_sorted != target_sorted) return false;
        }
        int cell = cells - 1;
        while (cell >= 0 && digits[static_cast<std::size_t>(cell)] == alphabet.size() - 1) {
            digits[static_cast<std::size_t>(cell)] = 0;
            --cell;
        }
        if (cell < 0) break;
        ++digits[static_cast<std::size_t>(cell)];
    }
    return true;
}

} // namespace metasim
