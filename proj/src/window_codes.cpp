#include "window_codes.hpp"

#include <cstring>

namespace metasim::detail {

namespace {

// Base for the rolling hash fallback; any odd constant works since the
// arithmetic is mod 2^64 and equality is confirmed on the text anyway.
constexpr std::uint64_t kHashBase = 0x100000001B3ull;

std::uint64_t power(std::uint64_t base, int exp) {
    std::uint64_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

} // namespace

WindowCodes::WindowCodes(const Sample& sample, int length)
    : length_(length),
      exact_(sample.alphabet().bits_per_symbol() * length <= 64),
      windows_per_genome_(sample.genome_length() - length + 1) {
    const Alphabet& alphabet = sample.alphabet();
    const int n = sample.genome_length();
    codes_.reserve(static_cast<std::size_t>(sample.num_genomes()));
    if (exact_) {
        const int bits = alphabet.bits_per_symbol();
        const std::uint64_t mask =
            (bits * length >= 64) ? ~0ull : ((1ull << (bits * length)) - 1);
        for (const std::string& g : sample.genomes()) {
            std::vector<std::uint64_t> row(static_cast<std::size_t>(windows_per_genome_));
            std::uint64_t code = 0;
            for (int i = 0; i < n; ++i) {
                code = ((code << bits) |
                        static_cast<std::uint64_t>(alphabet.index_of(g[static_cast<std::size_t>(i)]))) &
                       mask;
                if (i >= length - 1) row[static_cast<std::size_t>(i - length + 1)] = code;
            }
            codes_.push_back(std::move(row));
        }
    } else {
        const std::uint64_t drop = power(kHashBase, length - 1);
        for (const std::string& g : sample.genomes()) {
            std::vector<std::uint64_t> row(static_cast<std::size_t>(windows_per_genome_));
            std::uint64_t h = 0;
            for (int i = 0; i < length; ++i) {
                h = h * kHashBase +
                    static_cast<std::uint64_t>(alphabet.index_of(g[static_cast<std::size_t>(i)])) + 1;
            }
            row[0] = h;
            for (int i = 1; i < windows_per_genome_; ++i) {
                h -= drop * (static_cast<std::uint64_t>(
                                 alphabet.index_of(g[static_cast<std::size_t>(i - 1)])) +
                             1);
                h = h * kHashBase +
                    static_cast<std::uint64_t>(
                        alphabet.index_of(g[static_cast<std::size_t>(i + length - 1)])) +
                    1;
                row[static_cast<std::size_t>(i)] = h;
            }
            codes_.push_back(std::move(row));
        }
    }
}

bool WindowCodes::equal(const Sample& sample, int genome_a, int start_a, int genome_b,
                        int start_b) const {
    if (code(genome_a, start_a) != code(genome_b, start_b)) return false;
    if (exact_) return true;
    const std::string& ga = sample.genome(genome_a);
    const std::string& gb = sample.genome(genome_b);
    return std::memcmp(ga.data() + start_a, gb.data() + start_b,
                       static_cast<std::size_t>(length_)) == 0;
}

} // namespace metasim::detail
