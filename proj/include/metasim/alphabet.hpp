#ifndef METASIM_ALPHABET_HPP
#define METASIM_ALPHABET_HPP

#include <array>
#include <cstdint>
#include <string>

namespace metasim {

/// Ordered set of distinct symbols. The order is fixed at construction and
/// defines the index <-> character mapping used everywhere else (packed
/// window codes, distribution vectors, serialized files).
class Alphabet {
public:
    // `symbols` must contain at least two distinct characters.
    explicit Alphabet(std::string symbols);

    static const Alphabet& dna(); // "ACGT"

    int size() const { return static_cast<int>(symbols_.size()); }
    const std::string& symbols() const { return symbols_; }
    char at(int index) const { return symbols_[static_cast<std::size_t>(index)]; }

    // -1 for characters outside the alphabet.
    int index_of(char c) const { return index_[static_cast<unsigned char>(c)]; }
    bool contains(char c) const { return index_of(c) >= 0; }

    // Bits needed to pack one symbol index.
    int bits_per_symbol() const { return bits_; }

    friend bool operator==(const Alphabet& a, const Alphabet& b) {
        return a.symbols_ == b.symbols_;
    }

private:
    std::string symbols_;
    std::array<int, 256> index_{};
    int bits_ = 0;
};

} // namespace metasim

#endif
