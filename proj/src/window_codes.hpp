#ifndef METASIM_SRC_WINDOW_CODES_HPP
#define METASIM_SRC_WINDOW_CODES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "metasim/sample.hpp"

namespace metasim::detail {

/// One 64-bit code per length-`length` window of every genome. When the
/// packed representation fits (bits_per_symbol * length <= 64) codes are the
/// windows themselves and equal codes imply equal strings; otherwise codes
/// are a rolling polynomial hash and equality must be confirmed on the text.
class WindowCodes {
public:
    WindowCodes(const Sample& sample, int length);

    int length() const { return length_; }
    bool exact() const { return exact_; }
    int windows_per_genome() const { return windows_per_genome_; }

    // 0-based genome index and window start.
    std::uint64_t code(int genome, int start) const {
        return codes_[static_cast<std::size_t>(genome)][static_cast<std::size_t>(start)];
    }

    // Equality of window contents (code compare, plus text confirmation in
    // hashed mode).
    bool equal(const Sample& sample, int genome_a, int start_a, int genome_b, int start_b) const;

private:
    int length_;
    bool exact_;
    int windows_per_genome_;
    std::vector<std::vector<std::uint64_t>> codes_;
};

} // namespace metasim::detail

#endif
