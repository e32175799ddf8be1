#include "metasim/alphabet.hpp"

#include <bit>

#include "metasim/errors.hpp"

namespace metasim {

Alphabet::Alphabet(std::string symbols) : symbols_(std::move(symbols)) {
    if (symbols_.size() < 2) {
        throw ValidationError("alphabet needs at least 2 symbols, got " +
                              std::to_string(symbols_.size()));
    }
    index_.fill(-1);
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
        const auto c = static_cast<unsigned char>(symbols_[i]);
        if (index_[c] >= 0) {
            throw ValidationError(std::string("duplicate alphabet symbol '") + symbols_[i] + "'");
        }
        index_[c] = static_cast<int>(i);
    }
    bits_ = std::bit_width(symbols_.size() - 1);
}

const Alphabet& Alphabet::dna() {
    static const Alphabet a("ACGT");
    return a;
}

} // namespace metasim
