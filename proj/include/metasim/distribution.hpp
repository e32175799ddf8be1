#ifndef METASIM_DISTRIBUTION_HPP
#define METASIM_DISTRIBUTION_HPP

#include <vector>

#include "metasim/alphabet.hpp"

namespace metasim {

/// Probability vector over an Alphabet, one entry per symbol in alphabet
/// order. Entries must be nonnegative and sum to 1 within 1e-9; inputs inside
/// that tolerance are renormalized exactly at construction, so downstream
/// code can rely on sum == 1.
class Distribution {
public:
    Distribution(Alphabet alphabet, std::vector<double> probs);

    static Distribution uniform(const Alphabet& alphabet);
    static Distribution point_mass(const Alphabet& alphabet, char symbol);

    const Alphabet& alphabet() const { return alphabet_; }
    const std::vector<double>& probs() const { return probs_; }
    double prob(int symbol_index) const { return probs_[static_cast<std::size_t>(symbol_index)]; }

    static constexpr double kSumTolerance = 1e-9;

private:
    Alphabet alphabet_;
    std::vector<double> probs_;
};

// Inner product sum_a p(a) q(a). Throws ValidationError on mismatched
// alphabets.
double collision_product(const Distribution& p, const Distribution& q);

} // namespace metasim

#endif
