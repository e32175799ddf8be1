#include "metasim/distribution.hpp"

#include <cmath>

#include "metasim/errors.hpp"

namespace metasim {

Distribution::Distribution(Alphabet alphabet, std::vector<double> probs)
    : alphabet_(std::move(alphabet)), probs_(std::move(probs)) {
    if (probs_.size() != static_cast<std::size_t>(alphabet_.size())) {
        throw ValidationError("distribution has " + std::to_string(probs_.size()) +
                              " entries for an alphabet of size " +
                              std::to_string(alphabet_.size()));
    }
    double sum = 0.0;
    for (double p : probs_) {
        if (!(p >= 0.0) || !std::isfinite(p)) {
            throw ValidationError("distribution entries must be finite and nonnegative");
        }
        sum += p;
    }
    if (std::fabs(sum - 1.0) > kSumTolerance) {
        throw ValidationError("distribution sums to " + std::to_string(sum) +
                              ", outside tolerance " + std::to_string(kSumTolerance));
    }
    for (double& p : probs_) p /= sum;
}

Distribution Distribution::uniform(const Alphabet& alphabet) {
    return Distribution(alphabet,
                        std::vector<double>(static_cast<std::size_t>(alphabet.size()),
                                            1.0 / alphabet.size()));
}

Distribution Distribution::point_mass(const Alphabet& alphabet, char symbol) {
    const int idx = alphabet.index_of(symbol);
    if (idx < 0) {
        throw ValidationError(std::string("symbol '") + symbol + "' not in alphabet");
    }
    std::vector<double> p(static_cast<std::size_t>(alphabet.size()), 0.0);
    p[static_cast<std::size_t>(idx)] = 1.0;
    return Distribution(alphabet, std::move(p));
}

double collision_product(const Distribution& p, const Distribution& q) {
    if (!(p.alphabet() == q.alphabet())) {
        throw ValidationError("distributions are over different alphabets");
    }
    double s = 0.0;
    for (std::size_t a = 0; a < p.probs().size(); ++a) {
        s += p.probs()[a] * q.probs()[a];
    }
    return s;
}

} // namespace metasim
