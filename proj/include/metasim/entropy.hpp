#ifndef METASIM_ENTROPY_HPP
#define METASIM_ENTROPY_HPP

#include "metasim/distribution.hpp"

namespace metasim {

/// Entropy functionals and the two read-length thresholds. All logarithms
/// are natural, so every quantity here is in nats and composes directly with
/// the e^{-l F} repeat probabilities.

// Second-order Renyi (collision) entropy: -log sum_a p(a)^2.
// Always in [0, log |alphabet|], the maximum attained exactly at uniform.
double renyi2_entropy(const Distribution& p);

// Cross collision entropy F(p, q) = -log sum_a p(a) q(a). Symmetric, and
// F(p, p) == renyi2_entropy(p). Returns +infinity when the supports are
// disjoint, which propagates to e^{-l F} = 0 in the repeat formulas.
double cross_collision_entropy(const Distribution& p, const Distribution& q);

// Read length above which identifiability becomes overwhelmingly likely:
// 2 (1 + epsilon) / h_star * log(M N). h_star is a lower bound on the
// collision entropy of every generating distribution.
double upper_threshold(int num_genomes, int genome_length, double h_star, double epsilon);

// Read length below which identifiability fails with high probability:
// C (1 - epsilon) log(M N) with C = min(1/f_star, 1/(2 f_star - f_lower)),
// where f_lower <= F(p, q) <= f_star over all generating pairs.
double lower_threshold(int num_genomes, int genome_length, double f_star, double f_lower,
                       double epsilon);

// Largest genome count compatible with the upper threshold at read length L:
// e^{L h_star / 2} / N.
double max_genomes_upper(int read_length, int genome_length, double h_star);

/// Entropy extremes of a distribution collection: the threshold inputs.
struct EntropyExtremes {
    double h_star = 0.0;  // min_m H2(p^m)
    double f_star = 0.0;  // max_{m,m'} F(p^m, p^{m'}), diagonal included
    double f_lower = 0.0; // min_{m,m'} F(p^m, p^{m'})
};

EntropyExtremes entropy_extremes(const std::vector<Distribution>& dists);

} // namespace metasim

#endif
