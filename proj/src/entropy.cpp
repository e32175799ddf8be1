#include "metasim/entropy.hpp"

#include <cmath>
#include <limits>

#include "metasim/errors.hpp"

namespace metasim {

double renyi2_entropy(const Distribution& p) {
    return -std::log(collision_product(p, p));
}

double cross_collision_entropy(const Distribution& p, const Distribution& q) {
    const double inner = collision_product(p, q);
    if (inner <= 0.0) return std::numeric_limits<double>::infinity();
    return -std::log(inner);
}

double upper_threshold(int num_genomes, int genome_length, double h_star, double epsilon) {
    if (num_genomes < 1 || genome_length < 1) {
        throw ValidationError("upper_threshold requires M >= 1 and N >= 1");
    }
    if (!(h_star > 0.0)) throw ValidationError("upper_threshold requires h_star > 0");
    if (epsilon < 0.0) throw ValidationError("upper_threshold requires epsilon >= 0");
    return 2.0 * (1.0 + epsilon) / h_star *
           std::log(static_cast<double>(num_genomes) * genome_length);
}

double lower_threshold(int num_genomes, int genome_length, double f_star, double f_lower,
                       double epsilon) {
    if (num_genomes < 1 || genome_length < 1) {
        throw ValidationError("lower_threshold requires M >= 1 and N >= 1");
    }
    if (!(f_lower > 0.0) || !(f_star > 0.0) || !std::isfinite(f_star)) {
        throw ValidationError("lower_threshold requires 0 < f_lower <= f_star < infinity");
    }
    if (f_lower > f_star) throw ValidationError("lower_threshold requires f_lower <= f_star");
    if (epsilon < 0.0) throw ValidationError("lower_threshold requires epsilon >= 0");
    const double c = std::min(1.0 / f_star, 1.0 / (2.0 * f_star - f_lower));
    return c * (1.0 - epsilon) * std::log(static_cast<double>(num_genomes) * genome_length);
}

double max_genomes_upper(int read_length, int genome_length, double h_star) {
    if (read_length < 0 || genome_length < 1) {
        throw ValidationError("max_genomes_upper requires L >= 0 and N >= 1");
    }
    if (!(h_star > 0.0)) throw ValidationError("max_genomes_upper requires h_star > 0");
    return std::exp(read_length * h_star / 2.0) / genome_length;
}

EntropyExtremes entropy_extremes(const std::vector<Distribution>& dists) {
    if (dists.empty()) throw ValidationError("entropy_extremes needs at least one distribution");
    EntropyExtremes e;
    e.h_star = std::numeric_limits<double>::infinity();
    e.f_lower = std::numeric_limits<double>::infinity();
    e.f_star = 0.0;
    for (std::size_t m = 0; m < dists.size(); ++m) {
        e.h_star = std::min(e.h_star, renyi2_entropy(dists[m]));
        for (std::size_t m2 = m; m2 < dists.size(); ++m2) {
            const double f = cross_collision_entropy(dists[m], dists[m2]);
            e.f_lower = std::min(e.f_lower, f);
            e.f_star = std::max(e.f_star, f);
        }
    }
    return e;
}

} // namespace metasim
