#ifndef METASIM_RNG_HPP
#define METASIM_RNG_HPP

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace metasim {

/// All randomness in the library flows through std::mt19937_64 engines whose
/// output sequence is fixed by the C++ standard, so results are reproducible
/// across platforms and compilers. Independent streams (one per genome, one
/// per trial, one for assembly tie-breaks) are derived from a single master
/// seed with the splitmix64 mixing function below rather than by jumping a
/// shared engine, so the stream layout is independent of evaluation order.

// splitmix64 output function (Steele, Lea, Flood 2014). Bijective on 64 bits.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Child seed for stream `word` under `master`: one mix of the master state,
// one mix to absorb the word. derive_seed(s, a) != derive_seed(s, b) for
// a != b since mix64 is a bijection.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t word) {
    return mix64(mix64(master) ^ word);
}

// Chained derivation for multi-index streams, e.g. (master, L, trial).
inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> words) {
    std::uint64_t s = master;
    for (std::uint64_t w : words) s = derive_seed(s, w);
    return s;
}

using RngEngine = std::mt19937_64;

inline RngEngine make_engine(std::uint64_t seed) { return RngEngine(seed); }

// Uniform double in [0, 1) from the top 53 bits of one engine output.
// Unlike std::uniform_real_distribution this is pinned to a single
// well-defined mapping, so sampled sequences are portable.
inline double uniform_unit(RngEngine& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// Inverse-CDF sampler over a finite set of categories.
class CategoricalSampler {
public:
    explicit CategoricalSampler(const std::vector<double>& probs) : cdf_(probs) {
        double acc = 0.0;
        for (double& c : cdf_) {
            acc += c;
            c = acc;
        }
        if (!cdf_.empty()) cdf_.back() = 1.0;
    }

    int sample(RngEngine& eng) const {
        const double u = uniform_unit(eng);
        int lo = 0;
        int hi = static_cast<int>(cdf_.size()) - 1;
        while (lo < hi) {
            const int mid = (lo + hi) / 2;
            if (u < cdf_[mid]) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        return lo;
    }

private:
    std::vector<double> cdf_;
};

} // namespace metasim

#endif
