#include "metasim/repeats.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "metasim/entropy.hpp"
#include "metasim/errors.hpp"
#include "window_codes.hpp"

namespace metasim {

namespace {

void check_segment_length(const Sample& sample, int length) {
    if (length < 1 || length > sample.genome_length()) {
        throw ValidationError("segment length must satisfy 1 <= l <= N, got l=" +
                              std::to_string(length) + " N=" +
                              std::to_string(sample.genome_length()));
    }
}

void check_eta(double eta) {
    if (!(eta >= 0.0) || !(eta < 0.5)) {
        throw ValidationError("eta must lie in [0, 1/2)");
    }
}

// Guard against products like 0.1 * 1000 landing one ulp above the integer
// they represent, which would shift the position range by one.
int ceil_with_guard(double x) {
    const double tol = 1e-9 * std::max(1.0, std::fabs(x));
    return static_cast<int>(std::ceil(x - tol));
}

int floor_with_guard(double x) {
    const double tol = 1e-9 * std::max(1.0, std::fabs(x));
    return static_cast<int>(std::floor(x + tol));
}

// Flat position ordering: all windows of genome 0, then genome 1, ...
struct PositionGroups {
    // group id per flat position, and per-group members (flat ids in order).
    std::vector<std::int32_t> group_of;
    std::vector<std::int32_t> rank_in_group;
    std::vector<std::vector<std::int32_t>> members;
};

PositionGroups group_positions(const Sample& sample, const detail::WindowCodes& codes) {
    const int m_count = sample.num_genomes();
    const int per_genome = codes.windows_per_genome();
    const std::size_t total = static_cast<std::size_t>(m_count) * per_genome;

    PositionGroups groups;
    groups.group_of.assign(total, -1);
    groups.rank_in_group.assign(total, 0);

    // Representative flat position per content group, bucketed by code.
    std::unordered_map<std::uint64_t, std::vector<std::int32_t>> reps_by_code;
    reps_by_code.reserve(total * 2);

    std::int32_t flat = 0;
    for (int m = 0; m < m_count; ++m) {
        for (int i = 0; i < per_genome; ++i, ++flat) {
            auto& reps = reps_by_code[codes.code(m, i)];
            std::int32_t gid = -1;
            if (codes.exact() && !reps.empty()) {
                gid = groups.group_of[static_cast<std::size_t>(reps.front())];
            } else {
                for (std::int32_t rep : reps) {
                    const int rm = rep / per_genome;
                    const int ri = rep % per_genome;
                    if (codes.equal(sample, rm, ri, m, i)) {
                        gid = groups.group_of[static_cast<std::size_t>(rep)];
                        break;
                    }
                }
            }
            if (gid < 0) {
                gid = static_cast<std::int32_t>(groups.members.size());
                groups.members.emplace_back();
                reps.push_back(flat);
            }
            groups.group_of[static_cast<std::size_t>(flat)] = gid;
            groups.rank_in_group[static_cast<std::size_t>(flat)] =
                static_cast<std::int32_t>(groups.members[static_cast<std::size_t>(gid)].size());
            groups.members[static_cast<std::size_t>(gid)].push_back(flat);
        }
    }
    return groups;
}

} // namespace

std::vector<RepeatWitness> find_repeats(const Sample& sample, int length,
                                        std::optional<std::uint64_t> limit) {
    check_segment_length(sample, length);
    const detail::WindowCodes codes(sample, length);
    const PositionGroups groups = group_positions(sample, codes);
    const int per_genome = codes.windows_per_genome();

    std::vector<RepeatWitness> out;
    const std::uint64_t cap = limit.value_or(~0ull);
    const std::int32_t total = static_cast<std::int32_t>(groups.group_of.size());
    for (std::int32_t flat = 0; flat < total && out.size() < cap; ++flat) {
        const auto& members =
            groups.members[static_cast<std::size_t>(groups.group_of[static_cast<std::size_t>(flat)])];
        const std::size_t rank = static_cast<std::size_t>(
            groups.rank_in_group[static_cast<std::size_t>(flat)]);
        const int m1 = flat / per_genome;
        const int i1 = flat % per_genome;
        for (std::size_t k = rank + 1; k < members.size() && out.size() < cap; ++k) {
            const std::int32_t other = members[k];
            const int m2 = other / per_genome;
            const int i2 = other % per_genome;
            const bool overlapping = (m1 == m2) && std::abs(i1 - i2) <= length - 1;
            out.push_back(RepeatWitness{m1 + 1, i1 + 1, m2 + 1, i2 + 1, length, overlapping});
        }
    }
    return out;
}

bool all_segments_distinct(const Sample& sample, int length) {
    check_segment_length(sample, length);
    const detail::WindowCodes codes(sample, length);
    // Early exit on the first confirmed duplicate; repeat-heavy samples are
    // rejected after a handful of windows.
    std::unordered_map<std::uint64_t, std::vector<std::int64_t>> seen;
    seen.reserve(static_cast<std::size_t>(sample.num_genomes()) * codes.windows_per_genome() * 2);
    for (int m = 0; m < sample.num_genomes(); ++m) {
        for (int i = 0; i < codes.windows_per_genome(); ++i) {
            auto& bucket = seen[codes.code(m, i)];
            if (!bucket.empty()) {
                if (codes.exact()) return false;
                for (std::int64_t packed : bucket) {
                    if (codes.equal(sample, static_cast<int>(packed >> 32),
                                    static_cast<int>(packed & 0xFFFFFFFF), m, i)) {
                        return false;
                    }
                }
            }
            bucket.push_back((static_cast<std::int64_t>(m) << 32) | i);
        }
    }
    return true;
}

double repeat_probability(const Distribution& p, const Distribution& q, int length) {
    if (length < 0) throw ValidationError("repeat_probability requires l >= 0");
    return std::pow(collision_product(p, q), length);
}

double overlap_repeat_bound(int num_genomes, int genome_length, int read_length, double h_star) {
    if (num_genomes < 1 || genome_length < 1 || read_length < 1 || !(h_star > 0.0)) {
        throw ValidationError("overlap_repeat_bound requires positive parameters");
    }
    return static_cast<double>(num_genomes) * genome_length * read_length *
           std::exp(-(read_length - 1) * h_star / 2.0);
}

double nonoverlap_repeat_bound(int num_genomes, int genome_length, int read_length,
                               double f_lower) {
    if (num_genomes < 1 || genome_length < 1 || read_length < 1 || !(f_lower > 0.0)) {
        throw ValidationError("nonoverlap_repeat_bound requires positive parameters");
    }
    const double mn = static_cast<double>(num_genomes) * genome_length;
    return mn * mn * std::exp(-(read_length - 1) * f_lower);
}

bool is_t_event(const Sample& sample, int read_length, int pos, int m1, int m2, int m3, int m4) {
    const int n = sample.genome_length();
    const int m_count = sample.num_genomes();
    const int idx[4] = {m1, m2, m3, m4};
    for (int a = 0; a < 4; ++a) {
        if (idx[a] < 1 || idx[a] > m_count) {
            throw ValidationError("genome index out of range");
        }
        for (int b = a + 1; b < 4; ++b) {
            if (idx[a] == idx[b]) throw ValidationError("genome indices must be distinct");
        }
    }
    if (pos < 2 || pos > n - read_length) {
        throw ValidationError("position must satisfy 2 <= j <= N - L");
    }

    const std::string& x1 = sample.genome(m1 - 1);
    const std::string& x2 = sample.genome(m2 - 1);
    const std::string& x3 = sample.genome(m3 - 1);
    const std::string& x4 = sample.genome(m4 - 1);
    const std::size_t head = static_cast<std::size_t>(pos + read_length - 1); // |a w|
    const std::size_t tail = static_cast<std::size_t>(n) - head;              // |b|

    // X^{m1} = a w b, X^{m2} = c w d, X^{m3} = a w d, X^{m4} = c w b.
    return x1.compare(static_cast<std::size_t>(pos - 1), static_cast<std::size_t>(read_length),
                      x2, static_cast<std::size_t>(pos - 1),
                      static_cast<std::size_t>(read_length)) == 0 &&
           x3.compare(0, head, x1, 0, head) == 0 &&
           x4.compare(0, head, x2, 0, head) == 0 &&
           x3.compare(head, tail, x2, head, tail) == 0 &&
           x4.compare(head, tail, x1, head, tail) == 0;
}

std::pair<int, int> b_event_position_range(int genome_length, int read_length, double eta) {
    const int lo = std::max(2, ceil_with_guard(eta * genome_length));
    const int hi = std::min(genome_length - read_length,
                            floor_with_guard((1.0 - eta) * genome_length) - read_length);
    return {lo, hi};
}

double default_eta(int read_length, int genome_length) {
    const double delta = static_cast<double>(read_length) / genome_length;
    return std::min(delta / 2.0, (1.0 - delta) / 2.0) / 2.0;
}

namespace {

void check_swap_search_args(const Sample& sample, int read_length, double eta) {
    check_eta(eta);
    if (read_length < 1 || read_length > sample.genome_length() - 2) {
        throw ValidationError("swap search requires 1 <= L <= N - 2");
    }
}

// a != c, b != d, and no pair of other genomes forms a T configuration.
bool verify_swap_candidate(const Sample& sample, int read_length, int m, int m2, int pos) {
    const int n = sample.genome_length();
    const std::string& xa = sample.genome(m - 1);
    const std::string& xb = sample.genome(m2 - 1);
    const std::size_t head = static_cast<std::size_t>(pos + read_length - 1);
    const std::size_t tail = static_cast<std::size_t>(n) - head;
    if (xa.compare(0, static_cast<std::size_t>(pos - 1), xb, 0,
                   static_cast<std::size_t>(pos - 1)) == 0) {
        return false; // a == c
    }
    if (xa.compare(head, tail, xb, head, tail) == 0) {
        return false; // b == d
    }
    for (int m3 = 1; m3 <= sample.num_genomes(); ++m3) {
        if (m3 == m || m3 == m2) continue;
        for (int m4 = 1; m4 <= sample.num_genomes(); ++m4) {
            if (m4 == m || m4 == m2 || m4 == m3) continue;
            if (is_t_event(sample, read_length, pos, m, m2, m3, m4)) return false;
        }
    }
    return true;
}

} // namespace

std::optional<SwapWitness> find_swap_witness(const Sample& sample, int read_length, double eta) {
    check_swap_search_args(sample, read_length, eta);
    const auto [lo, hi] = b_event_position_range(sample.genome_length(), read_length, eta);
    if (lo > hi) return std::nullopt;

    const detail::WindowCodes codes(sample, read_length);
    for (int m = 1; m < sample.num_genomes(); ++m) {
        for (int m2 = m + 1; m2 <= sample.num_genomes(); ++m2) {
            for (int pos = lo; pos <= hi; ++pos) {
                if (!codes.equal(sample, m - 1, pos - 1, m2 - 1, pos - 1)) continue;
                if (!verify_swap_candidate(sample, read_length, m, m2, pos)) continue;
                return SwapWitness{m, m2, pos,
                                   sample.genome(m - 1).substr(static_cast<std::size_t>(pos - 1),
                                                               static_cast<std::size_t>(read_length))};
            }
        }
    }
    return std::nullopt;
}

std::int64_t count_b_events(const Sample& sample, int read_length, double eta) {
    check_swap_search_args(sample, read_length, eta);
    const auto [lo, hi] = b_event_position_range(sample.genome_length(), read_length, eta);
    if (lo > hi) return 0;

    const detail::WindowCodes codes(sample, read_length);
    std::int64_t z = 0;
    for (int pos = lo; pos <= hi; ++pos) {
        for (int m = 0; m + 1 < sample.num_genomes(); ++m) {
            for (int m2 = m + 1; m2 < sample.num_genomes(); ++m2) {
                if (codes.equal(sample, m, pos - 1, m2, pos - 1)) ++z;
            }
        }
    }
    return z;
}

bool swap_witness_valid(const Sample& sample, const SwapWitness& witness) {
    const int n = sample.genome_length();
    const int read_length = static_cast<int>(witness.word.size());
    if (witness.genome_a < 1 || witness.genome_a > sample.num_genomes() ||
        witness.genome_b < 1 || witness.genome_b > sample.num_genomes() ||
        witness.genome_a == witness.genome_b) {
        return false;
    }
    if (read_length < 1 || witness.pos < 2 || witness.pos > n - read_length) return false;

    const std::string& xa = sample.genome(witness.genome_a - 1);
    const std::string& xb = sample.genome(witness.genome_b - 1);
    const std::size_t start = static_cast<std::size_t>(witness.pos - 1);
    const std::size_t len = witness.word.size();
    if (xa.compare(start, len, witness.word) != 0) return false;
    if (xb.compare(start, len, witness.word) != 0) return false;

    const std::size_t head = start + len;
    const std::size_t tail = static_cast<std::size_t>(n) - head;
    if (xa.compare(0, start, xb, 0, start) == 0) return false;      // a == c
    if (xa.compare(head, tail, xb, head, tail) == 0) return false; // b == d
    return true;
}

} // namespace metasim
