#include "metasim/assembler.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "metasim/errors.hpp"
#include "metasim/rng.hpp"

namespace metasim {

std::vector<std::string> AssemblyResult::sorted_contigs() const {
    std::vector<std::string> out;
    for (const auto& [text, count] : contigs) {
        for (std::int64_t i = 0; i < count; ++i) out.push_back(text);
    }
    return out;
}

int max_overlap(const std::string& s1, const std::string& s2, int cap) {
    int k = static_cast<int>(std::min(s1.size(), s2.size()));
    if (cap >= 0) k = std::min(k, cap);
    for (; k > 0; --k) {
        if (s1.compare(s1.size() - static_cast<std::size_t>(k), static_cast<std::size_t>(k), s2,
                       0, static_cast<std::size_t>(k)) == 0) {
            return k;
        }
    }
    return 0;
}

namespace {

// Unbiased uniform integer in [0, bound) via multiply-shift, rejecting the
// biased low region (Lemire 2019).
std::uint64_t bounded_rand(RngEngine& eng, std::uint64_t bound) {
    unsigned __int128 m = static_cast<unsigned __int128>(eng()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
        const std::uint64_t threshold = (0ull - bound) % bound; // 2^64 mod bound
        while (low < threshold) {
            m = static_cast<unsigned __int128>(eng()) * bound;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

struct Token {
    std::string text;
    std::int64_t count = 0;
    // Bucket slots at the current overlap level; -1 while not indexed.
    int left_slot = -1;  // bucket keyed by this token's length-k suffix
    int right_slot = -1; // bucket keyed by this token's length-k prefix
};

struct Bucket {
    std::vector<int> lefts;  // token ids sorted ascending
    std::vector<int> rights; // token ids sorted ascending
    std::uint64_t weight = 0;
};

// Cumulative-sum tree over bucket weights for O(log n) weighted sampling.
class WeightIndex {
public:
    void reset(const std::vector<std::uint64_t>& weights) {
        weights_ = weights;
        rebuild();
    }

    void append(std::uint64_t w) {
        weights_.push_back(w);
        if (weights_.size() > capacity_) {
            rebuild();
        } else {
            add(weights_.size() - 1, w);
        }
    }

    void set(std::size_t i, std::uint64_t w) {
        // Weights move by signed deltas encoded in unsigned arithmetic.
        add(i, w - weights_[i]);
        weights_[i] = w;
    }

    std::uint64_t total() const { return total_; }

    // Largest prefix trick: first index with cumulative sum > r.
    // Also returns the cumulative weight before that index via `before`.
    std::size_t find(std::uint64_t r, std::uint64_t& before) const {
        std::size_t pos = 0;
        std::uint64_t acc = 0;
        for (std::size_t step = top_bit_; step > 0; step >>= 1) {
            const std::size_t next = pos + step;
            if (next <= weights_.size() && acc + tree_[next - 1] <= r) {
                pos = next;
                acc += tree_[next - 1];
            }
        }
        before = acc;
        return pos;
    }

private:
    void rebuild() {
        capacity_ = std::max<std::size_t>(16, weights_.size() * 2);
        tree_.assign(capacity_, 0);
        total_ = 0;
        top_bit_ = 1;
        while (top_bit_ * 2 <= capacity_) top_bit_ *= 2;
        for (std::size_t i = 0; i < weights_.size(); ++i) {
            add(i, weights_[i]);
        }
    }

    void add(std::size_t i, std::uint64_t delta) {
        total_ += delta;
        for (std::size_t j = i + 1; j <= capacity_; j += j & (0 - j)) {
            tree_[j - 1] += delta;
        }
    }

    std::vector<std::uint64_t> weights_;
    std::vector<std::uint64_t> tree_;
    std::size_t capacity_ = 0;
    std::size_t top_bit_ = 1;
    std::uint64_t total_ = 0;
};

// Greedy merge state at one overlap level. Buckets key contigs by their
// length-k prefix (as merge targets) and length-k suffix (as merge sources);
// every admissible ordered pair of physical copies in a bucket is a merge
// candidate with weight 1.
class GreedyState {
public:
    GreedyState(const ReadMultiset& reads, int num_genomes, int genome_length, std::uint64_t seed)
        : genome_length_(genome_length),
          target_contigs_(num_genomes),
          eng_(make_engine(seed)) {
        for (const auto& [text, count] : reads.counts()) {
            const std::int64_t n = static_cast<std::int64_t>(count);
            if (static_cast<int>(text.size()) == genome_length_) {
                retired_[text] += n;
                retired_count_ += n;
            } else {
                ids_.emplace(text, static_cast<int>(tokens_.size()));
                tokens_.push_back(Token{text, n, -1, -1});
                active_copies_ += n;
            }
        }
    }

    AssemblyResult run(int max_level) {
        for (level_ = std::min(max_level, genome_length_ - 1); level_ >= 0 && !done(); --level_) {
            rebuild_level();
            while (!done() && index_.total() > 0) {
                merge_step();
            }
        }
        AssemblyResult result;
        result.contigs = std::move(retired_);
        for (const Token& t : tokens_) {
            if (t.count > 0) result.contigs[t.text] += t.count;
        }
        result.complete = retired_count_ == target_contigs_ && active_copies_ == 0;
        return result;
    }

private:
    bool done() const { return retired_count_ >= target_contigs_ || active_copies_ == 0; }

    std::string_view prefix_key(int id) const {
        return std::string_view(tokens_[static_cast<std::size_t>(id)].text)
            .substr(0, static_cast<std::size_t>(level_));
    }
    std::string_view suffix_key(int id) const {
        const std::string& t = tokens_[static_cast<std::size_t>(id)].text;
        return std::string_view(t).substr(t.size() - static_cast<std::size_t>(level_));
    }

    int bucket_slot(std::string_view key) {
        auto [it, inserted] = bucket_ids_.try_emplace(std::string(key),
                                                      static_cast<int>(buckets_.size()));
        if (inserted) {
            buckets_.emplace_back();
            index_.append(0);
        }
        return it->second;
    }

    void rebuild_level() {
        buckets_.clear();
        bucket_ids_.clear();
        for (int id = 0; id < static_cast<int>(tokens_.size()); ++id) {
            Token& t = tokens_[static_cast<std::size_t>(id)];
            t.left_slot = -1;
            t.right_slot = -1;
            if (t.count <= 0) continue;
            t.left_slot = bucket_slot_rebuild(suffix_key(id));
            buckets_[static_cast<std::size_t>(t.left_slot)].lefts.push_back(id);
            t.right_slot = bucket_slot_rebuild(prefix_key(id));
            buckets_[static_cast<std::size_t>(t.right_slot)].rights.push_back(id);
        }
        std::vector<std::uint64_t> weights(buckets_.size());
        for (std::size_t b = 0; b < buckets_.size(); ++b) {
            buckets_[b].weight = bucket_weight(buckets_[b]);
            weights[b] = buckets_[b].weight;
        }
        index_.reset(weights);
    }

    int bucket_slot_rebuild(std::string_view key) {
        auto [it, inserted] = bucket_ids_.try_emplace(std::string(key),
                                                      static_cast<int>(buckets_.size()));
        if (inserted) buckets_.emplace_back();
        return it->second;
    }

    bool admissible(int left_id, int right_id) const {
        const Token& a = tokens_[static_cast<std::size_t>(left_id)];
        const Token& b = tokens_[static_cast<std::size_t>(right_id)];
        return static_cast<int>(a.text.size() + b.text.size()) - level_ <= genome_length_;
    }

    std::uint64_t pair_weight(int left_id, int right_id) const {
        if (!admissible(left_id, right_id)) return 0;
        const std::int64_t ca = tokens_[static_cast<std::size_t>(left_id)].count;
        const std::int64_t cb = tokens_[static_cast<std::size_t>(right_id)].count;
        return left_id == right_id ? static_cast<std::uint64_t>(ca) * static_cast<std::uint64_t>(ca - 1)
                                   : static_cast<std::uint64_t>(ca) * static_cast<std::uint64_t>(cb);
    }

    std::uint64_t bucket_weight(const Bucket& bucket) const {
        std::uint64_t w = 0;
        for (int a : bucket.lefts) {
            for (int b : bucket.rights) w += pair_weight(a, b);
        }
        return w;
    }

    void refresh_bucket(int slot) {
        Bucket& bucket = buckets_[static_cast<std::size_t>(slot)];
        bucket.weight = bucket_weight(bucket);
        index_.set(static_cast<std::size_t>(slot), bucket.weight);
    }

    static void erase_sorted(std::vector<int>& v, int id) {
        v.erase(std::lower_bound(v.begin(), v.end(), id));
    }
    static void insert_sorted(std::vector<int>& v, int id) {
        v.insert(std::lower_bound(v.begin(), v.end(), id), id);
    }

    // count(id) -= by, updating memberships and weights.
    void take_copies(int id, std::int64_t by) {
        Token& t = tokens_[static_cast<std::size_t>(id)];
        t.count -= by;
        active_copies_ -= by;
        if (t.count == 0) {
            erase_sorted(buckets_[static_cast<std::size_t>(t.left_slot)].lefts, id);
            erase_sorted(buckets_[static_cast<std::size_t>(t.right_slot)].rights, id);
        }
        refresh_bucket(t.left_slot);
        if (t.right_slot != t.left_slot) refresh_bucket(t.right_slot);
    }

    void add_contig(std::string text) {
        if (static_cast<int>(text.size()) == genome_length_) {
            ++retired_[std::move(text)];
            ++retired_count_;
            return;
        }
        auto [it, inserted] = ids_.try_emplace(std::move(text), static_cast<int>(tokens_.size()));
        const int id = it->second;
        if (inserted) {
            tokens_.push_back(Token{it->first, 0, -1, -1});
        }
        Token& t = tokens_[static_cast<std::size_t>(id)];
        ++t.count;
        ++active_copies_;
        if (t.count == 1) {
            t.left_slot = bucket_slot(suffix_key(id));
            insert_sorted(buckets_[static_cast<std::size_t>(t.left_slot)].lefts, id);
            t.right_slot = bucket_slot(prefix_key(id));
            insert_sorted(buckets_[static_cast<std::size_t>(t.right_slot)].rights, id);
        }
        refresh_bucket(t.left_slot);
        if (t.right_slot != t.left_slot) refresh_bucket(t.right_slot);
    }

    void merge_step() {
        const std::uint64_t r = bounded_rand(eng_, index_.total());
        std::uint64_t before = 0;
        const std::size_t slot = index_.find(r, before);
        const Bucket& bucket = buckets_[slot];
        std::uint64_t remaining = r - before;

        int left_id = -1;
        int right_id = -1;
        for (std::size_t ai = 0; ai < bucket.lefts.size() && left_id < 0; ++ai) {
            for (std::size_t bi = 0; bi < bucket.rights.size(); ++bi) {
                const std::uint64_t w = pair_weight(bucket.lefts[ai], bucket.rights[bi]);
                if (remaining < w) {
                    left_id = bucket.lefts[ai];
                    right_id = bucket.rights[bi];
                    break;
                }
                remaining -= w;
            }
        }
        if (left_id < 0 || right_id < 0) {
            throw std::logic_error("assembler: bucket weight out of sync with members");
        }

        const std::string& a = tokens_[static_cast<std::size_t>(left_id)].text;
        const std::string& b = tokens_[static_cast<std::size_t>(right_id)].text;
        std::string merged = a + b.substr(static_cast<std::size_t>(level_));

        if (left_id == right_id) {
            take_copies(left_id, 2);
        } else {
            take_copies(left_id, 1);
            take_copies(right_id, 1);
        }
        add_contig(std::move(merged));
    }

    int genome_length_;
    std::int64_t target_contigs_;
    RngEngine eng_;
    int level_ = 0;

    std::vector<Token> tokens_;
    std::unordered_map<std::string, int> ids_;
    std::vector<Bucket> buckets_;
    std::unordered_map<std::string, int> bucket_ids_;
    WeightIndex index_;

    std::map<std::string, std::int64_t> retired_;
    std::int64_t retired_count_ = 0;
    std::int64_t active_copies_ = 0;
};

} // namespace

AssemblyResult greedy_assemble(const ReadMultiset& reads, int num_genomes, int genome_length,
                               std::uint64_t seed) {
    const int read_length = reads.read_length();
    if (num_genomes < 1) throw ValidationError("num_genomes must be >= 1");
    if (read_length > genome_length) {
        throw ValidationError("read length exceeds genome length");
    }
    const std::uint64_t expected =
        static_cast<std::uint64_t>(num_genomes) *
        static_cast<std::uint64_t>(genome_length - read_length + 1);
    if (reads.total() != expected) {
        throw ValidationError("read total " + std::to_string(reads.total()) +
                              " does not match M (N - L + 1) = " + std::to_string(expected));
    }
    GreedyState state(reads, num_genomes, genome_length, seed);
    return state.run(read_length - 1);
}

} // namespace metasim
