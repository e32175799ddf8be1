#ifndef METASIM_READS_HPP
#define METASIM_READS_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>

#include "metasim/sample.hpp"

namespace metasim {

/// The read multiset R(X): every length-L window of every genome, with
/// multiplicity. Stored as a count map keyed by read content -- at desk scale
/// (M N in the millions) a flat list would be mostly duplicates. The map is
/// ordered so serialization and iteration are canonical.
class ReadMultiset {
public:
    using CountMap = std::map<std::string, std::uint64_t>;

    ReadMultiset(int read_length, CountMap counts);

    int read_length() const { return read_length_; }
    const CountMap& counts() const { return counts_; }
    std::uint64_t total() const { return total_; }

    friend bool operator==(const ReadMultiset& a, const ReadMultiset& b) {
        return a.read_length_ == b.read_length_ && a.counts_ == b.counts_;
    }

private:
    int read_length_;
    CountMap counts_;
    std::uint64_t total_;
};

// All length-L windows of all genomes. total() == M (N - L + 1).
ReadMultiset extract_reads(const Sample& sample, int read_length);

// True iff read lengths match and the count maps are identical.
bool multiset_equal(const ReadMultiset& a, const ReadMultiset& b);

// File format: header "#L=<int>\t#total=<int>", then lexicographically
// sorted "read<TAB>count" lines. read_reads rejects duplicate read lines,
// length mismatches and count/total inconsistencies with the line number.
void write_reads(const ReadMultiset& reads, std::ostream& out);
void write_reads_file(const ReadMultiset& reads, const std::string& path);
ReadMultiset read_reads(std::istream& in);
ReadMultiset read_reads_file(const std::string& path);

} // namespace metasim

#endif
