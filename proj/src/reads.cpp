#include "metasim/reads.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "metasim/errors.hpp"

namespace metasim {

ReadMultiset::ReadMultiset(int read_length, CountMap counts)
    : read_length_(read_length), counts_(std::move(counts)), total_(0) {
    if (read_length_ < 1) throw ValidationError("read length must be >= 1");
    for (const auto& [read, count] : counts_) {
        if (read.size() != static_cast<std::size_t>(read_length_)) {
            throw ValidationError("read '" + read + "' does not have length " +
                                  std::to_string(read_length_));
        }
        if (count == 0) throw ValidationError("read counts must be positive");
        total_ += count;
    }
}

ReadMultiset extract_reads(const Sample& sample, int read_length) {
    const int n = sample.genome_length();
    if (read_length < 1 || read_length > n) {
        throw ValidationError("read length must satisfy 1 <= L <= N, got L=" +
                              std::to_string(read_length) + " N=" + std::to_string(n));
    }
    ReadMultiset::CountMap counts;
    for (const std::string& g : sample.genomes()) {
        for (int i = 0; i + read_length <= n; ++i) {
            ++counts[g.substr(static_cast<std::size_t>(i), static_cast<std::size_t>(read_length))];
        }
    }
    return ReadMultiset(read_length, std::move(counts));
}

bool multiset_equal(const ReadMultiset& a, const ReadMultiset& b) {
    return a == b;
}

void write_reads(const ReadMultiset& reads, std::ostream& out) {
    out << "#L=" << reads.read_length() << "\t#total=" << reads.total() << '\n';
    for (const auto& [read, count] : reads.counts()) {
        out << read << '\t' << count << '\n';
    }
}

void write_reads_file(const ReadMultiset& reads, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    write_reads(reads, out);
    out.flush();
    if (!out) throw IoError("write failed on '" + path + "'");
}

namespace {

std::uint64_t parse_count(std::string_view text, std::size_t lineno, bool allow_zero = false) {
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || (value == 0 && !allow_zero)) {
        throw ParseError("bad count '" + std::string(text) + "'", lineno);
    }
    return value;
}

} // namespace

ReadMultiset read_reads(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty reads input");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    int read_length = 0;
    std::uint64_t declared_total = 0;
    {
        std::size_t tab = line.find('\t');
        constexpr const char* kL = "#L=";
        constexpr const char* kTotal = "#total=";
        if (line.rfind(kL, 0) != 0 || tab == std::string::npos ||
            line.compare(tab + 1, std::string(kTotal).size(), kTotal) != 0) {
            throw ParseError("expected header '#L=<int>\\t#total=<int>'", 1);
        }
        read_length = static_cast<int>(parse_count(
            std::string_view(line).substr(3, tab - 3), 1));
        declared_total = parse_count(std::string_view(line).substr(tab + 1 + 7), 1,
                                     /*allow_zero=*/true);
    }

    ReadMultiset::CountMap counts;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::size_t tab = line.find('\t');
        if (tab == std::string::npos) throw ParseError("expected 'read<TAB>count'", lineno);
        std::string read = line.substr(0, tab);
        if (read.size() != static_cast<std::size_t>(read_length)) {
            throw ParseError("read length " + std::to_string(read.size()) +
                                 " does not match header L=" + std::to_string(read_length),
                             lineno);
        }
        const std::uint64_t count = parse_count(std::string_view(line).substr(tab + 1), lineno);
        if (!counts.emplace(std::move(read), count).second) {
            throw ParseError("duplicate read entry", lineno);
        }
    }

    ReadMultiset result(read_length, std::move(counts));
    if (result.total() != declared_total) {
        throw ParseError("header total " + std::to_string(declared_total) +
                         " does not match sum of counts " + std::to_string(result.total()));
    }
    return result;
}

ReadMultiset read_reads_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    return read_reads(in);
}

} // namespace metasim
