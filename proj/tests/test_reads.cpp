#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "metasim/errors.hpp"
#include "metasim/reads.hpp"
#include "metasim/rng.hpp"

using namespace metasim;

namespace {

Sample make_sample(std::vector<std::string> genomes, const std::string& symbols = "ACGT") {
    return Sample(Alphabet(symbols), std::move(genomes));
}

} // namespace

TEST_CASE("extract_reads basics") {
    const Alphabet ab("ABCDX");

    const ReadMultiset r1 = extract_reads(Sample(ab, {"ABCD"}), 2);
    CHECK(r1.counts() == ReadMultiset::CountMap{{"AB", 1}, {"BC", 1}, {"CD", 1}});
    CHECK(r1.total() == 3);

    const ReadMultiset r2 = extract_reads(Sample(ab, {"AAAA"}), 2);
    CHECK(r2.counts() == ReadMultiset::CountMap{{"AA", 3}});

    const ReadMultiset r3 = extract_reads(Sample(ab, {"ABC", "BCA"}), 2);
    CHECK(r3.counts() == ReadMultiset::CountMap{{"AB", 1}, {"BC", 2}, {"CA", 1}});

    CHECK_THROWS_AS(extract_reads(Sample(ab, {"ABC"}), 4), ValidationError);
    CHECK_THROWS_AS(extract_reads(Sample(ab, {"ABC"}), 0), ValidationError);
}

TEST_CASE("multiset_equal") {
    const Alphabet ab("AB");
    const Sample s1(ab, {"AA", "BB"});
    const Sample s2(ab, {"AB", "AB"});

    const ReadMultiset r1 = extract_reads(s1, 1);
    CHECK(multiset_equal(r1, r1));
    // Both collapse to {A:2, B:2} at L=1.
    CHECK(multiset_equal(r1, extract_reads(s2, 1)));
    CHECK_FALSE(multiset_equal(extract_reads(s1, 2), extract_reads(s1, 1)));
    CHECK_FALSE(multiset_equal(extract_reads(s1, 2), extract_reads(s2, 2)));
}

TEST_CASE("read multiset properties on random samples") {
    const ProblemSpec spec =
        ProblemSpec::homogeneous(4, 40, 6, Distribution::uniform(Alphabet::dna()));
    RngEngine order_eng = make_engine(5);

    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Sample sample = sample_metagenome(spec, seed);
        const int l = 2 + static_cast<int>(seed % 5);
        const ReadMultiset reads = extract_reads(sample, l);

        // Total conservation.
        CHECK(reads.total() ==
              static_cast<std::uint64_t>(spec.num_genomes) *
                  static_cast<std::uint64_t>(spec.genome_length - l + 1));

        // Permutation invariance.
        std::vector<std::string> shuffled = sample.genomes();
        std::shuffle(shuffled.begin(), shuffled.end(), order_eng);
        CHECK(multiset_equal(reads, extract_reads(Sample(sample.alphabet(), shuffled), l)));

        // Every (l-1)-window of every read appears among the (l-1)-reads.
        const ReadMultiset shorter = extract_reads(sample, l - 1);
        for (const auto& [read, count] : reads.counts()) {
            CHECK(shorter.counts().count(read.substr(0, static_cast<std::size_t>(l - 1))) == 1);
            CHECK(shorter.counts().count(read.substr(1)) == 1);
        }
    }
}

TEST_CASE("reads file round trip") {
    const Alphabet ab("ABC");
    const ReadMultiset reads(2, {{"AB", 1}, {"BC", 2}});

    std::stringstream buf;
    write_reads(reads, buf);
    CHECK(buf.str() == "#L=2\t#total=3\nAB\t1\nBC\t2\n");
    CHECK(read_reads(buf) == reads);

    SUBCASE("empty multiset keeps the header") {
        std::stringstream empty_buf;
        write_reads(ReadMultiset(3, {}), empty_buf);
        CHECK(empty_buf.str() == "#L=3\t#total=0\n");
        const ReadMultiset back = read_reads(empty_buf);
        CHECK(back.total() == 0);
        CHECK(back.read_length() == 3);
    }
    SUBCASE("duplicate keys rejected") {
        std::stringstream dup("#L=2\t#total=2\nAB\t1\nAB\t1\n");
        CHECK_THROWS_WITH_AS(read_reads(dup), "line 3: duplicate read entry", ParseError);
    }
    SUBCASE("length mismatch rejected with line number") {
        std::stringstream bad("#L=2\t#total=2\nABC\t2\n");
        CHECK_THROWS_AS(read_reads(bad), ParseError);
        try {
            std::stringstream again("#L=2\t#total=2\nABC\t2\n");
            read_reads(again);
        } catch (const ParseError& e) {
            CHECK(e.line() == 2);
        }
    }
    SUBCASE("malformed lines and totals rejected") {
        std::stringstream no_tab("#L=2\t#total=1\nAB 1\n");
        CHECK_THROWS_AS(read_reads(no_tab), ParseError);
        std::stringstream bad_count("#L=2\t#total=1\nAB\tx\n");
        CHECK_THROWS_AS(read_reads(bad_count), ParseError);
        std::stringstream bad_total("#L=2\t#total=5\nAB\t1\n");
        CHECK_THROWS_AS(read_reads(bad_total), ParseError);
        std::stringstream no_header("AB\t1\n");
        CHECK_THROWS_AS(read_reads(no_header), ParseError);
    }
}

TEST_CASE("round trip on a generated sample") {
    const ProblemSpec spec =
        ProblemSpec::homogeneous(3, 50, 8, Distribution::uniform(Alphabet::dna()));
    const ReadMultiset reads = extract_reads(sample_metagenome(spec, 77), 8);
    std::stringstream buf;
    write_reads(reads, buf);
    CHECK(read_reads(buf) == reads);
}
