#include <doctest.h>

#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "metasim/entropy.hpp"
#include "metasim/errors.hpp"
#include "metasim/rng.hpp"
#include "metasim/sample.hpp"

using namespace metasim;

namespace {

// Random distribution over `alphabet` for property tests.
Distribution random_distribution(const Alphabet& alphabet, RngEngine& eng) {
    std::vector<double> w(static_cast<std::size_t>(alphabet.size()));
    double sum = 0.0;
    for (double& x : w) {
        x = uniform_unit(eng) + 1e-12;
        sum += x;
    }
    for (double& x : w) x /= sum;
    return Distribution(alphabet, std::move(w));
}

} // namespace

TEST_CASE("alphabet validation and indexing") {
    const Alphabet& dna = Alphabet::dna();
    CHECK(dna.size() == 4);
    CHECK(dna.index_of('A') == 0);
    CHECK(dna.index_of('T') == 3);
    CHECK(dna.index_of('x') == -1);
    CHECK(dna.bits_per_symbol() == 2);

    CHECK_THROWS_AS(Alphabet("A"), ValidationError);
    CHECK_THROWS_AS(Alphabet("AGGA"), ValidationError);
    CHECK(Alphabet("01").size() == 2);
    CHECK(Alphabet("01").bits_per_symbol() == 1);
}

TEST_CASE("distribution validation and renormalization") {
    const Alphabet& dna = Alphabet::dna();
    CHECK_THROWS_AS(Distribution(dna, {0.5, 0.5}), ValidationError);
    CHECK_THROWS_AS(Distribution(dna, {0.5, 0.5, 0.25, -0.25}), ValidationError);
    CHECK_THROWS_AS(Distribution(dna, {0.5, 0.5, 0.25, 0.25}), ValidationError);

    // Inside tolerance: accepted and renormalized to an exact unit sum.
    const Distribution d(dna, {0.25, 0.25, 0.25, 0.25 + 5e-10});
    double sum = 0.0;
    for (double p : d.probs()) sum += p;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("renyi2 entropy") {
    const Alphabet& dna = Alphabet::dna();
    const double log4 = std::log(4.0);

    CHECK(renyi2_entropy(Distribution::uniform(dna)) == doctest::Approx(log4).epsilon(1e-12));
    CHECK(renyi2_entropy(Distribution::point_mass(dna, 'C')) == doctest::Approx(0.0));

    // Independent arithmetic: sum of squares is 0.34375.
    const Distribution d(dna, {0.5, 0.25, 0.125, 0.125});
    const double expected = -std::log(0.25 + 0.0625 + 0.015625 + 0.015625);
    CHECK(renyi2_entropy(d) == doctest::Approx(expected).epsilon(1e-15));
    CHECK(renyi2_entropy(d) == doctest::Approx(1.067840630001356).epsilon(1e-12));

    // The maximum log|A| is attained only at uniform.
    CHECK(renyi2_entropy(d) < std::log(4.0) - 1e-3);
}

TEST_CASE("cross collision entropy") {
    const Alphabet& dna = Alphabet::dna();
    const Alphabet binary("01");
    RngEngine eng = make_engine(101);

    SUBCASE("identity with renyi2 on the diagonal") {
        for (int i = 0; i < 50; ++i) {
            const Distribution p = random_distribution(dna, eng);
            CHECK(cross_collision_entropy(p, p) ==
                  doctest::Approx(renyi2_entropy(p)).epsilon(1e-12));
        }
    }
    SUBCASE("disjoint supports give infinity") {
        const Distribution p(binary, {1.0, 0.0});
        const Distribution q(binary, {0.0, 1.0});
        CHECK(std::isinf(cross_collision_entropy(p, q)));
    }
    SUBCASE("uniform factor collapses any partner to log 4") {
        const Distribution u = Distribution::uniform(dna);
        for (int i = 0; i < 20; ++i) {
            const Distribution q = random_distribution(dna, eng);
            CHECK(cross_collision_entropy(u, q) ==
                  doctest::Approx(std::log(4.0)).epsilon(1e-12));
        }
    }
    SUBCASE("symmetry") {
        for (int i = 0; i < 50; ++i) {
            const Distribution p = random_distribution(dna, eng);
            const Distribution q = random_distribution(dna, eng);
            CHECK(cross_collision_entropy(p, q) == cross_collision_entropy(q, p));
        }
    }
    SUBCASE("alphabet mismatch rejected") {
        CHECK_THROWS_AS(cross_collision_entropy(Distribution::uniform(dna),
                                                Distribution::uniform(binary)),
                        ValidationError);
    }
}

TEST_CASE("entropy bounds and the cauchy-schwarz inequality") {
    const Alphabet& dna = Alphabet::dna();
    RngEngine eng = make_engine(202);
    const double log4 = std::log(4.0);
    for (int i = 0; i < 2000; ++i) {
        const Distribution p = random_distribution(dna, eng);
        const Distribution q = random_distribution(dna, eng);
        const double hp = renyi2_entropy(p);
        const double hq = renyi2_entropy(q);
        CHECK(hp >= 0.0);
        CHECK(hp <= log4 + 1e-12);
        const double f = cross_collision_entropy(p, q);
        CHECK(f >= (hp + hq) / 2.0 - 1e-12);
        CHECK(f >= std::min(hp, hq) - 1e-12);
    }
}

TEST_CASE("thresholds") {
    const double log4 = std::log(4.0);

    SUBCASE("upper threshold arithmetic") {
        CHECK(upper_threshold(1, 1, log4, 0.0) == doctest::Approx(0.0));
        CHECK(upper_threshold(4, 2000, log4, 0.0) ==
              doctest::Approx(12.965784284662087).epsilon(1e-12));
        CHECK(upper_threshold(10, 1000, log4, 0.1) ==
              doctest::Approx(14.616483617504398).epsilon(1e-12));
        CHECK_THROWS_AS(upper_threshold(4, 2000, 0.0, 0.0), ValidationError);
        CHECK_THROWS_AS(upper_threshold(0, 2000, log4, 0.0), ValidationError);
    }
    SUBCASE("upper threshold monotonicity") {
        RngEngine eng = make_engine(7);
        for (int i = 0; i < 200; ++i) {
            const int m = 1 + static_cast<int>(eng() % 50);
            const int n = 1 + static_cast<int>(eng() % 5000);
            const double h = 0.1 + uniform_unit(eng) * 2.0;
            const double eps = uniform_unit(eng);
            const double base = upper_threshold(m, n, h, eps);
            CHECK(upper_threshold(m + 1, n, h, eps) >= base);
            CHECK(upper_threshold(m, n + 1, h, eps) >= base);
            CHECK(upper_threshold(m, n, h, eps + 0.1) >= base);
            CHECK(upper_threshold(m, n, h + 0.1, eps) <= base);
        }
    }
    SUBCASE("lower threshold arithmetic") {
        // Equal bounds make both min arguments coincide at 1/log 4.
        CHECK(lower_threshold(16, 10000, log4, log4, 0.0) ==
              doctest::Approx(8.643856189774725).epsilon(1e-12));
        // f_star=2, f_lower=1 picks 1/3 over 1/2.
        CHECK(lower_threshold(2, 2, 2.0, 1.0, 0.0) ==
              doctest::Approx(std::log(4.0) / 3.0).epsilon(1e-12));
        CHECK_THROWS_AS(lower_threshold(2, 2, 1.0, 2.0, 0.0), ValidationError);
        CHECK_THROWS_AS(lower_threshold(2, 2, 1.0, 0.0, 0.0), ValidationError);
    }
    SUBCASE("max genomes bound") {
        CHECK(max_genomes_upper(0, 50, log4) == doctest::Approx(1.0 / 50));
        CHECK(max_genomes_upper(26, 2000, log4) ==
              doctest::Approx(33554.432).epsilon(1e-12));
        // Doubling L squares the numerator.
        const double half = max_genomes_upper(13, 1, log4);
        CHECK(max_genomes_upper(26, 1, log4) == doctest::Approx(half * half).epsilon(1e-12));
    }
}

TEST_CASE("sample_metagenome") {
    const Alphabet& dna = Alphabet::dna();

    SUBCASE("point masses are deterministic") {
        ProblemSpec spec;
        spec.num_genomes = 2;
        spec.genome_length = 3;
        spec.read_length = 1;
        spec.dists = {Distribution::point_mass(dna, 'A'), Distribution::point_mass(dna, 'C')};
        const Sample s = sample_metagenome(spec, 99);
        CHECK(s.genome(0) == "AAA");
        CHECK(s.genome(1) == "CCC");
    }
    SUBCASE("pure function of (spec, seed)") {
        const ProblemSpec spec =
            ProblemSpec::homogeneous(3, 64, 8, Distribution::uniform(dna));
        const Sample a = sample_metagenome(spec, 1234);
        const Sample b = sample_metagenome(spec, 1234);
        CHECK(a == b);
        const Sample c = sample_metagenome(spec, 1235);
        CHECK_FALSE(a == c);
    }
    SUBCASE("law of large numbers at N=100000") {
        const ProblemSpec spec =
            ProblemSpec::homogeneous(1, 100000, 10, Distribution::uniform(dna));
        const Sample s = sample_metagenome(spec, 42);
        int counts[4] = {0, 0, 0, 0};
        for (char c : s.genome(0)) ++counts[dna.index_of(c)];
        for (int a = 0; a < 4; ++a) {
            CHECK(std::fabs(counts[a] / 100000.0 - 0.25) < 0.01);
        }
    }
    SUBCASE("invalid specs rejected") {
        ProblemSpec spec = ProblemSpec::homogeneous(2, 4, 5, Distribution::uniform(dna));
        CHECK_THROWS_AS(sample_metagenome(spec, 0), ValidationError);
        spec.read_length = 2;
        spec.dists.pop_back();
        CHECK_THROWS_AS(sample_metagenome(spec, 0), ValidationError);
    }
    SUBCASE("genome streams are independent of M") {
        // Prefix property: adding a genome does not disturb earlier ones.
        const ProblemSpec small =
            ProblemSpec::homogeneous(2, 32, 4, Distribution::uniform(dna));
        const ProblemSpec large =
            ProblemSpec::homogeneous(3, 32, 4, Distribution::uniform(dna));
        const Sample a = sample_metagenome(small, 5);
        const Sample b = sample_metagenome(large, 5);
        CHECK(a.genome(0) == b.genome(0));
        CHECK(a.genome(1) == b.genome(1));
    }
}

TEST_CASE("sample text round trip") {
    const Alphabet& dna = Alphabet::dna();
    const ProblemSpec spec = ProblemSpec::homogeneous(3, 20, 4, Distribution::uniform(dna));
    const Sample s = sample_metagenome(spec, 31337);

    std::stringstream buf;
    write_sample(s, buf);
    const Sample back = read_sample(buf);
    CHECK(back == s);

    std::stringstream headerless("ACGT\nGGTA\n");
    const Sample two = read_sample(headerless);
    CHECK(two.num_genomes() == 2);
    CHECK(two.alphabet() == dna);

    std::stringstream ragged("#alphabet=ACGT\nACGT\nACG\n");
    CHECK_THROWS_AS(read_sample(ragged), ParseError);
    std::stringstream bad_char("#alphabet=ACGT\nACGX\n");
    CHECK_THROWS_AS(read_sample(bad_char), ParseError);
    std::stringstream empty("");
    CHECK_THROWS_AS(read_sample(empty), ParseError);
}

TEST_CASE("seed derivation separates streams") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 1000; ++i) {
        seen.insert(derive_seed(42, i));
        seen.insert(derive_seed(43, i));
    }
    CHECK(seen.size() == 2000);
    CHECK(derive_seed(1, {2, 3}) != derive_seed(1, {3, 2}));
}
