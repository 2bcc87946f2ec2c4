#include <catch2/catch_amalgamated.hpp>

#include "immanon/scattering.hpp"
#include "test_support.hpp"

using immanon::Complex;
using immanon::ComplexMatrix;
using immanon::DistinguishabilityMatrix;
using immanon::OccupationVector;
using immanon::Partition;
using immanon::ScatteringMatrix;

namespace {

ScatteringMatrix balanced_coupler() {
    ComplexMatrix u(2);
    const double s = 1.0 / std::sqrt(2.0);
    u(0, 0) = s;
    u(0, 1) = s;
    u(1, 0) = s;
    u(1, 1) = -s;
    return ScatteringMatrix(u);
}

DistinguishabilityMatrix random_s(int n, std::mt19937_64& rng) {
    return DistinguishabilityMatrix(oracle::random_correlation(n, rng));
}

}  // namespace

TEST_CASE("hong-ou-mandel endpoints") {
    const ScatteringMatrix coupler = balanced_coupler();
    const DistinguishabilityMatrix indist(ComplexMatrix::constant(2, 1.0));
    const DistinguishabilityMatrix dist(ComplexMatrix::identity(2));
    const OccupationVector coincidence({1, 1});

    CHECK(coincidence_probability(Partition({2}), coupler, indist) < 1e-12);
    CHECK(std::abs(coincidence_probability(Partition({1, 1}), coupler, indist) - 1.0) < 1e-12);
    CHECK(std::abs(coincidence_probability(Partition({2}), coupler, dist) - 0.5) < 1e-12);
    CHECK(std::abs(immanon::distinguishable_probability(coupler, coincidence) - 0.5) < 1e-12);
}

TEST_CASE("coincidence equals the all-singles arrangement") {
    std::mt19937_64 rng(41);
    for (int n = 2; n <= 4; ++n) {
        const ScatteringMatrix m(oracle::random_unitary(n, rng));
        const DistinguishabilityMatrix s = random_s(n, rng);
        const OccupationVector singles(std::vector<int>(static_cast<std::size_t>(n), 1));
        for (const auto& lambda : immanon::enumerate_partitions(n)) {
            CHECK(std::abs(coincidence_probability(lambda, m, s) -
                           arrangement_probability(lambda, m, s, singles)) < 1e-12);
        }
    }
}

TEST_CASE("reduced double sum equals the direct triple sum") {
    std::mt19937_64 rng(42);
    for (int n = 2; n <= 4; ++n) {
        for (int trial = 0; trial < 3; ++trial) {
            // also exercises the not-necessarily-unitary branch
            const ScatteringMatrix m(trial == 0 ? oracle::random_matrix(n, rng)
                                                : oracle::random_unitary(n, rng));
            const DistinguishabilityMatrix s = random_s(n, rng);
            for (const auto& lambda : immanon::enumerate_partitions(n)) {
                const double reduced = coincidence_probability(lambda, m, s);
                const double direct =
                    oracle::triple_sum_coincidence(lambda.parts(), m.matrix(), s.matrix());
                CHECK(std::abs(reduced - direct) < 1e-10);
            }
        }
    }
}

TEST_CASE("closed form matches the dense brute-force pipeline") {
    std::mt19937_64 rng(43);
    for (int n = 2; n <= 3; ++n) {
        for (int trial = 0; trial < 6; ++trial) {
            const ScatteringMatrix m(oracle::random_unitary(n, rng));
            const DistinguishabilityMatrix s = random_s(n, rng);
            for (const auto& lambda : immanon::enumerate_partitions(n)) {
                const auto dense = oracle::scattering_distribution(lambda, m.matrix(), s);
                for (const auto& occupation : immanon::all_occupations(n, n)) {
                    const double closed = arrangement_probability(lambda, m, s, occupation);
                    const auto it = dense.find(occupation);
                    const double reference = (it == dense.end()) ? 0.0 : it->second;
                    REQUIRE(std::abs(closed - reference) < 1e-9);
                }
            }
        }
    }
}

TEST_CASE("fully indistinguishable limit") {
    std::mt19937_64 rng(44);
    for (int n : {3, 4}) {
        const ScatteringMatrix m(oracle::random_unitary(n, rng));
        const DistinguishabilityMatrix all_ones(ComplexMatrix::constant(n, 1.0));
        for (const auto& lambda : immanon::enumerate_partitions(n)) {
            for (const auto& occupation : immanon::all_occupations(n, n)) {
                const double via_immanants =
                    indistinguishable_probability(lambda, m, occupation);
                const double via_limit = arrangement_probability(lambda, m, all_ones, occupation);
                CHECK(std::abs(via_immanants - via_limit) < 1e-10);
            }
        }
    }

    // bosons: |perm|^2 of the expanded matrix
    const int n = 3;
    const ScatteringMatrix m(oracle::random_unitary(n, rng));
    const OccupationVector bunched({2, 1, 0});
    const ComplexMatrix expanded = immanon::expand_columns(m.matrix(), bunched);
    const double boson = indistinguishable_probability(Partition({3}), m, bunched);
    CHECK(std::abs(boson - std::norm(immanon::permanent(expanded)) / 2.0) < 1e-12);

    // fermions never multiply occupy a mode
    CHECK(indistinguishable_probability(Partition({1, 1, 1}), m, bunched) < 1e-12);
    const DistinguishabilityMatrix all_ones3(ComplexMatrix::constant(3, 1.0));
    CHECK(arrangement_probability(Partition({1, 1, 1}), m, all_ones3, bunched) < 1e-12);
}

TEST_CASE("fully distinguishable limit is species independent") {
    std::mt19937_64 rng(45);
    const int n = 3;
    const ScatteringMatrix m(oracle::random_unitary(n, rng));
    const DistinguishabilityMatrix identity(ComplexMatrix::identity(n));
    for (const auto& occupation : immanon::all_occupations(n, n)) {
        const double classical = distinguishable_probability(m, occupation);
        for (const auto& lambda : immanon::enumerate_partitions(n)) {
            CHECK(std::abs(arrangement_probability(lambda, m, identity, occupation) - classical) <
                  1e-10);
        }
    }

    // all particles aimed at mode 0: product of single-particle probabilities
    const OccupationVector all_in_first({3, 0, 0});
    double product = 1.0;
    for (int j = 0; j < n; ++j) product *= std::norm(m(j, 0));
    CHECK(std::abs(distinguishable_probability(m, all_in_first) - product) < 1e-12);
}

TEST_CASE("unitary networks conserve total probability") {
    std::mt19937_64 rng(46);
    for (int n = 2; n <= 4; ++n) {
        const ScatteringMatrix m(oracle::random_unitary(n, rng));
        REQUIRE(m.unitary());
        const DistinguishabilityMatrix s = random_s(n, rng);
        for (const auto& lambda : immanon::enumerate_partitions(n)) {
            double total = 0.0;
            for (const auto& occupation : immanon::all_occupations(n, n)) {
                total += arrangement_probability(lambda, m, s, occupation);
            }
            CHECK(std::abs(total - 1.0) < 1e-9);
        }
    }
}

TEST_CASE("bunching factor limits") {
    for (int n = 2; n <= 5; ++n) {
        const DistinguishabilityMatrix identity(ComplexMatrix::identity(n));
        const DistinguishabilityMatrix all_ones(ComplexMatrix::constant(n, 1.0));
        for (const auto& lambda : immanon::enumerate_partitions(n)) {
            CHECK(std::abs(bunching_factor(lambda, identity) - 1.0) < 1e-12);
            const double limit = bunching_factor(lambda, all_ones);
            if (lambda == Partition({n})) {
                CHECK(std::abs(limit - static_cast<double>(immanon::factorial(n))) < 1e-9);
            } else {
                CHECK(std::abs(limit) < 1e-9);
            }
        }
    }
}

TEST_CASE("bunching probability factorizes into classical times factor") {
    std::mt19937_64 rng(47);
    const int n = 3;
    const ScatteringMatrix m(oracle::random_unitary(n, rng));
    const DistinguishabilityMatrix s = random_s(n, rng);
    const OccupationVector bunch({3, 0, 0});
    const double direct = arrangement_probability(Partition({2, 1}), m, s, bunch);
    const double factored =
        distinguishable_probability(m, bunch) * bunching_factor(Partition({2, 1}), s);
    CHECK(std::abs(direct - factored) < 1e-12);
}

TEST_CASE("transition matrix endpoints and validation") {
    CHECK(immanon::transition_matrix(3, 0.0).matrix() == ComplexMatrix::identity(3));
    CHECK(immanon::transition_matrix(3, 1.0).matrix() == ComplexMatrix::constant(3, 1.0));
    CHECK_THROWS_AS(immanon::transition_matrix(3, -0.1), std::out_of_range);
    CHECK_THROWS_AS(immanon::transition_matrix(3, 1.1), std::out_of_range);

    // closed forms for three particles
    for (double x : {0.0, 0.1, 0.33, 0.5, 0.77, 1.0}) {
        const auto s = immanon::transition_matrix(3, x);
        CHECK(std::abs(bunching_factor(Partition({3}), s) -
                       (1.0 + 3.0 * x * x + 2.0 * x * x * x)) < 1e-12);
        CHECK(std::abs(bunching_factor(Partition({2, 1}), s) - (1.0 - x * x * x)) < 1e-12);
        CHECK(std::abs(bunching_factor(Partition({1, 1, 1}), s) -
                       (1.0 - x) * (1.0 - x) * (1.0 + 2.0 * x)) < 1e-12);
    }
}

TEST_CASE("transition sweep") {
    std::vector<double> grid;
    for (int k = 0; k <= 100; ++k) grid.push_back(k / 100.0);

    const auto table = immanon::transition_sweep(4, grid);
    REQUIRE(table.partitions.size() == 5);
    REQUIRE(table.xs.size() == 101);

    for (std::size_t r = 0; r < table.partitions.size(); ++r) {
        CHECK(std::abs(table.factors[r][0] - 1.0) < 1e-9);
        const double end = table.factors[r][100];
        if (table.partitions[r] == Partition({4})) {
            CHECK(std::abs(end - 24.0) < 1e-9);
        } else {
            CHECK(std::abs(end) < 1e-9);
        }
    }

    // boson curve non-decreasing, fermion curve non-increasing
    const std::size_t boson = 0, fermion = table.partitions.size() - 1;
    REQUIRE(table.partitions[boson] == Partition({4}));
    REQUIRE(table.partitions[fermion] == Partition({1, 1, 1, 1}));
    for (std::size_t c = 1; c < table.xs.size(); ++c) {
        CHECK(table.factors[boson][c] >= table.factors[boson][c - 1] - 1e-12);
        CHECK(table.factors[fermion][c] <= table.factors[fermion][c - 1] + 1e-12);
    }

    // pointwise lower bound by the determinant
    for (std::size_t r = 0; r < table.partitions.size(); ++r) {
        for (std::size_t c = 0; c < table.xs.size(); ++c) {
            const double det =
                immanon::determinant(immanon::transition_matrix(4, table.xs[c]).matrix()).real();
            CHECK(det <= table.factors[r][c] + 1e-9);
        }
    }

    // a worker pool must not change the layout or the values
    const auto parallel = immanon::transition_sweep(4, grid, 4);
    for (std::size_t r = 0; r < table.partitions.size(); ++r) {
        for (std::size_t c = 0; c < table.xs.size(); ++c) {
            CHECK(parallel.factors[r][c] == table.factors[r][c]);
        }
    }

    CHECK(table.to_csv().rfind("lambda,x,bunching_factor\n4,0,1\n", 0) == 0);
}

TEST_CASE("internal state realization matches the Gram matrix") {
    std::mt19937_64 rng(48);
    for (int n = 2; n <= 5; ++n) {
        const DistinguishabilityMatrix s = random_s(n, rng);
        const auto states = immanon::internal_states_from(s);
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                Complex ip = 0.0;
                for (int c = 0; c < n; ++c) ip += std::conj(states[j][c]) * states[k][c];
                CHECK(std::abs(ip - s(j, k)) < 1e-10);
            }
        }
    }
    // singular endpoint goes through the eigen-decomposition square root
    const auto singular = immanon::internal_states_from(immanon::transition_matrix(3, 1.0));
    for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) {
            Complex ip = 0.0;
            for (int c = 0; c < 3; ++c) ip += std::conj(singular[j][c]) * singular[k][c];
            CHECK(std::abs(ip - Complex(1.0)) < 1e-10);
        }
    }
}

TEST_CASE("distinguishability matrix validation names the failing check") {
    ComplexMatrix bad_diag = ComplexMatrix::identity(2);
    bad_diag(0, 0) = 0.5;
    CHECK_THROWS_WITH(DistinguishabilityMatrix(bad_diag),
                      Catch::Matchers::ContainsSubstring("diagonal"));

    ComplexMatrix non_hermitian = ComplexMatrix::identity(2);
    non_hermitian(0, 1) = 0.5;
    non_hermitian(1, 0) = 0.25;
    CHECK_THROWS_WITH(DistinguishabilityMatrix(non_hermitian),
                      Catch::Matchers::ContainsSubstring("hermitian"));

    ComplexMatrix indefinite = ComplexMatrix::identity(2);
    indefinite(0, 1) = 2.0;
    indefinite(1, 0) = 2.0;
    CHECK_THROWS_WITH(DistinguishabilityMatrix(indefinite),
                      Catch::Matchers::ContainsSubstring("positive semi-definite"));
}

TEST_CASE("column expansion layout and guards") {
    ComplexMatrix m(3);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) m(i, j) = Complex(i, j);
    }
    const ComplexMatrix e = immanon::expand_columns(m, OccupationVector({2, 0, 1}));
    for (int i = 0; i < 3; ++i) {
        CHECK(e(i, 0) == m(i, 0));
        CHECK(e(i, 1) == m(i, 0));
        CHECK(e(i, 2) == m(i, 2));
    }
    CHECK_THROWS_AS(immanon::expand_columns(m, OccupationVector({2, 1})), std::invalid_argument);
    CHECK_THROWS_AS(immanon::expand_columns(m, OccupationVector({2, 1, 1})),
                    std::invalid_argument);

    std::mt19937_64 rng(49);
    const ScatteringMatrix sm(oracle::random_matrix(3, rng));
    CHECK_FALSE(sm.unitary());
}
