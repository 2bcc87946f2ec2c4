#include <catch2/catch_amalgamated.hpp>

#include "immanon/inequalities.hpp"
#include "immanon/io.hpp"
#include "test_support.hpp"

using immanon::Complex;
using immanon::ComplexMatrix;
using immanon::Json;

TEST_CASE("matrix json round-trip") {
    std::mt19937_64 rng(61);
    for (int n = 1; n <= 5; ++n) {
        const ComplexMatrix m = oracle::random_matrix(n, rng);
        const ComplexMatrix back = immanon::matrix_from_json(immanon::matrix_to_json(m));
        CHECK(back == m);  // nlohmann serializes doubles losslessly
    }
}

TEST_CASE("matrix json accepts a real matrix without the im plane") {
    const auto j = Json::parse(R"({"n":2,"re":[[1,2],[3,4]]})");
    const ComplexMatrix m = immanon::matrix_from_json(j);
    CHECK(m(0, 1) == Complex(2.0));
    CHECK(m(1, 0).imag() == 0.0);
}

TEST_CASE("matrix json rejects malformed input") {
    CHECK_THROWS_AS(immanon::matrix_from_json(Json::parse(R"({"re":[[1]]})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(immanon::matrix_from_json(Json::parse(R"({"n":0,"re":[]})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(immanon::matrix_from_json(Json::parse(R"({"n":2,"re":[[1,2]]})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(immanon::matrix_from_json(Json::parse(R"({"n":1,"re":[["x"]]})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(immanon::matrix_from_json(Json::parse(R"({"n":2,"re":[[1,2],[3,4]],"im":[[0,0]]})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(immanon::read_matrix_file("/nonexistent/matrix.json"), std::runtime_error);
}

TEST_CASE("state dump lists significant amplitudes with their digits") {
    const immanon::SingleParticleSpace space(2, 1);
    const std::vector<immanon::ComplexVector> modes = {{1.0, 0.0}, {0.0, 1.0}};
    const auto state =
        immanon::immanon_state(immanon::Partition({2}), modes, space);  // (|01>+|10>)/sqrt(2)
    const Json dump = immanon::state_dump(state);
    REQUIRE(dump.size() == 2);
    CHECK(dump[0]["digits"] == Json::array({1, 0}));
    CHECK(dump[1]["digits"] == Json::array({0, 1}));
    CHECK(std::abs(dump[0]["re"].get<double>() - 1.0 / std::sqrt(2.0)) < 1e-14);
    CHECK(dump[0]["im"].get<double>() == 0.0);

    // threshold filters everything for the zero state
    CHECK(immanon::state_dump(immanon::DenseState(space, 2)).empty());
}

TEST_CASE("violation dump format re-verifies under the naive oracle") {
    // the campaign writes {matrix json + seed}; anyone holding the dump must
    // be able to reproduce the reported normalized immanants independently
    const std::uint64_t seed = 4242;
    const auto s = immanon::random_psd_unit_diagonal(4, seed);
    Json dump = immanon::matrix_to_json(s.matrix());
    dump["seed"] = seed;

    const ComplexMatrix parsed = immanon::matrix_from_json(dump);
    CHECK(parsed == s.matrix());
    CHECK(dump["seed"].get<std::uint64_t>() == seed);

    // regenerating from the seed gives the same matrix
    CHECK(immanon::random_psd_unit_diagonal(4, dump["seed"].get<std::uint64_t>()).matrix() ==
          parsed);

    const auto report = immanon::check_schur_dominance(s, seed);
    const double det = oracle::naive_determinant(parsed).real();
    const double perm = oracle::naive_permanent(parsed).real();
    CHECK(std::abs(det - report.det_value) < 1e-12);
    CHECK(std::abs(perm - report.perm_value) < 1e-12);
    for (std::size_t i = 0; i < report.partitions.size(); ++i) {
        const auto& lambda = report.partitions[i];
        const double naive =
            oracle::naive_immanant(lambda.parts(), parsed).real() /
            static_cast<double>(immanon::hook_dimension(lambda));
        CHECK(std::abs(naive - report.normalized_immanants[i]) < 1e-10);
        CHECK(naive >= det - 1e-9);
        CHECK(naive <= perm + 1e-9);
    }
}
