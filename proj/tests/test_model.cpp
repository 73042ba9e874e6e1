#include "support.hpp"

#include "vaxfront/errors.hpp"
#include "vaxfront/fixtures.hpp"
#include "vaxfront/spectral.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>

using namespace vaxfront;
using testing::mat;
using testing::vec;

TEST_SUITE("model")
{
    TEST_CASE("json ingestion")
    {
        const MetapopModel scalar = parse_model(R"({"n": 1, "matrix": [[0]], "weights": [1]})");
        CHECK(scalar.size() == 1);
        CHECK(scalar.matrix()(0, 0) == 0.0);

        CHECK_THROWS_AS(parse_model(R"({"n": 1, "matrix": [[-1]], "weights": [1]})"), ValidationError);
        CHECK_THROWS_AS(parse_model(R"({"n": 1, "matrix": [[1, 2]], "weights": [1]})"), ValidationError);
        CHECK_THROWS_AS(parse_model(R"({"n": 1, "matrix": [[1]], "weights": [0.5]})"), ValidationError);
        CHECK_THROWS_AS(parse_model(R"({"n": 1, "matrix": [[1]], "weights": [1])"), ParseError);
        CHECK_THROWS_AS(parse_model(R"({"n": 2, "matrix": [[1, 0], [0, 1]], "weights": [1]})"), DimensionMismatch);

        // weight sums within 1e-9 are renormalized
        const MetapopModel near = parse_model(R"({"n": 2, "matrix": [[1, 0], [0, 1]], "weights": [0.5, 0.5000000001]})");
        CHECK(near.weights().sum() == doctest::Approx(1.0).epsilon(1e-15));
        CHECK_THROWS_AS(parse_model(R"({"matrix": [[1]], "weights": [1]})"), ValidationError);
    }

    TEST_CASE("round trip is bit exact")
    {
        std::mt19937_64 rng(7);
        const auto path = std::filesystem::temp_directory_path() / "vaxfront_roundtrip.json";
        for (int trial = 0; trial < 20; ++trial) {
            const int n = 1 + trial % 6;
            Matrix k = generators::random_nonnegative(rng, n, 0.7, 13.0);
            const MetapopModel m(k, generators::random_weights(rng, n));
            save_model(m, path.string());
            const MetapopModel back = load_model(path.string());
            CHECK(back.matrix() == m.matrix());
            CHECK(back.weights() == m.weights());
            CHECK(parse_model(model_to_json(m)).matrix() == m.matrix());
        }
        std::filesystem::remove(path);
    }

    TEST_CASE("cycle fixture")
    {
        const MetapopModel c = fixtures::cycle(12);
        CHECK(c.size() == 12);
        CHECK(c.weights().isApproxToConstant(1.0 / 12.0));
        CHECK(c.kernel(0, 1) == doctest::Approx(12.0));
    }

    TEST_CASE("cost")
    {
        const MetapopModel c12 = fixtures::cycle(12);
        CHECK(cost(CostFunction::uniform(), c12, fixtures::one_in_four()) == doctest::Approx(0.25));
        CHECK(cost(CostFunction::uniform(), c12, Strategy::ones(12)) == 0.0);

        const MetapopModel two(Matrix::Identity(2, 2), vec({0.3, 0.7}));
        CHECK(cost(CostFunction::uniform(), two, Strategy(vec({0.0, 1.0}))) == doctest::Approx(0.3));
        CHECK(CostFunction::uniform().max_cost(two) == doctest::Approx(1.0));

        const CostFunction affine = CostFunction::affine(vec({2.0, 5.0}));
        CHECK(affine.max_cost(two) == doctest::Approx(0.6 + 3.5));
        CHECK_THROWS_AS(CostFunction::affine(vec({1.0, 0.0})), ValidationError);
    }

    TEST_CASE("cost is affine and strictly decreasing")
    {
        std::mt19937_64 rng(11);
        for (int trial = 0; trial < 50; ++trial) {
            const int n = 2 + trial % 5;
            const MetapopModel m(Matrix::Ones(n, n), generators::random_weights(rng, n));
            const CostFunction c = CostFunction::affine(testing::random_unit_box(rng, n).array() + 0.1);
            const Vector a = testing::random_unit_box(rng, n);
            const Vector b = testing::random_unit_box(rng, n);
            const double t = 0.3;
            const double mixed = cost(c, m, Strategy(t * a + (1 - t) * b));
            CHECK(mixed == doctest::Approx(t * cost(c, m, Strategy(a)) + (1 - t) * cost(c, m, Strategy(b))));
            Vector raised = a;
            raised(trial % n) = std::min(1.0, a(trial % n) + 0.1);
            if (raised(trial % n) > a(trial % n)) {
                CHECK(cost(c, m, Strategy(raised)) < cost(c, m, Strategy(a)));
            }
        }
    }

    TEST_CASE("strategy validation")
    {
        CHECK_THROWS_AS(Strategy(vec({0.5, 1.5})), ValidationError);
        CHECK_THROWS_AS(Strategy(vec({-0.1})), ValidationError);
        CHECK(Strategy::indicator(4, {1, 3}).support() == IndexSet{1, 3});
    }

    TEST_CASE("grid discretization")
    {
        const MetapopModel constant = grid_to_model(sample_grid_kernel(4, [](double, double) { return 1.0; }));
        CHECK(constant.matrix().isApproxToConstant(0.25));

        GridKernelSpec scalar{1, mat({{5.0}})};
        CHECK(basic_reproduction_number(grid_to_model(scalar)) == doctest::Approx(5.0));

        // rank-one 6xy: R_0 = integral of 6x^2 = 2
        double previous = 1.0;
        for (int m : {25, 50, 100, 200}) {
            const double r0 = basic_reproduction_number(
                grid_to_model(sample_grid_kernel(m, [](double x, double y) { return 6.0 * x * y; })));
            const double err = std::abs(r0 - 2.0);
            CHECK(err <= 10.0 / m);
            CHECK(err < previous);
            previous = err;
        }
    }

    TEST_CASE("double norm")
    {
        CHECK(double_norm(MetapopModel(mat({{5.0}}), vec({1.0})), 2.0) == doctest::Approx(5.0));
        // kernel 2 off the diagonal: sqrt(sum_i mu_i sum_j mu_j 4 * [i != j]) = sqrt(2)
        const MetapopModel swap(mat({{0, 1}, {1, 0}}), vec({0.5, 0.5}));
        CHECK(double_norm(swap, 2.0) == doctest::Approx(std::sqrt(2.0)));
        for (int m : {3, 10}) {
            const MetapopModel c = grid_to_model(sample_grid_kernel(m, [](double, double) { return 3.5; }));
            CHECK(double_norm(c, 2.0) == doctest::Approx(3.5));
            CHECK(double_norm(c, 3.0) == doctest::Approx(3.5));
        }
        CHECK_THROWS_AS(double_norm(swap, 1.0), ValidationError);
    }
}
