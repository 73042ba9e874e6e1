#include "support.hpp"

#include "vaxfront/fixtures.hpp"
#include "vaxfront/spectral.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace vaxfront;
using testing::mat;
using testing::random_unit_box;
using testing::reference_radius;
using testing::vec;

namespace {

std::vector<double> sorted_real_parts(const Spectrum& s)
{
    std::vector<double> out;
    for (const auto& l : s.eigenvalues) {
        out.push_back(l.real());
    }
    std::sort(out.rbegin(), out.rend());
    return out;
}

} // namespace

TEST_SUITE("spectral")
{
    TEST_CASE("spectral radius examples")
    {
        CHECK(spectral_radius(fixtures::cycle(12).matrix()) == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(spectral_radius(fixtures::convexity_counterexample()) == doctest::Approx(24.8).epsilon(0.05 / 24.8));
        CHECK(spectral_radius(mat({{0, 1, 1}, {0, 0, 1}, {0, 0, 0}})) == 0.0);
        CHECK(spectral_radius(mat({{1, 2}, {3, 1}})) == doctest::Approx(1.0 + std::sqrt(6.0)));
    }

    TEST_CASE("full spectrum examples")
    {
        const auto conv = sorted_real_parts(full_spectrum(fixtures::convexity_counterexample()));
        CHECK(conv[0] == doctest::Approx(24.8).epsilon(0.05 / 24.8));
        CHECK(std::abs(conv[1] - 2.9) <= 0.05);
        CHECK(std::abs(conv[2] - 1.3) <= 0.05);
        const auto conc = sorted_real_parts(full_spectrum(fixtures::concavity_counterexample()));
        CHECK(std::abs(conc[0] - 26.3) <= 0.05);
        CHECK(std::abs(conc[1] + 1.4) <= 0.05);
        CHECK(std::abs(conc[2] + 3.9) <= 0.05);

        const Spectrum id = full_spectrum(Matrix::Identity(4, 4));
        REQUIRE(id.clusters.size() == 1);
        CHECK(id.multiplicity({1.0, 0.0}) == 4);
    }

    TEST_CASE("effective reproduction number examples")
    {
        const MetapopModel c12 = fixtures::cycle(12);
        CHECK(effective_re(c12, Strategy::ones(12)) == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(effective_re(c12, fixtures::one_in_four()) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
        CHECK(effective_re(c12, Strategy::zeros(12)) == 0.0);
        CHECK(basic_reproduction_number(c12) == doctest::Approx(2.0));
    }

    TEST_CASE("dominant pair examples")
    {
        const EigenPair scalar = dominant_pair(mat({{3.0}}));
        CHECK(scalar.value == doctest::Approx(3.0));
        CHECK(scalar.right(0) == doctest::Approx(1.0));
        CHECK(scalar.left(0) == doctest::Approx(1.0));

        const EigenPair cyc = dominant_pair(fixtures::cycle(12), Strategy::ones(12));
        CHECK(cyc.value == doctest::Approx(2.0));
        CHECK(cyc.right.isApproxToConstant(1.0 / 12.0, 1e-9));

        const EigenPair two = dominant_pair(mat({{1, 2}, {3, 1}}));
        CHECK(two.value == doctest::Approx(1.0 + std::sqrt(6.0)));
        CHECK(two.right(0) / two.right(1) == doctest::Approx(std::sqrt(2.0 / 3.0)));
        CHECK(two.left.dot(two.right) == doctest::Approx(1.0));
    }

    TEST_CASE("gradient examples")
    {
        CHECK(re_gradient(mat({{3.0}}), vec({0.7}))(0) == doctest::Approx(3.0));
        const Vector g = re_gradient(fixtures::cycle(12), Strategy::ones(12));
        CHECK(g.isApproxToConstant(2.0 / 12.0, 1e-9));

        std::mt19937_64 rng(3);
        for (int trial = 0; trial < 20; ++trial) {
            const auto r1 = generators::rank_one(rng, 2 + trial % 6);
            const int n = r1.model.size();
            const Vector eta = random_unit_box(rng, n).array() * 0.9 + 0.1;
            const Vector expected = r1.f.cwiseProduct(r1.g).cwiseProduct(r1.model.weights());
            CHECK((re_gradient(r1.model, Strategy(eta)) - expected).cwiseAbs().maxCoeff() <= 1e-9);
        }
    }

    TEST_CASE("inertia examples")
    {
        CHECK(inertia(fixtures::positive_definite_example()) == std::pair{3, 0});
        CHECK(inertia(fixtures::concavity_counterexample()) == std::pair{1, 2});
        CHECK(inertia(Matrix::Zero(3, 3)) == std::pair{0, 0});
    }

    TEST_CASE("radius agrees with a dense eigensolver")
    {
        std::mt19937_64 rng(101);
        for (int trial = 0; trial < 200; ++trial) {
            const int n = 1 + trial % 12;
            const Matrix a = generators::random_nonnegative(rng, n, 0.1 + 0.1 * (trial % 9), 5.0);
            const double expected = reference_radius(a);
            CHECK(spectral_radius(a) == doctest::Approx(expected).epsilon(1e-8).scale(1.0));
        }
    }

    TEST_CASE("homogeneity and monotonicity")
    {
        std::mt19937_64 rng(202);
        for (int trial = 0; trial < 200; ++trial) {
            const int n = 1 + trial % 8;
            const MetapopModel m(generators::random_nonnegative(rng, n, 0.6, 4.0), generators::random_weights(rng, n));
            const double r0 = basic_reproduction_number(m);
            const Vector eta = random_unit_box(rng, n);
            const double lambda = random_unit_box(rng, 1)(0);
            CHECK(std::abs(effective_re(m, Strategy(lambda * eta)) - lambda * effective_re(m, Strategy(eta))) <=
                  1e-10 * std::max(1.0, r0));
            const Vector upper = eta.cwiseMax(random_unit_box(rng, n));
            CHECK(effective_re(m, Strategy(eta)) <= effective_re(m, Strategy(upper)) + 1e-10);
        }
    }

    TEST_CASE("commutation, transpose and domination")
    {
        std::mt19937_64 rng(303);
        for (int trial = 0; trial < 200; ++trial) {
            const int n = 1 + trial % 8;
            const Matrix a = generators::random_nonnegative(rng, n, 0.6, 3.0);
            const Matrix b = generators::random_nonnegative(rng, n, 0.6, 3.0);
            const double ab = spectral_radius(a * b);
            CHECK(std::abs(ab - spectral_radius(b * a)) <= 1e-10 * std::max(1.0, ab));

            const Vector eta = random_unit_box(rng, n);
            const double re = spectral_radius(a * eta.asDiagonal());
            CHECK(std::abs(spectral_radius(Matrix(eta.asDiagonal()) * a) - re) <= 1e-10 * std::max(1.0, re));
            CHECK(std::abs(spectral_radius(a.transpose() * eta.asDiagonal()) - re) <= 1e-10 * std::max(1.0, re));

            const Vector h = random_unit_box(rng, n).array() + 0.2;
            const Matrix similar = h.asDiagonal() * a * h.cwiseInverse().asDiagonal();
            CHECK(std::abs(spectral_radius(similar * eta.asDiagonal()) - re) <= 1e-9 * std::max(1.0, re));

            const Matrix smaller = a.cwiseProduct(Matrix(random_unit_box(rng, n * n).reshaped(n, n)));
            CHECK(spectral_radius(a) >= spectral_radius(smaller) - 1e-12);
        }
    }

    TEST_CASE("gradient matches central differences")
    {
        std::mt19937_64 rng(404);
        int checked = 0;
        while (checked < 100) {
            const int n = 2 + checked % 7;
            const Matrix k = generators::random_nonnegative(rng, n, 0.8, 2.0);
            const Vector eta = random_unit_box(rng, n).array() * 0.8 + 0.1;
            const Spectrum s = full_spectrum(k * eta.asDiagonal());
            if (s.radius <= 1e-6 || s.multiplicity({s.radius, 0.0}) != 1) {
                continue;
            }
            const Vector g = re_gradient(k, eta);
            constexpr double h = 1e-6;
            for (int j = 0; j < n; ++j) {
                Vector up = eta;
                Vector down = eta;
                up(j) += h;
                down(j) -= h;
                const double fd = (effective_re(k, up) - effective_re(k, down)) / (2 * h);
                CHECK(std::abs(g(j) - fd) <= 1e-5);
            }
            ++checked;
        }
    }
}
