#include "support.hpp"

#include "vaxfront/convexity.hpp"
#include "vaxfront/fixtures.hpp"
#include "vaxfront/spectral.hpp"
#include "vaxfront/structure.hpp"

#include <doctest.h>

#include <cmath>

using namespace vaxfront;
using testing::mat;
using testing::random_unit_box;
using testing::vec;

namespace {

double midpoint_gap(const MetapopModel& m, const Vector& a, const Vector& b)
{
    return effective_re(m, Strategy(0.5 * (a + b))) -
           0.5 * (effective_re(m, Strategy(a)) + effective_re(m, Strategy(b)));
}

bool spectra_match(const Spectrum& a, const Spectrum& b, double tol)
{
    if (a.eigenvalues.size() != b.eigenvalues.size()) {
        return false;
    }
    std::vector<bool> used(b.eigenvalues.size(), false);
    for (const auto& x : a.eigenvalues) {
        bool found = false;
        for (std::size_t j = 0; j < b.eigenvalues.size() && !found; ++j) {
            if (!used[j] && std::abs(x - b.eigenvalues[j]) <= tol) {
                used[j] = found = true;
            }
        }
        if (!found) {
            return false;
        }
    }
    return true;
}

} // namespace

TEST_SUITE("convexity")
{
    TEST_CASE("symmetrization examples")
    {
        const SymmetrizabilityResult pd = symmetrize(fixtures::positive_definite_example());
        CHECK(pd.symmetrizable);
        REQUIRE(pd.d);
        CHECK(pd.d->isApproxToConstant(1.0));

        const SymmetrizabilityResult two = symmetrize(mat({{0, 2}, {8, 0}}));
        REQUIRE(two.symmetrizable);
        CHECK(*two.d == vec({4.0, 1.0}));
        CHECK(two.symmetrized->isApprox(mat({{0, 4}, {4, 0}})));

        CHECK_FALSE(symmetrize(fixtures::convexity_counterexample()).symmetrizable);
    }

    TEST_CASE("verdict examples")
    {
        const ConvexityVerdict pd = classify_convexity(fixtures::positive_definite_example());
        CHECK(pd.verdict == Verdict::Convex);
        CHECK(pd.reason == VerdictReason::SymmetrizablePSD);

        std::mt19937_64 rng(9);
        const auto r1 = generators::rank_one(rng, 5);
        CHECK(classify_convexity(r1.model).verdict == Verdict::Linear);

        const ConvexityVerdict cc = classify_convexity(fixtures::convexity_counterexample());
        CHECK(cc.verdict == Verdict::Indeterminate);
        CHECK(cc.reason == VerdictReason::NotSymmetrizable);
    }

    TEST_CASE("probing the counterexamples finds both violations")
    {
        for (const Matrix& k : {fixtures::convexity_counterexample(), fixtures::concavity_counterexample()}) {
            const ConvexityVerdict v = probe_convexity(MetapopModel::with_uniform_weights(k), 10000, 1);
            CHECK(v.verdict == Verdict::Indeterminate);
            REQUIRE(v.convexity_violation);
            REQUIRE(v.concavity_violation);
            CHECK(v.convexity_violation->gap > 1e-4);
            CHECK(v.concavity_violation->gap < -1e-4);
        }
        const ConvexityVerdict scalar = probe_convexity(MetapopModel::with_uniform_weights(mat({{3.0}})), 1000, 1);
        CHECK_FALSE(scalar.convexity_violation);
        CHECK_FALSE(scalar.concavity_violation);
    }

    TEST_CASE("sylvester examples")
    {
        const SylvesterReport diag = sylvester_check(mat({{1, 0}, {0, -1}}), vec({2, 3}), vec({2, 3}));
        CHECK(diag.original == std::pair{1, 1});
        CHECK(diag.scaled == std::pair{1, 1});
        CHECK(diag.match);
        CHECK(sylvester_check(Matrix::Identity(3, 3), vec({1, 5, 2}), vec({0.3, 2, 7})).scaled == std::pair{3, 0});

        std::mt19937_64 rng(17);
        for (int seed = 0; seed < 100; ++seed) {
            const Matrix t = generators::random_symmetric(rng, 6);
            const Vector f = random_unit_box(rng, 6).array() + 0.1;
            const Vector g = random_unit_box(rng, 6).array() + 0.1;
            const SylvesterReport r = sylvester_check(t, f, g);
            CHECK(r.match);
            // oracle: inertia of diag(sqrt(fg)) T diag(sqrt(fg)), a congruence of T
            const Vector s = f.cwiseProduct(g).cwiseSqrt();
            const Vector ev = Eigen::SelfAdjointEigenSolver<Matrix>(s.asDiagonal() * t * s.asDiagonal()).eigenvalues();
            CHECK(r.scaled.first == (ev.array() > 0).count());
            CHECK(r.scaled.second == (ev.array() < 0).count());
        }
    }

    TEST_CASE("convex and concave certificates hold on random chords")
    {
        std::mt19937_64 rng(808);
        for (int trial = 0; trial < 200; ++trial) {
            const int n = 2 + trial % 7;
            const MetapopModel convex(generators::convex_symmetrizable(rng, n), generators::random_weights(rng, n));
            const MetapopModel concave(generators::single_positive_symmetrizable(rng, n),
                                       generators::random_weights(rng, n));
            // a rank-one Gram product is reported as Linear, which is also convex
            const Verdict xv = classify_convexity(convex).verdict;
            CHECK((xv == Verdict::Convex || xv == Verdict::Linear));
            const Verdict cv = classify_convexity(concave).verdict;
            CHECK((cv == Verdict::Concave || cv == Verdict::Linear));
            CHECK(classify(concave).monatomic);

            const double scale_convex = std::max(1.0, basic_reproduction_number(convex));
            const double scale_concave = std::max(1.0, basic_reproduction_number(concave));
            for (int pair = 0; pair < 20; ++pair) {
                const Vector a = random_unit_box(rng, n);
                const Vector b = random_unit_box(rng, n);
                CHECK(midpoint_gap(convex, a, b) <= 1e-9 * scale_convex);
                CHECK(midpoint_gap(concave, a, b) >= -1e-9 * scale_concave);
            }
        }
    }

    TEST_CASE("symmetrization preserves the spectrum")
    {
        std::mt19937_64 rng(909);
        for (int trial = 0; trial < 100; ++trial) {
            const int n = 2 + trial % 6;
            const Matrix k = trial % 2 ? generators::convex_symmetrizable(rng, n)
                                       : generators::single_positive_symmetrizable(rng, n);
            const SymmetrizabilityResult s = symmetrize(k);
            REQUIRE(s.symmetrizable);
            CHECK(s.symmetrized->isApprox(s.symmetrized->transpose()));
            const Spectrum a = full_spectrum(k);
            CHECK(spectra_match(a, full_spectrum(*s.symmetrized), 1e-8 * std::max(1.0, a.radius)));
        }
    }
}
