#include "support.hpp"

#include "vaxfront/fixtures.hpp"
#include "vaxfront/independent.hpp"
#include "vaxfront/spectral.hpp"
#include "vaxfront/structure.hpp"

#include <doctest.h>

using namespace vaxfront;
using testing::mat;

namespace {

// exhaustive oracle: heaviest subset with K zero on A x A
double brute_force_alpha(const Matrix& k, const Vector& w)
{
    const int n = static_cast<int>(k.rows());
    double best = 0.0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        bool independent = true;
        double weight = 0.0;
        for (int i = 0; i < n && independent; ++i) {
            if (!(mask >> i & 1u)) {
                continue;
            }
            weight += w(i);
            for (int j = 0; j < n; ++j) {
                if ((mask >> j & 1u) && k(i, j) > 0.0) {
                    independent = false;
                    break;
                }
            }
        }
        if (independent) {
            best = std::max(best, weight);
        }
    }
    return best;
}

Matrix random_symmetric_support(std::mt19937_64& rng, int n, double density)
{
    Matrix k = generators::random_nonnegative(rng, n, density, 1.0);
    return (k + k.transpose()).eval();
}

} // namespace

TEST_SUITE("independent")
{
    TEST_CASE("independent set examples")
    {
        const IndependentSetResult cyc = max_independent_set(fixtures::cycle(12), CostFunction::uniform());
        CHECK(cyc.set.size() == 6);
        CHECK(cyc.alpha == doctest::Approx(0.5));

        Matrix tri = Matrix::Ones(3, 3) - Matrix::Identity(3, 3);
        CHECK(max_independent_set(MetapopModel::with_uniform_weights(tri), CostFunction::uniform()).alpha ==
              doctest::Approx(1.0 / 3.0));

        const IndependentSetResult zero =
            max_independent_set(MetapopModel::with_uniform_weights(Matrix::Zero(4, 4)), CostFunction::uniform());
        CHECK(zero.set == IndexSet{0, 1, 2, 3});
        CHECK(zero.alpha == doctest::Approx(1.0));
    }

    TEST_CASE("eradication examples")
    {
        const EradicationResult cyc = eradication_cost(fixtures::cycle(12), CostFunction::uniform());
        CHECK(cyc.cstar == doctest::Approx(0.5));
        CHECK(cyc.exact);
        CHECK(cyc.strategy.support().size() == 6);
        CHECK(effective_re(fixtures::cycle(12), cyc.strategy) == 0.0);

        const EradicationResult pos =
            eradication_cost(MetapopModel::with_uniform_weights(mat({{1, 2}, {3, 1}})), CostFunction::uniform());
        CHECK(pos.cstar == doctest::Approx(1.0));
        CHECK(pos.set.empty());
    }

    TEST_CASE("remainder groups are never vaccinated")
    {
        // group 2 is a sink with no self-infection: it belongs to the remainder
        const MetapopModel m = MetapopModel::with_uniform_weights(mat({{0, 1, 0}, {1, 0, 0}, {1, 1, 0}}));
        REQUIRE(frobenius_decompose(m).remainder == IndexSet{2});
        const EradicationResult e = eradication_cost(m, CostFunction::uniform());
        CHECK(e.strategy[2] == 1.0);
        CHECK(e.cstar == doctest::Approx(1.0 / 3.0));
        CHECK(effective_re(m, e.strategy) == 0.0);
    }

    TEST_CASE("self infection excludes a group")
    {
        const MetapopModel m = MetapopModel::with_uniform_weights(mat({{1, 0}, {0, 0}}));
        CHECK(max_weight_independent_set(m.matrix(), m.weights()) == IndexSet{1});
    }

    TEST_CASE("asymmetric support is flagged")
    {
        const MetapopModel m = MetapopModel::with_uniform_weights(mat({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}));
        CHECK_FALSE(eradication_cost(m, CostFunction::uniform()).exact);
    }

    TEST_CASE("branch and bound matches enumeration")
    {
        std::mt19937_64 rng(1234);
        for (int trial = 0; trial < 150; ++trial) {
            const int n = 1 + trial % 16;
            const Matrix k = random_symmetric_support(rng, n, 0.05 + 0.05 * (trial % 10));
            const Vector w = trial % 3 == 0 ? Vector(Vector::Ones(n))
                                            : Vector(testing::random_unit_box(rng, n).array() + 0.05);
            const IndexSet set = max_weight_independent_set(k, w);
            CHECK(set_weight(w, set) == brute_force_alpha(k, w));

            const MetapopModel m(k, generators::random_weights(rng, n));
            const EradicationResult e = eradication_cost(m, CostFunction::uniform());
            CHECK(effective_re(m, e.strategy) == 0.0);

            // only the support matters
            const Matrix support = (k.array() > 0.0).cast<double>();
            const MetapopModel binary(support, m.weights());
            CHECK(eradication_cost(binary, CostFunction::uniform()).set == e.set);
        }
    }
}
