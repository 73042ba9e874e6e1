#include "support.hpp"

#include "vaxfront/digraph.hpp"
#include "vaxfront/errors.hpp"
#include "vaxfront/fixtures.hpp"
#include "vaxfront/spectral.hpp"
#include "vaxfront/structure.hpp"

#include <doctest.h>

#include <cmath>

using namespace vaxfront;
using testing::mat;
using testing::random_unit_box;

namespace {

MetapopModel uniform(const Matrix& k) { return MetapopModel::with_uniform_weights(k); }

} // namespace

TEST_SUITE("structure")
{
    TEST_CASE("support digraph")
    {
        const Digraph cyc = support_digraph(fixtures::cycle(12));
        CHECK(cyc.edge_count() == 24);
        CHECK(cyc.has_edge(0, 11));
        CHECK(cyc.has_edge(11, 0));
        CHECK(support_digraph(uniform(Matrix::Zero(3, 3))).edge_count() == 0);
        const Digraph one = support_digraph(uniform(mat({{0, 0}, {1, 0}})));
        CHECK(one.edge_count() == 1);
        CHECK(one.has_edge(0, 1));
        CHECK(support_digraph(uniform(mat({{0, 0.5}, {0.1, 0}})), 0.2).edge_count() == 1);
    }

    TEST_CASE("invariant sets")
    {
        const MetapopModel tri = uniform(mat({{1, 0}, {1, 2}}));
        CHECK_FALSE(is_invariant(tri, {0}));
        CHECK(is_invariant(tri, {1}));
        CHECK(is_invariant(tri, {}));
        CHECK(is_invariant(tri, {0, 1}));
        CHECK_FALSE(is_invariant(fixtures::cycle(12), {0, 1, 2}));
    }

    TEST_CASE("decomposition examples")
    {
        const FrobeniusDecomposition pos = frobenius_decompose(uniform(mat({{1, 2, 1}, {1, 1, 3}, {2, 1, 1}})));
        CHECK(pos.atoms == std::vector<IndexSet>{{0, 1, 2}});
        CHECK(pos.remainder.empty());

        const FrobeniusDecomposition tri = frobenius_decompose(uniform(mat({{1, 0}, {1, 2}})));
        CHECK(tri.atoms == std::vector<IndexSet>{{0}, {1}});
        CHECK(tri.order == std::vector<int>{1, 0});
        CHECK(tri.atom_radii[0] == doctest::Approx(1.0));
        CHECK(tri.atom_radii[1] == doctest::Approx(2.0));

        const FrobeniusDecomposition nil = frobenius_decompose(uniform(mat({{0, 1, 1}, {0, 0, 1}, {0, 0, 0}})));
        CHECK(nil.atoms.empty());
        CHECK(nil.remainder == IndexSet{0, 1, 2});
    }

    TEST_CASE("classification examples")
    {
        const Classification cyc = classify(fixtures::cycle(12));
        CHECK(cyc.irreducible);
        CHECK(cyc.monatomic);

        CHECK_FALSE(classify(uniform(Matrix::Identity(2, 2))).monatomic);

        const Classification feed = classify(uniform(mat({{1, 0}, {1, 0}})));
        CHECK(feed.monatomic);
        CHECK_FALSE(feed.quasi_irreducible);
        CHECK_FALSE(feed.irreducible);
        REQUIRE(feed.atom);
        CHECK(*feed.atom == IndexSet{0});
        CHECK(*feed.infected == IndexSet{1});

        // a lone zero group is not irreducible
        CHECK_FALSE(classify(uniform(mat({{0.0}}))).irreducible);
    }

    TEST_CASE("disconnecting strategies")
    {
        const MetapopModel c12 = fixtures::cycle(12);
        CHECK(is_disconnecting(c12, fixtures::one_in_four()));
        CHECK_FALSE(is_disconnecting(c12, Strategy::zeros(12)));
        CHECK_FALSE(is_disconnecting(c12, Strategy::ones(12)));
        const MetapopModel pos = uniform(mat({{1, 2, 1}, {1, 1, 3}, {2, 1, 1}}));
        std::mt19937_64 rng(5);
        for (int i = 0; i < 20; ++i) {
            CHECK_FALSE(is_disconnecting(pos, Strategy(random_unit_box(rng, 3))));
        }
    }

    TEST_CASE("cordon improvement examples")
    {
        const MetapopModel c12 = fixtures::cycle(12);
        const CordonImprovement cut = cordon_improvement(c12, fixtures::one_in_four(), CostFunction::uniform());
        CHECK(cut.certificate.re_before == doctest::Approx(std::sqrt(2.0)));
        CHECK(cut.certificate.re_after == doctest::Approx(std::sqrt(2.0)));
        CHECK(cut.certificate.cost_before == doctest::Approx(0.25));
        CHECK(cut.certificate.cost_after == doctest::Approx(0.5));
        CHECK(cut.certificate.dropped.size() == 3);

        const CordonImprovement two = cordon_improvement(fixtures::two_block(), Strategy::ones(2),
                                                         CostFunction::uniform());
        CHECK(two.strategy.values() == testing::vec({1.0, 0.0}));
        CHECK(two.certificate.re_after == doctest::Approx(3.0));

        CHECK_THROWS_AS(cordon_improvement(c12, Strategy::ones(12), CostFunction::uniform()), NotDisconnecting);
    }

    TEST_CASE("block laws on random reducible models")
    {
        std::mt19937_64 rng(606);
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<int> sizes;
            const int blocks = 2 + trial % 3;
            int n = 0;
            for (int b = 0; b < blocks && n < 10; ++b) {
                sizes.push_back(std::min(1 + static_cast<int>(rng() % 3), 10 - n));
                n += sizes.back();
            }
            const auto bt = generators::block_triangular(rng, sizes, trial % 2 == 0);
            const MetapopModel m(bt.k, generators::random_weights(rng, n));
            const double r0 = basic_reproduction_number(m);
            const Vector eta = random_unit_box(rng, n);

            // decomposition invariants: atoms partition with the remainder, order is upstream-first
            const FrobeniusDecomposition d = frobenius_decompose(m);
            std::vector<int> seen(n, 0);
            for (const auto& a : d.atoms) {
                for (int i : a) {
                    ++seen[i];
                }
            }
            for (int i : d.remainder) {
                ++seen[i];
            }
            CHECK(std::all_of(seen.begin(), seen.end(), [](int s) { return s == 1; }));
            for (std::size_t a = 0; a < d.order.size(); ++a) {
                for (std::size_t b = a + 1; b < d.order.size(); ++b) {
                    for (int i : d.atoms[d.order[b]]) {
                        for (int j : d.atoms[d.order[a]]) {
                            CHECK(m.matrix()(i, j) == 0.0);
                        }
                    }
                }
            }

            double block_max = 0.0;
            for (const auto& a : d.atoms) {
                Vector sub(static_cast<Eigen::Index>(a.size()));
                for (std::size_t i = 0; i < a.size(); ++i) {
                    sub(static_cast<Eigen::Index>(i)) = eta(a[i]);
                }
                block_max = std::max(block_max, effective_re(m.matrix()(a, a), sub));
            }
            CHECK(std::abs(effective_re(m, Strategy(eta)) - block_max) <= 1e-9 * std::max(1.0, r0));

            // disjoint union law on the first block and everything after it
            const IndexSet& first = bt.blocks.front();
            IndexSet rest;
            for (int i = first.back() + 1; i < n; ++i) {
                rest.push_back(i);
            }
            const double both = effective_re(m, Strategy::ones(n));
            const double separate = std::max(effective_re(m, Strategy::indicator(n, first)),
                                             effective_re(m, Strategy::indicator(n, rest)));
            CHECK(std::abs(both - separate) <= 1e-9 * std::max(1.0, r0));
        }
    }

    TEST_CASE("cordon certificates on random sparse models")
    {
        std::mt19937_64 rng(707);
        int tested = 0;
        for (int trial = 0; trial < 400 && tested < 50; ++trial) {
            const int n = 3 + trial % 6;
            Matrix k = generators::random_nonnegative(rng, n, 0.35, 2.0);
            k = (k + k.transpose()).eval();
            const MetapopModel m = uniform(k);
            const Strategy eta(random_unit_box(rng, n).array().round());
            if (!is_disconnecting(m, eta)) {
                continue;
            }
            ++tested;
            const double r0 = basic_reproduction_number(m);
            const CordonImprovement c = cordon_improvement(m, eta, CostFunction::uniform());
            CHECK(c.certificate.cost_after > c.certificate.cost_before);
            CHECK(std::abs(c.certificate.re_after - c.certificate.re_before) <= 1e-10 * std::max(1.0, r0));
        }
        CHECK(tested == 50);
    }
}
