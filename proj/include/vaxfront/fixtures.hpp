#pragma once

#include "vaxfront/model.hpp"

#include <random>
#include <string>
#include <vector>

namespace vaxfront::fixtures {

/// Non-symmetrizable 3x3 matrix whose R_e is neither convex nor concave
/// although its spectrum is positive.
Matrix convexity_counterexample();
/// Same phenomenon with a single positive eigenvalue.
Matrix concavity_counterexample();
/// Symmetric positive definite 3x3 matrix.
Matrix positive_definite_example();

/// Adjacency of the undirected cycle on n groups, equal group sizes.
MetapopModel cycle(int n = 12);
/// Vaccinates every fourth group of the 12-cycle (groups 3, 7, 11).
Strategy one_in_four();
/// Two isolated groups of equal size with self-transmission 3 and 1.
MetapopModel two_block();

struct NamedModel {
    std::string name;
    MetapopModel model;
};

/// Bundled models, addressable by name from the command line.
std::vector<NamedModel> bundled();
MetapopModel bundled_model(const std::string& name);

} // namespace vaxfront::fixtures

namespace vaxfront::generators {

using Rng = std::mt19937_64;

/// Positive weights summing to one.
Vector random_weights(Rng& rng, int n);

/// Entries uniform in [0, scale) kept with probability `density`.
Matrix random_nonnegative(Rng& rng, int n, double density, double scale = 1.0);

/// diag(a) * B^T B * diag(b) with B >= 0: symmetrizable with n(M) = 0.
Matrix convex_symmetrizable(Rng& rng, int n);

/// diag(a) * (v v^T - P) * diag(b) with P positive semidefinite,
/// orthogonal to v and small enough to keep every entry positive:
/// symmetrizable with p(M) = 1.
Matrix single_positive_symmetrizable(Rng& rng, int n);

/// K_ij = f_i g_j mu_j.
struct RankOne {
    MetapopModel model;
    Vector f;
    Vector g;
};
RankOne rank_one(Rng& rng, int n);

/// Block upper-triangular matrix: no transmission from a later block into
/// an earlier one. Diagonal blocks are dense positive, or nonzero convex
/// symmetrizable when `convex_blocks` is set.
struct BlockTriangular {
    Matrix k;
    std::vector<IndexSet> blocks;
};
BlockTriangular block_triangular(Rng& rng, const std::vector<int>& sizes, bool convex_blocks,
                                 double coupling_density = 0.5);

/// Symmetric matrix with standard normal entries.
Matrix random_symmetric(Rng& rng, int n);

} // namespace vaxfront::generators
