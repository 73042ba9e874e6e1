#include "vaxfront/fixtures.hpp"

#include "vaxfront/errors.hpp"
#include "vaxfront/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace vaxfront::fixtures {

Matrix convexity_counterexample()
{
    Matrix k(3, 3);
    k << 16, 12, 11, 1, 12, 12, 8, 1, 1;
    return k;
}

Matrix concavity_counterexample()
{
    Matrix k(3, 3);
    k << 9, 13, 14, 18, 6, 5, 1, 6, 6;
    return k;
}

Matrix positive_definite_example()
{
    Matrix k(3, 3);
    k << 3, 2, 0, 2, 2, 1, 0, 1, 4;
    return k;
}

MetapopModel cycle(int n)
{
    if (n < 3) {
        throw ValidationError("a cycle needs at least 3 groups");
    }
    Matrix k = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        k(i, (i + 1) % n) = 1.0;
        k((i + 1) % n, i) = 1.0;
    }
    return MetapopModel::with_uniform_weights(std::move(k));
}

Strategy one_in_four() { return Strategy(Vector::Ones(12) - Strategy::indicator(12, {3, 7, 11}).values()); }

MetapopModel two_block()
{
    Matrix k(2, 2);
    k << 3, 0, 0, 1;
    return MetapopModel::with_uniform_weights(std::move(k));
}

std::vector<NamedModel> bundled()
{
    return {
        {"cycle12", cycle(12)},
        {"convexity-counterexample", MetapopModel::with_uniform_weights(convexity_counterexample())},
        {"concavity-counterexample", MetapopModel::with_uniform_weights(concavity_counterexample())},
        {"positive-definite", MetapopModel::with_uniform_weights(positive_definite_example())},
        {"two-block", two_block()},
    };
}

MetapopModel bundled_model(const std::string& name)
{
    for (auto& m : bundled()) {
        if (m.name == name) {
            return m.model;
        }
    }
    throw ValidationError("unknown bundled model '" + name + "'");
}

} // namespace vaxfront::fixtures

namespace vaxfront::generators {

namespace {

double normal(Rng& rng)
{
    // Box-Muller on the portable uniform source
    const double u1 = 1.0 - uniform01(rng);
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Vector uniform_vector(Rng& rng, int n, double lo, double hi)
{
    Vector v(n);
    for (int i = 0; i < n; ++i) {
        v(i) = uniform(rng, lo, hi);
    }
    return v;
}

} // namespace

Vector random_weights(Rng& rng, int n)
{
    Vector w = uniform_vector(rng, n, 0.2, 1.0);
    return w / w.sum();
}

Matrix random_nonnegative(Rng& rng, int n, double density, double scale)
{
    Matrix k = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (uniform01(rng) < density) {
                k(i, j) = scale * uniform01(rng);
            }
        }
    }
    return k;
}

Matrix convex_symmetrizable(Rng& rng, int n)
{
    const Matrix b = random_nonnegative(rng, n, 0.8);
    const Matrix s = b.transpose() * b;
    const Vector left = uniform_vector(rng, n, 0.5, 2.0);
    const Vector right = uniform_vector(rng, n, 0.5, 2.0);
    return left.asDiagonal() * s * right.asDiagonal();
}

Matrix single_positive_symmetrizable(Rng& rng, int n)
{
    const Vector v = uniform_vector(rng, n, 1.0, 2.0);
    const int terms = std::max(0, n - 1);
    Matrix u(n, terms);
    for (int t = 0; t < terms; ++t) {
        Vector col(n);
        for (int i = 0; i < n; ++i) {
            col(i) = normal(rng);
        }
        col -= (col.dot(v) / v.squaredNorm()) * v;
        u.col(t) = col;
    }
    // largest common weight keeping v v^T - eps U U^T entrywise >= 10% of v v^T
    const Matrix abs_uu = u.cwiseAbs() * u.cwiseAbs().transpose();
    double eps = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (abs_uu(i, j) > 0.0) {
                eps = std::min(eps, 0.9 * v(i) * v(j) / abs_uu(i, j));
            }
        }
    }
    if (!std::isfinite(eps)) {
        eps = 0.0;
    }
    Matrix s = v * v.transpose() - eps * (u * u.transpose());
    s = 0.5 * (s + s.transpose()).eval();
    const Vector left = uniform_vector(rng, n, 0.5, 2.0);
    const Vector right = uniform_vector(rng, n, 0.5, 2.0);
    return left.asDiagonal() * s * right.asDiagonal();
}

RankOne rank_one(Rng& rng, int n)
{
    const Vector f = uniform_vector(rng, n, 0.1, 2.0);
    const Vector g = uniform_vector(rng, n, 0.1, 2.0);
    const Vector mu = random_weights(rng, n);
    Matrix k = f * g.cwiseProduct(mu).transpose();
    return {MetapopModel(std::move(k), mu), f, g};
}

BlockTriangular block_triangular(Rng& rng, const std::vector<int>& sizes, bool convex_blocks,
                                 double coupling_density)
{
    BlockTriangular out;
    int n = 0;
    for (int s : sizes) {
        IndexSet block;
        for (int i = 0; i < s; ++i) {
            block.push_back(n + i);
        }
        out.blocks.push_back(std::move(block));
        n += s;
    }
    out.k = Matrix::Zero(n, n);
    for (std::size_t r = 0; r < sizes.size(); ++r) {
        const int m = sizes[r];
        const int off = out.blocks[r].front();
        Matrix diag_block;
        if (convex_blocks) {
            // a zero block would carry no atom
            do {
                diag_block = convex_symmetrizable(rng, m);
            } while (diag_block.isZero(0.0));
        } else {
            diag_block = random_nonnegative(rng, m, 1.0, 1.0).array() + 0.05;
        }
        // spread the block radii apart
        diag_block *= uniform(rng, 0.5, 3.0);
        out.k.block(off, off, m, m) = diag_block;
        for (std::size_t c = r + 1; c < sizes.size(); ++c) {
            const int coff = out.blocks[c].front();
            out.k.block(off, coff, m, sizes[c]) = random_nonnegative(rng, std::max(m, sizes[c]), coupling_density)
                                                      .topLeftCorner(m, sizes[c]);
        }
    }
    return out;
}

Matrix random_symmetric(Rng& rng, int n)
{
    Matrix t(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            t(i, j) = t(j, i) = normal(rng);
        }
    }
    return t;
}

} // namespace vaxfront::generators
