#pragma once

#include "vaxfront/model.hpp"

#include <random>

namespace testing {

using vaxfront::Matrix;
using vaxfront::Vector;

inline Matrix mat(std::initializer_list<std::initializer_list<double>> rows)
{
    Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
    Eigen::Index i = 0;
    for (const auto& r : rows) {
        Eigen::Index j = 0;
        for (double v : r) {
            m(i, j++) = v;
        }
        ++i;
    }
    return m;
}

inline Vector vec(std::initializer_list<double> values)
{
    Vector v(static_cast<Eigen::Index>(values.size()));
    Eigen::Index i = 0;
    for (double x : values) {
        v(i++) = x;
    }
    return v;
}

inline Vector random_unit_box(std::mt19937_64& rng, int n)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Vector v(n);
    for (int i = 0; i < n; ++i) {
        v(i) = u(rng);
    }
    return v;
}

// Eigen's dense eigensolver, independent of the library's QR.
inline double reference_radius(const Matrix& a)
{
    return Eigen::EigenSolver<Matrix>(a, false).eigenvalues().cwiseAbs().maxCoeff();
}

} // namespace testing
