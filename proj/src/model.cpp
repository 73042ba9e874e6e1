#include "vaxfront/model.hpp"

#include "vaxfront/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace vaxfront {

namespace {

constexpr double kWeightSumTolerance = 1e-9;

void check_finite_nonnegative(const Matrix& m, const char* what)
{
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            const double v = m(i, j);
            if (!std::isfinite(v)) {
                throw ValidationError(std::string(what) + " has a non-finite entry at (" + std::to_string(i) +
                                      ", " + std::to_string(j) + ")");
            }
            if (v < 0.0) {
                throw ValidationError(std::string(what) + " has a negative entry at (" + std::to_string(i) + ", " +
                                      std::to_string(j) + ")");
            }
        }
    }
}

} // namespace

MetapopModel::MetapopModel(Matrix matrix, Vector weights, std::vector<std::string> labels)
    : matrix_(std::move(matrix))
    , weights_(std::move(weights))
    , labels_(std::move(labels))
{
    const auto n = weights_.size();
    if (n < 1) {
        throw ValidationError("model needs at least one group");
    }
    if (matrix_.rows() != n || matrix_.cols() != n) {
        throw DimensionMismatch("matrix is " + std::to_string(matrix_.rows()) + "x" +
                                std::to_string(matrix_.cols()) + " but there are " + std::to_string(n) +
                                " weights");
    }
    if (!labels_.empty() && static_cast<Eigen::Index>(labels_.size()) != n) {
        throw DimensionMismatch("expected " + std::to_string(n) + " labels, got " + std::to_string(labels_.size()));
    }
    check_finite_nonnegative(matrix_, "matrix");
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!std::isfinite(weights_(i)) || weights_(i) <= 0.0) {
            throw ValidationError("weight " + std::to_string(i) + " must be a positive finite number");
        }
    }
    const double total = weights_.sum();
    if (std::abs(total - 1.0) > kWeightSumTolerance) {
        throw ValidationError("weights sum to " + std::to_string(total) + ", expected 1");
    }
    // already normalized up to summation rounding: leave the bits alone so reloads are exact
    if (std::abs(total - 1.0) > 4.0 * static_cast<double>(n) * std::numeric_limits<double>::epsilon()) {
        weights_ /= total;
    }
}

MetapopModel MetapopModel::with_uniform_weights(Matrix matrix)
{
    const auto n = matrix.rows();
    return MetapopModel(std::move(matrix), Vector::Constant(n, 1.0 / static_cast<double>(n)));
}

MetapopModel MetapopModel::restricted(const IndexSet& groups) const
{
    const auto m = static_cast<Eigen::Index>(groups.size());
    Matrix sub(m, m);
    Vector w(m);
    std::vector<std::string> sub_labels;
    for (Eigen::Index a = 0; a < m; ++a) {
        w(a) = weights_(groups[a]);
        for (Eigen::Index b = 0; b < m; ++b) {
            sub(a, b) = matrix_(groups[a], groups[b]);
        }
        if (!labels_.empty()) {
            sub_labels.push_back(labels_[groups[a]]);
        }
    }
    w /= w.sum();
    return MetapopModel(std::move(sub), std::move(w), std::move(sub_labels));
}

Strategy::Strategy(Vector values)
    : values_(std::move(values))
{
    for (Eigen::Index i = 0; i < values_.size(); ++i) {
        const double v = values_(i);
        if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
            throw ValidationError("strategy entry " + std::to_string(i) + " = " + std::to_string(v) +
                                  " is outside [0, 1]");
        }
    }
}

Strategy Strategy::ones(int n) { return Strategy(Vector::Ones(n)); }

Strategy Strategy::zeros(int n) { return Strategy(Vector::Zero(n)); }

Strategy Strategy::indicator(int n, const IndexSet& groups)
{
    Vector v = Vector::Zero(n);
    for (int g : groups) {
        if (g < 0 || g >= n) {
            throw ValidationError("group index " + std::to_string(g) + " out of range");
        }
        v(g) = 1.0;
    }
    return Strategy(std::move(v));
}

IndexSet Strategy::support() const
{
    IndexSet s;
    for (int i = 0; i < size(); ++i) {
        if (values_(i) > 0.0) {
            s.push_back(i);
        }
    }
    return s;
}

CostFunction CostFunction::uniform() { return CostFunction{}; }

CostFunction CostFunction::affine(Vector coefficients)
{
    if (coefficients.size() == 0) {
        throw ValidationError("affine cost needs coefficients");
    }
    for (Eigen::Index i = 0; i < coefficients.size(); ++i) {
        if (!std::isfinite(coefficients(i)) || coefficients(i) <= 0.0) {
            throw ValidationError("affine cost coefficient " + std::to_string(i) + " must be strictly positive");
        }
    }
    CostFunction c;
    c.kind_ = Kind::Affine;
    c.coefficients_ = std::move(coefficients);
    return c;
}

Vector CostFunction::coefficients(int n) const
{
    if (kind_ == Kind::Uniform) {
        return Vector::Ones(n);
    }
    if (coefficients_.size() != n) {
        throw DimensionMismatch("cost has " + std::to_string(coefficients_.size()) + " coefficients, model has " +
                                std::to_string(n) + " groups");
    }
    return coefficients_;
}

Vector CostFunction::group_weights(const MetapopModel& model) const
{
    return coefficients(model.size()).cwiseProduct(model.weights());
}

double CostFunction::max_cost(const MetapopModel& model) const { return group_weights(model).sum(); }

double cost(const CostFunction& c, const MetapopModel& model, const Strategy& eta)
{
    if (eta.size() != model.size()) {
        throw DimensionMismatch("strategy has " + std::to_string(eta.size()) + " entries, model has " +
                                std::to_string(model.size()) + " groups");
    }
    const Vector w = c.group_weights(model);
    double total = 0.0;
    for (int i = 0; i < model.size(); ++i) {
        total += w(i) * (1.0 - eta[i]);
    }
    return total;
}

GridKernelSpec sample_grid_kernel(int grid_points, const std::function<double(double, double)>& kernel)
{
    if (grid_points < 1) {
        throw ValidationError("grid needs at least one point");
    }
    GridKernelSpec spec;
    spec.grid_points = grid_points;
    spec.samples.resize(grid_points, grid_points);
    const double h = 1.0 / grid_points;
    for (int i = 0; i < grid_points; ++i) {
        for (int j = 0; j < grid_points; ++j) {
            spec.samples(i, j) = kernel((i + 0.5) * h, (j + 0.5) * h);
        }
    }
    return spec;
}

MetapopModel grid_to_model(const GridKernelSpec& spec)
{
    const int m = spec.grid_points;
    if (m < 1) {
        throw ValidationError("grid_points must be positive");
    }
    if (spec.samples.rows() != m || spec.samples.cols() != m) {
        throw DimensionMismatch("grid samples must be " + std::to_string(m) + "x" + std::to_string(m));
    }
    check_finite_nonnegative(spec.samples, "grid samples");
    const double h = 1.0 / m;
    return MetapopModel(spec.samples * h, Vector::Constant(m, h));
}

double double_norm(const MetapopModel& model, double p)
{
    if (!(p > 1.0) || !std::isfinite(p)) {
        throw ValidationError("double norm needs p > 1");
    }
    const double q = p / (p - 1.0);
    const int n = model.size();
    const Vector& mu = model.weights();
    double outer = 0.0;
    for (int i = 0; i < n; ++i) {
        double inner = 0.0;
        for (int j = 0; j < n; ++j) {
            inner += std::pow(std::abs(model.kernel(i, j)), q) * mu(j);
        }
        outer += mu(i) * std::pow(inner, p / q);
    }
    return std::pow(outer, 1.0 / p);
}

} // namespace vaxfront
