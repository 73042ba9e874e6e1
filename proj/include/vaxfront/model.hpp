#pragma once

#include <Eigen/Dense>

#include <functional>
#include <string>
#include <vector>

namespace vaxfront {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Sorted list of 0-based group indices.
using IndexSet = std::vector<int>;

/// Metapopulation model: next-generation matrix K and group sizes mu.
///
/// K(i, j) is the expected number of infections in group i caused by one
/// unvaccinated infectious individual of group j. The discrete kernel is
/// k_d(i, j) = K(i, j) / mu(j).
class MetapopModel {
public:
    /// Validates the inputs. Weights whose sum is within 1e-9 of one are
    /// renormalized; anything further off is rejected.
    MetapopModel(Matrix matrix, Vector weights, std::vector<std::string> labels = {});

    /// Model with equal group sizes 1/N.
    static MetapopModel with_uniform_weights(Matrix matrix);

    int size() const { return static_cast<int>(weights_.size()); }
    const Matrix& matrix() const { return matrix_; }
    const Vector& weights() const { return weights_; }
    const std::vector<std::string>& labels() const { return labels_; }

    double kernel(int i, int j) const { return matrix_(i, j) / weights_(j); }

    /// Model restricted to a subset of groups, weights renormalized.
    MetapopModel restricted(const IndexSet& groups) const;

private:
    Matrix matrix_;
    Vector weights_;
    std::vector<std::string> labels_;
};

/// Fractions of non-vaccinated individuals per group, each in [0, 1].
class Strategy {
public:
    explicit Strategy(Vector values);

    static Strategy ones(int n);
    static Strategy zeros(int n);
    static Strategy indicator(int n, const IndexSet& groups);

    int size() const { return static_cast<int>(values_.size()); }
    const Vector& values() const { return values_; }
    double operator[](int i) const { return values_(i); }

    /// Indices where the strategy is strictly positive.
    IndexSet support() const;

private:
    Vector values_;
};

/// Cost of a strategy, C(eta) = sum_i c_i mu_i (1 - eta_i).
class CostFunction {
public:
    enum class Kind { Uniform, Affine };

    static CostFunction uniform();
    /// All coefficients must be strictly positive.
    static CostFunction affine(Vector coefficients);

    Kind kind() const { return kind_; }
    Vector coefficients(int n) const;
    /// Per-group weights c_i mu_i.
    Vector group_weights(const MetapopModel& model) const;
    /// c_max = C(0).
    double max_cost(const MetapopModel& model) const;

private:
    Kind kind_ = Kind::Uniform;
    Vector coefficients_;
};

double cost(const CostFunction& c, const MetapopModel& model, const Strategy& eta);

/// Samples of a kernel k(x, y) at the cell centers of a uniform M x M grid
/// on the unit square.
struct GridKernelSpec {
    int grid_points = 0;
    Matrix samples;
};

/// Midpoint sampling of a continuous kernel.
GridKernelSpec sample_grid_kernel(int grid_points, const std::function<double(double, double)>& kernel);

/// K_ij = k(x_i, x_j) / M with mu_i = 1 / M.
MetapopModel grid_to_model(const GridKernelSpec& spec);

/// Discrete double norm ||k_d||_{p,q} with q = p / (p - 1).
double double_norm(const MetapopModel& model, double p);

// JSON ingestion and serialization.
MetapopModel parse_model(const std::string& json_text);
MetapopModel load_model(const std::string& path);
std::string model_to_json(const MetapopModel& model);
void save_model(const MetapopModel& model, const std::string& path);

GridKernelSpec parse_grid(const std::string& json_text);
GridKernelSpec load_grid(const std::string& path);

} // namespace vaxfront
