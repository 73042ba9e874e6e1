#include "vaxfront/spectral.hpp"

#include "vaxfront/digraph.hpp"
#include "vaxfront/eigen_qr.hpp"
#include "vaxfront/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace vaxfront {

namespace {

constexpr int kPowerIterationCap = 300;
constexpr double kBracketTolerance = 1e-13;
constexpr double kSimpleGap = 1e-8;
constexpr double kInverseShift = 1e-9;

void check_nonnegative_square(const Matrix& a)
{
    if (a.rows() != a.cols()) {
        throw DimensionMismatch("expected a square matrix");
    }
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        const double v = a.data()[i];
        if (!std::isfinite(v) || v < 0.0) {
            throw ValidationError("expected a nonnegative finite matrix");
        }
    }
}

Matrix submatrix(const Matrix& a, const IndexSet& idx)
{
    const auto m = static_cast<Eigen::Index>(idx.size());
    Matrix out(m, m);
    for (Eigen::Index r = 0; r < m; ++r) {
        for (Eigen::Index c = 0; c < m; ++c) {
            out(r, c) = a(idx[r], idx[c]);
        }
    }
    return out;
}

double max_modulus(const std::vector<std::complex<double>>& values)
{
    double r = 0.0;
    for (const auto& v : values) {
        r = std::max(r, std::abs(v));
    }
    return r;
}

// Perron root of an irreducible nonnegative block of size >= 2. The shift
// makes the iteration matrix primitive; the Collatz-Wielandt quotients
// bracket rho + shift from both sides.
double irreducible_radius(const Matrix& b)
{
    const auto m = b.rows();
    const Vector row_sums = b.rowwise().sum();
    const double shift = 0.5 * (row_sums.minCoeff() + row_sums.maxCoeff());
    Vector x = Vector::Constant(m, 1.0 / static_cast<double>(m));
    for (int it = 0; it < kPowerIterationCap; ++it) {
        Vector y = b * x + shift * x;
        double lo = std::numeric_limits<double>::infinity();
        double hi = 0.0;
        for (Eigen::Index i = 0; i < m; ++i) {
            const double q = y(i) / x(i);
            lo = std::min(lo, q);
            hi = std::max(hi, q);
        }
        if (hi - lo <= kBracketTolerance * hi) {
            return std::max(0.0, 0.5 * (lo + hi) - shift);
        }
        x = y / y.sum();
    }
    return max_modulus(hessenberg_qr_eigenvalues(b));
}

struct PerronStructure {
    double radius = 0.0;
    int dominant_blocks = 0;
    std::vector<IndexSet> components;
    /// Component carrying the radius when it is unique.
    int dominant = -1;
};

PerronStructure analyse(const Matrix& a)
{
    PerronStructure out;
    out.components = strongly_connected_components(support_digraph(a));
    std::vector<double> radii;
    radii.reserve(out.components.size());
    for (std::size_t c = 0; c < out.components.size(); ++c) {
        const auto& comp = out.components[c];
        const double r = comp.size() == 1 ? a(comp[0], comp[0]) : irreducible_radius(submatrix(a, comp));
        radii.push_back(r);
        if (r > out.radius) {
            out.radius = r;
            out.dominant = static_cast<int>(c);
        }
    }
    if (out.radius > 0.0) {
        for (double r : radii) {
            if (out.radius - r <= kSimpleGap * out.radius) {
                ++out.dominant_blocks;
            }
        }
    }
    return out;
}

// Nonnegative vector with unit sum from inverse iteration on (sigma I - M),
// whose inverse is entrywise nonnegative for sigma above the Perron root.
Vector inverse_iteration(const Matrix& m, double sigma)
{
    const auto n = m.rows();
    const Matrix shifted = sigma * Matrix::Identity(n, n) - m;
    const Eigen::PartialPivLU<Matrix> lu(shifted);
    Vector x = Vector::Constant(n, 1.0 / static_cast<double>(n));
    for (int it = 0; it < 60; ++it) {
        Vector y = lu.solve(x);
        y = y.cwiseMax(0.0);
        const double s = y.sum();
        if (!(s > 0.0) || !std::isfinite(s)) {
            throw NonConvergence("inverse iteration broke down");
        }
        y /= s;
        const double change = (y - x).lpNorm<1>();
        x = std::move(y);
        if (change <= 1e-15) {
            break;
        }
    }
    return x;
}

// Right Perron vector when a single component carries the radius: inverse
// iteration on that component, then the groups it reaches solve
// (rho I - A_RR) v_R = A_RD v_D. Other groups stay at zero.
Vector perron_vector(const Matrix& a, const PerronStructure& ps)
{
    const IndexSet& dom = ps.components[static_cast<std::size_t>(ps.dominant)];
    const Vector v_dom = dom.size() == 1 ? Vector::Ones(1)
                                         : inverse_iteration(submatrix(a, dom), ps.radius * (1.0 + kInverseShift));
    Vector v = Vector::Zero(a.rows());
    for (std::size_t i = 0; i < dom.size(); ++i) {
        v(dom[i]) = v_dom(static_cast<Eigen::Index>(i));
    }
    IndexSet downstream;
    for (int i : reachable_from(support_digraph(a), dom)) {
        if (!std::binary_search(dom.begin(), dom.end(), i)) {
            downstream.push_back(i);
        }
    }
    if (!downstream.empty()) {
        const auto r = static_cast<Eigen::Index>(downstream.size());
        const auto d = static_cast<Eigen::Index>(dom.size());
        Matrix lhs = -submatrix(a, downstream);
        lhs.diagonal().array() += ps.radius;
        Matrix coupling(r, d);
        for (Eigen::Index i = 0; i < r; ++i) {
            for (Eigen::Index j = 0; j < d; ++j) {
                coupling(i, j) = a(downstream[i], dom[j]);
            }
        }
        const Vector v_down = Eigen::PartialPivLU<Matrix>(lhs).solve(coupling * v_dom).cwiseMax(0.0);
        for (Eigen::Index i = 0; i < r; ++i) {
            v(downstream[i]) = v_down(i);
        }
    }
    const double total = v.sum();
    if (!(total > 0.0) || !std::isfinite(total)) {
        throw NonConvergence("Perron vector computation broke down");
    }
    return v / total;
}

EigenPair perron_pair(const Matrix& a, const PerronStructure& ps)
{
    EigenPair pair;
    pair.value = ps.radius;
    pair.right = perron_vector(a, ps);
    // transposition keeps the components and reverses every edge
    Vector left = perron_vector(a.transpose(), ps);
    left /= left.dot(pair.right);
    pair.left = std::move(left);
    return pair;
}

} // namespace

int Spectrum::multiplicity(std::complex<double> lambda) const
{
    for (const auto& c : clusters) {
        if (std::abs(c.value - lambda) <= tolerance) {
            return c.multiplicity;
        }
    }
    return 0;
}

double spectral_radius(const Matrix& a)
{
    check_nonnegative_square(a);
    return analyse(a).radius;
}

Spectrum full_spectrum(const Matrix& a)
{
    if (a.rows() != a.cols()) {
        throw DimensionMismatch("expected a square matrix");
    }
    Spectrum s;
    if (a == a.transpose()) {
        for (double v : jacobi_eigenvalues(a)) {
            s.eigenvalues.emplace_back(v, 0.0);
        }
    } else {
        s.eigenvalues = hessenberg_qr_eigenvalues(a);
    }
    std::sort(s.eigenvalues.begin(), s.eigenvalues.end(), [](const auto& x, const auto& y) {
        if (std::abs(x) != std::abs(y)) {
            return std::abs(x) > std::abs(y);
        }
        if (x.real() != y.real()) {
            return x.real() > y.real();
        }
        return x.imag() > y.imag();
    });
    s.radius = max_modulus(s.eigenvalues);
    s.tolerance = 1e-8 * std::max(1.0, s.radius);

    for (const auto& v : s.eigenvalues) {
        bool merged = false;
        for (auto& c : s.clusters) {
            if (std::abs(c.value - v) <= s.tolerance) {
                c.value = (c.value * static_cast<double>(c.multiplicity) + v) / static_cast<double>(c.multiplicity + 1);
                ++c.multiplicity;
                merged = true;
                break;
            }
        }
        if (!merged) {
            s.clusters.push_back({v, 1});
        }
        if (std::abs(v.imag()) > s.tolerance) {
            s.is_real = false;
        } else if (v.real() > s.tolerance) {
            ++s.p_count;
        } else if (v.real() < -s.tolerance) {
            ++s.n_count;
        }
    }
    return s;
}

Matrix effective_matrix(const Matrix& k, const Vector& eta)
{
    if (k.rows() != k.cols() || k.cols() != eta.size()) {
        throw DimensionMismatch("strategy length " + std::to_string(eta.size()) + " does not match a " +
                                std::to_string(k.rows()) + "x" + std::to_string(k.cols()) + " matrix");
    }
    return k * eta.asDiagonal();
}

Matrix effective_matrix(const MetapopModel& model, const Strategy& eta)
{
    return effective_matrix(model.matrix(), eta.values());
}

double effective_re(const Matrix& k, const Vector& eta) { return spectral_radius(effective_matrix(k, eta)); }

double effective_re(const MetapopModel& model, const Strategy& eta)
{
    return effective_re(model.matrix(), eta.values());
}

double basic_reproduction_number(const MetapopModel& model) { return spectral_radius(model.matrix()); }

EigenPair dominant_pair(const Matrix& a)
{
    check_nonnegative_square(a);
    const PerronStructure ps = analyse(a);
    if (ps.radius <= 0.0) {
        throw ZeroRadius("spectral radius is zero");
    }
    if (ps.dominant_blocks > 1) {
        throw NonSimple("Perron root shared by " + std::to_string(ps.dominant_blocks) + " components");
    }
    return perron_pair(a, ps);
}

EigenPair dominant_pair(const MetapopModel& model, const Strategy& eta)
{
    return dominant_pair(effective_matrix(model, eta));
}

ReEvaluation evaluate_re(const Matrix& k, const Vector& eta)
{
    const Matrix a = effective_matrix(k, eta);
    check_nonnegative_square(a);
    const PerronStructure ps = analyse(a);
    ReEvaluation out;
    out.value = ps.radius;
    if (ps.radius <= 0.0 || ps.dominant_blocks > 1) {
        return out;
    }
    const EigenPair pair = perron_pair(a, ps);
    const Vector kt_phi = k.transpose() * pair.left;
    out.gradient = kt_phi.cwiseProduct(pair.right);
    out.gradient_ok = true;
    return out;
}

Vector re_gradient(const Matrix& k, const Vector& eta)
{
    const EigenPair pair = dominant_pair(effective_matrix(k, eta));
    const Vector kt_phi = k.transpose() * pair.left;
    return kt_phi.cwiseProduct(pair.right);
}

Vector re_gradient(const MetapopModel& model, const Strategy& eta)
{
    return re_gradient(model.matrix(), eta.values());
}

std::pair<int, int> inertia(const Matrix& a)
{
    const Spectrum s = full_spectrum(a);
    if (!s.is_real) {
        throw ComplexSpectrum("spectrum has non-real eigenvalues");
    }
    return {s.p_count, s.n_count};
}

} // namespace vaxfront
