#pragma once

#include "vaxfront/model.hpp"

#include <complex>
#include <utility>
#include <vector>

namespace vaxfront {

/// Eigenvalues of a real matrix with multiplicities and inertia counts.
struct Spectrum {
    struct Cluster {
        std::complex<double> value;
        int multiplicity = 0;
    };

    /// All N eigenvalues, sorted by decreasing modulus.
    std::vector<std::complex<double>> eigenvalues;
    /// Distinct eigenvalues after merging values closer than `tolerance`.
    std::vector<Cluster> clusters;
    double radius = 0.0;
    int p_count = 0;
    int n_count = 0;
    bool is_real = true;
    /// 1e-8 * max(1, radius); used for clustering, realness and sign tests.
    double tolerance = 0.0;

    /// Multiplicity of the cluster containing `lambda`, 0 if none.
    int multiplicity(std::complex<double> lambda) const;
};

/// Perron root with right vector (sum 1) and left vector (<left, right> = 1).
struct EigenPair {
    double value = 0.0;
    Vector right;
    Vector left;
};

/// Spectral radius of a nonnegative matrix. Exact zero for nilpotent input.
double spectral_radius(const Matrix& a);

/// All eigenvalues: Jacobi for symmetric input, Hessenberg QR otherwise.
Spectrum full_spectrum(const Matrix& a);

/// K * diag(eta).
Matrix effective_matrix(const Matrix& k, const Vector& eta);
Matrix effective_matrix(const MetapopModel& model, const Strategy& eta);

double effective_re(const Matrix& k, const Vector& eta);
double effective_re(const MetapopModel& model, const Strategy& eta);

/// R_e of the unvaccinated population.
double basic_reproduction_number(const MetapopModel& model);

/// Throws ZeroRadius when rho = 0 and NonSimple when the Perron root is a
/// multiple eigenvalue (relative gap 1e-8).
EigenPair dominant_pair(const Matrix& a);
EigenPair dominant_pair(const MetapopModel& model, const Strategy& eta);

/// Gradient of eta -> rho(K diag(eta)).
Vector re_gradient(const Matrix& k, const Vector& eta);
Vector re_gradient(const MetapopModel& model, const Strategy& eta);

/// Value and gradient from one eigen-analysis. `gradient_ok` is false when
/// the Perron root is zero or not simple; `gradient` is then empty.
struct ReEvaluation {
    double value = 0.0;
    Vector gradient;
    bool gradient_ok = false;
};
ReEvaluation evaluate_re(const Matrix& k, const Vector& eta);

/// (positive, negative) eigenvalue counts with multiplicity.
/// Throws ComplexSpectrum when the spectrum is not real.
std::pair<int, int> inertia(const Matrix& a);

} // namespace vaxfront
