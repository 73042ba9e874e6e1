#include "vaxfront/verification.hpp"

#include "vaxfront/convexity.hpp"
#include "vaxfront/errors.hpp"
#include "vaxfront/fixtures.hpp"
#include "vaxfront/frontier.hpp"
#include "vaxfront/independent.hpp"
#include "vaxfront/random.hpp"
#include "vaxfront/spectral.hpp"
#include "vaxfront/structure.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>

namespace vaxfront {

namespace {

using generators::Rng;

struct Check {
    bool pass = true;
    std::ostringstream detail;
    std::string failures;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            failures += (pass ? "failed: " : "; ") + what;
            pass = false;
        }
    }

    std::string report() const { return pass ? detail.str() : failures + " | " + detail.str(); }
};

std::string fmt(double v, int digits = 6)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

Matrix convexity_fixture(bool fault)
{
    Matrix k = fixtures::convexity_counterexample();
    if (fault) {
        k(0, 0) += 2.0;
    }
    return k;
}

Matrix concavity_fixture(bool fault)
{
    Matrix k = fixtures::concavity_counterexample();
    if (fault) {
        k(0, 0) += 2.0;
    }
    return k;
}

MetapopModel cycle_fixture(bool fault)
{
    MetapopModel m = fixtures::cycle(12);
    if (!fault) {
        return m;
    }
    Matrix k = m.matrix();
    k(0, 1) = k(1, 0) = 1.25;
    return MetapopModel::with_uniform_weights(std::move(k));
}

Vector random_strategy(Rng& rng, int n)
{
    Vector eta(n);
    for (int i = 0; i < n; ++i) {
        eta(i) = uniform01(rng);
    }
    return eta;
}

// Real parts in decreasing order; each must sit within `tol` of `expected`.
bool spectrum_matches(const Spectrum& s, std::vector<double> expected, double tol, std::string& got)
{
    std::vector<double> re;
    for (const auto& v : s.eigenvalues) {
        re.push_back(v.real());
    }
    std::sort(re.rbegin(), re.rend());
    std::sort(expected.rbegin(), expected.rend());
    got.clear();
    for (double v : re) {
        got += (got.empty() ? "" : ", ") + fmt(v, 4);
    }
    if (!s.is_real || re.size() != expected.size()) {
        return false;
    }
    for (std::size_t i = 0; i < re.size(); ++i) {
        if (std::abs(re[i] - expected[i]) > tol) {
            return false;
        }
    }
    return true;
}

Check criterion_eigen(const AcceptanceOptions& opt, double& timed)
{
    Check c;
    const std::vector<std::pair<Matrix, std::vector<double>>> cases = {
        {convexity_fixture(opt.inject_fault), {24.8, 2.9, 1.3}},
        {concavity_fixture(opt.inject_fault), {26.3, -1.4, -3.9}},
    };
    timed = 0.0;
    std::string spectra;
    for (const auto& [k, expected] : cases) {
        const auto t0 = std::chrono::steady_clock::now();
        const Spectrum s = full_spectrum(k);
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        timed = std::max(timed, dt);
        std::string got;
        const bool ok = spectrum_matches(s, expected, 0.05, got);
        c.require(ok, "spectrum {" + got + "}");
        spectra += "{" + got + "} ";
    }
    c.detail << spectra << "slowest call " << fmt(timed * 1e3, 3) << " ms";
    return c;
}

Check criterion_saddle(const AcceptanceOptions& opt)
{
    Check c;
    for (const Matrix& k : {convexity_fixture(opt.inject_fault), concavity_fixture(opt.inject_fault)}) {
        const ConvexityVerdict v = probe_convexity(MetapopModel::with_uniform_weights(k), 10000, 0);
        const double up = v.convexity_violation ? v.convexity_violation->gap : 0.0;
        const double down = v.concavity_violation ? v.concavity_violation->gap : 0.0;
        c.require(up > 1e-4, "no convexity violation above 1e-4");
        c.require(down < -1e-4, "no concavity violation above 1e-4");
        c.detail << "gaps +" << fmt(up, 4) << "/" << fmt(down, 4) << " ";
    }
    return c;
}

Check criterion_cycle(const AcceptanceOptions& opt)
{
    Check c;
    const MetapopModel m = cycle_fixture(opt.inject_fault);
    const Strategy eta = fixtures::one_in_four();
    const CostFunction uniform = CostFunction::uniform();
    const double r0 = basic_reproduction_number(m);
    const double re = effective_re(m, eta);
    c.require(std::abs(r0 - 2.0) <= 1e-9, "R_0 = " + fmt(r0, 17));
    c.require(std::abs(re - std::numbers::sqrt2) <= 1e-9, "R_e(one in 4) = " + fmt(re, 17));

    const EradicationResult e = eradication_cost(m, uniform);
    // 1/12 is not a binary fraction, so "exactly" means to within rounding
    c.require(std::abs(e.cstar - 0.5) <= 1e-15 && e.exact, "c_star = " + fmt(e.cstar, 17));
    bool alternating = e.set.size() == 6;
    for (std::size_t i = 1; alternating && i < e.set.size(); ++i) {
        alternating = e.set[i] - e.set[i - 1] == 2;
    }
    c.require(alternating, "eradication set is not 6 alternating groups");

    c.require(is_disconnecting(m, eta), "one in 4 is not disconnecting");
    try {
        const CordonImprovement ci = cordon_improvement(m, eta, uniform);
        const auto& cert = ci.certificate;
        c.require(std::abs(cert.re_after - cert.re_before) <= 1e-10, "certificate R_e differs");
        c.require(std::abs(cert.cost_before - 0.25) <= 1e-12 && std::abs(cert.cost_after - 0.5) <= 1e-12,
                  "certificate cost " + fmt(cert.cost_before) + " -> " + fmt(cert.cost_after));
    } catch (const NotDisconnecting&) {
        c.require(false, "cordon improvement refused");
    }
    c.detail << "R_0 " << fmt(r0, 12) << ", R_e " << fmt(re, 12) << ", c_star " << fmt(e.cstar, 12);
    return c;
}

// Largest R_e over strategies with cost >= c whose coordinates are binary
// except at most two on the 1/8 grid, with at most `max_zeros` binary zeros.
double fractional_grid_max(const MetapopModel& m, const CostFunction& cost, double c, int max_zeros)
{
    const int n = m.size();
    const Vector w = cost.group_weights(m);
    const double total = w.sum();
    double best = 0.0;
    std::vector<int> zeros;
    auto evaluate_with_fractions = [&](Vector x) {
        std::vector<int> free;
        for (int i = 0; i < n; ++i) {
            if (x(i) == 1.0) {
                free.push_back(i);
            }
        }
        auto try_point = [&](const Vector& y) {
            if (total - w.dot(y) >= c - 1e-12) {
                best = std::max(best, effective_re(m.matrix(), y));
                return true;
            }
            return false;
        };
        // R_e is monotone, so lowering coordinates of a feasible point is useless
        if (try_point(x)) {
            return;
        }
        for (std::size_t a = 0; a < free.size(); ++a) {
            for (int va = 1; va < 8; ++va) {
                x(free[a]) = va / 8.0;
                try_point(x);
                for (std::size_t b = a + 1; b < free.size(); ++b) {
                    for (int vb = 1; vb < 8; ++vb) {
                        x(free[b]) = vb / 8.0;
                        try_point(x);
                    }
                    x(free[b]) = 1.0;
                }
            }
            x(free[a]) = 1.0;
        }
    };
    auto rec = [&](auto&& self, int start, Vector x) -> void {
        evaluate_with_fractions(x);
        if (static_cast<int>(zeros.size()) == max_zeros) {
            return;
        }
        for (int i = start; i < n; ++i) {
            x(i) = 0.0;
            zeros.push_back(i);
            self(self, i + 1, x);
            zeros.pop_back();
            x(i) = 1.0;
        }
    };
    rec(rec, 0, Vector::Ones(n));
    return best;
}

Check criterion_cordon(const AcceptanceOptions& opt)
{
    Check c;
    const MetapopModel m = cycle_fixture(opt.inject_fault);
    const CostFunction uniform = CostFunction::uniform();
    const double re = effective_re(m, fixtures::one_in_four());
    SolverOptions so;
    so.threads = opt.threads;
    const double enumerated = optimal_loss_max(m, uniform, 0.25, so).loss;
    const double grid = fractional_grid_max(m, uniform, 0.25, 3);
    const FrontierCurve anti = anti_pareto_frontier(m, uniform, 64, so);
    const double swept = interpolate_loss(anti, 0.25);
    const double upper = std::max(enumerated, grid);
    c.require(re < upper - 1e-3, "R_e(one in 4) not below R_e^*(1/4) - 1e-3");
    c.require(grid <= enumerated + 1e-9, "1/8 grid beats the solver: " + fmt(grid, 12));
    c.require(re < swept - 1e-3, "anti-Pareto sweep at 1/4 gives " + fmt(swept));
    c.detail << "R_e(one in 4) " << fmt(re, 10) << " < R_e^*(1/4) " << fmt(enumerated, 10) << " (grid "
             << fmt(grid, 10) << ", sweep " << fmt(swept, 10) << ")";
    return c;
}

Check criterion_convexity()
{
    Check c;
    Rng rng = stream_rng(0, 5);
    double worst_convex = -1.0;
    double worst_concave = 1.0;
    int not_monatomic = 0;
    for (int model = 0; model < 400; ++model) {
        const bool convex = model < 200;
        const int n = uniform_int(rng, 2, 8);
        const Matrix k = convex ? generators::convex_symmetrizable(rng, n)
                                : generators::single_positive_symmetrizable(rng, n);
        const double r0 = spectral_radius(k);
        if (!convex && !classify(MetapopModel::with_uniform_weights(k)).monatomic) {
            ++not_monatomic;
        }
        for (int pair = 0; pair < 50; ++pair) {
            const Vector a = random_strategy(rng, n);
            const Vector b = random_strategy(rng, n);
            const double gap = effective_re(k, 0.5 * (a + b)) - 0.5 * (effective_re(k, a) + effective_re(k, b));
            const double scaled = gap / std::max(1.0, r0);
            if (convex) {
                worst_convex = std::max(worst_convex, scaled);
            } else {
                worst_concave = std::min(worst_concave, scaled);
            }
        }
    }
    c.require(worst_convex <= 1e-9, "convex midpoint gap " + fmt(worst_convex));
    c.require(worst_concave >= -1e-9, "concave midpoint gap " + fmt(worst_concave));
    c.require(not_monatomic == 0, std::to_string(not_monatomic) + " concave models not monatomic");
    c.detail << "largest convex gap " << fmt(worst_convex, 3) << ", smallest concave gap " << fmt(worst_concave, 3);
    return c;
}

Check criterion_sylvester()
{
    Check c;
    Rng rng = stream_rng(0, 6);
    int mismatches = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = uniform_int(rng, 1, 8);
        const Matrix t = generators::random_symmetric(rng, n);
        Vector f(n);
        Vector g(n);
        for (int i = 0; i < n; ++i) {
            f(i) = std::exp(uniform(rng, -2.0, 2.0));
            g(i) = std::exp(uniform(rng, -2.0, 2.0));
        }
        try {
            if (!sylvester_check(t, f, g).match) {
                ++mismatches;
            }
        } catch (const ComplexSpectrum&) {
            ++mismatches;
        }
    }
    c.require(mismatches == 0, std::to_string(mismatches) + " of 100 inertia mismatches");
    c.detail << "100 instances, " << mismatches << " mismatches";
    return c;
}

Check criterion_invariance()
{
    Check c;
    Rng rng = stream_rng(0, 7);
    double worst = 0.0;
    std::string worst_name = "none";
    auto track = [&](double err, double scale, const char* name) {
        const double rel = err / std::max(1.0, scale);
        if (rel > worst) {
            worst = rel;
            worst_name = name;
        }
    };
    for (int trial = 0; trial < 200; ++trial) {
        const int n = uniform_int(rng, 1, 8);
        const double density = uniform(rng, 0.2, 1.0);
        const Matrix a = generators::random_nonnegative(rng, n, density, 2.0);
        const Matrix b = generators::random_nonnegative(rng, n, density, 2.0);
        const Vector eta = random_strategy(rng, n);
        const double re = effective_re(a, eta);
        const double r0 = spectral_radius(a);

        const double ab = spectral_radius(a * b);
        track(std::abs(ab - spectral_radius(b * a)), ab, "rho(AB) = rho(BA)");

        Vector h(n);
        for (int i = 0; i < n; ++i) {
            h(i) = std::exp(uniform(rng, -1.0, 1.0));
        }
        const Matrix similar = h.asDiagonal() * a * h.cwiseInverse().asDiagonal();
        track(std::abs(effective_re(similar, eta) - re), re, "diagonal similarity");

        track(std::abs(effective_re(Matrix(a.transpose()), eta) - re), re, "transpose");
        track(std::abs(spectral_radius(eta.asDiagonal() * a) - re), re, "rho(diag(eta) K)");

        const double lambda = uniform01(rng);
        track(std::abs(effective_re(a, lambda * eta) - lambda * re), r0, "homogeneity");

        Vector lower(n);
        for (int i = 0; i < n; ++i) {
            lower(i) = eta(i) * uniform01(rng);
        }
        track(std::max(0.0, effective_re(a, lower) - re), re, "monotonicity");

        Matrix dominated = a;
        for (Eigen::Index i = 0; i < dominated.size(); ++i) {
            dominated.data()[i] *= uniform01(rng);
        }
        track(std::max(0.0, spectral_radius(dominated) - r0), r0, "domination");
    }
    c.require(worst <= 1e-9, worst_name + " off by " + fmt(worst));
    c.detail << "200 models, largest relative error " << fmt(worst, 3) << " (" << worst_name << ")";
    return c;
}

Check criterion_reducible(const AcceptanceOptions& opt)
{
    Check c;
    Rng rng = stream_rng(0, 8);
    SolverOptions so;
    so.threads = opt.threads;
    double worst_block = 0.0;
    int multiplicity_failures = 0;
    int assembly_failures = 0;
    double worst_ratio = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const int blocks = uniform_int(rng, 2, 4);
        std::vector<int> sizes;
        int total = 0;
        for (int b = 0; b < blocks; ++b) {
            sizes.push_back(std::min(uniform_int(rng, 1, 2), 10 - total - (blocks - b - 1)));
            total += sizes.back();
        }
        const generators::BlockTriangular bt = generators::block_triangular(rng, sizes, true);
        const int n = static_cast<int>(bt.k.rows());
        const MetapopModel m(bt.k, generators::random_weights(rng, n));
        const FrobeniusDecomposition d = frobenius_decompose(m);
        const double r0 = spectral_radius(bt.k);

        for (int s = 0; s < 5; ++s) {
            const Vector eta = random_strategy(rng, n);
            double block_max = 0.0;
            for (const IndexSet& atom : d.atoms) {
                Vector sub_eta(static_cast<Eigen::Index>(atom.size()));
                for (std::size_t i = 0; i < atom.size(); ++i) {
                    sub_eta(static_cast<Eigen::Index>(i)) = eta(atom[i]);
                }
                block_max = std::max(block_max, effective_re(m.restricted(atom).matrix(), sub_eta));
            }
            worst_block = std::max(worst_block, std::abs(effective_re(bt.k, eta) - block_max) / std::max(1.0, r0));
        }

        const Spectrum whole = full_spectrum(bt.k);
        std::vector<Spectrum> parts;
        for (const IndexSet& atom : d.atoms) {
            parts.push_back(full_spectrum(m.restricted(atom).matrix()));
        }
        for (const auto& cluster : whole.clusters) {
            if (std::abs(cluster.value) <= 1e-6 * whole.radius) {
                continue;
            }
            int sum = 0;
            for (const Spectrum& p : parts) {
                sum += p.multiplicity(cluster.value);
            }
            if (sum != cluster.multiplicity) {
                ++multiplicity_failures;
            }
        }

        const ReducibleAssembly ra = assemble_reducible(m, CostFunction::uniform(), 8, so);
        if (!ra.matches) {
            ++assembly_failures;
        }
        worst_ratio = std::max({worst_ratio, ra.pareto_deviation / ra.pareto_slack, ra.anti_deviation / ra.anti_slack});
    }
    c.require(worst_block <= 1e-9, "block max law off by " + fmt(worst_block));
    c.require(multiplicity_failures == 0, std::to_string(multiplicity_failures) + " multiplicity mismatches");
    c.require(assembly_failures == 0, std::to_string(assembly_failures) + " assemblies outside slack");
    c.detail << "block law " << fmt(worst_block, 3) << ", deviation/slack at most " << fmt(worst_ratio, 3);
    return c;
}

Check criterion_configuration()
{
    Check c;
    Rng rng = stream_rng(0, 9);
    double worst_value = 0.0;
    double worst_gradient = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const int n = uniform_int(rng, 1, 8);
        const generators::RankOne r = generators::rank_one(rng, n);
        const Vector mu = r.model.weights();
        const Vector eta = random_strategy(rng, n);
        const Vector linear = r.f.cwiseProduct(r.g).cwiseProduct(mu);
        worst_value = std::max(worst_value, std::abs(effective_re(r.model, Strategy(eta)) - linear.dot(eta)));
        const Vector grad = re_gradient(r.model, Strategy(eta));
        worst_gradient = std::max(worst_gradient, (grad - linear).lpNorm<Eigen::Infinity>());
    }
    c.require(worst_value <= 1e-10, "R_e off the linear formula by " + fmt(worst_value));
    c.require(worst_gradient <= 1e-8, "gradient off by " + fmt(worst_gradient));
    c.detail << "value error " << fmt(worst_value, 3) << ", gradient error " << fmt(worst_gradient, 3);
    return c;
}

// Exhaustive search over subsets; sums in increasing index order like the
// branch and bound does.
double brute_force_mwis(const Matrix& k, const Vector& w)
{
    const int n = static_cast<int>(k.rows());
    std::vector<std::uint32_t> conflict(static_cast<std::size_t>(n), 0);
    std::uint32_t self = 0;
    for (int i = 0; i < n; ++i) {
        if (k(i, i) > 0.0) {
            self |= 1u << i;
        }
        for (int j = 0; j < n; ++j) {
            if (j != i && (k(i, j) > 0.0 || k(j, i) > 0.0)) {
                conflict[i] |= 1u << j;
            }
        }
    }
    double best = 0.0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (mask & self) {
            continue;
        }
        bool independent = true;
        double weight = 0.0;
        for (int i = 0; i < n && independent; ++i) {
            if (mask & (1u << i)) {
                independent = (conflict[i] & mask) == 0;
                weight += w(i);
            }
        }
        if (independent) {
            best = std::max(best, weight);
        }
    }
    return best;
}

Check criterion_mwis()
{
    Check c;
    struct Entry {
        Matrix k;
        Vector w;
    };
    std::vector<Entry> corpus;
    for (const auto& named : fixtures::bundled()) {
        if (named.model.size() <= 16) {
            corpus.push_back({named.model.matrix(), CostFunction::uniform().group_weights(named.model)});
        }
    }
    corpus.push_back({fixtures::cycle(16).matrix(), Vector::Constant(16, 1.0 / 16)});
    Rng rng = stream_rng(0, 10);
    for (int trial = 0; trial < 120; ++trial) {
        const int n = uniform_int(rng, 1, 16);
        const double density = uniform(rng, 0.05, 0.5);
        Matrix k = generators::random_nonnegative(rng, n, density);
        for (int i = 0; i < n; ++i) {
            if (uniform01(rng) < 0.7) {
                k(i, i) = 0.0;
            }
        }
        Vector w(n);
        for (int i = 0; i < n; ++i) {
            // a third of the corpus uses integer weights to force exact ties
            w(i) = trial % 3 == 0 ? static_cast<double>(uniform_int(rng, 1, 3)) : uniform(rng, 0.1, 1.0);
        }
        corpus.push_back({std::move(k), std::move(w)});
    }
    int mismatches = 0;
    for (const Entry& e : corpus) {
        const double bb = set_weight(e.w, max_weight_independent_set(e.k, e.w));
        if (bb != brute_force_mwis(e.k, e.w)) {
            ++mismatches;
        }
    }
    c.require(mismatches == 0, std::to_string(mismatches) + " weight mismatches");
    c.detail << corpus.size() << " models up to 16 groups, " << mismatches << " mismatches";
    return c;
}

Check criterion_discretization()
{
    Check c;
    double previous = std::numeric_limits<double>::infinity();
    for (int m : {25, 50, 100, 200}) {
        const MetapopModel model =
            grid_to_model(sample_grid_kernel(m, [](double x, double y) { return 6.0 * x * y; }));
        const double err = std::abs(basic_reproduction_number(model) - 2.0);
        c.require(err <= 10.0 / m, "M = " + std::to_string(m) + " error " + fmt(err));
        c.require(err < previous, "no improvement at M = " + std::to_string(m));
        previous = err;
        c.detail << "M=" << m << ": " << fmt(err, 3) << " ";
    }
    return c;
}

Check criterion_ray(const AcceptanceOptions& opt)
{
    Check c;
    const MetapopModel m = MetapopModel::with_uniform_weights(fixtures::positive_definite_example());
    const CostFunction uniform = CostFunction::uniform();
    SolverOptions so;
    so.threads = opt.threads;
    const FrontierCurve curve = pareto_frontier(m, uniform, 32, so);
    const FrontierPoint* interior = nullptr;
    for (const auto& pt : curve.points) {
        const double top = pt.strategy.values().maxCoeff();
        if (top > 0.0 && top < 1.0 - 1e-9) {
            interior = &pt;
            break;
        }
    }
    c.require(interior != nullptr, "no interior Pareto point on the frontier");
    if (interior == nullptr) {
        return c;
    }
    const RayCheck ray = optimal_ray_check(m, uniform, interior->strategy, so);
    double worst = 0.0;
    int passed = 0;
    for (std::size_t i = 0; i < ray.lambdas.size(); ++i) {
        worst = std::max(worst, ray.losses[i] - ray.optimal[i]);
        passed += ray.pass[i] ? 1 : 0;
    }
    c.require(ray.all_pass && ray.lambdas.size() == 16, std::to_string(passed) + " of 16 ray points pass");
    c.detail << "eta_star at cost " << fmt(interior->cost, 4) << ", " << passed << "/16 within 1e-6, worst excess "
             << fmt(worst, 3);
    return c;
}

struct Criterion {
    int id;
    const char* tag;
    const char* title;
    double budget;
};

const std::vector<Criterion>& criteria()
{
    static const std::vector<Criterion> list = {
        {1, "eigen", "Counterexample spectra", 1e-3},
        {2, "saddle", "Saddle reproduction", 5.0},
        {3, "cycle", "Cycle graph", 0.1},
        {4, "cordon", "Cordon not anti-Pareto", 60.0},
        {5, "convexity", "Convexity theorem suite", 120.0},
        {6, "sylvester", "Sylvester suite", 10.0},
        {7, "invariance", "Invariance suite", 30.0},
        {8, "reducible", "Reducibility suite", 120.0},
        {9, "configuration", "Configuration kernels", 5.0},
        {10, "mwis", "MWIS oracle equivalence", 60.0},
        {11, "discretization", "Discretization stability", 10.0},
        {12, "ray", "Optimal ray", 60.0},
    };
    return list;
}

} // namespace

std::vector<std::string> acceptance_tags()
{
    std::vector<std::string> tags;
    for (const auto& c : criteria()) {
        tags.emplace_back(c.tag);
    }
    return tags;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options)
{
    const auto tags = acceptance_tags();
    for (const auto& t : options.only) {
        if (std::find(tags.begin(), tags.end(), t) == tags.end()) {
            throw ValidationError("unknown acceptance tag '" + t + "'");
        }
    }
    std::vector<CriterionResult> out;
    for (const auto& crit : criteria()) {
        if (!options.only.empty() &&
            std::find(options.only.begin(), options.only.end(), crit.tag) == options.only.end()) {
            continue;
        }
        CriterionResult r;
        r.id = crit.id;
        r.tag = crit.tag;
        r.title = crit.title;
        r.budget_seconds = crit.budget;
        double eigen_time = 0.0;
        const auto t0 = std::chrono::steady_clock::now();
        Check c;
        try {
            switch (crit.id) {
            case 1:
                c = criterion_eigen(options, eigen_time);
                break;
            case 2:
                c = criterion_saddle(options);
                break;
            case 3:
                c = criterion_cycle(options);
                break;
            case 4:
                c = criterion_cordon(options);
                break;
            case 5:
                c = criterion_convexity();
                break;
            case 6:
                c = criterion_sylvester();
                break;
            case 7:
                c = criterion_invariance();
                break;
            case 8:
                c = criterion_reducible(options);
                break;
            case 9:
                c = criterion_configuration();
                break;
            case 10:
                c = criterion_mwis();
                break;
            case 11:
                c = criterion_discretization();
                break;
            default:
                c = criterion_ray(options);
                break;
            }
        } catch (const std::exception& e) {
            c.require(false, std::string("error: ") + e.what());
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        // the spectrum budget applies per call, not to the whole criterion
        const double charged = crit.id == 1 ? eigen_time : r.seconds;
        c.require(charged < crit.budget, "over the " + fmt(crit.budget) + " s budget");
        r.pass = c.pass;
        r.detail = c.report();
        out.push_back(std::move(r));
    }
    return out;
}

std::string format_result(const CriterionResult& r)
{
    char head[128];
    std::snprintf(head, sizeof head, "%s %2d %-15s %-26s %8.3f s  ", r.pass ? "PASS" : "FAIL", r.id, r.tag.c_str(),
                  r.title.c_str(), r.seconds);
    return head + r.detail;
}

} // namespace vaxfront
