#pragma once

#include "vaxfront/model.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace vaxfront {

enum class FrontierKind { Pareto, AntiPareto };

enum class PointStatus { Converged, MultiStartBest, VertexEnumerated };

std::string to_string(FrontierKind k);
std::string to_string(PointStatus s);

struct FrontierPoint {
    double cost = 0.0;
    double loss = 0.0;
    Strategy strategy{Vector()};
    PointStatus status = PointStatus::Converged;
};

struct FrontierCurve {
    FrontierKind kind = FrontierKind::Pareto;
    int grid_resolution = 0;
    /// Sorted by increasing cost.
    std::vector<FrontierPoint> points;
    /// c_star (eradication cost) for Pareto curves, c^star for anti-Pareto.
    double threshold_cost = 0.0;
    double r0 = 0.0;
    double max_cost = 0.0;
    /// Anti-Pareto only: indices i where the loss drops sharply between
    /// points i and i + 1.
    std::vector<int> jumps;
};

struct SolverOptions {
    /// Starts for non-convex problems.
    int starts = 16;
    std::uint64_t seed = 0;
    /// Permit ascent without vertex enumeration above 20 groups.
    bool allow_heuristic = false;
    /// Parallel tasks; 0 reads VAXFRONT_THREADS, falling back to the
    /// hardware concurrency.
    int threads = 0;
    /// For at most 4 groups, also scan a 1/64 grid and keep the better value.
    bool cross_validate = false;
    /// Force the multi-start path even for convex problems.
    bool ignore_convexity = false;
};

struct SolveResult {
    double loss = 0.0;
    Strategy strategy{Vector()};
    PointStatus status = PointStatus::Converged;
};

/// min R_e(eta) subject to C(eta) <= c.
SolveResult optimal_loss(const MetapopModel& model, const CostFunction& cost, double c,
                         const SolverOptions& options = {});

/// max R_e(eta) subject to C(eta) >= c.
SolveResult optimal_loss_max(const MetapopModel& model, const CostFunction& cost, double c,
                             const SolverOptions& options = {});

/// Exhaustive scan of strategies whose first N-1 coordinates lie on a grid
/// of step 1/resolution, the last one spending the remaining budget.
/// Limited to 4 groups.
SolveResult grid_search_loss(const MetapopModel& model, const CostFunction& cost, double c, int resolution = 64);

/// Largest cost that still leaves R_e = R_0: the most expensive
/// complement of an atom carrying the full radius.
double anti_threshold_cost(const MetapopModel& model, const CostFunction& cost);

FrontierCurve pareto_frontier(const MetapopModel& model, const CostFunction& cost, int resolution = 64,
                              const SolverOptions& options = {});

FrontierCurve anti_pareto_frontier(const MetapopModel& model, const CostFunction& cost, int resolution = 64,
                                   const SolverOptions& options = {});

/// Piecewise-linear reading of a frontier, extended by R_0 to the left of
/// an anti-Pareto curve and by 0 to the right of a Pareto curve.
double interpolate_loss(const FrontierCurve& curve, double c);

struct AtomFrontier {
    IndexSet atom;
    double r0 = 0.0;
    /// Restricted to the atom, costs counted on the atom only.
    FrontierCurve pareto;
};

struct ReducibleAssembly {
    FrontierCurve pareto;
    FrontierCurve anti;
    std::vector<AtomFrontier> per_atom;
    FrontierCurve direct_pareto;
    FrontierCurve direct_anti;
    double pareto_deviation = 0.0;
    double anti_deviation = 0.0;
    /// 2 * grid step * steepest adjacent slope + 1e-6.
    double pareto_slack = 0.0;
    double anti_slack = 0.0;
    bool matches = false;
};

/// Frontiers rebuilt from the per-atom problems and compared with the
/// whole-matrix frontiers on the same cost grids.
ReducibleAssembly assemble_reducible(const MetapopModel& model, const CostFunction& cost, int resolution = 64,
                                     const SolverOptions& options = {});

struct RayCheck {
    std::vector<double> lambdas;
    std::vector<double> costs;
    std::vector<double> losses;
    /// Best known minimum at the same cost.
    std::vector<double> optimal;
    std::vector<bool> pass;
    bool all_pass = false;
};

inline constexpr double kRayTolerance = 1e-6;

/// Checks that lambda * eta_star stays Pareto optimal on 16 values of
/// lambda in [0, 1 / max(eta_star)]. Requires a Convex or Linear verdict and
/// 0 < max(eta_star) < 1, else throws PreconditionFailed.
RayCheck optimal_ray_check(const MetapopModel& model, const CostFunction& cost, const Strategy& eta_star,
                           const SolverOptions& options = {});

struct FeasibleSample {
    double cost = 0.0;
    double loss = 0.0;
};

/// Uniform random strategies, plus for at most 8 groups every strategy
/// with at most two coordinates in {1/8, ..., 7/8} and the rest in {0, 1}.
std::vector<FeasibleSample> feasible_region_sample(const MetapopModel& model, const CostFunction& cost, int samples,
                                                   std::uint64_t seed, bool include_grid = true);

/// Number of worker threads the frontier sweeps will use.
int frontier_threads(const SolverOptions& options);

} // namespace vaxfront
