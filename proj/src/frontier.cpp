#include "vaxfront/frontier.hpp"

#include "vaxfront/convexity.hpp"
#include "vaxfront/errors.hpp"
#include "vaxfront/independent.hpp"
#include "vaxfront/random.hpp"
#include "vaxfront/spectral.hpp"
#include "vaxfront/structure.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

namespace vaxfront {

namespace {

constexpr int kArmijoIterationCap = 500;
constexpr double kArmijoShrink = 0.5;
constexpr double kArmijoDecrease = 1e-4;
constexpr int kStallWindow = 25;
constexpr double kKinkStep = 1e-6;
constexpr int kPolishEvaluations = 20000;
constexpr double kNonSimplePerturbation = 1e-9;
constexpr int kVertexEnumerationLimit = 20;
constexpr int kGridSearchLimit = 4;
constexpr double kZeroLoss = 1e-8;
constexpr int kScatterGridGroups = 8;
constexpr int kContinuationPasses = 3;

enum class Sense { Minimize, Maximize };

// Transmission matrix with per-group cost weights c_i mu_i.
struct Problem {
    Matrix k;
    Vector w;
    double total = 0.0;
};

Problem make_problem(const MetapopModel& model, const CostFunction& cost)
{
    Problem p{model.matrix(), cost.group_weights(model), 0.0};
    p.total = p.w.sum();
    return p;
}

double sense_sign(Sense s) { return s == Sense::Minimize ? 1.0 : -1.0; }

// Box intersected with {w.x >= b} (minimize) or {w.x <= b} (maximize).
bool feasible(const Problem& p, const Vector& x, double b, Sense s)
{
    const double slack = 1e-13 * std::max(1.0, p.total);
    const double wx = p.w.dot(x);
    return s == Sense::Minimize ? wx >= b - slack : wx <= b + slack;
}

Vector clip01(const Vector& y) { return y.cwiseMax(0.0).cwiseMin(1.0); }

// Euclidean projection: clip(y + tau * dir * w) with tau >= 0 found by
// bisection so that the budget constraint holds with equality.
Vector project(const Problem& p, const Vector& y, double b, Sense s)
{
    Vector z = clip01(y);
    const double wz = p.w.dot(z);
    if (s == Sense::Minimize ? wz >= b : wz <= b) {
        return z;
    }
    const double dir = s == Sense::Minimize ? 1.0 : -1.0;
    double hi = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        const double reach = s == Sense::Minimize ? (1.0 - y(i)) / p.w(i) : y(i) / p.w(i);
        hi = std::max(hi, reach);
    }
    double lo = 0.0;
    for (int it = 0; it < 200 && hi - lo > 1e-17 * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double wm = p.w.dot(clip01(y + mid * dir * p.w));
        const bool ok = s == Sense::Minimize ? wm >= b : wm <= b;
        (ok ? hi : lo) = mid;
    }
    return clip01(y + hi * dir * p.w);
}

bool lex_less_rounded(const Vector& a, const Vector& b)
{
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        const double ra = std::round(a(i) * 1e9);
        const double rb = std::round(b(i) * 1e9);
        if (ra != rb) {
            return ra < rb;
        }
    }
    return false;
}

struct Candidate {
    Vector x;
    double value = 0.0;
};

// Best value under the sense; near-ties go to the lexicographically
// smallest strategy.
const Candidate& pick_best(const std::vector<Candidate>& cands, Sense s)
{
    const double sign = sense_sign(s);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& c : cands) {
        best = std::min(best, sign * c.value);
    }
    const double tie = 1e-12 * std::max(1.0, std::abs(best));
    const Candidate* chosen = nullptr;
    for (const auto& c : cands) {
        if (sign * c.value <= best + tie && (chosen == nullptr || lex_less_rounded(c.x, chosen->x))) {
            chosen = &c;
        }
    }
    return *chosen;
}

// Poll of budget-preserving exchanges (mass moved between two groups) and
// single-group moves toward the budget. The first improving move is taken;
// a poll without one halves the step.
Candidate pattern_search(const Problem& p, Candidate start, double b, Sense s, double delta, double delta_min,
                         int max_evaluations)
{
    const double sign = sense_sign(s);
    const int n = static_cast<int>(p.w.size());
    Candidate cur = std::move(start);
    const double scale = std::max(1.0, std::abs(cur.value));
    int evaluations = 0;
    auto improves = [&](const Vector& y) {
        if ((y.array() < 0.0).any() || (y.array() > 1.0).any() || !feasible(p, y, b, s)) {
            return false;
        }
        ++evaluations;
        const double v = effective_re(p.k, y);
        if (sign * v < sign * cur.value - 1e-15 * scale) {
            cur = {y, v};
            return true;
        }
        return false;
    };
    while (delta > delta_min && evaluations < max_evaluations) {
        bool moved = false;
        for (int i = 0; i < n && !moved; ++i) {
            Vector y = cur.x;
            y(i) += (s == Sense::Minimize ? -delta : delta) / p.w(i);
            moved = improves(y);
            for (int j = 0; j < n && !moved; ++j) {
                if (i == j) {
                    continue;
                }
                y = cur.x;
                y(i) += delta / p.w(i);
                y(j) -= delta / p.w(j);
                moved = improves(y);
            }
        }
        if (!moved) {
            delta *= 0.5;
        }
    }
    return cur;
}

double min_weight(const Problem& p) { return p.w.minCoeff(); }

// Projected gradient with Armijo backtracking. A non-simple Perron root
// gets one tiny perturbation, then the start continues by pattern search.
Candidate descend(const Problem& p, const Vector& x0, double b, Sense s, std::mt19937_64& rng)
{
    const double sign = sense_sign(s);
    const int n = static_cast<int>(p.w.size());
    Vector x = project(p, x0, b, s);
    ReEvaluation e = evaluate_re(p.k, x);
    bool perturbed = false;
    double checkpoint = e.value;
    for (int it = 0; it < kArmijoIterationCap; ++it) {
        if (it > 0 && it % kStallWindow == 0) {
            // progress over the last window too small to matter
            if (sign * (checkpoint - e.value) <= 1e-9 * std::max(1.0, std::abs(e.value))) {
                break;
            }
            checkpoint = e.value;
        }
        if (!e.gradient_ok) {
            if (e.value <= 0.0 && s == Sense::Minimize) {
                break;
            }
            if (!perturbed) {
                perturbed = true;
                const int i = uniform_int(rng, 0, n - 1);
                Vector y = x;
                y(i) += (y(i) < 1.0 ? 1.0 : -1.0) * kNonSimplePerturbation;
                x = project(p, y, b, s);
                e = evaluate_re(p.k, x);
                continue;
            }
            return pattern_search(p, {x, e.value}, b, s, 0.25 * min_weight(p), 1e-6 * min_weight(p), 50 * n * n);
        }
        const Vector g = sign * e.gradient;
        const double gn = g.lpNorm<Eigen::Infinity>();
        if (gn == 0.0) {
            break;
        }
        double step = 0.5 / gn;
        bool moved = false;
        bool stationary = false;
        while (step * gn > 1e-15) {
            Vector y = project(p, x - step * g, b, s);
            const Vector d = x - y;
            if (d.lpNorm<Eigen::Infinity>() <= 1e-14) {
                stationary = true;
                break;
            }
            const double predicted = g.dot(d);
            ReEvaluation ey = evaluate_re(p.k, y);
            if (sign * ey.value <= sign * e.value - kArmijoDecrease * predicted) {
                const double change = std::abs(ey.value - e.value);
                x = std::move(y);
                e = std::move(ey);
                moved = true;
                stationary = change <= 1e-16 * std::max(1.0, std::abs(e.value)) && d.lpNorm<Eigen::Infinity>() <= 1e-12;
                break;
            }
            step *= kArmijoShrink;
        }
        if (!moved || stationary) {
            break;
        }
        if (step * gn < kKinkStep) {
            // accepted steps this short mean two eigenvalues are about to
            // cross; the gradient no longer predicts descent
            return pattern_search(p, {x, e.value}, b, s, 0.25 * min_weight(p), 1e-6 * min_weight(p), 50 * n * n);
        }
    }
    return {x, e.value};
}

Vector greedy_fill(const Problem& p, const std::vector<int>& order, double spend)
{
    // Fully vaccinate groups in `order` until `spend` is used up.
    Vector x = Vector::Ones(p.w.size());
    double left = spend;
    for (int i : order) {
        if (left <= 0.0) {
            break;
        }
        const double take = std::min(left, p.w(i));
        x(i) = std::max(0.0, 1.0 - take / p.w(i));
        left -= take;
    }
    return x;
}

std::vector<Vector> starting_points(const Problem& p, double c, int count, std::uint64_t seed)
{
    const int n = static_cast<int>(p.w.size());
    const double b = p.total - c;
    std::vector<Vector> out;
    out.push_back(Vector::Constant(n, std::clamp(b / p.total, 0.0, 1.0)));
    if (count <= 1) {
        return out;
    }
    const ReEvaluation at_one = evaluate_re(p.k, Vector::Ones(n));
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    if (at_one.gradient_ok) {
        std::stable_sort(order.begin(), order.end(), [&](int a, int bb) {
            return at_one.gradient(a) / p.w(a) > at_one.gradient(bb) / p.w(bb);
        });
    }
    out.push_back(greedy_fill(p, order, c));
    for (int s = 2; s < count; ++s) {
        auto rng = stream_rng(seed, static_cast<std::uint64_t>(s));
        if (s % 2 == 0) {
            std::vector<int> perm(order);
            for (int i = n - 1; i > 0; --i) {
                std::swap(perm[i], perm[uniform_int(rng, 0, i)]);
            }
            out.push_back(greedy_fill(p, perm, c));
        } else {
            Vector x(n);
            for (int i = 0; i < n; ++i) {
                x(i) = uniform01(rng);
            }
            out.push_back(x);
        }
    }
    return out;
}

SolveResult finish(const Candidate& c, PointStatus status)
{
    return {c.value, Strategy(clip01(c.x)), status};
}

SolveResult grid_search(const Problem& p, double c, int resolution)
{
    const int n = static_cast<int>(p.w.size());
    if (n > kGridSearchLimit) {
        throw BudgetExceeded("grid search is limited to " + std::to_string(kGridSearchLimit) + " groups");
    }
    const double b = p.total - c;
    Candidate best{Vector::Zero(n), std::numeric_limits<double>::infinity()};
    std::vector<int> digits(static_cast<std::size_t>(std::max(0, n - 1)), 0);
    while (true) {
        Vector x(n);
        double used = 0.0;
        for (int i = 0; i + 1 < n; ++i) {
            x(i) = static_cast<double>(digits[i]) / resolution;
            used += p.w(i) * x(i);
        }
        const double last = (b - used) / p.w(n - 1);
        if (last <= 1.0 + 1e-12) {
            x(n - 1) = std::clamp(last, 0.0, 1.0);
            const double v = effective_re(p.k, x);
            if (v < best.value) {
                best = {x, v};
            }
        }
        int pos = 0;
        while (pos < n - 1 && digits[pos] == resolution) {
            digits[pos++] = 0;
        }
        if (pos == n - 1) {
            break;
        }
        ++digits[pos];
    }
    return finish(best, PointStatus::MultiStartBest);
}

bool convex_problem(const Problem& p, const SolverOptions& opt)
{
    if (opt.ignore_convexity) {
        return false;
    }
    auto convex_verdict = [](const Matrix& k) {
        const Verdict v = classify_convexity(k).verdict;
        return v == Verdict::Convex || v == Verdict::Linear;
    };
    if (convex_verdict(p.k)) {
        return true;
    }
    // R_e is the largest of the atom radii, so convex atoms suffice
    const FrobeniusDecomposition d = frobenius_decompose(MetapopModel::with_uniform_weights(p.k));
    if (d.atoms.size() < 2 && d.remainder.empty()) {
        return false;
    }
    for (const IndexSet& atom : d.atoms) {
        const auto m = static_cast<Eigen::Index>(atom.size());
        Matrix sub(m, m);
        for (Eigen::Index a = 0; a < m; ++a) {
            for (Eigen::Index c = 0; c < m; ++c) {
                sub(a, c) = p.k(atom[a], atom[c]);
            }
        }
        if (!convex_verdict(sub)) {
            return false;
        }
    }
    return true;
}

// Moves a strategy onto w.x = b: raised uniformly toward 1 when it spends
// too much, shrunk toward 0 when it spends too little.
Vector bind_to_budget(const Problem& p, const Vector& x, double b)
{
    const int n = static_cast<int>(x.size());
    const double wx = p.w.dot(x);
    if (wx > b) {
        return x * (b / wx);
    }
    const double missing = p.w.dot(Vector::Ones(n) - x);
    const double t = missing > 0.0 ? std::clamp((b - wx) / missing, 0.0, 1.0) : 1.0;
    return x + t * (Vector::Ones(n) - x);
}

SolveResult solve_min(const Problem& p, double c, const SolverOptions& opt, bool convex,
                      const std::vector<Vector>& hints)
{
    const int n = static_cast<int>(p.w.size());
    if (c >= p.total) {
        return {0.0, Strategy::zeros(n), PointStatus::Converged};
    }
    if (c <= 0.0) {
        return {spectral_radius(p.k), Strategy::ones(n), PointStatus::Converged};
    }
    const double b = p.total - c;
    std::vector<Candidate> cands;
    std::vector<Vector> scaled_hints;
    for (const Vector& h : hints) {
        if (h.size() != n) {
            continue;
        }
        if (feasible(p, h, b, Sense::Minimize)) {
            cands.push_back({h, effective_re(p.k, h)});
        } else {
            scaled_hints.push_back(bind_to_budget(p, h, b));
        }
    }
    if (!cands.empty() && pick_best(cands, Sense::Minimize).value <= 0.0) {
        return finish(pick_best(cands, Sense::Minimize), PointStatus::Converged);
    }
    const int count = convex ? 1 : std::max(1, opt.starts);
    auto starts = starting_points(p, c, count, opt.seed);
    if (!convex) {
        starts.insert(starts.end(), scaled_hints.begin(), scaled_hints.end());
    }
    for (std::size_t s = 0; s < starts.size(); ++s) {
        auto rng = stream_rng(opt.seed, 1000 + s);
        cands.push_back(descend(p, starts[s], b, Sense::Minimize, rng));
    }
    Candidate best = pick_best(cands, Sense::Minimize);
    if (best.value > 0.0) {
        best = pattern_search(p, best, b, Sense::Minimize, 0.05 * min_weight(p), 1e-11 * min_weight(p), kPolishEvaluations);
    }
    PointStatus status = convex ? PointStatus::Converged : PointStatus::MultiStartBest;
    if (opt.cross_validate && n <= kGridSearchLimit) {
        const SolveResult g = grid_search(p, c, 64);
        if (g.loss < best.value) {
            best = {g.strategy.values(), g.loss};
            status = PointStatus::MultiStartBest;
        }
    }
    return finish(best, status);
}

// Vertices of box ∩ {w.x = b}: every coordinate in {0, 1} except at most one.
std::vector<Candidate> enumerate_vertices(const Problem& p, double b)
{
    const int n = static_cast<int>(p.w.size());
    std::vector<double> suffix(static_cast<std::size_t>(n + 1), 0.0);
    for (int i = n - 1; i >= 0; --i) {
        suffix[i] = suffix[i + 1] + p.w(i);
    }
    const double slack = 1e-13 * std::max(1.0, p.total);
    std::vector<Candidate> out;
    Vector x = Vector::Zero(n);
    auto leaf = [&](double used) {
        for (int f = 0; f < n; ++f) {
            if (x(f) != 0.0 || used + p.w(f) < b - slack) {
                continue;
            }
            Vector y = x;
            y(f) = std::clamp((b - used) / p.w(f), 0.0, 1.0);
            out.push_back({y, effective_re(p.k, y)});
        }
        if (std::abs(used - b) <= slack) {
            out.push_back({x, effective_re(p.k, x)});
        }
    };
    auto rec = [&](auto&& self, int i, double used) -> void {
        if (used > b + slack) {
            return;
        }
        // one more full group plus one fractional group must still reach b
        if (used + suffix[i] + p.w.maxCoeff() < b - slack) {
            return;
        }
        if (i == n) {
            leaf(used);
            return;
        }
        x(i) = 1.0;
        self(self, i + 1, used + p.w(i));
        x(i) = 0.0;
        self(self, i + 1, used);
    };
    rec(rec, 0, 0.0);
    return out;
}

SolveResult solve_max(const Problem& p, double c, const SolverOptions& opt, bool convex)
{
    const int n = static_cast<int>(p.w.size());
    if (c <= 0.0) {
        return {spectral_radius(p.k), Strategy::ones(n), PointStatus::VertexEnumerated};
    }
    if (c >= p.total) {
        return {0.0, Strategy::zeros(n), PointStatus::VertexEnumerated};
    }
    const double b = p.total - c;
    std::vector<Candidate> cands;
    if (n <= kVertexEnumerationLimit) {
        cands = enumerate_vertices(p, b);
        if (convex && !cands.empty()) {
            return finish(pick_best(cands, Sense::Maximize), PointStatus::VertexEnumerated);
        }
    } else if (!opt.allow_heuristic) {
        throw BudgetExceeded("vertex enumeration is limited to " + std::to_string(kVertexEnumerationLimit) +
                             " groups; enable the heuristic to proceed");
    }
    std::vector<Vector> starts;
    if (!cands.empty()) {
        starts.push_back(pick_best(cands, Sense::Maximize).x);
    }
    const int extra = std::max(1, opt.starts / 4);
    starts.push_back(Vector::Constant(n, std::clamp(b / p.total, 0.0, 1.0)));
    for (int s = 1; s < extra; ++s) {
        auto rng = stream_rng(opt.seed, 5000 + static_cast<std::uint64_t>(s));
        Vector x(n);
        for (int i = 0; i < n; ++i) {
            x(i) = uniform01(rng);
        }
        starts.push_back(x);
    }
    for (std::size_t s = 0; s < starts.size(); ++s) {
        auto rng = stream_rng(opt.seed, 6000 + s);
        cands.push_back(descend(p, starts[s], b, Sense::Maximize, rng));
    }
    Candidate best = pick_best(cands, Sense::Maximize);
    best = pattern_search(p, best, b, Sense::Maximize, 0.05 * min_weight(p), 1e-11 * min_weight(p), kPolishEvaluations);
    return finish(best, PointStatus::MultiStartBest);
}

template <class Fn>
void parallel_for(int count, int threads, Fn&& fn)
{
    if (threads <= 1 || count <= 1) {
        for (int i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    const int workers = std::min(threads, count);
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
            for (int i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) {
                        error = std::current_exception();
                    }
                }
            }
        });
    }
    for (auto& th : pool) {
        th.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

SolverOptions grid_options(const SolverOptions& opt, int index)
{
    SolverOptions o = opt;
    o.seed = splitmix64(opt.seed ^ (0x51ed270b27f1c3a5ULL * static_cast<std::uint64_t>(index + 1)));
    return o;
}

// Model and cost that reproduce a Problem on a subset of groups: weights
// normalized into group sizes, the total carried by a constant coefficient.
std::pair<MetapopModel, CostFunction> sub_problem(const Problem& p, const IndexSet& groups)
{
    const auto m = static_cast<Eigen::Index>(groups.size());
    Matrix k(m, m);
    Vector w(m);
    for (Eigen::Index a = 0; a < m; ++a) {
        w(a) = p.w(groups[a]);
        for (Eigen::Index c = 0; c < m; ++c) {
            k(a, c) = p.k(groups[a], groups[c]);
        }
    }
    const double total = w.sum();
    return {MetapopModel(std::move(k), w / total), CostFunction::affine(Vector::Constant(m, total))};
}

double steepest_slope(const FrontierCurve& curve)
{
    double slope = 0.0;
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        const double dc = curve.points[i].cost - curve.points[i - 1].cost;
        if (dc > 0.0) {
            slope = std::max(slope, std::abs(curve.points[i].loss - curve.points[i - 1].loss) / dc);
        }
    }
    return slope;
}

double grid_step(const FrontierCurve& curve)
{
    return curve.grid_resolution > 0 && curve.points.size() > 1
               ? (curve.points.back().cost - curve.points.front().cost) / curve.grid_resolution
               : 0.0;
}

} // namespace

std::string to_string(FrontierKind k) { return k == FrontierKind::Pareto ? "pareto" : "anti"; }

std::string to_string(PointStatus s)
{
    switch (s) {
    case PointStatus::Converged:
        return "Converged";
    case PointStatus::MultiStartBest:
        return "MultiStartBest";
    case PointStatus::VertexEnumerated:
        break;
    }
    return "VertexEnumerated";
}

int frontier_threads(const SolverOptions& options)
{
    if (options.threads > 0) {
        return options.threads;
    }
    if (const char* env = std::getenv("VAXFRONT_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) {
            return v;
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

SolveResult optimal_loss(const MetapopModel& model, const CostFunction& cost, double c, const SolverOptions& options)
{
    const Problem p = make_problem(model, cost);
    if (!(c >= 0.0 && c <= p.total * (1.0 + 1e-12))) {
        throw ValidationError("cost level must lie in [0, c_max]");
    }
    std::vector<Vector> hints;
    if (model.size() <= kIndependentSetBudget) {
        hints.push_back(eradication_cost(model, cost).strategy.values());
    }
    return solve_min(p, c, options, convex_problem(p, options), hints);
}

SolveResult optimal_loss_max(const MetapopModel& model, const CostFunction& cost, double c,
                             const SolverOptions& options)
{
    const Problem p = make_problem(model, cost);
    if (!(c >= 0.0 && c <= p.total * (1.0 + 1e-12))) {
        throw ValidationError("cost level must lie in [0, c_max]");
    }
    return solve_max(p, c, options, convex_problem(p, options));
}

SolveResult grid_search_loss(const MetapopModel& model, const CostFunction& cost, double c, int resolution)
{
    const Problem p = make_problem(model, cost);
    if (c >= p.total) {
        return {0.0, Strategy::zeros(model.size()), PointStatus::MultiStartBest};
    }
    return grid_search(p, c, resolution);
}

double anti_threshold_cost(const MetapopModel& model, const CostFunction& cost)
{
    const FrobeniusDecomposition d = frobenius_decompose(model);
    if (d.atoms.empty()) {
        return cost.max_cost(model);
    }
    const double r0 = *std::max_element(d.atom_radii.begin(), d.atom_radii.end());
    double best = 0.0;
    for (std::size_t a = 0; a < d.atoms.size(); ++a) {
        if (d.atom_radii[a] >= r0 * (1.0 - 1e-9)) {
            best = std::max(best, vaxfront::cost(cost, model, Strategy::indicator(model.size(), d.atoms[a])));
        }
    }
    return best;
}

namespace {

// Local descent from the strategies of neighbouring grid points.
bool continue_from_neighbours(const Problem& p, std::vector<FrontierPoint>& points, int k,
                              const std::vector<Vector>& neighbours, std::uint64_t seed)
{
    const double b = p.total - points[k].cost;
    Candidate best{points[k].strategy.values(), points[k].loss};
    for (std::size_t s = 0; s < neighbours.size(); ++s) {
        auto rng = stream_rng(seed, 5000 + s);
        Candidate c = descend(p, bind_to_budget(p, neighbours[s], b), b, Sense::Minimize, rng);
        if (c.value > 0.0) {
            c = pattern_search(p, c, b, Sense::Minimize, 0.05 * min_weight(p), 1e-11 * min_weight(p),
                               kPolishEvaluations);
        }
        if (c.value < best.value - kZeroLoss * std::max(1.0, best.value)) {
            best = c;
        }
    }
    if (best.value < points[k].loss) {
        const SolveResult r = finish(best, PointStatus::MultiStartBest);
        points[k].loss = r.loss;
        points[k].strategy = r.strategy;
        points[k].status = r.status;
        return true;
    }
    return false;
}

} // namespace

FrontierCurve pareto_frontier(const MetapopModel& model, const CostFunction& cost, int resolution,
                              const SolverOptions& options)
{
    if (resolution < 2) {
        throw ValidationError("resolution must be at least 2");
    }
    const int n = model.size();
    const Problem p = make_problem(model, cost);
    FrontierCurve curve;
    curve.kind = FrontierKind::Pareto;
    curve.grid_resolution = resolution;
    curve.r0 = spectral_radius(p.k);
    curve.max_cost = p.total;
    if (curve.r0 <= 0.0) {
        curve.points.push_back({0.0, 0.0, Strategy::ones(n), PointStatus::Converged});
        return curve;
    }

    std::vector<Vector> hints;
    double upper = p.total;
    bool exact = false;
    Strategy eradicate = Strategy::zeros(n);
    if (n <= kIndependentSetBudget) {
        const EradicationResult e = eradication_cost(model, cost);
        upper = e.cstar;
        exact = e.exact;
        eradicate = e.strategy;
        hints.push_back(e.strategy.values());
    }
    const bool convex = convex_problem(p, options);
    curve.points.resize(static_cast<std::size_t>(resolution + 1));
    curve.points.front() = {0.0, curve.r0, Strategy::ones(n), PointStatus::Converged};
    curve.points.back() = {upper, 0.0, eradicate, PointStatus::Converged};
    parallel_for(resolution - 1, frontier_threads(options), [&](int idx) {
        const int k = idx + 1;
        const double c = upper * k / resolution;
        const SolveResult r = solve_min(p, c, grid_options(options, k), convex, hints);
        curve.points[k] = {c, r.loss, r.strategy, r.status};
    });
    if (!convex) {
        // independent multi-starts can land in different basins at adjacent costs
        for (int pass = 0; pass < kContinuationPasses; ++pass) {
            const std::vector<FrontierPoint> snapshot = curve.points;
            std::vector<char> improved(static_cast<std::size_t>(resolution + 1), 0);
            parallel_for(resolution - 1, frontier_threads(options), [&](int idx) {
                const int k = idx + 1;
                improved[k] = continue_from_neighbours(
                    p, curve.points, k, {snapshot[k - 1].strategy.values(), snapshot[k + 1].strategy.values()},
                    grid_options(options, k).seed);
            });
            if (std::none_of(improved.begin(), improved.end(), [](char c) { return c != 0; })) {
                break;
            }
        }
    }
    for (int k = 1; k <= resolution; ++k) {
        // a cheaper point's strategy stays feasible at a larger budget
        if (curve.points[k].loss > curve.points[k - 1].loss) {
            curve.points[k].loss = curve.points[k - 1].loss;
            curve.points[k].strategy = curve.points[k - 1].strategy;
            curve.points[k].status = curve.points[k - 1].status;
        }
    }
    curve.threshold_cost = upper;
    if (!exact) {
        for (const auto& pt : curve.points) {
            if (pt.loss <= kZeroLoss) {
                curve.threshold_cost = pt.cost;
                break;
            }
        }
    }
    return curve;
}

FrontierCurve anti_pareto_frontier(const MetapopModel& model, const CostFunction& cost, int resolution,
                                   const SolverOptions& options)
{
    if (resolution < 2) {
        throw ValidationError("resolution must be at least 2");
    }
    const int n = model.size();
    const Problem p = make_problem(model, cost);
    FrontierCurve curve;
    curve.kind = FrontierKind::AntiPareto;
    curve.grid_resolution = resolution;
    curve.r0 = spectral_radius(p.k);
    curve.max_cost = p.total;
    const FrobeniusDecomposition d = frobenius_decompose(model);
    if (curve.r0 <= 0.0 || d.atoms.empty()) {
        curve.threshold_cost = p.total;
        curve.points.push_back({p.total, 0.0, Strategy::zeros(n), PointStatus::VertexEnumerated});
        return curve;
    }
    // atom carrying R_0 with the most expensive complement
    double lower = -1.0;
    Strategy plateau = Strategy::ones(n);
    for (std::size_t a = 0; a < d.atoms.size(); ++a) {
        if (d.atom_radii[a] >= curve.r0 * (1.0 - 1e-9)) {
            const Strategy s = Strategy::indicator(n, d.atoms[a]);
            const double c = vaxfront::cost(cost, model, s);
            if (c > lower) {
                lower = c;
                plateau = s;
            }
        }
    }
    curve.threshold_cost = lower;
    const bool convex = convex_problem(p, options);
    curve.points.resize(static_cast<std::size_t>(resolution + 1));
    curve.points.front() = {lower, curve.r0, plateau, PointStatus::VertexEnumerated};
    curve.points.back() = {p.total, 0.0, Strategy::zeros(n), PointStatus::VertexEnumerated};
    parallel_for(resolution - 1, frontier_threads(options), [&](int idx) {
        const int k = idx + 1;
        const double c = lower + (p.total - lower) * k / resolution;
        const SolveResult r = solve_max(p, c, grid_options(options, k), convex);
        curve.points[k] = {c, r.loss, r.strategy, r.status};
    });
    for (int k = resolution - 1; k >= 0; --k) {
        // a costlier point's strategy stays feasible at a smaller cost floor
        if (curve.points[k].loss < curve.points[k + 1].loss) {
            curve.points[k].loss = curve.points[k + 1].loss;
            curve.points[k].strategy = curve.points[k + 1].strategy;
            curve.points[k].status = curve.points[k + 1].status;
        }
    }
    const double jump = 10.0 * curve.r0 / resolution;
    for (int k = 0; k < resolution; ++k) {
        if (std::abs(curve.points[k + 1].loss - curve.points[k].loss) > jump) {
            curve.jumps.push_back(k);
        }
    }
    return curve;
}

double interpolate_loss(const FrontierCurve& curve, double c)
{
    const auto& pts = curve.points;
    if (pts.empty()) {
        return 0.0;
    }
    if (c <= pts.front().cost) {
        return curve.kind == FrontierKind::AntiPareto ? curve.r0 : pts.front().loss;
    }
    if (c >= pts.back().cost) {
        return pts.back().loss;
    }
    const auto it = std::upper_bound(pts.begin(), pts.end(), c,
                                     [](double v, const FrontierPoint& pt) { return v < pt.cost; });
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    const double span = hi.cost - lo.cost;
    if (span <= 0.0) {
        return hi.loss;
    }
    const double t = (c - lo.cost) / span;
    return lo.loss + t * (hi.loss - lo.loss);
}

ReducibleAssembly assemble_reducible(const MetapopModel& model, const CostFunction& cost, int resolution,
                                     const SolverOptions& options)
{
    const FrobeniusDecomposition d = frobenius_decompose(model);
    if (d.atoms.empty()) {
        throw PreconditionFailed("assembly needs at least one atom");
    }
    const int n = model.size();
    const Problem p = make_problem(model, cost);
    ReducibleAssembly out;
    out.direct_pareto = pareto_frontier(model, cost, resolution, options);
    out.direct_anti = anti_pareto_frontier(model, cost, resolution, options);

    struct AtomProblem {
        MetapopModel model;
        CostFunction cost;
        double r0;
        double outside_cost;
    };
    std::vector<AtomProblem> atoms;
    const int atom_resolution = std::max(4 * resolution, 32);
    for (std::size_t a = 0; a < d.atoms.size(); ++a) {
        auto [m, c] = sub_problem(p, d.atoms[a]);
        const double outside = vaxfront::cost(cost, model, Strategy::indicator(n, d.atoms[a]));
        AtomFrontier af;
        af.atom = d.atoms[a];
        af.r0 = d.atom_radii[a];
        af.pareto = pareto_frontier(m, c, atom_resolution, options);
        out.per_atom.push_back(std::move(af));
        atoms.push_back({std::move(m), std::move(c), d.atom_radii[a], outside});
    }

    // Smallest atom budget reaching loss <= level, read off its frontier.
    auto atom_cost_for = [&](std::size_t a, double level) {
        const FrontierCurve& fc = out.per_atom[a].pareto;
        if (level >= atoms[a].r0) {
            return 0.0;
        }
        for (std::size_t i = 1; i < fc.points.size(); ++i) {
            const auto& lo = fc.points[i - 1];
            const auto& hi = fc.points[i];
            if (hi.loss <= level) {
                if (lo.loss <= hi.loss) {
                    return lo.cost;
                }
                const double t = (lo.loss - level) / (lo.loss - hi.loss);
                return lo.cost + t * (hi.cost - lo.cost);
            }
        }
        return fc.points.back().cost;
    };
    auto total_cost_for = [&](double level) {
        double total = 0.0;
        for (std::size_t a = 0; a < atoms.size(); ++a) {
            total += atom_cost_for(a, level);
        }
        return total;
    };

    out.pareto = out.direct_pareto;
    const int pr = static_cast<int>(out.pareto.points.size()) - 1;
    parallel_for(std::max(0, pr - 1), frontier_threads(options), [&](int idx) {
        const int k = idx + 1;
        FrontierPoint& pt = out.pareto.points[k];
        double lo = 0.0;
        double hi = out.pareto.r0;
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            (total_cost_for(mid) <= pt.cost ? hi : lo) = mid;
        }
        Vector eta = Vector::Ones(n);
        for (std::size_t a = 0; a < atoms.size(); ++a) {
            if (hi >= atoms[a].r0) {
                continue;
            }
            const double budget = std::min(atom_cost_for(a, hi), atoms[a].cost.max_cost(atoms[a].model));
            const SolveResult r = optimal_loss(atoms[a].model, atoms[a].cost, budget, grid_options(options, k));
            for (std::size_t j = 0; j < d.atoms[a].size(); ++j) {
                eta(d.atoms[a][j]) = r.strategy[static_cast<int>(j)];
            }
        }
        pt.strategy = Strategy(eta);
        pt.loss = effective_re(model, pt.strategy);
        pt.status = PointStatus::MultiStartBest;
    });

    out.anti = out.direct_anti;
    const int ar = static_cast<int>(out.anti.points.size()) - 1;
    parallel_for(std::max(0, ar - 1), frontier_threads(options), [&](int idx) {
        const int k = idx + 1;
        FrontierPoint& pt = out.anti.points[k];
        double best = -1.0;
        Vector best_eta;
        for (std::size_t a = 0; a < atoms.size(); ++a) {
            Vector eta = Vector::Zero(n);
            double value = atoms[a].r0;
            if (pt.cost <= atoms[a].outside_cost) {
                for (int v : d.atoms[a]) {
                    eta(v) = 1.0;
                }
            } else {
                const double inside = std::min(pt.cost - atoms[a].outside_cost, atoms[a].cost.max_cost(atoms[a].model));
                const SolveResult r = optimal_loss_max(atoms[a].model, atoms[a].cost, inside, grid_options(options, k));
                value = r.loss;
                for (std::size_t j = 0; j < d.atoms[a].size(); ++j) {
                    eta(d.atoms[a][j]) = r.strategy[static_cast<int>(j)];
                }
            }
            if (value > best) {
                best = value;
                best_eta = std::move(eta);
            }
        }
        pt.strategy = Strategy(best_eta);
        pt.loss = effective_re(model, pt.strategy);
        pt.status = PointStatus::MultiStartBest;
    });

    auto deviation = [](const FrontierCurve& a, const FrontierCurve& b) {
        double dev = 0.0;
        for (std::size_t i = 0; i < a.points.size() && i < b.points.size(); ++i) {
            dev = std::max(dev, std::abs(a.points[i].loss - b.points[i].loss));
        }
        return dev;
    };
    out.pareto_deviation = deviation(out.pareto, out.direct_pareto);
    out.anti_deviation = deviation(out.anti, out.direct_anti);
    out.pareto_slack = 2.0 * grid_step(out.direct_pareto) *
                           std::max(steepest_slope(out.direct_pareto), steepest_slope(out.pareto)) +
                       1e-6;
    out.anti_slack =
        2.0 * grid_step(out.direct_anti) * std::max(steepest_slope(out.direct_anti), steepest_slope(out.anti)) +
        1e-6;
    out.matches = out.pareto_deviation <= out.pareto_slack && out.anti_deviation <= out.anti_slack;
    return out;
}

RayCheck optimal_ray_check(const MetapopModel& model, const CostFunction& cost, const Strategy& eta_star,
                           const SolverOptions& options)
{
    const Verdict v = classify_convexity(model).verdict;
    if (v != Verdict::Convex && v != Verdict::Linear) {
        throw PreconditionFailed("optimal ray check needs a convex R_e");
    }
    if (eta_star.size() != model.size()) {
        throw DimensionMismatch("strategy length does not match the model");
    }
    const double top = eta_star.values().maxCoeff();
    if (!(top > 0.0 && top < 1.0)) {
        throw PreconditionFailed("optimal ray check needs 0 < max(eta) < 1");
    }
    constexpr int kRayPoints = 16;
    RayCheck out;
    out.all_pass = true;
    for (int i = 0; i < kRayPoints; ++i) {
        const double lambda = (static_cast<double>(i) / (kRayPoints - 1)) / top;
        const Strategy eta(clip01(lambda * eta_star.values()));
        const double c = vaxfront::cost(cost, model, eta);
        const double loss = effective_re(model, eta);
        double best = 0.0;
        if (i > 0) {
            best = std::min(loss, optimal_loss(model, cost, c, grid_options(options, i)).loss);
        }
        const bool ok = loss - best <= kRayTolerance;
        out.lambdas.push_back(lambda);
        out.costs.push_back(c);
        out.losses.push_back(loss);
        out.optimal.push_back(best);
        out.pass.push_back(ok);
        out.all_pass = out.all_pass && ok;
    }
    return out;
}

std::vector<FeasibleSample> feasible_region_sample(const MetapopModel& model, const CostFunction& cost, int samples,
                                                   std::uint64_t seed, bool include_grid)
{
    if (samples < 1) {
        throw ValidationError("need at least one sample");
    }
    const int n = model.size();
    const Problem p = make_problem(model, cost);
    std::vector<FeasibleSample> out;
    auto record = [&](const Vector& x) { out.push_back({p.total - p.w.dot(x), effective_re(p.k, x)}); };
    for (int s = 0; s < samples; ++s) {
        auto rng = stream_rng(seed, static_cast<std::uint64_t>(s));
        Vector x(n);
        for (int i = 0; i < n; ++i) {
            x(i) = uniform01(rng);
        }
        record(x);
    }
    if (!include_grid || n > kScatterGridGroups) {
        return out;
    }
    // fractional positions (at most two), values in {1/8..7/8}, the rest binary
    auto binary_fill = [&](Vector x, const std::vector<int>& free) {
        const std::uint32_t combos = 1u << free.size();
        for (std::uint32_t mask = 0; mask < combos; ++mask) {
            for (std::size_t b = 0; b < free.size(); ++b) {
                x(free[b]) = (mask >> b) & 1u ? 1.0 : 0.0;
            }
            record(x);
        }
    };
    auto others = [&](int a, int b) {
        std::vector<int> f;
        for (int i = 0; i < n; ++i) {
            if (i != a && i != b) {
                f.push_back(i);
            }
        }
        return f;
    };
    binary_fill(Vector::Zero(n), others(-1, -1));
    for (int a = 0; a < n; ++a) {
        for (int va = 1; va < 8; ++va) {
            Vector x = Vector::Zero(n);
            x(a) = va / 8.0;
            binary_fill(x, others(a, -1));
            for (int b = a + 1; b < n; ++b) {
                for (int vb = 1; vb < 8; ++vb) {
                    x(b) = vb / 8.0;
                    binary_fill(x, others(a, b));
                }
                x(b) = 0.0;
            }
        }
    }
    return out;
}

} // namespace vaxfront
