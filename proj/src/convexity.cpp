#include "vaxfront/convexity.hpp"

#include "vaxfront/errors.hpp"
#include "vaxfront/random.hpp"
#include "vaxfront/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace vaxfront {

namespace {

constexpr double kBalanceTolerance = 1e-8;
constexpr double kRankOneTolerance = 1e-10;

} // namespace

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::Convex:
        return "Convex";
    case Verdict::Concave:
        return "Concave";
    case Verdict::Linear:
        return "Linear";
    case Verdict::Indeterminate:
        break;
    }
    return "Indeterminate";
}

std::string to_string(VerdictReason r)
{
    switch (r) {
    case VerdictReason::SymmetrizablePSD:
        return "SymmetrizablePSD";
    case VerdictReason::SymmetrizableSingleP:
        return "SymmetrizableSingleP";
    case VerdictReason::ConfigurationRankOne:
        return "ConfigurationRankOne";
    case VerdictReason::NotSymmetrizable:
        return "NotSymmetrizable";
    case VerdictReason::MixedInertia:
        return "MixedInertia";
    case VerdictReason::EmpiricalProbe:
        break;
    }
    return "EmpiricalProbe";
}

SymmetrizabilityResult symmetrize(const MetapopModel& model) { return symmetrize(model.matrix()); }

SymmetrizabilityResult symmetrize(const Matrix& k)
{
    const int n = static_cast<int>(k.rows());
    SymmetrizabilityResult out;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if ((k(i, j) > 0.0) != (k(j, i) > 0.0)) {
                return out;
            }
        }
    }

    // Groups with empty row and column keep d = 1. Elsewhere d spreads
    // along a spanning forest of the off-diagonal support.
    Vector d = Vector::Ones(n);
    std::vector<int> component(static_cast<std::size_t>(n), -1);
    int components = 0;
    for (int root = 0; root < n; ++root) {
        if (component[root] >= 0) {
            continue;
        }
        component[root] = components;
        std::vector<int> members{root};
        for (std::size_t head = 0; head < members.size(); ++head) {
            const int i = members[head];
            for (int j = 0; j < n; ++j) {
                if (j != i && component[j] < 0 && k(i, j) > 0.0) {
                    component[j] = components;
                    d(j) = d(i) * k(i, j) / k(j, i);
                    members.push_back(j);
                }
            }
        }
        double smallest = d(root);
        for (int v : members) {
            smallest = std::min(smallest, d(v));
        }
        for (int v : members) {
            d(v) /= smallest;
        }
        ++components;
    }

    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double a = d(i) * k(i, j);
            const double b = d(j) * k(j, i);
            if (std::abs(a - b) > kBalanceTolerance * std::max(a, b)) {
                return out;
            }
        }
    }

    const Vector root_d = d.cwiseSqrt();
    Matrix m = root_d.asDiagonal() * k * root_d.cwiseInverse().asDiagonal();
    m = 0.5 * (m + m.transpose()).eval();
    out.symmetrizable = true;
    out.d = std::move(d);
    out.symmetrized = std::move(m);
    return out;
}

bool is_rank_one(const Matrix& k)
{
    Eigen::Index p = 0;
    Eigen::Index q = 0;
    const double peak = k.cwiseAbs().maxCoeff(&p, &q);
    if (peak == 0.0) {
        return true;
    }
    const Matrix outer = k.col(q) * (k.row(p) / k(p, q));
    return (k - outer).cwiseAbs().maxCoeff() <= kRankOneTolerance * peak;
}

ConvexityVerdict classify_convexity(const MetapopModel& model) { return classify_convexity(model.matrix()); }

ConvexityVerdict classify_convexity(const Matrix& k)
{
    ConvexityVerdict v;
    if (is_rank_one(k)) {
        v.verdict = Verdict::Linear;
        v.reason = VerdictReason::ConfigurationRankOne;
        return v;
    }
    const SymmetrizabilityResult s = symmetrize(k);
    if (!s.symmetrizable) {
        v.verdict = Verdict::Indeterminate;
        v.reason = VerdictReason::NotSymmetrizable;
        return v;
    }
    const auto [p, neg] = inertia(*s.symmetrized);
    v.inertia = std::make_pair(p, neg);
    const bool convex = neg == 0;
    const bool concave = p == 1;
    if (convex && concave) {
        v.verdict = Verdict::Linear;
        v.reason = VerdictReason::SymmetrizablePSD;
    } else if (convex) {
        v.verdict = Verdict::Convex;
        v.reason = VerdictReason::SymmetrizablePSD;
    } else if (concave) {
        v.verdict = Verdict::Concave;
        v.reason = VerdictReason::SymmetrizableSingleP;
    } else {
        v.verdict = Verdict::Indeterminate;
        v.reason = VerdictReason::MixedInertia;
    }
    return v;
}

ConvexityVerdict probe_convexity(const MetapopModel& model, int trials, std::uint64_t seed)
{
    if (trials < 1) {
        throw ValidationError("probe needs at least one trial");
    }
    static constexpr double fixed_t[] = {0.25, 0.5, 0.75};
    const int n = model.size();
    const Matrix& k = model.matrix();
    ConvexityVerdict out;
    out.reason = VerdictReason::EmpiricalProbe;
    for (int trial = 0; trial < trials; ++trial) {
        auto rng = stream_rng(seed, static_cast<std::uint64_t>(trial));
        ConvexityWitness w;
        w.eta0.resize(n);
        w.eta1.resize(n);
        for (int i = 0; i < n; ++i) {
            w.eta0(i) = uniform01(rng);
        }
        for (int i = 0; i < n; ++i) {
            w.eta1(i) = uniform01(rng);
        }
        const auto pick = static_cast<int>(rng() % 4);
        w.t = pick < 3 ? fixed_t[pick] : uniform01(rng);
        const Vector mix = w.t * w.eta0 + (1.0 - w.t) * w.eta1;
        w.gap = effective_re(k, mix) - (w.t * effective_re(k, w.eta0) + (1.0 - w.t) * effective_re(k, w.eta1));
        if (w.gap > kProbeGapThreshold) {
            if (!out.convexity_violation || w.gap > out.convexity_violation->gap) {
                out.convexity_violation = w;
            }
        } else if (w.gap < -kProbeGapThreshold) {
            if (!out.concavity_violation || w.gap < out.concavity_violation->gap) {
                out.concavity_violation = w;
            }
        }
    }
    if (out.convexity_violation && out.concavity_violation) {
        out.verdict = Verdict::Indeterminate;
    } else if (out.convexity_violation) {
        out.verdict = Verdict::Concave;
    } else if (out.concavity_violation) {
        out.verdict = Verdict::Convex;
    } else {
        out.verdict = Verdict::Linear;
    }
    return out;
}

SylvesterReport sylvester_check(const Matrix& t, const Vector& f, const Vector& g)
{
    const auto n = t.rows();
    if (t.cols() != n || f.size() != n || g.size() != n) {
        throw DimensionMismatch("sylvester_check needs matching sizes");
    }
    if ((t - t.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, t.cwiseAbs().maxCoeff())) {
        throw ValidationError("sylvester_check needs a symmetric matrix");
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!(f(i) >= 1e-6 && f(i) <= 1e6 && g(i) >= 1e-6 && g(i) <= 1e6)) {
            throw ValidationError("scaling factors must lie in [1e-6, 1e6]");
        }
    }
    SylvesterReport r;
    r.original = inertia(t);
    r.scaled = inertia(f.asDiagonal() * t * g.asDiagonal());
    r.match = r.original == r.scaled;
    return r;
}

} // namespace vaxfront
