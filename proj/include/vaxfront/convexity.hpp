#pragma once

#include "vaxfront/model.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

namespace vaxfront {

struct SymmetrizabilityResult {
    bool symmetrizable = false;
    /// Positive weights with d_i K_ij = d_j K_ji, smallest entry 1 per
    /// connected component.
    std::optional<Vector> d;
    /// D^{1/2} K D^{-1/2}.
    std::optional<Matrix> symmetrized;
};

enum class Verdict { Convex, Concave, Linear, Indeterminate };

enum class VerdictReason {
    SymmetrizablePSD,
    SymmetrizableSingleP,
    ConfigurationRankOne,
    NotSymmetrizable,
    MixedInertia,
    EmpiricalProbe,
};

/// gap = R_e(t*eta0 + (1-t)*eta1) - (t*R_e(eta0) + (1-t)*R_e(eta1)).
/// A positive gap contradicts convexity, a negative one concavity.
struct ConvexityWitness {
    Vector eta0;
    Vector eta1;
    double t = 0.5;
    double gap = 0.0;
};

struct ConvexityVerdict {
    Verdict verdict = Verdict::Indeterminate;
    VerdictReason reason = VerdictReason::NotSymmetrizable;
    std::optional<ConvexityWitness> convexity_violation;
    std::optional<ConvexityWitness> concavity_violation;
    /// Inertia of the symmetrized matrix when it was computed.
    std::optional<std::pair<int, int>> inertia;
};

std::string to_string(Verdict v);
std::string to_string(VerdictReason r);

SymmetrizabilityResult symmetrize(const MetapopModel& model);
SymmetrizabilityResult symmetrize(const Matrix& k);

/// Rank one within 1e-10 * max|K| (the zero matrix counts).
bool is_rank_one(const Matrix& k);

ConvexityVerdict classify_convexity(const MetapopModel& model);
ConvexityVerdict classify_convexity(const Matrix& k);

/// Gap magnitude above which a probe sample counts as a violation.
inline constexpr double kProbeGapThreshold = 1e-6;

/// Random search for chords that violate convexity or concavity. Both
/// violations found: Indeterminate; only one kind: the consistent verdict;
/// none: Linear. Deterministic in `seed`.
ConvexityVerdict probe_convexity(const MetapopModel& model, int trials, std::uint64_t seed);

struct SylvesterReport {
    std::pair<int, int> original;
    std::pair<int, int> scaled;
    bool match = false;
};

/// Inertia of T and of diag(f) T diag(g) for symmetric T and positive f, g
/// in [1e-6, 1e6].
SylvesterReport sylvester_check(const Matrix& t, const Vector& f, const Vector& g);

} // namespace vaxfront
