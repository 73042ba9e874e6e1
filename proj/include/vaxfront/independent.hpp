#pragma once

#include "vaxfront/model.hpp"

namespace vaxfront {

struct IndependentSetResult {
    IndexSet set;
    /// Total weight of the set, c_max - C(1_A).
    double alpha = 0.0;
    /// C(1_A).
    double cstar = 0.0;
};

/// Exact search is attempted up to this many groups unless forced.
inline constexpr int kIndependentSetBudget = 40;

/// Maximum-weight set A with K(i, j) = 0 for all i, j in A (diagonal
/// included), weights c_i mu_i. Branch and bound over 64-bit masks; among
/// optimal sets the lexicographically smallest is returned. Throws
/// BudgetExceeded above 40 groups (64 with `force`).
IndependentSetResult max_independent_set(const MetapopModel& model, const CostFunction& cost, bool force = false);

/// Same search for an arbitrary matrix support and positive weights.
IndexSet max_weight_independent_set(const Matrix& k, const Vector& weights, bool force = false);

/// Sum of weights over a set, accumulated in index order.
double set_weight(const Vector& weights, const IndexSet& set);

struct EradicationResult {
    double cstar = 0.0;
    Strategy strategy;
    IndexSet set;
    double alpha = 0.0;
    /// True when every atom has symmetric support, so cstar is the minimal
    /// eradication cost; otherwise cstar is an upper bound.
    bool exact = false;
};

/// Cheapest strategy found with R_e = 0: keep the quasi-nilpotent remainder
/// and a maximum independent set of every atom unvaccinated.
EradicationResult eradication_cost(const MetapopModel& model, const CostFunction& cost, bool force = false);

} // namespace vaxfront
