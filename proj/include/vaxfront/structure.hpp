#pragma once

#include "vaxfront/digraph.hpp"
#include "vaxfront/model.hpp"

#include <optional>
#include <vector>

namespace vaxfront {

/// Partition of the groups into irreducible atoms with positive radius and
/// a quasi-nilpotent remainder.
struct FrobeniusDecomposition {
    /// Atoms listed by their smallest member.
    std::vector<IndexSet> atoms;
    IndexSet remainder;
    /// Positions into `atoms`, earliest first. If atoms[order[a]] comes
    /// before atoms[order[b]] then atoms[order[a]] never infects
    /// atoms[order[b]], directly or through other groups.
    std::vector<int> order;
    /// Spectral radius of K restricted to each atom.
    std::vector<double> atom_radii;
};

struct Classification {
    bool irreducible = false;
    bool quasi_irreducible = false;
    bool monatomic = false;
    /// Set only for monatomic kernels.
    std::optional<IndexSet> atom;
    /// Groups downstream of the atom; set only for monatomic kernels.
    std::optional<IndexSet> infected;
};

/// Edge j -> i iff K(i, j) > threshold.
Digraph support_digraph(const MetapopModel& model, double threshold = 0.0);

/// True iff K(i, j) = 0 for every i outside `groups` and j inside.
bool is_invariant(const MetapopModel& model, const IndexSet& groups);

FrobeniusDecomposition frobenius_decompose(const MetapopModel& model, double threshold = 0.0);

Classification classify(const MetapopModel& model, double threshold = 0.0);

/// eta != 0 and the support restricted to {eta > 0} is not strongly connected.
bool is_disconnecting(const MetapopModel& model, const Strategy& eta);

struct CordonCertificate {
    double re_before = 0.0;
    double re_after = 0.0;
    double cost_before = 0.0;
    double cost_after = 0.0;
    /// Groups of {eta > 0} kept unvaccinated, and groups newly vaccinated.
    IndexSet kept;
    IndexSet dropped;
};

struct CordonImprovement {
    Strategy strategy;
    CordonCertificate certificate;
};

/// Given a disconnecting strategy, splits {eta > 0} into two sides with no
/// transmission from one to the other and fully vaccinates the side with
/// the smaller effective radius. The loss is unchanged and the cost grows.
/// Throws NotDisconnecting otherwise.
CordonImprovement cordon_improvement(const MetapopModel& model, const Strategy& eta, const CostFunction& cost);

} // namespace vaxfront
