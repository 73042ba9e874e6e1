#include "vaxfront/independent.hpp"

#include "vaxfront/errors.hpp"
#include "vaxfront/structure.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

namespace vaxfront {

namespace {

using Mask = std::uint64_t;

Mask bit(int v) { return Mask{1} << v; }

int lowest(Mask m) { return std::countr_zero(m); }

class BranchAndBound {
public:
    BranchAndBound(std::vector<Mask> adjacency, std::vector<double> weights)
        : adj_(std::move(adjacency))
        , w_(std::move(weights))
    {
    }

    Mask solve(Mask candidates)
    {
        expand(candidates, 0, 0.0);
        return best_set_;
    }

private:
    // Greedy clique cover of the candidates; the heaviest vertex of each
    // clique bounds what an independent set can collect there.
    double clique_cover_bound(Mask cand) const
    {
        double total = 0.0;
        Mask rest = cand;
        while (rest != 0) {
            const int v = lowest(rest);
            rest &= ~bit(v);
            double heaviest = w_[v];
            Mask common = rest & adj_[v];
            while (common != 0) {
                const int u = lowest(common);
                rest &= ~bit(u);
                heaviest = std::max(heaviest, w_[u]);
                common &= adj_[u] & ~bit(u);
            }
            total += heaviest;
        }
        return total;
    }

    void expand(Mask cand, Mask chosen, double weight)
    {
        if (cand == 0) {
            if (weight > best_) {
                best_ = weight;
                best_set_ = chosen;
            }
            return;
        }
        if ((weight + clique_cover_bound(cand)) * (1.0 + 1e-12) <= best_) {
            return;
        }
        const int v = lowest(cand);
        const Mask rest = cand & ~bit(v);
        expand(rest & ~adj_[v], chosen | bit(v), weight + w_[v]);
        if ((rest & adj_[v]) != 0) {
            expand(rest, chosen, weight);
        }
    }

    std::vector<Mask> adj_;
    std::vector<double> w_;
    double best_ = -1.0;
    Mask best_set_ = 0;
};

} // namespace

double set_weight(const Vector& weights, const IndexSet& set)
{
    double total = 0.0;
    for (int v : set) {
        total += weights(v);
    }
    return total;
}

IndexSet max_weight_independent_set(const Matrix& k, const Vector& weights, bool force)
{
    const int n = static_cast<int>(k.rows());
    if (k.cols() != n || weights.size() != n) {
        throw DimensionMismatch("independent set search needs matching sizes");
    }
    if (n > 64 || (n > kIndependentSetBudget && !force)) {
        throw BudgetExceeded("exact independent set search is limited to " +
                             std::to_string(force ? 64 : kIndependentSetBudget) + " groups, got " +
                             std::to_string(n));
    }
    std::vector<Mask> adj(static_cast<std::size_t>(n), 0);
    std::vector<double> w(static_cast<std::size_t>(n));
    Mask candidates = 0;
    for (int i = 0; i < n; ++i) {
        w[i] = weights(i);
        if (!(k(i, i) > 0.0)) {
            candidates |= bit(i);
        }
        for (int j = 0; j < n; ++j) {
            if (j != i && (k(i, j) > 0.0 || k(j, i) > 0.0)) {
                adj[i] |= bit(j);
            }
        }
    }
    const Mask best = BranchAndBound(std::move(adj), std::move(w)).solve(candidates);
    IndexSet out;
    for (int i = 0; i < n; ++i) {
        if (best & bit(i)) {
            out.push_back(i);
        }
    }
    return out;
}

IndependentSetResult max_independent_set(const MetapopModel& model, const CostFunction& cost, bool force)
{
    const Vector w = cost.group_weights(model);
    IndependentSetResult r;
    r.set = max_weight_independent_set(model.matrix(), w, force);
    r.alpha = set_weight(w, r.set);
    r.cstar = vaxfront::cost(cost, model, Strategy::indicator(model.size(), r.set));
    return r;
}

EradicationResult eradication_cost(const MetapopModel& model, const CostFunction& cost, bool force)
{
    const int n = model.size();
    const Matrix& k = model.matrix();
    const Vector w = cost.group_weights(model);
    const FrobeniusDecomposition d = frobenius_decompose(model);

    IndexSet keep = d.remainder;
    bool symmetric = true;
    for (const IndexSet& atom : d.atoms) {
        const auto m = static_cast<Eigen::Index>(atom.size());
        Matrix sub(m, m);
        Vector sub_w(m);
        for (Eigen::Index a = 0; a < m; ++a) {
            sub_w(a) = w(atom[a]);
            for (Eigen::Index b = 0; b < m; ++b) {
                sub(a, b) = k(atom[a], atom[b]);
                if ((sub(a, b) > 0.0) != (k(atom[b], atom[a]) > 0.0)) {
                    symmetric = false;
                }
            }
        }
        for (int local : max_weight_independent_set(sub, sub_w, force)) {
            keep.push_back(atom[local]);
        }
    }
    std::sort(keep.begin(), keep.end());

    EradicationResult r{0.0, Strategy::indicator(n, keep), keep, set_weight(w, keep), symmetric};
    r.cstar = vaxfront::cost(cost, model, r.strategy);
    return r;
}

} // namespace vaxfront
