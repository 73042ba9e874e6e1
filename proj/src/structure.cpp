#include "vaxfront/structure.hpp"

#include "vaxfront/errors.hpp"
#include "vaxfront/spectral.hpp"

#include <algorithm>

namespace vaxfront {

namespace {

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

bool component_is_atom(const Matrix& k, const IndexSet& comp, double threshold)
{
    if (comp.size() > 1) {
        return true;
    }
    return k(comp[0], comp[0]) > threshold;
}

IndexSet set_difference(const IndexSet& a, const IndexSet& b)
{
    IndexSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

} // namespace

Digraph support_digraph(const MetapopModel& model, double threshold)
{
    return support_digraph(model.matrix(), threshold);
}

bool is_invariant(const MetapopModel& model, const IndexSet& groups)
{
    const int n = model.size();
    std::vector<char> inside(static_cast<std::size_t>(n), 0);
    for (int g : groups) {
        if (g < 0 || g >= n) {
            throw ValidationError("group index " + std::to_string(g) + " out of range");
        }
        inside[g] = 1;
    }
    for (int j = 0; j < n; ++j) {
        if (!inside[j]) {
            continue;
        }
        for (int i = 0; i < n; ++i) {
            if (!inside[i] && model.matrix()(i, j) != 0.0) {
                return false;
            }
        }
    }
    return true;
}

FrobeniusDecomposition frobenius_decompose(const MetapopModel& model, double threshold)
{
    const Matrix& k = model.matrix();
    const Digraph g = support_digraph(k, threshold);
    FrobeniusDecomposition d;
    for (const auto& comp : strongly_connected_components(g)) {
        if (component_is_atom(k, comp, threshold)) {
            d.atoms.push_back(comp);
        } else {
            d.remainder.insert(d.remainder.end(), comp.begin(), comp.end());
        }
    }
    std::sort(d.atoms.begin(), d.atoms.end(), [](const IndexSet& a, const IndexSet& b) { return a[0] < b[0]; });
    std::sort(d.remainder.begin(), d.remainder.end());

    const int count = static_cast<int>(d.atoms.size());
    std::vector<int> owner(static_cast<std::size_t>(model.size()), -1);
    for (int a = 0; a < count; ++a) {
        for (int v : d.atoms[a]) {
            owner[v] = a;
        }
        d.atom_radii.push_back(spectral_radius(submatrix(k, d.atoms[a])));
    }

    // infects[a][b]: atom a reaches atom b. Infectees are placed first,
    // ties broken by the smallest group index.
    std::vector<std::vector<char>> infects(count, std::vector<char>(count, 0));
    for (int a = 0; a < count; ++a) {
        for (int v : reachable_from(g, d.atoms[a])) {
            if (owner[v] >= 0 && owner[v] != a) {
                infects[a][owner[v]] = 1;
            }
        }
    }
    std::vector<char> placed(count, 0);
    while (static_cast<int>(d.order.size()) < count) {
        for (int a = 0; a < count; ++a) {
            if (placed[a]) {
                continue;
            }
            bool ready = true;
            for (int b = 0; b < count && ready; ++b) {
                if (infects[a][b] && !placed[b]) {
                    ready = false;
                }
            }
            if (ready) {
                placed[a] = 1;
                d.order.push_back(a);
                break;
            }
        }
    }
    return d;
}

Classification classify(const MetapopModel& model, double threshold)
{
    const Matrix& k = model.matrix();
    const int n = model.size();
    const Digraph g = support_digraph(k, threshold);
    Classification c;

    IndexSet all(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        all[i] = i;
    }
    const bool has_transmission = g.edge_count() > 0;
    c.irreducible = has_transmission && is_strongly_connected(g, all);

    IndexSet active;
    for (int i = 0; i < n; ++i) {
        bool touched = false;
        for (int j = 0; j < n && !touched; ++j) {
            touched = k(i, j) > threshold || k(j, i) > threshold;
        }
        if (touched) {
            active.push_back(i);
        }
    }
    c.quasi_irreducible = has_transmission && is_strongly_connected(g, active) &&
                          (active.size() > 1 || k(active[0], active[0]) > threshold);

    const FrobeniusDecomposition d = frobenius_decompose(model, threshold);
    c.monatomic = d.atoms.size() == 1;
    if (c.monatomic) {
        const IndexSet& atom = d.atoms[0];
        c.atom = atom;
        c.infected = set_difference(reachable_from(g, atom), atom);
    }
    return c;
}

bool is_disconnecting(const MetapopModel& model, const Strategy& eta)
{
    if (eta.size() != model.size()) {
        throw DimensionMismatch("strategy length does not match the model");
    }
    const IndexSet alive = eta.support();
    if (alive.empty()) {
        return false;
    }
    return !is_strongly_connected(support_digraph(model.matrix()), alive);
}

CordonImprovement cordon_improvement(const MetapopModel& model, const Strategy& eta, const CostFunction& cost)
{
    if (!is_disconnecting(model, eta)) {
        throw NotDisconnecting("strategy does not disconnect the surviving population");
    }
    const int n = model.size();
    const IndexSet alive = eta.support();
    const Digraph g = support_digraph(model.matrix());

    // SCCs of the surviving subgraph; a source component receives nothing
    // from the rest, so it and its complement split the transmission.
    std::vector<char> in_alive(static_cast<std::size_t>(n), 0);
    for (int v : alive) {
        in_alive[v] = 1;
    }
    Digraph sub;
    sub.n = n;
    sub.successors.assign(static_cast<std::size_t>(n), {});
    for (int v : alive) {
        for (int w : g.successors[static_cast<std::size_t>(v)]) {
            if (in_alive[w]) {
                sub.successors[static_cast<std::size_t>(v)].push_back(w);
            }
        }
    }
    std::vector<IndexSet> comps;
    for (auto& comp : strongly_connected_components(sub)) {
        if (in_alive[comp[0]]) {
            comps.push_back(std::move(comp));
        }
    }
    std::vector<int> owner(static_cast<std::size_t>(n), -1);
    for (std::size_t c = 0; c < comps.size(); ++c) {
        for (int v : comps[c]) {
            owner[v] = static_cast<int>(c);
        }
    }
    std::vector<char> has_upstream(comps.size(), 0);
    for (int v : alive) {
        for (int w : sub.successors[static_cast<std::size_t>(v)]) {
            if (owner[v] != owner[w]) {
                has_upstream[owner[w]] = 1;
            }
        }
    }
    int source = -1;
    for (std::size_t c = 0; c < comps.size(); ++c) {
        if (!has_upstream[c] && (source < 0 || comps[c][0] < comps[source][0])) {
            source = static_cast<int>(c);
        }
    }
    const IndexSet upstream = comps[source];
    const IndexSet rest = set_difference(alive, upstream);

    Vector on_upstream = Vector::Zero(n);
    Vector on_rest = Vector::Zero(n);
    for (int v : upstream) {
        on_upstream(v) = eta[v];
    }
    for (int v : rest) {
        on_rest(v) = eta[v];
    }
    const double re_upstream = effective_re(model.matrix(), on_upstream);
    const double re_rest = effective_re(model.matrix(), on_rest);

    CordonCertificate cert;
    Vector improved;
    if (re_rest >= re_upstream) {
        improved = on_rest;
        cert.kept = rest;
        cert.dropped = upstream;
    } else {
        improved = on_upstream;
        cert.kept = upstream;
        cert.dropped = rest;
    }
    Strategy result(improved);
    cert.re_before = effective_re(model, eta);
    cert.re_after = effective_re(model, result);
    cert.cost_before = vaxfront::cost(cost, model, eta);
    cert.cost_after = vaxfront::cost(cost, model, result);
    return {std::move(result), std::move(cert)};
}

} // namespace vaxfront
