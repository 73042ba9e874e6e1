#include "vaxfront/digraph.hpp"

#include <algorithm>

namespace vaxfront {

std::size_t Digraph::edge_count() const
{
    std::size_t total = 0;
    for (const auto& s : successors) {
        total += s.size();
    }
    return total;
}

bool Digraph::has_edge(int from, int to) const
{
    const auto& s = successors[static_cast<std::size_t>(from)];
    return std::binary_search(s.begin(), s.end(), to);
}

Digraph support_digraph(const Matrix& a, double threshold)
{
    Digraph g;
    g.n = static_cast<int>(a.rows());
    g.successors.assign(static_cast<std::size_t>(g.n), {});
    for (int j = 0; j < g.n; ++j) {
        for (int i = 0; i < g.n; ++i) {
            if (a(i, j) > threshold) {
                g.successors[static_cast<std::size_t>(j)].push_back(i);
            }
        }
    }
    return g;
}

namespace {

// Iterative Tarjan restricted to vertices with mask[v] set.
std::vector<IndexSet> tarjan(const Digraph& g, const std::vector<char>& mask)
{
    const int n = g.n;
    std::vector<int> index(n, -1);
    std::vector<int> low(n, 0);
    std::vector<char> on_stack(n, 0);
    std::vector<int> stack;
    std::vector<IndexSet> components;
    int counter = 0;

    struct Frame {
        int v;
        std::size_t next;
    };
    std::vector<Frame> call;

    for (int root = 0; root < n; ++root) {
        if (!mask[root] || index[root] >= 0) {
            continue;
        }
        call.push_back({root, 0});
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!call.empty()) {
            Frame& f = call.back();
            const auto& succ = g.successors[static_cast<std::size_t>(f.v)];
            if (f.next < succ.size()) {
                const int w = succ[f.next++];
                if (!mask[w]) {
                    continue;
                }
                if (index[w] < 0) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
                continue;
            }
            const int v = f.v;
            call.pop_back();
            if (!call.empty()) {
                low[call.back().v] = std::min(low[call.back().v], low[v]);
            }
            if (low[v] == index[v]) {
                IndexSet comp;
                int w = -1;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    comp.push_back(w);
                } while (w != v);
                std::sort(comp.begin(), comp.end());
                components.push_back(std::move(comp));
            }
        }
    }
    return components;
}

} // namespace

std::vector<IndexSet> strongly_connected_components(const Digraph& g)
{
    return tarjan(g, std::vector<char>(static_cast<std::size_t>(g.n), 1));
}

bool is_strongly_connected(const Digraph& g, const IndexSet& vertices)
{
    if (vertices.empty()) {
        return false;
    }
    std::vector<char> mask(static_cast<std::size_t>(g.n), 0);
    for (int v : vertices) {
        mask[v] = 1;
    }
    return tarjan(g, mask).size() == 1;
}

IndexSet reachable_from(const Digraph& g, const IndexSet& sources)
{
    std::vector<char> seen(static_cast<std::size_t>(g.n), 0);
    std::vector<int> todo(sources.begin(), sources.end());
    for (int s : sources) {
        seen[s] = 1;
    }
    while (!todo.empty()) {
        const int v = todo.back();
        todo.pop_back();
        for (int w : g.successors[static_cast<std::size_t>(v)]) {
            if (!seen[w]) {
                seen[w] = 1;
                todo.push_back(w);
            }
        }
    }
    IndexSet out;
    for (int v = 0; v < g.n; ++v) {
        if (seen[v]) {
            out.push_back(v);
        }
    }
    return out;
}

} // namespace vaxfront
