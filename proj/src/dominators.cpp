#include "uopt/dominators.hpp"

#include "uopt/errors.hpp"

namespace uopt {

SpanningTree DominatorTree::as_tree() const {
    SpanningTree t;
    t.role = SpanningTree::Role::dominator;
    t.root = root;
    t.parent = idom;
    return t;
}

DominatorTree dominator_tree(const Graph& g) {
    const std::uint32_t n = g.n();
    constexpr std::uint32_t none = kNoVertex;

    // Predecessor lists.
    std::vector<std::uint32_t> pred_start(n + 1, 0), pred;
    for (const Edge& e : g.arcs()) ++pred_start[e.to + 1];
    for (std::uint32_t v = 0; v < n; ++v) pred_start[v + 1] += pred_start[v];
    pred.resize(g.arc_count());
    {
        std::vector<std::uint32_t> fill(pred_start.begin(), pred_start.end() - 1);
        for (const Edge& e : g.arcs()) pred[fill[e.to]++] = e.from;
    }

    // Iterative DFS numbering from the source.
    std::vector<std::uint32_t> num(n, none), vertex, parent(n, none);
    vertex.reserve(n);
    {
        std::vector<std::pair<std::uint32_t, std::size_t>> stack{{g.source(), 0}};
        num[g.source()] = 0;
        vertex.push_back(g.source());
        while (!stack.empty()) {
            auto& [u, i] = stack.back();
            auto out = g.out(u);
            if (i == out.size()) {
                stack.pop_back();
                continue;
            }
            std::uint32_t v = g.arc(out[i++]).to;
            if (num[v] != none) continue;
            num[v] = static_cast<std::uint32_t>(vertex.size());
            vertex.push_back(v);
            parent[v] = u;
            stack.push_back({v, 0});
        }
    }
    if (vertex.size() != n) throw ContractViolation("dominator tree needs every vertex reachable");

    // Work on DFS numbers from here on.
    std::vector<std::uint32_t> semi(n), label(n), ancestor(n, none), idom_num(n, none);
    std::vector<std::vector<std::uint32_t>> bucket(n);
    for (std::uint32_t i = 0; i < n; ++i) semi[i] = label[i] = i;

    auto compress = [&](std::uint32_t v) {
        std::vector<std::uint32_t> path;
        while (ancestor[ancestor[v]] != none) {
            path.push_back(v);
            v = ancestor[v];
        }
        for (auto it = path.rbegin(); it != path.rend(); ++it) {
            std::uint32_t w = *it;
            std::uint32_t a = ancestor[w];
            if (semi[label[a]] < semi[label[w]]) label[w] = label[a];
            ancestor[w] = ancestor[a];
        }
    };
    auto eval = [&](std::uint32_t v) {
        if (ancestor[v] == none) return v;
        compress(v);
        return label[v];
    };

    for (std::uint32_t w = n - 1; w >= 1; --w) {
        std::uint32_t wv = vertex[w];
        for (std::uint32_t k = pred_start[wv]; k < pred_start[wv + 1]; ++k) {
            std::uint32_t p = num[pred[k]];
            std::uint32_t u = eval(p);
            if (semi[u] < semi[w]) semi[w] = semi[u];
        }
        bucket[semi[w]].push_back(w);
        std::uint32_t pw = num[parent[wv]];
        ancestor[w] = pw;
        for (std::uint32_t v : bucket[pw]) {
            std::uint32_t u = eval(v);
            idom_num[v] = semi[u] < semi[v] ? u : pw;
        }
        bucket[pw].clear();
    }
    for (std::uint32_t w = 1; w < n; ++w)
        if (idom_num[w] != semi[w]) idom_num[w] = idom_num[idom_num[w]];

    DominatorTree d;
    d.root = g.source();
    d.idom.assign(n, none);
    for (std::uint32_t w = 1; w < n; ++w) d.idom[vertex[w]] = vertex[idom_num[w]];

    // Entry/exit times for O(1) ancestry.
    std::vector<std::vector<std::uint32_t>> children(n);
    for (std::uint32_t v = 0; v < n; ++v)
        if (d.idom[v] != none) children[d.idom[v]].push_back(v);
    d.tin.assign(n, 0);
    d.tout.assign(n, 0);
    std::uint32_t clock = 0;
    std::vector<std::pair<std::uint32_t, std::size_t>> stack{{d.root, 0}};
    d.tin[d.root] = clock++;
    while (!stack.empty()) {
        auto& [u, i] = stack.back();
        if (i == children[u].size()) {
            d.tout[u] = clock++;
            stack.pop_back();
            continue;
        }
        std::uint32_t v = children[u][i++];
        d.tin[v] = clock++;
        stack.push_back({v, 0});
    }
    return d;
}

}  // namespace uopt
