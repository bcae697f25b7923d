#include "uopt/optimal.hpp"

#include <algorithm>
#include <numeric>

#include "uopt/errors.hpp"
#include "uopt/linearize.hpp"

namespace uopt {

std::vector<std::uint32_t> kept_arcs(const Graph& g, const DominatorTree& dom) {
    std::vector<std::uint32_t> kept;
    kept.reserve(g.arc_count());
    for (std::uint32_t a = 0; a < g.arc_count(); ++a) {
        const Edge& e = g.arc(a);
        if (!dom.dominates(e.to, e.from)) kept.push_back(a);
    }
    return kept;
}

namespace {

std::vector<std::vector<std::uint32_t>> dom_children(const DominatorTree& dom) {
    std::vector<std::vector<std::uint32_t>> ch(dom.size());
    for (std::uint32_t v = 0; v < dom.size(); ++v)
        if (dom.idom[v] != kNoVertex) ch[dom.idom[v]].push_back(v);
    return ch;
}

}  // namespace

Contraction contract_chains(const Graph& g, WeightArena& arena, const DominatorTree& dom,
                            const std::vector<std::uint32_t>& kept) {
    const std::uint32_t n = g.n();
    const auto children = dom_children(dom);
    const auto order = dom.as_tree().preorder();

    Contraction c;
    c.phi.assign(n, kNoVertex);
    c.chain_arc.assign(n, kNoVertex);
    c.prefix.assign(n, WeightHandle{});
    for (std::uint32_t v : order) {
        const std::uint32_t p = dom.idom[v];
        if (p != kNoVertex && children[p].size() == 1) {
            c.phi[v] = c.phi[p];
            c.members[c.phi[v]].push_back(v);
            ++c.contractions;
        } else {
            c.phi[v] = static_cast<std::uint32_t>(c.members.size());
            c.members.push_back({v});
        }
    }

    // Arcs entering chain members other than the head; the minimum over
    // parallel copies becomes the chain arc.
    std::vector<std::uint32_t> to_heads;
    to_heads.reserve(kept.size());
    for (std::uint32_t a : kept) {
        const Edge& e = g.arc(a);
        if (c.is_head(e.to)) {
            to_heads.push_back(a);
            continue;
        }
        if (e.from != dom.idom[e.to])
            throw InvariantViolation("arc " + std::to_string(e.from) + "->" + std::to_string(e.to) +
                                     " enters a chain away from its predecessor");
        std::uint32_t& best = c.chain_arc[e.to];
        if (best == kNoVertex) {
            best = a;
        } else {
            ++c.chain_parallel_comparisons;
            if (arena.compare(e.weight, g.arc(best).weight) < 0) best = a;
        }
    }
    for (std::uint32_t v : order) {
        if (c.is_head(v)) continue;
        if (c.chain_arc[v] == kNoVertex) throw InvariantViolation("chain vertex without an entering arc");
        const std::uint32_t p = dom.idom[v];
        const WeightHandle w = g.arc(c.chain_arc[v]).weight;
        c.prefix[v] = c.is_head(p) ? w : arena.add(c.prefix[p], w);
    }

    std::vector<Edge> arcs;
    arcs.reserve(to_heads.size());
    c.origin.reserve(to_heads.size());
    for (std::uint32_t a : to_heads) {
        const Edge& e = g.arc(a);
        const WeightHandle w = c.is_head(e.from) ? e.weight : arena.add(c.prefix[e.from], e.weight);
        arcs.push_back({c.phi[e.from], c.phi[e.to], w});
        c.origin.push_back(a);
    }
    c.graph = Graph(static_cast<std::uint32_t>(c.members.size()), c.phi[g.source()], true, std::move(arcs));
    return c;
}

std::vector<std::string> check_contraction(const Graph& g, const DominatorTree& dom,
                                           const std::vector<std::uint32_t>& kept, const Contraction& c) {
    std::vector<std::string> bad;
    const auto children = dom_children(dom);
    std::size_t total = 0;
    for (std::uint32_t x = 0; x < c.members.size(); ++x) {
        const auto& m = c.members[x];
        total += m.size();
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (c.phi[m[i]] != x) bad.push_back("phi disagrees with chain membership");
            if (i + 1 < m.size() && (children[m[i]].size() != 1 || children[m[i]][0] != m[i + 1]))
                bad.push_back("chain link is not a single-child dominator edge");
        }
        if (m.size() > 0 && children[m.back()].size() == 1) bad.push_back("chain is not maximal");
    }
    if (total != g.n()) bad.push_back("chains do not partition the vertices");
    if (c.graph.n() != g.n() - c.contractions) bad.push_back("contracted vertex count is off");
    for (std::uint32_t a : kept) {
        const Edge& e = g.arc(a);
        if (c.is_head(e.to)) continue;
        if (e.from != dom.idom[e.to]) bad.push_back("chain member entered from outside its predecessor");
        if (children[e.from].size() != 1) bad.push_back("chain predecessor has several dominator children");
    }
    for (const Edge& e : c.graph.arcs())
        if (e.from == e.to) bad.push_back("self-loop survives contraction");
    return bad;
}

LazyDedup::LazyDedup(const Graph& multigraph, WeightArena& arena) : multi_(&multigraph), arena_(&arena) {
    std::vector<std::uint32_t> ids(multigraph.arc_count());
    std::iota(ids.begin(), ids.end(), 0u);
    std::stable_sort(ids.begin(), ids.end(), [&](std::uint32_t x, std::uint32_t y) {
        const Edge& a = multigraph.arc(x);
        const Edge& b = multigraph.arc(y);
        return a.from != b.from ? a.from < b.from : a.to < b.to;
    });
    std::vector<Edge> arcs;
    for (std::size_t i = 0; i < ids.size();) {
        const Edge& head = multigraph.arc(ids[i]);
        std::vector<std::uint32_t> grp;
        for (; i < ids.size() && multigraph.arc(ids[i]).from == head.from && multigraph.arc(ids[i]).to == head.to; ++i)
            grp.push_back(ids[i]);
        arcs.push_back({head.from, head.to, WeightHandle{}});
        groups_.push_back(std::move(grp));
    }
    min_.assign(groups_.size(), WeightHandle{});
    argmin_.assign(groups_.size(), kNoVertex);
    simple_ = Graph(multigraph.n(), multigraph.source(), true, std::move(arcs));
}

WeightHandle LazyDedup::weight(std::uint32_t a) {
    if (argmin_[a] == kNoVertex) {
        const auto& grp = groups_[a];
        std::uint32_t best = grp[0];
        for (std::size_t i = 1; i < grp.size(); ++i) {
            ++spent_;
            if (arena_->compare(multi_->arc(grp[i]).weight, multi_->arc(best).weight) < 0) best = grp[i];
        }
        argmin_[a] = best;
        min_[a] = multi_->arc(best).weight;
    }
    return min_[a];
}

OptimalRun sssp_via_contraction(const Graph& g, WeightArena& arena, WorkSetOptions options) {
    if (!g.directed()) throw ContractViolation("the comparison-optimal pipeline needs a directed graph");
    if (!g.unreachable().empty()) throw ContractViolation("the comparison-optimal pipeline needs every vertex reachable");
    const std::uint32_t n = g.n();
    const Counters start = arena.counters();
    OptimalRun run;

    const DominatorTree dom = dominator_tree(g);
    const auto kept = kept_arcs(g, dom);
    run.dropped_arcs = g.arc_count() - kept.size();
    const Contraction c = contract_chains(g, arena, dom, kept);
    run.contractions = c.contractions;
    run.chain_parallel_comparisons = c.chain_parallel_comparisons;
    run.contracted_n = c.graph.n();
    run.contracted_arcs = c.graph.arc_count();

    LazyDedup dedup(c.graph, arena);
    run.simple_arcs = dedup.graph().arc_count();
    {
        KeyOrder order(arena);
        WorkSetHeap q(order, options);
        run.core = dijkstra_with(dedup.graph(), arena, q, [&dedup](std::uint32_t a) { return dedup.weight(a); });
    }
    run.dedup_comparisons = dedup.spent();
    run.forward_contracted = forward_edges(c.graph, arena, run.core.dist);
    run.forward_contracted_ordered = forward_edges_in_order(c.graph, arena, run.core.dist, run.core.linearization);

    // Expand the contracted tree.
    run.sssp = {SpanningTree::Role::sssp, g.source(), std::vector<std::uint32_t>(n, kNoVertex),
                std::vector<std::uint32_t>(n, kNoVertex)};
    run.dist.assign(n, WeightHandle{});
    for (std::uint32_t x = 0; x < c.members.size(); ++x) {
        const auto& m = c.members[x];
        const std::uint32_t head = m.front();
        run.dist[head] = run.core.dist[x];
        if (head != g.source()) {
            const std::uint32_t simple_arc = run.core.sssp.parent_arc[x];
            const std::uint32_t original = c.origin[dedup.argmin(simple_arc)];
            run.sssp.parent[head] = g.arc(original).from;
            run.sssp.parent_arc[head] = original;
        }
        for (std::size_t i = 1; i < m.size(); ++i) {
            run.sssp.parent[m[i]] = m[i - 1];
            run.sssp.parent_arc[m[i]] = c.chain_arc[m[i]];
            run.dist[m[i]] = arena.add(run.dist[head], c.prefix[m[i]]);
        }
    }
    run.sssp_stage = arena.counters() - start;
    run.total = run.sssp_stage;
    return run;
}

OptimalRun optimal_distance_ordering(const Graph& g, WeightArena& arena, WorkSetOptions options) {
    OptimalRun run = sssp_via_contraction(g, arena, options);
    const Counters mid = arena.counters();
    run.linearization = tree_dp_linearize(run.sssp, run.dist, arena);
    run.tree_stage = arena.counters() - mid;
    run.total = run.sssp_stage + run.tree_stage;
    return run;
}

}  // namespace uopt
