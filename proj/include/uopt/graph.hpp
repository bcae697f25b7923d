#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "uopt/weights.hpp"

namespace uopt {

inline constexpr std::uint32_t kNoVertex = std::numeric_limits<std::uint32_t>::max();

struct Edge {
    std::uint32_t from;
    std::uint32_t to;
    WeightHandle weight;
};

/// Weighted multigraph with a source. Undirected graphs store every input
/// edge i as the two arcs 2i and 2i+1. Immutable after construction.
class Graph {
public:
    Graph() = default;
    /// Throws ContractViolation on an out-of-range endpoint or source.
    Graph(std::uint32_t n, std::uint32_t source, bool directed, std::vector<Edge> arcs);

    std::uint32_t n() const { return n_; }
    std::uint32_t source() const { return source_; }
    bool directed() const { return directed_; }
    /// Arc count; twice the input edge count for undirected graphs.
    std::size_t arc_count() const { return arcs_.size(); }
    std::size_t edge_count() const { return directed_ ? arcs_.size() : arcs_.size() / 2; }
    const Edge& arc(std::uint32_t id) const { return arcs_[id]; }
    std::span<const Edge> arcs() const { return arcs_; }
    /// Ids of arcs leaving u.
    std::span<const std::uint32_t> out(std::uint32_t u) const {
        return {out_ids_.data() + out_start_[u], out_ids_.data() + out_start_[u + 1]};
    }

    /// Vertices that cannot be reached from the source.
    std::vector<std::uint32_t> unreachable() const;

private:
    std::uint32_t n_ = 0;
    std::uint32_t source_ = 0;
    bool directed_ = true;
    std::vector<Edge> arcs_;
    std::vector<std::uint32_t> out_start_{0};
    std::vector<std::uint32_t> out_ids_;
};

/// A graph together with the arena that owns its weights.
struct GraphInstance {
    std::unique_ptr<WeightArena> arena;
    Graph graph;
};

/// Rooted spanning tree given by parent pointers.
struct SpanningTree {
    enum class Role { sssp, exploration, dominator, bfs };

    Role role = Role::sssp;
    std::uint32_t root = 0;
    std::vector<std::uint32_t> parent;       // kNoVertex at the root
    std::vector<std::uint32_t> parent_arc;   // arc into v, when known

    std::size_t size() const { return parent.size(); }
    std::vector<std::vector<std::uint32_t>> children() const;
    /// Vertices in an order where every parent precedes its children.
    std::vector<std::uint32_t> preorder() const;
    /// True when the parent links form one tree rooted at `root`.
    bool valid() const;
};

/// Parses "n m s directed|undirected" followed by m lines "u v w". Blank
/// lines and lines starting with '#' are skipped. Throws ParseError.
GraphInstance parse_graph(std::string_view text, Masking masking = Masking::off);
/// Inverse of parse_graph; reads weights through AuditView.
std::string emit_graph(const Graph& g, const WeightArena& arena);

/// Broom: source 0, leaves 1..t, path t+1..t+r. Path edges weigh 1 and leaf
/// edges get distinct weights above r + 1.
Graph gen_broom(WeightArena& arena, std::uint32_t t, std::uint32_t r, std::uint64_t seed);
/// Dense counterexample with n = k*k path vertices 0..n-1 and extra vertices
/// n..n+k-1, each fed by every path vertex. Weights are the textbook ones
/// scaled by 100 n^2 so they stay integral.
Graph gen_dense(WeightArena& arena, std::uint32_t k, std::uint64_t seed);
Graph gen_star(WeightArena& arena, std::uint32_t n, std::uint64_t seed);
Graph gen_path(WeightArena& arena, std::uint32_t n, std::uint64_t seed);
/// w(s, v_i) = i and w(v_i, v_{i+1}) = 0.5.
Graph gen_fan(WeightArena& arena, std::uint32_t n);
/// Random arborescence from the source plus about edge_factor * n extra arcs.
Graph gen_random_dag(WeightArena& arena, std::uint32_t n, std::uint64_t seed, double edge_factor = 2.0);
Graph gen_random_digraph(WeightArena& arena, std::uint32_t n, std::uint64_t seed, double edge_factor = 2.0);

/// Named families: star, path, fan, random_dag, random_digraph. Throws
/// UsageError for anything else.
Graph gen_family(WeightArena& arena, std::string_view kind, std::uint32_t n, std::uint64_t seed);

/// |F_{G,w}|: arcs uv with d(u) < d(v); for undirected graphs, input edges
/// whose endpoints have different distances. Uses uncounted comparisons.
std::size_t forward_edges(const Graph& g, const WeightArena& arena, std::span<const WeightHandle> dist);

/// |F_{G,w'}| for the perturbation w' = w + eps * delta that turns `order`
/// (a distance ordering) into the strict distance order: arcs uv with
/// d(u) < d(v), or with d(u) = d(v) and u before v in `order`. A lower bound
/// on the maximum of |F_{G,w}| over weights, and equal to forward_edges when
/// distances are distinct.
std::size_t forward_edges_in_order(const Graph& g, const WeightArena& arena, std::span<const WeightHandle> dist,
                                  std::span<const std::uint32_t> order);

/// BFS tree from the source over arcs in input order.
SpanningTree bfs_tree(const Graph& g);

}  // namespace uopt
