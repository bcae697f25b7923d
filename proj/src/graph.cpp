#include "uopt/graph.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "uopt/errors.hpp"

namespace uopt {

Graph::Graph(std::uint32_t n, std::uint32_t source, bool directed, std::vector<Edge> arcs)
    : n_(n), source_(source), directed_(directed), arcs_(std::move(arcs)) {
    if (n == 0 || source >= n) throw ContractViolation("source out of range");
    if (!directed && arcs_.size() % 2 != 0) throw ContractViolation("undirected graph needs arc pairs");
    out_start_.assign(n + 1, 0);
    for (const Edge& e : arcs_) {
        if (e.from >= n || e.to >= n) throw ContractViolation("edge endpoint out of range");
        ++out_start_[e.from + 1];
    }
    std::partial_sum(out_start_.begin(), out_start_.end(), out_start_.begin());
    out_ids_.resize(arcs_.size());
    std::vector<std::uint32_t> fill(out_start_.begin(), out_start_.end() - 1);
    for (std::uint32_t i = 0; i < arcs_.size(); ++i) out_ids_[fill[arcs_[i].from]++] = i;
}

std::vector<std::uint32_t> Graph::unreachable() const {
    std::vector<char> seen(n_, 0);
    std::vector<std::uint32_t> stack{source_};
    seen[source_] = 1;
    while (!stack.empty()) {
        std::uint32_t u = stack.back();
        stack.pop_back();
        for (std::uint32_t a : out(u)) {
            std::uint32_t v = arcs_[a].to;
            if (!seen[v]) {
                seen[v] = 1;
                stack.push_back(v);
            }
        }
    }
    std::vector<std::uint32_t> out_v;
    for (std::uint32_t v = 0; v < n_; ++v)
        if (!seen[v]) out_v.push_back(v);
    return out_v;
}

std::vector<std::vector<std::uint32_t>> SpanningTree::children() const {
    std::vector<std::vector<std::uint32_t>> ch(parent.size());
    for (std::uint32_t v = 0; v < parent.size(); ++v)
        if (parent[v] != kNoVertex) ch[parent[v]].push_back(v);
    return ch;
}

std::vector<std::uint32_t> SpanningTree::preorder() const {
    auto ch = children();
    std::vector<std::uint32_t> order;
    order.reserve(parent.size());
    std::vector<std::uint32_t> stack{root};
    while (!stack.empty()) {
        std::uint32_t u = stack.back();
        stack.pop_back();
        order.push_back(u);
        for (auto it = ch[u].rbegin(); it != ch[u].rend(); ++it) stack.push_back(*it);
    }
    return order;
}

bool SpanningTree::valid() const {
    if (root >= parent.size() || parent[root] != kNoVertex) return false;
    for (std::uint32_t v = 0; v < parent.size(); ++v)
        if (v != root && (parent[v] == kNoVertex || parent[v] >= parent.size())) return false;
    return preorder().size() == parent.size();
}

namespace {

std::uint32_t parse_index(const std::string& tok, std::size_t line, const char* what) {
    if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw ParseError(line, std::string("malformed ") + what + " '" + tok + "'");
    unsigned long long v = std::stoull(tok);
    if (v >= kNoVertex) throw ParseError(line, std::string(what) + " too large");
    return static_cast<std::uint32_t>(v);
}

}  // namespace

GraphInstance parse_graph(std::string_view text, Masking masking) {
    GraphInstance out{std::make_unique<WeightArena>(masking), {}};
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line_no = 0;
    bool have_header = false;
    std::uint32_t n = 0, source = 0;
    std::size_t m = 0;
    bool directed = true;
    std::size_t header_line = 0;
    std::vector<Edge> arcs;
    while (std::getline(in, raw)) {
        ++line_no;
        std::istringstream ls(raw);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.empty() || tok[0][0] == '#') continue;
        if (!have_header) {
            if (tok.size() != 4) throw ParseError(line_no, "header must be 'n m s directed|undirected'");
            n = parse_index(tok[0], line_no, "vertex count");
            m = parse_index(tok[1], line_no, "edge count");
            source = parse_index(tok[2], line_no, "source");
            if (tok[3] == "directed") {
                directed = true;
            } else if (tok[3] == "undirected") {
                directed = false;
            } else {
                throw ParseError(line_no, "expected 'directed' or 'undirected'");
            }
            if (n == 0) throw ParseError(line_no, "graph needs at least one vertex");
            if (source >= n) throw ParseError(line_no, "source out of range");
            have_header = true;
            header_line = line_no;
            continue;
        }
        if (tok.size() != 3) throw ParseError(line_no, "edge line must be 'u v w'");
        std::size_t read = directed ? arcs.size() : arcs.size() / 2;
        if (read >= m) throw ParseError(line_no, "more edge lines than announced");
        std::uint32_t u = parse_index(tok[0], line_no, "vertex");
        std::uint32_t v = parse_index(tok[1], line_no, "vertex");
        if (u >= n || v >= n) throw ParseError(line_no, "vertex out of range");
        ExactValue w;
        try {
            w = ExactValue::parse(tok[2]);
        } catch (const std::exception& e) {
            throw ParseError(line_no, e.what());
        }
        if (w == ExactValue{}) throw ParseError(line_no, "weight must be positive");
        WeightHandle h = out.arena->intern(w);
        arcs.push_back({u, v, h});
        if (!directed) arcs.push_back({v, u, h});
    }
    if (!have_header) throw ParseError(line_no, "missing header");
    std::size_t read = directed ? arcs.size() : arcs.size() / 2;
    if (read != m) throw ParseError(line_no, "expected " + std::to_string(m) + " edges, found " + std::to_string(read));
    out.graph = Graph(n, source, directed, std::move(arcs));
    auto missing = out.graph.unreachable();
    if (!missing.empty())
        throw ParseError(header_line, "vertex " + std::to_string(missing.front()) + " is unreachable from the source");
    return out;
}

std::string emit_graph(const Graph& g, const WeightArena& arena) {
    AuditView view(arena);
    std::ostringstream os;
    os << g.n() << ' ' << g.edge_count() << ' ' << g.source() << ' ' << (g.directed() ? "directed" : "undirected")
       << '\n';
    const std::size_t step = g.directed() ? 1 : 2;
    for (std::size_t i = 0; i < g.arc_count(); i += step) {
        const Edge& e = g.arc(static_cast<std::uint32_t>(i));
        os << e.from << ' ' << e.to << ' ' << view.value(e.weight).to_string() << '\n';
    }
    return os.str();
}

namespace {

constexpr std::int64_t kMaxRandomWeight = 1'000'000'000;

WeightHandle int_weight(WeightArena& arena, std::int64_t v) { return arena.intern(ExactValue::from_integer(v)); }

std::int64_t random_weight(std::mt19937_64& rng) {
    return std::uniform_int_distribution<std::int64_t>(1, kMaxRandomWeight)(rng);
}

}  // namespace

Graph gen_broom(WeightArena& arena, std::uint32_t t, std::uint32_t r, std::uint64_t seed) {
    if (t < 1 || r < 1) throw UsageError("broom needs t >= 1 and r >= 1");
    std::mt19937_64 rng(seed);
    std::vector<std::int64_t> offsets(t);
    std::iota(offsets.begin(), offsets.end(), 0);
    std::shuffle(offsets.begin(), offsets.end(), rng);
    std::vector<Edge> arcs;
    arcs.reserve(t + r);
    for (std::uint32_t i = 0; i < t; ++i)
        arcs.push_back({0, 1 + i, int_weight(arena, static_cast<std::int64_t>(r) + 2 + offsets[i])});
    WeightHandle one = int_weight(arena, 1);
    for (std::uint32_t j = 0; j < r; ++j) arcs.push_back({j == 0 ? 0u : t + j, t + 1 + j, one});
    return Graph(1 + t + r, 0, true, std::move(arcs));
}

Graph gen_dense(WeightArena& arena, std::uint32_t k, std::uint64_t seed) {
    if (k < 1) throw UsageError("dense needs k >= 1");
    const std::uint32_t n = k * k;
    const std::int64_t nn = n;
    const std::int64_t scale = 100 * nn * nn;  // epsilon = 1 / scale
    std::mt19937_64 rng(seed);
    std::vector<Edge> arcs;
    arcs.reserve((n - 1) + static_cast<std::size_t>(n) * k);
    WeightHandle eps = int_weight(arena, 1);
    for (std::uint32_t i = 0; i + 1 < n; ++i) arcs.push_back({i, i + 1, eps});
    std::vector<std::int64_t> a(k);
    for (std::uint32_t i = 0; i < n; ++i) {
        std::iota(a.begin(), a.end(), 1);
        std::shuffle(a.begin(), a.end(), rng);
        const std::int64_t i1 = i + 1;  // 1-based path position
        for (std::uint32_t j = 0; j < k; ++j) {
            // n - i + a_i[j] / n, scaled
            std::int64_t w = (nn - i1) * scale + a[j] * (scale / nn);
            arcs.push_back({i, n + j, int_weight(arena, w)});
        }
    }
    return Graph(n + k, 0, true, std::move(arcs));
}

Graph gen_star(WeightArena& arena, std::uint32_t n, std::uint64_t seed) {
    if (n < 1) throw UsageError("star needs n >= 1");
    std::mt19937_64 rng(seed);
    std::vector<Edge> arcs;
    for (std::uint32_t v = 1; v < n; ++v) arcs.push_back({0, v, int_weight(arena, random_weight(rng))});
    return Graph(n, 0, true, std::move(arcs));
}

Graph gen_path(WeightArena& arena, std::uint32_t n, std::uint64_t seed) {
    if (n < 1) throw UsageError("path needs n >= 1");
    std::mt19937_64 rng(seed);
    std::vector<Edge> arcs;
    for (std::uint32_t v = 1; v < n; ++v) arcs.push_back({v - 1, v, int_weight(arena, random_weight(rng))});
    return Graph(n, 0, true, std::move(arcs));
}

Graph gen_fan(WeightArena& arena, std::uint32_t n) {
    if (n < 1) throw UsageError("fan needs n >= 1");
    std::vector<Edge> arcs;
    WeightHandle half = arena.intern(ExactValue::parse("0.5"));
    for (std::uint32_t i = 1; i < n; ++i) arcs.push_back({0, i, int_weight(arena, i)});
    for (std::uint32_t i = 1; i + 1 < n; ++i) arcs.push_back({i, i + 1, half});
    return Graph(n, 0, true, std::move(arcs));
}

namespace {

std::size_t extra_count(std::uint32_t n, double edge_factor) {
    if (edge_factor < 0) throw UsageError("edge factor must be nonnegative");
    return static_cast<std::size_t>(edge_factor * n);
}

}  // namespace

Graph gen_random_dag(WeightArena& arena, std::uint32_t n, std::uint64_t seed, double edge_factor) {
    if (n < 1) throw UsageError("random_dag needs n >= 1");
    std::mt19937_64 rng(seed);
    std::vector<Edge> arcs;
    for (std::uint32_t v = 1; v < n; ++v) {
        auto u = static_cast<std::uint32_t>(std::uniform_int_distribution<std::uint32_t>(0, v - 1)(rng));
        arcs.push_back({u, v, int_weight(arena, random_weight(rng))});
    }
    if (n >= 2) {
        std::uniform_int_distribution<std::uint32_t> pick(0, n - 1);
        for (std::size_t e = extra_count(n, edge_factor); e > 0; --e) {
            std::uint32_t u = pick(rng), v = pick(rng);
            if (u == v) continue;
            if (u > v) std::swap(u, v);
            arcs.push_back({u, v, int_weight(arena, random_weight(rng))});
        }
    }
    return Graph(n, 0, true, std::move(arcs));
}

Graph gen_random_digraph(WeightArena& arena, std::uint32_t n, std::uint64_t seed, double edge_factor) {
    if (n < 1) throw UsageError("random_digraph needs n >= 1");
    std::mt19937_64 rng(seed);
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin() + 1, order.end(), rng);
    std::vector<Edge> arcs;
    for (std::uint32_t i = 1; i < n; ++i) {
        auto p = std::uniform_int_distribution<std::uint32_t>(0, i - 1)(rng);
        arcs.push_back({order[p], order[i], int_weight(arena, random_weight(rng))});
    }
    if (n >= 2) {
        std::uniform_int_distribution<std::uint32_t> pick(0, n - 1);
        for (std::size_t e = extra_count(n, edge_factor); e > 0; --e) {
            std::uint32_t u = pick(rng), v = pick(rng);
            if (u == v) continue;
            arcs.push_back({u, v, int_weight(arena, random_weight(rng))});
        }
    }
    std::shuffle(arcs.begin(), arcs.end(), rng);
    return Graph(n, 0, true, std::move(arcs));
}

Graph gen_family(WeightArena& arena, std::string_view kind, std::uint32_t n, std::uint64_t seed) {
    if (kind == "star") return gen_star(arena, n, seed);
    if (kind == "path") return gen_path(arena, n, seed);
    if (kind == "fan") return gen_fan(arena, n);
    if (kind == "random_dag") return gen_random_dag(arena, n, seed);
    if (kind == "random_digraph") return gen_random_digraph(arena, n, seed);
    throw UsageError("unknown graph family '" + std::string(kind) + "'");
}

std::size_t forward_edges(const Graph& g, const WeightArena& arena, std::span<const WeightHandle> dist) {
    if (dist.size() != g.n()) throw ContractViolation("distance vector has the wrong length");
    std::size_t count = 0;
    const std::size_t step = g.directed() ? 1 : 2;
    for (std::size_t i = 0; i < g.arc_count(); i += step) {
        const Edge& e = g.arc(static_cast<std::uint32_t>(i));
        int c = arena.audit_compare(dist[e.from], dist[e.to]);
        if (g.directed() ? c < 0 : c != 0) ++count;
    }
    return count;
}

std::size_t forward_edges_in_order(const Graph& g, const WeightArena& arena, std::span<const WeightHandle> dist,
                                  std::span<const std::uint32_t> order) {
    if (dist.size() != g.n()) throw ContractViolation("distance vector has the wrong length");
    std::vector<std::size_t> rank(g.n(), SIZE_MAX);
    for (std::size_t i = 0; i < order.size(); ++i) rank.at(order[i]) = i;
    std::size_t count = 0;
    const std::size_t step = g.directed() ? 1 : 2;
    for (std::size_t i = 0; i < g.arc_count(); i += step) {
        const Edge& e = g.arc(static_cast<std::uint32_t>(i));
        int c = arena.audit_compare(dist[e.from], dist[e.to]);
        if (c == 0 && rank[e.from] != rank[e.to]) c = rank[e.from] < rank[e.to] ? -1 : 1;
        if (g.directed() ? c < 0 : c != 0) ++count;
    }
    return count;
}

SpanningTree bfs_tree(const Graph& g) {
    SpanningTree t;
    t.role = SpanningTree::Role::bfs;
    t.root = g.source();
    t.parent.assign(g.n(), kNoVertex);
    t.parent_arc.assign(g.n(), kNoVertex);
    std::vector<char> seen(g.n(), 0);
    std::vector<std::uint32_t> queue{g.source()};
    seen[g.source()] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        std::uint32_t u = queue[head];
        for (std::uint32_t a : g.out(u)) {
            std::uint32_t v = g.arc(a).to;
            if (seen[v]) continue;
            seen[v] = 1;
            t.parent[v] = u;
            t.parent_arc[v] = a;
            queue.push_back(v);
        }
    }
    return t;
}

}  // namespace uopt
