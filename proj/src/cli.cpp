#include "uopt/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "uopt/audit.hpp"
#include "uopt/errors.hpp"
#include "uopt/optimal.hpp"

namespace uopt::cli {

namespace {

std::uint32_t isqrt(std::uint32_t n) {
    auto s = static_cast<std::uint32_t>(std::sqrt(static_cast<double>(n)));
    while (std::uint64_t{s} * s > n) --s;
    while (std::uint64_t{s + 1} * (s + 1) <= n) ++s;
    return s;
}

std::string fmt_double(double x) {
    std::ostringstream os;
    os << std::setprecision(10) << x;
    return os.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

/// Certificate that dist is the shortest-path distance: tree arcs are tight
/// and no arc relaxes. Uses audit values only.
void audit_sssp(const Graph& g, const WeightArena& arena, const SpanningTree& tree,
                const std::vector<WeightHandle>& dist, Outcome& o) {
    AuditView view(arena);
    for (std::uint32_t v = 0; v < g.n(); ++v) {
        if (v == g.source() || dist[v].is_infinity()) continue;
        const Edge& e = g.arc(tree.parent_arc[v]);
        if (e.to != v || (view.value(dist[e.from]) + view.value(e.weight)).scaled() != view.value(dist[v]).scaled()) {
            o.notes.push_back("tree arc into " + std::to_string(v) + " is not tight");
            o.audit_ok = false;
        }
    }
    for (const Edge& e : g.arcs()) {
        if (dist[e.from].is_infinity()) continue;
        if (dist[e.to].is_infinity() ||
            (view.value(dist[e.from]) + view.value(e.weight)).scaled() < view.value(dist[e.to]).scaled()) {
            o.notes.push_back("arc " + std::to_string(e.from) + "->" + std::to_string(e.to) + " still relaxes");
            o.audit_ok = false;
            return;
        }
    }
}

void audit_order(const std::vector<std::uint32_t>& order, const std::vector<WeightHandle>& dist,
                 const WeightArena& arena, Outcome& o) {
    std::vector<char> seen(dist.size(), 0);
    std::size_t reachable = 0;
    for (auto& d : dist) reachable += !d.is_infinity();
    bool ok = order.size() == reachable;
    for (std::size_t i = 0; ok && i < order.size(); ++i) {
        ok = order[i] < seen.size() && !seen[order[i]];
        if (ok) seen[order[i]] = 1;
        if (ok && i > 0) ok = arena.audit_compare(dist[order[i - 1]], dist[order[i]]) <= 0;
    }
    o.notes.push_back(std::string("linearization ") + (ok ? "sorted" : "NOT sorted"));
    o.audit_ok &= ok;
}

void check(Outcome& o, bool ok, const std::string& what) {
    o.notes.push_back(what + (ok ? " ok" : " VIOLATED"));
    o.audit_ok &= ok;
}

}  // namespace

GraphInstance make_graph(const ExperimentSpec& spec) {
    GraphInstance inst{std::make_unique<WeightArena>(), Graph{}};
    WeightArena& a = *inst.arena;
    if (spec.family == "broom") {
        std::uint32_t t = spec.t, r = spec.r;
        if (t == 0 && r == 0) {
            if (spec.n < 3) throw UsageError("broom needs n >= 3");
            t = isqrt(spec.n);
            r = spec.n - t - 1;
        }
        if (t == 0) throw UsageError("broom needs t >= 1");
        inst.graph = gen_broom(a, t, r, spec.seed);
    } else if (spec.family == "dense") {
        std::uint32_t k = spec.k != 0 ? spec.k : std::max<std::uint32_t>(1, isqrt(spec.n));
        if (k < 2) throw UsageError("dense needs k >= 2");
        inst.graph = gen_dense(a, k, spec.seed);
    } else {
        if (spec.n == 0) throw UsageError("n must be positive");
        inst.graph = gen_family(a, spec.family, spec.n, spec.seed);
    }
    return inst;
}

std::string csv_header() {
    return std::string(kCsvSchema) +
           "\nfamily,n,m,heap,algo,comparisons,additions,cost_I,energy,log_linearizations,forward_edges,wall_ns\n";
}

std::string csv_row(const ReportRow& r) {
    std::ostringstream os;
    os << r.family << ',' << r.n << ',' << r.m << ',' << r.heap << ',' << r.algo << ',' << r.comparisons << ','
       << r.additions << ',' << fmt_double(r.cost_I) << ',' << fmt_double(r.energy) << ','
       << fmt_double(r.log_linearizations) << ',' << r.forward_edges << ',' << r.wall_ns << '\n';
    return os.str();
}

Outcome run_experiment(const ExperimentSpec& spec, GraphInstance& inst, bool audit) {
    const Graph& g = inst.graph;
    WeightArena& arena = *inst.arena;
    Outcome o;
    o.row.family = spec.family;
    o.row.n = g.n();
    o.row.m = g.edge_count();
    o.row.algo = spec.algo;
    arena.reset_counters();

    using clock = std::chrono::steady_clock;
    if (spec.algo == "dijkstra") {
        o.row.heap = std::string(heap_kind_name(spec.heap));
        const auto t0 = clock::now();
        DijkstraRun run = run_dijkstra(g, arena, spec.heap);
        o.row.wall_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(clock::now() - t0).count();
        o.row.comparisons = run.counters.comparisons;
        o.row.additions = run.counters.additions;
        BoundReport rep = bound_report(run, g, arena);
        o.row.cost_I = rep.cost_I;
        o.row.energy = rep.energy;
        o.row.log_linearizations = rep.log_linearizations;
        o.row.forward_edges = rep.forward_edges;
        o.linearization = run.linearization;
        if (audit) {
            audit_order(run.linearization, run.dist, arena, o);
            audit_sssp(g, arena, run.sssp, run.dist, o);
            for (const auto& v : rep.violations) check(o, false, v);
            if (rep.ok()) o.notes.push_back("bounds ok");
        }
    } else if (spec.algo == "optimal") {
        if (!g.directed()) throw UsageError("--algo optimal needs a directed graph");
        if (!g.unreachable().empty()) throw UsageError("--algo optimal needs every vertex reachable");
        o.row.heap = "workset";
        const auto t0 = clock::now();
        OptimalRun run = optimal_distance_ordering(g, arena);
        o.row.wall_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(clock::now() - t0).count();
        o.row.comparisons = run.total.comparisons;
        o.row.additions = run.total.additions;
        auto col = greedy_coloring(run.core.trace);
        o.row.cost_I = cost(run.core.trace);
        o.row.energy = energy(col);
        o.row.log_linearizations = tree_log_linearizations(run.sssp);
        o.row.forward_edges = run.forward_contracted;
        o.linearization = run.linearization;
        if (audit) {
            audit_order(run.linearization, run.dist, arena, o);
            audit_sssp(g, arena, run.sssp, run.dist, o);
            check(o, run.dedup_comparisons + run.contracted_n <= run.forward_contracted_ordered + 1, "dedup budget");
            check(o,
                  double(run.sssp_stage.comparisons) <=
                      kSsspStageConstant * (o.row.energy + run.contracted_n + double(run.forward_contracted_ordered)),
                  "sssp stage budget");
            check(o, double(run.tree_stage.comparisons) <= 2 * o.row.log_linearizations + 1e-9, "tree stage budget");
            o.notes.push_back("contracted_n " + std::to_string(run.contracted_n));
            o.notes.push_back("dedup_comparisons " + std::to_string(run.dedup_comparisons));
            o.notes.push_back("tree_comparisons " + std::to_string(run.tree_stage.comparisons));
        }
    } else {
        throw UsageError("unknown algorithm '" + spec.algo + "'");
    }
    return o;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"universally optimal Dijkstra toolkit"};
    app.require_subcommand(1);

    ExperimentSpec spec;
    std::vector<std::uint32_t> ns{1000};
    std::string heap_list = "workset", algo_list = "dijkstra", out_path, in_path;
    bool audit = false;

    auto add_graph_flags = [&](CLI::App* sub) {
        sub->add_option("--family", spec.family, "broom, dense, star, path, fan, random_dag, random_digraph");
        sub->add_option("--n", ns, "vertex count (comma list for bench)")->delimiter(',');
        sub->add_option("--t", spec.t, "broom leaf count");
        sub->add_option("--r", spec.r, "broom path length");
        sub->add_option("--k", spec.k, "dense side length");
        sub->add_option("--seed", spec.seed, "generator seed");
    };
    CLI::App* gen = app.add_subcommand("gen", "write a generated graph as an edge list");
    add_graph_flags(gen);
    gen->add_option("--out", out_path, "output file (default stdout)");

    CLI::App* runc = app.add_subcommand("run", "run one algorithm and print the linearization");
    add_graph_flags(runc);
    runc->add_option("--in", in_path, "read the graph from an edge-list file");
    runc->add_option("--heap", heap_list, "workset, fibonacci, binary, pairing");
    runc->add_option("--algo", algo_list, "dijkstra or optimal");
    runc->add_option("--out", out_path, "output file (default stdout)");
    runc->add_flag("--audit", audit, "append bound checks");

    CLI::App* bench = app.add_subcommand("bench", "sweep sizes, heaps and algorithms into CSV");
    add_graph_flags(bench);
    bench->add_option("--heap", heap_list, "comma list of heaps");
    bench->add_option("--algo", algo_list, "comma list of algorithms");
    bench->add_option("--out", out_path, "CSV file, appended to (default stdout)");

    CLI::App* auditc = app.add_subcommand("audit", "run Dijkstra and check every lower bound");
    add_graph_flags(auditc);
    auditc->add_option("--in", in_path, "read the graph from an edge-list file");
    auditc->add_option("--heap", heap_list, "heap kind");
    auditc->add_option("--algo", algo_list, "dijkstra or optimal");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    auto split = [](const std::string& s) {
        std::vector<std::string> parts;
        std::stringstream ss(s);
        for (std::string p; std::getline(ss, p, ',');)
            if (!p.empty()) parts.push_back(p);
        return parts;
    };

    try {
        if (ns.empty()) throw UsageError("--n needs a value");
        spec.n = ns.front();
        auto load = [&]() {
            if (!in_path.empty()) {
                spec.family = "file";
                return parse_graph(read_file(in_path));
            }
            return make_graph(spec);
        };
        std::ofstream file;
        auto sink = [&](std::ios::openmode mode) -> std::ostream& {
            if (out_path.empty()) return out;
            file.open(out_path, mode);
            if (!file) throw UsageError("cannot write '" + out_path + "'");
            return file;
        };

        if (gen->parsed()) {
            GraphInstance inst = make_graph(spec);
            sink(std::ios::out | std::ios::binary) << emit_graph(inst.graph, *inst.arena);
            return kExitOk;
        }
        if (runc->parsed() || auditc->parsed()) {
            spec.algo = algo_list;
            spec.heap = parse_heap_kind(heap_list);
            GraphInstance inst = load();
            const bool with_audit = audit || auditc->parsed();
            Outcome o = run_experiment(spec, inst, with_audit);
            std::ostream& os = sink(std::ios::out);
            os << "# family " << o.row.family << " n " << o.row.n << " m " << o.row.m << " algo " << o.row.algo
               << " heap " << o.row.heap << '\n';
            os << "# comparisons " << o.row.comparisons << '\n';
            os << "# additions " << o.row.additions << '\n';
            if (runc->parsed())
                for (auto v : o.linearization) os << v << '\n';
            if (with_audit) {
                os << "# cost_I " << fmt_double(o.row.cost_I) << '\n';
                os << "# energy " << fmt_double(o.row.energy) << '\n';
                os << "# log_linearizations " << fmt_double(o.row.log_linearizations) << '\n';
                os << "# forward_edges " << o.row.forward_edges << '\n';
                for (const auto& note : o.notes) os << "# audit " << note << '\n';
                os << "# audit " << (o.audit_ok ? "PASS" : "FAIL") << '\n';
            }
            return o.audit_ok ? kExitOk : kExitInvariant;
        }
        if (bench->parsed()) {
            const auto heaps = split(heap_list);
            const auto algos = split(algo_list);
            std::vector<HeapKind> kinds;
            for (const auto& h : heaps) kinds.push_back(parse_heap_kind(h));
            for (const auto& a : algos)
                if (a != "dijkstra" && a != "optimal") throw UsageError("unknown algorithm '" + a + "'");
            bool fresh = out_path.empty();
            if (!fresh) {
                std::ifstream probe(out_path);
                fresh = !probe || probe.peek() == std::ifstream::traits_type::eof();
            }
            std::ostream& os = sink(std::ios::out | std::ios::app);
            if (fresh) os << csv_header();
            for (std::uint32_t n : ns) {
                ExperimentSpec s = spec;
                s.n = n;
                if (s.family == "broom") s.t = s.r = 0;
                for (const auto& a : algos) {
                    s.algo = a;
                    // the optimal pipeline always uses the working-set heap
                    const std::vector<HeapKind> run_kinds =
                        a == "optimal" ? std::vector<HeapKind>{HeapKind::workset} : kinds;
                    for (HeapKind kind : run_kinds) {
                        s.heap = kind;
                        GraphInstance inst = make_graph(s);
                        os << csv_row(run_experiment(s, inst, false).row);
                        os.flush();
                    }
                }
            }
            return kExitOk;
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "input error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ContractViolation& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const InvariantViolation& e) {
        err << "invariant violation: " << e.what() << '\n';
        return kExitInvariant;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInvariant;
    }
    return kExitUsage;
}

}  // namespace uopt::cli
