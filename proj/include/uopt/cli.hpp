#pragma once

// Command-line harness: gen | run | bench | audit.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "uopt/dijkstra.hpp"
#include "uopt/graph.hpp"

namespace uopt::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInvariant = 2;

/// Everything needed to reproduce one run.
struct ExperimentSpec {
    std::string family = "random_digraph";
    std::uint32_t n = 1000;
    std::uint32_t t = 0;   // broom leaves; 0 derives floor(sqrt n)
    std::uint32_t r = 0;   // broom path; 0 derives n - t - 1
    std::uint32_t k = 0;   // dense side; 0 derives round(sqrt n)
    std::uint64_t seed = 1;
    std::string algo = "dijkstra";
    HeapKind heap = HeapKind::workset;
};

/// Builds the graph a spec names. Throws UsageError on a bad family or size.
GraphInstance make_graph(const ExperimentSpec& spec);

struct ReportRow {
    std::string family;
    std::uint32_t n = 0;
    std::size_t m = 0;
    std::string heap;
    std::string algo;
    std::uint64_t comparisons = 0;
    std::uint64_t additions = 0;
    double cost_I = 0;
    double energy = 0;
    double log_linearizations = 0;
    std::size_t forward_edges = 0;
    std::int64_t wall_ns = 0;
};

inline constexpr const char* kCsvSchema = "# schema uopt-bench v1";
std::string csv_header();
std::string csv_row(const ReportRow& row);

/// Runs the spec's algorithm on `inst`. With `audit`, bound checks are
/// appended to `notes`; the return value is false if any failed.
struct Outcome {
    ReportRow row;
    std::vector<std::uint32_t> linearization;
    std::vector<std::string> notes;
    bool audit_ok = true;
};
Outcome run_experiment(const ExperimentSpec& spec, GraphInstance& inst, bool audit);

/// Entry point; args exclude the program name. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace uopt::cli
