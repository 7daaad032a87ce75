#pragma once

// Command implementations shared by the CLI and the acceptance suite. Every
// function here returns the exact bytes the CLI writes.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gridweave/census.hpp"
#include "gridweave/drawing.hpp"
#include "gridweave/graph.hpp"

namespace gridweave {

// ---- draw ------------------------------------------------------------------

struct DrawResult {
    DrawingOutcome outcome;
    std::string json;  // embedding file contents; empty when no drawing was found
};

/// Draws, then re-parses the serialized embedding and re-verifies it before
/// returning. Throws BudgetExhausted when no drawing was found.
DrawResult run_draw(const Graph& g, Algorithm alg, const DrawingParams& params);

// ---- count -----------------------------------------------------------------

struct CountRequest {
    CensusKind kind = CensusKind::CollinearKSets;
    std::int32_t d = 3;
    std::int32_t k = 3;
    std::vector<std::int32_t> sizes;
    CensusStrategy strategy = CensusStrategy::Auto;
    std::vector<std::int64_t> normal;  // hyperplane-count only
    bool fit = false;
};

/// CSV with header kind,d,k,m,count,elapsed_ms; with `fit`, a trailing
/// growth-exponent row carries the fitted slope in the count column.
std::string run_count(const CountRequest& request);

CensusKind parse_census_kind(std::string_view name);

// ---- bench -----------------------------------------------------------------

struct ExperimentConfig {
    FamilySpec family;
    std::vector<std::int32_t> sizes;
    Algorithm algorithm = Algorithm::BlowupGreedy;
    DrawingParams params;
    std::int32_t trials = 1;
    std::uint64_t master_seed = 1;
    double reverify_fraction = 1.0;
    bool record_timing = false;  // elapsed_ms is left empty unless set, keeping output reproducible
    std::string out_records;
    std::string out_summary;
    std::string drawings_dir;  // when set, every successful drawing is written here and re-read
};

/// Parses the JSON config. Throws ParseError on schema violations and
/// InfeasibleError when a family/size combination cannot be generated.
ExperimentConfig parse_experiment_config(std::string_view text);

/// Throws InfeasibleError if any trial would be infeasible.
void validate_experiment(const ExperimentConfig& config);

struct ExperimentRecord {
    std::int32_t size = 0;
    std::int32_t trial = 0;
    std::uint64_t seed = 0;
    std::int32_t n = 0;
    std::int64_t k = 0;
    std::int32_t degeneracy = 0;
    bool success = false;
    std::int64_t m = 0;
    std::int32_t t = 1;
    std::int64_t attempts = 0;
    std::int32_t escalations = 0;
    std::int64_t volume = 0;
    std::optional<double> ratio;  // m^3 / (D K ln n)
    double aspect_ratio = 0.0;
    std::optional<bool> verified;  // empty when not selected for re-verification
    bool edge_bound_ok = true;
    double elapsed_ms = 0.0;
    std::optional<Embedding> embedding;
};

struct BenchReport {
    std::vector<ExperimentRecord> records;
    std::string records_csv;
    std::string summary_json;
    std::int64_t verification_failures = 0;
};

/// Per-trial seed: derive_seed(master, size_index * trials + trial). The graph
/// is generated from mix64 of that seed, the drawing from the seed itself.
BenchReport run_bench(const ExperimentConfig& config);

}  // namespace gridweave
