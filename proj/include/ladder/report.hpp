#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ladder/classify.hpp"
#include "ladder/simulate.hpp"
#include "ladder/system_file.hpp"

namespace ladder {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kReportVersion = "1";

std::string sha256_hex(const std::string& bytes);

struct AnalyzeOptions {
    double tol = 1e-12;        // Perron residual tolerance
    double drift_tol = 1e-9;   // relative drift balance tolerance
    int window = 8;
    int series_n = 32;
    std::optional<std::size_t> state;  // default: largest Parry weight
    long sim_trials = 200;
    long sim_horizon = 10000;
    long sim_steps = 4096;
    std::uint64_t seed = 1;
    bool simulate = true;
};

struct LiftSummary {
    bool degenerate = false;  // no cross-level blocks
    int band = 0;
    std::size_t group = 1;
    std::size_t block_dim = 0;
    bool eval_at_one_matches = false;
    ShiftChain chain;
};

struct SimulationSummary {
    std::uint64_t seed = 0;
    long steps = 0;
    ReturnStats stats;
    Diffusion diffusion;
    std::string verdict;  // "diffusive" or "ballistic"
};

struct Analysis {
    std::string name;
    Mode mode = Mode::Penner;
    std::string digest;
    ValidationReport validation;
    IntMatrix base;
    PerronData perron;
    double tol = 0;
    unsigned base_period = 0;
    LiftSummary lift;
    Classification classification;
    ReturnSeries series;
    SeriesVerdict series_verdict;
    std::optional<SimulationSummary> simulation;
    std::vector<std::string> discrepancies;
};

// Stops after validation when the Penner hypotheses fail (analysis.validation not ok).
Analysis analyze(const SystemFile& sf, const std::string& digest, const AnalyzeOptions& opt);

// Base matrix and chain for any mode (the lift for curve modes, the blocks for raw chains).
struct ChainInput {
    IntMatrix base;
    LiftSummary lift;
};
ChainInput chain_of(const SystemFile& sf);

std::size_t default_state(const IntMatrix& base, const PerronData& pd);

std::string render_report_text(const Analysis& a);
std::string render_report_json(const Analysis& a);
std::string render_report_csv(const Analysis& a);

std::string render_series_csv(const ReturnSeries& rs);

std::string render_stats_text(const SimulationSummary& s);
std::string render_stats_json(const SimulationSummary& s);
std::string render_svg(const SimulationSummary& s);

}  // namespace ladder
