#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hilberg/codes.hpp"
#include "hilberg/exponents.hpp"
#include "hilberg/process.hpp"

namespace hilberg {

struct ExperimentConfig {
    ProcessSpec process = ProcessSpec::mixture_bernoulli();
    std::uint32_t k_min = 2;       // smallest half-length exponent
    std::uint32_t k_max = 10;      // largest half-length exponent
    std::uint64_t replicates = 1;
    std::uint64_t seed = 0;
    bool attach_analytic = false;  // fill analytic_mi where tractable
    std::optional<Codec> codec;    // estimate MI from code lengths instead
    double tol = 1e-8;             // series tolerance for analytic values
    std::uint32_t threads = 0;     // replicate workers; 0 = hardware default

    // Enforces 2 <= k_min < k_max <= 24 and replicates >= 1.
    void validate() const;

    std::string describe() const; // one-line summary for the CSV comment
};

struct SimulationResult {
    std::vector<CurveRecord> curve; // ascending n, one row per k
    // trajectories[r][i]: pointwise value of replicate r at curve[i].n.
    std::vector<std::vector<double>> trajectories;
};

// Monte Carlo curve over nested windows: each replicate draws one window of
// half-length 2^k_max and evaluates every smaller n on its inner slices, so
// the grid points of a replicate share one realization. Deterministic in
// (config, seed) regardless of scheduling.
SimulationResult run_simulation(const ExperimentConfig& config);

// Closed-form curve, replicates = 0, var = 0, harmonic = 1/(I + B).
std::vector<CurveRecord> analytic_curve(const ProcessSpec& process, std::uint32_t k_min,
                                        std::uint32_t k_max, double tol = 1e-8);

// CLI bodies. Each writes the CSV/JSON to `out_path` ("-" = stdout) and
// returns the process exit code.
int run_simulate(const ExperimentConfig& config, const std::string& out_path);
int run_analytic(const ProcessSpec& process, std::uint32_t k_min, std::uint32_t k_max,
                 double tol, const std::string& out_path);
int run_estimate(const std::string& curve_csv_path, std::optional<std::uint32_t> k0,
                 const std::string& out_path);
// Slides non-overlapping two-sided byte windows of half-length 2^k over the
// file for each k in [k_min, k_max], aggregates code_pmi per length into a
// curve (written to out_path) and an exponent report (written to
// report_path). Bytes are the alphabet, so only Lz78 applies.
int run_code_mi(const std::string& input_path, Codec codec, std::uint32_t k_min,
                std::uint32_t k_max, const std::string& out_path,
                const std::string& report_path);
int run_schedule(double beta, std::uint32_t num_blocks, const std::string& out_path);

// Report serialized as one JSON document; `config_echo` key/value pairs land
// in a nested "config" object so runs stay auditable.
std::string report_to_json(const ExponentReport& report,
                           const std::vector<std::pair<std::string, std::string>>& config_echo = {});

} // namespace hilberg
