#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "patankar/problems.hpp"
#include "patankar/schemes.hpp"

namespace patankar {

/// CSV helpers: RFC-4180-style records, '.' decimal separator, 17 significant
/// digits, '#'-prefixed metadata line first so identical configs produce
/// identical bytes.
void write_csv(const std::filesystem::path& path, const std::string& meta,
               const std::vector<std::string>& header, const std::vector<Vec>& rows);

struct CsvContent {
    std::string meta;
    std::vector<std::string> header;
    std::vector<Vec> rows;
};

CsvContent read_csv(const std::filesystem::path& path);

/// P2 PGM, 0 = unstable, 255 = stable.
void write_pgm(const std::filesystem::path& path, int nx, int ny,
               const std::vector<std::uint8_t>& stable);

struct ExperimentConfig {
    ProblemId problem = ProblemId::Real3;
    SchemeSpec scheme;
    double dt = 0.05;
    int steps = 100;
    std::filesystem::path out_dir;
    bool write_trajectory = true;
    bool write_invariants = true;
    bool write_error = true;
    /// When set, dt is derived as |z| / |reference rate| of the problem.
    std::optional<double> z;
};

struct ExperimentResult {
    Vec final_state;
    double final_error = -1.0;  // vs exact solution when available
    std::vector<std::filesystem::path> files;
};

/// Steps the scheme and emits trajectory / invariant / error CSVs.
ExperimentResult run_experiment(const ExperimentConfig& config);

struct OrderRow {
    double dt;
    double error;
    double observed_order;  // log2(e(2 dt) / e(dt)); NaN on the first row
};

/// Error at fixed final time t_final for each dt (halving list expected),
/// against the problem's closed-form solution.
std::vector<OrderRow> convergence_table(ProblemId problem, const SchemeSpec& scheme,
                                        std::span<const double> dts, double t_final);

/// |R(-r)| samples over a ray, as CSV rows (r, |R|).
std::vector<Vec> stability_ray(const StabilityEvaluator& r, double r_max, double step);

/// Raster written as PGM plus CSV of (Re z, Im z, |R|).
void write_raster_outputs(const std::filesystem::path& dir, const std::string& stem,
                          const std::string& meta, const StabilityRaster& raster);

/// Condition values c2..c7 sampled over the admissible (alpha, beta) region,
/// one CSV row per grid point: (alpha, beta, c0..c7, pass).
std::vector<Vec> condition_grid(int alpha_samples, int beta_samples, double alpha_max = 2.0);

/// Flat key=value config file (one pair per line, '#' comments).
std::map<std::string, std::string> read_key_value_config(const std::filesystem::path& path);

}  // namespace patankar
