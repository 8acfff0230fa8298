#include "patankar/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <fstream>
#include <sstream>

namespace patankar {

namespace {

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

void write_csv(const std::filesystem::path& path, const std::string& meta,
               const std::vector<std::string>& header, const std::vector<Vec>& rows) {
    std::ofstream os(path);
    if (!os) fail(Errc::ConfigError, "cannot open " + path.string() + " for writing");
    if (!meta.empty()) os << "# " << meta << "\n";
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << "\n";
    for (const Vec& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << format_number(row[i]);
        os << "\n";
    }
}

CsvContent read_csv(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) fail(Errc::ConfigError, "cannot open " + path.string());
    CsvContent out;
    std::string line;
    bool header_seen = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            out.meta = line.size() > 2 ? line.substr(2) : "";
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (!header_seen) {
            out.header = fields;
            header_seen = true;
            continue;
        }
        Vec row;
        row.reserve(fields.size());
        for (const std::string& f : fields) row.push_back(std::stod(f));
        out.rows.push_back(std::move(row));
    }
    return out;
}

void write_pgm(const std::filesystem::path& path, int nx, int ny,
               const std::vector<std::uint8_t>& stable) {
    std::ofstream os(path);
    if (!os) fail(Errc::ConfigError, "cannot open " + path.string() + " for writing");
    os << "P2\n" << nx << " " << ny << "\n255\n";
    // Top row of the image is the largest imaginary part.
    for (int iy = ny - 1; iy >= 0; --iy) {
        for (int ix = 0; ix < nx; ++ix) {
            const std::size_t at =
                static_cast<std::size_t>(iy) * static_cast<std::size_t>(nx) +
                static_cast<std::size_t>(ix);
            os << (stable[at] ? 255 : 0) << (ix + 1 == nx ? '\n' : ' ');
        }
    }
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    const TestProblem problem = test_problem(config.problem);
    double dt = config.dt;
    if (config.z) dt = std::abs(*config.z) / std::abs(problem.reference_rate);
    if (!(dt > 0.0) || config.steps < 1)
        fail(Errc::ConfigError, "dt must be positive and steps >= 1");

    const PDSRates rates = rates_from_matrix(problem.pds);
    const StepFn step = make_stepper(config.scheme, rates);

    std::vector<Vec> trajectory;
    trajectory.reserve(static_cast<std::size_t>(config.steps) + 1);
    Vec y = problem.y0;
    {
        Vec row{0.0};
        row.insert(row.end(), y.begin(), y.end());
        trajectory.push_back(std::move(row));
    }
    for (int k = 1; k <= config.steps; ++k) {
        try {
            y = step(y, dt);
        } catch (const Error& e) {
            fail(e.code(), "step " + std::to_string(k) + ": " + e.what());
        }
        Vec row{k * dt};
        row.insert(row.end(), y.begin(), y.end());
        trajectory.push_back(std::move(row));
    }

    ExperimentResult result;
    result.final_state = y;

    std::ostringstream meta;
    meta << "problem=" << problem.name << " scheme=" << config.scheme.label() << " dt="
         << format_number(dt) << " steps=" << config.steps;

    if (!config.out_dir.empty()) std::filesystem::create_directories(config.out_dir);

    if (config.write_trajectory && !config.out_dir.empty()) {
        std::vector<std::string> header{"t"};
        for (std::size_t i = 0; i < problem.pds.dim(); ++i)
            header.push_back("y" + std::to_string(i + 1));
        const auto path = config.out_dir / "trajectory.csv";
        write_csv(path, meta.str(), header, trajectory);
        result.files.push_back(path);
    }

    if (config.write_invariants && !config.out_dir.empty()) {
        std::vector<std::string> header{"t"};
        const auto& basis = problem.pds.invariant_basis();
        for (std::size_t i = 0; i < basis.size(); ++i)
            header.push_back("n" + std::to_string(i + 1) + "_dot_y");
        std::vector<Vec> rows;
        rows.reserve(trajectory.size());
        for (const Vec& tr : trajectory) {
            Vec row{tr[0]};
            for (const Vec& nvec : basis) {
                double acc = 0.0;
                for (std::size_t i = 0; i < nvec.size(); ++i) acc += nvec[i] * tr[i + 1];
                row.push_back(acc);
            }
            rows.push_back(std::move(row));
        }
        const auto path = config.out_dir / "invariants.csv";
        write_csv(path, meta.str(), header, rows);
        result.files.push_back(path);
    }

    if (config.write_error && problem.exact) {
        std::vector<Vec> rows;
        rows.reserve(trajectory.size());
        double last = -1.0;
        for (const Vec& tr : trajectory) {
            const Vec ex = (*problem.exact)(tr[0]);
            double err = 0.0;
            for (std::size_t i = 0; i < ex.size(); ++i)
                err = std::max(err, std::abs(tr[i + 1] - ex[i]));
            rows.push_back(Vec{tr[0], err});
            last = err;
        }
        result.final_error = last;
        if (!config.out_dir.empty()) {
            const auto path = config.out_dir / "error.csv";
            write_csv(path, meta.str(), {"t", "error_inf"}, rows);
            result.files.push_back(path);
        }
    }
    return result;
}

std::vector<OrderRow> convergence_table(ProblemId problem_id, const SchemeSpec& scheme,
                                        std::span<const double> dts, double t_final) {
    const TestProblem problem = test_problem(problem_id);
    if (!problem.exact) fail(Errc::ConfigError, problem.name + " has no closed-form solution");
    const PDSRates rates = rates_from_matrix(problem.pds);
    const StepFn step = make_stepper(scheme, rates);

    std::vector<OrderRow> table;
    double prev_error = 0.0;
    for (double dt : dts) {
        const int n = static_cast<int>(std::llround(t_final / dt));
        if (n < 1 || std::abs(n * dt - t_final) > 1e-9 * t_final)
            fail(Errc::ConfigError, "dt must divide the final time");
        Vec y = problem.y0;
        for (int k = 0; k < n; ++k) y = step(y, dt);
        const Vec ex = (*problem.exact)(t_final);
        double err = 0.0;
        for (std::size_t i = 0; i < ex.size(); ++i) err = std::max(err, std::abs(y[i] - ex[i]));
        OrderRow row{dt, err, std::numeric_limits<double>::quiet_NaN()};
        if (!table.empty()) row.observed_order = std::log2(prev_error / err);
        prev_error = err;
        table.push_back(row);
    }
    return table;
}

std::vector<Vec> stability_ray(const StabilityEvaluator& r, double r_max, double step) {
    std::vector<Vec> rows;
    for (double radius = step; radius <= r_max + 0.5 * step; radius += step) {
        double v;
        try {
            v = std::abs(r(Complex(-radius, 0.0)));
        } catch (const Error&) {
            v = std::numeric_limits<double>::infinity();
        }
        rows.push_back(Vec{-radius, v});
    }
    return rows;
}

void write_raster_outputs(const std::filesystem::path& dir, const std::string& stem,
                          const std::string& meta, const StabilityRaster& raster) {
    std::filesystem::create_directories(dir);
    write_pgm(dir / (stem + ".pgm"), raster.nx, raster.ny, raster.stable);
    std::vector<Vec> rows;
    rows.reserve(raster.abs_r.size());
    for (int iy = 0; iy < raster.ny; ++iy)
        for (int ix = 0; ix < raster.nx; ++ix) {
            const Complex z = raster.cell_center(ix, iy);
            rows.push_back(Vec{z.real(), z.imag(), raster.abs_r[raster.index(ix, iy)]});
        }
    write_csv(dir / (stem + ".csv"), meta, {"re_z", "im_z", "abs_r"}, rows);
}

std::vector<Vec> condition_grid(int alpha_samples, int beta_samples, double alpha_max) {
    const double a0 = MPRK43Params::alpha0();
    std::vector<Vec> rows;
    for (int ia = 0; ia < alpha_samples; ++ia) {
        const double alpha = 1.0 / 3.0 + (alpha_max - 1.0 / 3.0) *
                                             (ia + 0.5) / alpha_samples;
        double beta_lo, beta_hi;
        if (alpha < 2.0 / 3.0) {
            beta_lo = 2.0 / 3.0;
            beta_hi = 3.0 * alpha * (1.0 - alpha);
        } else if (alpha < a0) {
            beta_lo = 3.0 * alpha * (1.0 - alpha);
            beta_hi = 2.0 / 3.0;
        } else {
            beta_lo = (3.0 * alpha - 2.0) / (6.0 * alpha - 3.0);
            beta_hi = 2.0 / 3.0;
        }
        if (!(beta_hi > beta_lo)) continue;
        for (int ib = 0; ib < beta_samples; ++ib) {
            const double beta = beta_lo + (beta_hi - beta_lo) * (ib + 0.5) / beta_samples;
            if (beta == alpha) continue;
            const ConditionReport rep = check_mprk43ab_conditions(alpha, beta);
            Vec row{alpha, beta};
            row.insert(row.end(), rep.c.begin(), rep.c.end());
            row.push_back(rep.pass ? 1.0 : 0.0);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::map<std::string, std::string> read_key_value_config(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) fail(Errc::ConfigError, "cannot open config file " + path.string());
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(is, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!key.empty()) kv[key] = value;
    }
    return kv;
}

}  // namespace patankar
