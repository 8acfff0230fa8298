#include <CLI11.hpp>

#include <future>
#include <iostream>
#include <numbers>

#include "patankar/experiments.hpp"

namespace {

using namespace patankar;

constexpr int kExitOk = 0;
constexpr int kExitNumerical = 1;
constexpr int kExitConfig = 2;

int exit_code_for(Errc code) {
    switch (code) {
        case Errc::ConfigError:
        case Errc::UnknownProblem:
        case Errc::InvalidParams:
        case Errc::DegenerateParams:
        case Errc::OrderOutOfRange:
        case Errc::DimensionMismatch: return kExitConfig;
        default: return kExitNumerical;
    }
}

struct SchemeOptions {
    std::string name = "mprk32";
    double alpha = 0.5;
    double beta = 2.0 / 3.0;
    double gamma = 0.5;
    int order_p = 3;
    std::string nodes = "gl";

    [[nodiscard]] NodeKind node_kind() const {
        if (nodes == "equi") return NodeKind::Equispaced;
        if (nodes == "gl") return NodeKind::GaussLobatto;
        fail(Errc::ConfigError, "--nodes must be 'equi' or 'gl'");
    }

    [[nodiscard]] SchemeSpec resolve(const std::string& override_name) const {
        const std::string& n = override_name.empty() ? name : override_name;
        if (n == "mpe") return SchemeSpec::mpe();
        if (n == "mprk32") return SchemeSpec::mprk32();
        if (n == "mprk43ab") return SchemeSpec::mprk43ab(alpha, beta);
        if (n == "mprk43g") return SchemeSpec::mprk43g(gamma);
        if (n == "mpdec") return SchemeSpec::mpdec(order_p, node_kind());
        fail(Errc::ConfigError, "unknown scheme '" + n + "' (see list-schemes)");
    }
};

void add_scheme_flags(CLI::App* cmd, SchemeOptions& opts) {
    cmd->add_option("--scheme", opts.name, "scheme name (see list-schemes)");
    cmd->add_option("--alpha", opts.alpha, "MPRK43(alpha,beta) alpha");
    cmd->add_option("--beta", opts.beta, "MPRK43(alpha,beta) beta");
    cmd->add_option("--gamma", opts.gamma, "MPRK43(gamma) gamma");
    cmd->add_option("--order-p", opts.order_p, "MPDeC order p in [1,14]");
    cmd->add_option("--nodes", opts.nodes, "MPDeC node family: equi or gl");
}

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : csv) {
        if (ch == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

void warn_if_invariants_lost(const SchemeSpec& spec) {
    if (spec.family != SchemeSpec::Family::MPDeC) return;
    const MPDeCConfig c = MPDeCConfig::make(spec.order, spec.nodes);
    if (!c.conserves_all_invariants())
        std::cerr << "warning: " << spec.label()
                  << " has negative final-column correction weights; only the total sum "
                     "is conserved, not every linear invariant\n";
}

int cmd_run(const std::string& problems_csv, const SchemeOptions& scheme_opts,
            const std::string& schemes_csv, double dt, int steps, const std::string& out_dir,
            std::optional<double> z, int jobs) {
    std::vector<ExperimentConfig> configs;
    for (const std::string& pname : split_list(problems_csv)) {
        for (const std::string& sname :
             schemes_csv.empty() ? std::vector<std::string>{""} : split_list(schemes_csv)) {
            ExperimentConfig c;
            c.problem = problem_from_name(pname);
            c.scheme = scheme_opts.resolve(sname);
            c.dt = dt;
            c.steps = steps;
            c.z = z;
            if (!out_dir.empty()) {
                std::string stem = problem_name(c.problem) + "_" + c.scheme.label();
                for (char& ch : stem)
                    if (ch == '(' || ch == ')' || ch == ',' || ch == '/') ch = '_';
                c.out_dir = std::filesystem::path(out_dir) / stem;
            }
            configs.push_back(std::move(c));
        }
    }
    for (const auto& c : configs) warn_if_invariants_lost(c.scheme);

    const int workers = std::max(1, jobs);
    std::vector<std::future<std::string>> running;
    std::vector<std::string> summaries(configs.size());
    for (std::size_t begin = 0; begin < configs.size(); begin += workers) {
        const std::size_t end = std::min(configs.size(), begin + workers);
        running.clear();
        for (std::size_t i = begin; i < end; ++i) {
            running.push_back(std::async(std::launch::async, [&configs, i]() {
                const ExperimentResult r = run_experiment(configs[i]);
                std::ostringstream os;
                os << problem_name(configs[i].problem) << " " << configs[i].scheme.label()
                   << ": final = [";
                for (std::size_t j = 0; j < r.final_state.size(); ++j)
                    os << (j ? ", " : "") << r.final_state[j];
                os << "]";
                if (r.final_error >= 0.0) os << "  error_inf = " << r.final_error;
                return os.str();
            }));
        }
        for (std::size_t i = begin; i < end; ++i) summaries[i] = running[i - begin].get();
    }
    for (const std::string& s : summaries) std::cout << s << "\n";
    return kExitOk;
}

int cmd_order(const std::string& problem, const SchemeOptions& scheme_opts, double dt_coarse,
              int levels, double t_final, const std::string& out_dir) {
    const SchemeSpec spec = scheme_opts.resolve("");
    std::vector<double> dts;
    for (int k = 0; k < levels; ++k) dts.push_back(dt_coarse / std::pow(2.0, k));
    const auto table = convergence_table(problem_from_name(problem), spec, dts, t_final);
    std::cout << "dt,error,observed_order\n";
    std::vector<Vec> rows;
    for (const OrderRow& row : table) {
        std::cout << row.dt << "," << row.error << ","
                  << (std::isnan(row.observed_order) ? std::string("-")
                                                     : std::to_string(row.observed_order))
                  << "\n";
        rows.push_back(Vec{row.dt, row.error, row.observed_order});
    }
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        write_csv(std::filesystem::path(out_dir) / "order.csv",
                  "problem=" + problem + " scheme=" + spec.label() +
                      " t_final=" + std::to_string(t_final),
                  {"dt", "error", "observed_order"}, rows);
    }
    return kExitOk;
}

int cmd_stability(const SchemeOptions& scheme_opts, bool ray, bool grid,
                  const std::string& window_csv, int resolution, double r_max, double step,
                  const std::string& out_dir) {
    if (grid) {
        const auto rows = condition_grid(resolution, resolution);
        std::size_t fails = 0;
        for (const Vec& row : rows)
            if (row.back() == 0.0) ++fails;
        std::cout << "condition grid: " << rows.size() << " points, " << fails << " failing\n";
        if (!out_dir.empty()) {
            std::filesystem::create_directories(out_dir);
            write_csv(std::filesystem::path(out_dir) / "mprk43ab_conditions.csv",
                      "grid=" + std::to_string(resolution) + "x" + std::to_string(resolution),
                      {"alpha", "beta", "c0", "c1", "c2", "c3", "c4", "c5", "c6", "c7", "pass"},
                      rows);
        }
        return kExitOk;
    }

    const SchemeSpec spec = scheme_opts.resolve("");
    const StabilityEvaluator r = make_stability_evaluator(spec, RecursionMode::Reduced);
    if (ray) {
        const auto rows = stability_ray(r, r_max, step);
        double worst = 0.0;
        for (const Vec& row : rows) worst = std::max(worst, row[1]);
        std::cout << spec.label() << ": max |R| on [-" << r_max << ", 0) = " << worst << "\n";
        if (!out_dir.empty()) {
            std::filesystem::create_directories(out_dir);
            std::string stem = spec.label();
            for (char& ch : stem)
                if (ch == '(' || ch == ')' || ch == ',' || ch == '/') ch = '_';
            write_csv(std::filesystem::path(out_dir) / ("ray_" + stem + ".csv"),
                      "scheme=" + spec.label(), {"z", "abs_r"}, rows);
        }
        return kExitOk;
    }

    const auto parts = split_list(window_csv);
    if (parts.size() != 4) fail(Errc::ConfigError, "--window needs re_min,re_max,im_min,im_max");
    const Window w{std::stod(parts[0]), std::stod(parts[1]), std::stod(parts[2]),
                   std::stod(parts[3])};
    const StabilityEvaluator rg = make_stability_evaluator(spec, RecursionMode::General);
    const StabilityRaster raster = stability_region_raster(rg, w, resolution, resolution);
    std::cout << spec.label() << ": " << raster.unstable_count() << " unstable cells of "
              << raster.abs_r.size() << "\n";
    if (!out_dir.empty()) {
        std::string stem = "raster_" + spec.label();
        for (char& ch : stem)
            if (ch == '(' || ch == ')' || ch == ',' || ch == '/') ch = '_';
        write_raster_outputs(out_dir, stem, "scheme=" + spec.label() + " window=" + window_csv,
                             raster);
    }
    return kExitOk;
}

std::vector<std::string> args_from_config(const std::filesystem::path& path) {
    const auto kv = read_key_value_config(path);
    std::vector<std::string> args;
    const auto cmd = kv.find("command");
    if (cmd == kv.end()) fail(Errc::ConfigError, "config file must set command=...");
    args.push_back(cmd->second);
    for (const auto& [key, value] : kv) {
        if (key == "command") continue;
        args.push_back("--" + key);
        if (value != "true") args.push_back(value);
    }
    return args;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Positivity-preserving modified Patankar integrators and stability toolkit"};
    app.require_subcommand(0, 1);

    std::string config_file;
    app.add_option("--config", config_file, "flat key=value config file (key command=... picks the subcommand)");

    std::string problems = "REAL3";
    std::string schemes_csv;
    double dt = 0.05;
    int steps = 100;
    std::string out_dir;
    double z_value = 0.0;
    bool z_set = false;
    int jobs = 1;
    SchemeOptions run_scheme;
    CLI::App* run = app.add_subcommand("run", "step a problem and write CSV outputs");
    run->add_option("--problem", problems, "problem name(s), comma separated");
    run->add_option("--schemes", schemes_csv, "comma separated scheme list (overrides --scheme)");
    add_scheme_flags(run, run_scheme);
    run->add_option("--dt", dt, "time step");
    run->add_option("--steps", steps, "number of steps");
    run->add_option("--out", out_dir, "output directory");
    run->add_option("--z", z_value, "set dt from z via the problem's reference eigenvalue")
        ->each([&z_set](const std::string&) { z_set = true; });
    run->add_option("--jobs", jobs, "parallel experiment slots");

    std::string order_problem = "REAL3";
    double order_dt = 1.0 / 4000.0;
    int order_levels = 5;
    double order_tfinal = 0.004;
    std::string order_out;
    SchemeOptions order_scheme;
    CLI::App* order = app.add_subcommand("order", "convergence table against the exact solution");
    order->add_option("--problem", order_problem, "problem name");
    add_scheme_flags(order, order_scheme);
    order->add_option("--dt", order_dt, "coarsest time step");
    order->add_option("--levels", order_levels, "number of halvings");
    order->add_option("--t-final", order_tfinal, "fixed final time");
    order->add_option("--out", order_out, "output directory");

    bool st_ray = false, st_grid = false;
    std::string st_window = "-6,0,-3,3";
    int st_resolution = 512;
    double st_rmax = 200.0, st_step = 0.01;
    std::string st_out;
    SchemeOptions st_scheme;
    CLI::App* stab = app.add_subcommand("stability", "stability rasters, rays and condition grids");
    add_scheme_flags(stab, st_scheme);
    stab->add_flag("--ray", st_ray, "|R(-r)| along the negative real axis");
    stab->add_flag("--grid", st_grid, "MPRK43(alpha,beta) condition grid over the region");
    stab->add_option("--window", st_window, "raster window re_min,re_max,im_min,im_max");
    stab->add_option("--resolution", st_resolution, "cells per axis");
    stab->add_option("--r-max", st_rmax, "ray extent");
    stab->add_option("--step", st_step, "ray sampling step");
    stab->add_option("--out", st_out, "output directory");

    CLI::App* listp = app.add_subcommand("list-problems", "print the problem catalog");
    CLI::App* lists = app.add_subcommand("list-schemes", "print the scheme families");

    try {
        if (argc >= 2 && std::string(argv[1]) == "--config") {
            if (argc < 3) fail(Errc::ConfigError, "--config needs a file");
            const auto args = args_from_config(argv[2]);
            std::vector<const char*> raw{argv[0]};
            for (const auto& a : args) raw.push_back(a.c_str());
            app.parse(static_cast<int>(raw.size()), raw.data());
        } else {
            app.parse(argc, argv);
        }
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    } catch (const patankar::Error& e) {
        std::cerr << "error (" << errc_name(e.code()) << "): " << e.what() << "\n";
        return exit_code_for(e.code());
    }

    try {
        verify_exact_solutions();
        if (listp->parsed()) {
            for (ProblemId id : all_problems()) {
                const TestProblem p = test_problem(id);
                std::cout << p.name << "  N=" << p.pds.dim()
                          << "  invariants=" << p.pds.invariant_count() << "\n";
            }
            return kExitOk;
        }
        if (lists->parsed()) {
            for (const std::string& s : list_scheme_names()) std::cout << s << "\n";
            return kExitOk;
        }
        if (run->parsed())
            return cmd_run(problems, run_scheme, schemes_csv, dt, steps, out_dir,
                           z_set ? std::optional<double>(z_value) : std::nullopt, jobs);
        if (order->parsed())
            return cmd_order(order_problem, order_scheme, order_dt, order_levels, order_tfinal,
                             order_out);
        if (stab->parsed())
            return cmd_stability(st_scheme, st_ray, st_grid, st_window, st_resolution, st_rmax,
                                 st_step, st_out);
        std::cout << app.help();
        return kExitOk;
    } catch (const patankar::Error& e) {
        std::cerr << "error (" << errc_name(e.code()) << "): " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}
