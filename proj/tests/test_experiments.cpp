#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>

#include "patankar/experiments.hpp"
#include "support.hpp"

using namespace patankar;
using namespace patankar::testing;

namespace {

std::filesystem::path temp_dir(const std::string& stem) {
    const auto dir = std::filesystem::temp_directory_path() / ("patankar_test_" + stem);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream is(p);
    return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("csv round trip is bit exact") {
    const auto dir = temp_dir("csv");
    const std::vector<Vec> rows = {{1.0 / 3.0, 1e-17, -0.0},
                                   {2.0 / 7.0, 123456789.123456789, 5e300},
                                   {-1.0 / 3.0, 0.1, 0.2}};
    const auto path = dir / "values.csv";
    write_csv(path, "case=round-trip", {"a", "b", "c"}, rows);
    const CsvContent back = read_csv(path);
    CHECK(back.meta == "case=round-trip");
    CHECK(back.header == std::vector<std::string>{"a", "b", "c"});
    REQUIRE(back.rows.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            CHECK(back.rows[i][j] == rows[i][j]);
}

TEST_CASE("identical configs produce identical bytes") {
    ExperimentConfig cfg;
    cfg.problem = ProblemId::TwoByTwo;
    cfg.scheme = SchemeSpec::mprk32();
    cfg.dt = 0.04;
    cfg.steps = 25;

    const auto dir_a = temp_dir("det_a");
    const auto dir_b = temp_dir("det_b");
    cfg.out_dir = dir_a;
    static_cast<void>(run_experiment(cfg));
    cfg.out_dir = dir_b;
    static_cast<void>(run_experiment(cfg));
    for (const char* name : {"trajectory.csv", "invariants.csv", "error.csv"})
        CHECK(slurp(dir_a / name) == slurp(dir_b / name));
}

TEST_CASE("run_experiment endpoints and files") {
    const auto dir = temp_dir("run");
    ExperimentConfig cfg;
    cfg.problem = ProblemId::Real3;
    cfg.scheme = SchemeSpec::mprk32();
    cfg.dt = 25.0;
    cfg.steps = 40;
    cfg.out_dir = dir;
    const ExperimentResult r = run_experiment(cfg);
    CHECK(r.final_error >= 0.0);
    CHECK(r.final_error <= 1e-8);
    CHECK(std::filesystem::exists(dir / "trajectory.csv"));
    CHECK(std::filesystem::exists(dir / "invariants.csv"));
    CHECK(std::filesystem::exists(dir / "error.csv"));

    const CsvContent inv = read_csv(dir / "invariants.csv");
    REQUIRE(!inv.rows.empty());
    for (const Vec& row : inv.rows)
        CHECK(row[1] == doctest::Approx(inv.rows.front()[1]).epsilon(1e-11));
}

TEST_CASE("z flag derives the step size") {
    ExperimentConfig cfg;
    cfg.problem = ProblemId::TwoByTwoSlow;  // reference rate -1
    cfg.scheme = SchemeSpec::mpe();
    cfg.z = -2.0;
    cfg.steps = 1;
    const ExperimentResult r = run_experiment(cfg);
    // One backward-Euler step with dt = 2: difference contracts by 1/(1-z) = 1/3.
    const double d = r.final_state[0] - r.final_state[1];
    CHECK(d == doctest::Approx(2e-6 / 3.0).epsilon(1e-10));
}

TEST_CASE("convergence_table observed orders") {
    const std::vector<double> dts = {0.004 / 32, 0.004 / 64, 0.004 / 128};
    const auto table =
        convergence_table(ProblemId::Real3, SchemeSpec::mpdec(3, NodeKind::GaussLobatto), dts,
                          0.004);
    REQUIRE(table.size() == 3);
    CHECK(std::isnan(table[0].observed_order));
    CHECK(table.back().observed_order == doctest::Approx(3.0).epsilon(0.1));
    CHECK_THROWS_AS(static_cast<void>(convergence_table(
                        ProblemId::Real3, SchemeSpec::mpe(), std::vector<double>{0.003}, 0.004)),
                    Error);
}

TEST_CASE("stability outputs") {
    SUBCASE("ray samples") {
        const auto rows = stability_ray([](Complex z) { return 1.0 / (1.0 - z); }, 2.0, 0.5);
        REQUIRE(rows.size() == 4);
        CHECK(rows[0][0] == -0.5);
        CHECK(rows[3][1] == doctest::Approx(1.0 / 3.0));
    }
    SUBCASE("raster files") {
        const auto dir = temp_dir("raster");
        const RationalStabilityFunction r = stability_mprk32();
        const StabilityRaster raster = stability_region_raster(
            [&r](Complex z) { return r(z); }, Window{-2.0, 0.0, -1.0, 1.0}, 16, 16);
        write_raster_outputs(dir, "second_order", "scheme=MPRK32", raster);
        const std::string pgm = slurp(dir / "second_order.pgm");
        CHECK(pgm.substr(0, 3) == "P2\n");
        CHECK(pgm.find("16 16") != std::string::npos);
        const CsvContent csv = read_csv(dir / "second_order.csv");
        CHECK(csv.rows.size() == 256);
    }
    SUBCASE("condition grid passes everywhere") {
        const auto rows = condition_grid(40, 40);
        CHECK(!rows.empty());
        for (const Vec& row : rows) CHECK(row.back() == 1.0);
    }
}

TEST_CASE("key=value config parsing") {
    const auto dir = temp_dir("cfg");
    const auto path = dir / "exp.cfg";
    {
        std::ofstream os(path);
        os << "# comment line\n";
        os << "command = run\n";
        os << "problem=TWOBYTWO\n";
        os << "dt = 0.02   # trailing comment\n";
    }
    const auto kv = read_key_value_config(path);
    CHECK(kv.at("command") == "run");
    CHECK(kv.at("problem") == "TWOBYTWO");
    CHECK(kv.at("dt") == "0.02");
}

TEST_CASE("scheme registry") {
    CHECK(SchemeSpec::mpe().label() == "MPE");
    CHECK(SchemeSpec::mpdec(7, NodeKind::Equispaced).label() == "MPDeC(7,equi)");
    CHECK(scheme_order(SchemeSpec::mprk43g(0.5)) == 3);
    CHECK(scheme_order(SchemeSpec::mpdec(9, NodeKind::GaussLobatto)) == 9);
    CHECK(list_scheme_names().size() == 5);
    const PDSRates rates = rates_from_matrix(test_problem(ProblemId::TwoByTwo).pds);
    CHECK_THROWS_AS(static_cast<void>(make_stepper(SchemeSpec::mprk43ab(0.1, 0.1), rates)),
                    Error);
    CHECK_THROWS_AS(static_cast<void>(make_stepper(SchemeSpec::mpdec(40, NodeKind::Equispaced),
                                                   rates)),
                    Error);
}
