#pragma once

#include <functional>
#include <optional>
#include <string>

#include "patankar/pds.hpp"

namespace patankar {

enum class ProblemId { Real3, Complex3, DoubleZero4, TwoByTwo, TwoByTwoSlow };

/// One catalog entry: system, initial condition, steady state, eigen data and
/// (where available) the closed-form solution.
struct TestProblem {
    ProblemId id;
    std::string name;
    LinearPDS pds;
    Vec y0;
    SteadyState steady;
    /// Nonzero eigenvalue of smallest modulus; used by the CLI --z flag.
    double reference_rate;
    std::optional<std::function<Vec(double)>> exact;
};

TestProblem test_problem(ProblemId id);

const std::vector<ProblemId>& all_problems();
std::string problem_name(ProblemId id);
ProblemId problem_from_name(const std::string& name);

/// FD check that each catalog closed-form solution satisfies y' = A y at
/// t = 0; throws on mismatch. Cheap enough to run at CLI startup.
void verify_exact_solutions();

}  // namespace patankar
