#pragma once

#include <functional>
#include <string>

#include "patankar/mpdec.hpp"
#include "patankar/mprk.hpp"
#include "patankar/stability.hpp"

namespace patankar {

/// Parameterized scheme descriptor shared by the CLI and the test harness.
struct SchemeSpec {
    enum class Family { MPE, MPRK32, MPRK43ab, MPRK43g, MPDeC };

    Family family = Family::MPE;
    double alpha = 0.5;
    double beta = 2.0 / 3.0;
    double gamma = 0.5;
    int order = 3;
    NodeKind nodes = NodeKind::GaussLobatto;

    [[nodiscard]] std::string label() const;

    static SchemeSpec mpe();
    static SchemeSpec mprk32();
    static SchemeSpec mprk43ab(double alpha, double beta);
    static SchemeSpec mprk43g(double gamma);
    static SchemeSpec mpdec(int order, NodeKind nodes);
};

using StepFn = std::function<Vec(const Vec&, double)>;

/// One-step map for the given scheme over the given rates. Parameter
/// validation happens here (throws InvalidParams and friends).
StepFn make_stepper(const SchemeSpec& scheme, const PDSRates& rates);

/// Stability-function evaluator for the scheme (closed form for the MPRK
/// schemes, recursion for MPDeC).
StabilityEvaluator make_stability_evaluator(const SchemeSpec& scheme, RecursionMode mode);

/// Classical order of the scheme.
int scheme_order(const SchemeSpec& scheme);

std::vector<std::string> list_scheme_names();

}  // namespace patankar
