#include "patankar/schemes.hpp"

#include <sstream>

namespace patankar {

namespace {

std::string trim_number(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace

std::string SchemeSpec::label() const {
    switch (family) {
        case Family::MPE: return "MPE";
        case Family::MPRK32: return "MPRK32";
        case Family::MPRK43ab:
            return "MPRK43(" + trim_number(alpha) + "," + trim_number(beta) + ")";
        case Family::MPRK43g: return "MPRK43(" + trim_number(gamma) + ")";
        case Family::MPDeC:
            return "MPDeC(" + std::to_string(order) +
                   (nodes == NodeKind::Equispaced ? ",equi)" : ",gl)");
    }
    return "?";
}

SchemeSpec SchemeSpec::mpe() { return SchemeSpec{Family::MPE}; }
SchemeSpec SchemeSpec::mprk32() { return SchemeSpec{Family::MPRK32}; }
SchemeSpec SchemeSpec::mprk43ab(double alpha, double beta) {
    SchemeSpec s{Family::MPRK43ab};
    s.alpha = alpha;
    s.beta = beta;
    return s;
}
SchemeSpec SchemeSpec::mprk43g(double gamma) {
    SchemeSpec s{Family::MPRK43g};
    s.gamma = gamma;
    return s;
}
SchemeSpec SchemeSpec::mpdec(int order, NodeKind nodes) {
    SchemeSpec s{Family::MPDeC};
    s.order = order;
    s.nodes = nodes;
    return s;
}

StepFn make_stepper(const SchemeSpec& scheme, const PDSRates& rates) {
    switch (scheme.family) {
        case SchemeSpec::Family::MPE:
            return [rates](const Vec& y, double dt) { return mpe_step(rates, y, dt); };
        case SchemeSpec::Family::MPRK32:
            return [rates](const Vec& y, double dt) { return mprk32_step(rates, y, dt); };
        case SchemeSpec::Family::MPRK43ab: {
            const MPRK43Params p = MPRK43Params::make(scheme.alpha, scheme.beta);
            return [p, rates](const Vec& y, double dt) { return mprk43ab_step(p, rates, y, dt); };
        }
        case SchemeSpec::Family::MPRK43g: {
            const MPRK43GammaParams p = MPRK43GammaParams::make(scheme.gamma);
            return [p, rates](const Vec& y, double dt) { return mprk43g_step(p, rates, y, dt); };
        }
        case SchemeSpec::Family::MPDeC: {
            const MPDeCConfig c = MPDeCConfig::make(scheme.order, scheme.nodes);
            return [c, rates](const Vec& y, double dt) { return mpdec_step(c, rates, y, dt); };
        }
    }
    fail(Errc::ConfigError, "unknown scheme family");
}

StabilityEvaluator make_stability_evaluator(const SchemeSpec& scheme, RecursionMode mode) {
    switch (scheme.family) {
        case SchemeSpec::Family::MPE: {
            return [](Complex z) { return 1.0 / (1.0 - z); };
        }
        case SchemeSpec::Family::MPRK32: {
            const RationalStabilityFunction r = stability_mprk32();
            return [r](Complex z) { return r(z); };
        }
        case SchemeSpec::Family::MPRK43ab: {
            const RationalStabilityFunction r = stability_mprk43ab(scheme.alpha, scheme.beta);
            return [r](Complex z) { return r(z); };
        }
        case SchemeSpec::Family::MPRK43g: {
            const RationalStabilityFunction r = stability_mprk43g();
            return [r](Complex z) { return r(z); };
        }
        case SchemeSpec::Family::MPDeC: {
            const MPDeCConfig c = MPDeCConfig::make(scheme.order, scheme.nodes);
            return [c, mode](Complex z) { return mpdec_stability(c, z, mode); };
        }
    }
    fail(Errc::ConfigError, "unknown scheme family");
}

int scheme_order(const SchemeSpec& scheme) {
    switch (scheme.family) {
        case SchemeSpec::Family::MPE: return 1;
        case SchemeSpec::Family::MPRK32: return 2;
        case SchemeSpec::Family::MPRK43ab:
        case SchemeSpec::Family::MPRK43g: return 3;
        case SchemeSpec::Family::MPDeC: return scheme.order;
    }
    return 0;
}

std::vector<std::string> list_scheme_names() {
    return {
        "mpe                     modified Patankar-Euler (first order)",
        "mprk32                  three-stage second-order MPRK",
        "mprk43ab --alpha --beta two-parameter third-order MPRK family",
        "mprk43g  --gamma        one-parameter third-order MPRK family",
        "mpdec    --order-p --nodes {equi,gl}   deferred-correction, order p in [1,14]",
    };
}

}  // namespace patankar
