#pragma once

#include <stdexcept>
#include <string>

namespace patankar {

enum class Errc {
    NotMetzler,
    NotConservative,
    ZeroMatrix,
    UnknownProblem,
    Singular,
    DuplicateNodes,
    PoleAt,
    OrderOutOfRange,
    NewtonDivergence,
    InvalidParams,
    DegenerateParams,
    NonPositiveStage,
    NonPositiveSigma,
    NonPositiveState,
    DimensionMismatch,
    ConfigError,
};

/// Library-wide exception; `code()` identifies the failure class so callers
/// and tests can dispatch without parsing messages.
class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

    [[nodiscard]] Errc code() const noexcept { return code_; }

  private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::NotMetzler: return "NotMetzler";
        case Errc::NotConservative: return "NotConservative";
        case Errc::ZeroMatrix: return "ZeroMatrix";
        case Errc::UnknownProblem: return "UnknownProblem";
        case Errc::Singular: return "Singular";
        case Errc::DuplicateNodes: return "DuplicateNodes";
        case Errc::PoleAt: return "PoleAt";
        case Errc::OrderOutOfRange: return "OrderOutOfRange";
        case Errc::NewtonDivergence: return "NewtonDivergence";
        case Errc::InvalidParams: return "InvalidParams";
        case Errc::DegenerateParams: return "DegenerateParams";
        case Errc::NonPositiveStage: return "NonPositiveStage";
        case Errc::NonPositiveSigma: return "NonPositiveSigma";
        case Errc::NonPositiveState: return "NonPositiveState";
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

}  // namespace patankar
