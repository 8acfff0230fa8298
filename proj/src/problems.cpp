#include "patankar/problems.hpp"

#include <cmath>

namespace patankar {

namespace {

// Catalog matrices are stored as integer stencils times a scale factor to
// avoid transcription drift.
Matrix scaled(double s, std::initializer_list<std::initializer_list<double>> rows) {
    Matrix m(rows);
    return m * s;
}

TestProblem make_real3() {
    LinearPDS pds = LinearPDS::validate(scaled(100.0, {{-2, 1, 1}, {1, -4, 1}, {1, 3, -2}}));
    pds.attach_eigenpairs({
        {Complex(0.0), {5.0, 3.0, 7.0}},
        {Complex(-300.0), {-1.0, 0.0, 1.0}},
        {Complex(-500.0), {0.0, -1.0, 1.0}},
    });
    auto exact = [](double t) {
        const double e3 = std::exp(-300.0 * t), e5 = std::exp(-500.0 * t);
        return Vec{5.0 - 4.0 * e3, 3.0 + 6.0 * e5, 7.0 + 4.0 * e3 - 6.0 * e5};
    };
    SteadyState ss = SteadyState::verified(pds, {5.0, 3.0, 7.0});
    return TestProblem{ProblemId::Real3, "REAL3", std::move(pds),
                       {1.0, 9.0, 5.0},  std::move(ss),       -300.0,
                       exact};
}

TestProblem make_complex3() {
    LinearPDS pds = LinearPDS::validate(scaled(100.0, {{-4, 3, 1}, {2, -4, 3}, {2, 1, -4}}));
    pds.attach_eigenpairs({
        {Complex(0.0), {13.0, 14.0, 10.0}},
        {Complex(-600.0, 100.0), {Complex(-1.0, 1.0), Complex(0.0, -1.0), Complex(1.0, 0.0)}},
        {Complex(-600.0, -100.0), {Complex(-1.0, -1.0), Complex(0.0, 1.0), Complex(1.0, 0.0)}},
    });
    auto exact = [](double t) {
        const double e = std::exp(-600.0 * t);
        const double c = std::cos(100.0 * t), s = std::sin(100.0 * t);
        // y* - 2 e (c vR - s vI) - 6 e (c vI + s vR), vR = (-1,0,1), vI = (1,-1,0)
        return Vec{13.0 + e * (-4.0 * c + 8.0 * s),
                   14.0 + e * (6.0 * c - 2.0 * s),
                   10.0 + e * (-2.0 * c - 6.0 * s)};
    };
    SteadyState ss = SteadyState::verified(pds, {13.0, 14.0, 10.0});
    return TestProblem{ProblemId::Complex3, "COMPLEX3", std::move(pds),
                       {9.0, 20.0, 8.0},   std::move(ss),          -600.0,
                       exact};
}

TestProblem make_doublezero4() {
    LinearPDS pds = LinearPDS::validate(
        scaled(100.0, {{-2, 0, 0, 1}, {0, -4, 3, 0}, {0, 4, -3, 0}, {2, 0, 0, -1}}));
    pds.attach_eigenpairs({
        {Complex(0.0), {1.0, 0.0, 0.0, 2.0}},
        {Complex(0.0), {0.0, 3.0, 4.0, 0.0}},
        {Complex(-300.0), {1.0, 0.0, 0.0, -1.0}},
        {Complex(-700.0), {0.0, 1.0, -1.0, 0.0}},
    });
    auto exact = [](double t) {
        const double e3 = std::exp(-300.0 * t), e7 = std::exp(-700.0 * t);
        const double c1 = 30.0 / 7.0, c2 = 5.0 / 3.0, c3 = -23.0 / 7.0, c4 = 7.0 / 3.0;
        return Vec{c2 + c4 * e3, c1 + c3 * e7, c1 * 4.0 / 3.0 - c3 * e7, 2.0 * c2 - c4 * e3};
    };
    SteadyState ss =
        SteadyState::verified(pds, {35.0 / 21.0, 90.0 / 21.0, 120.0 / 21.0, 70.0 / 21.0});
    return TestProblem{ProblemId::DoubleZero4, "DOUBLEZERO4",  std::move(pds),
                       {4.0, 1.0, 9.0, 1.0},  std::move(ss),   -300.0,
                       exact};
}

TestProblem make_twobytwo() {
    LinearPDS pds = LinearPDS::validate(Matrix{{-25.0, 25.0}, {25.0, -25.0}});
    pds.attach_eigenpairs({
        {Complex(0.0), {1.0, 1.0}},
        {Complex(-50.0), {1.0, -1.0}},
    });
    auto exact = [](double t) {
        const double e = 0.498 * std::exp(-50.0 * t);
        return Vec{0.5 + e, 0.5 - e};
    };
    SteadyState ss = SteadyState::verified(pds, {0.5, 0.5});
    return TestProblem{ProblemId::TwoByTwo, "TWOBYTWO", std::move(pds),
                       {0.998, 0.002},      std::move(ss),     -50.0,
                       exact};
}

TestProblem make_twobytwo_slow() {
    LinearPDS pds = LinearPDS::validate(Matrix{{-0.5, 0.5}, {0.5, -0.5}});
    pds.attach_eigenpairs({
        {Complex(0.0), {1.0, 1.0}},
        {Complex(-1.0), {1.0, -1.0}},
    });
    auto exact = [](double t) {
        const double e = 1e-6 * std::exp(-t);
        return Vec{0.5 + e, 0.5 - e};
    };
    SteadyState ss = SteadyState::verified(pds, {0.5, 0.5});
    return TestProblem{ProblemId::TwoByTwoSlow,     "TWOBYTWO_SLOW", std::move(pds),
                       {0.5 + 1e-6, 0.5 - 1e-6},    std::move(ss),   -1.0,
                       exact};
}

}  // namespace

TestProblem test_problem(ProblemId id) {
    switch (id) {
        case ProblemId::Real3: return make_real3();
        case ProblemId::Complex3: return make_complex3();
        case ProblemId::DoubleZero4: return make_doublezero4();
        case ProblemId::TwoByTwo: return make_twobytwo();
        case ProblemId::TwoByTwoSlow: return make_twobytwo_slow();
    }
    fail(Errc::UnknownProblem, "unknown problem id");
}

const std::vector<ProblemId>& all_problems() {
    static const std::vector<ProblemId> ids = {ProblemId::Real3, ProblemId::Complex3,
                                               ProblemId::DoubleZero4, ProblemId::TwoByTwo,
                                               ProblemId::TwoByTwoSlow};
    return ids;
}

std::string problem_name(ProblemId id) { return test_problem(id).name; }

ProblemId problem_from_name(const std::string& name) {
    for (ProblemId id : all_problems())
        if (problem_name(id) == name) return id;
    fail(Errc::UnknownProblem, "unknown problem: " + name);
}

void verify_exact_solutions() {
    const double h = 1e-9;
    for (ProblemId id : all_problems()) {
        const TestProblem p = test_problem(id);
        if (!p.exact) continue;
        const auto& y = *p.exact;
        const Vec y0 = y(0.0);
        for (std::size_t i = 0; i < y0.size(); ++i)
            if (std::abs(y0[i] - p.y0[i]) > 1e-12 * inf_norm(std::span<const double>(p.y0)))
                fail(Errc::InvalidParams, p.name + ": exact solution does not match y0");
        const Vec yp = y(h), ym = y(-h);
        const Vec rhs = matvec(p.pds.matrix(), y0);
        const double scale = inf_norm(p.pds.matrix()) * inf_norm(std::span<const double>(y0));
        for (std::size_t i = 0; i < y0.size(); ++i) {
            const double fd = (yp[i] - ym[i]) / (2.0 * h);
            if (std::abs(fd - rhs[i]) > 1e-5 * scale)
                fail(Errc::InvalidParams, p.name + ": exact solution fails the ODE at t=0");
        }
    }
}

}  // namespace patankar
