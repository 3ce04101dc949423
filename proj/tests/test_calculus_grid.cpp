#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "blowup/fd.hpp"

using namespace blowup;

namespace {

ScalarField make_field(std::function<double(const std::array<double, 3>&, double)> f) {
    return ScalarField{std::move(f)};
}

const ScalarField kSquare =
    make_field([](const std::array<double, 3>& x, double) { return x[0] * x[0]; });
const ScalarField kSine =
    make_field([](const std::array<double, 3>& x, double) { return std::sin(x[0]); });

}  // namespace

TEST_CASE("centered first difference is exact on quadratics") {
    for (double h : {0.1, 1e-2, 1e-3}) {
        const double d = fd_partial(kSquare, {1.0, 0.0, 0.0}, 0.0, 0,
                                    StencilSpec{h, h, 2});
        CHECK(d == doctest::Approx(2.0).epsilon(1e-12));
    }
}

TEST_CASE("sine derivative at the origin within the Taylor bound") {
    const double d =
        fd_partial(kSine, {0.0, 0.0, 0.0}, 0.0, 0, StencilSpec{1e-3, 1e-3, 2});
    CHECK(std::abs(d - 1.0) <= 2e-7);
}

TEST_CASE("invalid stencil steps are rejected") {
    CHECK_THROWS_AS(
        fd_partial(kSquare, {1.0, 0.0, 0.0}, 0.0, 0, StencilSpec{0.0, 1e-3, 2}),
        Error);
    CHECK_THROWS_AS(
        fd_partial(kSquare, {1.0, 0.0, 0.0}, 0.0, 0, StencilSpec{1e-3, 1e-3, 3}),
        Error);
}

TEST_CASE("second difference exact on quadratics, laplacian on paraboloid") {
    const double d2 =
        fd_second(kSquare, {1.0, 0.0, 0.0}, 0.0, 0, StencilSpec{1e-2, 1e-2, 2});
    CHECK(d2 == doctest::Approx(2.0).epsilon(1e-10));

    const auto paraboloid = make_field(
        [](const std::array<double, 3>& x, double) {
            return x[0] * x[0] + x[1] * x[1];
        });
    const double lap = fd_laplacian(paraboloid, {0.3, -0.7, 0.0}, 0.0, 2,
                                    StencilSpec{1e-2, 1e-2, 2});
    CHECK(lap == doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("biharmonic of sine via composed laplacians") {
    const StencilSpec spec{1e-2, 1e-2, 2};
    const double at0 = fd_biharmonic(kSine, {0.0, 0.0, 0.0}, 0.0, 1, spec);
    CHECK(std::abs(at0) <= 1e-5);
    const double at_pi2 =
        fd_biharmonic(kSine, {M_PI / 2.0, 0.0, 0.0}, 0.0, 1, spec);
    CHECK(std::abs(at_pi2 - 1.0) <= 1e-3);
}

TEST_CASE("mixed second derivative on a product field") {
    const auto prod = make_field(
        [](const std::array<double, 3>& x, double) {
            return std::sin(x[0]) * std::cos(x[1]);
        });
    const double ref = std::cos(0.4) * (-std::sin(-0.3));
    const double fd = fd_mixed(prod, {0.4, -0.3, 0.0}, 0.0, 0, 1,
                               StencilSpec{1e-3, 1e-3, 2});
    CHECK(fd == doctest::Approx(ref).epsilon(1e-5));
}

TEST_CASE("time axis uses the k step and the field's time domain") {
    ScalarField decay{[](const std::array<double, 3>&, double t) {
                          return std::exp(-t);
                      },
                      0.0, 1.0};
    const double d = fd_partial(decay, {0.0, 0.0, 0.0}, 0.5, time_axis,
                                StencilSpec{1e-3, 1e-3, 2});
    CHECK(d == doctest::Approx(-std::exp(-0.5)).epsilon(1e-6));

    try {
        fd_partial(decay, {0.0, 0.0, 0.0}, 0.0005, time_axis,
                   StencilSpec{1e-3, 1e-3, 2});
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::FootprintOutOfDomain);
    }
    CHECK_THROWS_AS(fd_partial(decay, {0.0, 0.0, 0.0}, 0.9995, time_axis,
                               StencilSpec{1e-3, 1e-3, 2}),
                    Error);
}

TEST_CASE("order-2 stencils show slope 2 on sine") {
    const double slope = convergence_order(kSine, 1.0, FdOp::Partial,
                                           {0.0, 0.0, 0.0}, 0.0, 0, 1,
                                           {1e-1, 5e-2, 2.5e-2});
    CHECK(slope == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("order-4 stencils show slope 4 on sine") {
    const double slope = convergence_order(kSine, 1.0, FdOp::Partial,
                                           {0.0, 0.0, 0.0}, 0.0, 0, 1,
                                           {2e-1, 1e-1, 5e-2}, 4);
    CHECK(slope == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("exact stencils are reported, not fitted") {
    try {
        convergence_order(kSquare, 2.0, FdOp::Partial, {1.0, 0.0, 0.0}, 0.0, 0,
                          1, {1e-1, 5e-2, 2.5e-2});
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ZeroError);
    }
}

TEST_CASE("all operators are linear in the field") {
    const auto f = kSine;
    const auto g = make_field(
        [](const std::array<double, 3>& x, double) { return std::exp(x[0]); });
    const double a = 2.5, b = -1.25;
    const auto combo = make_field(
        [a, b](const std::array<double, 3>& x, double t) {
            return a * std::sin(x[0]) + b * std::exp(x[0]);
        });
    // moderate step: the 1/h^2 division would otherwise lift rounding
    // noise above the 1e-12 comparison level
    const StencilSpec spec{0.1, 0.1, 2};
    const std::array<double, 3> x{0.3, 0.0, 0.0};
    for (FdOp op : {FdOp::Partial, FdOp::Second, FdOp::Laplacian}) {
        auto apply = [&](const ScalarField& field) {
            switch (op) {
                case FdOp::Partial: return fd_partial(field, x, 0.0, 0, spec);
                case FdOp::Second: return fd_second(field, x, 0.0, 0, spec);
                default: return fd_laplacian(field, x, 0.0, 1, spec);
            }
        };
        const double lhs = apply(combo);
        const double rhs = a * apply(f) + b * apply(g);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("line fit recovers slope and reports a tiny stderr on exact data") {
    std::vector<double> xs{1.0, 2.0, 3.0, 4.0};
    std::vector<double> ys{0.5, 2.5, 4.5, 6.5};
    const LineFit fit = fit_line(xs, ys);
    CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(-1.5).epsilon(1e-12));
    CHECK(fit.slope_stderr <= 1e-12);
}
