#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "blowup/fields.hpp"
#include "blowup/ode.hpp"

using namespace blowup;

namespace {
const OldroydParams kRef{1.0, 3.0, 1.0, 1.0, 1.0};  // t* = 1/2
}

TEST_CASE("right-hand side at the reference state") {
    ReducedState s;
    s.f = 1.0;
    s.h1 = 1.0;
    s.h2 = 1.0;
    const ReducedDerivative d = reduced_rhs(s, kRef);
    CHECK(d.f_dot == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(d.g_algebraic == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(d.h1_dot == doctest::Approx(s.h1).epsilon(1e-15));
    CHECK(d.h2_dot == doctest::Approx(-s.h2).epsilon(1e-15));
    CHECK(d.g1_dot == 0.0);
    CHECK(d.g2_dot == 0.0);
}

TEST_CASE("f = 0 is a fixed point") {
    ReducedState s;
    s.f = 0.0;
    const ReducedDerivative d = reduced_rhs(s, kRef);
    CHECK(d.f_dot == 0.0);
    CHECK(d.h1_dot == 0.0);
    CHECK(d.h2_dot == 0.0);
}

TEST_CASE("alpha + beta = 0 freezes f") {
    OldroydParams p{1.0, 1.0, -1.0, 1.0, 1.0};
    ReducedState s;
    s.f = p.f0;
    CHECK(reduced_rhs(s, p).f_dot == 0.0);
}

TEST_CASE("degenerate separation is rejected") {
    OldroydParams p{1.0, 2.0, 2.0, 1.0, 1.0};
    ReducedState s;
    CHECK_THROWS_AS(reduced_rhs(s, p), Error);
}

TEST_CASE("closed form at the frozen checkpoint t = 0.45") {
    const ReducedState s = closed_form_reduced(kRef, 0.45);
    CHECK(s.f == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(s.g == doctest::Approx(-100.0).epsilon(1e-12));
    CHECK(s.g1 == 0.0);
    CHECK(s.g2 == 0.0);
    CHECK(s.h1 == doctest::Approx(std::sqrt(10.0)).epsilon(1e-12));
    CHECK(s.h2 == doctest::Approx(1.0 / std::sqrt(10.0)).epsilon(1e-12));
}

TEST_CASE("closed form at t = 0 is the initial condition") {
    const ReducedState s = closed_form_reduced(kRef, 0.0);
    CHECK(s.f == kRef.f0);
    CHECK(s.g == doctest::Approx(2.0 * kRef.f0 * kRef.f0 /
                                 (kRef.beta - kRef.alpha)));
    CHECK(s.h1 == 1.0);
    CHECK(s.h2 == 1.0);
}

TEST_CASE("closed form in the exponential limit") {
    OldroydParams p{1.0, 1.0, -1.0, 1.0, 1.0};
    const ReducedState s = closed_form_reduced(p, 2.0);
    CHECK(s.f == 1.0);
    CHECK(s.h1 == doctest::Approx(std::exp(2.0)).epsilon(1e-14));
    CHECK(s.h2 == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
}

TEST_CASE("closed form refuses the blow-up time") {
    CHECK_THROWS_AS(closed_form_reduced(kRef, 0.5), Error);
    CHECK_THROWS_AS(closed_form_reduced(kRef, 0.6), Error);
}

TEST_CASE("RK4 hits the closed form to 1e-8 at dt = 1e-4") {
    const auto report = compare_ode(kRef, 0.45, 1e-4);
    CHECK(report.max_error() <= 1e-8);
    // spot value: f(0.45) = 10
    const auto trajectory = integrate_reduced(kRef, 0.45, 1e-4);
    CHECK(trajectory.back().t == 0.45);
    CHECK(trajectory.back().state.f == doctest::Approx(10.0).epsilon(1e-8));
}

TEST_CASE("f0 = 0 integrates to a constant trajectory with zero error") {
    OldroydParams p = kRef;
    p.f0 = 0.0;
    const auto report = compare_ode(p, 2.0, 1e-2);
    CHECK(report.max_error() == 0.0);
    const auto trajectory = integrate_reduced(p, 2.0, 1e-2);
    for (const auto& pt : trajectory) {
        CHECK(pt.state.f == 0.0);
        CHECK(pt.state.h1 == 1.0);
    }
}

TEST_CASE("exponential case: f stays f0 and h1(1) = e") {
    OldroydParams p{1.0, 1.0, -1.0, 1.0, 1.0};
    const auto trajectory = integrate_reduced(p, 1.0, 1e-3);
    CHECK(trajectory.back().state.f == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(trajectory.back().state.h1 ==
          doctest::Approx(std::exp(1.0)).epsilon(1e-8));
    const auto report = compare_ode(p, 1.0, 1e-3);
    CHECK(report.max_error() <= 1e-8);
}

TEST_CASE("halving dt shrinks the error about 16x") {
    const double e1 = compare_ode(kRef, 0.45, 2e-3).max_error();
    const double e2 = compare_ode(kRef, 0.45, 1e-3).max_error();
    const double ratio = e1 / e2;
    CHECK(ratio >= 13.0);
    CHECK(ratio <= 19.0);
}

TEST_CASE("global order 4 against the oracle") {
    std::vector<double> dts{1e-2, 5e-3, 2.5e-3, 1.25e-3};
    std::vector<double> lx, ly;
    for (double dt : dts) {
        lx.push_back(std::log(dt));
        ly.push_back(std::log(compare_ode(kRef, 0.45, dt).max_error()));
    }
    // least-squares slope
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= lx.size();
    my /= ly.size();
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    const double slope = sxy / sxx;
    CHECK(slope == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("h1 h2 drift stays below 1e-10 on [0, 0.9 t*]") {
    const auto trajectory = integrate_reduced(kRef, 0.45, 1e-4);
    for (const auto& pt : trajectory)
        CHECK(std::abs(pt.state.h1 * pt.state.h2 - 1.0) <= 1e-10);
}

TEST_CASE("g1 and g2 stay exactly zero from zero initial data") {
    const auto trajectory = integrate_reduced(kRef, 0.45, 1e-3);
    for (const auto& pt : trajectory) {
        CHECK(pt.state.g1 == 0.0);
        CHECK(pt.state.g2 == 0.0);
    }
}

TEST_CASE("field amplitudes match the closed forms componentwise") {
    for (double t : {0.0, 0.1, 0.25, 0.4, 0.45, 0.49}) {
        const OldroydAmplitudes a = oldroyd_amplitudes(kRef, t);
        const ReducedState s = closed_form_reduced(kRef, t);
        CHECK(std::abs(a.f - s.f) <= 1e-14 * std::max(1.0, std::abs(s.f)));
        CHECK(std::abs(a.g - s.g) <= 1e-14 * std::max(1.0, std::abs(s.g)));
        CHECK(std::abs(a.h1 - s.h1) <= 1e-14 * std::max(1.0, std::abs(s.h1)));
        CHECK(std::abs(a.h2 - s.h2) <= 1e-14 * std::max(1.0, std::abs(s.h2)));
    }
}

TEST_CASE("integration range must stay below the blow-up time") {
    try {
        integrate_reduced(kRef, 0.6, 1e-3);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::StepTooLarge);
    }
    CHECK_THROWS_AS(integrate_reduced(kRef, 0.4, -1e-3), Error);
}

TEST_CASE("trajectory lands exactly on t_end with a shrunken final step") {
    const auto trajectory = integrate_reduced(kRef, 0.4005, 1e-3);
    CHECK(trajectory.back().t == 0.4005);
    CHECK(trajectory.size() == 402u);  // 0, 401 steps of which the last is partial
}

TEST_CASE("trajectory CSV has the documented column order") {
    const auto trajectory = integrate_reduced(kRef, 0.01, 1e-2);
    const std::string csv = trajectory_to_csv(trajectory);
    CHECK(csv.rfind("t,f,g,g1,g2,h1,h2\n", 0) == 0);
    CHECK(csv.find("\n0,1,-1,0,0,1,1\n") != std::string::npos);
}
