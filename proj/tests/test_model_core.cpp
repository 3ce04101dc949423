#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "blowup/grid.hpp"
#include "blowup/params.hpp"

using namespace blowup;

TEST_CASE("validation accepts the reference parameter set") {
    OldroydParams p{1.0, 3.0, 1.0, 1.0, 1.0};
    CHECK_NOTHROW(validate(p));
}

TEST_CASE("alpha = beta is rejected as degenerate separation") {
    OldroydParams p{1.0, 2.0, 2.0, 1.0, 1.0};
    CHECK_THROWS_AS(validate(p), Error);
    try {
        validate(p);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DegenerateSeparation);
    }
}

TEST_CASE("sign constraints") {
    OldroydParams p{1.0, 3.0, 1.0, -1.0, 1.0};
    CHECK_THROWS_AS(validate(p), Error);

    PhaseFieldParams pf;
    pf.epsilon = 0.0;
    try {
        validate(pf);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NonPositive);
    }

    NSParams ns;
    ns.t = 0.0;
    CHECK_THROWS_AS(validate(ns), Error);
}

TEST_CASE("transport-only variant requires zero mobility") {
    PhaseFieldParams pf;
    pf.variant = PhaseVariant::TransportOnly;
    pf.gamma = 1.0;
    try {
        validate(pf);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::BadVariant);
    }
    pf.gamma = 0.0;
    CHECK_NOTHROW(validate(pf));
}

TEST_CASE("blow-up time of the reference set is exactly 1/2") {
    OldroydParams p{1.0, 3.0, 1.0, 1.0, 1.0};
    const BlowUpTime bt = blow_up_time(p);
    REQUIRE(bt.finite());
    CHECK(*bt.t_star == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("alpha + beta = 0 never blows up") {
    OldroydParams p{1.0, 1.0, -1.0, 1.0, 1.0};
    CHECK(!blow_up_time(p).finite());
}

TEST_CASE("f0 <= 0 with positive ratio never blows up") {
    OldroydParams p{-1.0, 3.0, 1.0, 1.0, 1.0};
    CHECK(!blow_up_time(p).finite());
    p.f0 = 0.0;
    CHECK(!blow_up_time(p).finite());
}

TEST_CASE("blow-up time scales inversely with f0") {
    // exact for power-of-two factors, 2 ulp otherwise
    OldroydParams base{1.0, 3.0, 1.0, 1.0, 1.0};
    const double t0 = *blow_up_time(base).t_star;
    for (double c : {2.0, 4.0, 0.5, 8.0}) {
        OldroydParams scaled = base;
        scaled.f0 = c * base.f0;
        CHECK(*blow_up_time(scaled).t_star == t0 / c);
    }
    for (double c : {3.0, 1.7, 0.3}) {
        OldroydParams scaled = base;
        scaled.f0 = c * base.f0;
        CHECK(*blow_up_time(scaled).t_star ==
              doctest::Approx(t0 / c).epsilon(1e-14));
    }
}

TEST_CASE("json round trip and unknown-field rejection") {
    const auto p = oldroyd_params_from_json(R"({"f0":1,"alpha":3,"beta":1})");
    CHECK(p.f0 == 1.0);
    CHECK(p.nu == 1.0);  // defaulted
    const auto q = oldroyd_params_from_json(to_json(p));
    CHECK(q.alpha == p.alpha);

    CHECK_THROWS_AS(oldroyd_params_from_json(R"({"f0":1,"weird":2})"), Error);
    CHECK_THROWS_AS(ns_params_from_json(R"({"T":1})"), Error);  // case matters

    const auto pf = phase_field_params_from_json(
        R"({"t":1,"epsilon":0.1,"variant":"cahn-hilliard","dimension":3})");
    CHECK(pf.variant == PhaseVariant::CahnHilliard);
    CHECK(pf.dimension == 3);
    const auto pf2 = phase_field_params_from_json(to_json(pf));
    CHECK(pf2.epsilon == pf.epsilon);
}

TEST_CASE("1-D grid with three points") {
    GridSpec spec;
    spec.axes = {{-1.0, 1.0, 3}};
    spec.times = {0.0};
    const auto pts = make_grid(spec);
    REQUIRE(pts.size() == 3);
    CHECK(pts[0].x[0] == -1.0);
    CHECK(pts[1].x[0] == 0.0);
    CHECK(pts[2].x[0] == 1.0);
}

TEST_CASE("2-D grid enumerates row-major within each time") {
    GridSpec spec;
    spec.axes = {{-1.0, 1.0, 2}, {-1.0, 1.0, 2}};
    spec.times = {0.0, 0.1};
    const auto pts = make_grid(spec);
    REQUIRE(pts.size() == 8);
    // last axis fastest
    CHECK(pts[0].x[0] == -1.0);
    CHECK(pts[0].x[1] == -1.0);
    CHECK(pts[1].x[0] == -1.0);
    CHECK(pts[1].x[1] == 1.0);
    CHECK(pts[2].x[0] == 1.0);
    CHECK(pts[2].x[1] == -1.0);
    CHECK(pts[3].t == 0.0);
    CHECK(pts[4].t == 0.1);
    CHECK(pts[4].x[0] == -1.0);
    CHECK(pts[4].x[1] == -1.0);
}

TEST_CASE("zero-count axis raises EmptyGrid") {
    GridSpec spec;
    spec.axes = {{-1.0, 1.0, 0}, {-1.0, 1.0, 2}};
    spec.times = {0.0};
    try {
        make_grid(spec);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::EmptyGrid);
    }
}

TEST_CASE("empty time list raises EmptyGrid") {
    GridSpec spec;
    spec.axes = {{-1.0, 1.0, 2}};
    try {
        make_grid(spec);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::EmptyGrid);
    }
}

TEST_CASE("grid enumeration is identical across calls") {
    GridSpec spec;
    spec.axes = {{-2.0, 1.5, 7}, {0.0, 1.0, 5}};
    spec.times = {0.0, 0.25, 0.5};
    const auto a = make_grid(spec);
    const auto b = make_grid(spec);
    REQUIRE(a.size() == b.size());
    REQUIRE(a.size() == spec.point_count());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].x == b[i].x);
        CHECK(a[i].t == b[i].t);
    }
}
