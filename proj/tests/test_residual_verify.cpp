#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "blowup/residual.hpp"

using namespace blowup;

namespace {

const OldroydParams kRef{1.0, 3.0, 1.0, 1.0, 1.0};  // t* = 1/2

SweepParams sweep_params_oldroyd() {
    SweepParams sp;
    sp.oldroyd = kRef;
    return sp;
}

NSParams ns_ref() {
    NSParams p;
    p.c1 = 1.0;
    p.c2 = 0.3;
    return p;
}

PhaseFieldParams nsac_ref(PhaseVariant variant = PhaseVariant::AllenCahn,
                          int dim = 2) {
    PhaseFieldParams p;
    p.epsilon = 0.1;
    p.lambda = 1.0;
    p.gamma = variant == PhaseVariant::TransportOnly ? 0.0 : 1.0;
    p.variant = variant;
    p.dimension = dim;
    if (dim == 3) {
        p.ns.c1 = 0.5;
        p.ns.c2 = -0.3;
        p.ns.c3 = 0.2;
    }
    return p;
}

GridSpec small_grid(int dim, std::vector<double> times) {
    GridSpec g;
    for (int a = 0; a < dim; ++a) g.axes.push_back({-1.0, 1.0, 5});
    g.times = std::move(times);
    return g;
}

}  // namespace

TEST_CASE("transformed system: analytic residual vanishes at the reference point") {
    const auto rv = residual_oldroyd_transformed(kRef, {1.0, 1.0, 0.0}, 0.25,
                                                 ResidualMode::Analytic);
    REQUIRE(rv.components.size() == 5);
    CHECK(rv.max_relative() <= 1e-10);
}

TEST_CASE("original system: analytic residual vanishes, div F exactly zero") {
    const auto rv = residual_oldroyd_original(kRef, {1.0, 1.0, 0.0}, 0.25,
                                              ResidualMode::Analytic);
    REQUIRE(rv.components.size() == 9);
    CHECK(rv.max_relative() <= 1e-10);
    for (const auto& c : rv.components) {
        if (c.name.rfind("div_F", 0) == 0) {
            CHECK(c.value == 0.0);
            CHECK(c.scale == 0.0);
        }
    }
}

TEST_CASE("original and transformed momentum residuals agree pointwise") {
    for (double t : {0.0, 0.1, 0.25, 0.4, 0.45}) {
        for (double x1 : {-1.0, 0.3, 1.0}) {
            const std::array<double, 3> x{x1, -0.7, 0.0};
            const auto a =
                residual_oldroyd_transformed(kRef, x, t, ResidualMode::Analytic);
            const auto b =
                residual_oldroyd_original(kRef, x, t, ResidualMode::Analytic);
            for (int i = 0; i < 2; ++i)
                CHECK(std::abs(a.components[i].value - b.components[i].value) <=
                      1e-12 * std::max(1.0, std::abs(a.components[i].value)));
        }
    }
}

TEST_CASE("FD residual is stencil-small and converges at order 2") {
    const std::array<double, 3> x{1.0, 1.0, 0.0};
    const auto rv = residual_oldroyd_transformed(kRef, x, 0.25, ResidualMode::FD,
                                                 StencilSpec{1e-3, 1e-3, 2});
    CHECK(rv.max_relative() <= 1e-4);

    SweepParams sp = sweep_params_oldroyd();
    const auto study = residual_convergence(
        SweepSystem::OldroydTransformed, sp, small_grid(2, {0.1, 0.25, 0.4}),
        {4e-3, 2e-3, 1e-3});
    bool any_fitted = false;
    for (const auto& c : study.components) {
        if (c.exact) continue;
        any_fitted = true;
        CHECK(c.slope == doctest::Approx(2.0).epsilon(0.05));
    }
    CHECK(any_fitted);
}

TEST_CASE("negative control: flipped h1 exponent is detected") {
    SweepParams sp = sweep_params_oldroyd();
    const auto report = residual_sweep(
        SweepSystem::OldroydTransformed, sp, small_grid(2, {0.0, 0.25, 0.45}),
        ResidualMode::Analytic, StencilSpec{}, Perturbation::FlipH1Exponent);
    CHECK(report.max_rel() >= 1e-2);

    // the deformation transport must flag it too
    const auto orig = residual_sweep(
        SweepSystem::OldroydOriginal, sp, small_grid(2, {0.0, 0.25, 0.45}),
        ResidualMode::Analytic, StencilSpec{}, Perturbation::FlipH1Exponent);
    CHECK(orig.max_rel() >= 1e-2);
}

TEST_CASE("NS 2-D analytic residual vanishes; divergence is exactly balanced") {
    const NSParams p = ns_ref();
    const auto rv = residual_ns(p, {0.1, -0.2, 0.0}, 0.5, ResidualMode::Analytic,
                                2);
    REQUIRE(rv.components.size() == 3);
    CHECK(rv.max_relative() <= 1e-10);
}

TEST_CASE("NS with c1 = 0 reduces to the pure (T-t)^{-1/2} flow") {
    NSParams p;
    const auto rv = residual_ns(p, {0.4, 0.7, 0.0}, 0.9, ResidualMode::Analytic,
                                2);
    CHECK(rv.max_relative() <= 1e-12);
}

TEST_CASE("NS 3-D analytic residual vanishes") {
    NSParams p;
    p.c1 = 0.5;
    p.c2 = -0.3;
    p.c3 = 0.2;  // 3-D pressure shift
    p.c4 = 0.1;  // 3-D exponential constant
    const auto rv = residual_ns(p, {0.1, -0.2, 0.3}, 0.5, ResidualMode::Analytic,
                                3);
    REQUIRE(rv.components.size() == 4);
    CHECK(rv.max_relative() <= 1e-10);
}

TEST_CASE("NSAC analytic residuals vanish for every variant") {
    const std::array<double, 3> x{0.3, 0.1, 0.0};
    for (PhaseVariant v : {PhaseVariant::AllenCahn, PhaseVariant::CahnHilliard,
                           PhaseVariant::TransportOnly}) {
        const auto rv =
            residual_nsac(nsac_ref(v), x, 0.5, ResidualMode::Analytic);
        REQUIRE(rv.components.size() == 4);
        CHECK(rv.max_relative() <= (v == PhaseVariant::CahnHilliard ? 1e-8
                                                                    : 1e-9));
    }
}

TEST_CASE("NSAC 3-D analytic residual vanishes") {
    const auto rv = residual_nsac(nsac_ref(PhaseVariant::AllenCahn, 3),
                                  {0.3, 0.1, -0.2}, 0.5, ResidualMode::Analytic);
    REQUIRE(rv.components.size() == 5);
    CHECK(rv.max_relative() <= 1e-9);
}

TEST_CASE("Cahn-Hilliard scale reference records the large cancelling terms") {
    // near (not at) the kink center the fourth-derivative terms are
    // O(gamma/eps^4); at the center itself they vanish with tanh
    PhaseFieldParams p = nsac_ref(PhaseVariant::CahnHilliard);
    const double t = 0.8;
    const double kink_s = 4.0 * std::sqrt(p.ns.t - t);
    const std::array<double, 3> x{kink_s / 2.0 + 0.055, kink_s / 2.0 + 0.055,
                                  0.0};
    const auto rv = residual_nsac(p, x, t, ResidualMode::Analytic);
    const auto& phase = rv.components.back();
    CHECK(phase.name == "phase");
    CHECK(phase.scale >= 1e2);
    CHECK(std::abs(phase.value) <= 1e-8 * phase.scale);
}

TEST_CASE("negative control: wrong wave speed is detected near the kink") {
    PhaseFieldParams p = nsac_ref(PhaseVariant::TransportOnly);
    SweepParams sp;
    sp.phase = p;
    const auto report = residual_sweep(SweepSystem::NSAC2D, sp,
                                       small_grid(2, {0.0, 0.3, 0.6, 0.9}),
                                       ResidualMode::Analytic, StencilSpec{},
                                       Perturbation::WrongWaveSpeed);
    CHECK(report.max_rel() >= 1e-2);
    // the phase transport carries the failure
    bool found = false;
    for (const auto& c : report.components)
        if (c.name == "phase") {
            found = true;
            CHECK(c.sup_rel >= 1e-2);
        }
    CHECK(found);
}

TEST_CASE("FD mode converges at order 2 for NS and NSAC") {
    SweepParams sp;
    sp.ns = ns_ref();
    const auto ns_study =
        residual_convergence(SweepSystem::NS2D, sp, small_grid(2, {0.3, 0.6}),
                             {4e-3, 2e-3, 1e-3});
    bool any = false;
    for (const auto& c : ns_study.components) {
        if (c.exact) continue;
        any = true;
        CHECK(c.slope == doctest::Approx(2.0).epsilon(0.05));
    }
    CHECK(any);

    sp.phase = nsac_ref(PhaseVariant::AllenCahn);
    const auto ac_study =
        residual_convergence(SweepSystem::NSAC2D, sp, small_grid(2, {0.6, 0.8}),
                             {4e-3, 2e-3, 1e-3});
    any = false;
    for (const auto& c : ac_study.components) {
        if (c.exact) continue;
        any = true;
        CHECK(c.slope == doctest::Approx(2.0).epsilon(0.05));
    }
    CHECK(any);
}

TEST_CASE("standard sweep: analytic oldroyd stays below 1e-10") {
    SweepParams sp = sweep_params_oldroyd();
    GridSpec grid = standard_sweep_grid(SweepSystem::OldroydTransformed, sp,
                                        ResidualMode::Analytic);
    REQUIRE(grid.times.size() == 10);
    CHECK(grid.times.front() == 0.0);
    CHECK(grid.times.back() == doctest::Approx(0.45));
    const auto report = residual_sweep(SweepSystem::OldroydTransformed, sp, grid,
                                       ResidualMode::Analytic);
    CHECK(report.max_rel() <= 1e-10);
}

TEST_CASE("FD sweep over the reference grid hits its derived error level") {
    SweepParams sp = sweep_params_oldroyd();
    GridSpec grid;
    grid.axes = {{-1.0, 1.0, 21}, {-1.0, 1.0, 21}};
    grid.times = {0.1, 0.2, 0.3, 0.4};  // t = 0 has no centered footprint
    const StencilSpec stencil{1e-3, 1e-3, 2};
    const auto report = residual_sweep(SweepSystem::OldroydTransformed, sp,
                                       grid, ResidualMode::FD, stencil);
    // The worst entry is the momentum time derivative at the last time:
    // centered-difference error (k^2/6) u_ttt against scale |u_t| gives
    // (k^2/6) 48 f^4 / (2 f^2) = 4 k^2 f(0.4)^2 = 1e-4 to leading order.
    const double f = 1.0 / (1.0 - 2.0 * 0.4);
    const double lead = 4.0 * stencil.k * stencil.k * f * f;
    CHECK(report.max_rel() == doctest::Approx(lead).epsilon(0.01));
    CHECK(report.max_rel() <= 1.01e-4);
}

TEST_CASE("standard sweep in FD mode drops inadmissible times") {
    SweepParams sp = sweep_params_oldroyd();
    const GridSpec grid = standard_sweep_grid(SweepSystem::OldroydTransformed,
                                              sp, ResidualMode::FD,
                                              StencilSpec{1e-3, 1e-3, 2});
    CHECK(grid.times.front() > 0.0);
    for (double t : grid.times) {
        CHECK(t - 2e-3 >= 0.0);
        CHECK(t + 2e-3 <= 0.99 * 0.5);
    }
}

TEST_CASE("sweep reports are deterministic and locate the worst point") {
    SweepParams sp;
    sp.ns = ns_ref();
    const GridSpec grid = small_grid(2, {0.2, 0.5, 0.8});
    const auto a = residual_sweep(SweepSystem::NS2D, sp, grid,
                                  ResidualMode::Analytic);
    const auto b = residual_sweep(SweepSystem::NS2D, sp, grid,
                                  ResidualMode::Analytic);
    CHECK(to_json(a) == to_json(b));
    for (const auto& c : a.components) {
        CHECK(c.sup_rel >= 0.0);
        CHECK(c.worst.t >= 0.2);
        CHECK(c.worst.t <= 0.8);
    }
}

TEST_CASE("sweep propagates point errors with the location attached") {
    SweepParams sp = sweep_params_oldroyd();
    GridSpec grid = small_grid(2, {0.25, 0.49, 0.55});  // 0.55 past t* = 0.5
    try {
        residual_sweep(SweepSystem::OldroydTransformed, sp, grid,
                       ResidualMode::Analytic);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::OutOfDomain);
        CHECK(std::string(e.what()).find("t = 0.55") != std::string::npos);
    }
}

TEST_CASE("empty time list raises EmptyGrid") {
    SweepParams sp = sweep_params_oldroyd();
    GridSpec grid = small_grid(2, {});
    try {
        residual_sweep(SweepSystem::OldroydTransformed, sp, grid,
                       ResidualMode::Analytic);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::EmptyGrid);
    }
}

TEST_CASE("report JSON carries the documented shape") {
    SweepParams sp = sweep_params_oldroyd();
    const auto report = residual_sweep(SweepSystem::OldroydTransformed, sp,
                                       small_grid(2, {0.25}),
                                       ResidualMode::Analytic);
    const std::string j = to_json(report);
    for (const char* key :
         {"\"schema_version\"", "\"system\"", "\"mode\"", "\"stencil\"",
          "\"components\"", "\"grid_echo\"", "\"sup_abs\"", "\"sup_rel\"",
          "\"worst_point\"", "\"worst_time\""})
        CHECK(j.find(key) != std::string::npos);
}
