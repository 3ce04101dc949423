#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "blowup/error.hpp"

namespace blowup {

/// A space-time sample point. Components beyond dim are zero.
struct SpaceTimePoint {
    std::array<double, 3> x{0.0, 0.0, 0.0};
    double t = 0.0;
    int dim = 2;
};

struct GridAxis {
    double lo = -1.0;
    double hi = 1.0;
    std::size_t count = 21;
};

/// Rectangular space-time sampling: per-axis bounds/counts plus a
/// strictly increasing time list.
struct GridSpec {
    std::vector<GridAxis> axes;
    std::vector<double> times;

    int dim() const { return static_cast<int>(axes.size()); }
    std::size_t point_count() const;
};

const GridSpec& validate(const GridSpec& spec);

/// Enumerate all points, time slowest, then axes row-major (last axis
/// fastest). The ordering is part of the contract: reports and CSV rows
/// are comparable across runs.
std::vector<SpaceTimePoint> make_grid(const GridSpec& spec);

/// Uniformly spaced axis samples, endpoints included; a single-point
/// axis sits at lo.
std::vector<double> axis_points(const GridAxis& axis);

}  // namespace blowup
