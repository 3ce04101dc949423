#include "blowup/grid.hpp"

#include <cmath>

namespace blowup {

std::size_t GridSpec::point_count() const {
    std::size_t n = times.size();
    for (const auto& a : axes) n *= a.count;
    return n;
}

const GridSpec& validate(const GridSpec& spec) {
    if (spec.axes.empty() || spec.axes.size() > 3)
        fail(ErrorKind::BadInput, "grid must have 1 to 3 spatial axes");
    for (const auto& a : spec.axes) {
        if (!std::isfinite(a.lo) || !std::isfinite(a.hi))
            fail(ErrorKind::BadInput, "axis bounds must be finite");
        if (a.count == 0) fail(ErrorKind::EmptyGrid, "axis count must be >= 1");
        if (a.count > 1 && !(a.lo < a.hi))
            fail(ErrorKind::BadInput, "axis needs lo < hi when count > 1");
    }
    if (spec.times.empty()) fail(ErrorKind::EmptyGrid, "time list must be nonempty");
    for (std::size_t i = 0; i < spec.times.size(); ++i) {
        if (!std::isfinite(spec.times[i]))
            fail(ErrorKind::BadInput, "times must be finite");
        if (i > 0 && !(spec.times[i - 1] < spec.times[i]))
            fail(ErrorKind::BadInput, "times must be strictly increasing");
    }
    return spec;
}

std::vector<double> axis_points(const GridAxis& axis) {
    std::vector<double> pts(axis.count);
    if (axis.count == 1) {
        pts[0] = axis.lo;
        return pts;
    }
    const double step = (axis.hi - axis.lo) / static_cast<double>(axis.count - 1);
    for (std::size_t i = 0; i < axis.count; ++i)
        pts[i] = axis.lo + step * static_cast<double>(i);
    pts.back() = axis.hi;  // endpoint exact regardless of rounding
    return pts;
}

std::vector<SpaceTimePoint> make_grid(const GridSpec& spec) {
    validate(spec);
    std::vector<std::vector<double>> axes;
    axes.reserve(spec.axes.size());
    for (const auto& a : spec.axes) axes.push_back(axis_points(a));

    std::vector<SpaceTimePoint> out;
    out.reserve(spec.point_count());
    const int dim = spec.dim();

    std::size_t spatial = 1;
    for (const auto& a : axes) spatial *= a.size();

    // Time slowest, axes row-major (last axis fastest).
    for (double t : spec.times) {
        for (std::size_t flat = 0; flat < spatial; ++flat) {
            SpaceTimePoint pt;
            pt.dim = dim;
            pt.t = t;
            std::size_t rem = flat;
            for (std::size_t a = axes.size(); a-- > 0;) {
                pt.x[a] = axes[a][rem % axes[a].size()];
                rem /= axes[a].size();
            }
            out.push_back(pt);
        }
    }
    return out;
}

}  // namespace blowup
