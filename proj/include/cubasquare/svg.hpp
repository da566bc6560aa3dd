#pragma once

#include "cubasquare/types.hpp"

#include <string>
#include <vector>

namespace cubasquare
{

struct SvgOptions
{
    int size = 480;            // pixels per side
    double extent = 1.1;       // visible region [-extent, extent]^2
    double radius = 2.5;       // node marker radius in pixels
    bool draw_square = true;   // outline of [-1,1]^2
    std::string title;
};

/// Scatter plot with one <circle> per point and optional polylines drawn beneath.
std::string render_svg(const std::vector<Point>& points, const std::vector<std::vector<Point>>& curves = {},
                       const SvgOptions& options = {});

/// The Padua generating curve sampled at `samples` parameter values in [0, pi].
std::vector<Point> lissajous_polyline(int n, int samples = 2000);

} // namespace cubasquare
