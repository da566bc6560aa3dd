#include "cubasquare/svg.hpp"

#include "cubasquare/nodes.hpp"

#include <algorithm>
#include <sstream>

namespace cubasquare
{

namespace
{

std::string escape_xml(const std::string& s)
{
    std::string out;
    for (const char c : s)
    {
        switch (c)
        {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

} // namespace

std::string render_svg(const std::vector<Point>& points, const std::vector<std::vector<Point>>& curves,
                       const SvgOptions& options)
{
    if (options.size <= 0 || !(options.extent > 0.0))
        throw UnsupportedError("render_svg: size and extent must be positive");
    const double s = options.size;
    const auto px = [&](double x) { return (x + options.extent) / (2.0 * options.extent) * s; };
    const auto py = [&](double y) { return (options.extent - y) / (2.0 * options.extent) * s; };

    std::ostringstream out;
    out.precision(6);
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.size << "\" height=\"" << options.size
        << "\" viewBox=\"0 0 " << options.size << ' ' << options.size << "\">\n";
    if (!options.title.empty())
        out << "  <title>" << escape_xml(options.title) << "</title>\n";
    out << "  <rect x=\"0\" y=\"0\" width=\"" << s << "\" height=\"" << s << "\" fill=\"white\"/>\n";
    if (options.draw_square)
    {
        const double lo = px(-1.0), hi = px(1.0);
        out << "  <rect x=\"" << lo << "\" y=\"" << lo << "\" width=\"" << hi - lo << "\" height=\"" << hi - lo
            << "\" fill=\"none\" stroke=\"#888\" stroke-width=\"1\"/>\n";
    }
    for (const auto& curve : curves)
    {
        out << "  <polyline fill=\"none\" stroke=\"#4a7ab5\" stroke-width=\"0.8\" points=\"";
        for (std::size_t i = 0; i < curve.size(); ++i)
            out << (i ? " " : "") << px(curve[i].x) << ',' << py(curve[i].y);
        out << "\"/>\n";
    }
    for (const Point p : points)
        out << "  <circle cx=\"" << px(p.x) << "\" cy=\"" << py(p.y) << "\" r=\"" << options.radius
            << "\" fill=\"#c0392b\"/>\n";
    out << "</svg>\n";
    return out.str();
}

std::vector<Point> lissajous_polyline(int n, int samples)
{
    samples = std::max(samples, 2);
    std::vector<Point> out;
    out.reserve(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i)
        out.push_back(lissajous_curve_point(n, pi * i / (samples - 1)));
    return out;
}

} // namespace cubasquare
