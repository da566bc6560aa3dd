#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace cubasquare
{

/// A point of the plane; nodes live in (or near) the square [-1,1]^2.
struct Point
{
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

inline double max_norm_distance(Point a, Point b)
{
    return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y));
}

/// A bivariate polynomial given as an evaluator.
using Polynomial2D = std::function<double(Point)>;

/// Base class of every error raised by the library.
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// A weight, node family or degree combination the library does not support.
class UnsupportedError : public Error
{
  public:
    using Error::Error;
};

/// A numerical routine failed to meet its own acceptance test.
class NumericalError : public Error
{
  public:
    using Error::Error;
};

inline constexpr double pi = 3.14159265358979323846;

inline long dim_polynomials(int n) // dim Pi_n^2
{
    return n < 0 ? 0 : static_cast<long>(n + 1) * (n + 2) / 2;
}

} // namespace cubasquare
