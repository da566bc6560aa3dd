#pragma once

#include "cubasquare/types.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace cubasquare
{

enum class WeightKind
{
    ProductGegenbauer,    // (1-x^2)^(lambda-1/2) (1-y^2)^(lambda-1/2)
    ProductJacobiPair,    // (1-x^2)^alpha (1-y^2)^beta
    GeneralizedChebyshev, // |x-y|^(2alpha+1) |x+y|^(2beta+1) (1-x^2)^gamma (1-y^2)^gamma
    Constant,
};

/// A centrally symmetric weight function on [-1,1]^2.
///
/// Canonical text forms: `const`, `cheb1`, `cheb2`, `gegenbauer:L`, `jacobi:A:B`, `gencheb:A:B:G`.
class WeightSpec
{
  public:
    static WeightSpec constant();
    static WeightSpec product_gegenbauer(double lambda);
    static WeightSpec product_jacobi(double alpha, double beta);
    static WeightSpec generalized_chebyshev(double alpha, double beta, double gamma);
    static WeightSpec cheb1() { return product_gegenbauer(0.0); }
    static WeightSpec cheb2() { return product_gegenbauer(1.0); }

    static WeightSpec parse(std::string_view text);
    std::string to_string() const;

    WeightKind kind() const { return kind_; }
    double lambda() const { return a_; }
    double alpha() const { return a_; }
    double beta() const { return b_; }
    double gamma() const { return c_; }

    double evaluate(Point p) const;

    /// Jacobi parameters (a, a) of the axis factor (1-t^2)^a along x (axis 0) or y (axis 1).
    double axis_exponent(int axis) const;

    /// Degree of the polynomial factor (x-y)^(2alpha+1)(x+y)^(2beta+1); 0 for product weights.
    int polynomial_factor_degree() const;

    /// True when the tensor Gauss oracle integrates polynomials exactly against this weight.
    bool has_exact_oracle() const;

    friend bool operator==(const WeightSpec&, const WeightSpec&) = default;

  private:
    WeightSpec(WeightKind kind, double a, double b, double c) : kind_(kind), a_(a), b_(b), c_(c) {}

    WeightKind kind_;
    double a_;
    double b_;
    double c_;
};

/// A tensor Gauss rule with the polynomial part of the weight folded into the weights; exact for
/// polynomials up to `degree`. This is the moment oracle used by every exactness test.
struct OracleRule
{
    std::vector<Point> points;
    std::vector<double> weights;
    int degree = 0;

    template <class F>
    double integrate(F&& f) const
    {
        double sum = 0.0;
        for (std::size_t k = 0; k < points.size(); ++k)
            sum += weights[k] * f(points[k]);
        return sum;
    }
};

/// Extra points per axis beyond the minimum; read from CUBASQUARE_ORACLE_DIGITS (default 2).
int oracle_safety_margin();

OracleRule oracle_rule(const WeightSpec& w, int degree);

/// Integral of x^i y^j W(x,y) over the square.
double moment(const WeightSpec& w, int i, int j);

/// Integral of W over the square (closed form, valid for all parameters).
double total_mass(const WeightSpec& w);

bool is_centrally_symmetric(const WeightSpec& w);

} // namespace cubasquare
