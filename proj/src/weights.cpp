#include "cubasquare/weights.hpp"

#include "cubasquare/univariate.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <vector>

namespace cubasquare
{

namespace
{

bool is_half_odd_integer(double a) // a in {-1/2, 1/2, 3/2, ...}
{
    const double twice = 2.0 * a + 1.0;
    return twice >= 0.0 && twice == std::round(twice) && static_cast<long>(std::round(twice)) % 2 == 0;
}

double parse_number(std::string_view text)
{
    const auto slash = text.find('/');
    if (slash != std::string_view::npos)
        return parse_number(text.substr(0, slash)) / parse_number(text.substr(slash + 1));
    double value = 0.0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    if (first != last && *first == '+')
        ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
        throw UnsupportedError("weight: cannot parse number '" + std::string(text) + "'");
    return value;
}

std::string format_number(double v)
{
    char buffer[64];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), v);
    return std::string(buffer, ptr);
}

std::vector<std::string_view> split(std::string_view text, char sep)
{
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true)
    {
        const auto pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return parts;
}

} // namespace

WeightSpec WeightSpec::constant()
{
    return {WeightKind::Constant, 0.0, 0.0, 0.0};
}

WeightSpec WeightSpec::product_gegenbauer(double lambda)
{
    if (!(lambda > -0.5))
        throw UnsupportedError("product Gegenbauer weight needs lambda > -1/2");
    return {WeightKind::ProductGegenbauer, lambda, 0.0, 0.0};
}

WeightSpec WeightSpec::product_jacobi(double alpha, double beta)
{
    if (!(alpha > -1.0) || !(beta > -1.0))
        throw UnsupportedError("product Jacobi weight needs alpha, beta > -1");
    return {WeightKind::ProductJacobiPair, alpha, beta, 0.0};
}

WeightSpec WeightSpec::generalized_chebyshev(double alpha, double beta, double gamma)
{
    if (!(alpha > -1.0) || !(beta > -1.0))
        throw UnsupportedError("generalized Chebyshev weight needs alpha, beta > -1");
    if (gamma != -0.5 && gamma != 0.5)
        throw UnsupportedError("generalized Chebyshev weight needs gamma = -1/2 or 1/2");
    return {WeightKind::GeneralizedChebyshev, alpha, beta, gamma};
}

WeightSpec WeightSpec::parse(std::string_view text)
{
    const auto parts = split(text, ':');
    const auto& head = parts.front();
    const auto expect = [&](std::size_t count) {
        if (parts.size() != count)
            throw UnsupportedError("weight '" + std::string(text) + "': wrong number of parameters");
    };
    if (head == "const" || head == "constant")
    {
        expect(1);
        return constant();
    }
    if (head == "cheb1")
    {
        expect(1);
        return cheb1();
    }
    if (head == "cheb2")
    {
        expect(1);
        return cheb2();
    }
    if (head == "gegenbauer")
    {
        expect(2);
        return product_gegenbauer(parse_number(parts[1]));
    }
    if (head == "jacobi")
    {
        expect(3);
        return product_jacobi(parse_number(parts[1]), parse_number(parts[2]));
    }
    if (head == "gencheb")
    {
        expect(4);
        return generalized_chebyshev(parse_number(parts[1]), parse_number(parts[2]), parse_number(parts[3]));
    }
    throw UnsupportedError("unknown weight '" + std::string(text) + "'");
}

std::string WeightSpec::to_string() const
{
    switch (kind_)
    {
    case WeightKind::Constant:
        return "const";
    case WeightKind::ProductGegenbauer:
        if (a_ == 0.0)
            return "cheb1";
        if (a_ == 1.0)
            return "cheb2";
        return "gegenbauer:" + format_number(a_);
    case WeightKind::ProductJacobiPair:
        return "jacobi:" + format_number(a_) + ":" + format_number(b_);
    case WeightKind::GeneralizedChebyshev:
        return "gencheb:" + format_number(a_) + ":" + format_number(b_) + ":" + format_number(c_);
    }
    return {};
}

double WeightSpec::axis_exponent(int axis) const
{
    switch (kind_)
    {
    case WeightKind::Constant:
        return 0.0;
    case WeightKind::ProductGegenbauer:
        return a_ - 0.5;
    case WeightKind::ProductJacobiPair:
        return axis == 0 ? a_ : b_;
    case WeightKind::GeneralizedChebyshev:
        return c_;
    }
    return 0.0;
}

int WeightSpec::polynomial_factor_degree() const
{
    if (kind_ != WeightKind::GeneralizedChebyshev)
        return 0;
    return static_cast<int>(std::lround(2.0 * a_ + 1.0 + 2.0 * b_ + 1.0));
}

bool WeightSpec::has_exact_oracle() const
{
    if (kind_ != WeightKind::GeneralizedChebyshev)
        return true;
    return is_half_odd_integer(a_) && is_half_odd_integer(b_);
}

double WeightSpec::evaluate(Point p) const
{
    const auto axis = [](double t, double e) { return e == 0.0 ? 1.0 : std::pow(1.0 - t * t, e); };
    double value = axis(p.x, axis_exponent(0)) * axis(p.y, axis_exponent(1));
    if (kind_ == WeightKind::GeneralizedChebyshev)
        value *= std::pow(std::abs(p.x - p.y), 2.0 * a_ + 1.0) * std::pow(std::abs(p.x + p.y), 2.0 * b_ + 1.0);
    return value;
}

int oracle_safety_margin()
{
    if (const char* env = std::getenv("CUBASQUARE_ORACLE_DIGITS"))
    {
        int value = 0;
        const std::string_view text(env);
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec == std::errc{} && ptr == text.data() + text.size() && value >= 0)
            return value;
    }
    return 2;
}

OracleRule oracle_rule(const WeightSpec& w, int degree)
{
    if (!w.has_exact_oracle())
        throw UnsupportedError("weight " + w.to_string() +
                               " has no exact moment oracle (2alpha+1 and 2beta+1 must be even integers)");
    if (degree < 0)
        degree = 0;
    const int factor = w.polynomial_factor_degree();
    const int per_axis = (degree + factor + 2) / 2 + oracle_safety_margin();

    const auto gx = gauss_rule_1d(w.axis_exponent(0), w.axis_exponent(0), per_axis);
    const auto gy = gauss_rule_1d(w.axis_exponent(1), w.axis_exponent(1), per_axis);

    OracleRule rule;
    rule.degree = degree;
    rule.points.reserve(gx.points.size() * gy.points.size());
    rule.weights.reserve(gx.points.size() * gy.points.size());
    const int p_minus = static_cast<int>(std::lround(2.0 * w.alpha() + 1.0));
    const int p_plus = static_cast<int>(std::lround(2.0 * w.beta() + 1.0));
    for (std::size_t i = 0; i < gx.points.size(); ++i)
        for (std::size_t j = 0; j < gy.points.size(); ++j)
        {
            const Point p{gx.points[i], gy.points[j]};
            double weight = gx.weights[i] * gy.weights[j];
            if (w.kind() == WeightKind::GeneralizedChebyshev)
                weight *= std::pow(p.x - p.y, p_minus) * std::pow(p.x + p.y, p_plus);
            rule.points.push_back(p);
            rule.weights.push_back(weight);
        }
    return rule;
}

double moment(const WeightSpec& w, int i, int j)
{
    if (i < 0 || j < 0)
        throw UnsupportedError("moment: exponents must be nonnegative");
    if ((i + j) % 2 == 1)
        return 0.0; // central symmetry
    const auto rule = oracle_rule(w, i + j);
    return rule.integrate([&](Point p) { return std::pow(p.x, i) * std::pow(p.y, j); });
}

double total_mass(const WeightSpec& w)
{
    switch (w.kind())
    {
    case WeightKind::Constant:
        return 4.0;
    case WeightKind::ProductGegenbauer:
    case WeightKind::ProductJacobiPair: {
        const double ax = w.axis_exponent(0), ay = w.axis_exponent(1);
        return jacobi_mass(ax, ax) * jacobi_mass(ay, ay);
    }
    case WeightKind::GeneralizedChebyshev: {
        // In the variables A = cos(theta-phi), B = cos(theta+phi) the weight becomes a product
        // of one-dimensional Jacobi weights.
        const double m = jacobi_mass(w.alpha(), w.beta());
        if (w.gamma() < 0.0)
            return m * m;
        const double b1 = JacobiRecurrence{w.alpha(), w.beta()}.offdiagonal(1);
        return 0.5 * m * m * b1 * b1;
    }
    }
    return 0.0;
}

bool is_centrally_symmetric(const WeightSpec& w)
{
    // Every supported kind is even in (x, y) jointly.
    (void)w;
    return true;
}

} // namespace cubasquare
