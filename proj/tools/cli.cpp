#include "cli.hpp"

#include "cubasquare/cubature.hpp"
#include "cubasquare/discover.hpp"
#include "cubasquare/interp.hpp"
#include "cubasquare/rule_file.hpp"
#include "cubasquare/svg.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace cubasquare
{

namespace
{

using nlohmann::json;

class UsageError : public Error
{
  public:
    using Error::Error;
};

struct Options
{
    std::string family;
    int n = 0;
    std::vector<int> n_list;
    double alpha = -0.5;
    double beta = -0.5;
    double gamma = -0.5;
    std::string weight;
    std::string svg;
    std::string out;
    std::string format = "json";
    bool curve = false;
    int seeds = 200;
    std::uint64_t rng = 42;
    int resolution = 256;
    bool symmetric = false;
    std::string mode;
    std::string file;
    std::string function = "exp";
    std::string norm = "sup";
};

void write_output(const std::string& path, const std::string& text, std::ostream& out)
{
    if (path.empty() || path == "-")
    {
        out << text;
        return;
    }
    std::ofstream f(path);
    if (!f)
        throw UsageError("cannot write '" + path + "'");
    f << text;
}

std::string read_file(const std::string& path)
{
    std::ifstream f(path);
    if (!f)
        throw UsageError("cannot read '" + path + "'");
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

bool is_gencheb(NodeFamily f)
{
    return f == NodeFamily::GenChebEven || f == NodeFamily::GenChebOdd;
}

WeightSpec resolve_weight(const Options& o)
{
    if (o.weight == "gencheb")
        return WeightSpec::generalized_chebyshev(o.alpha, o.beta, o.gamma);
    return WeightSpec::parse(o.weight);
}

void write_svg(const Options& o, const NodeSet& nodes)
{
    if (o.svg.empty())
        return;
    std::vector<std::vector<Point>> curves;
    if (o.curve)
    {
        if (nodes.family != NodeFamily::Padua)
            throw UsageError("--curve is only available for Padua points");
        curves.push_back(lissajous_polyline(nodes.n));
    }
    SvgOptions svg;
    svg.title = to_string(nodes.family) + " n=" + std::to_string(nodes.n) + " (" + std::to_string(nodes.size()) +
                " points)";
    const double reach = [&] {
        double m = 1.0;
        for (const Point p : nodes.points)
            m = std::max({m, std::abs(p.x), std::abs(p.y)});
        return m;
    }();
    svg.extent = 1.1 * reach;
    std::ofstream f(o.svg);
    if (!f)
        throw UsageError("cannot write '" + o.svg + "'");
    f << render_svg(nodes.points, curves, svg);
}

std::string nodes_csv(const NodeSet& nodes)
{
    std::ostringstream s;
    s.precision(17);
    s << "x,y\n";
    for (const Point p : nodes.points)
        s << p.x << ',' << p.y << '\n';
    return s.str();
}

int cmd_nodes(const Options& o, std::ostream& out)
{
    const auto f = parse_node_family(o.family);
    const auto nodes = make_nodes(f, o.n, o.alpha, o.beta);
    write_svg(o, nodes);
    write_output(o.out, o.format == "csv" ? nodes_csv(nodes) : emit_node_set(nodes), out);
    return exit_pass;
}

CubatureRule build_rule(const Options& o)
{
    const auto f = parse_node_family(o.family);
    if (o.weight.empty())
        return family_rule(f, o.n, o.alpha, o.beta);
    // Explicit weight: moment-fitted weights on the family's nodes, degree 2n-1.
    const auto nodes = make_nodes(f, o.n, o.alpha, o.beta);
    const int degree = f == NodeFamily::GaussU ? 2 * o.n - 2 : 2 * o.n - 1;
    return weights_from_vandermonde(nodes, resolve_weight(o), degree);
}

int cmd_rule(const Options& o, std::ostream& out)
{
    const auto file = make_rule_file(build_rule(o));
    write_svg(o, file.rule.nodes);
    write_output(o.out, emit_rule_file(file), out);
    return file.oracle_report && file.oracle_report->oracle_available && !file.oracle_report->pass ? exit_fail
                                                                                                   : exit_pass;
}

int cmd_verify(const Options& o, std::ostream& out)
{
    const std::string text = read_file(o.file);
    if (text.find_first_not_of(" \t\r\n") == std::string::npos)
        throw RuleFileError("empty rule file");
    const auto file = parse_rule_file(text);
    const auto report = exactness_check(file.rule);
    json j;
    j["file"] = o.file;
    j["weight"] = file.rule.weight.to_string();
    j["nodes"] = file.rule.nodes.size();
    j["declared_degree"] = report.declared_degree;
    j["oracle_available"] = report.oracle_available;
    j["pass"] = report.pass;
    j["max_relative_error"] = report.max_relative_error;
    j["tolerance"] = report.tolerance;
    if (report.first_failing_degree)
    {
        j["first_failing_degree"] = *report.first_failing_degree;
        j["failing_monomial"] = {report.failing_i, report.failing_j};
    }
    j["summary"] = report.summary();
    out << j.dump(2) << '\n';
    return report.oracle_available && report.pass ? exit_pass : exit_fail;
}

const std::map<std::string, std::function<double(Point)>>& test_functions()
{
    static const std::map<std::string, std::function<double(Point)>> table{
        {"exp", [](Point p) { return std::exp(p.x + p.y); }},
        {"runge", [](Point p) { return 1.0 / (1.0 + 25.0 * (p.x * p.x + p.y * p.y)); }},
        {"cos", [](Point p) { return std::cos(3.0 * p.x + 2.0 * p.y); }},
        {"franke",
         [](Point p) {
             const double x = (p.x + 1.0) / 2.0, y = (p.y + 1.0) / 2.0;
             return 0.75 * std::exp(-((9 * x - 2) * (9 * x - 2) + (9 * y - 2) * (9 * y - 2)) / 4) +
                    0.75 * std::exp(-(9 * x + 1) * (9 * x + 1) / 49 - (9 * y + 1) / 10) +
                    0.5 * std::exp(-((9 * x - 7) * (9 * x - 7) + (9 * y - 3) * (9 * y - 3)) / 4) -
                    0.2 * std::exp(-(9 * x - 4) * (9 * x - 4) - (9 * y - 7) * (9 * y - 7));
         }},
    };
    return table;
}

int cmd_interp(const Options& o, std::ostream& out)
{
    const auto f = parse_node_family(o.family);
    const auto it = test_functions().find(o.function);
    if (it == test_functions().end())
        throw UsageError("unknown function '" + o.function + "' (exp, runge, cos, franke)");
    if (o.norm != "sup" && o.norm != "l2")
        throw UsageError("--norm must be sup or l2");
    const auto rows = convergence_report(f, it->second, o.n_list, o.norm == "sup" ? ErrorNorm::Sup : ErrorNorm::L2,
                                         o.alpha, o.beta);
    std::ostringstream s;
    s.precision(6);
    if (o.format == "csv")
    {
        s << "n,error,ratio\n";
        for (const auto& r : rows)
            s << r.n << ',' << r.error << ',' << r.ratio << '\n';
    }
    else
    {
        json j;
        j["family"] = to_string(f);
        j["function"] = o.function;
        j["norm"] = o.norm;
        j["rows"] = json::array();
        for (const auto& r : rows)
            j["rows"].push_back({{"n", r.n}, {"error", r.error}, {"ratio", r.ratio}});
        s << j.dump(2) << '\n';
    }
    write_output(o.out, s.str(), out);
    return exit_pass;
}

int cmd_lebesgue(const Options& o, std::ostream& out)
{
    const auto f = parse_node_family(o.family);
    const bool power = is_gencheb(f);
    const double exponent = 2.0 * std::max(o.alpha, o.beta) + 1.0;
    json rows = json::array();
    std::ostringstream s;
    s.precision(6);
    if (o.format == "csv")
        s << "n,lambda,lambda_over_log2" << (power ? ",lambda_over_power" : "") << '\n';
    for (const int n : o.n_list)
    {
        const double L = lebesgue_constant(f, n, o.resolution, o.alpha, o.beta);
        const double log2 = std::log(n) * std::log(n);
        json row{{"n", n}, {"lambda", L}, {"lambda_over_log2", L / log2}};
        if (power)
            row["lambda_over_power"] = L / std::pow(n, exponent);
        if (o.format == "csv")
        {
            s << n << ',' << L << ',' << L / log2;
            if (power)
                s << ',' << L / std::pow(n, exponent);
            s << '\n';
        }
        rows.push_back(row);
    }
    if (o.format != "csv")
    {
        json j{{"family", to_string(f)}, {"resolution", o.resolution}, {"rows", rows}};
        if (power)
            j["power_exponent"] = exponent;
        s << j.dump(2) << '\n';
    }
    write_output(o.out, s.str(), out);
    return exit_pass;
}

json hankel_json(const HankelParam& H)
{
    json rows = json::array();
    const auto M = H.matrix();
    for (Eigen::Index i = 0; i < M.rows(); ++i)
    {
        json row = json::array();
        for (Eigen::Index j = 0; j < M.cols(); ++j)
            row.push_back(M(i, j));
        rows.push_back(row);
    }
    return {{"h", H.h}, {"matrix", rows}};
}

int cmd_discover(const Options& o, std::ostream& out)
{
    if (o.mode != "even" && o.mode != "odd")
        throw UsageError("mode must be 'even' or 'odd'");
    const auto kind = o.mode == "even" ? SystemKind::Even : SystemKind::Odd;
    SolverOptions opts;
    opts.seeds = o.seeds;
    opts.rng_seed = o.rng;
    opts.axis_symmetric = o.symmetric;
    const auto report = discover(kind, o.n, opts);

    json j;
    j["mode"] = o.mode;
    j["n"] = o.n;
    j["seeds"] = o.seeds;
    j["rng"] = o.rng;
    j["axis_symmetric"] = o.symmetric;
    j["converged_starts"] = report.converged_starts;
    j["status"] = report.found() ? "found" : "not found";
    if (!report.found())
        j["note"] = "no solution found with " + std::to_string(o.seeds) + " seeds; this is not a proof of nonexistence";
    j["solutions"] = json::array();
    bool all_pass = true;
    int index = 0;
    for (const auto& d : report.rules)
    {
        json s = hankel_json(d.H);
        s["nodes"] = d.rule.nodes.size();
        s["outside_square"] = d.outside;
        s["local_dimension"] = d.local_dimension;
        s["degree"] = d.rule.degree;
        s["verified"] = d.report.pass;
        s["report"] = d.report.summary();
        all_pass = all_pass && d.report.pass;
        if (!o.out.empty())
        {
            std::filesystem::create_directories(o.out);
            const auto path = std::filesystem::path(o.out) /
                              ("rule_" + o.mode + "_n" + std::to_string(o.n) + "_" + std::to_string(index) + ".json");
            std::ofstream f(path);
            if (!f)
                throw UsageError("cannot write '" + path.string() + "'");
            f << emit_rule_file(RuleFile{rule_file_schema_version, d.rule, d.report});
            s["rule_file"] = path.string();
        }
        j["solutions"].push_back(s);
        ++index;
    }
    j["algebraic_only"] = json::array();
    for (const auto& H : report.algebraic_only)
        j["algebraic_only"].push_back(hankel_json(H));
    j["failures"] = report.failures;
    if (report.fixture)
    {
        json fx;
        fx["name"] = report.fixture->name;
        fx["printed"] = report.fixture->printed.h;
        fx["corrected"] = report.fixture->corrected.h;
        fx["distance_corrected"] = report.fixture_distance_corrected ? json(*report.fixture_distance_corrected) : json();
        fx["distance_printed"] = report.fixture_distance_printed ? json(*report.fixture_distance_printed) : json();
        j["fixture"] = fx;
    }
    out << j.dump(2) << '\n';
    return all_pass ? exit_pass : exit_fail;
}

int cmd_plot(const Options& o, std::ostream& out)
{
    const std::string text = read_file(o.file);
    const json j = [&] {
        try
        {
            return json::parse(text);
        }
        catch (const json::exception& e)
        {
            throw RuleFileError(std::string("invalid JSON: ") + e.what());
        }
    }();
    const NodeSet nodes = j.contains("lambdas") ? parse_rule_file(text).rule.nodes : parse_node_set(text);
    Options plot = o;
    if (plot.svg.empty())
        plot.svg = o.out.empty() ? "-" : o.out;
    if (plot.svg == "-")
    {
        std::vector<std::vector<Point>> curves;
        if (o.curve)
        {
            if (nodes.family != NodeFamily::Padua)
                throw UsageError("--curve is only available for Padua points");
            curves.push_back(lissajous_polyline(nodes.n));
        }
        out << render_svg(nodes.points, curves);
        return exit_pass;
    }
    write_svg(plot, nodes);
    return exit_pass;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Minimal cubature rules and interpolation on the square"};
    app.require_subcommand(1);
    Options o;

    const auto add_family = [&](CLI::App* c) {
        c->add_option("family", o.family, "gaussu | mint | nearmint | padua | gencheb")->required();
    };
    const auto add_params = [&](CLI::App* c) {
        c->add_option("--alpha", o.alpha, "generalized Chebyshev alpha");
        c->add_option("--beta", o.beta, "generalized Chebyshev beta");
    };
    const auto add_format = [&](CLI::App* c) {
        c->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    };

    auto* nodes = app.add_subcommand("nodes", "generate a node set");
    add_family(nodes);
    nodes->add_option("n", o.n)->required();
    add_params(nodes);
    add_format(nodes);
    nodes->add_option("--svg", o.svg, "write an SVG scatter plot");
    nodes->add_flag("--curve", o.curve, "overlay the Padua generating curve");
    nodes->add_option("--out", o.out, "output file (default stdout)");

    auto* rule = app.add_subcommand("rule", "build a cubature rule and write its rule file");
    add_family(rule);
    rule->add_option("n", o.n)->required();
    add_params(rule);
    rule->add_option("--gamma", o.gamma, "generalized Chebyshev gamma (with --weight gencheb)");
    rule->add_option("--weight", o.weight, "fit weights for this weight instead of the family's own");
    rule->add_option("--svg", o.svg, "write an SVG scatter plot");
    rule->add_flag("--curve", o.curve, "overlay the Padua generating curve");
    rule->add_option("--out", o.out, "output file (default stdout)");

    auto* verify = app.add_subcommand("verify", "check a rule file against the moment oracle");
    verify->add_option("file", o.file)->required();

    auto* interp = app.add_subcommand("interp", "interpolation error table");
    add_family(interp);
    interp->add_option("n", o.n_list)->required();
    add_params(interp);
    add_format(interp);
    interp->add_option("--function", o.function, "exp | runge | cos | franke");
    interp->add_option("--norm", o.norm, "sup or l2");
    interp->add_option("--out", o.out, "output file (default stdout)");

    auto* lebesgue = app.add_subcommand("lebesgue", "Lebesgue constants on a Chebyshev grid");
    add_family(lebesgue);
    lebesgue->add_option("n", o.n_list)->required();
    add_params(lebesgue);
    add_format(lebesgue);
    lebesgue->add_option("--resolution", o.resolution, "grid parameter r, (r+1)^2 points")->check(CLI::Range(64, 4096));
    lebesgue->add_option("--out", o.out, "output file (default stdout)");

    auto* disc = app.add_subcommand("discover", "solve the Hankel systems for the constant weight");
    disc->add_option("mode", o.mode, "even or odd")->required()->check(CLI::IsMember({"even", "odd"}));
    disc->add_option("n", o.n)->required();
    disc->add_option("--seeds", o.seeds, "random starts")->check(CLI::PositiveNumber);
    disc->add_option("--rng", o.rng, "random seed");
    disc->add_flag("--symmetric", o.symmetric, "restrict to h_i = 0 for odd i");
    disc->add_option("--out", o.out, "directory for rule files of verified solutions");

    auto* plot = app.add_subcommand("plot", "render a node or rule file as SVG");
    plot->add_option("file", o.file)->required();
    plot->add_option("--svg", o.svg, "SVG output (default stdout)");
    plot->add_option("--out", o.out, "alias for --svg");
    plot->add_flag("--curve", o.curve, "overlay the Padua generating curve");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::Success& e)
    {
        app.exit(e, out, err);
        return exit_pass;
    }
    catch (const CLI::ParseError& e)
    {
        app.exit(e, out, err);
        return exit_usage;
    }

    try
    {
        if (*nodes)
            return cmd_nodes(o, out);
        if (*rule)
            return cmd_rule(o, out);
        if (*verify)
            return cmd_verify(o, out);
        if (*interp)
            return cmd_interp(o, out);
        if (*lebesgue)
            return cmd_lebesgue(o, out);
        if (*disc)
            return cmd_discover(o, out);
        if (*plot)
            return cmd_plot(o, out);
    }
    catch (const UsageError& e)
    {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const UnsupportedError& e)
    {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const RuleFileError& e)
    {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
    catch (const Error& e)
    {
        err << "failed: " << e.what() << '\n';
        return exit_fail;
    }
    return exit_usage;
}

} // namespace cubasquare
