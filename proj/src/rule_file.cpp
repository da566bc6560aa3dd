#include "cubasquare/rule_file.hpp"

#include <json.hpp>

namespace cubasquare
{

using nlohmann::json;

namespace
{

json points_json(const std::vector<Point>& points)
{
    json arr = json::array();
    for (const Point p : points)
        arr.push_back({p.x, p.y});
    return arr;
}

std::vector<Point> points_from(const json& arr)
{
    if (!arr.is_array())
        throw RuleFileError("nodes must be an array of [x, y] pairs");
    std::vector<Point> out;
    for (const auto& item : arr)
    {
        if (!item.is_array() || item.size() != 2 || !item[0].is_number() || !item[1].is_number())
            throw RuleFileError("each node must be a pair of numbers");
        out.push_back({item[0].get<double>(), item[1].get<double>()});
    }
    return out;
}

json node_set_fields(const NodeSet& nodes)
{
    json j;
    j["family"] = to_string(nodes.family);
    j["n"] = nodes.n;
    j["expected_count"] = nodes.expected_count;
    if (nodes.family == NodeFamily::GenChebEven || nodes.family == NodeFamily::GenChebOdd)
    {
        j["alpha"] = nodes.alpha;
        j["beta"] = nodes.beta;
    }
    j["variant"] = nodes.variant;
    j["count"] = nodes.size();
    j["nodes"] = points_json(nodes.points);
    return j;
}

NodeSet node_set_from(const json& j)
{
    NodeSet nodes;
    nodes.family = parse_node_family(j.at("family").get<std::string>());
    nodes.n = j.at("n").get<int>();
    nodes.expected_count = j.value("expected_count", 0);
    nodes.alpha = j.value("alpha", -0.5);
    nodes.beta = j.value("beta", -0.5);
    nodes.variant = j.value("variant", std::string());
    nodes.points = points_from(j.at("nodes"));
    return nodes;
}

json report_json(const ExactnessReport& r)
{
    json j;
    j["declared_degree"] = r.declared_degree;
    j["oracle_available"] = r.oracle_available;
    j["pass"] = r.pass;
    j["tolerance"] = r.tolerance;
    j["max_relative_error"] = r.max_relative_error;
    j["scanned_degree"] = r.scanned_degree;
    if (r.first_failing_degree)
    {
        j["first_failing_degree"] = *r.first_failing_degree;
        j["failing_monomial"] = {r.failing_i, r.failing_j};
    }
    else
        j["first_failing_degree"] = nullptr;
    j["exact_beyond_declared"] = r.exact_beyond_declared;
    return j;
}

ExactnessReport report_from(const json& j)
{
    ExactnessReport r;
    r.declared_degree = j.at("declared_degree").get<int>();
    r.oracle_available = j.at("oracle_available").get<bool>();
    r.pass = j.at("pass").get<bool>();
    r.tolerance = j.at("tolerance").get<double>();
    r.max_relative_error = j.at("max_relative_error").get<double>();
    r.scanned_degree = j.at("scanned_degree").get<int>();
    if (j.contains("first_failing_degree") && !j["first_failing_degree"].is_null())
    {
        r.first_failing_degree = j["first_failing_degree"].get<int>();
        r.failing_i = j.at("failing_monomial").at(0).get<int>();
        r.failing_j = j.at("failing_monomial").at(1).get<int>();
    }
    r.exact_beyond_declared = j.value("exact_beyond_declared", false);
    return r;
}

json parse_json(std::string_view text)
{
    try
    {
        return json::parse(text.begin(), text.end());
    }
    catch (const json::exception& e)
    {
        throw RuleFileError(std::string("invalid JSON: ") + e.what());
    }
}

} // namespace

RuleFile make_rule_file(const CubatureRule& rule, bool run_oracle)
{
    RuleFile f;
    f.rule = rule;
    if (run_oracle)
        f.oracle_report = exactness_check(rule);
    return f;
}

std::string emit_rule_file(const RuleFile& file, int indent)
{
    const auto& r = file.rule;
    json j;
    j["schema_version"] = file.schema_version;
    j["weight"] = r.weight.to_string();
    j["degree"] = r.degree;
    j["n"] = r.nodes.n;
    j["family"] = to_string(r.nodes.family);
    j["variant"] = r.nodes.variant;
    if (r.nodes.family == NodeFamily::GenChebEven || r.nodes.family == NodeFamily::GenChebOdd)
    {
        j["alpha"] = r.nodes.alpha;
        j["beta"] = r.nodes.beta;
    }
    j["nodes"] = points_json(r.nodes.points);
    j["lambdas"] = r.lambdas;
    j["provenance"] = r.provenance;
    j["oracle_report"] = file.oracle_report ? report_json(*file.oracle_report) : json(nullptr);
    return j.dump(indent) + "\n";
}

RuleFile parse_rule_file(std::string_view text)
{
    const json j = parse_json(text);
    if (!j.is_object())
        throw RuleFileError("rule file must be a JSON object");
    try
    {
        RuleFile f;
        f.schema_version = j.at("schema_version").get<int>();
        if (f.schema_version != rule_file_schema_version)
            throw RuleFileError("unsupported schema_version " + std::to_string(f.schema_version));
        auto& r = f.rule;
        r.weight = WeightSpec::parse(j.at("weight").get<std::string>());
        r.degree = j.at("degree").get<int>();
        r.nodes.n = j.at("n").get<int>();
        r.nodes.family = parse_node_family(j.at("family").get<std::string>());
        r.nodes.variant = j.value("variant", std::string());
        r.nodes.alpha = j.value("alpha", -0.5);
        r.nodes.beta = j.value("beta", -0.5);
        r.nodes.points = points_from(j.at("nodes"));
        r.nodes.expected_count = static_cast<int>(r.nodes.points.size());
        r.lambdas = j.at("lambdas").get<std::vector<double>>();
        r.provenance = j.value("provenance", std::string());
        if (r.lambdas.size() != r.nodes.points.size())
            throw RuleFileError("lambdas and nodes differ in length");
        if (j.contains("oracle_report") && !j["oracle_report"].is_null())
            f.oracle_report = report_from(j["oracle_report"]);
        return f;
    }
    catch (const json::exception& e)
    {
        throw RuleFileError(std::string("malformed rule file: ") + e.what());
    }
    catch (const RuleFileError&)
    {
        throw;
    }
    catch (const Error& e)
    {
        throw RuleFileError(std::string("malformed rule file: ") + e.what());
    }
}

std::string emit_node_set(const NodeSet& nodes, int indent)
{
    return node_set_fields(nodes).dump(indent) + "\n";
}

NodeSet parse_node_set(std::string_view text)
{
    const json j = parse_json(text);
    try
    {
        return node_set_from(j);
    }
    catch (const json::exception& e)
    {
        throw RuleFileError(std::string("malformed node set: ") + e.what());
    }
    catch (const Error& e)
    {
        throw RuleFileError(std::string("malformed node set: ") + e.what());
    }
}

} // namespace cubasquare
