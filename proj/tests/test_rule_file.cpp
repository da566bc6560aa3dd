#include "cubasquare/rule_file.hpp"
#include "cubasquare/svg.hpp"

#include <doctest.h>

#include <regex>
#include <string>

using namespace cubasquare;

namespace
{

std::size_t count(const std::string& text, const std::string& needle)
{
    std::size_t c = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1))
        ++c;
    return c;
}

} // namespace

TEST_CASE("rule files round-trip bit for bit")
{
    for (const auto& rule : {family_rule(NodeFamily::MinTEven, 8), family_rule(NodeFamily::GaussU, 5),
                             family_rule(NodeFamily::GenChebOdd, 7, 0.5, -0.5), family_rule(NodeFamily::Padua, 6)})
    {
        const auto file = make_rule_file(rule);
        REQUIRE(file.oracle_report.has_value());
        CHECK(file.oracle_report->pass);
        const auto text = emit_rule_file(file);
        const auto back = parse_rule_file(text);
        CHECK(back.schema_version == rule_file_schema_version);
        CHECK(back.rule.weight == rule.weight);
        CHECK(back.rule.degree == rule.degree);
        CHECK(back.rule.nodes.family == rule.nodes.family);
        CHECK(back.rule.nodes.n == rule.nodes.n);
        CHECK(back.rule.nodes.points == rule.nodes.points);
        CHECK(back.rule.lambdas == rule.lambdas);
        CHECK(back.rule.provenance == rule.provenance);
        REQUIRE(back.oracle_report.has_value());
        CHECK(back.oracle_report->pass == file.oracle_report->pass);
        CHECK(back.oracle_report->max_relative_error == file.oracle_report->max_relative_error);
        CHECK(emit_rule_file(back) == text);
        // re-verification agrees with the stored report
        CHECK(exactness_check(back.rule).pass);
    }
    const auto no_report = make_rule_file(family_rule(NodeFamily::GaussU, 3), false);
    CHECK_FALSE(parse_rule_file(emit_rule_file(no_report)).oracle_report.has_value());
}

TEST_CASE("node sets round-trip")
{
    const auto nodes = gencheb_nodes(0.5, 0.5, 6);
    const auto back = parse_node_set(emit_node_set(nodes));
    CHECK(back.points == nodes.points);
    CHECK(back.family == nodes.family);
    CHECK(back.alpha == 0.5);
    CHECK(back.expected_count == nodes.expected_count);
}

TEST_CASE("malformed input")
{
    CHECK_THROWS_AS(parse_rule_file(""), RuleFileError);
    CHECK_THROWS_AS(parse_rule_file("{not json"), RuleFileError);
    CHECK_THROWS_AS(parse_rule_file("[1, 2]"), RuleFileError);
    auto text = emit_rule_file(make_rule_file(family_rule(NodeFamily::GaussU, 3), false));
    CHECK_THROWS_AS(parse_rule_file(std::regex_replace(text, std::regex("\"schema_version\": 1"),
                                                       "\"schema_version\": 99")),
                    RuleFileError);
    CHECK_THROWS_AS(parse_rule_file(std::regex_replace(text, std::regex("\"lambdas\": \\["), "\"lambdas\": [1.0,")),
                    RuleFileError);
    CHECK_THROWS_AS(parse_rule_file(std::regex_replace(text, std::regex("\"weight\": \"cheb2\""),
                                                       "\"weight\": \"bogus\"")),
                    Error);
    CHECK_THROWS_AS(parse_node_set("{\"nodes\": [[1]]}"), RuleFileError);
}

TEST_CASE("SVG output")
{
    const auto nodes = padua_points(11);
    const auto svg = render_svg(nodes.points, {lissajous_polyline(11, 500)}, {.title = "a < b & c"});
    CHECK(count(svg, "<circle") == 78);
    CHECK(count(svg, "<polyline") == 1);
    CHECK(svg.find("<svg xmlns=\"http://www.w3.org/2000/svg\"") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("a &lt; b &amp; c") != std::string::npos);
    CHECK(lissajous_polyline(3, 10).size() == 10);
    CHECK(count(render_svg({}), "<circle") == 0);
}
