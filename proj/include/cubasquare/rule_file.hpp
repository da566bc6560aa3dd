#pragma once

#include "cubasquare/cubature.hpp"
#include "cubasquare/nodes.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace cubasquare
{

inline constexpr int rule_file_schema_version = 1;

/// Malformed or incomplete rule/node JSON.
class RuleFileError : public Error
{
  public:
    using Error::Error;
};

/// On-disk form of a cubature rule. Numbers are written in shortest round-trip form, so
/// parse(emit(r)) reproduces every double bit for bit.
struct RuleFile
{
    int schema_version = rule_file_schema_version;
    CubatureRule rule;
    std::optional<ExactnessReport> oracle_report;
};

RuleFile make_rule_file(const CubatureRule& rule, bool run_oracle = true);

std::string emit_rule_file(const RuleFile& file, int indent = 2);
RuleFile parse_rule_file(std::string_view text);

std::string emit_node_set(const NodeSet& nodes, int indent = 2);
NodeSet parse_node_set(std::string_view text);

} // namespace cubasquare
