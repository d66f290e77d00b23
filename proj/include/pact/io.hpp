#pragma once

#include <map>
#include <string>
#include <string_view>
#include <variant>

#include <json.hpp>

#include "pact/algebra_action.hpp"
#include "pact/group.hpp"
#include "pact/set_action.hpp"

namespace pact::io {

using json = nlohmann::json;
using Action = std::variant<SetPartialAction, AlgebraPartialAction>;

inline constexpr const char* kFormatVersion = "1";

struct Workbench {
  std::string version = kFormatVersion;
  std::map<std::string, GroupPtr> groups;
  std::map<std::string, AlgebraPtr> algebras;
  std::map<std::string, Action> actions;
};

bool operator==(const Workbench& a, const Workbench& b);

/// Strict JSON: duplicate keys are rejected. Syntax errors become
/// ParseError with "line L, column C" in the message.
json parse_json(std::string_view text);

/// "S3", "Z4", "symmetric:3", "cyclic:4" or "trivial"; nullopt otherwise.
std::optional<GroupPtr> builtin_group(std::string_view spec);

/// A workbench, or a lone action document (stored under "main").
Workbench parse_workbench(std::string_view text);
Workbench read_workbench(const std::string& path);

GroupPtr parse_group(const json& doc, const Workbench& context = {});
AlgebraPtr parse_algebra(const json& doc, const Workbench& context = {});
Action parse_action(const json& doc, const Workbench& context = {});

json group_to_json(const FiniteGroup& g);
json algebra_to_json(const BlockAlgebra& a);
json action_to_json(const Action& action);
json workbench_to_json(const Workbench& wb);
std::string serialize(const Workbench& wb);

json report_to_json(const VerificationReport& report);
json globalization_to_json(const AlgebraPartialAction& action, const GlobalizationResult& result);
json set_globalization_to_json(const SetPartialAction& action, const SetGlobalization& glob,
                               const VerificationReport& checks);

std::string read_file(const std::string& path);

}  // namespace pact::io
