#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pact/group.hpp"

namespace pact::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kInputError = 2 };

struct Output {
  std::string format = "text";  // text | json
  std::string path;             // empty: write to the stream
};

int cmd_verify(const std::string& file, const Output& out, std::ostream& os, std::ostream& err);

/// group: built-in spec ("S3", "cyclic:4", ...) or a document path.
/// subgroup: generator labels; empty means the trivial subgroup.
int cmd_factorize(const std::string& group, const std::vector<std::string>& subgroup,
                  const std::string& compare, const Output& out, std::ostream& os, std::ostream& err);

/// action: name inside a workbench; empty picks the only action.
int cmd_globalize(const std::string& file, const std::string& action, const Output& out,
                  std::ostream& os, std::ostream& err);

int cmd_enumerate(const std::string& group, std::size_t size, bool envelopes, const Output& out,
                  std::ostream& os, std::ostream& err);

/// section: table | beta | all.
int cmd_example_s3(const std::string& section, const Output& out, std::ostream& os, std::ostream& err);

/// Three-column j/h table, one line per (g, g_i) with g in group order and
/// g_i in transversal order. Annotates rows when report is given.
std::string render_table(const CosetFactorization& cf, const DiscrepancyReport* report = nullptr);

/// Claimed rows from {"rows":[{"g":..,"gi":..,"j":..,"h":..}, ...]}.
std::vector<ClaimedRow> read_claimed_rows(const std::string& path);

}  // namespace pact::cli
