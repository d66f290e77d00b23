#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pact/cli.hpp"

int main(int argc, char** argv) {
  using namespace pact::cli;
  CLI::App app{"Partial actions of finite groups: verify, factorize, globalize, enumerate"};
  app.require_subcommand(1);

  Output out;
  auto add_output = [&out](CLI::App* cmd) {
    cmd->add_option("--format", out.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--output", out.path, "write the report here instead of stdout");
  };

  std::string file;
  auto* verify = app.add_subcommand("verify", "check the partial action axioms of every action in a document");
  verify->add_option("file", file)->required();
  add_output(verify);

  std::string group = "S3";
  std::vector<std::string> gens;
  std::string compare;
  auto* factorize = app.add_subcommand("factorize", "print the j/h coset factorization table");
  factorize->add_option("--group", group, "S3, Z4, symmetric:n, cyclic:n or a document path");
  factorize->add_option("--subgroup", gens, "generator labels, comma separated")->delimiter(';');
  factorize->add_option("--compare", compare, "claimed rows to cross-check");
  add_output(factorize);

  std::string action;
  auto* globalize = app.add_subcommand("globalize", "build and check the enveloping action");
  globalize->add_option("file", file)->required();
  globalize->add_option("--action", action, "action name inside a workbench");
  add_output(globalize);

  std::size_t size = 1;
  bool envelopes = false;
  auto* enumerate = app.add_subcommand("enumerate", "list every partial action on a small set");
  enumerate->add_option("--group", group, "S3, Z4, symmetric:n, cyclic:n or a document path");
  enumerate->add_option("--size", size, "number of points")->required();
  enumerate->add_flag("--envelopes", envelopes, "also print envelope sizes");
  add_output(enumerate);

  std::string section = "all";
  auto* example = app.add_subcommand("example-s3", "reproduce the S3 two-way quiver example");
  example->add_option("--section", section)->check(CLI::IsMember({"table", "beta", "all"}));
  add_output(example);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kInputError;
  }

  // "(12),(13)" style lists: split on commas outside parentheses.
  std::vector<std::string> labels;
  for (const auto& arg : gens) {
    int depth = 0;
    std::string cur;
    for (char c : arg) {
      if (c == ',' && depth == 0) {
        if (!cur.empty()) labels.push_back(cur);
        cur.clear();
        continue;
      }
      depth += c == '(' ? 1 : c == ')' ? -1 : 0;
      cur += c;
    }
    if (!cur.empty()) labels.push_back(cur);
  }

  if (*verify) return cmd_verify(file, out, std::cout, std::cerr);
  if (*factorize) return cmd_factorize(group, labels, compare, out, std::cout, std::cerr);
  if (*globalize) return cmd_globalize(file, action, out, std::cout, std::cerr);
  if (*enumerate) return cmd_enumerate(group, size, envelopes, out, std::cout, std::cerr);
  return cmd_example_s3(section, out, std::cout, std::cerr);
}
