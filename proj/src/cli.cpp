#include "pact/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "pact/algebra_action.hpp"
#include "pact/error.hpp"
#include "pact/io.hpp"
#include "pact/s3_example.hpp"
#include "pact/set_action.hpp"

namespace pact::cli {

using io::json;

namespace {

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == Errc::InternalInconsistency ? kFail : kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

void emit(const Output& out, std::ostream& os, const std::string& text) {
  if (out.path.empty()) {
    os << text;
    return;
  }
  std::ofstream file(out.path, std::ios::binary);
  if (!file) throw Error(Errc::MalformedInput, "cannot write " + out.path);
  file << text;
}

bool want_json(const Output& out) {
  if (out.format != "text" && out.format != "json")
    throw Error(Errc::MalformedInput, "unknown format \"" + out.format + "\"");
  return out.format == "json";
}

void render_report(std::ostream& s, const VerificationReport& r) {
  for (const CheckItem& i : r.items()) {
    s << "  " << (i.pass ? "PASS" : "FAIL") << "  " << i.name;
    if (!i.pass) s << "  witness: " << i.witness;
    s << "\n";
  }
}

std::string verdict(bool pass) { return std::string("verdict: ") + (pass ? "PASS" : "FAIL") + "\n"; }

GroupPtr resolve_group(const std::string& spec) {
  if (auto g = io::builtin_group(spec)) return *g;
  const json doc = io::parse_json(io::read_file(spec));
  if (doc.is_object() && doc.contains("kind")) return io::parse_group(doc);
  const io::Workbench wb = io::parse_workbench(doc.dump());
  if (wb.groups.size() != 1)
    throw Error(Errc::MalformedInput, spec + " must define exactly one group");
  return wb.groups.begin()->second;
}

std::string describe_wreath(const WreathMap& w, const BlockAlgebra& algebra) {
  std::string s;
  for (std::size_t k = 0; k < w.to.size(); ++k) {
    if (k) s += ", ";
    const std::size_t p = w.source.support[k];
    s += std::to_string(p) + "->" + std::to_string(w.to[k]);
    const FiniteGroup& aut = algebra.aut(p);
    if (w.twist[k] != aut.identity()) s += " " + aut.name(w.twist[k]);
  }
  return s.empty() ? "{}" : s;
}

std::string table_label(const std::string& g, const std::string& gi) { return "(" + g + "," + gi + ")"; }

}  // namespace

std::vector<ClaimedRow> read_claimed_rows(const std::string& path) {
  const json doc = io::parse_json(io::read_file(path));
  if (!doc.is_object() || !doc.contains("rows") || !doc["rows"].is_array())
    throw Error(Errc::MalformedInput, path + " needs a \"rows\" list");
  std::vector<ClaimedRow> rows;
  try {
    for (const json& r : doc["rows"])
      rows.push_back({r.at("g").get<std::string>(), r.at("gi").get<std::string>(),
                      r.at("j").get<std::string>(), r.at("h").get<std::string>()});
  } catch (const json::exception& e) {
    throw Error(Errc::MalformedInput, std::string("bad claimed row: ") + e.what());
  }
  return rows;
}

std::string render_table(const CosetFactorization& cf, const DiscrepancyReport* report) {
  const FiniteGroup& g = cf.group();
  const auto& reps = cf.transversal().reps();
  std::map<std::pair<Element, std::size_t>, const RowComparison*> status;
  if (report)
    for (const RowComparison& r : report->rows) status.try_emplace({r.g, r.gi}, &r);

  std::vector<std::array<std::string, 5>> lines;
  lines.push_back({"(g,g_i)", "j", "h", report ? "status" : "", report ? "note" : ""});
  for (Element a = 0; a < g.order(); ++a)
    for (std::size_t i = 0; i < reps.size(); ++i) {
      std::array<std::string, 5> line{table_label(g.name(a), g.name(reps[i])), g.name(cf.j(a, i)),
                                      g.name(cf.h(a, i)), "", ""};
      if (auto it = status.find({a, i}); it != status.end()) {
        line[3] = std::string(to_string(it->second->status));
        line[4] = it->second->note;
      } else if (report) {
        line[3] = std::string(to_string(RowStatus::Missing));
      }
      lines.push_back(std::move(line));
    }
  std::array<std::size_t, 5> width{};
  for (const auto& l : lines)
    for (std::size_t c = 0; c < 5; ++c) width[c] = std::max(width[c], l[c].size());
  std::ostringstream s;
  for (const auto& l : lines) {
    std::string row;
    for (std::size_t c = 0; c < (report ? 5u : 3u); ++c) {
      if (c) row += "  ";
      row += l[c];
      if (c + 1 < (report ? 5u : 3u)) row += std::string(width[c] - l[c].size(), ' ');
    }
    while (!row.empty() && row.back() == ' ') row.pop_back();
    s << row << "\n";
  }
  if (report)
    s << report->matches << " MATCH, " << report->mismatches << " MISMATCH, " << report->missing
      << " MISSING\n";
  return s.str();
}

namespace {

json table_json(const CosetFactorization& cf, const DiscrepancyReport* report) {
  const FiniteGroup& g = cf.group();
  const auto& reps = cf.transversal().reps();
  json rows = json::array();
  for (Element a = 0; a < g.order(); ++a)
    for (std::size_t i = 0; i < reps.size(); ++i)
      rows.push_back({{"g", g.name(a)}, {"gi", g.name(reps[i])}, {"j", g.name(cf.j(a, i))},
                      {"h", g.name(cf.h(a, i))}});
  json out = {{"transversal", json::array()}, {"subgroup", json::array()}, {"rows", std::move(rows)}};
  for (Element r : reps) out["transversal"].push_back(g.name(r));
  for (Element m : cf.transversal().subgroup().members()) out["subgroup"].push_back(g.name(m));
  if (report) {
    json cmp = json::array();
    for (const RowComparison& r : report->rows) {
      json row = {{"g", g.name(r.g)}, {"gi", g.name(reps[r.gi])}, {"j", g.name(r.j)},
                  {"h", g.name(r.h)}, {"status", to_string(r.status)}, {"note", r.note}};
      if (r.claimed) row["claimed"] = {{"j", r.claimed->j}, {"h", r.claimed->h}};
      cmp.push_back(std::move(row));
    }
    out["comparison"] = std::move(cmp);
    out["summary"] = {{"match", report->matches}, {"mismatch", report->mismatches},
                      {"missing", report->missing}};
  }
  return out;
}

}  // namespace

int cmd_verify(const std::string& file, const Output& out, std::ostream& os, std::ostream& err) {
  return guarded(err, [&] {
    const bool as_json = want_json(out);
    const io::Workbench wb = io::read_workbench(file);
    if (wb.actions.empty()) throw Error(Errc::MalformedInput, file + " contains no action");
    bool all = true;
    json doc = {{"actions", json::object()}};
    std::ostringstream text;
    for (const auto& [name, action] : wb.actions) {
      VerificationReport r;
      if (const auto* s = std::get_if<SetPartialAction>(&action)) {
        r = verify_partial_action(*s);
        text << "action " << name << ": set partial action on " << s->size() << " points\n";
      } else {
        const auto& a = std::get<AlgebraPartialAction>(action);
        r = verify_algebra_partial_action(a);
        text << "action " << name << ": partial action on " << a.algebra->size() << " blocks\n";
      }
      render_report(text, r);
      all = all && r.all_pass();
      doc["actions"][name] = io::report_to_json(r);
    }
    doc["pass"] = all;
    text << verdict(all);
    emit(out, os, as_json ? doc.dump(2) + "\n" : text.str());
    return all ? kPass : kFail;
  });
}

int cmd_factorize(const std::string& group, const std::vector<std::string>& subgroup,
                  const std::string& compare, const Output& out, std::ostream& os, std::ostream& err) {
  return guarded(err, [&] {
    const bool as_json = want_json(out);
    const GroupPtr g = resolve_group(group);
    std::vector<Element> gens;
    for (const auto& label : subgroup) gens.push_back(g->at(label));
    const CosetFactorization cf = coset_factorize(left_transversal(subgroup_closure(g, gens)));
    std::optional<DiscrepancyReport> report;
    if (!compare.empty()) {
      const auto claimed = read_claimed_rows(compare);
      report = cross_validate_table(cf, claimed);
    }
    const DiscrepancyReport* rp = report ? &*report : nullptr;
    emit(out, os, as_json ? table_json(cf, rp).dump(2) + "\n" : render_table(cf, rp));
    return kPass;
  });
}

int cmd_globalize(const std::string& file, const std::string& action, const Output& out,
                  std::ostream& os, std::ostream& err) {
  return guarded(err, [&] {
    const bool as_json = want_json(out);
    const io::Workbench wb = io::read_workbench(file);
    const io::Action* chosen = nullptr;
    if (action.empty()) {
      if (wb.actions.size() != 1)
        throw Error(Errc::MalformedInput, "pick one of the document's actions with --action");
      chosen = &wb.actions.begin()->second;
    } else {
      auto it = wb.actions.find(action);
      if (it == wb.actions.end()) throw Error(Errc::MalformedInput, "no action named " + action);
      chosen = &it->second;
    }

    std::ostringstream text;
    json doc;
    bool pass = false;
    if (const auto* s = std::get_if<SetPartialAction>(chosen)) {
      const VerificationReport valid = verify_partial_action(*s);
      if (!valid.all_pass()) {
        text << "input is not a partial action\n";
        render_report(text, valid);
        doc = {{"input", io::report_to_json(valid)}, {"pass", false}};
      } else {
        const SetGlobalization glob = globalize_set(*s);
        const VerificationReport checks = verify_set_globalization(*s, glob);
        pass = checks.all_pass();
        doc = io::set_globalization_to_json(*s, glob, checks);
        const FiniteGroup& g = *s->group;
        text << "pipeline: set\nenvelope: " << glob.envelope.size() << " points\n";
        for (std::size_t i = 0; i < glob.envelope.size(); ++i) text << "  [" << i << "] " << glob.envelope.carrier[i] << "\n";
        text << "action:\n";
        for (Element a = 0; a < g.order(); ++a) {
          text << "  beta_" << g.name(a) << ":";
          for (Point p : glob.envelope.perms[a]) text << " " << p;
          text << "\n";
        }
        text << "checks:\n";
        render_report(text, checks);
      }
    } else {
      const auto& pa = std::get<AlgebraPartialAction>(*chosen);
      const VerificationReport valid = verify_algebra_partial_action(pa);
      if (!valid.all_pass()) {
        text << "input is not a partial action\n";
        render_report(text, valid);
        doc = {{"input", io::report_to_json(valid)}, {"pass", false}};
      } else {
        const GlobalizationResult result = globalize(pa);
        pass = result.checks.all_pass();
        doc = io::globalization_to_json(pa, result);
        const FiniteGroup& g = *pa.group;
        text << "pipeline: " << result.pipeline << "\nenvelope: " << result.envelope->size()
             << " blocks\n";
        for (std::size_t i = 0; i < result.provenance.size(); ++i)
          text << "  [" << i << "] beta_" << g.name(result.provenance[i].g) << "(e"
               << result.provenance[i].position + 1 << ")  class " << result.envelope->block(i).iso_class
               << "\n";
        text << "action:\n";
        for (Element a = 0; a < g.order(); ++a)
          text << "  beta_" << g.name(a) << ": " << describe_wreath(result.action[a], *result.envelope)
               << "\n";
        text << "embedding: " << describe_wreath(result.embedding, *pa.algebra) << "\nchecks:\n";
        render_report(text, result.checks);
      }
    }
    text << verdict(pass);
    emit(out, os, as_json ? doc.dump(2) + "\n" : text.str());
    return pass ? kPass : kFail;
  });
}

int cmd_enumerate(const std::string& group, std::size_t size, bool envelopes, const Output& out,
                  std::ostream& os, std::ostream& err) {
  return guarded(err, [&] {
    const bool as_json = want_json(out);
    const GroupPtr g = resolve_group(group);
    const auto actions = enumerate_partial_actions(g, size);
    std::ostringstream text;
    json list = json::array();
    text << actions.size() << " partial actions\n";
    for (std::size_t k = 0; k < actions.size(); ++k) {
      json entry = {{"index", k}, {"action", describe(actions[k])}};
      text << "#" << k << "  " << describe(actions[k]);
      if (envelopes) {
        const std::size_t m = globalize_set(actions[k]).envelope.size();
        entry["envelope"] = m;
        text << "  envelope " << m;
      }
      text << "\n";
      list.push_back(std::move(entry));
    }
    const json doc = {{"count", actions.size()}, {"size", size}, {"actions", std::move(list)}};
    emit(out, os, as_json ? doc.dump(2) + "\n" : text.str());
    return kPass;
  });
}

int cmd_example_s3(const std::string& section, const Output& out, std::ostream& os, std::ostream& err) {
  return guarded(err, [&] {
    const bool as_json = want_json(out);
    if (section != "table" && section != "beta" && section != "all")
      throw Error(Errc::MalformedInput, "section must be table, beta or all");
    const s3::Example ex = s3::build();
    const auto beta = s3::check_beta(ex);
    const bool pass = std::all_of(beta.begin(), beta.end(), [](const s3::BetaCheck& b) { return b.pass; });

    std::ostringstream text;
    json doc = json::object();
    if (section != "beta") {
      const auto rows = s3::reference_rows();
      const DiscrepancyReport report = cross_validate_table(ex.factorization, rows);
      text << "j/h table for S3 / <(12)>, compared with the " << s3::kReferenceSource << "\n";
      text << render_table(ex.factorization, &report);
      doc["table"] = table_json(ex.factorization, &report);
      doc["table"]["source"] = s3::kReferenceSource;
    }
    if (section != "table") {
      if (section == "all") text << "\n";
      text << "beta on Lambda_1 x Lambda_(13) x Lambda_(23):\n";
      json list = json::array();
      for (const auto& b : beta) {
        text << "  " << (b.pass ? "PASS" : "FAIL") << "  beta_" << b.g << "(x,y,z) = " << b.expected;
        if (!b.pass) text << "  computed " << b.computed;
        text << "\n";
        list.push_back({{"g", b.g}, {"expected", b.expected}, {"computed", b.computed}, {"pass", b.pass}});
      }
      text << "enveloping checks:\n";
      render_report(text, ex.globalization.checks);
      doc["beta"] = std::move(list);
      doc["checks"] = io::report_to_json(ex.globalization.checks);
    }
    doc["pass"] = pass;
    text << verdict(pass);
    emit(out, os, as_json ? doc.dump(2) + "\n" : text.str());
    return pass ? kPass : kFail;
  });
}

}  // namespace pact::cli
