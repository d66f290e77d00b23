#include "pact/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "pact/error.hpp"

namespace pact::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(Errc::MalformedInput, what); }

std::optional<std::size_t> to_size(std::string_view s) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

const json& require(const json& doc, const char* key, const std::string& where) {
  if (!doc.is_object() || !doc.contains(key)) bad(where + " needs \"" + key + "\"");
  return doc.at(key);
}

const json* optional_member(const json& doc, const char* key) {
  auto it = doc.find(key);
  return it == doc.end() ? nullptr : &*it;
}

std::size_t position(const json& v, std::size_t n, const std::string& where) {
  if (!v.is_number_unsigned() || v.get<std::size_t>() >= n)
    bad(where + ": block position must be an integer in 0.." + std::to_string(n - 1));
  return v.get<std::size_t>();
}

std::size_t position_key(const std::string& key, std::size_t n, const std::string& where) {
  auto v = to_size(key);
  if (!v || *v >= n) bad(where + ": \"" + key + "\" is not a block position");
  return *v;
}

std::vector<std::size_t> sorted_unique(std::vector<std::size_t> v, const std::string& where) {
  std::sort(v.begin(), v.end());
  if (std::adjacent_find(v.begin(), v.end()) != v.end()) bad(where + " repeats an entry");
  return v;
}

}  // namespace

bool operator==(const Workbench& a, const Workbench& b) {
  auto same_ptrs = [](const auto& x, const auto& y) {
    return std::equal(x.begin(), x.end(), y.begin(), y.end(), [](const auto& p, const auto& q) {
      return p.first == q.first && *p.second == *q.second;
    });
  };
  return a.version == b.version && same_ptrs(a.groups, b.groups) &&
         same_ptrs(a.algebras, b.algebras) && a.actions == b.actions;
}

json parse_json(std::string_view text) {
  std::vector<std::set<std::string>> keys;
  auto callback = [&](int, json::parse_event_t event, json& parsed) {
    switch (event) {
      case json::parse_event_t::object_start: keys.emplace_back(); break;
      case json::parse_event_t::object_end: keys.pop_back(); break;
      case json::parse_event_t::key: {
        const auto& k = parsed.get_ref<const std::string&>();
        if (!keys.back().insert(k).second)
          throw Error(Errc::ParseError, "duplicate key \"" + k + "\"");
        break;
      }
      default: break;
    }
    return true;
  };
  try {
    return json::parse(text.begin(), text.end(), callback);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string detail = e.what();
    if (auto colon = detail.rfind(": "); colon != std::string::npos) detail = detail.substr(colon + 2);
    throw Error(Errc::ParseError,
                "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + detail);
  }
}

std::optional<GroupPtr> builtin_group(std::string_view spec) {
  auto number_after = [&](std::string_view prefix) -> std::optional<std::size_t> {
    if (!spec.starts_with(prefix)) return std::nullopt;
    return to_size(spec.substr(prefix.size()));
  };
  if (spec == "trivial") return trivial_group();
  if (auto n = number_after("symmetric:")) return symmetric_group(*n);
  if (auto n = number_after("cyclic:")) return cyclic_group(*n);
  if (auto n = number_after("S")) return symmetric_group(*n);
  if (auto n = number_after("Z")) return cyclic_group(*n);
  return std::nullopt;
}

GroupPtr parse_group(const json& doc, const Workbench& context) {
  if (doc.is_string()) {
    const auto& name = doc.get_ref<const std::string&>();
    if (auto it = context.groups.find(name); it != context.groups.end()) return it->second;
    if (auto g = builtin_group(name)) return *g;
    bad("unknown group \"" + name + "\"");
  }
  const auto& kind = require(doc, "kind", "group").get<std::string>();
  if (kind == "symmetric") return symmetric_group(require(doc, "n", "group").get<std::size_t>());
  if (kind == "cyclic") return cyclic_group(require(doc, "n", "group").get<std::size_t>());
  if (kind != "cayley") bad("unknown group kind \"" + kind + "\"");
  auto table = require(doc, "table", "group").get<std::vector<std::vector<Element>>>();
  std::vector<std::string> names;
  if (auto* n = optional_member(doc, "names")) names = n->get<std::vector<std::string>>();
  return make_group(table, std::move(names));
}

AlgebraPtr parse_algebra(const json& doc, const Workbench& context) {
  if (doc.is_string()) {
    const auto& name = doc.get_ref<const std::string&>();
    if (auto it = context.algebras.find(name); it != context.algebras.end()) return it->second;
    bad("unknown algebra \"" + name + "\"");
  }
  const json& list = require(doc, "blocks", "algebra");
  if (!list.is_array()) bad("algebra blocks must be a list");
  std::vector<Block> blocks;
  for (const json& b : list) {
    Block block{require(b, "class", "block").get<std::string>(), trivial_group()};
    if (auto* aut = optional_member(b, "aut")) block.aut = parse_group(*aut, context);
    blocks.push_back(std::move(block));
  }
  return BlockAlgebra::make(std::move(blocks));
}

namespace {

SetPartialAction parse_set_action(const json& doc, GroupPtr group) {
  const FiniteGroup& g = *group;
  SetPartialAction out{group, require(doc, "carrier", "set action").get<std::vector<std::string>>(),
                       {}, {}};
  const std::size_t n = out.size();
  std::map<std::string, Point> index;
  for (Point x = 0; x < n; ++x)
    if (!index.emplace(out.carrier[x], x).second) bad("carrier repeats \"" + out.carrier[x] + "\"");
  auto point = [&](const std::string& label) {
    auto it = index.find(label);
    if (it == index.end()) throw Error(Errc::UnknownElement, "\"" + label + "\" is not in the carrier");
    return it->second;
  };

  std::vector<std::optional<PointSet>> domains(g.order());
  std::vector<std::optional<PartialMap>> maps(g.order());
  if (auto* d = optional_member(doc, "domains"))
    for (const auto& [label, pts] : d->items()) {
      PointSet s;
      for (const auto& p : pts.get<std::vector<std::string>>()) s.push_back(point(p));
      domains[g.at(label)] = sorted_unique(std::move(s), "D_" + label);
    }
  if (auto* m = optional_member(doc, "maps"))
    for (const auto& [label, pairs] : m->items()) {
      PartialMap f(n);
      for (const auto& [x, y] : pairs.items()) f.set(point(x), point(y.get<std::string>()));
      maps[g.at(label)] = std::move(f);
    }

  for (Element a = 0; a < g.order(); ++a) {
    if (maps[a]) {
      out.domains.push_back(domains[a] ? *domains[a] : maps[a]->image());
      out.maps.push_back(*maps[a]);
    } else if (a == g.identity()) {
      PointSet all(n);
      for (Point x = 0; x < n; ++x) all[x] = x;
      out.domains.push_back(domains[a] ? *domains[a] : all);
      out.maps.push_back(PartialMap::identity_on(n, out.domains.back()));
    } else {
      if (domains[a] && !domains[a]->empty()) bad("D_" + g.name(a) + " is nonempty but has no map");
      out.domains.emplace_back();
      out.maps.emplace_back(n);
    }
  }
  check_well_formed(out);
  return out;
}

AlgebraPartialAction parse_algebra_action(const json& doc, GroupPtr group, const Workbench& context) {
  const FiniteGroup& g = *group;
  AlgebraPtr algebra = parse_algebra(doc.at("algebra"), context);
  const std::size_t n = algebra->size();
  AlgebraPartialAction out{group, algebra, {}, {}};

  std::vector<std::optional<std::vector<std::size_t>>> domains(g.order());
  std::vector<std::optional<std::map<std::size_t, std::pair<std::size_t, Element>>>> maps(g.order());
  if (auto* d = optional_member(doc, "domains"))
    for (const auto& [label, pts] : d->items()) {
      std::vector<std::size_t> s;
      for (const json& p : pts) s.push_back(position(p, n, "S_" + label));
      domains[g.at(label)] = sorted_unique(std::move(s), "S_" + label);
    }
  if (auto* m = optional_member(doc, "maps"))
    for (const auto& [label, entries] : m->items()) {
      const std::string where = "alpha_" + label;
      auto& f = maps[g.at(label)].emplace();
      for (const auto& [key, v] : entries.items()) {
        const std::size_t p = position_key(key, n, where);
        const FiniteGroup& aut = algebra->aut(p);
        if (v.is_number()) {
          f[p] = {position(v, n, where), aut.identity()};
          continue;
        }
        Element tw = aut.identity();
        if (auto* t = optional_member(v, "twist")) tw = aut.at(t->get<std::string>());
        f[p] = {position(require(v, "to", where), n, where), tw};
      }
    }

  for (Element a = 0; a < g.order(); ++a) {
    if (maps[a]) {
      WreathMap w{{algebra, {}}, {algebra, {}}, {}, {}};
      for (const auto& [p, img] : *maps[a]) {
        w.source.support.push_back(p);
        w.to.push_back(img.first);
        w.twist.push_back(img.second);
      }
      w.target.support = domains[a] ? *domains[a] : sorted_unique(w.to, "alpha_" + g.name(a));
      out.domains.push_back(w.target);
      out.maps.push_back(std::move(w));
    } else if (a == g.identity()) {
      BlockIdeal d = domains[a] ? BlockIdeal{algebra, *domains[a]} : full_ideal(algebra);
      out.domains.push_back(d);
      out.maps.push_back(identity_map(d));
    } else {
      if (domains[a] && !domains[a]->empty()) bad("S_" + g.name(a) + " is nonempty but has no map");
      out.domains.push_back(zero_ideal(algebra));
      out.maps.push_back(identity_map(zero_ideal(algebra)));
    }
  }
  check_well_formed(out);
  return out;
}

}  // namespace

Action parse_action(const json& doc, const Workbench& context) {
  if (!doc.is_object()) bad("an action must be an object");
  GroupPtr group = parse_group(require(doc, "group", "action"), context);
  std::string kind = doc.contains("algebra") ? "algebra" : "set";
  if (auto* k = optional_member(doc, "kind")) kind = k->get<std::string>();
  if (kind == "set") return parse_set_action(doc, group);
  if (kind == "algebra") {
    require(doc, "algebra", "algebra action");
    return parse_algebra_action(doc, group, context);
  }
  bad("unknown action kind \"" + kind + "\"");
}

Workbench parse_workbench(std::string_view text) {
  const json doc = parse_json(text);
  Workbench wb;
  try {
    if (!doc.is_object()) bad("document must be a JSON object");
    if (!doc.contains("version") && doc.contains("group")) {
      wb.actions.emplace("main", parse_action(doc, wb));
      return wb;
    }
    wb.version = require(doc, "version", "workbench").get<std::string>();
    if (wb.version != kFormatVersion) bad("unsupported version \"" + wb.version + "\"");
    for (const char* key : {"groups", "algebras", "actions"})
      if (auto* s = optional_member(doc, key); s && !s->is_object())
        bad(std::string("\"") + key + "\" must be an object");
    if (auto* s = optional_member(doc, "groups"))
      for (const auto& [name, g] : s->items()) {
        if (builtin_group(name)) bad("group name \"" + name + "\" shadows a built-in group");
        wb.groups.emplace(name, parse_group(g, wb));
      }
    if (auto* s = optional_member(doc, "algebras"))
      for (const auto& [name, a] : s->items()) wb.algebras.emplace(name, parse_algebra(a, wb));
    if (auto* s = optional_member(doc, "actions"))
      for (const auto& [name, a] : s->items()) wb.actions.emplace(name, parse_action(a, wb));
  } catch (const json::exception& e) {
    bad(std::string("unexpected value: ") + e.what());
  }
  return wb;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Workbench read_workbench(const std::string& path) { return parse_workbench(read_file(path)); }

json group_to_json(const FiniteGroup& g) {
  switch (g.origin().kind) {
    case GroupOrigin::Kind::Symmetric: return {{"kind", "symmetric"}, {"n", g.origin().n}};
    case GroupOrigin::Kind::Cyclic: return {{"kind", "cyclic"}, {"n", g.origin().n}};
    case GroupOrigin::Kind::Cayley: break;
  }
  return {{"kind", "cayley"}, {"table", g.table()}, {"names", g.names()}};
}

json algebra_to_json(const BlockAlgebra& a) {
  json blocks = json::array();
  for (const Block& b : a.blocks()) {
    json entry = {{"class", b.iso_class}};
    if (!(*b.aut == *trivial_group())) entry["aut"] = group_to_json(*b.aut);
    blocks.push_back(std::move(entry));
  }
  return {{"blocks", std::move(blocks)}};
}

json action_to_json(const Action& action) {
  if (const auto* s = std::get_if<SetPartialAction>(&action)) {
    const FiniteGroup& g = *s->group;
    json domains = json::object(), maps = json::object();
    for (Element a = 0; a < g.order(); ++a) {
      json d = json::array();
      for (Point x : s->domains[a]) d.push_back(s->carrier[x]);
      domains[g.name(a)] = std::move(d);
      json m = json::object();
      for (Point x : s->maps[a].domain()) m[s->carrier[x]] = s->carrier[s->maps[a](x)];
      if (!m.empty()) maps[g.name(a)] = std::move(m);
    }
    return {{"kind", "set"}, {"group", group_to_json(g)}, {"carrier", s->carrier},
            {"domains", std::move(domains)}, {"maps", std::move(maps)}};
  }
  const auto& p = std::get<AlgebraPartialAction>(action);
  const FiniteGroup& g = *p.group;
  json domains = json::object(), maps = json::object();
  for (Element a = 0; a < g.order(); ++a) {
    domains[g.name(a)] = p.domains[a].support;
    const WreathMap& w = p.maps[a];
    json m = json::object();
    for (std::size_t s = 0; s < w.to.size(); ++s) {
      const std::size_t pos = w.source.support[s];
      m[std::to_string(pos)] = {{"to", w.to[s]}, {"twist", p.algebra->aut(pos).name(w.twist[s])}};
    }
    if (!m.empty()) maps[g.name(a)] = std::move(m);
  }
  return {{"kind", "algebra"}, {"group", group_to_json(g)}, {"algebra", algebra_to_json(*p.algebra)},
          {"domains", std::move(domains)}, {"maps", std::move(maps)}};
}

json workbench_to_json(const Workbench& wb) {
  json doc = {{"version", wb.version}, {"groups", json::object()}, {"algebras", json::object()},
              {"actions", json::object()}};
  for (const auto& [name, g] : wb.groups) doc["groups"][name] = group_to_json(*g);
  for (const auto& [name, a] : wb.algebras) doc["algebras"][name] = algebra_to_json(*a);
  for (const auto& [name, a] : wb.actions) doc["actions"][name] = action_to_json(a);
  return doc;
}

std::string serialize(const Workbench& wb) { return workbench_to_json(wb).dump(2) + "\n"; }

json report_to_json(const VerificationReport& report) {
  json items = json::array();
  for (const CheckItem& i : report.items()) {
    json item = {{"name", i.name}, {"pass", i.pass}};
    if (!i.pass) item["witness"] = i.witness;
    items.push_back(std::move(item));
  }
  return {{"pass", report.all_pass()}, {"items", std::move(items)}};
}

namespace {

json checks_json(const VerificationReport& report) {
  json checks = json::object();
  for (const CheckItem& i : report.items()) checks[i.name] = i.pass;
  return checks;
}

json wreath_json(const WreathMap& w, const BlockAlgebra& algebra) {
  json out = json::array();
  for (std::size_t s = 0; s < w.to.size(); ++s)
    out.push_back({{"to", w.to[s]}, {"twist", algebra.aut(w.source.support[s]).name(w.twist[s])}});
  return out;
}

}  // namespace

json globalization_to_json(const AlgebraPartialAction& action, const GlobalizationResult& result) {
  const FiniteGroup& g = *action.group;
  json blocks = json::array();
  for (std::size_t i = 0; i < result.provenance.size(); ++i)
    blocks.push_back({{"index", i},
                      {"g", g.name(result.provenance[i].g)},
                      {"position", result.provenance[i].position},
                      {"class", result.envelope->block(i).iso_class}});
  json beta = json::object();
  for (Element a = 0; a < g.order(); ++a) beta[g.name(a)] = wreath_json(result.action[a], *result.envelope);
  return {{"pipeline", result.pipeline},
          {"envelope_blocks", std::move(blocks)},
          {"action", std::move(beta)},
          {"embedding", wreath_json(result.embedding, *action.algebra)},
          {"checks", checks_json(result.checks)},
          {"pass", result.checks.all_pass()}};
}

json set_globalization_to_json(const SetPartialAction& action, const SetGlobalization& glob,
                               const VerificationReport& checks) {
  const FiniteGroup& g = *action.group;
  json points = json::array();
  for (std::size_t i = 0; i < glob.orbit_witness.size(); ++i)
    points.push_back({{"index", i},
                      {"label", glob.envelope.carrier[i]},
                      {"g", g.name(glob.orbit_witness[i].first)},
                      {"point", action.carrier[glob.orbit_witness[i].second]}});
  json beta = json::object();
  for (Element a = 0; a < g.order(); ++a) beta[g.name(a)] = glob.envelope.perms[a];
  return {{"pipeline", "set"},
          {"envelope_points", std::move(points)},
          {"action", std::move(beta)},
          {"embedding", glob.embedding},
          {"checks", checks_json(checks)},
          {"pass", checks.all_pass()}};
}

}  // namespace pact::io
