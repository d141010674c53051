// nilcover: command-line front end for the nilpotent cover library.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <nilcover/ambient.hpp>
#include <nilcover/cover.hpp>
#include <nilcover/gamma_a8.hpp>
#include <nilcover/graph.hpp>
#include <nilcover/partitions.hpp>
#include <nilcover/sigma.hpp>

namespace {

using json = nlohmann::json;  // std::map objects, so keys come out sorted
using namespace nilcover;

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kBudget = 3 };

struct Options {
  bool json_out = false;
  bool csv = false;
  bool timing = false;
  std::optional<double> budget;
  unsigned threads = 1;
  std::uint64_t seed = 0;
  std::string group = "sym";
};

std::string big(const BigInt& x) { return x.str(); }

json parts_json(const DistinctPartition& t) { return json(t.parts()); }

// Certificate under construction. Emitted even when a budget runs out.
struct Certificate {
  json doc = json::object();
  std::size_t failures = 0;
  std::size_t inexact = 0;

  Certificate(const std::string& command, json inputs)
  {
    doc["command"] = command;
    doc["inputs"] = std::move(inputs);
    doc["verdicts"] = json::object();
    doc["payload"] = json::object();
  }

  json& payload() { return doc["payload"]; }

  void expect_eq(const std::string& name, const json& value, const json& expected)
  {
    record(name, value == expected, value, expected);
  }

  void expect(const std::string& name, bool ok, const json& value, const std::string& condition)
  {
    record(name, ok, value, condition);
  }

  void mark_inexact(const std::string& name, const json& value)
  {
    doc["verdicts"][name] = {{"status", "inexact"}, {"value", value}};
    ++inexact;
  }

private:
  void record(const std::string& name, bool ok, const json& value, const json& expected)
  {
    doc["verdicts"][name] = {{"status", ok ? "pass" : "fail"}, {"value", value}, {"expected", expected}};
    failures += !ok;
  }
};

ResourceLimits limits_for(const Options& o)
{
  ResourceLimits l = o.budget ? ResourceLimits::with_budget(*o.budget) : ResourceLimits{};
  l.threads = o.threads;
  return l;
}

Ambient ambient_for(const Options& o, unsigned n)
{
  if (o.group == "sym") return Ambient::sym(n);
  return Ambient::alt(n);
}

std::string scalar_text(const json& v)
{
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + scalar_text(v[i]);
    return s;
  }
  return v.dump();
}

void print_certificate_text(const json& doc, std::ostream& os)
{
  os << doc["command"].get<std::string>() << " (" << doc["status"].get<std::string>() << ")\n";
  if (doc.contains("error")) os << "error: " << doc["error"].get<std::string>() << '\n';
  for (const auto& [name, v] : doc["verdicts"].items()) {
    os << "  [" << v["status"].get<std::string>() << "] " << name << " = " << scalar_text(v["value"]);
    if (v.contains("expected")) os << "  (expected " << scalar_text(v["expected"]) << ")";
    os << '\n';
  }
  for (const auto& [name, v] : doc["payload"].items()) {
    if (v.is_object() || (v.is_array() && !v.empty() && (v[0].is_object() || v[0].is_array()))) {
      os << name << ":\n";
      if (v.is_object())
        for (const auto& [k, x] : v.items()) os << "  " << k << ": " << scalar_text(x) << '\n';
      else
        for (const auto& x : v) os << "  " << (x.is_object() ? x.dump() : scalar_text(x)) << '\n';
    } else {
      os << name << ": " << scalar_text(v) << '\n';
    }
  }
}

int emit(Certificate& cert, const Options& o, bool budget_hit, double seconds)
{
  cert.doc["status"] = budget_hit ? "budget_exceeded" : cert.failures ? "fail" : cert.inexact ? "inexact" : "pass";
  // thread count and runtime stay out unless asked for, so certificates
  // compare byte for byte across machines
  cert.doc["resources"] = {{"seed", o.seed}, {"budget_exceeded", budget_hit}};
  if (o.budget) cert.doc["resources"]["budget_ms"] = static_cast<std::int64_t>(*o.budget * 1000);
  if (o.timing) {
    cert.doc["resources"]["runtime_ms"] = static_cast<std::int64_t>(seconds * 1000);
    cert.doc["resources"]["threads"] = o.threads;
  }
  if (o.json_out) std::cout << cert.doc.dump(2) << '\n';
  else print_certificate_text(cert.doc, std::cout);
  if (budget_hit) return kBudget;
  return cert.failures ? kFail : kPass;
}

// ---------------------------------------------------------------------------

void cmd_dp(Certificate& c, unsigned n)
{
  auto dps = enumerate_dp(n);
  json rows = json::array();
  for (const auto& t : dps) rows.push_back(parts_json(t));
  c.payload()["partitions"] = rows;
  c.expect_eq("count_equals_odd_partitions", std::to_string(dps.size()), big(count_odd_partitions(n)));
}

json sigma_rows(const SigmaReport& r)
{
  json rows = json::array();
  for (const auto& row : r.rows) rows.push_back({{"partition", parts_json(row.parts)}, {"class_size", big(row.class_size)}});
  return rows;
}

void cmd_sigma(Certificate& c, unsigned n)
{
  auto r = sigma_sn(n);
  c.payload()["n"] = n;
  c.payload()["rows"] = sigma_rows(r);
  c.payload()["total"] = big(r.total);
  c.payload()["gamma"] = r.gamma;
  BigInt sum = 0;
  for (const auto& row : r.rows) sum += row.class_size;
  c.expect_eq("total_is_row_sum", big(r.total), big(sum));
}

void cmd_table(Certificate& c, unsigned max_n)
{
  json table = json::array();
  for (const auto& r : sigma_table(max_n))
    table.push_back({{"n", r.n}, {"rows", sigma_rows(r)}, {"total", big(r.total)}, {"gamma", r.gamma}});
  c.payload()["table"] = table;
}

void cmd_amalgamate(Certificate& c, const std::string& text)
{
  CycleType r = CycleType::parse(text);
  auto a = amalgamate_with_history(r);
  c.payload()["input"] = r.parts();
  json passes = json::array();
  for (const auto& p : a.passes) passes.push_back(p.parts());
  c.payload()["passes"] = passes;
  c.payload()["result"] = parts_json(a.result);
  json split = json::array();
  for (const auto& [t, leaves] : a.split) split.push_back({{"part", t}, {"from", leaves}});
  c.payload()["split"] = split;
  c.expect_eq("total_preserved", a.result.n(), r.total());
}

void cmd_build_cover(Certificate& c, unsigned n, const Options& o, const ResourceLimits& l)
{
  const Ambient a = ambient_for(o, n);
  if (a.kind == GroupKind::Symmetric) {
    AmbientGroup g(a, l);
    auto m = build_m(g, l);
    json classes = json::array();
    for (const auto& t : enumerate_dp(n)) {
      auto cn = canonical_nilpotent(t);
      classes.push_back({{"partition", parts_json(t)},
                         {"order", cn.group.close().order()},
                         {"members", conjugacy_class_of(g, g.ids_of(cn.group.close().elements()), l).size()}});
    }
    c.payload()["classes"] = classes;
    c.payload()["size"] = m.size();
    c.expect("is_cover", m.is_cover, m.is_cover, "true");
    c.expect("is_normal", m.is_normal, m.is_normal, "true");
    c.expect_eq("size_equals_formula", std::to_string(m.size()), big(sigma_sn(n).total));
    c.expect_eq("class_count", m.conjugacy_class_count, enumerate_dp(n).size());
    return;
  }
  // No closed form for A_n: take a minimum cover from the maximal nilpotent pool.
  auto s = NilpotentStructure::compute(a, l);
  c.payload()["pool_size"] = s.pool.size();
  auto mc = min_cover_exact(s.group, s.pool, l);
  std::vector<IdSet> members;
  for (auto i : mc.witness) members.push_back(s.pool.members[i]);
  auto fam = make_family(s.group, members);
  std::map<std::size_t, std::size_t> by_order;
  for (const auto& m : fam.members) ++by_order[m.size()];
  json orders = json::array();
  for (auto [ord, k] : by_order) orders.push_back({{"order", ord}, {"members", k}});
  c.payload()["member_orders"] = orders;
  c.payload()["size"] = mc.size;
  c.payload()["class_count"] = fam.conjugacy_class_count;
  c.payload()["is_normal"] = fam.is_normal;
  c.expect("is_cover", fam.is_cover, fam.is_cover, "true");
  if (!mc.exact) c.mark_inexact("minimum", mc.size);
}

void cmd_verify_theorem1(Certificate& c, unsigned n, const ResourceLimits& l)
{
  auto s = NilpotentStructure::compute(Ambient::sym(n), l);
  auto v = verify_theorem1(s, l);
  c.payload()["cover_size"] = v.cover_size;
  c.payload()["pool_size"] = v.pool_size;
  c.payload()["min_cover"] = v.min_cover;
  c.payload()["violations"] = v.violations;
  c.expect("cover", v.is_cover, v.is_cover, "true");
  c.expect("minimal", v.minimal, v.min_cover, std::to_string(v.cover_size));
  c.expect("unique", v.unique, v.unique, "true");
  c.expect("normal", v.normal, v.normal, "true");
  c.expect_eq("class_count", v.classes, v.distinct_partitions);
}

void cmd_min_cover(Certificate& c, unsigned n, const Options& o, const ResourceLimits& l)
{
  const Ambient a = ambient_for(o, n);
  auto s = NilpotentStructure::compute(a, l);
  auto mc = min_cover_exact(s.group, s.pool, l);
  c.payload()["pool_size"] = s.pool.size();
  c.payload()["size"] = mc.size;
  c.payload()["forced"] = mc.forced;
  c.payload()["lower_bound"] = mc.lower_bound;
  c.payload()["search_nodes"] = mc.search_nodes;
  if (!mc.exact) c.mark_inexact("minimum", mc.size);
  if (a.kind == GroupKind::Symmetric) c.expect_eq("matches_formula", std::to_string(mc.size), big(sigma_sn(n).total));
}

void cmd_non_nilpotent_set(Certificate& c, unsigned n, const Options& o, const ResourceLimits& l)
{
  const Ambient a = ambient_for(o, n);
  AmbientGroup g(a, l);
  auto graph = element_nilpotency_graph(g, l);
  auto mis = max_independent_set(graph, l);
  json witness = json::array();
  for (auto v : mis.witness) witness.push_back(to_cycle_string(g.element(static_cast<ElementId>(v))));
  bool independent = true;
  const AmbientBound bound = a.bound();
  for (std::size_t i = 0; i < mis.witness.size(); ++i)
    for (std::size_t j = i + 1; j < mis.witness.size(); ++j)
      if (pair_nilpotent(g.element(mis.witness[i]), g.element(mis.witness[j]), bound)) independent = false;
  c.payload()["size"] = mis.size();
  c.payload()["upper_bound"] = mis.upper_bound;
  c.payload()["witness"] = witness;
  c.expect("witness_non_nilpotent", independent, independent, "true");
  if (!mis.exact) c.mark_inexact("maximum", mis.size());
  if (a.kind == GroupKind::Symmetric)
    c.expect_eq("matches_formula", std::to_string(mis.size()), big(sigma_sn(n).total));
}

void cmd_gamma_a8(Certificate& c, bool steps, const Options& o, const ResourceLimits& l)
{
  auto d = build_gamma(l, Cache::from_environment());
  auto s = clique_coclique(d, o.seed);
  c.expect_eq("vertex_count", s.vertex_count, 630);
  c.expect_eq("regular_degree", s.regular_degree, 14);
  c.expect("vertex_transitive", s.vertex_transitive, s.vertex_transitive, "true");
  c.expect_eq("sylow2_count", s.sylow2_count, 315);
  c.expect_eq("vertices_per_sylow", s.vertices_per_sylow, 14);
  c.expect("clique_lower_bound", s.clique_lower_bound >= 14, s.clique_lower_bound, ">= 14");
  c.expect_eq("coclique_upper_bound", s.coclique_upper_bound, 45);
  c.expect("coclique_witness", s.coclique_witness_verified && s.coclique_witness.size() >= 39,
           s.coclique_witness.size(), ">= 39, pairwise non-nilpotent");
  c.payload()["sylows_per_vertex"] = s.sylows_per_vertex;
  c.payload()["coclique_witness"] = s.coclique_witness;
  c.payload()["violations"] = s.violations;
  if (!steps) return;
  auto e = elimination_steps(d);
  c.expect_eq("remaining_after_p1", e.remaining_after_p1, 276);
  c.expect_eq("g0_multiplicity", e.g0_multiplicity, 2);
  c.expect_eq("remaining_after_p2", e.remaining_after_p2, 247);
  c.expect_eq("vertices_in_remaining", e.vertices_in_remaining, 600);
  c.expect_eq("vertices_in_p1p2", e.vertices_in_p1p2, 28);
  c.expect("max_coverable", e.max_coverable < s.vertex_count && e.max_coverable == 628, e.max_coverable,
           "628 < 630");
  json dist = json::object();
  for (auto [m, k] : e.g0_distribution) dist[std::to_string(m)] = k;
  json choices = json::array();
  for (const auto& ch : e.choices)
    choices.push_back({{"g0", ch.g0},
                       {"p2", ch.p2},
                       {"remaining_after_p2", ch.remaining_after_p2},
                       {"vertices_in_remaining", ch.vertices_in_remaining}});
  c.payload()["g0_distribution"] = dist;
  c.payload()["choices"] = choices;
  c.payload()["choices_matching"] = e.choices_matching;
}

void cmd_facts_a9(Certificate& c, const ResourceLimits& l)
{
  auto f = facts_a9(l, Cache::from_environment());
  c.payload()["element"] = f.element;
  json by_type = json::object();
  for (const auto& [t, m] : f.min_multiplicity_by_type) by_type[t] = m;
  c.payload()["min_multiplicity_by_type"] = by_type;
  c.payload()["identity_multiplicity"] = f.identity_multiplicity;
  c.expect("centralizer_is_2_group", f.fact_a, f.centralizer_order, "power of 2");
  c.expect_eq("centralizer_order", f.centralizer_order, 32);
  c.expect_eq("sylow2_order", f.sylow2_order, 64);
  c.expect_eq("sylow2_count", f.sylow2_count, 2835);
  c.expect("min_containment", f.fact_b, f.min_multiplicity, ">= 3");
}

// Plain-text forms for the table-like commands.
void print_rows_text(const json& doc, std::ostream& os)
{
  const std::string cmd = doc["command"];
  const json& p = doc["payload"];
  auto set_text = [](const json& parts) {
    std::string s = "{";
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + parts[i].dump();
    return s + "}";
  };
  if (cmd == "dp") {
    for (const auto& t : p["partitions"]) os << scalar_text(t) << '\n';
  } else if (cmd == "sigma") {
    for (const auto& r : p["rows"]) os << set_text(r["partition"]) << ' ' << r["class_size"].get<std::string>() << '\n';
    os << "total " << p["total"].get<std::string>() << '\n';
  } else if (cmd == "table") {
    for (const auto& r : p["table"]) {
      os << r["n"].get<unsigned>() << "  ";
      for (std::size_t i = 0; i < r["rows"].size(); ++i) os << (i ? "," : "") << set_text(r["rows"][i]["partition"]);
      os << "  " << r["total"].get<std::string>() << '\n';
    }
  } else if (cmd == "amalgamate") {
    for (const auto& pass : p["passes"]) os << scalar_text(pass) << '\n';
    os << "result " << set_text(p["result"]) << '\n';
    for (const auto& x : p["split"]) os << x["part"].dump() << ": " << scalar_text(x["from"]) << '\n';
  }
}

void print_csv(const json& doc, std::ostream& os)
{
  os << "n,partition,class_size,total\n";
  auto write = [&](const json& report) {
    for (const auto& r : report["rows"]) {
      std::string parts;
      for (std::size_t i = 0; i < r["partition"].size(); ++i) parts += (i ? " " : "") + r["partition"][i].dump();
      os << report["n"].get<unsigned>() << ',' << parts << ',' << r["class_size"].get<std::string>() << ','
         << report["total"].get<std::string>() << '\n';
    }
  };
  if (doc["command"] == "table")
    for (const auto& r : doc["payload"]["table"]) write(r);
  else
    write(doc["payload"]);
}

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Minimal nilpotent covers of symmetric and alternating groups"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_flag("--json", o.json_out, "Emit a JSON certificate");
  app.add_flag("--csv", o.csv, "Emit CSV (sigma and table only)");
  app.add_flag("--timing", o.timing, "Include wall-clock runtime in the certificate");
  app.add_option("--budget", o.budget, "Time budget in seconds")->check(CLI::PositiveNumber);
  app.add_option("--threads", o.threads, "Worker threads for graph construction")->check(CLI::Range(1u, 256u));
  app.add_option("--seed", o.seed, "Seed for randomized search");

  unsigned n = 0;
  unsigned max_n = 0;
  std::string cycle_text;
  bool steps = false;
  auto group_opt = [&](CLI::App* sub) {
    sub->add_option("--group", o.group, "sym or alt")->check(CLI::IsMember({"sym", "alt"}));
  };
  auto* dp = app.add_subcommand("dp", "List the partitions of n into distinct parts");
  dp->add_option("n", n)->required()->check(CLI::Range(1u, 120u));
  auto* sigma = app.add_subcommand("sigma", "Size of the minimal nilpotent cover of S_n");
  sigma->add_option("n", n)->required()->check(CLI::Range(1u, 500u));
  auto* table = app.add_subcommand("table", "Cover sizes for n = 2..N");
  table->add_option("--max-n", max_n)->required()->check(CLI::Range(2u, 200u));
  auto* amal = app.add_subcommand("amalgamate", "Merge equal parts of a cycle type");
  amal->add_option("cycle-type", cycle_text)->required();
  auto* build = app.add_subcommand("build-cover", "Construct a minimal nilpotent cover");
  build->add_option("n", n)->required()->check(CLI::Range(1u, 9u));
  group_opt(build);
  auto* thm = app.add_subcommand("verify-theorem1", "Check the cover of S_n is unique, minimal and normal");
  thm->add_option("n", n)->required()->check(CLI::Range(1u, 9u));
  auto* minc = app.add_subcommand("min-cover", "Exact minimum cover by maximal nilpotent subgroups");
  minc->add_option("n", n)->required()->check(CLI::Range(1u, 9u));
  group_opt(minc);
  auto* nns = app.add_subcommand("non-nilpotent-set", "Largest set of pairwise non-nilpotent elements");
  nns->add_option("n", n)->required()->check(CLI::Range(1u, 9u));
  group_opt(nns);
  auto* gamma = app.add_subcommand("gamma-a8", "Graph on cyclic 4^2 subgroups of A_8");
  gamma->add_flag("--steps", steps, "Also run the disjoint-cover elimination");
  auto* a9 = app.add_subcommand("facts-a9", "Centralizer and Sylow containment facts in A_9");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }
  if (o.csv && !sigma->parsed() && !table->parsed()) {
    std::cerr << "--csv applies to sigma and table only\n";
    return kUsage;
  }
  if (o.csv && o.json_out) {
    std::cerr << "--csv and --json are exclusive\n";
    return kUsage;
  }

  const auto* sub = app.get_subcommands().front();
  json inputs = json::object();
  if (sub == dp || sub == sigma || sub == build || sub == thm || sub == minc || sub == nns) inputs["n"] = n;
  if (sub == build || sub == minc || sub == nns) inputs["group"] = o.group;
  if (sub == table) inputs["max_n"] = max_n;
  if (sub == amal) inputs["cycle_type"] = cycle_text;
  if (sub == gamma) inputs["steps"] = steps;
  if (sub == gamma) inputs["seed"] = o.seed;
  Certificate cert(sub->get_name(), inputs);

  const auto start = std::chrono::steady_clock::now();
  const ResourceLimits limits = limits_for(o);
  bool budget_hit = false;
  try {
    if (sub == dp) cmd_dp(cert, n);
    else if (sub == sigma) cmd_sigma(cert, n);
    else if (sub == table) cmd_table(cert, max_n);
    else if (sub == amal) cmd_amalgamate(cert, cycle_text);
    else if (sub == build) cmd_build_cover(cert, n, o, limits);
    else if (sub == thm) cmd_verify_theorem1(cert, n, limits);
    else if (sub == minc) cmd_min_cover(cert, n, o, limits);
    else if (sub == nns) cmd_non_nilpotent_set(cert, n, o, limits);
    else if (sub == gamma) cmd_gamma_a8(cert, steps, o, limits);
    else if (sub == a9) cmd_facts_a9(cert, limits);
  } catch (const ResourceLimitExceeded& e) {
    budget_hit = true;
    cert.doc["error"] = e.what();
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const bool tabular = sub == dp || sub == sigma || sub == table || sub == amal;
  if (tabular && !o.json_out && !budget_hit) {
    if (o.csv) print_csv(cert.doc, std::cout);
    else print_rows_text(cert.doc, std::cout);
    return cert.failures ? kFail : kPass;
  }
  return emit(cert, o, budget_hit, seconds);
}
