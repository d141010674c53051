// End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
// exits with the number of failed criteria.

#include <chrono>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <nilcover/cover.hpp>
#include <nilcover/gamma_a8.hpp>
#include <nilcover/lemmas.hpp>
#include <nilcover/partitions.hpp>
#include <nilcover/sigma.hpp>

using namespace nilcover;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

int failures = 0;

void report(int id, const std::string& title, bool ok, const std::string& detail)
{
  failures += !ok;
  std::cout << (ok ? "PASS" : "FAIL") << "  [" << id << "] " << title << ": " << detail << std::endl;
}

std::string rows_text(const SigmaReport& r)
{
  std::string s;
  for (std::size_t i = 0; i < r.rows.size(); ++i) s += (i ? "," : "") + r.rows[i].parts.to_string();
  return s;
}

void table_totals()
{
  const std::map<unsigned, std::pair<std::string, int>> expected = {
      {2, {"{2}", 1}},
      {3, {"{1,2},{3}", 4}},
      {4, {"{1,3},{4}", 7}},
      {5, {"{1,4},{2,3},{5}", 31}},
      {6, {"{1,2,3},{1,5},{2,4},{6}", 201}},
      {7, {"{1,2,4},{1,6},{2,5},{3,4},{7}", 1086}},
      {8, {"{1,2,5},{1,3,4},{1,7},{2,6},{3,5},{8}", 5139}},
      {9, {"{1,2,6},{1,3,5},{2,3,4},{1,8},{2,7},{3,6},{4,5},{9}", 37507}},
  };
  auto t0 = Clock::now();
  auto table = sigma_table(9);
  const double secs = since(t0);
  bool ok = table.size() == expected.size();
  std::string totals;
  for (const auto& r : table) {
    const auto& [rows, total] = expected.at(r.n);
    ok = ok && rows_text(r) == rows && r.total == total;
    totals += (totals.empty() ? "" : ",") + r.total.str();
  }
  ok = ok && secs < 1.0;
  std::ostringstream d;
  d << "totals " << totals << ", rows match, " << static_cast<int>(secs * 1000) << " ms";
  report(1, "cover sizes and distinct partitions for n = 2..9", ok, d.str());
}

void triangle_and_theorem(std::vector<NilpotentStructure>& structures)
{
  bool tri = true;
  bool thm = true;
  std::ostringstream d2;
  std::ostringstream d3;
  double s7_seconds = 0;
  for (unsigned n = 3; n <= 7; ++n) {
    auto t0 = Clock::now();
    structures.push_back(NilpotentStructure::compute(Ambient::sym(n)));
    const auto& s = structures.back();
    auto mc = min_cover_exact(s.group, s.pool);
    auto mis = max_independent_set(s.graph);
    const bool independent = s.graph.is_independent(mis.witness);
    const BigInt formula = sigma_sn(n).total;
    const bool ok = mc.exact && mis.exact && independent && BigInt(mc.size) == formula && mis.size() == mc.size;
    tri = tri && ok;
    d2 << (n > 3 ? "; " : "") << "S" << n << " " << mc.size << "=" << mis.size() << "=" << formula;

    auto v = verify_theorem1(s);
    const bool vok = v.passed() && v.classes == enumerate_dp(n).size() && v.normal;
    thm = thm && vok;
    d3 << (n > 3 ? "; " : "") << "S" << n << " size " << v.cover_size << " classes " << v.classes;
    for (const auto& x : v.violations) d3 << " [" << x << "]";
    if (n == 7) s7_seconds = since(t0);
  }
  tri = tri && s7_seconds < 600;
  d2 << "; S7 took " << static_cast<int>(s7_seconds) << " s";
  report(2, "min cover = max non-nilpotent set = formula, n = 3..7", tri, d2.str());
  report(3, "canonical cover is the unique minimal normal cover, n = 3..7", thm, d3.str());
}

void lemma_suite(const std::vector<NilpotentStructure>& structures)
{
  std::ostringstream d;
  bool a = true;
  for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
    auto c = sylow_cycle_containment(q);
    a = a && c.unique();
  }
  d << "(a) " << (a ? "ok" : "FAILED");

  bool b = true;
  std::size_t elements = 0;
  for (const auto& s : structures) {
    auto r = distinct_type_containment(s);
    b = b && r.passed();
    elements += r.elements;
  }
  for (unsigned t : {8u, 9u}) b = b && transitive_containment(t).passed();
  d << "; (b) " << (b ? "ok" : "FAILED") << " over " << elements << " elements, plus 8- and 9-cycles";

  auto o = orbit_preservation_2_2_3(structures.back());
  d << "; (c) " << (o.passed() ? "ok" : "FAILED") << ", " << o.containers << " containers of " << o.element;

  NilpotencyAgreement agree;
  for (unsigned n = 3; n <= 6; ++n)
    for (auto amb : {Ambient::sym(n), Ambient::alt(n)}) {
      AmbientGroup g(amb);
      maximal_nilpotent_subgroups(g, element_nilpotency_graph(g), {}, agreement_observer(agree));
    }
  {
    AmbientGroup a7(Ambient::alt(7));
    maximal_nilpotent_subgroups(a7, element_nilpotency_graph(a7), {}, agreement_observer(agree));
  }
  for (auto amb : {Ambient::sym(4), Ambient::sym(5), Ambient::alt(5), Ambient::alt(6)})
    two_generated_agreement(AmbientGroup(amb), agree);
  auto check = agreement_observer(agree);
  for (const auto& s : structures)
    for (const auto& m : s.pool.members) check(s.group.to_closure(m));
  const bool dd = agree.mismatches == 0 && agree.checked > agree.nilpotent;
  d << "; (d) " << (dd ? "ok" : "FAILED") << ", " << agree.checked << " subgroups (" << agree.nilpotent
    << " nilpotent), largest " << agree.largest;
  report(4, "lemma suite", a && b && o.passed() && dd, d.str());
}

void gamma_certificate()
{
  auto t0 = Clock::now();
  auto d = build_gamma();
  auto s = clique_coclique(d, 0);
  auto e = elimination_steps(d);
  const double secs = since(t0);
  std::vector<std::string> bad;
  auto need = [&](bool ok, const std::string& what) {
    if (!ok) bad.push_back(what);
  };
  need(s.vertex_count == 630, "vertex_count " + std::to_string(s.vertex_count));
  need(s.regular_degree == 14, "regular_degree " + std::to_string(s.regular_degree) + " (expected 14)");
  need(s.vertex_transitive, "not vertex-transitive");
  need(s.sylow2_count == 315, "sylow2_count " + std::to_string(s.sylow2_count));
  need(s.clique_lower_bound >= 14, "clique " + std::to_string(s.clique_lower_bound));
  need(s.coclique_upper_bound == 45, "coclique bound " + std::to_string(s.coclique_upper_bound));
  need(e.remaining_after_p1 == 276, "after P1 " + std::to_string(e.remaining_after_p1));
  need(e.g0_multiplicity == 2, "no g0 of multiplicity 2");
  need(e.remaining_after_p2 == 247, "after P2 " + std::to_string(e.remaining_after_p2));
  need(e.vertices_in_remaining == 600, "remaining vertices " + std::to_string(e.vertices_in_remaining));
  need(e.max_coverable == 628 && e.max_coverable < s.vertex_count, "max coverable " + std::to_string(e.max_coverable));
  need(s.coclique_witness_verified && s.coclique_witness_size() >= 39,
       "coclique witness " + std::to_string(s.coclique_witness_size()));
  need(secs < 1800, "too slow");

  std::ostringstream out;
  out << "630/" << s.regular_degree << "-regular/" << (s.vertex_transitive ? "transitive" : "intransitive") << "/"
      << s.sylow2_count << "/clique " << s.clique_lower_bound << "/bound " << s.coclique_upper_bound << "/"
      << e.remaining_after_p1 << "/" << e.g0_multiplicity << "/" << e.remaining_after_p2 << "/"
      << e.vertices_in_remaining << "/" << e.max_coverable << ", witness " << s.coclique_witness_size() << ", "
      << static_cast<int>(secs) << " s";
  for (const auto& b : bad) out << "; mismatch: " << b;
  report(5, "gamma graph on 4^2 cyclic subgroups of A_8", bad.empty(), out.str());
}

void a9_facts()
{
  auto f = facts_a9();
  const bool ok = f.fact_a && f.centralizer_order == 32 && f.fact_b && f.sylow2_order == 64 && f.sylow2_count == 2835;
  std::ostringstream d;
  d << "centralizer of " << f.element << " has order " << f.centralizer_order << "; " << f.sylow2_count
    << " Sylow 2-subgroups of order " << f.sylow2_order << ", minimum containment " << f.min_multiplicity;
  report(6, "A_9 facts", ok, d.str());
}

void formula_at_scale()
{
  const BigInt c = class_size(DistinctPartition({16}));
  report(7, "Sylow 2-subgroup count of S_16", c == 638512875, c.str());
}

void euler_identity()
{
  bool ok = true;
  for (unsigned n = 1; n <= 60; ++n) ok = ok && count_dp(n) == count_odd_partitions(n);
  report(8, "distinct partitions = odd partitions, n = 1..60", ok, "count_dp(60) = " + std::to_string(count_dp(60)));
}

} // namespace

int main()
{
  table_totals();
  std::vector<NilpotentStructure> structures;
  triangle_and_theorem(structures);
  lemma_suite(structures);
  gamma_certificate();
  a9_facts();
  formula_at_scale();
  euler_identity();
  std::cout << (8 - failures) << "/8 criteria passed" << std::endl;
  return failures;
}
