// Acceptance gate: one line per criterion, nonzero exit if any fails.
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "holoforge/examples.hpp"
#include "holoforge/verify.hpp"

using namespace holoforge;

namespace {

int failures = 0;

void line(int idx, bool ok, const std::string& what, double secs, double budget) {
  if (!ok) ++failures;
  std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << idx << ": " << what << " ("
            << std::fixed << std::setprecision(2) << secs << "s";
  if (budget > 0) std::cout << " of " << std::setprecision(0) << budget << "s allowed";
  std::cout << ")\n";
}

template <typename Fn>
void criterion(int idx, const std::string& what, double budget, Fn body) {
  WallTimer t;
  bool ok = false;
  std::string note;
  try {
    ok = body(note);
  } catch (const std::exception& e) {
    note = e.what();
  }
  double secs = t.seconds();
  if (budget > 0 && secs >= budget) ok = false;
  line(idx, ok, what + (note.empty() ? "" : " [" + note + "]"), secs, budget);
}

bool report_ok(const RunReport& r, std::string& note) {
  if (r.pass()) return true;
  std::ostringstream os;
  for (const Assertion& a : r.assertions)
    if (!a.pass) os << r.command << ": " << a.name << "; ";
  note += os.str();
  return false;
}

}  // namespace

int main() {
  criterion(1, "holomorph decision agrees with the oracle over GL2(2) and GL2(3)", 30,
            [](std::string& note) {
              LindoScopeReport a = verify_lindo(2, 2);
              LindoScopeReport b = verify_lindo(3, 2);
              note = std::to_string(a.pairs) + "+" + std::to_string(b.pairs) + " pairs";
              return a.ok() && a.pairs == 36 && b.ok();
            });

  criterion(2, "rank-four module over Z/8: generator order, determinant refutation, "
               "derived structure, rebase, three overgroups", 60,
            [](std::string& note) { return report_ok(run_final(), note); });

  criterion(3, "plane and rank-four field examples: exact rebase matrices, "
               "non-isomorphic complements, verified holomorph isomorphism", 30,
            [](std::string& note) {
              return report_ok(run_e3(3), note) && report_ok(run_e7(), note);
            });

  criterion(4, "rank-six example at p=2 and p=3: centers, displacement ranks, rebase", 30,
            [](std::string& note) {
              return report_ok(run_e9(2), note) && report_ok(run_e9(3), note);
            });

  criterion(5, "iterated holomorph of an order-32 group: centralizer split and "
               "exhaustive non-conjugacy", 120,
            [](std::string& note) { return report_ok(run_e1(), note); });

  criterion(6, "admitting scans: plane, GL3(2) subgroup classes, order-8 bases, "
               "prime-power cyclic bases", 300, [](std::string& note) {
              return report_ok(run_e6a(), note) && report_ok(run_e6b(), note) &&
                     report_ok(run_e6c(), note) && report_ok(run_e6d(), note);
            });

  criterion(7, "property suites, zero counterexamples", 0, [](std::string& note) {
    bool ok = true;
    u64 total = 0;
    for (const SuiteReport& r :
         {suite_orden(), suite_psimilar(), suite_pid(), suite_lindo2(), suite_derived_span(),
          suite_lcs_span(), suite_unip(), suite_nicecase0(), suite_suma(), suite_abe(),
          suite_ord(), suite_conjugados()}) {
      total += r.cases;
      if (!r.ok() || r.cases < 200) {
        ok = false;
        note += r.suite + " failed (" + std::to_string(r.failures) + "/" +
                std::to_string(r.cases) + "); ";
      }
    }
    if (ok) note = std::to_string(total) + " cases across 12 suites";
    return ok;
  });

  criterion(8, "scope exclusions stated explicitly", 0, [](std::string& note) {
    note = "excluded by design: classifying all cyclic subgroups of GL4(Z/8Z) up to "
           "conjugacy, and counting every relative holomorph of (Z/8Z)^4; the "
           "three-overgroup structural check of criterion 2 and the property suites of "
           "criterion 7 stand in";
    return true;
  });

  std::cout << (failures ? "ACCEPTANCE FAIL (" + std::to_string(failures) + " criteria)"
                         : "ACCEPTANCE PASS (8 criteria)")
            << '\n';
  return failures ? 1 : 0;
}
