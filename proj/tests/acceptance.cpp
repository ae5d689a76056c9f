// Acceptance suite: runs every verification criterion with its runtime
// budget and prints one pass/fail line per criterion. Exits nonzero if
// any criterion fails.

#include "wg/verify.hpp"

#include <chrono>
#include <cstdio>
#include <string>

namespace {

struct Criterion {
  int number;
  std::string name;
  bool pass;
  double seconds;
  double budget_seconds; // 0 = no budget
  std::string detail;
};

std::vector<Criterion> results;

void report(int number, const std::string& name, const wg::verify::RunReport& rep, double budget,
            const std::vector<std::string>& record_names = {}) {
  bool pass = true;
  std::string detail;
  for (const auto& rec : rep.records) {
    if (!record_names.empty() &&
        std::find(record_names.begin(), record_names.end(), rec.name) == record_names.end())
      continue;
    if (rec.status == "FAIL") pass = false;
    if (!detail.empty()) detail += "; ";
    detail += rec.name + ": " + rec.observed;
  }
  if (budget > 0 && rep.wall_seconds > budget) pass = false;
  results.push_back(Criterion{number, name, pass, rep.wall_seconds, budget, detail});
}

} // namespace

int main() {
  using wg::verify::Options;
  Options opt; // acceptance defaults: seed 42 and the documented grid limits

  // 1: Heisenberg law vs matrix embedding, 10^5 pairs per r in 1..5, < 10 s
  report(1, "heisenberg-law-vs-embedding", wg::verify::heis_embedding_suite(opt), 10.0);

  // 2 + 3: subgroup bound grid (gcd bound, r1 bound, arithmetic chain), < 5 min
  {
    wg::verify::RunReport grid = wg::verify::heis_subgroup_grid(opt);
    report(2, "heisenberg-subgroup-gcd-bound", grid, 300.0, {"heis-subgroup-gcd-bound"});
    wg::verify::RunReport grid3 = grid;
    grid3.wall_seconds = 0; // measured once; the budget belongs to criterion 2
    report(3, "heisenberg-quotient-r1-bound-and-chain", grid3, 0,
           {"heis-quotient-r1-bound", "heis-quotient-chain-inequality"});
  }

  // 4: Kodaira nested pairs, >= 200 instances, < 2 min
  wg::verify::RunReport kodaira = wg::verify::kodaira_pair_grid(opt);
  report(4, "kodaira-direct-product-bound", kodaira, 120.0, {"kodaira-direct-product-bound"});

  // 5: normal subgroup structure |G| = |Gamma_0/Gamma_0'| k across all grids
  {
    wg::verify::RunReport structure = wg::verify::semidirect_structure_grid(opt);
    wg::verify::RunReport combined;
    combined.suite = "structure";
    wg::verify::RunReport kd = kodaira;
    kd.wall_seconds = 0;
    combined.merge(kd);
    combined.merge(structure);
    report(5, "normal-subgroup-structure", combined, 0,
           {"kodaira-quotient-structure", "semidirect-quotient-structure", "semidirect-index-bounds"});
  }

  // 6: roots-of-unity agreement on 10^4 random unimodular matrices, < 30 s
  report(6, "roots-of-unity-two-paths", wg::verify::roots_of_unity_agreement(opt), 30.0);

  // 7: epsilon constants and k_max behavior
  report(7, "epsilon-and-kmax", wg::verify::epsilon_kmax_suite(opt), 0);

  // 8: classification trichotomy on fixtures and 500 random descriptors
  report(8, "classification-trichotomy", wg::verify::classification_suite(opt), 0);

  // 9: psi preserves the relations and moves Gamma_0, r in 1..5
  report(9, "psi-noncharacteristic-witness", wg::verify::psi_suite(opt), 0);

  // 10: SNF/HNF on 10^4 random matrices, < 20 s
  report(10, "snf-hnf-exactness", wg::verify::snf_hnf_suite(opt), 20.0);

  bool all_pass = true;
  for (const auto& c : results) {
    std::printf("[%2d/10] %-38s %s  (%.2f s%s)\n", c.number, c.name.c_str(), c.pass ? "PASS" : "FAIL",
                c.seconds, c.budget_seconds > 0 ? (", budget " + std::to_string(static_cast<int>(c.budget_seconds)) + " s").c_str() : "");
    if (!c.detail.empty()) std::printf("         %s\n", c.detail.c_str());
    if (!c.pass) all_pass = false;
  }
  std::printf("%s\n", all_pass ? "ACCEPTANCE: all criteria pass" : "ACCEPTANCE: FAILURES PRESENT");
  return all_pass ? 0 : 1;
}
