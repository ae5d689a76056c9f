#pragma once

#include "wg/int.hpp"
#include "wg/matrix.hpp"
#include "wg/quotient.hpp"
#include "wg/wang.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace wg {
namespace verify {

struct CheckRecord {
  std::string name;
  std::string inputs_digest;
  std::string observed;
  std::string bound;
  std::string status; // PASS | FAIL | SKIP
};

struct RunReport {
  std::string suite;
  std::vector<CheckRecord> records;
  int passed = 0, failed = 0, skipped = 0;
  double wall_seconds = 0;

  bool ok() const { return failed == 0; }
  void add(const std::string& name, const std::string& digest, const std::string& observed,
           const std::string& bound, bool pass);
  void skip(const std::string& name, const std::string& why);
  void merge(const RunReport& other);
};

struct Options {
  uint64_t seed = 42;
  // grid limits; defaults match the acceptance suite
  long heis_r_max = 3;
  long heis_coeff_max = 4;
  long heis_index_cap = 512;
  long kodaira_order_cap = 256;
  long embedding_pairs = 100000;
  long roots_samples = 10000;
  long snf_samples = 10000;
  long classify_samples = 500;
  int threads = 0; // 0 = hardware
};

// deterministic helpers shared with the CLI and tests
IntMatrix random_unimodular(std::mt19937_64& rng, int n, int steps, bool det_plus_one);
std::string digest(const std::string& s);

using InstanceSink = std::function<void(const std::string& line, bool pass)>;

// the ten acceptance checks
RunReport heis_embedding_suite(const Options& opt);            // triple law vs matrix embedding
RunReport heis_subgroup_grid(const Options& opt, const InstanceSink* sink = nullptr); // gcd + r1 bounds
RunReport kodaira_pair_grid(const Options& opt, const InstanceSink* sink = nullptr);  // direct-product bound
RunReport semidirect_structure_grid(const Options& opt, const InstanceSink* sink = nullptr); // |G| = |G0| k
RunReport roots_of_unity_agreement(const Options& opt);
RunReport epsilon_kmax_suite(const Options& opt);
RunReport classification_suite(const Options& opt);
RunReport psi_suite(const Options& opt);
RunReport snf_hnf_suite(const Options& opt);

RunReport run_all(const Options& opt);
RunReport run_named(const std::string& which, const Options& opt); // all|heis|quot|numth

} // namespace verify
} // namespace wg
