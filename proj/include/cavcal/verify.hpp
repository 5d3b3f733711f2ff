#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cavcal/types.hpp"

namespace cavcal {

struct VerifyOptions {
  std::uint64_t seed = 1;
  std::string filter;      // run only checks whose name contains this
  real g_bias = 0;         // test hook: additive fault injected into G
  long long khat_samples = 100000;
  long long gbound_rotations = 2000;
  long long gbound_triples = 200;
  long long mintrace_samples = 20000;
  long long bartok_samples = 20000;
  int identity_samples = 10000;
  int fd_samples = 100;
};

struct CheckLine {
  std::string name;
  real analytic;
  real observed;
  real error;
  bool pass;
};

/// Runs every analytically checkable identity and inequality; one line per
/// check. Returns true iff all selected checks pass.
std::vector<CheckLine> run_verify_suite(const VerifyOptions& opt);

void print_check_lines(const std::vector<CheckLine>& lines, std::ostream& os);

}  // namespace cavcal
