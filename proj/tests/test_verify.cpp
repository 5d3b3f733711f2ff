#include <sstream>

#include "cavcal/verify.hpp"
#include "doctest.h"

using namespace cavcal;

namespace {

VerifyOptions quick_options() {
  VerifyOptions opt;
  opt.seed = 1;
  opt.khat_samples = 20000;
  opt.gbound_triples = 50;
  opt.gbound_rotations = 500;
  opt.mintrace_samples = 5000;
  opt.bartok_samples = 5000;
  opt.identity_samples = 2000;
  opt.fd_samples = 30;
  return opt;
}

}  // namespace

TEST_CASE("verification suite passes clean") {
  const auto lines = run_verify_suite(quick_options());
  CHECK(lines.size() >= 20);
  for (const auto& l : lines) {
    INFO(l.name, " observed=", l.observed, " error=", l.error);
    CHECK(l.pass);
  }
  std::ostringstream os;
  print_check_lines(lines, os);
  CHECK(os.str().find("PASS") != std::string::npos);
  CHECK(os.str().find("FAIL") == std::string::npos);
}

TEST_CASE("fault injection is caught") {
  VerifyOptions opt = quick_options();
  opt.g_bias = 1e-3;
  const auto lines = run_verify_suite(opt);
  int failures = 0;
  for (const auto& l : lines) failures += l.pass ? 0 : 1;
  CHECK(failures >= 2);
}

TEST_CASE("filter narrows the suite") {
  VerifyOptions opt = quick_options();
  opt.filter = "sv_deriv";
  const auto lines = run_verify_suite(opt);
  CHECK(!lines.empty());
  for (const auto& l : lines)
    CHECK(l.name.find("sv_deriv") != std::string::npos);
}
