#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <sys/wait.h>

#include "elastica/config.hpp"
#include "elastica/verify.hpp"

using namespace elastica;

namespace {

// criteria 1-3 also carry a runtime limit in seconds
CheckResult with_limit(CheckResult c, double limit) {
  if (limit > 0.0 && c.seconds >= limit) {
    c.pass = false;
    c.detail += ", runtime over " + std::to_string(static_cast<int>(limit)) + " s";
  }
  return c;
}

CheckResult check_verify_command(std::uint64_t seed) {
  CheckResult c;
  c.id = 10;
  c.name = "elastica verify";
  const auto dir = std::filesystem::temp_directory_path() / "elastica_acceptance_verify";
  const std::string cmd = std::string(ELASTICA_BIN) + " verify --override seed=" + std::to_string(seed) + " --out " +
                          dir.string() + " > " + (dir.string() + ".log") + " 2>&1";
  const auto t0 = std::chrono::steady_clock::now();
  const int status = std::system(cmd.c_str());
  c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  c.pass = code == 0 && c.seconds < 600.0;
  c.detail = "exit code " + std::to_string(code) + " in " + std::to_string(static_cast<int>(c.seconds)) +
             " s (< 600 s), log in " + dir.string() + ".log";
  return c;
}

}  // namespace

int main() {
  const VerifyOptions opt;
  const std::uint64_t seed = 1;
  bool all = true;
  auto report = [&](const CheckResult& c) {
    std::cout << format_check(c) << std::endl;
    all = all && c.pass;
  };
  report(with_limit(check_energy_decay(opt), 60.0));
  report(with_limit(check_navier_convergence(opt), 120.0));
  report(with_limit(check_clamped_convergence(opt), 300.0));
  report(check_first_integrals(opt));
  report(check_asymptotics(opt));
  report(check_finiteness(opt));
  report(check_coercivity(opt, seed));
  report(check_first_variation(opt, seed));
  report(check_evolution_identities(opt));
  report(check_verify_command(seed));
  return all ? 0 : 1;
}
