#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "elastica/config.hpp"

namespace elastica {

struct CheckResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool all_pass() const;
};

// "PASS [3] clamped convergence: ... (12.1 s)"
std::string format_check(const CheckResult& c);

CheckResult check_energy_decay(const VerifyOptions& opt);
CheckResult check_navier_convergence(const VerifyOptions& opt);
CheckResult check_clamped_convergence(const VerifyOptions& opt);
CheckResult check_first_integrals(const VerifyOptions& opt);
CheckResult check_asymptotics(const VerifyOptions& opt);
CheckResult check_finiteness(const VerifyOptions& opt);
CheckResult check_coercivity(const VerifyOptions& opt, std::uint64_t seed);
CheckResult check_first_variation(const VerifyOptions& opt, std::uint64_t seed);
CheckResult check_evolution_identities(const VerifyOptions& opt);

// all of the above in order; each line is written to `log` as it finishes
VerifyReport run_verify(const VerifyOptions& opt, std::uint64_t seed, std::ostream& log);

// arclength period of the stationary ODE measured by direct integration from
// kappa_M until kappa_s changes sign twice; independent of the quadrature
double ode_period(double E, double lambda);

}  // namespace elastica
