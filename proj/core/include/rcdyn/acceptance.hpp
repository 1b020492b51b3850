#pragma once

#include <string>
#include <vector>

namespace rcdyn {

struct AcceptanceCheck {
  std::string name;
  bool pass = false;
  std::string detail;  // measured values, human-readable
};

// suites: exact, coupling, duality, spatial, scaling, decay, all
std::vector<std::string> acceptance_suites();
std::vector<AcceptanceCheck> run_acceptance(const std::string& suite);

}  // namespace rcdyn
