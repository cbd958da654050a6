#include "nsac/params.hpp"

#include <cmath>
#include <stdexcept>

namespace nsac {

void MixtureParams::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(name) + " must be > 0");
  };
  positive(rho_a, "rho_a");
  positive(rho_b, "rho_b");
  positive(mu_a, "mu_a");
  positive(mu_b, "mu_b");
  positive(gamma, "gamma");
  positive(eta, "eta");
  positive(sigma, "sigma");
  positive(dt, "dt");
  positive(eps_pressure, "eps_pressure");
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw std::invalid_argument("beta must be >= 0");
}

std::string_view to_string(AcMethod m) {
  switch (m) {
    case AcMethod::newton:
      return "fin";
    case AcMethod::picard:
      return "fip";
    case AcMethod::explicit_:
      return "sce";
  }
  return "?";
}

AcMethod parse_ac_method(std::string_view name) {
  if (name == "fin" || name == "newton") return AcMethod::newton;
  if (name == "fip" || name == "picard") return AcMethod::picard;
  if (name == "sce" || name == "explicit") return AcMethod::explicit_;
  throw std::invalid_argument("unknown method '" + std::string(name) + "' (expected fin, fip or sce)");
}

double max_principle_beta(AcMethod method) {
  switch (method) {
    case AcMethod::newton:
      return 9.0 / 8.0;
    case AcMethod::picard:
      return 2.0;
    case AcMethod::explicit_:
      return 0.0;
  }
  return 0.0;
}

}  // namespace nsac
