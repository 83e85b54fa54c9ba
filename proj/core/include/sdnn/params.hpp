#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "sdnn/mesh.hpp"

namespace sdnn {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Physical parameters of the coupled problem. The friction coefficient and
/// the scalar permeability are derived on demand.
struct ProblemParams {
  double mu_f = 1.0;      // fluid viscosity, 1/Re
  double eta1 = 1.0;      // permeability, x direction
  double eta2 = 1.0;      // permeability, y direction
  double alpha_bj = 1.0;  // Beavers-Joseph constant

  /// BJS friction for a horizontal interface (tangent (1, 0)).
  double xi_f() const { return alpha_bj * std::sqrt(mu_f / eta1); }
  double eta_p() const { return std::sqrt(eta1 * eta2); }

  void validate() const;
};

enum class CaseLabel { a, b, c, d };

CaseLabel parse_case_label(const std::string& text);
char to_char(CaseLabel label);

/// One of the four benchmark parameter sets on mesh level 1..4.
struct CaseConfig {
  CaseLabel label = CaseLabel::a;
  int level = 1;
  ProblemParams params;

  double h() const { return level_mesh_size(level); }
  std::size_t elements_per_side() const;
  RectDomain fluid_domain() const { return {0.0, 0.5, 1.0, 1.5}; }
  RectDomain porous_domain() const { return {0.0, 0.5, 0.5, 1.0}; }
};

/// Resolves (mu_f, eta_p) from the label; permeability is isotropic.
CaseConfig make_case(CaseLabel label, int level, double alpha_bj = 1.0);

}  // namespace sdnn
