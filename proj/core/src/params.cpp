#include "sdnn/params.hpp"

namespace sdnn {

void ProblemParams::validate() const {
  if (!(mu_f > 0.0)) throw ConfigError("mu_f must be positive");
  if (!(eta1 > 0.0) || !(eta2 > 0.0)) throw ConfigError("permeabilities must be positive");
  if (!(alpha_bj >= 0.0)) throw ConfigError("alpha_BJ must be non-negative");
}

CaseLabel parse_case_label(const std::string& text) {
  if (text == "a") return CaseLabel::a;
  if (text == "b") return CaseLabel::b;
  if (text == "c") return CaseLabel::c;
  if (text == "d") return CaseLabel::d;
  throw ConfigError("unknown case label '" + text + "' (expected a, b, c or d)");
}

char to_char(CaseLabel label) {
  switch (label) {
    case CaseLabel::a: return 'a';
    case CaseLabel::b: return 'b';
    case CaseLabel::c: return 'c';
    case CaseLabel::d: return 'd';
  }
  return '?';
}

std::size_t CaseConfig::elements_per_side() const {
  return static_cast<std::size_t>(std::lround(0.5 / h()));
}

CaseConfig make_case(CaseLabel label, int level, double alpha_bj) {
  if (level < 1 || level > 4) throw ConfigError("mesh level must be in 1..4");
  double mu = 0.0;
  double eta = 0.0;
  switch (label) {
    case CaseLabel::a: mu = 10.0; eta = 4e-10; break;
    case CaseLabel::b: mu = 1.0; eta = 4e-7; break;
    case CaseLabel::c: mu = 10.0; eta = 4e-9; break;
    case CaseLabel::d: mu = 0.2; eta = 2e-7; break;
  }
  CaseConfig config;
  config.label = label;
  config.level = level;
  config.params = ProblemParams{mu, eta, eta, alpha_bj};
  config.params.validate();
  return config;
}

}  // namespace sdnn
