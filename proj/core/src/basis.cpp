#include "sdnn/basis.hpp"

#include <cmath>
#include <stdexcept>

namespace sdnn::basis {

GaussRule gauss_rule(int n) {
  GaussRule rule;
  rule.size = n;
  // Symmetric rules on [-1, 1], mapped to [0, 1] below.
  std::array<double, 5> x{};
  std::array<double, 5> w{};
  switch (n) {
    case 2:
      x = {-1.0 / std::sqrt(3.0), 1.0 / std::sqrt(3.0)};
      w = {1.0, 1.0};
      break;
    case 3:
      x = {-std::sqrt(0.6), 0.0, std::sqrt(0.6)};
      w = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
      break;
    case 4: {
      const double a = std::sqrt(3.0 / 7.0 - 2.0 / 7.0 * std::sqrt(6.0 / 5.0));
      const double b = std::sqrt(3.0 / 7.0 + 2.0 / 7.0 * std::sqrt(6.0 / 5.0));
      const double wa = (18.0 + std::sqrt(30.0)) / 36.0;
      const double wb = (18.0 - std::sqrt(30.0)) / 36.0;
      x = {-b, -a, a, b};
      w = {wb, wa, wa, wb};
      break;
    }
    case 5: {
      const double a = std::sqrt(5.0 - 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
      const double b = std::sqrt(5.0 + 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
      const double wa = (322.0 + 13.0 * std::sqrt(70.0)) / 900.0;
      const double wb = (322.0 - 13.0 * std::sqrt(70.0)) / 900.0;
      x = {-b, -a, 0.0, a, b};
      w = {wb, wa, 128.0 / 225.0, wa, wb};
      break;
    }
    default:
      throw std::invalid_argument("gauss_rule: supported sizes are 2..5");
  }
  for (int i = 0; i < n; ++i) {
    rule.points[i] = 0.5 * (x[i] + 1.0);
    rule.weights[i] = 0.5 * w[i];
  }
  return rule;
}

ShapeValues evaluate_shapes(double s, double t, double h) {
  ShapeValues v;
  const double inv_h = 1.0 / h;
  for (int b = 0; b < 3; ++b)
    for (int a = 0; a < 3; ++a) {
      const int k = 3 * b + a;
      v.q2[k] = quad(a, s) * quad(b, t);
      v.q2_dx[k] = quad_d(a, s) * quad(b, t) * inv_h;
      v.q2_dy[k] = quad(a, s) * quad_d(b, t) * inv_h;
    }
  for (int b = 0; b < 2; ++b)
    for (int a = 0; a < 2; ++a) {
      const int k = 2 * b + a;
      v.q1[k] = lin(a, s) * lin(b, t);
      v.q1_dx[k] = lin_d(a, s) * lin(b, t) * inv_h;
      v.q1_dy[k] = lin(a, s) * lin_d(b, t) * inv_h;
    }
  return v;
}

}  // namespace sdnn::basis
