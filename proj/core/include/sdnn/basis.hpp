#pragma once

#include <array>
#include <span>

namespace sdnn::basis {

/// Gauss-Legendre rule on [0, 1].
struct GaussRule {
  std::array<double, 5> points{};
  std::array<double, 5> weights{};
  int size = 0;
};

GaussRule gauss_rule(int n);

// 1D Lagrange bases on [0, 1]; quadratic nodes at 0, 1/2, 1.
inline double quad(int a, double t) {
  switch (a) {
    case 0: return 2.0 * (t - 0.5) * (t - 1.0);
    case 1: return -4.0 * t * (t - 1.0);
    default: return 2.0 * t * (t - 0.5);
  }
}
inline double quad_d(int a, double t) {
  switch (a) {
    case 0: return 4.0 * t - 3.0;
    case 1: return -8.0 * t + 4.0;
    default: return 4.0 * t - 1.0;
  }
}
inline double lin(int a, double t) { return a == 0 ? 1.0 - t : t; }
inline double lin_d(int a, double) { return a == 0 ? -1.0 : 1.0; }

/// Values and physical gradients of the 9 Q2 and 4 Q1 shape functions at a
/// reference point of a square element of size h.
struct ShapeValues {
  std::array<double, 9> q2{};
  std::array<double, 9> q2_dx{};
  std::array<double, 9> q2_dy{};
  std::array<double, 4> q1{};
  std::array<double, 4> q1_dx{};
  std::array<double, 4> q1_dy{};
};

ShapeValues evaluate_shapes(double s, double t, double h);

}  // namespace sdnn::basis
