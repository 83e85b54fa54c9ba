#include "sdnn/mesh.hpp"

#include <cmath>
#include <string>

namespace sdnn {

StructuredMesh::StructuredMesh(RectDomain domain, std::size_t nx, std::size_t ny)
    : domain_(domain), nx_(nx), ny_(ny), h_(domain.width() / static_cast<double>(nx)) {}

double StructuredMesh::x_at(std::size_t i, std::size_t divisions) const {
  if (i == divisions) return domain_.x_max;
  return domain_.x_min + domain_.width() * static_cast<double>(i) / static_cast<double>(divisions);
}

double StructuredMesh::y_at(std::size_t j, std::size_t divisions) const {
  if (j == divisions) return domain_.y_max;
  return domain_.y_min + domain_.height() * static_cast<double>(j) / static_cast<double>(divisions);
}

Point StructuredMesh::q2_point(std::size_t node) const {
  const std::size_t i = node % q2_cols();
  const std::size_t j = node / q2_cols();
  return {x_at(i, 2 * nx_), y_at(j, 2 * ny_)};
}

Point StructuredMesh::q1_point(std::size_t node) const {
  const std::size_t i = node % q1_cols();
  const std::size_t j = node / q1_cols();
  return {x_at(i, nx_), y_at(j, ny_)};
}

std::array<std::size_t, 9> StructuredMesh::q2_element_nodes(std::size_t e) const {
  const std::size_t ex = e % nx_;
  const std::size_t ey = e / nx_;
  std::array<std::size_t, 9> nodes{};
  for (std::size_t b = 0; b < 3; ++b)
    for (std::size_t a = 0; a < 3; ++a) nodes[3 * b + a] = q2_index(2 * ex + a, 2 * ey + b);
  return nodes;
}

std::array<std::size_t, 4> StructuredMesh::q1_element_nodes(std::size_t e) const {
  const std::size_t ex = e % nx_;
  const std::size_t ey = e / nx_;
  std::array<std::size_t, 4> nodes{};
  for (std::size_t b = 0; b < 2; ++b)
    for (std::size_t a = 0; a < 2; ++a) nodes[2 * b + a] = q1_index(ex + a, ey + b);
  return nodes;
}

Point StructuredMesh::element_origin(std::size_t e) const {
  return {x_at(e % nx_, nx_), y_at(e / nx_, ny_)};
}

std::vector<std::size_t> StructuredMesh::q2_side_nodes(Side side) const {
  std::vector<std::size_t> nodes;
  switch (side) {
    case Side::bottom:
      for (std::size_t i = 0; i < q2_cols(); ++i) nodes.push_back(q2_index(i, 0));
      break;
    case Side::top:
      for (std::size_t i = 0; i < q2_cols(); ++i) nodes.push_back(q2_index(i, q2_rows() - 1));
      break;
    case Side::left:
      for (std::size_t j = 0; j < q2_rows(); ++j) nodes.push_back(q2_index(0, j));
      break;
    case Side::right:
      for (std::size_t j = 0; j < q2_rows(); ++j) nodes.push_back(q2_index(q2_cols() - 1, j));
      break;
  }
  return nodes;
}

bool StructuredMesh::q2_on_side(std::size_t node, Side side) const {
  const std::size_t i = node % q2_cols();
  const std::size_t j = node / q2_cols();
  switch (side) {
    case Side::bottom: return j == 0;
    case Side::top: return j == q2_rows() - 1;
    case Side::left: return i == 0;
    case Side::right: return i == q2_cols() - 1;
  }
  return false;
}

StructuredMesh build_mesh(const RectDomain& domain, std::size_t nx, std::size_t ny) {
  if (!(domain.x_min < domain.x_max) || !(domain.y_min < domain.y_max))
    throw MeshError("build_mesh: empty or inverted rectangle");
  if (nx < 1 || ny < 1) throw MeshError("build_mesh: element counts must be >= 1");
  const double hx = domain.width() / static_cast<double>(nx);
  const double hy = domain.height() / static_cast<double>(ny);
  if (std::abs(hx - hy) > 1e-12 * std::max(hx, hy))
    throw MeshError("build_mesh: elements must be square (hx = " + std::to_string(hx) +
                    ", hy = " + std::to_string(hy) + ")");
  return StructuredMesh(domain, nx, ny);
}

InterfaceTrace extract_interface(const StructuredMesh& fluid, const StructuredMesh& porous) {
  const RectDomain& f = fluid.domain();
  const RectDomain& p = porous.domain();
  if (fluid.nx() != porous.nx())
    throw MeshError("extract_interface: fluid and porous meshes have different nx");
  const double tol = 1e-12 * std::max({1.0, std::abs(f.y_min), std::abs(f.x_max)});
  if (std::abs(f.y_min - p.y_max) > tol || std::abs(f.x_min - p.x_min) > tol ||
      std::abs(f.x_max - p.x_max) > tol)
    throw MeshError("extract_interface: fluid bottom edge does not coincide with porous top edge");

  InterfaceTrace trace;
  trace.fluid_side_nodes = fluid.q2_side_nodes(Side::bottom);
  trace.porous_side_nodes = porous.q2_side_nodes(Side::top);
  trace.x.reserve(trace.fluid_side_nodes.size());
  for (std::size_t k = 0; k < trace.fluid_side_nodes.size(); ++k) {
    const Point a = fluid.q2_point(trace.fluid_side_nodes[k]);
    const Point b = porous.q2_point(trace.porous_side_nodes[k]);
    if (std::abs(a.x - b.x) > tol || std::abs(a.y - b.y) > tol)
      throw MeshError("extract_interface: interface nodes do not coincide");
    trace.x.push_back(a.x);
  }
  trace.y = f.y_min;
  trace.h = fluid.h();
  trace.spacing = 0.5 * fluid.h();
  trace.length = f.width();
  return trace;
}

double level_mesh_size(int level) {
  if (level < 1) throw MeshError("level_mesh_size: level must be >= 1");
  return 0.1 * std::ldexp(1.0, 1 - level);
}

}  // namespace sdnn
