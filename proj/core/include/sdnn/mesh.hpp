#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace sdnn {

class MeshError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Axis-aligned rectangle [x_min, x_max] x [y_min, y_max].
struct RectDomain {
  double x_min = 0.0;
  double x_max = 1.0;
  double y_min = 0.0;
  double y_max = 1.0;

  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
};

enum class Side { bottom, right, top, left };

/// Uniform structured quadrilateral mesh carrying two node lattices: the
/// biquadratic (Q2) lattice with (2nx+1)(2ny+1) nodes and the bilinear (Q1)
/// lattice with (nx+1)(ny+1) nodes. Coordinates are generated from integer
/// indices on demand, so two meshes built from the same arguments agree bitwise.
class StructuredMesh {
 public:
  StructuredMesh(RectDomain domain, std::size_t nx, std::size_t ny);

  const RectDomain& domain() const { return domain_; }
  std::size_t nx() const { return nx_; }
  std::size_t ny() const { return ny_; }
  double h() const { return h_; }
  std::size_t num_elements() const { return nx_ * ny_; }

  // Q2 lattice: node (i, j) with 0 <= i <= 2nx, 0 <= j <= 2ny.
  std::size_t q2_cols() const { return 2 * nx_ + 1; }
  std::size_t q2_rows() const { return 2 * ny_ + 1; }
  std::size_t num_q2_nodes() const { return q2_cols() * q2_rows(); }
  std::size_t q2_index(std::size_t i, std::size_t j) const { return j * q2_cols() + i; }
  Point q2_point(std::size_t node) const;

  // Q1 lattice: node (i, j) with 0 <= i <= nx, 0 <= j <= ny.
  std::size_t q1_cols() const { return nx_ + 1; }
  std::size_t q1_rows() const { return ny_ + 1; }
  std::size_t num_q1_nodes() const { return q1_cols() * q1_rows(); }
  std::size_t q1_index(std::size_t i, std::size_t j) const { return j * q1_cols() + i; }
  Point q1_point(std::size_t node) const;

  /// Q2 nodes of element e in tensor order: local (a, b) -> 3*b + a.
  std::array<std::size_t, 9> q2_element_nodes(std::size_t e) const;
  /// Q1 nodes of element e in tensor order: local (a, b) -> 2*b + a.
  std::array<std::size_t, 4> q1_element_nodes(std::size_t e) const;
  /// Lower-left corner of element e.
  Point element_origin(std::size_t e) const;

  /// Q2 nodes on one side, ordered by increasing coordinate along the side.
  std::vector<std::size_t> q2_side_nodes(Side side) const;
  bool q2_on_side(std::size_t node, Side side) const;

 private:
  double x_at(std::size_t i, std::size_t divisions) const;
  double y_at(std::size_t j, std::size_t divisions) const;

  RectDomain domain_;
  std::size_t nx_;
  std::size_t ny_;
  double h_;
};

/// Rejects invalid rectangles, zero counts and non-square elements.
StructuredMesh build_mesh(const RectDomain& domain, std::size_t nx, std::size_t ny);

/// Matched Q2 node lists along the horizontal interface: the bottom edge of
/// the fluid mesh and the top edge of the porous mesh.
struct InterfaceTrace {
  std::vector<std::size_t> fluid_side_nodes;
  std::vector<std::size_t> porous_side_nodes;
  std::vector<double> x;  // abscissae of the paired nodes
  double y = 0.0;         // interface height
  double spacing = 0.0;   // h/2
  double length = 0.0;    // L
  double h = 0.0;

  std::size_t size() const { return x.size(); }
  std::size_t num_edges() const { return (x.size() - 1) / 2; }
};

InterfaceTrace extract_interface(const StructuredMesh& fluid, const StructuredMesh& porous);

/// Mesh size of level j in the benchmark family, h = 0.1 * 2^(1-j).
double level_mesh_size(int level);

}  // namespace sdnn
