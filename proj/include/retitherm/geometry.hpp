#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace retitherm {

/// One tissue layer of the eye fundus. Absorption is the nominal
/// coefficient mu0 in 1/m; the estimated parameter alpha rescales it
/// as mu = (1 + alpha) * mu0.
struct Layer {
  std::string name;
  double thickness_m = 0.0;
  double absorption_per_m = 0.0;
};

/// Ordered layer stack, retina first, sclera last, along increasing
/// depth z. The light enters at z = z_begin through the retina.
struct LayerStack {
  std::vector<Layer> layers;

  /// Porcine averages: retina 190 um / RPE 6 um (mu 1204e2 1/m) /
  /// unpigmented 4 um / choroid 400 um (mu 270e2 1/m) / sclera 139 um.
  static LayerStack porcine_default();

  double total_thickness() const;
  void validate() const;
};

/// Thermal constants of the tissue, taken equal to water.
struct MaterialConstants {
  double density = 993.0;         // kg/m^3
  double heat_capacity = 4176.0;  // J/(kg K)
  double conductivity = 0.627;    // W/(m K)

  double diffusivity() const { return conductivity / (density * heat_capacity); }
  double volumetric_heat_capacity() const { return density * heat_capacity; }
  void validate() const;
};

/// Cylindrical computational domain: an irradiated inner cylinder of
/// radius spot_radius inside an outer cylinder of radius outer_radius,
/// spanning the layer stack axially. Homogeneous Dirichlet conditions
/// hold on the outer boundary (r = outer_radius, z = z_begin, z = z_end).
struct FundusGeometry {
  double spot_radius = 1e-4;   // R_I, m
  double outer_radius = 1e-3;  // m, must be > 2 * spot_radius
  double z_begin = 0.0;        // m
  LayerStack stack;
  MaterialConstants material;

  double z_end() const { return z_begin + stack.total_thickness(); }
  static FundusGeometry porcine_default();
  void validate() const;
};

/// Grid resolution request. radial_intervals covers [0, outer_radius];
/// the inner part [0, 2 R_I] is kept uniform (so that R_I falls on a
/// node) and the remainder grows geometrically. cells_per_layer gives
/// the axial subdivision of each layer; every count must be >= 2 and
/// the strongest-absorbing layer needs an even count so its mid-depth
/// (the peak-temperature location) is a node.
struct GridSpec {
  int radial_intervals = 30;
  std::vector<int> cells_per_layer;

  static GridSpec default_for(const LayerStack& stack);
};

/// Tensor-product grid in the r-z plane. Boundary nodes (r = R_out,
/// z = z_b, z = z_e) carry no unknown; the symmetry axis r = 0 does.
struct AxiGrid {
  std::vector<double> r;  // r[0] = 0 .. r[nr] = outer_radius
  std::vector<double> z;  // z[0] = z_begin .. z[nz] = z_end

  std::vector<int> layer_of_znode;     // half-open convention: interface node
                                       // belongs to the layer starting there
  std::vector<double> optical_depth;   // s(z_j) = integral of mu0 from z_begin

  struct LayerSpan {
    int z_first = 0;  // node index of the layer's upper interface
    int z_last = 0;   // node index of the layer's lower interface
  };
  std::vector<LayerSpan> layer_spans;

  int spot_radial_nodes = 0;  // nodes with r <= spot_radius
  int inner_intervals = 0;    // uniform intervals covering [0, 2 R_I]
  int peak_radial = 0;        // always 0 (beam axis)
  int peak_axial = -1;        // z-node index of the peak location, -1 if none

  int nr() const { return static_cast<int>(r.size()) - 1; }
  int nz() const { return static_cast<int>(z.size()) - 1; }
  int radial_unknowns() const { return nr(); }      // ir = 0 .. nr-1
  int axial_unknowns() const { return nz() - 1; }   // jz = 1 .. nz-1
  std::size_t n_unknowns() const {
    return static_cast<std::size_t>(radial_unknowns()) * axial_unknowns();
  }

  /// Flat index of the unknown at (ir, jz); -1 for Dirichlet nodes.
  int unknown_index(int ir, int jz) const {
    if (ir < 0 || ir >= radial_unknowns() || jz < 1 || jz > nz() - 1) return -1;
    return (jz - 1) * radial_unknowns() + ir;
  }
  int peak_unknown() const {
    return peak_axial < 0 ? -1 : unknown_index(peak_radial, peak_axial);
  }
};

/// Builds the graded tensor grid. Throws std::invalid_argument when the
/// requested counts cannot align the layer interfaces or place the
/// peak-temperature node.
AxiGrid build_grid(const FundusGeometry& geometry, const GridSpec& spec);

}  // namespace retitherm
