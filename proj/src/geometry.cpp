#include "retitherm/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace retitherm {

LayerStack LayerStack::porcine_default() {
  LayerStack s;
  s.layers = {
      {"retina", 190e-6, 0.0},
      {"rpe", 6e-6, 1204e2},
      {"unpigmented", 4e-6, 0.0},
      {"choroid", 400e-6, 270e2},
      {"sclera", 139e-6, 0.0},
  };
  return s;
}

double LayerStack::total_thickness() const {
  return std::accumulate(layers.begin(), layers.end(), 0.0,
                         [](double acc, const Layer& l) { return acc + l.thickness_m; });
}

void LayerStack::validate() const {
  if (layers.empty()) throw std::invalid_argument("layer stack is empty");
  for (const Layer& l : layers) {
    if (!(l.thickness_m > 0.0))
      throw std::invalid_argument("layer '" + l.name + "' has non-positive thickness");
    if (l.absorption_per_m < 0.0)
      throw std::invalid_argument("layer '" + l.name + "' has negative absorption");
  }
}

void MaterialConstants::validate() const {
  if (!(density > 0.0) || !(heat_capacity > 0.0) || !(conductivity > 0.0))
    throw std::invalid_argument("material constants must be strictly positive");
}

FundusGeometry FundusGeometry::porcine_default() {
  FundusGeometry g;
  g.stack = LayerStack::porcine_default();
  return g;
}

void FundusGeometry::validate() const {
  stack.validate();
  material.validate();
  if (!(spot_radius > 0.0)) throw std::invalid_argument("spot radius must be positive");
  if (!(outer_radius > 2.0 * spot_radius))
    throw std::invalid_argument("outer radius must exceed twice the spot radius");
}

GridSpec GridSpec::default_for(const LayerStack& stack) {
  GridSpec spec;
  spec.radial_intervals = 30;
  spec.cells_per_layer.clear();
  for (const Layer& l : stack.layers) {
    // Aim for ~10 um cells, clamped to [2, 24]; absorbing layers get an
    // even count so their mid-depth can carry the peak node.
    int n = std::clamp(static_cast<int>(std::lround(l.thickness_m / 10e-6)), 2, 24);
    if (l.absorption_per_m > 0.0 && n % 2 != 0) ++n;
    spec.cells_per_layer.push_back(n);
  }
  return spec;
}

namespace {

// Finds q > 0 with sum_{i=1..m} h0*q^i = length (geometric stretch that
// continues an inner spacing h0 over `length`). Monotone in q.
double solve_stretch_ratio(double h0, int m, double length) {
  auto total = [&](double q) {
    double s = 0.0, t = h0;
    for (int i = 0; i < m; ++i) {
      t *= q;
      s += t;
    }
    return s;
  };
  if (std::abs(total(1.0) - length) < 1e-14 * length) return 1.0;
  double lo = 1e-3, hi = 1e3;
  if (total(lo) > length || total(hi) < length)
    throw std::invalid_argument("cannot fit radial grid: stretch ratio out of range");
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    (total(mid) < length ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

AxiGrid build_grid(const FundusGeometry& geometry, const GridSpec& spec) {
  geometry.validate();
  const auto& layers = geometry.stack.layers;
  if (spec.cells_per_layer.size() != layers.size())
    throw std::invalid_argument("cells_per_layer count does not match layer count");
  if (spec.radial_intervals < 8)
    throw std::invalid_argument("need at least 8 radial intervals");
  for (std::size_t i = 0; i < layers.size(); ++i)
    if (spec.cells_per_layer[i] < 2)
      throw std::invalid_argument("layer '" + layers[i].name + "' needs at least 2 cells");

  // Peak-temperature layer: strongest absorber (if any). Its mid-depth
  // must land on a node, which needs an even cell count.
  int peak_layer = -1;
  double mu_max = 0.0;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    if (layers[i].absorption_per_m > mu_max) {
      mu_max = layers[i].absorption_per_m;
      peak_layer = static_cast<int>(i);
    }
  }
  if (peak_layer >= 0 && spec.cells_per_layer[peak_layer] % 2 != 0)
    throw std::invalid_argument("layer '" + layers[peak_layer].name +
                                "' carries the peak node and needs an even cell count");

  AxiGrid grid;

  // Axial nodes: per-layer uniform spacing, interfaces exact.
  std::vector<double> interface_z(layers.size() + 1);
  std::vector<double> interface_s(layers.size() + 1);
  interface_z[0] = geometry.z_begin;
  interface_s[0] = 0.0;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    interface_z[i + 1] = interface_z[i] + layers[i].thickness_m;
    interface_s[i + 1] = interface_s[i] + layers[i].thickness_m * layers[i].absorption_per_m;
  }
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const int cells = spec.cells_per_layer[i];
    const double h = layers[i].thickness_m / cells;
    AxiGrid::LayerSpan span;
    span.z_first = static_cast<int>(grid.z.size());
    for (int c = 0; c < cells; ++c) {
      const double zc = (c == 0) ? interface_z[i] : interface_z[i] + c * h;
      grid.z.push_back(zc);
      grid.layer_of_znode.push_back(static_cast<int>(i));
      grid.optical_depth.push_back(interface_s[i] +
                                   layers[i].absorption_per_m * (zc - interface_z[i]));
    }
    span.z_last = static_cast<int>(grid.z.size());  // filled below once the
    grid.layer_spans.push_back(span);               // next interface exists
  }
  grid.z.push_back(interface_z.back());
  grid.layer_of_znode.push_back(static_cast<int>(layers.size()) - 1);
  grid.optical_depth.push_back(interface_s.back());
  for (std::size_t i = 0; i < layers.size(); ++i)
    grid.layer_spans[i].z_last = (i + 1 < layers.size()) ? grid.layer_spans[i + 1].z_first
                                                         : static_cast<int>(grid.z.size()) - 1;

  if (peak_layer >= 0) {
    grid.peak_axial =
        grid.layer_spans[peak_layer].z_first + spec.cells_per_layer[peak_layer] / 2;
  }

  // Radial nodes: uniform over [0, 2 R_I] (even count, so R_I is a node),
  // geometric stretch outside.
  const int nr = spec.radial_intervals;
  int inner = 2 * static_cast<int>(std::lround(0.3 * nr));
  inner = std::clamp(inner, 4, nr - 2);
  const double r_inner = 2.0 * geometry.spot_radius;
  const double h_in = r_inner / inner;
  grid.inner_intervals = inner;
  grid.spot_radial_nodes = inner / 2 + 1;
  for (int i = 0; i <= inner; ++i) grid.r.push_back(i * h_in);
  const int outer = nr - inner;
  const double q = solve_stretch_ratio(h_in, outer, geometry.outer_radius - r_inner);
  double h = h_in;
  for (int i = 0; i < outer; ++i) {
    h *= q;
    grid.r.push_back(grid.r.back() + h);
  }
  grid.r.back() = geometry.outer_radius;

  if (grid.axial_unknowns() < 1)
    throw std::invalid_argument("grid has no interior axial node");
  if (grid.peak_axial == 0 || grid.peak_axial == grid.nz())
    throw std::invalid_argument("peak node falls on a Dirichlet boundary");
  return grid;
}

}  // namespace retitherm
