#include "retitherm/fundus_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace retitherm {

namespace {

// (1/i!) d^i/dalpha^i of (1+a) e^{-(1+a)s} at a = 0, without the common
// mu * e^{-s} prefactor: ((-s)^i + i (-s)^{i-1}) / i!.
double taylor_weight(int i, double s) {
  if (i == 0) return 1.0;
  double pow_prev = 1.0;  // (-s)^{i-1}
  double fact = 1.0;
  for (int k = 1; k < i; ++k) {
    pow_prev *= -s;
    fact *= k;
  }
  fact *= i;
  return (pow_prev * -s + i * pow_prev) / fact;
}

// Trapezoidal disk-average weights over r <= R_I: row entries of
// x_mean = (2/R_I^2) * integral r x dr. Exact for x linear in r.
std::vector<double> disk_weights(const AxiGrid& grid, double spot_radius) {
  const int p = grid.spot_radial_nodes - 1;
  std::vector<double> w(static_cast<std::size_t>(p) + 1, 0.0);
  for (int i = 0; i <= p; ++i) {
    double width = 0.0;
    if (i > 0) width += 0.5 * (grid.r[i] - grid.r[i - 1]);
    if (i < p) width += 0.5 * (grid.r[i + 1] - grid.r[i]);
    w[i] = 2.0 * grid.r[i] * width / (spot_radius * spot_radius);
  }
  return w;
}

}  // namespace

Eigen::SparseMatrix<double> assemble_diffusion(const AxiGrid& grid,
                                               const MaterialConstants& material) {
  material.validate();
  const double kappa = material.diffusivity();
  const int nru = grid.radial_unknowns();
  const int nz = grid.nz();
  const auto n = static_cast<Eigen::Index>(grid.n_unknowns());

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<std::size_t>(n) * 5);

  for (int jz = 1; jz <= nz - 1; ++jz) {
    const double hz_m = grid.z[jz] - grid.z[jz - 1];
    const double hz_p = grid.z[jz + 1] - grid.z[jz];
    const double wz = 0.5 * (hz_m + hz_p);
    for (int ir = 0; ir < nru; ++ir) {
      const int row = grid.unknown_index(ir, jz);
      double diag = 0.0;

      // Radial fluxes through the faces at (r_i + r_{i+1})/2.
      const double rp = 0.5 * (grid.r[ir] + grid.r[ir + 1]);
      const double hr_p = grid.r[ir + 1] - grid.r[ir];
      double area;  // integral of r dr over the control interval
      if (ir == 0) {
        area = 0.5 * rp * rp;
      } else {
        const double rm = 0.5 * (grid.r[ir - 1] + grid.r[ir]);
        const double hr_m = grid.r[ir] - grid.r[ir - 1];
        area = 0.5 * (rp * rp - rm * rm);
        const double cm = kappa * rm / (area * hr_m);
        trips.emplace_back(row, grid.unknown_index(ir - 1, jz), cm);
        diag -= cm;
      }
      const double cp = kappa * rp / (area * hr_p);
      if (ir + 1 < nru)
        trips.emplace_back(row, grid.unknown_index(ir + 1, jz), cp);
      diag -= cp;  // neighbor may be the Dirichlet ring; coupling stays

      // Axial fluxes.
      const double czm = kappa / (wz * hz_m);
      const double czp = kappa / (wz * hz_p);
      if (jz - 1 >= 1) trips.emplace_back(row, grid.unknown_index(ir, jz - 1), czm);
      if (jz + 1 <= nz - 1) trips.emplace_back(row, grid.unknown_index(ir, jz + 1), czp);
      diag -= czm + czp;

      trips.emplace_back(row, row, diag);
    }
  }

  Eigen::SparseMatrix<double> A(n, n);
  A.setFromTriplets(trips.begin(), trips.end());
  A.makeCompressed();
  return A;
}

Eigen::VectorXd cell_volumes(const AxiGrid& grid) {
  const int nru = grid.radial_unknowns();
  const int nz = grid.nz();
  Eigen::VectorXd vol(static_cast<Eigen::Index>(grid.n_unknowns()));
  for (int jz = 1; jz <= nz - 1; ++jz) {
    const double wz = 0.5 * (grid.z[jz + 1] - grid.z[jz - 1]);
    for (int ir = 0; ir < nru; ++ir) {
      const double rp = 0.5 * (grid.r[ir] + grid.r[ir + 1]);
      const double rm = (ir == 0) ? 0.0 : 0.5 * (grid.r[ir - 1] + grid.r[ir]);
      vol[grid.unknown_index(ir, jz)] =
          std::numbers::pi * (rp * rp - rm * rm) * wz;
    }
  }
  return vol;
}

namespace {

// Shared loop for the source vectors: visits every in-spot unknown in an
// absorbing layer and adds weight(s, layer_mu) to the target vector.
template <typename F>
void for_each_source_node(const AxiGrid& grid, const FundusGeometry& geometry, F&& f) {
  const auto& layers = geometry.stack.layers;
  for (int jz = 1; jz <= grid.nz() - 1; ++jz) {
    const double mu = layers[grid.layer_of_znode[jz]].absorption_per_m;
    if (mu <= 0.0) continue;
    const double s = grid.optical_depth[jz];
    for (int ir = 0; ir < grid.spot_radial_nodes; ++ir)
      f(grid.unknown_index(ir, jz), mu, s);
  }
}

// Shared loop for the volume-output rows: per absorbing layer, the
// trapezoidal z-weight times disk-average weight for every unknown.
template <typename F>
void for_each_volume_node(const AxiGrid& grid, const FundusGeometry& geometry, F&& f) {
  const auto& layers = geometry.stack.layers;
  const std::vector<double> dw = disk_weights(grid, geometry.spot_radius);
  for (std::size_t li = 0; li < layers.size(); ++li) {
    const double mu = layers[li].absorption_per_m;
    if (mu <= 0.0) continue;
    const auto span = grid.layer_spans[li];
    for (int jz = span.z_first; jz <= span.z_last; ++jz) {
      double width = 0.0;
      if (jz > span.z_first) width += 0.5 * (grid.z[jz] - grid.z[jz - 1]);
      if (jz < span.z_last) width += 0.5 * (grid.z[jz + 1] - grid.z[jz]);
      const double s = grid.optical_depth[jz];
      for (int ir = 0; ir < grid.spot_radial_nodes; ++ir) {
        const int idx = grid.unknown_index(ir, jz);
        if (idx < 0) continue;  // Dirichlet node, state is zero there
        f(idx, mu, s, width * dw[ir]);
      }
    }
  }
}

}  // namespace

std::vector<Eigen::VectorXd> source_taylor(const AxiGrid& grid,
                                           const FundusGeometry& geometry, int k_b) {
  if (k_b < 0) throw std::invalid_argument("k_b must be nonnegative");
  const double k_spot = 1.0 / (std::numbers::pi * geometry.spot_radius *
                               geometry.spot_radius *
                               geometry.material.volumetric_heat_capacity());
  const auto n = static_cast<Eigen::Index>(grid.n_unknowns());
  std::vector<Eigen::VectorXd> b(k_b + 1, Eigen::VectorXd::Zero(n));
  for_each_source_node(grid, geometry, [&](int idx, double mu, double s) {
    const double base = k_spot * mu * std::exp(-s);
    for (int i = 0; i <= k_b; ++i) b[i][idx] = base * taylor_weight(i, s);
  });
  return b;
}

std::vector<Eigen::MatrixXd> output_taylor(const AxiGrid& grid,
                                           const FundusGeometry& geometry, int k_c) {
  if (k_c < 0) throw std::invalid_argument("k_c must be nonnegative");
  const auto n = static_cast<Eigen::Index>(grid.n_unknowns());
  std::vector<Eigen::MatrixXd> c(k_c + 1, Eigen::MatrixXd::Zero(2, n));
  for_each_volume_node(grid, geometry, [&](int idx, double mu, double s, double q) {
    const double base = q * mu * std::exp(-s);
    for (int i = 0; i <= k_c; ++i) c[i](0, idx) += base * taylor_weight(i, s);
  });
  const int peak = grid.peak_unknown();
  if (peak >= 0) c[0](1, peak) = 1.0;
  return c;
}

Eigen::VectorXd FullOrderModel::input_vector(double alpha) const {
  const double k_spot = 1.0 / (std::numbers::pi * geometry.spot_radius *
                               geometry.spot_radius *
                               geometry.material.volumetric_heat_capacity());
  Eigen::VectorXd b = Eigen::VectorXd::Zero(order());
  for_each_source_node(grid, geometry, [&](int idx, double mu, double s) {
    b[idx] = k_spot * mu * (1.0 + alpha) * std::exp(-(1.0 + alpha) * s);
  });
  return b;
}

Eigen::MatrixXd FullOrderModel::output_matrix(double alpha) const {
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(2, order());
  for_each_volume_node(grid, geometry, [&](int idx, double mu, double s, double q) {
    c(0, idx) += q * mu * (1.0 + alpha) * std::exp(-(1.0 + alpha) * s);
  });
  const int peak = grid.peak_unknown();
  if (peak >= 0) c(1, peak) = 1.0;
  return c;
}

Eigen::VectorXd FullOrderModel::input_vector_taylor(double alpha) const {
  Eigen::VectorXd b = Eigen::VectorXd::Zero(order());
  double p = 1.0;
  for (const auto& bi : b_taylor) {
    b += p * bi;
    p *= alpha;
  }
  return b;
}

Eigen::MatrixXd FullOrderModel::output_matrix_taylor(double alpha) const {
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(2, order());
  double p = 1.0;
  for (const auto& ci : c_taylor) {
    c += p * ci;
    p *= alpha;
  }
  return c;
}

FullOrderModel assemble_full_order_model(const FundusGeometry& geometry,
                                         const GridSpec& spec, int k_b, int k_c) {
  FullOrderModel model;
  model.geometry = geometry;
  model.grid = build_grid(geometry, spec);
  model.A = assemble_diffusion(model.grid, geometry.material);
  model.cell_volumes = cell_volumes(model.grid);
  model.b_taylor = source_taylor(model.grid, geometry, k_b);
  model.c_taylor = output_taylor(model.grid, geometry, k_c);
  model.k_b = k_b;
  model.k_c = k_c;
  return model;
}

}  // namespace retitherm
