#pragma once

#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "retitherm/geometry.hpp"

namespace retitherm {

/// Spatially discretized heat model. The diffusion operator A is scaled
/// by k/(rho*Cp) so states are in kelvin and time in seconds; the input
/// vectors map laser power in watts to K/s. Taylor lists expand the
/// absorption dependence about alpha = 0:
///   b(alpha) = sum_i alpha^i b_i,   C(alpha) = sum_i alpha^i c_i,
/// with c_i row 0 the volume output and row 1 the peak output (the peak
/// row is zero for i >= 1).
struct FullOrderModel {
  FundusGeometry geometry;
  AxiGrid grid;
  Eigen::SparseMatrix<double> A;          // 1/s
  std::vector<Eigen::VectorXd> b_taylor;  // k_b + 1 entries
  std::vector<Eigen::MatrixXd> c_taylor;  // k_c + 1 entries, each 2 x n_f
  Eigen::VectorXd cell_volumes;           // m^3, diagonal of the volume weight
  int k_b = 8;
  int k_c = 8;

  Eigen::Index order() const { return A.rows(); }

  /// Exact (non-truncated) input vector b(alpha).
  Eigen::VectorXd input_vector(double alpha) const;
  /// Exact 2 x n_f output matrix C(alpha).
  Eigen::MatrixXd output_matrix(double alpha) const;
  /// Truncated Taylor sums, matching what the reduced model inherits.
  Eigen::VectorXd input_vector_taylor(double alpha) const;
  Eigen::MatrixXd output_matrix_taylor(double alpha) const;
};

/// Finite-volume discretization of (k/(rho Cp)) * (u_rr + u_r/r + u_zz)
/// on the graded grid, with the symmetry closure at r = 0 and Dirichlet
/// rows eliminated. Self-adjoint under the cell-volume inner product.
Eigen::SparseMatrix<double> assemble_diffusion(const AxiGrid& grid,
                                               const MaterialConstants& material);

/// Cylindrical cell volumes of all unknowns (the diagonal W_vol).
Eigen::VectorXd cell_volumes(const AxiGrid& grid);

/// Taylor coefficients of the Lambert-Beer source about alpha = 0.
std::vector<Eigen::VectorXd> source_taylor(const AxiGrid& grid,
                                           const FundusGeometry& geometry, int k_b);

/// Taylor coefficients of the stacked (volume, peak) output operator.
std::vector<Eigen::MatrixXd> output_taylor(const AxiGrid& grid,
                                           const FundusGeometry& geometry, int k_c);

/// Full assembly: grid, diffusion, source and output expansions.
FullOrderModel assemble_full_order_model(const FundusGeometry& geometry,
                                         const GridSpec& spec, int k_b = 8, int k_c = 8);

}  // namespace retitherm
