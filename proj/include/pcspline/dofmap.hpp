#pragma once

#include <Eigen/Dense>

#include "pcspline/basis.hpp"
#include "pcspline/gmrf.hpp"

namespace pcspline {

// Effective-degrees-of-freedom mapping d(tau_beta | tau_eps) for one design.
// Built from the eigenvalues of R (B'B)^{-1}; the grid tabulates d over
// log(tau_beta) at tau_eps = 1 and seeds the numeric inverse.
struct DofMapping {
  Eigen::VectorXd eigenvalues_v;  // length K, ascending, exactly r zeros
  int K = 0;
  int r = 0;
  Eigen::VectorXd grid_logtau;  // regular grid on [-20, 20]
  Eigen::VectorXd grid_d;       // d on the grid, tau_eps = 1; strictly decreasing

  double grid_step() const { return grid_logtau[1] - grid_logtau[0]; }
};

DofMapping build_mapping(const Eigen::MatrixXd& B, const IGMRFStructure& S, int grid_size = 2001);
DofMapping build_mapping(const DesignMatrix& design, const IGMRFStructure& S, int grid_size = 2001);

// d = sum_k 1 / (1 + (tau_beta / tau_eps) v_k), computed from the stored
// eigenvalues (never from grid interpolation).
double dof(const DofMapping& m, double tau_beta, double tau_eps);

// Numeric inverse: the tau_beta with d(tau_beta | tau_eps) = U. Root-found
// once at tau_eps = 1 and rescaled, since d depends only on the ratio
// tau_beta / tau_eps.
double inverse_dof(const DofMapping& m, double U, double tau_eps);

// Direct bisection at the given tau_eps, no rescaling shortcut. Backs the
// sampler's literal re-inversion mode and the scaling-identity checks.
double inverse_dof_direct(const DofMapping& m, double U, double tau_eps);

// sqrt(diag(B (tau_beta^{-1} R^+) B')), the marginal standard deviation of
// the smooth B beta under the intrinsic prior (R^+ = Moore-Penrose inverse).
Eigen::VectorXd marginal_sd_curve(const Eigen::MatrixXd& B, const IGMRFStructure& S,
                                  double tau_beta);
Eigen::VectorXd marginal_sd_curve(const DesignMatrix& design, const IGMRFStructure& S,
                                  double tau_beta);

}  // namespace pcspline
