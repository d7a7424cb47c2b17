#pragma once

#include <Eigen/Dense>

#include "pcspline/rng.hpp"

namespace pcspline {

// r-th order random-walk structure R = D_r' D_r with cached spectral data.
// The eigendecomposition is computed once at construction; it backs the
// generalized determinant, the pseudoinverse and the dof mapping.
struct IGMRFStructure {
  int order_r = 0;
  int K = 0;
  Eigen::MatrixXd D;             // (K - r) x K forward-difference operator
  Eigen::MatrixXd R;             // K x K symmetric PSD, rank K - r
  int rank = 0;                  // K - r
  Eigen::VectorXd eigenvalues;   // ascending; the first r are exact zeros
  Eigen::MatrixXd eigenvectors;  // columns matching eigenvalues
  double logdet_plus = 0.0;      // sum of log nonzero eigenvalues
};

Eigen::MatrixXd difference_matrix(int K, int r);
IGMRFStructure structure_matrix(int K, int r);

// Intrinsic GMRF log density with generalized determinant:
//   -(rank/2) log(2 pi) + (1/2)(rank log tau + logdet_plus) - (tau/2) b'Rb
double igmrf_logdensity(const Eigen::VectorXd& beta, double tau_beta, const IGMRFStructure& S);

// Gaussian in canonical parametrization: mean Q^{-1} b, covariance Q^{-1}.
struct CanonicalGaussian {
  Eigen::VectorXd b;
  Eigen::MatrixXd Q;
};

// Cholesky-backed view of a canonical Gaussian. One factorization serves
// draws, density evaluations and the constraint correction.
class CanonicalFactor {
 public:
  explicit CanonicalFactor(const CanonicalGaussian& g);
  CanonicalFactor(Eigen::VectorXd b, const Eigen::MatrixXd& Q);

  const Eigen::VectorXd& mean() const { return mean_; }
  double half_logdet() const { return half_logdet_; }

  Eigen::VectorXd draw(RandomSource& rng) const;
  double log_density(const Eigen::VectorXd& x) const;
  Eigen::MatrixXd solve(const Eigen::MatrixXd& rhs) const;

 private:
  Eigen::LLT<Eigen::MatrixXd> llt_;
  Eigen::VectorXd mean_;
  double half_logdet_ = 0.0;
};

Eigen::VectorXd sample_canonical(const CanonicalGaussian& g, RandomSource& rng);

// Corrects a draw for the linear constraints A beta = 0:
//   beta - Q^{-1} A' (A Q^{-1} A')^{-1} A beta
// Rows of A are rescaled by their max-abs entry before use.
Eigen::VectorXd constrain(const Eigen::VectorXd& beta, const Eigen::MatrixXd& Q,
                          const Eigen::MatrixXd& A);
Eigen::VectorXd constrain(const Eigen::VectorXd& beta, const CanonicalFactor& factor,
                          const Eigen::MatrixXd& A);

}  // namespace pcspline
