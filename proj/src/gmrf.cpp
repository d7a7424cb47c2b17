#include "pcspline/gmrf.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace pcspline {

namespace {
constexpr double kLog2Pi = 1.8378770664093454836;
constexpr double kRankTol = 1e-10;  // relative to the largest eigenvalue
}  // namespace

Eigen::MatrixXd difference_matrix(int K, int r) {
  if (r < 1) throw std::invalid_argument("difference_matrix: order r must be >= 1");
  if (K <= r)
    throw std::invalid_argument("difference_matrix: need K > r, got K=" + std::to_string(K) +
                                " r=" + std::to_string(r));
  // r-th forward-difference stencil: (-1)^(r-k) * C(r, k), k = 0..r
  Eigen::VectorXd stencil(r + 1);
  double coef = 1.0;
  for (int k = 0; k <= r; ++k) {
    stencil[k] = ((r - k) % 2 == 0 ? coef : -coef);
    coef = coef * (r - k) / (k + 1);
  }
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(K - r, K);
  for (int i = 0; i < K - r; ++i)
    for (int k = 0; k <= r; ++k) D(i, i + k) = stencil[k];
  return D;
}

IGMRFStructure structure_matrix(int K, int r) {
  IGMRFStructure S;
  S.order_r = r;
  S.K = K;
  S.D = difference_matrix(K, r);
  S.R = S.D.transpose() * S.D;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S.R);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("structure_matrix: eigendecomposition failed");
  S.eigenvalues = es.eigenvalues();
  S.eigenvectors = es.eigenvectors();

  const double tol = kRankTol * S.eigenvalues[K - 1];
  int nullity = 0;
  S.logdet_plus = 0.0;
  for (int i = 0; i < K; ++i) {
    if (S.eigenvalues[i] <= tol) {
      S.eigenvalues[i] = 0.0;
      ++nullity;
    } else {
      S.logdet_plus += std::log(S.eigenvalues[i]);
    }
  }
  S.rank = K - nullity;
  if (S.rank != K - r)
    throw std::runtime_error("structure_matrix: numerical rank " + std::to_string(S.rank) +
                             " != K - r = " + std::to_string(K - r));
  return S;
}

double igmrf_logdensity(const Eigen::VectorXd& beta, double tau_beta, const IGMRFStructure& S) {
  if (!(tau_beta > 0.0)) throw std::invalid_argument("igmrf_logdensity: tau_beta must be > 0");
  if (beta.size() != S.K)
    throw std::invalid_argument("igmrf_logdensity: beta has length " +
                                std::to_string(beta.size()) + ", expected " + std::to_string(S.K));
  const double quad = beta.dot(S.R * beta);
  return -0.5 * S.rank * kLog2Pi + 0.5 * (S.rank * std::log(tau_beta) + S.logdet_plus) -
         0.5 * tau_beta * quad;
}

CanonicalFactor::CanonicalFactor(const CanonicalGaussian& g) : CanonicalFactor(g.b, g.Q) {}

CanonicalFactor::CanonicalFactor(Eigen::VectorXd b, const Eigen::MatrixXd& Q) : llt_(Q) {
  if (llt_.info() != Eigen::Success)
    throw std::runtime_error("CanonicalFactor: precision matrix is not positive definite");
  mean_ = llt_.solve(b);
  half_logdet_ = llt_.matrixLLT().diagonal().array().log().sum();  // log|Q| / 2
}

Eigen::VectorXd CanonicalFactor::draw(RandomSource& rng) const {
  const auto n = mean_.size();
  Eigen::VectorXd z(n);
  for (Eigen::Index i = 0; i < n; ++i) z[i] = rng.normal();
  // x = mean + L^{-T} z has covariance Q^{-1}
  return mean_ + llt_.matrixU().solve(z);
}

double CanonicalFactor::log_density(const Eigen::VectorXd& x) const {
  const Eigen::VectorXd diff = x - mean_;
  const double quad = (llt_.matrixU() * diff).squaredNorm();
  return -0.5 * static_cast<double>(x.size()) * kLog2Pi + half_logdet_ - 0.5 * quad;
}

Eigen::MatrixXd CanonicalFactor::solve(const Eigen::MatrixXd& rhs) const {
  return llt_.solve(rhs);
}

Eigen::VectorXd sample_canonical(const CanonicalGaussian& g, RandomSource& rng) {
  return CanonicalFactor(g).draw(rng);
}

Eigen::VectorXd constrain(const Eigen::VectorXd& beta, const CanonicalFactor& factor,
                          const Eigen::MatrixXd& A) {
  const auto m = A.rows();
  if (m >= beta.size())
    throw std::invalid_argument("constrain: need fewer constraints than coefficients");
  // Rescale each constraint row by its max-abs entry for conditioning.
  Eigen::MatrixXd As = A;
  for (Eigen::Index i = 0; i < m; ++i) {
    const double s = As.row(i).cwiseAbs().maxCoeff();
    if (s <= 0.0) throw std::runtime_error("constrain: constraint row " + std::to_string(i) +
                                           " is identically zero (rank-deficient constraints)");
    As.row(i) /= s;
  }
  const Eigen::MatrixXd V = factor.solve(As.transpose());  // Q^{-1} A'
  const Eigen::MatrixXd W = As * V;                        // A Q^{-1} A'
  Eigen::LLT<Eigen::MatrixXd> lltW(W);
  if (lltW.info() != Eigen::Success)
    throw std::runtime_error("constrain: A Q^{-1} A' is singular (rank-deficient constraints)");
  return beta - V * lltW.solve(As * beta);
}

Eigen::VectorXd constrain(const Eigen::VectorXd& beta, const Eigen::MatrixXd& Q,
                          const Eigen::MatrixXd& A) {
  return constrain(beta, CanonicalFactor(Eigen::VectorXd::Zero(Q.rows()), Q), A);
}

}  // namespace pcspline
