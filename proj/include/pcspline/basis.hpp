#pragma once

#include <Eigen/Dense>

namespace pcspline {

// Equally-spaced B-spline basis on [domain_lo, domain_hi]. The knot vector
// extends `degree` extra knots beyond each boundary with the same spacing
// (uniform extension, no repeated boundary knots), so all K functions are
// translation-invariant B-splines on the domain.
struct BSplineBasis {
  double domain_lo = 0.0;
  double domain_hi = 1.0;
  int degree = 3;
  int K = 0;
  Eigen::VectorXd knots;  // length K + degree + 1, non-decreasing

  double spacing() const { return (domain_hi - domain_lo) / static_cast<double>(K - degree); }
};

struct DesignMatrix {
  Eigen::MatrixXd B;  // n x K; each row sums to one for in-domain x
  Eigen::VectorXd x;
  BSplineBasis basis;
};

BSplineBasis make_basis(double domain_lo, double domain_hi, int K, int degree = 3);

// Evaluates all K basis functions at each x by the Cox-de Boor recursion.
// Knot intervals are half-open with the last one closed, so x = domain_hi
// is a valid input.
DesignMatrix evaluate_design(const BSplineBasis& basis, const Eigen::VectorXd& x);

}  // namespace pcspline
