#include "pcspline/basis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace pcspline {

BSplineBasis make_basis(double domain_lo, double domain_hi, int K, int degree) {
  if (!(domain_lo < domain_hi))
    throw std::invalid_argument("make_basis: degenerate domain [" + std::to_string(domain_lo) +
                                ", " + std::to_string(domain_hi) + "]");
  if (degree < 0) throw std::invalid_argument("make_basis: degree must be non-negative");
  if (K <= degree)
    throw std::invalid_argument("make_basis: need K > degree, got K=" + std::to_string(K) +
                                " degree=" + std::to_string(degree));

  BSplineBasis b;
  b.domain_lo = domain_lo;
  b.domain_hi = domain_hi;
  b.degree = degree;
  b.K = K;
  const double h = (domain_hi - domain_lo) / static_cast<double>(K - degree);
  b.knots.resize(K + degree + 1);
  for (int i = 0; i <= K + degree; ++i) b.knots[i] = domain_lo + (i - degree) * h;
  return b;
}

DesignMatrix evaluate_design(const BSplineBasis& basis, const Eigen::VectorXd& x) {
  const int n = static_cast<int>(x.size());
  const int K = basis.K;
  const int p = basis.degree;
  const double lo = basis.domain_lo;
  const double hi = basis.domain_hi;
  const double h = basis.spacing();
  const Eigen::VectorXd& t = basis.knots;

  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n, K);
  std::vector<double> N(p + 1), left(p + 1), right(p + 1);

  for (int i = 0; i < n; ++i) {
    const double xi = x[i];
    if (!(xi >= lo && xi <= hi))
      throw std::invalid_argument("evaluate_design: x[" + std::to_string(i) + "] = " +
                                  std::to_string(xi) + " outside domain [" + std::to_string(lo) +
                                  ", " + std::to_string(hi) + "]");

    // Knot span j with t[j] <= x < t[j+1]; x = hi falls in the last interval.
    int span = p + static_cast<int>(std::floor((xi - lo) / h));
    span = std::clamp(span, p, K - 1);
    if (xi < t[span]) --span;           // guards against floor() round-off at knots
    if (xi >= t[span + 1] && span < K - 1) ++span;

    // Local de Boor triangle: values of B_{span-p..span} at xi.
    N[0] = 1.0;
    for (int d = 1; d <= p; ++d) {
      left[d] = xi - t[span + 1 - d];
      right[d] = t[span + d] - xi;
      double saved = 0.0;
      for (int r = 0; r < d; ++r) {
        const double tmp = N[r] / (right[r + 1] + left[d - r]);
        N[r] = saved + right[r + 1] * tmp;
        saved = left[d - r] * tmp;
      }
      N[d] = saved;
    }
    for (int k = 0; k <= p; ++k) B(i, span - p + k) = N[k];
  }
  return DesignMatrix{std::move(B), x, basis};
}

}  // namespace pcspline
