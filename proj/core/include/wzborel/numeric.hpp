#pragma once

#include <complex>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace wzborel::numeric {

using Complex = std::complex<double>;

/// A logarithm of Gamma(z) (not necessarily the principal branch).
///
/// Stirling series after upward recurrence to Re z >= 15; reflection for Re z < 1/2.
/// exp(log_gamma(z)) is accurate to a few ulps times |z| for |z| <= 100.
Complex log_gamma(Complex z);

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
QuadratureRule gauss_legendre(int n);

struct IntegrationResult {
    Complex value;
    double error_estimate = 0.0;
    int evaluations = 0;
};

/// Adaptive Gauss-Kronrod (7/15) integral of f along the straight segment a -> b.
IntegrationResult integrate_segment(const std::function<Complex(Complex)> &f, Complex a, Complex b,
                                    double abs_tol = 1e-13, double rel_tol = 1e-12,
                                    int max_subdivisions = 2000);

/// Integral along the polyline through `points`.
IntegrationResult integrate_path(const std::function<Complex(Complex)> &f,
                                 std::span<const Complex> points, double abs_tol = 1e-13,
                                 double rel_tol = 1e-12);

} // namespace wzborel::numeric
