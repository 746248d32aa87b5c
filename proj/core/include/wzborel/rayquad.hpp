#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "wzborel/error.hpp"

/// Borel-plane system on g(xi) = f(xi, -1/3) with gammahat' = 2 g:
///
///   -(1 + 3 xi) g(xi) = gammahat(xi) + int_0^xi gammahat(xi - eta) g(eta) d eta
///                       + 3 int_0^xi gammahat'(xi - eta) eta g(eta) d eta,
///
/// the quadratic term in f dropped. Solved by marching along rays from 0.
namespace wzborel::rayquad {

using Complex = std::complex<double>;

struct Ray {
    Complex endpoint;
    int steps = 1000;
    double delta = 1e-3;
};

/// Throws DomainError when the ray is unusable: odd or non-positive steps,
/// non-positive delta, zero endpoint, a node within delta of -1/3, or a real
/// endpoint within delta of some k/3.
void validate(const Ray &ray);

struct RayOptions {
    /// > 0: nodes with |xi| <= 10 h come from the exact Borel series truncated at this order.
    int taylor_boot = 0;
    double tolerance = 1e-13;
    int max_iterations = 50;
};

struct RaySample {
    Complex xi;
    Complex gamma; // gammahat
    Complex g;
};

struct RaySolution {
    std::vector<RaySample> samples; // steps + 1 entries, xi_j = j h
    Complex h;
    int max_corrector_iterations = 0;
    std::string scheme;
};

RaySolution solve_ray(const Ray &ray, const RayOptions &options = {});

/// index,arclength,re_xi,im_xi,re_gamma,im_gamma,re_g,im_g; header plus one row per sample.
void write_csv(const RaySolution &sol, std::ostream &out);

struct BoundednessStats {
    double global_max = 0.0;
    int argmax = 0;
    double head_max = 0.0; // first three quarters of the samples
    double tail_max = 0.0; // final quarter
    /// tail_max < 1.1 head_max: the late running maximum stays within 10% of what came before
    bool bounded = false;
};
BoundednessStats boundedness(const RaySolution &sol);

/// Taylor coefficients of gammahat at 0 from solutions on `rays` rays of radius r (discrete Cauchy formula).
std::vector<Complex> taylor_coefficients(double radius, int rays, int steps, int count, int threads = 1,
                                         const RayOptions &options = {});

struct RefinementRow {
    int steps = 0;
    double sup_diff = 0.0; // against the previous resolution on its nodes; 0 for the first row
    double ratio = 0.0;    // previous sup_diff / this sup_diff
    double order = 0.0;    // log2(ratio)
};

/// Needs >= 3 step counts, each double the previous.
std::vector<RefinementRow> refinement_study(const Ray &ray, const std::vector<int> &steps, int threads = 1,
                                            const RayOptions &options = {});

/// u(xi) = forcing(xi) + int_0^xi kernel(xi - eta) u(eta) d eta on the same grid and quadrature.
std::vector<Complex> solve_linear_volterra(const Ray &ray, const std::function<Complex(Complex)> &kernel,
                                           const std::function<Complex(Complex)> &forcing,
                                           const RayOptions &options = {});

/// Errors of the linear scheme on u = exp(-xi) (kernel -1, forcing 1) at the given step counts.
struct ManufacturedRow {
    int steps = 0;
    double error = 0.0;
    double order = 0.0; // log2 of the error ratio to the previous row
};
std::vector<ManufacturedRow> manufactured_study(Complex endpoint, const std::vector<int> &steps);

/// Exact Borel image of the reference ODE solution and its derivative, |xi| < 1/3.
Complex gammahat_series(Complex xi);
Complex gammahat_series_derivative(Complex xi);

struct ChenOptions {
    int nodes = 40;
    double tolerance = 1e-12;
};

/// g(xi) = -(sum_{n<=depth} Phi_n(xi))/(1 + 3 xi), Phi_0 = gammahat and
/// Phi_n(x) = int_0^x K(x, eta) Phi_{n-1}(eta) d eta with
/// K = -[gammahat(x - eta)/(3 eta + 1) + eta gammahat'(x - eta)/(eta + 1/3)].
/// Throws ConvergenceError when the last iterate is not below tolerance (depth >= 1).
Complex chen_eval(Complex xi, int depth = 60, const ChenOptions &options = {});

} // namespace wzborel::rayquad
