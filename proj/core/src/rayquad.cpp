#include "wzborel/rayquad.hpp"

#include <algorithm>
#include <cmath>
#include <locale>
#include <numbers>
#include <ostream>
#include <sstream>

#include "wzborel/borel.hpp"
#include "wzborel/numeric.hpp"
#include "wzborel/parallel.hpp"
#include "wzborel/physical.hpp"

namespace wzborel::rayquad {

namespace {

void check_grid(const Ray &ray)
{
    if (ray.steps <= 0 || ray.steps % 2 != 0) {
        throw DomainError("ray needs a positive even step count, got " + std::to_string(ray.steps));
    }
    if (!(ray.delta > 0.0)) {
        throw DomainError("ray guard delta must be positive");
    }
    if (ray.endpoint == Complex(0.0, 0.0)) {
        throw DomainError("ray endpoint must be nonzero");
    }
}

// Composite weights (times h) for int_0^{jh} on j+1 nodes: trapezoid for j = 1,
// Simpson for even j, Simpson plus a 3/8 rule on the last three intervals for odd j >= 3.
void quadrature_weights(int j, std::vector<double> &w)
{
    w.assign(static_cast<std::size_t>(j) + 1, 0.0);
    if (j == 0) {
        return;
    }
    if (j == 1) {
        w[0] = w[1] = 0.5;
        return;
    }
    const int simpson_end = j % 2 == 0 ? j : j - 3;
    if (simpson_end > 0) {
        for (int i = 0; i <= simpson_end; ++i) {
            w[static_cast<std::size_t>(i)] = (i % 2 == 0) ? 2.0 / 3.0 : 4.0 / 3.0;
        }
        w[0] = 1.0 / 3.0;
        w[static_cast<std::size_t>(simpson_end)] = 1.0 / 3.0;
    }
    if (simpson_end != j) {
        const auto m = static_cast<std::size_t>(simpson_end);
        w[m] += 3.0 / 8.0;
        w[m + 1] += 9.0 / 8.0;
        w[m + 2] += 9.0 / 8.0;
        w[m + 3] += 3.0 / 8.0;
    }
}

const std::vector<double> &borel_coefficients()
{
    static const std::vector<double> coeffs = [] {
        const auto b = borel::borel_map(physical::ode_reference(201));
        std::vector<double> out;
        for (int n = 0; n <= b.order(); ++n) {
            out.push_back(b[n].to_double());
        }
        return out;
    }();
    return coeffs;
}

constexpr double kSeriesRadius = 0.25;

void check_series_radius(Complex xi)
{
    if (std::abs(xi) > kSeriesRadius) {
        throw DomainError("Borel series evaluation needs |xi| <= 0.25");
    }
}

std::string fmt(double v)
{
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os.precision(17);
    os << v;
    return os.str();
}

} // namespace

void validate(const Ray &ray)
{
    check_grid(ray);
    const Complex h = ray.endpoint / static_cast<double>(ray.steps);
    // nearest node to -1/3 along the ray
    const double t = std::clamp(std::real((-1.0 / 3.0) * std::conj(h)) / std::norm(h), 0.0,
                                static_cast<double>(ray.steps));
    for (double cand : {std::floor(t), std::ceil(t)}) {
        const Complex node = cand * h;
        if (std::abs(node + 1.0 / 3.0) < ray.delta) {
            throw DomainError("ray node " + std::to_string(static_cast<long>(cand))
                              + " lies within delta of xi = -1/3 where 1 + 3 xi vanishes");
        }
    }
    if (ray.endpoint.imag() == 0.0) {
        const double x = ray.endpoint.real();
        const double k = std::round(3.0 * std::abs(x));
        if (k >= 1.0 && std::abs(std::abs(x) - k / 3.0) <= ray.delta) {
            throw DomainError("real ray endpoint within delta of a singularity at " + std::string(x < 0 ? "-" : "")
                              + std::to_string(static_cast<int>(k)) + "/3");
        }
    }
}

Complex gammahat_series(Complex xi)
{
    check_series_radius(xi);
    const auto &b = borel_coefficients();
    Complex v = 0.0;
    for (auto it = b.rbegin(); it != b.rend(); ++it) {
        v = v * xi + *it;
    }
    return v;
}

Complex gammahat_series_derivative(Complex xi)
{
    check_series_radius(xi);
    const auto &b = borel_coefficients();
    Complex v = 0.0;
    for (int n = static_cast<int>(b.size()) - 1; n >= 1; --n) {
        v = v * xi + static_cast<double>(n) * b[static_cast<std::size_t>(n)];
    }
    return v;
}

RaySolution solve_ray(const Ray &ray, const RayOptions &options)
{
    validate(ray);
    const int n = ray.steps;
    const Complex h = ray.endpoint / static_cast<double>(n);
    std::vector<Complex> xi(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) {
        xi[static_cast<std::size_t>(j)] = static_cast<double>(j) * h;
    }
    std::vector<Complex> G(xi.size());
    std::vector<Complex> g(xi.size());
    G[0] = 1.0;
    g[0] = -1.0;

    RaySolution sol;
    sol.h = h;
    sol.scheme = "composite Simpson (3/8 tail on odd nodes, trapezoid at the first node), fixed-point corrector "
                 "to tolerance "
                 + fmt(options.tolerance) + "; quadratic term in f dropped";

    int start = 1;
    if (options.taylor_boot > 0) {
        const auto &b = borel_coefficients();
        const int K = std::min<int>(options.taylor_boot, static_cast<int>(b.size()) - 1);
        for (int j = 1; j <= std::min(10, n); ++j) {
            const Complex z = xi[static_cast<std::size_t>(j)];
            if (std::abs(z) > kSeriesRadius) {
                break;
            }
            Complex gv = 0.0;
            Complex dv = 0.0;
            for (int k = K; k >= 0; --k) {
                gv = gv * z + b[static_cast<std::size_t>(k)];
                if (k >= 1) {
                    dv = dv * z + static_cast<double>(k) * b[static_cast<std::size_t>(k)];
                }
            }
            G[static_cast<std::size_t>(j)] = gv;
            g[static_cast<std::size_t>(j)] = 0.5 * dv;
            start = j + 1;
        }
        sol.scheme += "; Taylor start to order " + std::to_string(K);
    }

    std::vector<double> w;
    for (int j = start; j <= n; ++j) {
        quadrature_weights(j, w);
        const auto J = static_cast<std::size_t>(j);
        Complex known_G = 0.0;
        Complex hist1 = 0.0;
        Complex hist2 = 0.0;
        for (std::size_t i = 0; i < J; ++i) {
            known_G += w[i] * g[i];
        }
        for (std::size_t i = 1; i < J; ++i) {
            hist1 += w[i] * G[J - i] * g[i];
            hist2 += w[i] * g[J - i] * xi[i] * g[i];
        }
        known_G = 1.0 + 2.0 * h * known_G;
        hist1 *= h;
        hist2 *= 6.0 * h;
        const double wj = w[J];
        const double w0 = w[0];
        const Complex prefactor = 1.0 + 3.0 * xi[J];

        Complex x = j >= 2 ? 2.0 * g[J - 1] - g[J - 2] : g[J - 1];
        Complex Gj = 0.0;
        int it = 0;
        for (;; ++it) {
            if (it >= options.max_iterations) {
                throw ConvergenceError("corrector did not converge at node " + std::to_string(j));
            }
            Gj = known_G + 2.0 * h * wj * x;
            const Complex c1 = hist1 + h * (w0 * Gj * g[0] + wj * G[0] * x);
            const Complex c2 = hist2 + 6.0 * h * wj * g[0] * xi[J] * x;
            const Complex next = -(Gj + c1 + c2) / prefactor;
            if (!std::isfinite(next.real()) || !std::isfinite(next.imag())) {
                throw ConvergenceError("non-finite value at node " + std::to_string(j));
            }
            const bool done = std::abs(next - x) <= options.tolerance * std::max(1.0, std::abs(next));
            x = next;
            if (done) {
                break;
            }
        }
        sol.max_corrector_iterations = std::max(sol.max_corrector_iterations, it + 1);
        g[J] = x;
        G[J] = known_G + 2.0 * h * wj * x;
    }

    sol.samples.reserve(xi.size());
    for (std::size_t j = 0; j < xi.size(); ++j) {
        sol.samples.push_back({xi[j], G[j], g[j]});
    }
    return sol;
}

void write_csv(const RaySolution &sol, std::ostream &out)
{
    out << "index,arclength,re_xi,im_xi,re_gamma,im_gamma,re_g,im_g\n";
    const double step = std::abs(sol.h);
    for (std::size_t j = 0; j < sol.samples.size(); ++j) {
        const auto &s = sol.samples[j];
        out << j << ',' << fmt(step * static_cast<double>(j)) << ',' << fmt(s.xi.real()) << ','
            << fmt(s.xi.imag()) << ',' << fmt(s.gamma.real()) << ',' << fmt(s.gamma.imag()) << ','
            << fmt(s.g.real()) << ',' << fmt(s.g.imag()) << '\n';
    }
}

BoundednessStats boundedness(const RaySolution &sol)
{
    BoundednessStats st;
    const std::size_t count = sol.samples.size();
    const std::size_t split = (3 * count) / 4;
    for (std::size_t j = 0; j < count; ++j) {
        const double a = std::abs(sol.samples[j].gamma);
        if (a > st.global_max) {
            st.global_max = a;
            st.argmax = static_cast<int>(j);
        }
        if (j < split) {
            st.head_max = std::max(st.head_max, a);
        } else {
            st.tail_max = std::max(st.tail_max, a);
        }
    }
    st.bounded = std::isfinite(st.global_max) && st.tail_max < 1.1 * st.head_max;
    return st;
}

std::vector<Complex> taylor_coefficients(double radius, int rays, int steps, int count, int threads,
                                         const RayOptions &options)
{
    if (!(radius > 0.0) || rays < 1 || count < 1 || count > rays) {
        throw DomainError("taylor_coefficients needs radius > 0 and 1 <= count <= rays");
    }
    std::vector<Complex> values(static_cast<std::size_t>(rays));
    parallel_for(rays, threads, [&](int k) {
        const Complex end = std::polar(radius, 2.0 * std::numbers::pi * k / rays);
        values[static_cast<std::size_t>(k)] = solve_ray(Ray{end, steps, 1e-3}, options).samples.back().gamma;
    });
    std::vector<Complex> coeffs;
    for (int m = 0; m < count; ++m) {
        Complex s = 0.0;
        for (int k = 0; k < rays; ++k) {
            s += values[static_cast<std::size_t>(k)] * std::polar(1.0, -2.0 * std::numbers::pi * m * k / rays);
        }
        coeffs.push_back(s / static_cast<double>(rays) / std::pow(radius, m));
    }
    return coeffs;
}

std::vector<RefinementRow> refinement_study(const Ray &ray, const std::vector<int> &steps, int threads,
                                            const RayOptions &options)
{
    if (steps.size() < 3) {
        throw DomainError("refinement_study needs at least three step counts");
    }
    for (std::size_t i = 1; i < steps.size(); ++i) {
        if (steps[i] != 2 * steps[i - 1]) {
            throw DomainError("refinement_study step counts must double");
        }
    }
    std::vector<RaySolution> sols(steps.size());
    parallel_for(static_cast<int>(steps.size()), threads, [&](int i) {
        Ray r = ray;
        r.steps = steps[static_cast<std::size_t>(i)];
        sols[static_cast<std::size_t>(i)] = solve_ray(r, options);
    });
    std::vector<RefinementRow> rows;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        RefinementRow row;
        row.steps = steps[i];
        if (i > 0) {
            const auto &coarse = sols[i - 1].samples;
            const auto &fine = sols[i].samples;
            for (std::size_t j = 0; j < coarse.size(); ++j) {
                row.sup_diff = std::max(row.sup_diff, std::abs(fine[2 * j].gamma - coarse[j].gamma));
            }
            if (i > 1 && row.sup_diff > 0.0) {
                row.ratio = rows.back().sup_diff / row.sup_diff;
                row.order = std::log2(row.ratio);
            }
        }
        rows.push_back(row);
    }
    return rows;
}

std::vector<Complex> solve_linear_volterra(const Ray &ray, const std::function<Complex(Complex)> &kernel,
                                           const std::function<Complex(Complex)> &forcing,
                                           const RayOptions &options)
{
    check_grid(ray);
    const int n = ray.steps;
    const Complex h = ray.endpoint / static_cast<double>(n);
    std::vector<Complex> k(static_cast<std::size_t>(n) + 1);
    for (int m = 0; m <= n; ++m) {
        k[static_cast<std::size_t>(m)] = kernel(static_cast<double>(m) * h);
    }
    std::vector<Complex> u(k.size());
    u[0] = forcing(0.0);
    std::vector<double> w;
    for (int j = 1; j <= n; ++j) {
        quadrature_weights(j, w);
        const auto J = static_cast<std::size_t>(j);
        Complex known = 0.0;
        for (std::size_t i = 0; i < J; ++i) {
            known += w[i] * k[J - i] * u[i];
        }
        known = forcing(static_cast<double>(j) * h) + h * known;
        Complex x = u[J - 1];
        for (int it = 0;; ++it) {
            if (it >= options.max_iterations) {
                throw ConvergenceError("linear corrector did not converge at node " + std::to_string(j));
            }
            const Complex next = known + h * w[J] * k[0] * x;
            const bool done = std::abs(next - x) <= options.tolerance * std::max(1.0, std::abs(next));
            x = next;
            if (done) {
                break;
            }
        }
        u[J] = x;
    }
    return u;
}

std::vector<ManufacturedRow> manufactured_study(Complex endpoint, const std::vector<int> &steps)
{
    std::vector<ManufacturedRow> rows;
    for (int s : steps) {
        const Ray ray{endpoint, s, 1e-3};
        const auto u = solve_linear_volterra(
            ray, [](Complex) { return Complex(-1.0, 0.0); }, [](Complex) { return Complex(1.0, 0.0); });
        const Complex h = endpoint / static_cast<double>(s);
        ManufacturedRow row;
        row.steps = s;
        for (std::size_t j = 0; j < u.size(); ++j) {
            row.error = std::max(row.error, std::abs(u[j] - std::exp(-static_cast<double>(j) * h)));
        }
        if (!rows.empty() && row.error > 0.0) {
            row.order = std::log2(rows.back().error / row.error);
        }
        rows.push_back(row);
    }
    return rows;
}

Complex chen_eval(Complex xi, int depth, const ChenOptions &options)
{
    if (depth < 0) {
        throw DomainError("chen_eval depth must be >= 0");
    }
    check_series_radius(xi);
    if (xi == Complex(0.0, 0.0)) {
        return -1.0;
    }
    const int M = std::max(options.nodes, 4);
    // Chebyshev-Lobatto nodes in t on [0, 1] and barycentric weights.
    std::vector<double> t(static_cast<std::size_t>(M));
    std::vector<double> lambda(static_cast<std::size_t>(M));
    for (int i = 0; i < M; ++i) {
        t[static_cast<std::size_t>(i)] = 0.5 * (1.0 - std::cos(std::numbers::pi * i / (M - 1)));
        lambda[static_cast<std::size_t>(i)] = ((i % 2 == 0) ? 1.0 : -1.0) * ((i == 0 || i == M - 1) ? 0.5 : 1.0);
    }
    const auto rule = numeric::gauss_legendre(M);
    const auto basis = [&](double s, std::vector<double> &out) {
        out.assign(static_cast<std::size_t>(M), 0.0);
        double denom = 0.0;
        for (int k = 0; k < M; ++k) {
            const double d = s - t[static_cast<std::size_t>(k)];
            if (d == 0.0) {
                std::fill(out.begin(), out.end(), 0.0);
                out[static_cast<std::size_t>(k)] = 1.0;
                return;
            }
            out[static_cast<std::size_t>(k)] = lambda[static_cast<std::size_t>(k)] / d;
            denom += out[static_cast<std::size_t>(k)];
        }
        for (auto &v : out) {
            v /= denom;
        }
    };

    // Phi_n at the nodes is A applied to Phi_{n-1}.
    std::vector<Complex> A(static_cast<std::size_t>(M * M), 0.0);
    std::vector<double> L;
    for (int i = 1; i < M; ++i) {
        const Complex x = t[static_cast<std::size_t>(i)] * xi;
        for (int q = 0; q < M; ++q) {
            const double s = 0.5 * (rule.nodes[static_cast<std::size_t>(q)] + 1.0) * t[static_cast<std::size_t>(i)];
            const Complex eta = s * xi;
            const Complex K = -(gammahat_series(x - eta) / (3.0 * eta + 1.0)
                                + eta * gammahat_series_derivative(x - eta) / (eta + 1.0 / 3.0));
            const Complex wq = 0.5 * rule.weights[static_cast<std::size_t>(q)] * x * K;
            basis(s, L);
            for (int k = 0; k < M; ++k) {
                A[static_cast<std::size_t>(i * M + k)] += wq * L[static_cast<std::size_t>(k)];
            }
        }
    }

    std::vector<Complex> phi(static_cast<std::size_t>(M));
    for (int i = 0; i < M; ++i) {
        phi[static_cast<std::size_t>(i)] = gammahat_series(t[static_cast<std::size_t>(i)] * xi);
    }
    Complex total = phi.back();
    double last = std::abs(total);
    std::vector<Complex> next(phi.size());
    for (int level = 1; level <= depth; ++level) {
        last = 0.0;
        for (int i = 0; i < M; ++i) {
            Complex acc = 0.0;
            for (int k = 0; k < M; ++k) {
                acc += A[static_cast<std::size_t>(i * M + k)] * phi[static_cast<std::size_t>(k)];
            }
            next[static_cast<std::size_t>(i)] = acc;
            last = std::max(last, std::abs(acc));
        }
        phi.swap(next);
        total += phi.back();
        if (last <= options.tolerance * 1e-3 * std::max(1.0, std::abs(total))) {
            break;
        }
    }
    // depth 0 is the bare approximation and has no increment to test
    if (depth > 0 && last > options.tolerance * std::max(1.0, std::abs(total))) {
        throw ConvergenceError("chen_eval not converged at this xi: last iterate " + fmt(last));
    }
    return -total / (1.0 + 3.0 * xi);
}

} // namespace wzborel::rayquad
