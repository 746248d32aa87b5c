#include "wzborel/numeric.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <queue>

#include "wzborel/error.hpp"

namespace wzborel::numeric {

namespace {

constexpr double kPi = std::numbers::pi;

// B_{2k} / (2k (2k-1)) for k = 1..10.
constexpr std::array<double, 10> kStirling = {
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
};

Complex log_gamma_stirling(Complex z)
{
    const Complex inv = 1.0 / z;
    const Complex inv2 = inv * inv;
    Complex term = inv;
    Complex sum = 0.0;
    for (double c : kStirling) {
        sum += c * term;
        term *= inv2;
    }
    return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi) + sum;
}

// sin(pi z) with the real part reduced exactly modulo 2 first.
Complex sin_pi(Complex z)
{
    const double shift = 2.0 * std::round(z.real() / 2.0);
    return std::sin(kPi * Complex(z.real() - shift, z.imag()));
}

} // namespace

Complex log_gamma(Complex z)
{
    if (z.real() < 0.5) {
        return std::log(kPi) - std::log(sin_pi(z)) - log_gamma(1.0 - z);
    }
    Complex product = 1.0;
    Complex w = z;
    while (w.real() < 15.0) {
        product *= w;
        w += 1.0;
    }
    return log_gamma_stirling(w) - std::log(product);
}

QuadratureRule gauss_legendre(int n)
{
    if (n < 1) {
        throw DomainError("Gauss-Legendre rule needs n >= 1");
    }
    QuadratureRule rule;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                break;
            }
        }
        // Recompute derivative at the converged node.
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[static_cast<std::size_t>(i)] = -x;
        rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        rule.weights[static_cast<std::size_t>(i)] = w;
        rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    if (n % 2 == 1) {
        rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
    }
    return rule;
}

namespace {

// QUADPACK qk15 abscissae and weights.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

struct Panel {
    Complex a;
    Complex b;
    Complex value;
    double error;
    bool operator<(const Panel &other) const { return error < other.error; }
};

Panel kronrod(const std::function<Complex(Complex)> &f, Complex a, Complex b)
{
    const Complex centre = 0.5 * (a + b);
    const Complex half = 0.5 * (b - a);
    const Complex fc = f(centre);
    Complex kronrod_sum = kWgk[7] * fc;
    Complex gauss_sum = kWg[3] * fc;
    for (std::size_t j = 0; j < 7; ++j) {
        const Complex dx = half * kXgk[j];
        const Complex fsum = f(centre - dx) + f(centre + dx);
        kronrod_sum += kWgk[j] * fsum;
        if (j % 2 == 1) {
            gauss_sum += kWg[j / 2] * fsum;
        }
    }
    const Complex value = kronrod_sum * half;
    const double error = std::abs((kronrod_sum - gauss_sum) * half);
    return {a, b, value, error};
}

} // namespace

IntegrationResult integrate_segment(const std::function<Complex(Complex)> &f, Complex a, Complex b,
                                    double abs_tol, double rel_tol, int max_subdivisions)
{
    std::priority_queue<Panel> panels;
    Panel first = kronrod(f, a, b);
    Complex total = first.value;
    double total_error = first.error;
    panels.push(first);
    int evaluations = 15;
    int subdivisions = 0;
    while (total_error > std::max(abs_tol, rel_tol * std::abs(total))) {
        if (subdivisions++ >= max_subdivisions) {
            throw ConvergenceError("adaptive quadrature exceeded its subdivision budget");
        }
        const Panel worst = panels.top();
        panels.pop();
        const Complex mid = 0.5 * (worst.a + worst.b);
        const Panel left = kronrod(f, worst.a, mid);
        const Panel right = kronrod(f, mid, worst.b);
        evaluations += 30;
        total += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
    }
    // Re-sum to shed the cancellation error accumulated by incremental updates.
    Complex sum = 0.0;
    double err = 0.0;
    while (!panels.empty()) {
        sum += panels.top().value;
        err += panels.top().error;
        panels.pop();
    }
    return {sum, err, evaluations};
}

IntegrationResult integrate_path(const std::function<Complex(Complex)> &f,
                                 std::span<const Complex> points, double abs_tol, double rel_tol)
{
    IntegrationResult result{0.0, 0.0, 0};
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        const auto piece = integrate_segment(f, points[i], points[i + 1], abs_tol, rel_tol);
        result.value += piece.value;
        result.error_estimate += piece.error_estimate;
        result.evaluations += piece.evaluations;
    }
    return result;
}

} // namespace wzborel::numeric
