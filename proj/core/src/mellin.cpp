#include "wzborel/mellin.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "wzborel/numeric.hpp"

namespace wzborel::mellin {

namespace {

using Poly = FormalSeries<Rational>;

// Dense polynomial product with exact order (no truncation).
Poly poly_mul(const Poly &a, const Poly &b)
{
    return Poly::multiply(a, b, a.order() + b.order());
}

// c0 + c1 t
Poly linear(const Rational &c0, const Rational &c1)
{
    Poly p(1);
    p[0] = c0;
    p[1] = c1;
    return p;
}

Poly pad(const Poly &p, int order)
{
    if (p.order() >= order) {
        return p.truncated(order);
    }
    Poly r(order);
    for (int i = 0; i <= p.order(); ++i) {
        r[i] = p[i];
    }
    return r;
}

using Homogeneous = std::vector<ZetaPoly>; // coefficient i multiplies x^i y^{d-i}

} // namespace

BiSeries<ZetaPoly> h_taylor(int order)
{
    if (order < 0) {
        throw DomainError("h_taylor needs a non-negative order");
    }
    const int top_index = order % 2 == 1 ? order : order - 1;
    if (top_index >= 3 && top_index > max_zeta_index()) {
        throw DomainError("order " + std::to_string(order) + " needs zeta(" + std::to_string(top_index)
                          + "), above the zeta-index cap " + std::to_string(max_zeta_index()));
    }

    // Homogeneous pieces of the exponent: E_d = 2 zeta(d)/d ((x+y)^d - x^d - y^d), d odd.
    std::vector<Homogeneous> exponent(static_cast<std::size_t>(order) + 1);
    for (int d = 3; d <= order; d += 2) {
        Homogeneous e(static_cast<std::size_t>(d) + 1);
        const ZetaPoly z = ZetaPoly::zeta(d);
        for (int i = 1; i < d; ++i) {
            e[static_cast<std::size_t>(i)] = z * (Rational(2, d) * Rational::binomial(d, i));
        }
        exponent[static_cast<std::size_t>(d)] = std::move(e);
    }

    // exp by the total-degree Euler recurrence: k X_k = sum_d d E_d X_{k-d}.
    std::vector<Homogeneous> expo(static_cast<std::size_t>(order) + 1);
    expo[0] = Homogeneous{ZetaPoly(1)};
    for (int k = 1; k <= order; ++k) {
        Homogeneous xk(static_cast<std::size_t>(k) + 1);
        for (int d = 3; d <= k; d += 2) {
            const auto &e = exponent[static_cast<std::size_t>(d)];
            const auto &prev = expo[static_cast<std::size_t>(k - d)];
            for (int i = 1; i < d; ++i) {
                for (int j = 0; j <= k - d; ++j) {
                    xk[static_cast<std::size_t>(i + j)].add_product(
                        e[static_cast<std::size_t>(i)] * Rational(d), prev[static_cast<std::size_t>(j)]);
                }
            }
        }
        for (auto &c : xk) {
            c *= Rational(1, k);
        }
        expo[static_cast<std::size_t>(k)] = std::move(xk);
    }

    // Multiply by 1/(1+x+y) = sum_j (-1)^j (x+y)^j.
    BiSeries<ZetaPoly> h(order);
    for (int k = 0; k <= order; ++k) {
        Homogeneous hk(static_cast<std::size_t>(k) + 1);
        for (int j = 0; j <= k; ++j) {
            const auto &xe = expo[static_cast<std::size_t>(k - j)];
            const Rational sign = (j % 2 == 0) ? Rational(1) : Rational(-1);
            for (int i = 0; i <= j; ++i) {
                const Rational g = sign * Rational::binomial(j, i);
                for (int l = 0; l <= k - j; ++l) {
                    hk[static_cast<std::size_t>(i + l)].add_scaled(xe[static_cast<std::size_t>(l)], g);
                }
            }
        }
        for (int i = 0; i <= k; ++i) {
            h.at(i, k - i) = std::move(hk[static_cast<std::size_t>(i)]);
        }
    }
    return h;
}

PolePart ir_residue(int l, int order)
{
    if (l < 1) {
        throw DomainError("IR pole index must be >= 1");
    }
    if (order < 0) {
        throw DomainError("negative order");
    }
    // At x = -l: Res Gamma(1+x) = (-1)^{l-1}/(l-1)!, Gamma(2+x+y) -> Gamma(2-l+y),
    // Gamma(1-x) -> l!. The functional equation turns the remaining ratios into
    //   Gamma(1+l-y)/Gamma(1-y) = prod_{j=1}^{l} (j-y),
    //   Gamma(1+y)/Gamma(2-l+y) = prod_{j=0}^{l-2} (y-j).
    Poly p(0);
    p[0] = ((l - 1) % 2 == 0 ? Rational(1) : Rational(-1))
           / (Rational::factorial(static_cast<unsigned>(l - 1)) * Rational::factorial(static_cast<unsigned>(l)));
    for (int j = 1; j <= l; ++j) {
        p = poly_mul(p, linear(Rational(j), Rational(-1)));
    }
    for (int j = 0; j <= l - 2; ++j) {
        p = poly_mul(p, linear(Rational(-j), Rational(1)));
    }
    return {PoleFamily::IR, l, pad(p, order)};
}

PolePart uv_residue(int k)
{
    if (k < 1) {
        throw DomainError("UV pole index must be >= 1");
    }
    // On x + y = k: Res Gamma(1-x-y) = (-1)^{k-1}/(k-1)!, Gamma(2+x+y) -> (k+1)!, and
    //   Gamma(1+y)/Gamma(1-x) = prod_{j=1}^{k} (j-x),
    //   Gamma(1+x)/Gamma(1-y) = prod_{j=0}^{k-1} (x-j).
    Poly r(0);
    r[0] = ((k - 1) % 2 == 0 ? Rational(1) : Rational(-1))
           / (Rational::factorial(static_cast<unsigned>(k - 1)) * Rational::factorial(static_cast<unsigned>(k + 1)));
    for (int j = 1; j <= k; ++j) {
        r = poly_mul(r, linear(Rational(j), Rational(-1)));
    }
    for (int j = 0; j <= k - 1; ++j) {
        r = poly_mul(r, linear(Rational(-j), Rational(1)));
    }

    // Rewrite r(x) as Q(u) with u = x(k-x) = kx - x^2, peeling the leading even power.
    Poly u(2);
    u[1] = Rational(k);
    u[2] = Rational(-1);
    Poly q(k);
    int degree = r.order();
    while (degree >= 0) {
        if (r[degree].is_zero()) {
            --degree;
            continue;
        }
        if (degree % 2 == 1) {
            throw ConsistencyError("UV residue at x+y=" + std::to_string(k)
                                   + " is not a polynomial in xy (odd remainder of degree "
                                   + std::to_string(degree) + ")");
        }
        const int d = degree / 2;
        const Rational lead = r[degree] * (d % 2 == 0 ? Rational(1) : Rational(-1));
        q[d] = lead;
        Poly ud(0);
        ud[0] = lead;
        for (int i = 0; i < d; ++i) {
            ud = poly_mul(ud, u);
        }
        for (int i = 0; i <= ud.order(); ++i) {
            r[i] -= ud[i];
        }
        --degree;
    }
    return {PoleFamily::UV, k, q};
}

SubtractedKernel h_subtracted(int k, int order)
{
    if (k < 0) {
        throw DomainError("number of subtracted poles must be >= 0");
    }
    SubtractedKernel out{h_taylor(order), k,
                         "H minus sum_{l=1.." + std::to_string(k)
                             + "} [P_l(y)/(l+x) + P_l(x)/(l+y)], P_l the exact IR residue "
                               "truncated at total order "
                             + std::to_string(order)
                             + "; differs from other regular-part choices by rational terms only"};
    for (int l = 1; l <= k; ++l) {
        const Poly p = ir_residue(l, order).residue;
        // P_l(y)/(l+x) = sum_{i,j} p_j y^j (-1)^i x^i / l^{i+1}.
        for (int j = 0; j <= order; ++j) {
            if (p[j].is_zero()) {
                continue;
            }
            for (int i = 0; i + j <= order; ++i) {
                const Rational c = p[j] * (i % 2 == 0 ? Rational(1) : Rational(-1)) * Rational(l).pow(-(i + 1));
                out.series.at(i, j) -= ZetaPoly(c);
                out.series.at(j, i) -= ZetaPoly(c);
            }
        }
    }
    return out;
}

namespace {

void guard_poles(Complex x, Complex y, double guard)
{
    const auto check_ir = [guard](Complex z, const char *name) {
        const double nearest = std::min(-1.0, std::round(z.real()));
        if (std::abs(z - nearest) < guard) {
            const int l = static_cast<int>(-nearest);
            throw PoleProximityError(PoleFamily::IR, l,
                                     std::string("argument within pole guard of IR pole ") + name + " = "
                                         + std::to_string(-l));
        }
    };
    check_ir(x, "x");
    check_ir(y, "y");
    const Complex s = x + y;
    const double nearest = std::max(1.0, std::round(s.real()));
    if (std::abs(s - nearest) < guard) {
        const int k = static_cast<int>(nearest);
        throw PoleProximityError(PoleFamily::UV, k,
                                 "argument within pole guard of UV pole x+y = " + std::to_string(k));
    }
}

} // namespace

Complex h_eval_complex(Complex x, Complex y, double guard)
{
    guard_poles(x, y, guard);
    using numeric::log_gamma;
    const Complex s = x + y;
    const Complex log_h = log_gamma(1.0 - s) + log_gamma(1.0 + x) + log_gamma(1.0 + y)
                          - log_gamma(2.0 + s) - log_gamma(1.0 - x) - log_gamma(1.0 - y);
    return std::exp(log_h);
}

namespace {

// Nearest negative integer -l within `guard` of z, or 0.
int near_ir_pole(Complex z, double guard)
{
    const double nearest = std::min(-1.0, std::round(z.real()));
    return std::abs(z - nearest) < guard ? static_cast<int>(-nearest) : 0;
}

Complex subtracted_direct(int k, Complex x, Complex y)
{
    const Complex value = h_eval_complex(x, y, 0.0);
    Complex sub = 0.0;
    for (int l = 1; l <= k; ++l) {
        const Poly p = ir_residue(l, 2 * l - 1).residue;
        Complex py = 0.0;
        Complex px = 0.0;
        for (int j = p.order(); j >= 0; --j) {
            py = py * y + p[j].to_double();
            px = px * x + p[j].to_double();
        }
        sub += py / (static_cast<double>(l) + x) + px / (static_cast<double>(l) + y);
    }
    return value - sub;
}

// Mean over a circle around a removable point equals the value there.
template <typename F>
Complex circle_mean(F &&f, Complex centre)
{
    constexpr int points = 32;
    constexpr double radius = 0.05;
    Complex sum = 0.0;
    for (int i = 0; i < points; ++i) {
        sum += f(centre + std::polar(radius, 2.0 * std::numbers::pi * (i + 0.5) / points));
    }
    return sum / static_cast<double>(points);
}

} // namespace

Complex h_subtracted_eval_complex(int k, Complex x, Complex y, double guard)
{
    if (k < 0) {
        throw DomainError("number of subtracted poles must be >= 0");
    }
    const int lx = near_ir_pole(x, guard);
    const int ly = near_ir_pole(y, guard);
    if ((lx > k) || (ly > k)) {
        h_eval_complex(x, y, guard); // throws with the pole named
    }
    if (lx != 0) {
        return circle_mean([&](Complex z) { return h_subtracted_eval_complex(k, z, y, guard); }, Complex(-lx, 0.0));
    }
    if (ly != 0) {
        return circle_mean([&](Complex z) { return h_subtracted_eval_complex(k, x, z, guard); }, Complex(-ly, 0.0));
    }
    guard_poles(x, y, guard);
    return subtracted_direct(k, x, y);
}

} // namespace wzborel::mellin
