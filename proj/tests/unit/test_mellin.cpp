#include <doctest.h>

#include <cmath>
#include <numbers>

#include "test_support.hpp"
#include "wzborel/mellin.hpp"

using namespace wzborel;
using mellin::Complex;

namespace {

// Dense triangular table t[m][n], m + n <= N, with naive truncated products.
using Table = std::vector<std::vector<ZetaPoly>>;

Table zero_table(int N)
{
    Table t(static_cast<std::size_t>(N + 1));
    for (int m = 0; m <= N; ++m) {
        t[static_cast<std::size_t>(m)].assign(static_cast<std::size_t>(N - m + 1), ZetaPoly());
    }
    return t;
}

Table mul(const Table &a, const Table &b, int N)
{
    Table r = zero_table(N);
    for (int m1 = 0; m1 <= N; ++m1) {
        for (int n1 = 0; m1 + n1 <= N; ++n1) {
            if (a[m1][n1].is_zero()) {
                continue;
            }
            for (int m2 = 0; m1 + n1 + m2 <= N; ++m2) {
                for (int n2 = 0; m1 + n1 + m2 + n2 <= N; ++n2) {
                    r[m1 + m2][n1 + n2] += a[m1][n1] * b[m2][n2];
                }
            }
        }
    }
    return r;
}

// H = 1/(1+x+y) exp(E) with E = sum_{odd d >= 3} 2 zeta(d)/d ((x+y)^d - x^d - y^d), exp as sum E^k/k!.
Table kernel_oracle(int N)
{
    Table E = zero_table(N);
    for (int d = 3; d <= N; d += 2) {
        const ZetaPoly c = ZetaPoly::zeta(d) * Rational(2, d);
        for (int m = 1; m < d; ++m) {
            E[m][d - m] += c * Rational::binomial(static_cast<unsigned>(d), static_cast<unsigned>(m));
        }
    }
    Table expE = zero_table(N);
    expE[0][0] = ZetaPoly(1);
    Table power = expE;
    for (int k = 1; k <= N / 3; ++k) {
        power = mul(power, E, N);
        for (int m = 0; m <= N; ++m) {
            for (int n = 0; m + n <= N; ++n) {
                expE[m][n] += power[m][n] * (Rational(1) / Rational::factorial(static_cast<unsigned>(k)));
            }
        }
    }
    Table geo = zero_table(N);
    for (int j = 0; j <= N; ++j) {
        for (int m = 0; m <= j; ++m) {
            geo[m][j - m] = ZetaPoly(Rational::binomial(static_cast<unsigned>(j), static_cast<unsigned>(m))
                                     * Rational(j % 2 ? -1 : 1));
        }
    }
    return mul(geo, expE, N);
}

// (1/2 pi i) times the contour integral of f around c, trapezoid rule on a circle.
Complex circle_integral(const std::function<Complex(Complex)> &f, Complex c, double r, int points = 64)
{
    Complex acc = 0.0;
    for (int j = 0; j < points; ++j) {
        const Complex w = std::polar(r, 2.0 * std::numbers::pi * j / points);
        acc += f(c + w) * w;
    }
    return acc / static_cast<double>(points);
}

Complex eval_poly(const FormalSeries<Rational> &p, Complex z)
{
    Complex acc = 0.0;
    for (int k = p.order(); k >= 0; --k) {
        acc = acc * z + p[k].to_double();
    }
    return acc;
}

} // namespace

TEST_CASE("Taylor coefficients of the kernel")
{
    const auto h = mellin::h_taylor(10);
    CHECK(h.at(0, 0) == ZetaPoly(1));
    CHECK(h.at(1, 0) == ZetaPoly(-1));
    CHECK(h.at(2, 1) == ZetaPoly(-3) + ZetaPoly(2) * ZetaPoly::zeta(3));
    CHECK(h.is_symmetric());
    for (int m = 0; m <= 10; ++m) {
        CHECK(h.at(m, 0) == ZetaPoly(m % 2 ? -1 : 1));
        for (int n = 0; m + n <= 10; ++n) {
            CHECK(h.at(m, n).weight_w() <= Weight(m + n));
        }
    }
}

TEST_CASE("Taylor coefficients against the naive exponential oracle")
{
    const int N = 12;
    const auto h = mellin::h_taylor(N);
    const auto oracle = kernel_oracle(N);
    for (int m = 0; m <= N; ++m) {
        for (int n = 0; m + n <= N; ++n) {
            INFO("m=" << m << " n=" << n);
            CHECK(h.at(m, n) == oracle[m][n]);
        }
    }
}

TEST_CASE("the zeta cap bounds the Taylor order")
{
    CHECK_NOTHROW(mellin::h_taylor(30));
    CHECK_THROWS_AS(mellin::h_taylor(33), DomainError);
}

TEST_CASE("complex evaluation")
{
    CHECK(std::abs(mellin::h_eval_complex(0.0, 0.0) - 1.0) < 1e-15);
    CHECK(std::abs(mellin::h_eval_complex(0.3, 0.0) - 1.0 / 1.3) < 1e-14);
    double prev = INFINITY;
    for (double t : {1.0, 2.0, 4.0, 8.0}) {
        const double v = std::abs(mellin::h_eval_complex({0.0, t}, {0.0, t}));
        CHECK(v < prev);
        prev = v;
    }
    // truncated Taylor sum, N = 20
    const auto h = mellin::h_taylor(20);
    testing::Gen gen(testing::test_seed());
    for (int trial = 0; trial < 20; ++trial) {
        const Complex x = std::polar(gen.real(0.0, 0.1), gen.real(0.0, 6.28));
        const Complex y = std::polar(gen.real(0.0, 0.1), gen.real(0.0, 6.28));
        Complex sum = 0.0;
        for (int m = 0; m <= 20; ++m) {
            for (int n = 0; m + n <= 20; ++n) {
                sum += to_double(h.at(m, n)) * std::pow(x, m) * std::pow(y, n);
            }
        }
        CHECK(std::abs(sum - mellin::h_eval_complex(x, y)) < 1e-8);
    }
}

TEST_CASE("pole proximity is reported with the pole")
{
    try {
        (void)mellin::h_eval_complex(-1.0 + 1e-5, 0.2);
        FAIL("expected PoleProximityError");
    } catch (const mellin::PoleProximityError &e) {
        CHECK(e.family() == mellin::PoleFamily::IR);
        CHECK(e.index() == 1);
    }
    try {
        (void)mellin::h_eval_complex(0.4, 1.6 + 1e-5);
        FAIL("expected PoleProximityError");
    } catch (const mellin::PoleProximityError &e) {
        CHECK(e.family() == mellin::PoleFamily::UV);
        CHECK(e.index() == 2);
    }
    CHECK_NOTHROW(mellin::h_eval_complex(-1.0 + 1e-2, 0.2, 1e-3));
}

TEST_CASE("IR residues")
{
    CHECK(mellin::ir_residue(1, 6).residue[0] == Rational(1));
    for (int k = 2; k <= 6; ++k) {
        CHECK(mellin::ir_residue(k, 12).residue[1] == Rational(-1, k - 1));
    }
    // numeric residue of H at x = -2 for several y
    const auto P2 = mellin::ir_residue(2, 8).residue;
    for (double y : {-0.3, 0.0, 0.15, 0.4}) {
        const auto res = circle_integral([&](Complex x) { return mellin::h_eval_complex(x, y); }, -2.0, 0.25);
        CHECK(std::abs(res - eval_poly(P2, y)) < 1e-10);
    }
    CHECK(mellin::ir_residue(3, 2).residue.order() == 2);
}

TEST_CASE("UV residues")
{
    const auto Q1 = mellin::uv_residue(1).residue;
    CHECK(Q1 == FormalSeries<Rational>(std::vector<Rational>{Rational(0), Rational(1, 2)}));
    for (int k = 1; k <= 6; ++k) {
        const auto Q = mellin::uv_residue(k).residue;
        CHECK(Q[0].is_zero());
        CHECK(!Q[Q.order()].is_zero());
        CHECK(Q.order() == k);
    }
    // H ~ Q_k(xy)/(k - x - y): Q_k = -(residue in x at x = k - y)
    for (int k : {2, 3}) {
        const auto Q = mellin::uv_residue(k).residue;
        for (double y : {-0.35, 0.1, 0.3}) {
            const auto res = circle_integral([&](Complex x) { return mellin::h_eval_complex(x, y); }, k - y, 0.25);
            const Complex x0 = k - y;
            CHECK(std::abs(-res - eval_poly(Q, x0 * y)) < 1e-9);
        }
    }
}

TEST_CASE("pole-subtracted kernel")
{
    const auto h = mellin::h_taylor(10);
    CHECK(mellin::h_subtracted(0, 10).series.truncated(10).is_symmetric());
    const auto s0 = mellin::h_subtracted(0, 10).series;
    for (int m = 0; m <= 10; ++m) {
        for (int n = 0; m + n <= 10; ++n) {
            CHECK(s0.at(m, n) == h.at(m, n));
        }
    }
    const auto s2 = mellin::h_subtracted(2, 10);
    CHECK(s2.subtracted_poles == 2);
    CHECK(!s2.convention.empty());
    for (int m = 0; m <= 10; ++m) {
        for (int n = 0; m + n <= 10; ++n) {
            CHECK((s2.series.at(m, n) - h.at(m, n)).is_rational());
        }
    }
    // H(x,0) - P_1(0)/(1+x) - P_1(x) near x = -1, evaluated directly
    const auto P1 = mellin::ir_residue(1, 30).residue;
    const Complex x = -1.0 + 1e-4;
    const Complex direct = mellin::h_eval_complex(x, 0.0, 1e-6) - P1[0].to_double() / (1.0 + x) - eval_poly(P1, x);
    const Complex at_pole = mellin::h_subtracted_eval_complex(1, -1.0, 0.0);
    CHECK(std::isfinite(at_pole.real()));
    CHECK(std::abs(at_pole - direct) < 1e-3);
}
