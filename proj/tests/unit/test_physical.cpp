#include <doctest.h>

#include "test_support.hpp"
#include "wzborel/mellin.hpp"
#include "wzborel/physical.hpp"

using namespace wzborel;
using QS = FormalSeries<Rational>;
using ZS = FormalSeries<ZetaPoly>;

namespace {

QS poly(std::vector<long> c)
{
    std::vector<Rational> r(c.begin(), c.end());
    return QS(r);
}


QS times_a(const QS &f) { return f.shifted(1).truncated(f.order()); }

QS dilate(const QS &f, const Rational &lambda)
{
    QS r(f.order());
    for (int n = 0; n <= f.order(); ++n) {
        r[n] = f[n] * lambda.pow(n);
    }
    return r;
}

// Functional iteration gamma <- a sum_{n,m} gamma_n gamma_m h_{n,m}, gamma_0 = 1, towers built
// from gamma_{k+1} = gamma (gamma_k + 3 a gamma_k'); one more correct order per sweep.
ZS sd_oracle(int N)
{
    const auto h = mellin::h_taylor(N);
    ZS gamma(N);
    for (int sweep = 0; sweep < N; ++sweep) {
        std::vector<ZS> tower{ZS::monomial(0, ZetaPoly(1), N), gamma};
        for (int k = 1; k < N; ++k) {
            const auto &gk = tower.back();
            ZS next(N);
            for (int n = 0; n <= N; ++n) {
                for (int i = 0; i <= n; ++i) {
                    next[n] += gamma[i] * gk[n - i] * Rational(1 + 3 * (n - i));
                }
            }
            tower.push_back(next);
        }
        ZS sum(N);
        for (int n = 0; n < N; ++n) {
            for (int m = 0; n + m < N; ++m) {
                if (h.at(n, m).is_zero()) {
                    continue;
                }
                for (int p = 0; p <= N; ++p) {
                    for (int q = 0; p + q <= N; ++q) {
                        sum[p + q] += h.at(n, m) * tower[n][p] * tower[m][q];
                    }
                }
            }
        }
        ZS next(N);
        for (int p = 0; p < N; ++p) {
            next[p + 1] = sum[p];
        }
        gamma = next;
    }
    return gamma;
}

} // namespace

TEST_CASE("renormalization group tower")
{
    const auto t1 = physical::rg_tower(poly({0, 1}), 2);
    CHECK(t1.gamma(2) == poly({0, 0, 4}));
    const auto t2 = physical::rg_tower(poly({0, 1, -2}), 2);
    CHECK(t2.gamma(2) == poly({0, 0, 4, -22}));
    const auto t = physical::rg_tower(physical::ode_reference(12), 6);
    for (int k = 1; k <= 6; ++k) {
        CHECK(t.gamma(k).valuation() == k);
    }
    CHECK_THROWS_AS(t.gamma(7), DomainError);
    CHECK_THROWS_AS(physical::rg_tower(poly({1, 1}), 2), DomainError);
}

TEST_CASE("tower commutes with dilation of the coupling")
{
    testing::Gen gen(testing::test_seed());
    INFO(testing::seed_note());
    for (int trial = 0; trial < 10; ++trial) {
        const auto g = gen.series(10, 1);
        const Rational lambda = gen.rational(5, 3) + Rational(6);
        const auto a = physical::rg_tower(dilate(g, lambda), 4);
        const auto b = physical::rg_tower(g, 4);
        for (int k = 1; k <= 4; ++k) {
            CHECK(a.gamma(k) == dilate(b.gamma(k), lambda));
        }
    }
}

TEST_CASE("Schwinger-Dyson fixed point")
{
    const auto g = physical::sd_solve(6);
    CHECK(g[0].is_zero());
    CHECK(g[1] == ZetaPoly(1));
    CHECK(g[2] == ZetaPoly(-2));
    CHECK(g[3] == ZetaPoly(14));
    CHECK(g[4] == ZetaPoly(-160) + ZetaPoly(16) * ZetaPoly::zeta(3));
    const auto oracle = sd_oracle(6);
    for (int n = 0; n <= 6; ++n) {
        CHECK(g[n] == oracle[n]);
    }
    CHECK(physical::sd_rhs(physical::sd_solve(9), mellin::h_taylor(8)) == physical::sd_solve(9));
    CHECK_THROWS_AS(physical::sd_solve(0), DomainError);
}

TEST_CASE("parallel solve is bit-identical")
{
    CHECK(physical::sd_solve(12, {4}) == physical::sd_solve(12, {1}));
    CHECK(physical::sd_solve(12, {3}) == physical::sd_solve(12));
}

TEST_CASE("three coupled equations")
{
    const int N = 25;
    const auto s = physical::approx_solve(N);
    CHECK(s.F[0] == Rational(1));
    CHECK(s.F[1] == Rational(-1));
    CHECK(s.gamma[1] == Rational(1));
    CHECK(s.gamma[2] == Rational(-2));
    CHECK(s.L[2] == Rational(1));
    // residuals of F = 1 - g(3a d + 1)F, L = g^2 + g(3a d + 2)L, g = 2aF - a - 2ag(F-1) + a(L - g^2)/2
    const auto one = QS::monomial(0, 1, N);
    const auto &g = s.gamma;
    const auto F_rhs = one - (g * (euler(s.F).scaled(3) + s.F)).truncated(N);
    const auto L_rhs = (g * g + g * (euler(s.L).scaled(3) + s.L.scaled(2))).truncated(N);
    const auto a = QS::monomial(1, 1, N);
    const auto G_rhs = times_a(s.F.scaled(2)) - a - times_a((g * (s.F - one)).truncated(N).scaled(2))
                       + times_a((s.L - (g * g).truncated(N))).scaled(Rational(1, 2));
    CHECK(F_rhs == s.F);
    CHECK(L_rhs == s.L);
    CHECK(G_rhs == s.gamma);
    // agreement with the full model through a^2
    const auto full = physical::sd_solve(2);
    for (int n = 0; n <= 2; ++n) {
        CHECK(ZetaPoly(s.gamma[n]) == full[n]);
    }
}

TEST_CASE("pole towers and normalizations")
{
    const auto s = physical::approx_solve(15);
    using physical::Normalization;
    const auto L1 = physical::lk_tower(1, s.gamma, 15, Normalization::PerPole);
    CHECK(L1[0].is_zero());
    CHECK(L1[1].is_zero());
    CHECK(L1[2] == Rational(1, 2));
    CHECK(physical::lk_tower(1, s.gamma, 15, Normalization::ThreeEquation) == s.L);
    CHECK(L1.scaled(2) == s.L);
    for (int k = 1; k <= 4; ++k) {
        CHECK(physical::lk_tower(k, s.gamma, 12).valuation() >= 2);
        const auto Fk = physical::fk_tower(k, s.gamma, 12);
        CHECK(Fk[0] == Rational(1, k));
        CHECK(physical::fk_tower(k, s.gamma, 12, Normalization::ThreeEquation)[0] == Rational(1));
    }
    CHECK(physical::fk_tower(1, s.gamma, 15) == s.F);
    CHECK_THROWS_AS(physical::lk_tower(2, s.gamma, 10, Normalization::ThreeEquation), DomainError);
    CHECK(physical::to_string(Normalization::ThreeEquation) != physical::to_string(Normalization::PerPole));
    // the zeta-valued gamma is accepted too
    const auto Lz = physical::lk_tower(1, physical::sd_solve(8), 8);
    CHECK(Lz[2] == ZetaPoly(Rational(1, 2)));
}

TEST_CASE("reference ODE")
{
    const int N = 40;
    const auto g = physical::ode_reference(N);
    CHECK(g[1] == Rational(1));
    CHECK(g[2] == Rational(-2));
    // g = a - a g + 2 g^2 - 3 a g g'
    const auto a = QS::monomial(1, 1, N);
    const auto gg = (g * g).truncated(N);
    const auto rhs = a - times_a(g) + gg.scaled(2) - times_a((g * derivative(g)).truncated(N)).scaled(3);
    CHECK(rhs.truncated(N) == g);
}

TEST_CASE("ratio tables")
{
    QS geo(20);
    for (int n = 0; n <= 20; ++n) {
        geo[n] = Rational(2).pow(n);
    }
    for (const auto &r : physical::ratio_table(geo, physical::AffineLaw::parse("2"))) {
        CHECK(r.deviation == 0.0);
        CHECK(!r.gap);
    }
    auto gapped = geo;
    gapped[15] = Rational(0);
    const auto rows = physical::ratio_table(gapped, physical::AffineLaw::parse("2"));
    int gaps = 0;
    for (const auto &r : rows) {
        gaps += r.gap ? 1 : 0;
    }
    CHECK(gaps == 2);
    CHECK_THROWS_AS(physical::ratio_table(poly({1, 2, 3}), physical::AffineLaw::parse("3n")), DomainError);

    const auto law = physical::AffineLaw::parse("-(3n+2)");
    CHECK(law(4) == -14.0);
    CHECK(physical::AffineLaw::parse("3n")(5) == 15.0);
    CHECK(physical::AffineLaw::parse("-3n-5")(1) == -8.0);
    CHECK_THROWS_AS(physical::AffineLaw::parse("3m+"), DomainError);

    // deviation O(1/n): n times the deviation stays bounded
    const auto ode_rows = physical::ratio_table(physical::ode_reference(200), law);
    double worst = 0.0;
    for (const auto &r : ode_rows) {
        if (r.n >= 30) {
            worst = std::max(worst, r.n * r.deviation);
        }
    }
    CHECK(worst < 1.0);
    // F deviation decreasing in n
    const auto F_rows = physical::ratio_table(physical::approx_solve(120).F, physical::AffineLaw::parse("-(3n+5)"));
    CHECK(F_rows[100].deviation < F_rows[50].deviation);
    CHECK(F_rows[50].deviation < F_rows[20].deviation);
}
