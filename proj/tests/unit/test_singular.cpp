#include <doctest.h>

#include <cmath>

#include "test_support.hpp"
#include "wzborel/physical.hpp"
#include "wzborel/singular.hpp"

using namespace wzborel;
using singular::TransSeries;
using QS = FormalSeries<Rational>;

namespace {

QS mono(int n, int order) { return QS::monomial(n, 1, order); }

TransSeries random_trans(testing::Gen &gen, const std::shared_ptr<const singular::SymbolTable> &table, int order)
{
    TransSeries t(table, gen.series(order));
    for (const auto &[id, sym] : *table) {
        if (gen.coin(0.8)) {
            t.set_sector(id, gen.series(order, 1));
        }
    }
    return t;
}

// Taylor coefficients of c (1 - xi/xi0)^e, generalized binomial series.
std::vector<double> binomial_coefficients(double c, double e, double xi0, int N)
{
    std::vector<double> t(static_cast<std::size_t>(N + 1));
    t[0] = c;
    for (int n = 1; n <= N; ++n) {
        t[n] = t[n - 1] * (n - 1 - e) / n / xi0;
    }
    return t;
}

} // namespace

TEST_CASE("trans-series product")
{
    const auto table = singular::standard_symbols();
    TransSeries x(table, mono(1, 10));
    x.set_sector("A", mono(3, 10)); // a^2 A
    TransSeries y(table, mono(2, 10));
    y.set_sector("A", mono(1, 10)); // A
    const auto z = singular::ts_mul(x, y);
    CHECK(z.regular().truncated(8) == mono(3, 8));
    REQUIRE(z.sector("A") != nullptr);
    // a^{2+2} A + a^{0+1} A, stored shifted by one
    CHECK(z.sector("A")->truncated(8) == (mono(5, 8) + mono(2, 8)));

    TransSeries pure_a(table, QS(6));
    pure_a.set_sector("A", mono(1, 6));
    TransSeries pure_b(table, QS(6));
    pure_b.set_sector("B", mono(1, 6));
    const auto ab = singular::ts_mul(pure_a, pure_b);
    CHECK(ab.regular().is_zero());
    for (const auto &[id, u] : ab.sectors()) {
        CHECK(u.is_zero());
    }

    testing::Gen gen(testing::test_seed());
    const auto r = random_trans(gen, table, 8);
    const TransSeries unit(table, QS::monomial(0, 1, 8));
    CHECK(singular::ts_mul(unit, r) == r);

    auto other = std::make_shared<singular::SymbolTable>(*table);
    (*other)["A"].beta = Rational(4);
    const TransSeries foreign(other, mono(1, 4));
    CHECK_THROWS_WITH_AS(singular::ts_mul(foreign, r), doctest::Contains("symbol-table mismatch"), DomainError);
}

TEST_CASE("trans-series Euler operator")
{
    const auto table = singular::standard_symbols();
    const QS reg = QS(std::vector<Rational>{1, 2, 3, 4});
    CHECK(singular::ts_euler(TransSeries(table, reg)).regular() == euler(reg));

    CHECK(singular::symbol_coefficients(table->at("A"), 4)
          == QS(std::vector<Rational>{0, 1, -8, 88, -1232}));
    CHECK(singular::symbol_coefficients(table->at("B"), 4) == QS(std::vector<Rational>{0, 1, 3, 18, 162}));

    testing::Gen gen(testing::test_seed());
    INFO(testing::seed_note());
    for (int trial = 0; trial < 20; ++trial) {
        const auto t = random_trans(gen, table, 52);
        CHECK(singular::expand(singular::ts_euler(t), 50) == euler(singular::expand(t, 52)).truncated(50));
        // products with a purely regular factor expand multiplicatively
        const TransSeries g(table, gen.series(52));
        CHECK(singular::expand(singular::ts_mul(t, g), 40) == (singular::expand(t, 52) * g.regular()).truncated(40));
    }
}

TEST_CASE("exponents and coefficient relations")
{
    CHECK(singular::exponent_positive(1) == Rational(0));
    CHECK(singular::exponent_positive(2) == Rational(2, 3));
    CHECK(singular::exponent_positive(4) == Rational(2));
    CHECK(singular::exponent_negative(1) == Rational(-5, 3));
    CHECK(singular::exponent_negative(2) == Rational(-2, 3));
    CHECK(singular::exponent_negative(3) == Rational(-4, 3));
    CHECK(singular::coeff_relation_negative(1).factor == Rational(-6, 5));
    CHECK(singular::coeff_relation_negative(2).factor == Rational(-9, 10));
    CHECK(singular::coeff_relation_negative(3).factor == Rational(-3, 28));
    for (int k = 2; k <= 8; ++k) {
        CHECK(singular::coeff_relation_negative(k).factor == Rational(-9, k * (k - 1) * (k - 1) * (2 * k + 1)));
    }
    CHECK(singular::coeff_relation_negative(3).scale == "f_3");
    CHECK_THROWS_AS(singular::exponent_negative(0), DomainError);
}

TEST_CASE("leading Borel forms of the symbols")
{
    const auto table = singular::standard_symbols();
    const auto a = singular::leading_borel_form(table->at("A"));
    CHECK(a.location == Rational(-1, 3));
    CHECK(a.exponent == singular::exponent_negative(1));
    CHECK(!a.log);
    const auto b = singular::leading_borel_form(table->at("B"));
    CHECK(b.location == Rational(1, 3));
    CHECK(b.log);
    CHECK(b.exponent == singular::exponent_positive(1));
    // Borel coefficients of a C against the Taylor coefficients of the leading form
    for (const std::string id : {"A", "B"}) {
        const auto &sym = table->at(id);
        const auto form = singular::leading_borel_form(sym);
        const auto c = singular::symbol_coefficients(sym, 201);
        const int n = 200;
        const double borel_n = (c[n] / Rational::factorial(static_cast<unsigned>(n))).to_double();
        double taylor_n = 0.0;
        if (form.log) {
            // c log(1 - xi/xi0): -c/(n xi0^n)
            taylor_n = -form.coefficient.to_double() / n / std::pow(form.location.to_double(), n);
        } else {
            taylor_n = binomial_coefficients(form.coefficient.to_double(), form.exponent.to_double(),
                                             form.location.to_double(), n)[n];
        }
        INFO(id);
        CHECK(borel_n / taylor_n == doctest::Approx(1.0).epsilon(0.03));
    }
}

TEST_CASE("ratio-method estimates")
{
    const auto geo = binomial_coefficients(1.0, -1.0, 0.5, 60);
    const auto r = singular::domb_sykes(geo);
    CHECK(std::abs(r.location - 0.5) < 1e-12);
    CHECK(r.exponent == doctest::Approx(-1.0).epsilon(1e-10));
    for (double res : r.residuals) {
        CHECK(std::abs(res) < 1e-12);
    }
    CHECK(r.residuals.size() == static_cast<std::size_t>(r.n_max - r.n_min + 1));

    const auto alg = binomial_coefficients(1.0, -5.0 / 3.0, 1.0 / 3.0, 120);
    const auto s = singular::domb_sykes(alg);
    CHECK(s.location.real() == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
    CHECK(s.exponent == doctest::Approx(-5.0 / 3.0).epsilon(1e-4));
    CHECK(!s.alternating);

    auto scaled = alg;
    for (auto &x : scaled) {
        x *= -3.7e5;
    }
    const auto t = singular::domb_sykes(scaled);
    CHECK(std::abs(t.location - s.location) < 1e-12);
    CHECK(std::abs(t.exponent - s.exponent) < 1e-10);

    const auto w = singular::domb_sykes(alg, std::pair<int, int>{40, 80});
    CHECK(w.n_min == 40);
    CHECK(w.n_max == 80);

    auto holey = alg;
    holey[100] = 0.0;
    CHECK_THROWS_WITH_AS(singular::domb_sykes(holey), doctest::Contains("ratio method inapplicable"), DomainError);
    auto mixed = alg;
    mixed[90] = -mixed[90];
    CHECK_THROWS_WITH_AS(singular::domb_sykes(mixed), doctest::Contains("ratio method inapplicable"), DomainError);
    CHECK_THROWS_AS(singular::domb_sykes(geo, std::pair<int, int>{10, 14}), DomainError);

    const auto ode = singular::domb_sykes(borel::borel_map(physical::ode_reference(200)).series());
    CHECK(ode.alternating);
    CHECK(ode.location.real() < 0);
    CHECK(std::abs(std::abs(ode.location) - 1.0 / 3.0) < 0.01 / 3.0);
}

TEST_CASE("series weights")
{
    CHECK(singular::weight_of_series(FormalSeries<ZetaPoly>::monomial(0, 1, 3)) == Weight(0));
    FormalSeries<ZetaPoly> f(1);
    f[0] = ZetaPoly::zeta(3);
    f[1] = ZetaPoly::zeta(5);
    CHECK(singular::weight_of_series(f) == Weight(3));
    CHECK(singular::weight_of_series(FormalSeries<ZetaPoly>(4)) == Weight::neg_inf());
    CHECK(singular::weight_at({ZetaPoly::zeta(3), ZetaPoly::zeta(7)}, 1) == Weight(4));
}

TEST_CASE("convolution weight bound")
{
    using borel::BorelSeries;
    const BorelSeries<ZetaPoly> one(FormalSeries<ZetaPoly>::monomial(0, 1, 4));
    const auto c = singular::weight_convolution_check(one, one);
    CHECK(c.holds);
    CHECK(c.product == Weight(-1));
    CHECK(c.bound == Weight(-1));

    testing::Gen gen(testing::test_seed());
    INFO(testing::seed_note());
    for (int trial = 0; trial < 40; ++trial) {
        const BorelSeries<ZetaPoly> f(gen.zeta_series(12));
        const BorelSeries<ZetaPoly> g(gen.zeta_series(12));
        const auto chk = singular::weight_convolution_check(f, g);
        CHECK(chk.holds);
        CHECK(!chk.witness.has_value());
    }
    const auto gh = borel::borel_map(physical::sd_solve(12));
    CHECK(singular::weight_convolution_check(gh, gh).holds);
}

TEST_CASE("weights of the tower in the Borel plane")
{
    const auto tower = physical::rg_tower(physical::sd_solve(12), 5);
    for (int k = 1; k <= 5; ++k) {
        CHECK(singular::weight_of_series(borel::borel_map(tower.gamma(k)).series()) == Weight(1 - k));
    }
}

TEST_CASE("weight audit")
{
    const auto audit = singular::weight_audit(physical::sd_solve(13));
    CHECK(audit.odd_zeta_only);
    CHECK(audit.rows.size() == 13);
    for (int p : {1, 2, 4}) {
        CHECK(std::find(audit.drops.begin(), audit.drops.end(), p) != audit.drops.end());
    }
    for (const auto &r : audit.rows) {
        CHECK(r.drop == (r.w < Weight(r.p)));
        CHECK(r.w <= Weight(r.p));
    }
}
