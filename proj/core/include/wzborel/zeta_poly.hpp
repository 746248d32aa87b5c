#pragma once

#include <initializer_list>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "wzborel/rational.hpp"
#include "wzborel/weight.hpp"

namespace wzborel {

/// Largest zeta index a monomial may carry. Default 31.
int max_zeta_index() noexcept;
/// Adjusts the cap; must be odd and >= 3. Affects subsequently created generators only.
void set_max_zeta_index(int index);

/// Product of odd zeta values, e.g. zeta(3)^2 zeta(7).
///
/// Factors are kept sorted by index with positive exponents; the empty product is the unit.
class ZetaMonomial {
public:
    using Factor = std::pair<int, int>; // (index, exponent)

    ZetaMonomial() = default;

    /// zeta(index); index must be odd, >= 3 and <= max_zeta_index().
    static ZetaMonomial zeta(int index, int exponent = 1);
    static ZetaMonomial from_factors(std::vector<Factor> factors);

    const std::vector<Factor> &factors() const noexcept { return factors_; }
    bool is_unit() const noexcept { return factors_.empty(); }

    /// w: zeta(n) has weight n.
    int weight_w() const noexcept { return weight_; }
    /// W: zeta(2n+1) has weight 2n.
    int weight_W() const noexcept { return weight_ - degree_; }
    /// Number of zeta factors counted with multiplicity.
    int degree() const noexcept { return degree_; }

    friend ZetaMonomial operator*(const ZetaMonomial &a, const ZetaMonomial &b);
    friend bool operator==(const ZetaMonomial &a, const ZetaMonomial &b)
    {
        return a.factors_ == b.factors_;
    }

    /// "z3^2*z7"; empty string for the unit.
    std::string str() const;

private:
    void recompute();

    std::vector<Factor> factors_;
    int weight_ = 0;
    int degree_ = 0;
};

/// Graded lexicographic order: by w-weight, then by the sorted index list.
struct GradedLexLess {
    bool operator()(const ZetaMonomial &a, const ZetaMonomial &b) const noexcept;
};

/// Polynomial in odd zeta values with exact rational coefficients.
class ZetaPoly {
public:
    using TermMap = std::map<ZetaMonomial, Rational, GradedLexLess>;

    ZetaPoly() = default;
    ZetaPoly(const Rational &constant); // NOLINT(google-explicit-constructor)
    ZetaPoly(long constant) : ZetaPoly(Rational(constant)) {} // NOLINT(google-explicit-constructor)
    ZetaPoly(const ZetaMonomial &m, const Rational &coeff);

    static ZetaPoly zeta(int index) { return ZetaPoly(ZetaMonomial::zeta(index), Rational(1)); }

    const TermMap &terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }
    /// True when no zeta factor occurs.
    bool is_rational() const noexcept;
    /// Coefficient of the unit monomial.
    Rational constant_term() const;
    Rational coefficient(const ZetaMonomial &m) const;

    Weight weight_w() const noexcept;
    Weight weight_W() const noexcept;

    ZetaPoly &operator+=(const ZetaPoly &rhs);
    ZetaPoly &operator-=(const ZetaPoly &rhs);
    ZetaPoly &operator*=(const ZetaPoly &rhs);
    ZetaPoly &operator*=(const Rational &rhs);

    /// this += a * b, without materializing the product.
    void add_product(const ZetaPoly &a, const ZetaPoly &b);
    /// this += a * r.
    void add_scaled(const ZetaPoly &a, const Rational &r);

    friend ZetaPoly operator+(ZetaPoly a, const ZetaPoly &b) { return a += b; }
    friend ZetaPoly operator-(ZetaPoly a, const ZetaPoly &b) { return a -= b; }
    friend ZetaPoly operator*(const ZetaPoly &a, const ZetaPoly &b);
    friend ZetaPoly operator*(ZetaPoly a, const Rational &r) { return a *= r; }
    friend ZetaPoly operator*(const Rational &r, ZetaPoly a) { return a *= r; }
    friend ZetaPoly operator-(const ZetaPoly &a);

    friend bool operator==(const ZetaPoly &a, const ZetaPoly &b) { return a.terms_ == b.terms_; }

    /// Canonical text, e.g. "-3+2*z3"; "0" for zero.
    std::string str() const;
    friend std::ostream &operator<<(std::ostream &os, const ZetaPoly &p);

private:
    void add_term(const ZetaMonomial &m, const Rational &c);

    TermMap terms_;
};

/// {"terms":[{"zetas":{"3":2},"num":"-9","den":"28"}, ...]}
nlohmann::json to_json(const ZetaPoly &p);
ZetaPoly zeta_poly_from_json(const nlohmann::json &j);

/// Riemann zeta at an integer s >= 2, double precision (Euler-Maclaurin).
double zeta_value(int s);
/// Numeric value of the polynomial.
double to_double(const ZetaPoly &p);

} // namespace wzborel
