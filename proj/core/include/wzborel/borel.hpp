#pragma once

#include <complex>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "wzborel/error.hpp"
#include "wzborel/formal_series.hpp"

/// Borel plane: B(sum c_n a^{n+1}) = sum c_n xi^n / n!, a ring morphism from the
/// product of series to the convolution (f * g)(xi) = int_0^xi f(xi - eta) g(eta) d eta.
namespace wzborel::borel {

/// Truncated series in the Borel variable xi. Distinct from FormalSeries so the two
/// planes cannot be mixed by accident.
template <CoefficientRing R>
class BorelSeries {
public:
    explicit BorelSeries(int order = 0) : s_(order) {}
    explicit BorelSeries(FormalSeries<R> s) : s_(std::move(s)) {}

    int order() const noexcept { return s_.order(); }
    const FormalSeries<R> &series() const noexcept { return s_; }
    R &operator[](int n) { return s_[n]; }
    const R &operator[](int n) const { return s_[n]; }

    BorelSeries &operator+=(const BorelSeries &o)
    {
        s_ += o.s_;
        return *this;
    }
    BorelSeries &operator-=(const BorelSeries &o)
    {
        s_ -= o.s_;
        return *this;
    }
    friend BorelSeries operator+(BorelSeries a, const BorelSeries &b) { return a += b; }
    friend BorelSeries operator-(BorelSeries a, const BorelSeries &b) { return a -= b; }
    friend bool operator==(const BorelSeries &a, const BorelSeries &b) { return a.s_ == b.s_; }

private:
    FormalSeries<R> s_;
};

template <CoefficientRing R>
BorelSeries<R> borel_map(const FormalSeries<R> &f)
{
    if (!RingTraits<R>::is_zero(f[0])) {
        throw DomainError("Borel transform of a series with nonzero constant term: the delta at the origin "
                          "is omitted by convention, so the constant must vanish");
    }
    if (f.order() < 1) {
        throw DomainError("Borel transform needs a series known to order >= 1");
    }
    BorelSeries<R> b(f.order() - 1);
    Rational inv_fact(1);
    for (int n = 0; n < f.order(); ++n) {
        if (n > 0) {
            inv_fact *= Rational(1, n);
        }
        b[n] = RingTraits<R>::scale(f[n + 1], inv_fact);
    }
    return b;
}

template <CoefficientRing R>
FormalSeries<R> laplace_formal(const BorelSeries<R> &g)
{
    FormalSeries<R> f(g.order() + 1);
    Rational fact(1);
    for (int n = 0; n <= g.order(); ++n) {
        if (n > 0) {
            fact *= Rational(n);
        }
        f[n + 1] = RingTraits<R>::scale(g[n], fact);
    }
    return f;
}

/// Convolution with xi^i * xi^j = i! j! / (i+j+1)! xi^{i+j+1}.
/// Result order follows the product rule of the physical plane.
template <CoefficientRing R>
BorelSeries<R> borel_convolve(const BorelSeries<R> &f, const BorelSeries<R> &g)
{
    const int vf = f.series().valuation();
    const int vg = g.series().valuation();
    const int order = std::min(f.order() + vg, g.order() + vf) + 1;
    BorelSeries<R> r(order);
    for (int i = vf; i <= f.order(); ++i) {
        if (RingTraits<R>::is_zero(f[i])) {
            continue;
        }
        for (int j = vg; j <= g.order() && i + j + 1 <= order; ++j) {
            if (RingTraits<R>::is_zero(g[j])) {
                continue;
            }
            // i! j! / (i+j+1)! = 1 / ((i+j+1) C(i+j, i))
            const Rational beta = (Rational(i + j + 1) * Rational::binomial(static_cast<unsigned>(i + j),
                                                                            static_cast<unsigned>(i)))
                                      .inverse();
            r[i + j + 1] += RingTraits<R>::scale(f[i] * g[j], beta);
        }
    }
    return r;
}

/// Primitive vanishing at 0: xi^n -> xi^{n+1}/(n+1). Equals B(a f).
template <CoefficientRing R>
BorelSeries<R> borel_primitive(const BorelSeries<R> &f)
{
    BorelSeries<R> r(f.order() + 1);
    for (int n = 0; n <= f.order(); ++n) {
        r[n + 1] = RingTraits<R>::scale(f[n], Rational(1, n + 1));
    }
    return r;
}

/// d/dxi (xi f): xi^n -> (n+1) xi^n. Equals B(a d/da f).
template <CoefficientRing R>
BorelSeries<R> xi_euler(const BorelSeries<R> &f)
{
    BorelSeries<R> r(f.order());
    for (int n = 0; n <= f.order(); ++n) {
        r[n] = RingTraits<R>::scale(f[n], Rational(n + 1));
    }
    return r;
}

/// Local singular germ c (1 - xi/xi0)^e, times log(1 - xi/xi0) when `log` is set.
///
/// Exponent -1 without log is a simple pole. A log with negative integer exponent,
/// or a non-integer exponent with log, is not a valid form.
struct SingularForm {
    Rational location{1};
    Rational exponent;
    bool log = false;
    Rational coefficient{1};
    int shift = 0; // index n of the primitive chain the form came from

    bool is_pole() const { return !log && exponent == Rational(-1); }
    bool is_holomorphic() const { return !log && exponent.is_integer() && exponent.sign() >= 0; }
    friend bool operator==(const SingularForm &, const SingularForm &) = default;
};

nlohmann::json to_json(const SingularForm &s);
SingularForm singular_form_from_json(const nlohmann::json &j);

/// Pochhammer symbol (x)_n = x (x+1) ... (x+n-1).
Rational pochhammer(const Rational &x, int n);

/// Singular form of the n-th primitive of the symbol with parameter beta at xi = 1.
///
/// Non-integer beta: (-1)^n/(beta)_n (1-xi)^{beta+n-1}.
/// Integer beta >= 0: (-1)^{n+beta}/(beta+n-1)! (1-xi)^{beta+n-1} log(1-xi); n = beta = 0 is the pole 1/(1-xi).
SingularForm symbol_singular_form(int n, const Rational &beta);

/// Leading singular form of s * g, g regular at 0 with leading term g_{p-1} xi^{p-1}.
SingularForm singular_convolve(const SingularForm &s, const BorelSeries<Rational> &g);
/// Same with g = xi^{p-1}/(p-1)!, i.e. p-fold primitive.
SingularForm singular_convolve(const SingularForm &s, int p);

/// Two readings of the alien derivative on a simple pole.
enum class AlienView {
    LateralDifference,    // the pole has no jump across the cut and contributes nothing
    CoefficientExtraction // the pole is read as a Dirac germ carrying -c
};

/// Germ extracted by the alien derivative, in the local variable u = xi/xi0 - 1.
///
/// value = coefficient * (sine ? sin(pi * sine_argument)/pi : 1) * u^exponent,
/// or coefficient * delta(u) for Kind::Dirac. sine_argument is reduced to [0, 1)
/// with the sign moved into the coefficient, so equal germs compare equal.
struct AlienGerm {
    enum class Kind { Zero, Power, Dirac };
    Kind kind = Kind::Zero;
    Rational coefficient;
    Rational exponent;
    bool sine = false;
    Rational sine_argument;

    friend bool operator==(const AlienGerm &, const AlienGerm &) = default;
    std::string str() const;
};

AlienGerm alien_delta1(const SingularForm &s, AlienView view = AlienView::LateralDifference);

/// Germ of s * (xi^{p-1}/(p-1)!) predicted from the germ of s, xi0 the location of s.
AlienGerm germ_convolve(const AlienGerm &germ, int p, const Rational &location);

/// Numeric value of the form at xi (principal branches).
std::complex<double> evaluate(const SingularForm &s, std::complex<double> xi);

} // namespace wzborel::borel
