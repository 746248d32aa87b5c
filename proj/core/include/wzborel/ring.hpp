#pragma once

#include <complex>
#include <concepts>

#include "wzborel/rational.hpp"
#include "wzborel/zeta_poly.hpp"

namespace wzborel {

/// Coefficient-ring adaptor for the series engine.
///
/// Every ring must contain the rationals (exactly or approximately) so that
/// factorials and Pochhammer symbols can be applied to coefficients.
template <typename R>
struct RingTraits;

template <>
struct RingTraits<Rational> {
    static Rational zero() { return Rational(0); }
    static Rational one() { return Rational(1); }
    static bool is_zero(const Rational &x) { return x.is_zero(); }
    static Rational from_rational(const Rational &q) { return q; }
    static Rational scale(const Rational &x, const Rational &q) { return x * q; }
    static constexpr bool exact = true;
};

template <>
struct RingTraits<ZetaPoly> {
    static ZetaPoly zero() { return ZetaPoly(); }
    static ZetaPoly one() { return ZetaPoly(1); }
    static bool is_zero(const ZetaPoly &x) { return x.is_zero(); }
    static ZetaPoly from_rational(const Rational &q) { return ZetaPoly(q); }
    static ZetaPoly scale(const ZetaPoly &x, const Rational &q) { return x * q; }
    static constexpr bool exact = true;
};

template <>
struct RingTraits<std::complex<double>> {
    using C = std::complex<double>;
    static C zero() { return C(0.0, 0.0); }
    static C one() { return C(1.0, 0.0); }
    static bool is_zero(const C &x) { return x == C(0.0, 0.0); }
    static C from_rational(const Rational &q) { return C(q.to_double(), 0.0); }
    static C scale(const C &x, const Rational &q) { return x * q.to_double(); }
    static constexpr bool exact = false;
};

template <>
struct RingTraits<double> {
    static double zero() { return 0.0; }
    static double one() { return 1.0; }
    static bool is_zero(double x) { return x == 0.0; }
    static double from_rational(const Rational &q) { return q.to_double(); }
    static double scale(double x, const Rational &q) { return x * q.to_double(); }
    static constexpr bool exact = false;
};

template <typename R>
concept CoefficientRing = requires(const R &a, const R &b, const Rational &q) {
    { RingTraits<R>::zero() };
    { RingTraits<R>::is_zero(a) } -> std::convertible_to<bool>;
    { RingTraits<R>::scale(a, q) };
    { a + b };
    { a * b };
    { a - b };
};

} // namespace wzborel
