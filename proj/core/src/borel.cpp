#include "wzborel/borel.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

namespace wzborel::borel {

namespace {

Rational sign_power(long k) { return k % 2 == 0 ? Rational(1) : Rational(-1); }

// sin(pi x) = sign * sin(pi r), r in [0, 1)
std::pair<Rational, Rational> reduce_sine(const Rational &x)
{
    const long k = x.floor_long();
    return {x - Rational(k), sign_power(k)};
}

} // namespace

nlohmann::json to_json(const SingularForm &s)
{
    return nlohmann::json{{"location", s.location.str()},
                          {"exponent", s.exponent.str()},
                          {"log", s.log},
                          {"coeff", s.coefficient.str()},
                          {"shift", s.shift}};
}

SingularForm singular_form_from_json(const nlohmann::json &j)
{
    SingularForm s;
    s.location = Rational::parse(j.at("location").get<std::string>());
    s.exponent = Rational::parse(j.at("exponent").get<std::string>());
    s.log = j.at("log").get<bool>();
    s.coefficient = Rational::parse(j.at("coeff").get<std::string>());
    s.shift = j.at("shift").get<int>();
    return s;
}

Rational pochhammer(const Rational &x, int n)
{
    if (n < 0) {
        throw DomainError("Pochhammer index must be >= 0");
    }
    Rational r(1);
    for (int i = 0; i < n; ++i) {
        r *= x + Rational(i);
    }
    return r;
}

SingularForm symbol_singular_form(int n, const Rational &beta)
{
    if (n < 0) {
        throw DomainError("primitive index must be >= 0");
    }
    SingularForm s;
    s.location = Rational(1);
    s.shift = n;
    s.exponent = beta + Rational(n - 1);
    if (!beta.is_integer()) {
        s.coefficient = sign_power(n) / pochhammer(beta, n);
        return s;
    }
    if (beta.sign() < 0) {
        throw DomainError("symbol form with negative integer beta " + beta.str() + " is unsupported");
    }
    if (beta.is_zero() && n == 0) {
        s.coefficient = Rational(1);
        return s; // simple pole
    }
    const long e = s.exponent.floor_long();
    s.log = true;
    s.coefficient = sign_power(n + beta.floor_long()) / Rational::factorial(static_cast<unsigned>(e));
    return s;
}

SingularForm singular_convolve(const SingularForm &s, int p)
{
    if (p < 1) {
        throw DomainError("singular_convolve needs p >= 1");
    }
    SingularForm r = s;
    r.shift += p;
    const Rational minus_loc = -s.location;
    int remaining = p;
    if (s.is_pole()) {
        // int (1 - eta/xi0)^{-1} d eta = -xi0 log(1 - xi/xi0)
        r.log = true;
        r.exponent = Rational(0);
        r.coefficient *= minus_loc;
        --remaining;
    }
    if (!r.log && r.exponent.is_integer() && r.exponent.sign() < 0) {
        throw DomainError("singular_convolve on a pole of order > 1 is unsupported");
    }
    if (r.log && !(r.exponent.is_integer() && r.exponent.sign() >= 0)) {
        throw DomainError("logarithmic form needs a non-negative integer exponent");
    }
    r.coefficient *= minus_loc.pow(remaining) / pochhammer(r.exponent + Rational(1), remaining);
    r.exponent += Rational(remaining);
    return r;
}

SingularForm singular_convolve(const SingularForm &s, const BorelSeries<Rational> &g)
{
    const int v = g.series().valuation();
    if (v > g.order()) {
        throw DomainError("singular_convolve needs a nonzero regular factor");
    }
    SingularForm r = singular_convolve(s, v + 1);
    r.coefficient *= g[v] * Rational::factorial(static_cast<unsigned>(v));
    return r;
}

AlienGerm alien_delta1(const SingularForm &s, AlienView view)
{
    AlienGerm g;
    if (s.is_pole()) {
        if (view == AlienView::CoefficientExtraction) {
            g.kind = AlienGerm::Kind::Dirac;
            g.coefficient = -s.coefficient;
        }
        return g;
    }
    if (s.is_holomorphic() || s.coefficient.is_zero()) {
        return g;
    }
    if (s.log) {
        if (!(s.exponent.is_integer() && s.exponent.sign() >= 0)) {
            throw DomainError("logarithmic form needs a non-negative integer exponent");
        }
        g.kind = AlienGerm::Kind::Power;
        g.exponent = s.exponent;
        g.coefficient = s.coefficient * sign_power(s.exponent.floor_long());
        return g;
    }
    if (s.exponent.is_integer()) {
        throw DomainError("alien_delta1 on a pole of order > 1 is unsupported");
    }
    const auto [arg, sign] = reduce_sine(s.exponent + Rational(1));
    g.kind = AlienGerm::Kind::Power;
    g.exponent = s.exponent;
    g.coefficient = -s.coefficient * sign;
    g.sine = true;
    g.sine_argument = arg;
    return g;
}

AlienGerm germ_convolve(const AlienGerm &germ, int p, const Rational &location)
{
    if (p < 1) {
        throw DomainError("germ_convolve needs p >= 1");
    }
    AlienGerm r = germ;
    switch (germ.kind) {
    case AlienGerm::Kind::Zero:
        return r;
    case AlienGerm::Kind::Dirac:
        r.kind = AlienGerm::Kind::Power;
        r.exponent = Rational(p - 1);
        r.coefficient = germ.coefficient * location.pow(p) / Rational::factorial(static_cast<unsigned>(p - 1));
        return r;
    case AlienGerm::Kind::Power:
        r.coefficient = germ.coefficient * location.pow(p) / pochhammer(germ.exponent + Rational(1), p);
        r.exponent = germ.exponent + Rational(p);
        return r;
    }
    return r;
}

std::string AlienGerm::str() const
{
    switch (kind) {
    case Kind::Zero:
        return "0";
    case Kind::Dirac:
        return coefficient.str() + "*delta(u)";
    case Kind::Power:
        break;
    }
    std::string out = coefficient.str();
    if (sine) {
        out += "*sin(pi*" + sine_argument.str() + ")/pi";
    }
    return out + "*u^(" + exponent.str() + ")";
}

std::complex<double> evaluate(const SingularForm &s, std::complex<double> xi)
{
    const std::complex<double> w = 1.0 - xi / s.location.to_double();
    std::complex<double> v = s.coefficient.to_double() * std::exp(s.exponent.to_double() * std::log(w));
    if (s.log) {
        v *= std::log(w);
    }
    return v;
}

} // namespace wzborel::borel
