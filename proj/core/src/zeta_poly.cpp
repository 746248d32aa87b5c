#include "wzborel/zeta_poly.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "wzborel/error.hpp"

namespace wzborel {

namespace {

std::atomic<int> g_max_zeta_index{31};

void check_index(int index)
{
    if (index < 3 || index % 2 == 0) {
        throw DomainError("zeta index must be odd and >= 3, got " + std::to_string(index));
    }
    if (index > max_zeta_index()) {
        throw DomainError("zeta index " + std::to_string(index) + " exceeds the configured cap "
                          + std::to_string(max_zeta_index()));
    }
}

} // namespace

int max_zeta_index() noexcept
{
    return g_max_zeta_index.load(std::memory_order_relaxed);
}

void set_max_zeta_index(int index)
{
    if (index < 3 || index % 2 == 0) {
        throw DomainError("zeta index cap must be odd and >= 3");
    }
    g_max_zeta_index.store(index, std::memory_order_relaxed);
}

// ZetaMonomial

ZetaMonomial ZetaMonomial::zeta(int index, int exponent)
{
    check_index(index);
    if (exponent < 0) {
        throw DomainError("negative zeta exponent");
    }
    ZetaMonomial m;
    if (exponent > 0) {
        m.factors_.emplace_back(index, exponent);
    }
    m.recompute();
    return m;
}

ZetaMonomial ZetaMonomial::from_factors(std::vector<Factor> factors)
{
    std::sort(factors.begin(), factors.end());
    ZetaMonomial m;
    for (const auto &[index, exponent] : factors) {
        check_index(index);
        if (exponent < 0) {
            throw DomainError("negative zeta exponent");
        }
        if (exponent == 0) {
            continue;
        }
        if (!m.factors_.empty() && m.factors_.back().first == index) {
            m.factors_.back().second += exponent;
        } else {
            m.factors_.emplace_back(index, exponent);
        }
    }
    m.recompute();
    return m;
}

void ZetaMonomial::recompute()
{
    weight_ = 0;
    degree_ = 0;
    for (const auto &[index, exponent] : factors_) {
        weight_ += index * exponent;
        degree_ += exponent;
    }
}

ZetaMonomial operator*(const ZetaMonomial &a, const ZetaMonomial &b)
{
    ZetaMonomial r;
    r.factors_.reserve(a.factors_.size() + b.factors_.size());
    auto i = a.factors_.begin();
    auto j = b.factors_.begin();
    while (i != a.factors_.end() || j != b.factors_.end()) {
        if (j == b.factors_.end() || (i != a.factors_.end() && i->first < j->first)) {
            r.factors_.push_back(*i++);
        } else if (i == a.factors_.end() || j->first < i->first) {
            r.factors_.push_back(*j++);
        } else {
            r.factors_.emplace_back(i->first, i->second + j->second);
            ++i;
            ++j;
        }
    }
    r.weight_ = a.weight_ + b.weight_;
    r.degree_ = a.degree_ + b.degree_;
    return r;
}

std::string ZetaMonomial::str() const
{
    std::string out;
    for (const auto &[index, exponent] : factors_) {
        if (!out.empty()) {
            out += '*';
        }
        out += 'z' + std::to_string(index);
        if (exponent != 1) {
            out += '^' + std::to_string(exponent);
        }
    }
    return out;
}

bool GradedLexLess::operator()(const ZetaMonomial &a, const ZetaMonomial &b) const noexcept
{
    if (a.weight_w() != b.weight_w()) {
        return a.weight_w() < b.weight_w();
    }
    // Lexicographic comparison of the expanded index lists, e.g. z3^2 z7 -> [3,3,7].
    const auto &fa = a.factors();
    const auto &fb = b.factors();
    std::size_t ia = 0;
    std::size_t ib = 0;
    int ra = fa.empty() ? 0 : fa[0].second;
    int rb = fb.empty() ? 0 : fb[0].second;
    while (ia < fa.size() && ib < fb.size()) {
        if (fa[ia].first != fb[ib].first) {
            return fa[ia].first < fb[ib].first;
        }
        const int step = std::min(ra, rb);
        ra -= step;
        rb -= step;
        if (ra == 0 && ++ia < fa.size()) {
            ra = fa[ia].second;
        }
        if (rb == 0 && ++ib < fb.size()) {
            rb = fb[ib].second;
        }
    }
    return ia == fa.size() && ib < fb.size();
}

// ZetaPoly

ZetaPoly::ZetaPoly(const Rational &constant)
{
    if (!constant.is_zero()) {
        terms_.emplace(ZetaMonomial(), constant);
    }
}

ZetaPoly::ZetaPoly(const ZetaMonomial &m, const Rational &coeff)
{
    if (!coeff.is_zero()) {
        terms_.emplace(m, coeff);
    }
}

bool ZetaPoly::is_rational() const noexcept
{
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_unit());
}

Rational ZetaPoly::constant_term() const
{
    return coefficient(ZetaMonomial());
}

Rational ZetaPoly::coefficient(const ZetaMonomial &m) const
{
    const auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

Weight ZetaPoly::weight_w() const noexcept
{
    // Terms are sorted by w, so the last one carries the maximum.
    return terms_.empty() ? Weight::neg_inf() : Weight(terms_.rbegin()->first.weight_w());
}

Weight ZetaPoly::weight_W() const noexcept
{
    Weight w = Weight::neg_inf();
    for (const auto &[m, c] : terms_) {
        w = max(w, Weight(m.weight_W()));
    }
    return w;
}

void ZetaPoly::add_term(const ZetaMonomial &m, const Rational &c)
{
    if (c.is_zero()) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) {
            terms_.erase(it);
        }
    }
}

ZetaPoly &ZetaPoly::operator+=(const ZetaPoly &rhs)
{
    for (const auto &[m, c] : rhs.terms_) {
        add_term(m, c);
    }
    return *this;
}

ZetaPoly &ZetaPoly::operator-=(const ZetaPoly &rhs)
{
    for (const auto &[m, c] : rhs.terms_) {
        add_term(m, -c);
    }
    return *this;
}

void ZetaPoly::add_product(const ZetaPoly &a, const ZetaPoly &b)
{
    for (const auto &[ma, ca] : a.terms_) {
        for (const auto &[mb, cb] : b.terms_) {
            add_term(ma * mb, ca * cb);
        }
    }
}

void ZetaPoly::add_scaled(const ZetaPoly &a, const Rational &r)
{
    if (r.is_zero()) {
        return;
    }
    for (const auto &[m, c] : a.terms_) {
        add_term(m, c * r);
    }
}

ZetaPoly operator*(const ZetaPoly &a, const ZetaPoly &b)
{
    ZetaPoly r;
    r.add_product(a, b);
    return r;
}

ZetaPoly &ZetaPoly::operator*=(const ZetaPoly &rhs)
{
    *this = *this * rhs;
    return *this;
}

ZetaPoly &ZetaPoly::operator*=(const Rational &rhs)
{
    if (rhs.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto &[m, c] : terms_) {
        c *= rhs;
    }
    return *this;
}

ZetaPoly operator-(const ZetaPoly &a)
{
    ZetaPoly r = a;
    for (auto &[m, c] : r.terms_) {
        c = -c;
    }
    return r;
}

std::string ZetaPoly::str() const
{
    if (terms_.empty()) {
        return "0";
    }
    std::string out;
    for (const auto &[m, c] : terms_) {
        std::string coeff = c.str();
        const bool negative = coeff.front() == '-';
        if (negative) {
            coeff.erase(0, 1);
        }
        if (!out.empty() || negative) {
            out += negative ? '-' : '+';
        }
        if (m.is_unit()) {
            out += coeff;
        } else if (coeff == "1") {
            out += m.str();
        } else {
            out += coeff + '*' + m.str();
        }
    }
    return out;
}

std::ostream &operator<<(std::ostream &os, const ZetaPoly &p)
{
    return os << p.str();
}

nlohmann::json to_json(const ZetaPoly &p)
{
    nlohmann::json terms = nlohmann::json::array();
    for (const auto &[m, c] : p.terms()) {
        nlohmann::json zetas = nlohmann::json::object();
        for (const auto &[index, exponent] : m.factors()) {
            zetas[std::to_string(index)] = exponent;
        }
        terms.push_back({{"zetas", zetas}, {"num", c.numerator_str()}, {"den", c.denominator_str()}});
    }
    return {{"terms", terms}};
}

ZetaPoly zeta_poly_from_json(const nlohmann::json &j)
{
    ZetaPoly p;
    for (const auto &t : j.at("terms")) {
        std::vector<ZetaMonomial::Factor> factors;
        for (const auto &[key, value] : t.at("zetas").items()) {
            factors.emplace_back(std::stoi(key), value.get<int>());
        }
        p += ZetaPoly(ZetaMonomial::from_factors(std::move(factors)),
                      Rational::from_strings(t.at("num").get<std::string>(),
                                             t.at("den").get<std::string>()));
    }
    return p;
}

double zeta_value(int s)
{
    if (s < 2) {
        throw DomainError("zeta_value needs s >= 2");
    }
    // Partial sum to n = 29 plus Euler-Maclaurin tail from 30.
    constexpr int cut = 30;
    double sum = 0.0;
    for (int n = cut - 1; n >= 1; --n) {
        sum += std::pow(static_cast<double>(n), -s);
    }
    const double N = cut;
    double tail = std::pow(N, 1.0 - s) / (s - 1) + 0.5 * std::pow(N, -s);
    // B_{2j}/(2j)! * s(s+1)...(s+2j-2) * N^{-s-2j+1}
    constexpr double bernoulli[] = {1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0};
    double rising = s;
    double fact = 2.0;
    for (int j = 1; j <= 5; ++j) {
        tail += bernoulli[j - 1] / fact * rising * std::pow(N, -s - 2 * j + 1);
        rising *= (s + 2 * j - 1) * static_cast<double>(s + 2 * j);
        fact *= (2 * j + 1) * static_cast<double>(2 * j + 2);
    }
    return sum + tail;
}

double to_double(const ZetaPoly &p)
{
    double total = 0.0;
    for (const auto &[m, c] : p.terms()) {
        double v = c.to_double();
        for (const auto &[index, exponent] : m.factors()) {
            v *= std::pow(zeta_value(index), exponent);
        }
        total += v;
    }
    return total;
}

} // namespace wzborel
