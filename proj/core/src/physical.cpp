#include "wzborel/physical.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <locale>
#include <sstream>

#include "wzborel/parallel.hpp"

namespace wzborel::physical {

FormalSeries<ZetaPoly> sd_solve(int order, const SolveOptions &options)
{
    if (order < 1) {
        throw DomainError("sd_solve needs order >= 1");
    }
    return sd_solve_with_kernel(mellin::h_taylor(order - 1), order, options);
}

FormalSeries<ZetaPoly> sd_solve_with_kernel(const BiSeries<ZetaPoly> &kernel, int order,
                                            const SolveOptions &options)
{
    if (order < 1) {
        throw DomainError("sd_solve needs order >= 1");
    }
    if (kernel.order() < order - 1) {
        throw DomainError("kernel order " + std::to_string(kernel.order()) + " too small for gamma order "
                          + std::to_string(order));
    }
    const int N = order;
    const int K = kernel.order();
    const auto idx = [N](int a, int b) { return static_cast<std::size_t>(a) * static_cast<std::size_t>(N + 1) + b; };

    // tower[k][q] = [gamma_k]_q ; gamma_0 = 1. t[n][q] = sum_m h_{n,m} [gamma_m]_q.
    std::vector<ZetaPoly> tower(static_cast<std::size_t>((N + 1) * (N + 1)));
    std::vector<ZetaPoly> t(tower.size());
    std::vector<ZetaPoly> c(static_cast<std::size_t>(N) + 1);
    tower[idx(0, 0)] = ZetaPoly(1);

    for (int p = 0; p < N; ++p) {
        // Column p of the tower; gamma_k starts at a^k.
        if (p >= 1) {
            tower[idx(1, p)] = c[static_cast<std::size_t>(p)];
            parallel_for(p - 1, options.threads, [&](int slot) {
                const int k = slot + 2;
                ZetaPoly acc;
                for (int i = 1; i <= p - (k - 1); ++i) {
                    acc.add_product(c[static_cast<std::size_t>(i)] * Rational(1 + 3 * (p - i)),
                                    tower[idx(k - 1, p - i)]);
                }
                tower[idx(k, p)] = std::move(acc);
            });
        }
        // later steps read t[n][q] with n + q <= N - 1
        parallel_for(N - p, options.threads, [&](int n) {
            ZetaPoly acc;
            for (int m = 0; m <= std::min(p, K - n); ++m) {
                acc.add_product(kernel.at(n, m), tower[idx(m, p)]);
            }
            t[idx(n, p)] = std::move(acc);
        });
        std::vector<ZetaPoly> partial(static_cast<std::size_t>(p) + 1);
        parallel_for(p + 1, options.threads, [&](int n) {
            ZetaPoly acc;
            for (int j = n; j <= p; ++j) {
                acc.add_product(tower[idx(n, j)], t[idx(n, p - j)]);
            }
            partial[static_cast<std::size_t>(n)] = std::move(acc);
        });
        ZetaPoly next;
        for (const auto &s : partial) {
            next += s;
        }
        c[static_cast<std::size_t>(p) + 1] = std::move(next);
    }
    return FormalSeries<ZetaPoly>(std::move(c));
}

FormalSeries<ZetaPoly> sd_rhs(const FormalSeries<ZetaPoly> &gamma, const BiSeries<ZetaPoly> &kernel)
{
    const int N = gamma.order();
    if (N < 1) {
        throw DomainError("sd_rhs needs gamma of order >= 1");
    }
    const int M = N - 1; // order of the sum before multiplying by a
    if (kernel.order() < M) {
        throw DomainError("kernel order too small");
    }
    const auto tower = rg_tower(gamma.truncated(M), std::max(1, M));
    const auto gamma_n = [&](int n) {
        if (n == 0) {
            return FormalSeries<ZetaPoly>::monomial(0, ZetaPoly(1), M);
        }
        return tower.gamma(n).truncated(M);
    };
    FormalSeries<ZetaPoly> sum(M);
    for (int n = 0; n <= M; ++n) {
        const auto gn = gamma_n(n);
        for (int m = 0; n + m <= M; ++m) {
            const auto &h = kernel.at(n, m);
            if (h.is_zero()) {
                continue;
            }
            const auto prod = FormalSeries<ZetaPoly>::multiply(gn, gamma_n(m), M);
            for (int q = 0; q <= M; ++q) {
                sum[q].add_product(h, prod[q]);
            }
        }
    }
    return sum.shifted(1);
}

std::string to_string(Normalization n)
{
    return n == Normalization::PerPole ? "per-pole" : "three-equation";
}

ApproxSolution approx_solve(int order)
{
    if (order < 1) {
        throw DomainError("approx_solve needs order >= 1");
    }
    const int N = order;
    FormalSeries<Rational> c(N);
    FormalSeries<Rational> f(N);
    FormalSeries<Rational> l(N);
    f[0] = Rational(1);
    const auto square = [&c](int n) {
        Rational s;
        for (int i = 1; i < n; ++i) {
            s += c[i] * c[n - i];
        }
        return s;
    };
    for (int n = 1; n <= N; ++n) {
        const int m = n - 1;
        // order a^n of 2aF - a - 2a gamma (F-1) + a (L - gamma^2)/2
        Rational v = Rational(2) * f[m] - Rational(n == 1 ? 1 : 0);
        Rational gf;
        for (int i = 1; i <= m; ++i) {
            gf += c[i] * (f[m - i] - Rational(m - i == 0 ? 1 : 0));
        }
        v -= Rational(2) * gf;
        v += Rational(1, 2) * (l[m] - square(m));
        c[n] = v;

        Rational fn;
        Rational ln = square(n);
        for (int i = 1; i <= n; ++i) {
            fn -= c[i] * Rational(3 * (n - i) + 1) * f[n - i];
            ln += c[i] * Rational(3 * (n - i) + 2) * l[n - i];
        }
        f[n] = fn;
        l[n] = ln;
    }
    return {f, l, c};
}

FormalSeries<Rational> ode_reference(int order)
{
    if (order < 1) {
        throw DomainError("ode_reference needs order >= 1");
    }
    FormalSeries<Rational> c(order);
    for (int n = 1; n <= order; ++n) {
        Rational v = Rational(n == 1 ? 1 : 0) - c[n - 1];
        Rational sq;
        for (int i = 1; i < n; ++i) {
            sq += c[i] * c[n - i];
        }
        v += Rational(2) * sq;
        // [gamma gamma']_{n-1} = sum_{i+j=n-1} c_i (j+1) c_{j+1}
        Rational gg;
        for (int i = 1; i <= n - 1; ++i) {
            const int j = n - 1 - i;
            if (j + 1 <= n - 1) {
                gg += c[i] * Rational(j + 1) * c[j + 1];
            }
        }
        v -= Rational(3) * gg;
        c[n] = v;
    }
    return c;
}

namespace {

double parse_number(const std::string &s)
{
    std::istringstream in(s);
    in.imbue(std::locale::classic());
    double v = 0.0;
    in >> v;
    if (in.fail() || !in.eof()) {
        throw DomainError("bad number in law: '" + s + "'");
    }
    return v;
}

// Sum of terms like "3n", "-n", "+2.5".
AffineLaw parse_sum(const std::string &s)
{
    if (s.empty()) {
        throw DomainError("empty law");
    }
    AffineLaw law;
    std::size_t pos = 0;
    while (pos < s.size()) {
        double sign = 1.0;
        if (s[pos] == '+' || s[pos] == '-') {
            sign = s[pos] == '-' ? -1.0 : 1.0;
            ++pos;
        } else if (pos != 0) {
            throw DomainError("expected + or - in law '" + s + "'");
        }
        std::size_t end = pos;
        while (end < s.size() && (std::isdigit(static_cast<unsigned char>(s[end])) || s[end] == '.')) {
            ++end;
        }
        const std::string digits = s.substr(pos, end - pos);
        pos = end;
        if (pos < s.size() && (s[pos] == '*')) {
            ++pos;
        }
        if (pos < s.size() && s[pos] == 'n') {
            law.slope += sign * (digits.empty() ? 1.0 : parse_number(digits));
            ++pos;
        } else {
            if (digits.empty()) {
                throw DomainError("missing term in law '" + s + "'");
            }
            law.intercept += sign * parse_number(digits);
        }
    }
    return law;
}

std::vector<RatioRow> build_table(int order, const std::vector<bool> &nonzero,
                                  const std::function<double(int)> &ratio, const AffineLaw &law)
{
    int run = 0;
    int best = 0;
    for (bool nz : nonzero) {
        run = nz ? run + 1 : 0;
        best = std::max(best, run);
    }
    if (best < 10) {
        throw DomainError("ratio_table needs at least 10 consecutive nonzero coefficients");
    }
    int first = 0;
    while (!nonzero[static_cast<std::size_t>(first)]) {
        ++first;
    }
    std::vector<RatioRow> rows;
    for (int n = first; n < order; ++n) {
        RatioRow row;
        row.n = n;
        row.predicted = law(n);
        if (!nonzero[static_cast<std::size_t>(n)] || !nonzero[static_cast<std::size_t>(n) + 1]) {
            row.gap = true;
            rows.push_back(row);
            continue;
        }
        row.ratio = ratio(n);
        const double diff = std::abs(row.ratio - row.predicted);
        row.deviation = row.predicted == 0.0 ? diff : diff / std::abs(row.predicted);
        rows.push_back(row);
    }
    return rows;
}

} // namespace

AffineLaw AffineLaw::parse(const std::string &text)
{
    std::string s;
    for (char ch : text) {
        if (!std::isspace(static_cast<unsigned char>(ch))) {
            s.push_back(ch);
        }
    }
    double outer = 1.0;
    if (s.size() >= 3 && s[0] == '-' && s[1] == '(' && s.back() == ')') {
        outer = -1.0;
        s = s.substr(2, s.size() - 3);
    } else if (s.size() >= 2 && s[0] == '(' && s.back() == ')') {
        s = s.substr(1, s.size() - 2);
    }
    AffineLaw law = parse_sum(s);
    law.slope *= outer;
    law.intercept *= outer;
    return law;
}

std::string AffineLaw::str() const
{
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << slope << "*n" << (intercept < 0 ? "-" : "+") << std::abs(intercept);
    return os.str();
}

std::vector<RatioRow> ratio_table(const FormalSeries<Rational> &series, const AffineLaw &law)
{
    std::vector<bool> nonzero;
    for (int n = 0; n <= series.order(); ++n) {
        nonzero.push_back(!series[n].is_zero());
    }
    return build_table(series.order(), nonzero, [&](int n) { return (series[n + 1] / series[n]).to_double(); },
                       law);
}

std::vector<RatioRow> ratio_table(const std::vector<double> &coeffs, const AffineLaw &law)
{
    if (coeffs.empty()) {
        throw DomainError("ratio_table needs coefficients");
    }
    std::vector<bool> nonzero;
    for (double v : coeffs) {
        nonzero.push_back(v != 0.0);
    }
    return build_table(static_cast<int>(coeffs.size()) - 1, nonzero,
                       [&](int n) { return coeffs[static_cast<std::size_t>(n) + 1] / coeffs[static_cast<std::size_t>(n)]; },
                       law);
}

} // namespace wzborel::physical
