#pragma once

#include <string>
#include <vector>

#include "wzborel/error.hpp"
#include "wzborel/formal_series.hpp"
#include "wzborel/mellin.hpp"
#include "wzborel/zeta_poly.hpp"

/// Physical-plane solvers. Series are in the coupling a; coefficient n multiplies a^n.
namespace wzborel::physical {

/// gammas[k-1] = gamma_k, the coefficient of L^k/k! in the two-point function.
/// Each entry is valid at least to the order of the input gamma.
template <CoefficientRing R>
struct GammaTower {
    std::vector<FormalSeries<R>> gammas;

    int depth() const noexcept { return static_cast<int>(gammas.size()); }
    /// 1-based access; gamma(1) is the input series.
    const FormalSeries<R> &gamma(int k) const
    {
        if (k < 1 || k > depth()) {
            throw DomainError("tower index " + std::to_string(k) + " outside 1.." + std::to_string(depth()));
        }
        return gammas[static_cast<std::size_t>(k - 1)];
    }
};

/// (alpha + beta a d/da) f
template <CoefficientRing R>
FormalSeries<R> affine_euler(const FormalSeries<R> &f, long alpha, long beta)
{
    FormalSeries<R> r(f.order());
    for (int n = 0; n <= f.order(); ++n) {
        r[n] = RingTraits<R>::scale(f[n], Rational(alpha + beta * n));
    }
    return r;
}

/// gamma_{k+1} = gamma (1 + 3 a d/da) gamma_k.
template <CoefficientRing R>
GammaTower<R> rg_tower(const FormalSeries<R> &gamma, int depth)
{
    if (depth < 1) {
        throw DomainError("tower depth must be >= 1");
    }
    if (!RingTraits<R>::is_zero(gamma[0])) {
        throw DomainError("rg_tower needs gamma = O(a)");
    }
    GammaTower<R> tower;
    tower.gammas.reserve(static_cast<std::size_t>(depth));
    tower.gammas.push_back(gamma);
    for (int k = 1; k < depth; ++k) {
        tower.gammas.push_back(gamma * affine_euler(tower.gammas.back(), 1, 3));
    }
    return tower;
}

struct SolveOptions {
    int threads = 1;
};

/// Fixed point gamma = a sum_{n,m>=0} gamma_n gamma_m h_{n,m}, gamma_0 = 1, to order N.
///
/// Order a^{p+1} of the right side involves coefficients up to a^p only, so the
/// solve is exact and order by order.
FormalSeries<ZetaPoly> sd_solve(int order, const SolveOptions &options = {});

/// Same fixed point for an arbitrary kernel; needs kernel order >= N-1.
FormalSeries<ZetaPoly> sd_solve_with_kernel(const BiSeries<ZetaPoly> &kernel, int order,
                                            const SolveOptions &options = {});

/// Right side a sum gamma_n gamma_m h_{n,m} evaluated directly from a given gamma,
/// through the tower. Used to check fixed points.
FormalSeries<ZetaPoly> sd_rhs(const FormalSeries<ZetaPoly> &gamma, const BiSeries<ZetaPoly> &kernel);

/// How a pole-contribution series is normalized.
///
/// PerPole: F_k(0) = 1/k and (k - 2 gamma - 3 gamma a d/da) L_k = sum_i q_{k,i} gamma_i^2.
/// ThreeEquation: the functions of the approximate system, F = 1*F_1 and L = 2 L_1.
enum class Normalization { PerPole, ThreeEquation };

std::string to_string(Normalization n);

/// Solution of the approximate three-equation system
///   F = 1 - gamma (3a d/da + 1) F,
///   L = gamma^2 + gamma (3a d/da + 2) L,
///   gamma = 2aF - a - 2a gamma (F - 1) + a (L - gamma^2)/2.
/// F and L use the ThreeEquation normalization.
struct ApproxSolution {
    FormalSeries<Rational> F;
    FormalSeries<Rational> L;
    FormalSeries<Rational> gamma;
};

ApproxSolution approx_solve(int order);

/// Order-by-order solution of gamma (1 + 3a d/da) F_k = -k F_k + 1.
template <CoefficientRing R>
FormalSeries<R> fk_tower(int k, const FormalSeries<R> &gamma, int order,
                         Normalization norm = Normalization::PerPole)
{
    if (k < 1) {
        throw DomainError("pole index must be >= 1");
    }
    if (order < 0 || order > gamma.order()) {
        throw DomainError("fk_tower order outside the valid range of gamma");
    }
    if (!RingTraits<R>::is_zero(gamma[0])) {
        throw DomainError("fk_tower needs gamma = O(a)");
    }
    FormalSeries<R> f(order);
    const Rational inv_k(1, k);
    for (int n = 0; n <= order; ++n) {
        R acc = n == 0 ? RingTraits<R>::one() : RingTraits<R>::zero();
        for (int j = 1; j <= n; ++j) {
            acc -= RingTraits<R>::scale(gamma[j] * f[n - j], Rational(1 + 3 * (n - j)));
        }
        f[n] = RingTraits<R>::scale(acc, inv_k);
    }
    return norm == Normalization::PerPole ? f : f.scaled(Rational(k));
}

/// Order-by-order solution of (k - 2 gamma - 3 gamma a d/da) L_k = sum_i q_{k,i} gamma_i^2,
/// q_{k,i} the coefficients of the UV residue Q_k. L_k = O(a^2).
///
/// ThreeEquation normalization is only defined for k = 1 and returns 2 L_1.
template <CoefficientRing R>
FormalSeries<R> lk_tower(int k, const FormalSeries<R> &gamma, int order,
                         Normalization norm = Normalization::PerPole)
{
    if (k < 1) {
        throw DomainError("pole index must be >= 1");
    }
    if (norm == Normalization::ThreeEquation && k != 1) {
        throw DomainError("three-equation normalization exists only for k = 1");
    }
    if (order < 0 || order > gamma.order()) {
        throw DomainError("lk_tower order outside the valid range of gamma");
    }
    const auto q = mellin::uv_residue(k).residue;
    const auto tower = rg_tower(gamma.truncated(order), k);
    FormalSeries<R> source(order);
    for (int i = 1; i <= k; ++i) {
        if (q[i].is_zero()) {
            continue;
        }
        const auto &gi = tower.gamma(i);
        source += FormalSeries<R>::multiply(gi, gi, order).scaled(q[i]);
    }
    FormalSeries<R> l(order);
    const Rational inv_k(1, k);
    for (int n = 0; n <= order; ++n) {
        R acc = source[n];
        for (int j = 1; j <= n; ++j) {
            acc += RingTraits<R>::scale(gamma[j] * l[n - j], Rational(2 + 3 * (n - j)));
        }
        l[n] = RingTraits<R>::scale(acc, inv_k);
    }
    return norm == Normalization::PerPole ? l : l.scaled(Rational(2));
}

/// gamma = a - a gamma + 2 gamma^2 - 3 a gamma gamma', gamma' = d gamma/da.
FormalSeries<Rational> ode_reference(int order);

/// Affine law slope * n + intercept, parsed from text such as "-(3n+2)", "3n", "2", "-3n-5".
struct AffineLaw {
    double slope = 0.0;
    double intercept = 0.0;

    static AffineLaw parse(const std::string &text);
    double operator()(int n) const { return slope * n + intercept; }
    std::string str() const;
};

struct RatioRow {
    int n = 0;
    double ratio = 0.0;     // c_{n+1}/c_n
    double predicted = 0.0; // law(n)
    double deviation = 0.0; // |ratio - predicted| / |predicted|
    bool gap = false;       // c_n or c_{n+1} vanishes; ratio and deviation unset
};

/// Ratios c_{n+1}/c_n against an affine law, for every n with c_n known and n+1 <= order.
/// Needs at least 10 consecutive nonzero coefficients.
std::vector<RatioRow> ratio_table(const FormalSeries<Rational> &series, const AffineLaw &law);
std::vector<RatioRow> ratio_table(const std::vector<double> &coeffs, const AffineLaw &law);

} // namespace wzborel::physical
