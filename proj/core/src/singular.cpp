#include "wzborel/singular.hpp"

#include <cmath>

namespace wzborel::singular {

std::shared_ptr<const SymbolTable> standard_symbols()
{
    static const auto table = std::make_shared<const SymbolTable>(SymbolTable{
        {"A", Symbol{Rational(-3), Rational(5), 1}},
        {"B", Symbol{Rational(3), Rational(0), 1}},
    });
    return table;
}

TransSeries::TransSeries(std::shared_ptr<const SymbolTable> symbols, FormalSeries<Rational> regular)
    : symbols_(std::move(symbols)), regular_(std::move(regular))
{
    if (!symbols_) {
        throw DomainError("trans-series needs a symbol table");
    }
}

TransSeries TransSeries::bare(std::shared_ptr<const SymbolTable> symbols, const std::string &id, int order)
{
    TransSeries t(std::move(symbols), FormalSeries<Rational>(order));
    t.set_sector(id, FormalSeries<Rational>::monomial(1, Rational(1), order));
    return t;
}

void TransSeries::set_sector(const std::string &id, FormalSeries<Rational> u)
{
    if (symbols_->find(id) == symbols_->end()) {
        throw DomainError("unknown symbol '" + id + "'");
    }
    sectors_.insert_or_assign(id, std::move(u));
}

const FormalSeries<Rational> *TransSeries::sector(const std::string &id) const
{
    const auto it = sectors_.find(id);
    return it == sectors_.end() ? nullptr : &it->second;
}

bool operator==(const TransSeries &a, const TransSeries &b)
{
    return a.symbols() == b.symbols() && a.regular_ == b.regular_ && a.sectors_ == b.sectors_;
}

TransSeries ts_mul(const TransSeries &f, const TransSeries &g)
{
    if (f.symbol_table() != g.symbol_table() && f.symbols() != g.symbols()) {
        throw DomainError("trans-series product: symbol-table mismatch");
    }
    TransSeries r(f.symbol_table(), f.regular() * g.regular());
    for (const auto &[id, symbol] : f.symbols()) {
        (void)symbol;
        const auto *uf = f.sector(id);
        const auto *ug = g.sector(id);
        if (uf && ug) {
            r.set_sector(id, f.regular() * *ug + *uf * g.regular());
        } else if (uf) {
            r.set_sector(id, *uf * g.regular());
        } else if (ug) {
            r.set_sector(id, f.regular() * *ug);
        }
    }
    return r;
}

TransSeries ts_euler(const TransSeries &f)
{
    FormalSeries<Rational> regular = euler(f.regular());
    std::map<std::string, FormalSeries<Rational>> sectors;
    for (const auto &[id, u] : f.sectors()) {
        const Symbol &s = f.symbols().at(id);
        if (!u[0].is_zero()) {
            throw DomainError("ts_euler needs sector series of order a");
        }
        const int N = u.order();
        if (N < 1) {
            throw DomainError("ts_euler needs sector series known to order >= 1");
        }
        const Rational inv_alpha = s.alpha.inverse();
        const Rational ratio = s.beta * inv_alpha;
        // v_m = (m-1) u_m + u_{m+1}/alpha + (beta/alpha) u_m
        FormalSeries<Rational> v(N - 1);
        for (int m = 0; m < N; ++m) {
            v[m] = Rational(m - 1) * u[m] + u[m + 1] * inv_alpha + ratio * u[m];
        }
        sectors.emplace(id, std::move(v));
        // remainder -(u/a) a^{start-1}/alpha = -u a^{start-2}/alpha
        const int shift = s.start - 2;
        const int top = N + shift;
        if (top < regular.order()) {
            regular = regular.truncated(top);
        }
        for (int m = 0; m <= N; ++m) {
            const int target = m + shift;
            if (u[m].is_zero() || target > regular.order()) {
                continue;
            }
            if (target < 0) {
                throw DomainError("ts_euler remainder has a negative power of a");
            }
            regular[target] -= u[m] * inv_alpha;
        }
    }
    TransSeries r(f.symbol_table(), regular);
    for (auto &[id, v] : sectors) {
        r.set_sector(id, std::move(v));
    }
    return r;
}

FormalSeries<Rational> symbol_coefficients(const Symbol &s, int order)
{
    if (s.start < 0) {
        throw DomainError("symbol start index must be >= 0");
    }
    FormalSeries<Rational> c(order);
    if (s.start > order) {
        return c;
    }
    c[s.start] = Rational(1);
    for (int n = s.start; n < order; ++n) {
        c[n + 1] = (s.alpha * Rational(n) - s.beta) * c[n];
    }
    return c;
}

FormalSeries<Rational> expand(const TransSeries &t, int order)
{
    int valid = std::min(order, t.regular().order());
    for (const auto &[id, u] : t.sectors()) {
        valid = std::min(valid, u.order() + t.symbols().at(id).start - 1);
    }
    if (valid < 0) {
        throw DomainError("expand: nothing known at non-negative order");
    }
    FormalSeries<Rational> r = t.regular().truncated(valid);
    for (const auto &[id, u] : t.sectors()) {
        const auto c = symbol_coefficients(t.symbols().at(id), valid + 1);
        // [(u/a) C]_n = sum_m u_m C_{n+1-m}
        for (int n = 0; n <= valid; ++n) {
            for (int m = 0; m <= std::min(u.order(), n + 1); ++m) {
                if (!u[m].is_zero()) {
                    r[n] += u[m] * c[n + 1 - m];
                }
            }
        }
    }
    return r;
}

borel::SingularForm leading_borel_form(const Symbol &s)
{
    if (s.alpha.is_zero()) {
        throw DomainError("symbol with alpha = 0 has no Borel singularity");
    }
    if (s.start < 1) {
        throw DomainError("leading_borel_form needs start >= 1");
    }
    // C_n = alpha^{n-start} Gamma(n+b)/Gamma(start+b), b = -beta/alpha.
    const Rational b = -s.beta / s.alpha;
    if (b.is_integer() && b.sign() < 0) {
        throw DomainError("symbol coefficients terminate: no singularity");
    }
    borel::SingularForm form = borel::symbol_singular_form(0, Rational(1) - b);
    Rational scale = s.alpha.pow(-s.start);
    if (b.is_zero()) {
        scale /= Rational::factorial(static_cast<unsigned>(s.start - 1));
    } else {
        scale /= borel::pochhammer(b, s.start);
    }
    form.coefficient *= scale;
    form.location = s.alpha.inverse();
    return form;
}

Rational exponent_positive(int k)
{
    if (k < 1) {
        throw DomainError("singularity index must be >= 1");
    }
    return Rational(2 * (k - 1), 3);
}

Rational exponent_negative(int k)
{
    if (k < 1) {
        throw DomainError("singularity index must be >= 1");
    }
    return k == 1 ? Rational(-5, 3) : Rational(-2 * (k - 1), 3);
}

std::string ScaledCoefficient::str() const { return factor.str() + "*" + scale; }

ScaledCoefficient coeff_relation_negative(int k)
{
    if (k < 1) {
        throw DomainError("singularity index must be >= 1");
    }
    const std::string scale = "f_" + std::to_string(k);
    if (k == 1) {
        return {Rational(-6, 5), scale};
    }
    const long km1 = k - 1;
    return {Rational(-9) / Rational(static_cast<long>(k) * km1 * km1 * (2L * k + 1)), scale};
}

namespace {

SingularityReport fit_ratios(const std::vector<double> &ratios, int n_min)
{
    const int count = static_cast<int>(ratios.size());
    bool positive = ratios.front() > 0;
    for (double r : ratios) {
        if ((r > 0) != positive) {
            throw DomainError("ratio method inapplicable: irregular coefficient signs");
        }
    }
    // least squares r = A + B x, x = 1/n
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < count; ++i) {
        const double x = 1.0 / (n_min + i);
        sx += x;
        sy += ratios[static_cast<std::size_t>(i)];
        sxx += x * x;
        sxy += x * ratios[static_cast<std::size_t>(i)];
    }
    const double det = count * sxx - sx * sx;
    const double B = (count * sxy - sx * sy) / det;
    const double A = (sy - B * sx) / count;
    SingularityReport rep;
    rep.location = 1.0 / A;
    rep.exponent = -1.0 - B / A;
    rep.n_min = n_min;
    rep.n_max = n_min + count - 1;
    rep.alternating = !positive;
    for (int i = 0; i < count; ++i) {
        rep.residuals.push_back(ratios[static_cast<std::size_t>(i)] - (A + B / (n_min + i)));
    }
    if (!std::isfinite(rep.location.real()) || !std::isfinite(rep.exponent)) {
        throw ConvergenceError("ratio fit produced non-finite estimates");
    }
    return rep;
}

std::pair<int, int> resolve_window(int order, std::optional<std::pair<int, int>> window)
{
    const auto [lo, hi] = window.value_or(std::pair<int, int>{order / 2, order});
    if (lo < 1 || hi > order || hi < lo) {
        throw DomainError("ratio window [" + std::to_string(lo) + "," + std::to_string(hi)
                          + "] outside 1.." + std::to_string(order));
    }
    if (hi - lo + 1 < 8) {
        throw DomainError("ratio method needs at least 8 ratios in the window");
    }
    return {lo, hi};
}

} // namespace

SingularityReport domb_sykes(const std::vector<double> &coeffs, std::optional<std::pair<int, int>> window)
{
    if (coeffs.size() < 2) {
        throw DomainError("ratio method needs coefficients");
    }
    const auto [lo, hi] = resolve_window(static_cast<int>(coeffs.size()) - 1, window);
    std::vector<double> ratios;
    for (int n = lo; n <= hi; ++n) {
        const double prev = coeffs[static_cast<std::size_t>(n) - 1];
        if (prev == 0.0 || coeffs[static_cast<std::size_t>(n)] == 0.0) {
            throw DomainError("ratio method inapplicable: zero coefficient near n = " + std::to_string(n));
        }
        ratios.push_back(coeffs[static_cast<std::size_t>(n)] / prev);
    }
    return fit_ratios(ratios, lo);
}

SingularityReport domb_sykes(const FormalSeries<Rational> &series, std::optional<std::pair<int, int>> window)
{
    const auto [lo, hi] = resolve_window(series.order(), window);
    std::vector<double> ratios;
    for (int n = lo; n <= hi; ++n) {
        if (series[n - 1].is_zero() || series[n].is_zero()) {
            throw DomainError("ratio method inapplicable: zero coefficient near n = " + std::to_string(n));
        }
        ratios.push_back((series[n] / series[n - 1]).to_double());
    }
    return fit_ratios(ratios, lo);
}

Weight weight_of_series(const FormalSeries<ZetaPoly> &f)
{
    Weight w;
    for (int p = 0; p <= f.order(); ++p) {
        w = max(w, f[p].weight_W() - p);
    }
    return w;
}

Weight weight_at(const std::vector<ZetaPoly> &local, int offset)
{
    Weight w;
    for (std::size_t p = 0; p < local.size(); ++p) {
        w = max(w, local[p].weight_W() - (static_cast<int>(p) + offset));
    }
    return w;
}

ConvolutionWeightCheck weight_convolution_check(const borel::BorelSeries<ZetaPoly> &f,
                                                const borel::BorelSeries<ZetaPoly> &g)
{
    const auto h = borel::borel_convolve(f, g);
    ConvolutionWeightCheck out;
    out.bound = weight_of_series(f.series()) + weight_of_series(g.series()) - 1;
    out.product = weight_of_series(h.series());
    for (int p = 0; p <= h.order(); ++p) {
        if (h[p].weight_W() - p > out.bound) {
            out.holds = false;
            out.witness = p;
            break;
        }
    }
    return out;
}

WeightAudit weight_audit(const FormalSeries<ZetaPoly> &gamma_physical)
{
    const auto b = borel::borel_map(gamma_physical);
    WeightAudit audit;
    for (int p = 0; p <= b.order(); ++p) {
        WeightAuditRow row{p, b[p].weight_w(), false};
        row.drop = row.w < Weight(p);
        if (row.drop) {
            audit.drops.push_back(p);
        }
        for (const auto &[m, c] : b[p].terms()) {
            (void)c;
            for (const auto &[index, exponent] : m.factors()) {
                (void)exponent;
                audit.odd_zeta_only = audit.odd_zeta_only && index >= 3 && index % 2 == 1;
            }
        }
        audit.rows.push_back(row);
    }
    return audit;
}

} // namespace wzborel::singular
