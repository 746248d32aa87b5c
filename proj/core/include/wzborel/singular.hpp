#pragma once

#include <complex>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wzborel/borel.hpp"
#include "wzborel/error.hpp"
#include "wzborel/formal_series.hpp"
#include "wzborel/weight.hpp"
#include "wzborel/zeta_poly.hpp"

namespace wzborel::singular {

/// Trans-series symbol C = sum_{n>=start} C_n a^n, C_start = 1, C_{n+1} = (alpha n - beta) C_n.
struct Symbol {
    Rational alpha;
    Rational beta;
    int start = 1;

    friend bool operator==(const Symbol &, const Symbol &) = default;
};

using SymbolTable = std::map<std::string, Symbol>;

/// A: A_{n+1} = -(3n+5) A_n. B: B_{n+1} = 3n B_n.
std::shared_ptr<const SymbolTable> standard_symbols();

/// regular(a) + sum_S (u_S(a)/a) S(a), first order in each symbol.
///
/// The sector series u_S stores its a-powers shifted by one, so a^m S is u_S = a^{m+1}
/// and the bare symbol is u_S = a.
class TransSeries {
public:
    TransSeries(std::shared_ptr<const SymbolTable> symbols, FormalSeries<Rational> regular);

    static TransSeries bare(std::shared_ptr<const SymbolTable> symbols, const std::string &id, int order);

    const SymbolTable &symbols() const { return *symbols_; }
    const std::shared_ptr<const SymbolTable> &symbol_table() const { return symbols_; }
    const FormalSeries<Rational> &regular() const { return regular_; }
    FormalSeries<Rational> &regular() { return regular_; }
    const std::map<std::string, FormalSeries<Rational>> &sectors() const { return sectors_; }

    /// Sets the sector series u_S; the symbol must exist in the table.
    void set_sector(const std::string &id, FormalSeries<Rational> u);
    /// Sector series of id, or nullptr when absent.
    const FormalSeries<Rational> *sector(const std::string &id) const;

    friend bool operator==(const TransSeries &a, const TransSeries &b);

private:
    std::shared_ptr<const SymbolTable> symbols_;
    FormalSeries<Rational> regular_;
    std::map<std::string, FormalSeries<Rational>> sectors_;
};

/// Product; symbol-times-symbol terms are dropped.
TransSeries ts_mul(const TransSeries &f, const TransSeries &g);

/// a d/da using a dC/da = C/(alpha a) + (beta/alpha) C - a^{start-1}/alpha on each symbol.
/// Sector series must be O(a); the polynomial remainder goes to the regular part.
TransSeries ts_euler(const TransSeries &f);

/// Coefficients of symbol C to the given order.
FormalSeries<Rational> symbol_coefficients(const Symbol &s, int order);

/// Plain series obtained by substituting every symbol by its coefficients.
FormalSeries<Rational> expand(const TransSeries &t, int order);

/// Leading singular form of B(a C) for symbol C: location 1/alpha.
borel::SingularForm leading_borel_form(const Symbol &s);

/// Exponent at xi = +k/3: 2(k-1)/3.
Rational exponent_positive(int k);
/// Exponent at xi = -k/3: -5/3 for k = 1, -2(k-1)/3 for k >= 2.
Rational exponent_negative(int k);

/// c_k as a rational multiple of the undetermined scale token f_k.
struct ScaledCoefficient {
    Rational factor;
    std::string scale;
    std::string str() const;
};
ScaledCoefficient coeff_relation_negative(int k);

struct SingularityReport {
    std::complex<double> location;
    double exponent = 0.0;
    int n_min = 0;
    int n_max = 0;
    bool alternating = false;
    std::vector<double> residuals; // one per fitted ratio, n = n_min..n_max
};

/// Ratio-method fit c_n/c_{n-1} = (1/xi0)(1 - (1+beta)/n), linear in 1/n, over [nMin, nMax].
/// Default window (N/2, N). Needs >= 8 ratios; gaps or irregular signs are rejected.
SingularityReport domb_sykes(const std::vector<double> &coeffs, std::optional<std::pair<int, int>> window = {});
SingularityReport domb_sykes(const FormalSeries<Rational> &series,
                             std::optional<std::pair<int, int>> window = {});

/// sup_p (W(a_p) - p) with the modified weight W(zeta(2n+1)) = 2n.
Weight weight_of_series(const FormalSeries<ZetaPoly> &f);
/// Local weight of an expansion sum_p a_p (xi - xi0)^{alpha + offset + p}: sup_p (W(a_p) - p - offset).
Weight weight_at(const std::vector<ZetaPoly> &local, int offset);

struct ConvolutionWeightCheck {
    bool holds = true;
    Weight product;
    Weight bound; // W(f) + W(g) - 1
    std::optional<int> witness;
};
ConvolutionWeightCheck weight_convolution_check(const borel::BorelSeries<ZetaPoly> &f,
                                                const borel::BorelSeries<ZetaPoly> &g);

/// Usual weight w of Borel coefficients c_p = [B gamma]_p, p = 0..order.
struct WeightAuditRow {
    int p = 0;
    Weight w;
    bool drop = false; // w < p
};
struct WeightAudit {
    std::vector<WeightAuditRow> rows;
    std::vector<int> drops;
    bool odd_zeta_only = true;
};
WeightAudit weight_audit(const FormalSeries<ZetaPoly> &gamma_physical);

} // namespace wzborel::singular
