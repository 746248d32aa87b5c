#pragma once

#include <complex>
#include <string>

#include "wzborel/error.hpp"
#include "wzborel/formal_series.hpp"
#include "wzborel/zeta_poly.hpp"

/// The one-loop Mellin kernel
///
///   H(x,y) = G(1-x-y) G(1+x) G(1+y) / ( G(2+x+y) G(1-x) G(1-y) ),   G = Gamma,
///
/// as exact Taylor data over the odd-zeta ring, its pole residues, and
/// numerically in the complex domain.
namespace wzborel::mellin {

using Complex = std::complex<double>;

enum class PoleFamily { IR, UV };

/// Residue data of one pole family member.
///
/// IR (x = -l): residue is P_l(y), a series in the other variable.
/// UV (x + y = k): residue restricted to the line is Q_k(xy), a polynomial in X = xy.
struct PolePart {
    PoleFamily family;
    int index;
    FormalSeries<Rational> residue;
};

/// Taylor coefficients h_{m,n} of H to total degree N.
///
/// Uses H = exp(2 sum_k zeta(2k+1)/(2k+1) ((x+y)^{2k+1} - x^{2k+1} - y^{2k+1})) / (1+x+y).
/// Throws DomainError when N needs a zeta index above max_zeta_index().
BiSeries<ZetaPoly> h_taylor(int order);

/// Residue of H in x at x = -l, as a series in y known to order N.
PolePart ir_residue(int l, int order);

/// Q_k with Res_{x+y=k} H = Q_k(xy); degree k, no constant term.
/// Throws ConsistencyError if the residue fails to reduce to a polynomial in xy.
PolePart uv_residue(int k);

/// H minus its first k pairs of IR poles, P_l(y)/(l+x) + P_l(x)/(l+y).
struct SubtractedKernel {
    BiSeries<ZetaPoly> series;
    int subtracted_poles = 0;
    /// Human-readable statement of the subtraction convention, for output metadata.
    std::string convention;
};
SubtractedKernel h_subtracted(int k, int order);

class PoleProximityError : public DomainError {
public:
    PoleProximityError(PoleFamily family, int index, const std::string &what)
        : DomainError(what), family_(family), index_(index)
    {
    }
    PoleFamily family() const noexcept { return family_; }
    int index() const noexcept { return index_; }

private:
    PoleFamily family_;
    int index_;
};

inline constexpr double kDefaultPoleGuard = 1e-3;

/// H(x, y) via log-Gamma. Refuses arguments within `guard` of a pole:
/// x or y near a negative integer (IR), x + y near a positive integer (UV).
Complex h_eval_complex(Complex x, Complex y, double guard = kDefaultPoleGuard);

/// Numeric value of the k-pole subtracted kernel; finite at the subtracted poles.
Complex h_subtracted_eval_complex(int k, Complex x, Complex y, double guard = kDefaultPoleGuard);

} // namespace wzborel::mellin
