#pragma once

#include <functional>
#include <string>
#include <vector>

#include "finitegap/numerics.hpp"
#include "finitegap/spectral_curve.hpp"

namespace finitegap {

class DifferentialsError : public Error {
 public:
  using Error::Error;
};

/// Which principal-part convention the differential carries at infinity_+-.
/// Holomorphic: +-k^2 (pairs with sigma). Antiholomorphic: +k^2 at both
/// (pairs with tau).
enum class OmegaKind { Holomorphic, Antiholomorphic };

/// omega = -[(lambda^2 -+ |u|^2)/lambda^2
///           + first  * (1/(lambda - u) - 1/(lambda + conj u))
///           + second * (1/(lambda + u) - 1/(lambda - conj u))] dlambda
/// first/second are (a, b) for the holomorphic family and (c, d) for the
/// antiholomorphic one.
struct OmegaFamily {
  OmegaKind kind = OmegaKind::Holomorphic;
  Complex u;
  Complex first;
  Complex second;

  static OmegaFamily holomorphic(Complex u, Complex a, Complex b) {
    return {OmegaKind::Holomorphic, u, a, b};
  }
  static OmegaFamily antiholomorphic(Complex u, Complex c, Complex d) {
    return {OmegaKind::Antiholomorphic, u, c, d};
  }

  /// The coefficient of dlambda.
  Complex coefficient(Complex lambda) const;
  /// Residue at a finite point other than 0 (zero away from +-u, +-conj u).
  Complex residue_at(Complex point) const;
};

/// Numerator of omega over -lambda^2 (lambda^2 - u^2)(lambda^2 - conj(u)^2):
/// its roots are the zeros of omega.
Polynomial zero_polynomial(const OmegaFamily& omega);

/// Zero polynomial of the holomorphic family.
Polynomial q_polynomial(Complex u, Complex a, Complex b);
/// Zero polynomial of the antiholomorphic family.
Polynomial q_prime_polynomial(Complex u, Complex c, Complex d);

/// c = d for which (lambda - |u|)^2 divides Q'.
Complex symmetric_c(Complex u);

/// Poles of the BA function, in order p_1, ..., p_{r+1}.
struct PoleDivisor {
  std::vector<Complex> points;
};

/// The two admissible choices of (p_1, p_2) among the zeros of omega'.
enum class PoleChoice { Listed, TauImage };

/// Pole divisor for the Clifford value u = (1+i)/4 only; any other u throws
/// DifferentialsError("unsupported u"). p_3 = |u|; p_1, p_2 are taken from
/// the roots of Q'/(lambda - |u|)^2.
PoleDivisor pole_divisor(Complex u, PoleChoice choice = PoleChoice::Listed);

/// a (with b = -a) for which (l^2 - u^2)(l^2 - conj u^2) + 2a(u + conj u) l^2
/// vanishes at both p1 and p2.
Complex solve_a_from_poles(Complex p1, Complex p2, Complex u);

/// The value of a printed alongside the Clifford pole choice, (1+i)/sqrt(8).
Complex printed_clifford_a();

/// max over glue pairs of |sum_l f(Q_l) Res_{Q_l} omega|. A regular form on
/// the curve gives zero for every f that takes equal values on each pair.
double residue_regularity(const OmegaFamily& omega, const CurveSpec& curve,
                          const std::function<Complex(Complex)>& f = [](Complex) { return Complex{1.0}; });

struct DivisorSymmetryReport {
  PoleDivisor poles;
  Complex a;                  // resolved value, Q(p1) = Q(p2) = 0
  double a_residual = 0.0;    // max |Q(p_i)| with the resolved a
  double printed_a_residual = 0.0;
  bool printed_a_satisfies = false;
  Complex c;

  std::vector<Complex> q_zeros;
  std::vector<Complex> q_expected;  // D + sigma(D)
  double q_deviation = 0.0;

  std::vector<Complex> q_prime_zeros;
  std::vector<Complex> q_prime_expected;  // D + tau(D)
  double q_prime_deviation = 0.0;

  int p3_multiplicity = 0;  // in zeros(Q')
  double q_prime_at_p3 = 0.0;
  double q_prime_slope_at_p3 = 0.0;

  double q_zero_product_rel_error = 0.0;  // vs |u|^6
  double sigma_invariance = 0.0;          // zeros(Q) vs sigma(zeros(Q))
  double tau_invariance = 0.0;            // zeros(Q') vs tau(zeros(Q'))

  bool passed = false;
  std::string detail;
};

DivisorSymmetryReport divisor_symmetry_check(Complex u, double tolerance = 1e-9);

}  // namespace finitegap
