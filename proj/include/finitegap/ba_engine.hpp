#pragma once

#include <vector>

#include "finitegap/differentials.hpp"
#include "finitegap/numerics.hpp"
#include "finitegap/spectral_curve.hpp"

namespace finitegap {

class EngineError : public Error {
 public:
  using Error::Error;
};

/// Raised when a gluing system is singular at the requested z.
class SingularGluingError : public EngineError {
 public:
  SingularGluingError(const std::string& what, double determinant)
      : EngineError(what), determinant_(determinant) {}
  double determinant() const { return determinant_; }

 private:
  double determinant_;
};

struct Spinor {
  Complex psi1;
  Complex psi2;
};

/// exp(lambda z - |u|^2 zbar / lambda), exponent assembled in one expression.
Complex exponential_factor(Complex z, Complex lambda, double abs_u2);

/// The BA function of CP^1 with a single pole p:
/// lambda/(lambda - p) e^{lambda z - |u|^2 zbar/lambda} (1, -p/lambda).
Spinor single_pole_ba(Complex p, Complex u, Complex z, Complex lambda);

/// psi at a fixed z, as a combination of single-pole BA functions:
///   psi_1 = E * sum q_i lambda / (lambda - p_i)
///   psi_2 = E * sum t_i p_i / (p_i - lambda)
/// with sum q_i = sum t_i = 1 (the last entry is 1 - sum of the others).
struct BASolution {
  Complex z;
  Complex u;
  std::vector<Complex> poles;
  std::vector<Complex> q;
  std::vector<Complex> t;
};

/// Exclusion radius around 0 and the poles for eval_psi.
inline constexpr double kPoleExclusion = 1e-8;

/// Two glue pairs, three poles: eliminates q_3, t_3 and solves the two 2x2
/// gluing systems. Throws SingularGluingError when |det| < 1e-13 * scale.
BASolution solve_coefficients(const CurveSpec& curve, const PoleDivisor& poles, Complex z);

/// Any number r of simple glue pairs with r + 1 poles: solves the
/// (r+1)x(r+1) systems built from the gluing rows plus sum q = sum t = 1.
BASolution general_solve(const CurveSpec& curve, const PoleDivisor& poles, Complex z);

/// Throws EngineError("pole proximity") within kPoleExclusion of 0 or a pole.
Spinor eval_psi(const BASolution& s, Complex lambda);

/// psi with the exponential factor removed.
Spinor eval_psi_normalized(const BASolution& s, Complex lambda);

/// max over pairs and components of |psi(Q_1) - psi(Q_2)| / max |psi|.
double gluing_residual(const BASolution& s, const CurveSpec& curve);

}  // namespace finitegap
