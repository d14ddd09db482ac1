#pragma once

#include <vector>

#include "finitegap/numerics.hpp"

namespace finitegap {

class CurveError : public Error {
 public:
  using Error::Error;
};

/// Radius around lambda = 0 (the marked point at minus infinity) that glue
/// points must avoid.
inline constexpr double kMarkedPointExclusion = 1e-9;

/// Two points of the normalization identified to one double point.
struct GluePair {
  Complex first;
  Complex second;
  int multiplicity = 1;
};

/// Singular rational spectral curve: CP^1 with the glue pairs contracted.
/// Marked points are fixed by convention: lambda = infinity is infinity_+
/// with local parameter k_+ = lambda, lambda = 0 is infinity_- with
/// k_- = -|u|^2 / lambda.
class CurveSpec {
 public:
  CurveSpec(Complex u, std::vector<GluePair> glue);

  Complex u() const { return u_; }
  double abs_u2() const { return std::norm(u_); }
  const std::vector<GluePair>& glue() const { return glue_; }

  Complex k_plus(Complex lambda) const { return lambda; }
  Complex k_minus(Complex lambda) const { return -abs_u2() / lambda; }

  /// Throws CurveError("unsupported multiplicity") if any pair has
  /// multiplicity other than 1.
  void require_simple() const;

 private:
  Complex u_;
  std::vector<GluePair> glue_;
};

inline const Complex kCliffordU{0.25, 0.25};

/// u = (1+i)/4 with u glued to -conj(u) and -u glued to conj(u).
CurveSpec clifford_curve();

struct Genus {
  int geometric = 0;
  int arithmetic = 0;
};

/// p_g = 0 (rational normalization), p_a = sum over pairs of (deg D - 1)
/// where deg D = 2 * multiplicity.
Genus genus(const CurveSpec& curve);

inline Complex sigma(Complex lambda) { return -lambda; }

/// |u|^2 / conj(lambda). Throws CurveError at lambda = 0.
Complex tau(Complex lambda, Complex u);

enum class Involution { Sigma, Tau };

Complex apply(Involution which, Complex lambda, Complex u);

/// True iff the involution maps the set of glue supports onto itself.
bool permutes_glue(const CurveSpec& curve, Involution which, double tolerance = 1e-12);

}  // namespace finitegap
