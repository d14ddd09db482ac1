#include "finitegap/ba_engine.hpp"

#include <algorithm>
#include <cmath>

namespace finitegap {

namespace {

using Basis = Complex (*)(Complex lambda, Complex p);

// Rational parts of the single-pole functions for each spinor component.
Complex first_component(Complex lambda, Complex p) { return lambda / (lambda - p); }
Complex second_component(Complex lambda, Complex p) { return p / (p - lambda); }

void validate_poles(const CurveSpec& curve, const PoleDivisor& poles) {
  const auto& pts = poles.points;
  if (pts.empty()) throw EngineError("pole divisor is empty");
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!is_finite(pts[i]) || std::abs(pts[i]) <= kMarkedPointExclusion)
      throw EngineError("poles must be finite and away from lambda = 0");
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (pts[i] == pts[j]) throw EngineError("poles must be pairwise distinct");
    for (const GluePair& g : curve.glue())
      if (std::abs(pts[i] - g.first) <= kPoleExclusion || std::abs(pts[i] - g.second) <= kPoleExclusion)
        throw EngineError("a pole coincides with a glue point");
  }
}

// Last entry is fixed by the normalization sum = 1.
std::vector<Complex> complete(std::span<const Complex> free) {
  std::vector<Complex> out(free.begin(), free.end());
  Complex rest{1.0};
  for (Complex v : free) rest -= v;
  out.push_back(rest);
  return out;
}

std::vector<Complex> solve_reduced(const CurveSpec& curve, const std::vector<Complex>& p, Complex z,
                                   Basis f, const char* label) {
  const double m = curve.abs_u2();
  ComplexMatrix a(2, 2);
  std::vector<Complex> rhs(2);
  for (std::size_t k = 0; k < 2; ++k) {
    const Complex la = curve.glue()[k].first;
    const Complex lb = curve.glue()[k].second;
    const Complex ea = exponential_factor(z, la, m);
    const Complex eb = exponential_factor(z, lb, m);
    for (std::size_t i = 0; i < 2; ++i)
      a(k, i) = ea * (f(la, p[i]) - f(la, p[2])) - eb * (f(lb, p[i]) - f(lb, p[2]));
    rhs[k] = -(ea * f(la, p[2]) - eb * f(lb, p[2]));
  }
  const Complex det = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  const double scale = (std::abs(a(0, 0)) + std::abs(a(0, 1))) * (std::abs(a(1, 0)) + std::abs(a(1, 1)));
  if (!(std::abs(det) >= 1e-13 * scale))
    throw SingularGluingError(std::string("singular gluing system for ") + label, std::abs(det));
  return complete(solve_small(a, rhs));
}

std::vector<Complex> solve_full(const CurveSpec& curve, const std::vector<Complex>& p, Complex z, Basis f) {
  const double m = curve.abs_u2();
  const std::size_t n = p.size();
  ComplexMatrix a(n, n);
  std::vector<Complex> rhs(n);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const Complex la = curve.glue()[k].first;
    const Complex lb = curve.glue()[k].second;
    const Complex ea = exponential_factor(z, la, m);
    const Complex eb = exponential_factor(z, lb, m);
    for (std::size_t i = 0; i < n; ++i) a(k, i) = ea * f(la, p[i]) - eb * f(lb, p[i]);
  }
  for (std::size_t i = 0; i < n; ++i) a(n - 1, i) = 1.0;
  rhs[n - 1] = 1.0;
  std::vector<Complex> x;
  try {
    x = solve_linear(a, rhs);
  } catch (const NumericsError&) {
    throw EngineError("rank-deficient constraint matrix");
  }
  return complete(std::span<const Complex>(x).first(n - 1));
}

}  // namespace

Complex exponential_factor(Complex z, Complex lambda, double abs_u2) {
  return std::exp(lambda * z - (abs_u2 / lambda) * std::conj(z));
}

Spinor single_pole_ba(Complex p, Complex u, Complex z, Complex lambda) {
  if (std::abs(lambda) <= kPoleExclusion || std::abs(lambda - p) <= kPoleExclusion)
    throw EngineError("pole proximity");
  const Complex e = exponential_factor(z, lambda, std::norm(u));
  const Complex r = lambda / (lambda - p);
  return {r * e, -r * (p / lambda) * e};
}

BASolution solve_coefficients(const CurveSpec& curve, const PoleDivisor& poles, Complex z) {
  curve.require_simple();
  if (curve.glue().size() != 2 || poles.points.size() != 3)
    throw EngineError("solve_coefficients expects two glue pairs and three poles");
  validate_poles(curve, poles);
  BASolution s{z, curve.u(), poles.points, {}, {}};
  s.q = solve_reduced(curve, s.poles, z, first_component, "q");
  s.t = solve_reduced(curve, s.poles, z, second_component, "t");
  return s;
}

BASolution general_solve(const CurveSpec& curve, const PoleDivisor& poles, Complex z) {
  curve.require_simple();
  if (poles.points.size() != curve.glue().size() + 1)
    throw EngineError("general_solve needs exactly one more pole than glue pairs");
  validate_poles(curve, poles);
  BASolution s{z, curve.u(), poles.points, {}, {}};
  s.q = solve_full(curve, s.poles, z, first_component);
  s.t = solve_full(curve, s.poles, z, second_component);
  return s;
}

Spinor eval_psi_normalized(const BASolution& s, Complex lambda) {
  if (!is_finite(lambda)) throw EngineError("lambda must be finite");
  if (std::abs(lambda) <= kPoleExclusion) throw EngineError("pole proximity");
  for (Complex p : s.poles)
    if (std::abs(lambda - p) <= kPoleExclusion) throw EngineError("pole proximity");
  Spinor out{};
  for (std::size_t i = 0; i < s.poles.size(); ++i) {
    out.psi1 += s.q[i] * first_component(lambda, s.poles[i]);
    out.psi2 += s.t[i] * second_component(lambda, s.poles[i]);
  }
  return out;
}

Spinor eval_psi(const BASolution& s, Complex lambda) {
  const Spinor n = eval_psi_normalized(s, lambda);
  const Complex e = exponential_factor(s.z, lambda, std::norm(s.u));
  return {n.psi1 * e, n.psi2 * e};
}

double gluing_residual(const BASolution& s, const CurveSpec& curve) {
  double worst = 0.0;
  for (const GluePair& g : curve.glue()) {
    const Spinor a = eval_psi(s, g.first);
    const Spinor b = eval_psi(s, g.second);
    const double scale = std::max({std::abs(a.psi1), std::abs(a.psi2), std::abs(b.psi1), std::abs(b.psi2), 1e-300});
    worst = std::max({worst, std::abs(a.psi1 - b.psi1) / scale, std::abs(a.psi2 - b.psi2) / scale});
  }
  return worst;
}

}  // namespace finitegap
