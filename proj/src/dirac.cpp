#include "finitegap/dirac.hpp"

#include <algorithm>
#include <cmath>

namespace finitegap {

Complex potential_U(const BASolution& s) {
  Complex acc{};
  for (std::size_t i = 0; i < s.poles.size(); ++i) acc += s.t[i] * s.poles[i];
  return acc;
}

Complex potential_V(const BASolution& s) {
  const double m = std::norm(s.u);
  Complex acc{};
  for (std::size_t i = 0; i < s.poles.size(); ++i) acc += m / s.poles[i] * s.q[i];
  return acc;
}

double closed_form_U(double y) {
  const double sy = std::sin(y);
  return sy / (2.0 * std::numbers::sqrt2 * (sy - std::numbers::sqrt2));
}

SolutionProvider clifford_provider() {
  const CurveSpec curve = clifford_curve();
  const PoleDivisor poles = pole_divisor(curve.u());
  return [curve, poles](Complex z) { return solve_coefficients(curve, poles, z); };
}

namespace {

Complex component(const SolutionProvider& provider, Complex z, Complex lambda, int which) {
  const Spinor psi = eval_psi(provider(z), lambda);
  return which == 1 ? psi.psi1 : psi.psi2;
}

}  // namespace

DiracResidual dirac_residual(const SolutionProvider& provider, Complex z, Complex lambda, double h,
                             int richardson) {
  const BASolution s = provider(z);
  const Spinor psi = eval_psi(s, lambda);
  const Complex U = potential_U(s);
  const Complex V = potential_V(s);

  Partials d1;
  Partials d2;
  try {
    d1 = central_partials([&](Complex w) { return component(provider, w, lambda, 1); }, z, h, richardson);
    d2 = central_partials([&](Complex w) { return component(provider, w, lambda, 2); }, z, h, richardson);
  } catch (const NumericsError& e) {
    throw DiracError(std::string("Dirac residual stencil failed: ") + e.what());
  }
  const double norm = std::hypot(std::abs(psi.psi1), std::abs(psi.psi2));
  return {std::abs(d2.dz + U * psi.psi1) / norm, std::abs(-d1.dzbar + V * psi.psi2) / norm};
}

Complex psi2_from_dbar(const SolutionProvider& provider, Complex z, Complex lambda, double h, int richardson) {
  const Complex V = potential_V(provider(z));
  if (V == Complex{}) throw DiracError("V vanishes at z");
  const Partials d =
      central_partials([&](Complex w) { return component(provider, w, lambda, 1); }, z, h, richardson);
  return d.dzbar / V;
}

Complex period_vector(Period which) {
  return which == Period::X ? Complex{2.0 * std::numbers::pi, 0.0} : Complex{0.0, 2.0 * std::numbers::pi};
}

Complex predicted_multiplier(Complex lambda, double abs_u2, Period which) {
  const Complex i{0.0, 1.0};
  const double two_pi = 2.0 * std::numbers::pi;
  return which == Period::X ? std::exp(two_pi * (lambda - abs_u2 / lambda))
                            : std::exp(two_pi * i * (lambda + abs_u2 / lambda));
}

Complex multiplier(const SolutionProvider& provider, Complex lambda, Period which, Complex z, double tolerance) {
  const Spinor here = eval_psi(provider(z), lambda);
  const Spinor there = eval_psi(provider(z + period_vector(which)), lambda);
  if (here.psi1 == Complex{} || here.psi2 == Complex{}) throw DiracError("psi vanishes at the base point");
  const Complex r1 = there.psi1 / here.psi1;
  const Complex r2 = there.psi2 / here.psi2;
  if (std::abs(r1 - r2) > tolerance * std::max(std::abs(r1), std::abs(r2)))
    throw DiracError("not a Floquet function");
  return 0.5 * (r1 + r2);
}

std::vector<PotentialSample> sample_potential(const SolutionProvider& provider, std::size_t n) {
  if (n == 0) throw DiracError("sample count must be positive");
  std::vector<PotentialSample> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double y = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    const BASolution s = provider(Complex{0.0, y});
    out.push_back({y, potential_U(s), potential_V(s), closed_form_U(y)});
  }
  return out;
}

}  // namespace finitegap
