#pragma once

#include <functional>
#include <numbers>
#include <vector>

#include "finitegap/ba_engine.hpp"

namespace finitegap {

class DiracError : public Error {
 public:
  using Error::Error;
};

/// U = -xi^+_2 = sum t_i p_i.
Complex potential_U(const BASolution& s);
/// V = xi^-_1 = |u|^2 sum q_i / p_i.
Complex potential_V(const BASolution& s);

/// sin y / (2 sqrt2 (sin y - sqrt2)). This is the sign produced by the
/// spectral construction; the geometric potential H e^alpha / 2 of the
/// Clifford torus is its negative, the two differing by the orientation
/// reversing map onto the reference torus.
double closed_form_U(double y);

using SolutionProvider = std::function<BASolution(Complex z)>;

/// Provider re-solving the Clifford gluing systems at each z.
SolutionProvider clifford_provider();

struct DiracResidual {
  double first = 0.0;   // |d psi_2 + U psi_1| / |psi|
  double second = 0.0;  // |-dbar psi_1 + V psi_2| / |psi|
  double max() const { return first > second ? first : second; }
};

/// Residual of D psi = 0 at (z, lambda) with central differences of step h
/// (plain central differences when richardson = 0).
DiracResidual dirac_residual(const SolutionProvider& provider, Complex z, Complex lambda,
                             double h = kDefaultStep, int richardson = 0);

/// dbar psi_1 / V, which equals psi_2 for the Clifford data.
Complex psi2_from_dbar(const SolutionProvider& provider, Complex z, Complex lambda,
                       double h = kDefaultStep, int richardson = 1);

enum class Period { X, Y };

/// gamma_1 = 2 pi, gamma_2 = 2 pi i.
Complex period_vector(Period which);

/// e^{2pi(lambda - |u|^2/lambda)} for X, e^{2 pi i(lambda + |u|^2/lambda)} for Y.
Complex predicted_multiplier(Complex lambda, double abs_u2, Period which);

/// psi(z + gamma) / psi(z). Throws DiracError("not a Floquet function") when
/// the two component ratios differ by more than tolerance (relative).
Complex multiplier(const SolutionProvider& provider, Complex lambda, Period which,
                   Complex z = Complex{0.3, 0.7}, double tolerance = 1e-8);

struct PotentialSample {
  double y = 0.0;
  Complex U_spectral;
  Complex V_spectral;
  double U_closed = 0.0;
};

/// n uniform samples of y in [0, 2pi) at x = 0.
std::vector<PotentialSample> sample_potential(const SolutionProvider& provider, std::size_t n);

}  // namespace finitegap
