#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "finitegap/dirac.hpp"
#include "finitegap/weierstrass.hpp"

using namespace finitegap;
using std::numbers::pi;

namespace {

const Complex u{0.25, 0.25};
const Complex ub = std::conj(u);
const double m = std::norm(u);

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

Outcome spectral_data() {
  const CurveSpec curve = clifford_curve();
  const PoleDivisor d = pole_divisor(curve.u());
  const double s2 = std::sqrt(2.0);
  const Complex s1 = (Complex{-1, 1} + std::sqrt(Complex{-4, -2})) / (4.0 * s2);
  const Complex s2r = (Complex{-1, 1} - std::sqrt(Complex{-4, -2})) / (4.0 * s2);
  const double e3 = std::abs(d.points[2] - 1.0 / std::sqrt(8.0));
  const double e1 = std::abs(d.points[0] - s1);
  const double e2 = std::abs(d.points[1] - s2r);
  const Genus g = genus(curve);
  const bool pass = e3 <= 1e-15 && e1 <= 1e-12 && e2 <= 1e-12 && g.geometric == 0 && g.arithmetic == 2;
  return {pass, fmt("|p3 - 1/sqrt8| = %.2e, |p1 - radical| = %.2e, |p2 - radical| = %.2e", e3, e1, e2) +
                    " genus (" + std::to_string(g.geometric) + ", " + std::to_string(g.arithmetic) + ")"};
}

Outcome differential_symmetry() {
  const DivisorSymmetryReport r = divisor_symmetry_check(u);
  Complex product{1.0};
  for (Complex z : r.q_zeros) product *= z;
  // Signed product of {+-p_i} is -|u|^6; its modulus is 1/512.
  const double product_err = std::abs(std::abs(product) - 1.0 / 512.0) * 512.0;
  const double c_err = std::abs(r.c - Complex{0.0, 1.0 / std::sqrt(8.0)});
  const bool pass = r.q_deviation <= 1e-9 && r.q_prime_deviation <= 1e-9 && r.p3_multiplicity >= 2 &&
                    product_err <= 1e-12 && r.q_zero_product_rel_error <= 1e-12 && c_err <= 1e-14 &&
                    r.a_residual <= 1e-10;
  const bool quarter = std::abs(r.a - Complex{0.25, 0.25}) < 1e-9;
  return {pass, fmt("Q dev %.2e, Q' dev %.2e, |prod| rel err %.2e, ", r.q_deviation, r.q_prime_deviation,
                    product_err) +
                    fmt("c err %.2e, a residual %.2e, ", c_err, r.a_residual) +
                    (quarter ? "satisfying a = (1+i)/4" : "satisfying a is not (1+i)/4") +
                    (r.printed_a_satisfies ? ", printed (1+i)/sqrt8 also satisfies" : ", printed (1+i)/sqrt8 fails")};
}

Outcome potential_identity() {
  const SolutionProvider provider = clifford_provider();
  double closed = 0.0, uv = 0.0, imag = 0.0;
  for (const PotentialSample& s : sample_potential(provider, 256)) {
    closed = std::max(closed, std::abs(s.U_spectral - s.U_closed));
    uv = std::max(uv, std::abs(s.U_spectral - s.V_spectral));
    imag = std::max(imag, std::abs(s.U_spectral.imag()));
  }
  double drift = 0.0;
  for (double y : {0.3, 1.9, 4.6}) {
    const BASolution a = provider(Complex{0.0, y});
    for (const Complex z : {Complex{2.2, y}, Complex{5.1, y}, Complex{0.0, y + 2.0 * pi}}) {
      const BASolution b = provider(z);
      for (std::size_t i = 0; i < 3; ++i)
        drift = std::max({drift, std::abs(a.q[i] - b.q[i]), std::abs(a.t[i] - b.t[i])});
    }
  }
  const bool pass = closed < 1e-9 && uv <= 1e-9 && imag < 1e-9 && drift <= 1e-10;
  return {pass, fmt("max |U - closed| = %.2e, max |U - V| = %.2e, max |Im U| = %.2e", closed, uv, imag) +
                    fmt(", q/t drift %.2e", drift)};
}

Outcome dirac_equation() {
  const SolutionProvider provider = clifford_provider();
  std::mt19937_64 rng(20040301);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * pi);
  std::uniform_real_distribution<double> radius(0.5, 2.5);
  double worst = 0.0, worst_ratio_dev = 0.0, psi2 = 0.0;
  int samples = 0;
  while (samples < 20) {
    const Complex z{angle(rng), angle(rng)};
    const Complex l = std::polar(radius(rng), angle(rng));
    worst = std::max(worst, dirac_residual(provider, z, l, 1e-4).max());
    const double a = dirac_residual(provider, z, l, 1e-2).max();
    const double b = dirac_residual(provider, z, l, 5e-3).max();
    worst_ratio_dev = std::max(worst_ratio_dev, std::abs(a / b - 4.0));
    if (std::abs(potential_V(provider(z))) >= 0.05) {
      const Complex direct = eval_psi(provider(z), l).psi2;
      psi2 = std::max(psi2, std::abs(psi2_from_dbar(provider, z, l) - direct) / std::abs(direct));
    }
    ++samples;
  }
  const bool pass = worst < 1e-6 && worst_ratio_dev <= 0.5 && psi2 < 1e-6;
  return {pass, fmt("max residual %.2e, max |ratio - 4| = %.3f, psi2 = dbar psi1 / V rel err %.2e", worst,
                    worst_ratio_dev, psi2)};
}

Outcome floquet() {
  const SolutionProvider provider = clifford_provider();
  double worst = 0.0;
  for (Complex l : {Complex{1.2, 0.3}, Complex{-0.7, 1.1}, Complex{0.4, -0.9}, Complex{2.0, 0.0}})
    for (Period w : {Period::X, Period::Y}) {
      const Complex predicted = predicted_multiplier(l, m, w);
      worst = std::max(worst, std::abs(multiplier(provider, l, w) - predicted) / std::abs(predicted));
    }
  double glue = 0.0;
  const CurveSpec curve = clifford_curve();
  for (Period w : {Period::X, Period::Y}) {
    glue = std::max(glue, std::abs(predicted_multiplier(u, m, w) + 1.0));
    glue = std::max(glue, std::abs(predicted_multiplier(-ub, m, w) + 1.0));
    for (const GluePair& g : curve.glue())
      glue = std::max(glue, std::abs(predicted_multiplier(g.first, m, w) - predicted_multiplier(g.second, m, w)));
  }
  const bool pass = worst <= 1e-8 && glue <= 1e-10;
  return {pass, fmt("multiplier rel err %.2e, glue/-1 deviation %.2e", worst, glue)};
}

Outcome surface() {
  const SurfaceGrid grid = integrate_surface(clifford_curve(), 64, 64);
  const Mat3 t = clifford_alignment();
  double worst = 0.0;
  for (std::size_t j = 0; j < 64; ++j)
    for (std::size_t i = 0; i < 64; ++i)
      worst = std::max(worst, distance(t * grid.positions(i, j), reference_clifford(2.0 * pi * i / 64.0,
                                                                                    2.0 * pi * j / 64.0)));
  const Mat3 tt = transpose(t);
  double orth = 0.0;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      double acc = 0.0;
      for (int k = 0; k < 3; ++k) acc += tt[r][k] * t[k][c];
      orth = std::max(orth, std::abs(acc - (r == c ? 1.0 : 0.0)));
    }
  const double det = determinant(t);
  const bool pass = grid.period_defect < 1e-8 && worst < 1e-6 && orth < 1e-15 && std::abs(det + 1.0) < 1e-15;
  return {pass, fmt("period defect %.2e, max |T x - r| = %.2e, det T = %.17g", grid.period_defect, worst, det)};
}

Outcome willmore_energy() {
  const double target = 2.0 * pi * pi;
  const double closed = willmore_closed_form(256);
  const double recon = willmore(integrate_surface(clifford_curve(), 64, 64));
  const double e1 = std::abs(closed - target) / target;
  const double e2 = std::abs(recon - target) / target;
  return {e1 <= 1e-8 && e2 <= 1e-5,
          fmt("closed form %.15f (rel %.2e), reconstructed rel err %.2e", closed, e1, e2)};
}

Outcome engine_consistency() {
  const CurveSpec curve = clifford_curve();
  const PoleDivisor poles = pole_divisor(u);
  double agree = 0.0;
  for (Complex z : {Complex{0.0, 0.0}, Complex{1.3, 2.4}, Complex{4.0, 5.5}, Complex{6.0, 0.7}}) {
    const BASolution a = solve_coefficients(curve, poles, z);
    const BASolution b = general_solve(curve, poles, z);
    for (std::size_t i = 0; i < 3; ++i) agree = std::max({agree, std::abs(a.q[i] - b.q[i]), std::abs(a.t[i] - b.t[i])});
  }
  const Complex p{0.4, 0.1};
  const CurveSpec bare(u, {});
  const Complex z{0.2, 0.5};
  const BASolution s = general_solve(bare, PoleDivisor{{p}}, z);
  // "Exactly" up to the rounding of one complex division.
  const double eps = std::numeric_limits<double>::epsilon();
  const bool exact_uv = potential_U(s) == p && std::abs(potential_V(s) - m / p) <= 4.0 * eps * std::abs(m / p);
  double single = 0.0;
  for (Complex l : {Complex{1.3, -0.6}, Complex{-0.9, 0.2}, Complex{0.1, 2.0}}) {
    const Spinor a = eval_psi(s, l);
    const Spinor b = single_pole_ba(p, u, z, l);
    single = std::max({single, std::abs(a.psi1 - b.psi1), std::abs(a.psi2 - b.psi2)});
  }
  const bool pass = agree <= 1e-12 && exact_uv && single <= 1e-14;
  return {pass, fmt("general vs reduced %.2e, single-pole deviation %.2e", agree, single) +
                    (exact_uv ? ", U = p exactly and V = |u|^2/p to rounding" : ", single-pole U/V mismatch")};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"spectral data", spectral_data},
      {"differential symmetry", differential_symmetry},
      {"potential identity", potential_identity},
      {"Dirac equation", dirac_equation},
      {"Floquet structure", floquet},
      {"surface reconstruction", surface},
      {"Willmore energy", willmore_energy},
      {"engine consistency", engine_consistency},
  };
  int failures = 0;
  int index = 1;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s %d %s: %s\n", o.pass ? "PASS" : "FAIL", index++, name, o.detail.c_str());
  }
  std::printf("acceptance: %s\n", failures == 0 ? "PASS" : "FAIL");
  return failures == 0 ? 0 : 1;
}
