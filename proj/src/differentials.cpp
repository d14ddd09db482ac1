#include "finitegap/differentials.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace finitegap {

namespace {

Polynomial poly(std::initializer_list<Complex> ascending) { return Polynomial(std::vector<Complex>(ascending)); }

// (lambda^2 + s|u|^2)(lambda^2 - u^2)(lambda^2 - conj u^2)
//   + lambda^2 (u + conj u)[(x - y)(lambda^2 - |u|^2) + (x + y)(u - conj u) lambda]
Polynomial family_polynomial(Complex u, double s, Complex x, Complex y) {
  const Complex ub = std::conj(u);
  const double m = std::norm(u);
  const Polynomial base = poly({s * m, 0.0, 1.0}) * poly({-u * u, 0.0, 1.0}) * poly({-ub * ub, 0.0, 1.0});
  const Polynomial bracket = poly({-(x - y) * m, (x + y) * (u - ub), x - y});
  return base + poly({0.0, 0.0, u + ub}) * bracket;
}

// Synthetic division by (lambda - root); returns quotient, stores remainder.
Polynomial deflate(const Polynomial& p, Complex root, Complex& remainder) {
  const auto& c = p.coefficients();
  const std::size_t n = c.size();
  std::vector<Complex> q(n - 1);
  Complex carry = c[n - 1];
  for (std::size_t k = n - 1; k-- > 0;) {
    q[k] = carry;
    carry = c[k] + carry * root;
  }
  remainder = carry;
  return Polynomial(std::move(q));
}

bool is_clifford_u(Complex u) { return std::abs(u - kCliffordU) <= 1e-15; }

std::string format_set(const std::vector<Complex>& values) {
  std::ostringstream out;
  out.precision(12);
  out << "{";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out << ", ";
    out << values[i].real() << (values[i].imag() < 0 ? "-" : "+") << std::abs(values[i].imag()) << "i";
  }
  out << "}";
  return out.str();
}

}  // namespace

Complex OmegaFamily::coefficient(Complex lambda) const {
  const Complex ub = std::conj(u);
  const double m = std::norm(u);
  const double s = kind == OmegaKind::Holomorphic ? -1.0 : 1.0;
  const Complex l2 = lambda * lambda;
  return -((l2 + s * m) / l2 + first * (1.0 / (lambda - u) - 1.0 / (lambda + ub)) +
           second * (1.0 / (lambda + u) - 1.0 / (lambda - ub)));
}

Complex OmegaFamily::residue_at(Complex point) const {
  const Complex ub = std::conj(u);
  const double tol = 1e-14 * std::max(1.0, std::abs(u));
  Complex r{};
  if (std::abs(point - u) <= tol) r -= first;
  if (std::abs(point + ub) <= tol) r += first;
  if (std::abs(point + u) <= tol) r -= second;
  if (std::abs(point - ub) <= tol) r += second;
  return r;
}

Polynomial zero_polynomial(const OmegaFamily& omega) {
  const double s = omega.kind == OmegaKind::Holomorphic ? -1.0 : 1.0;
  return family_polynomial(omega.u, s, omega.first, omega.second);
}

Polynomial q_polynomial(Complex u, Complex a, Complex b) {
  if (u == Complex{}) throw DifferentialsError("u must be nonzero");
  return zero_polynomial(OmegaFamily::holomorphic(u, a, b));
}

Polynomial q_prime_polynomial(Complex u, Complex c, Complex d) {
  if (u == Complex{}) throw DifferentialsError("u must be nonzero");
  return zero_polynomial(OmegaFamily::antiholomorphic(u, c, d));
}

Complex symmetric_c(Complex u) {
  const Complex u2 = u * u;
  const Complex ub2 = std::conj(u2);
  if (u2 == ub2) throw DifferentialsError("c = d is undefined when u^2 is real");
  const double r = std::abs(u);
  return ((u2 + ub2) * r - 2.0 * r * r * r) / (u2 - ub2);
}

PoleDivisor pole_divisor(Complex u, PoleChoice choice) {
  if (!is_clifford_u(u)) throw DifferentialsError("unsupported u");
  const double p3 = 1.0 / std::sqrt(1.0 / std::norm(u));
  const Complex c = symmetric_c(u);
  const Polynomial qp = q_prime_polynomial(u, c, c);

  Complex r1;
  Complex r2;
  const Polynomial quartic = deflate(deflate(qp, p3, r1), p3, r2);
  const double scale = qp.max_abs_coefficient();
  if (std::abs(r1) > 1e-13 * scale || std::abs(r2) > 1e-13 * scale)
    throw DifferentialsError("|u| is not a double zero of omega'");

  // Roots come in pairs with lambda * lambda' = |u|^2; the pair whose
  // normalized sum has positive imaginary part is the listed choice.
  std::vector<Complex> roots = poly_roots(quartic);
  const double m = std::norm(u);
  std::size_t partner = 1;
  for (std::size_t j = 2; j < 4; ++j)
    if (std::abs(roots[0] * roots[j] - m) < std::abs(roots[0] * roots[partner] - m)) partner = j;
  std::vector<Complex> pair_a = {roots[0], roots[partner]};
  std::vector<Complex> pair_b;
  for (std::size_t j = 1; j < 4; ++j)
    if (j != partner) pair_b.push_back(roots[j]);

  std::vector<Complex> listed = ((pair_a[0] + pair_a[1]).imag() > 0.0) ? pair_a : pair_b;
  std::sort(listed.begin(), listed.end(), [](Complex x, Complex y) { return x.real() > y.real(); });

  Complex p1 = listed[0];
  Complex p2 = listed[1];
  if (choice == PoleChoice::TauImage) {
    p1 = tau(p1, u);
    p2 = tau(p2, u);
  }
  return PoleDivisor{{p1, p2, Complex{p3}}};
}

Complex solve_a_from_poles(Complex p1, Complex p2, Complex u) {
  if (p1 == Complex{} || p2 == Complex{}) throw DifferentialsError("poles must be nonzero");
  const Complex ub = std::conj(u);
  if (u + ub == Complex{}) throw DifferentialsError("u + conj(u) = 0: the a-term vanishes");
  auto induced = [&](Complex p) {
    const Complex p2v = p * p;
    return -(p2v - u * u) * (p2v - ub * ub) / (2.0 * (u + ub) * p2v);
  };
  const Complex a1 = induced(p1);
  const Complex a2 = induced(p2);
  if (std::abs(a1 - a2) > 1e-9) throw DifferentialsError("inconsistent pole pair");
  return 0.5 * (a1 + a2);
}

Complex printed_clifford_a() { return Complex{1.0, 1.0} / std::sqrt(8.0); }

double residue_regularity(const OmegaFamily& omega, const CurveSpec& curve,
                          const std::function<Complex(Complex)>& f) {
  double worst = 0.0;
  for (const GluePair& g : curve.glue()) {
    if (g.first == Complex{} || g.second == Complex{})
      throw DifferentialsError("higher-order pole of omega at a glue point");
    const Complex sum = f(g.first) * omega.residue_at(g.first) + f(g.second) * omega.residue_at(g.second);
    worst = std::max(worst, std::abs(sum));
  }
  return worst;
}

DivisorSymmetryReport divisor_symmetry_check(Complex u, double tolerance) {
  DivisorSymmetryReport r;
  r.poles = pole_divisor(u);
  const auto& p = r.poles.points;

  r.a = solve_a_from_poles(p[0], p[1], u);
  const Polynomial q = q_polynomial(u, r.a, -r.a);
  r.a_residual = std::max(std::abs(q(p[0])), std::abs(q(p[1])));
  const Polynomial q_printed = q_polynomial(u, printed_clifford_a(), -printed_clifford_a());
  r.printed_a_residual = std::max(std::abs(q_printed(p[0])), std::abs(q_printed(p[1])));
  r.printed_a_satisfies = r.printed_a_residual <= 1e-10;

  r.c = symmetric_c(u);
  const Polynomial qp = q_prime_polynomial(u, r.c, r.c);

  r.q_zeros = poly_roots(q);
  for (Complex x : p) {
    r.q_expected.push_back(x);
    r.q_expected.push_back(sigma(x));
  }
  r.q_deviation = multiset_distance(r.q_zeros, r.q_expected);

  r.q_prime_zeros = poly_roots(qp);
  for (Complex x : p) r.q_prime_expected.push_back(x);
  for (Complex x : p) r.q_prime_expected.push_back(tau(x, u));
  r.q_prime_deviation = multiset_distance(r.q_prime_zeros, r.q_prime_expected);

  r.p3_multiplicity = static_cast<int>(std::count_if(r.q_prime_zeros.begin(), r.q_prime_zeros.end(),
                                                     [&](Complex z) { return std::abs(z - p[2]) <= tolerance; }));
  r.q_prime_at_p3 = std::abs(qp(p[2]));
  r.q_prime_slope_at_p3 = std::abs(qp.derivative()(p[2]));

  Complex product{1.0};
  for (Complex z : r.q_zeros) product *= z;
  const double expected_product = -std::pow(std::norm(u), 3);
  r.q_zero_product_rel_error = std::abs(product - expected_product) / std::abs(expected_product);

  std::vector<Complex> mirrored;
  for (Complex z : r.q_zeros) mirrored.push_back(sigma(z));
  r.sigma_invariance = multiset_distance(r.q_zeros, mirrored);
  std::vector<Complex> reflected;
  for (Complex z : r.q_prime_zeros) reflected.push_back(tau(z, u));
  r.tau_invariance = multiset_distance(r.q_prime_zeros, reflected);

  std::ostringstream detail;
  if (r.q_deviation > tolerance)
    detail << "zeros(Q) = " << format_set(r.q_zeros) << " differ from D + sigma(D) = "
           << format_set(r.q_expected) << "; ";
  if (r.q_prime_deviation > tolerance)
    detail << "zeros(Q') = " << format_set(r.q_prime_zeros) << " differ from D + tau(D) = "
           << format_set(r.q_prime_expected) << "; ";
  if (r.p3_multiplicity < 2) detail << "p3 is not a double zero of Q'; ";
  if (r.a_residual > 1e-10) detail << "resolved a does not annihilate Q at p1, p2; ";
  r.passed = detail.str().empty();
  detail << "a = " << format_set({r.a})
         << (r.printed_a_satisfies ? " (printed (1+i)/sqrt(8) also satisfies Q(p1) = Q(p2) = 0)"
                                   : " (printed (1+i)/sqrt(8) does not satisfy Q(p1) = Q(p2) = 0)");
  r.detail = detail.str();
  return r;
}

}  // namespace finitegap
