#include "finitegap/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace finitegap {

Complex principal_sqrt(Complex z) {
  Complex r = std::sqrt(z);
  // std::sqrt follows the sign of a signed-zero imaginary part on the cut.
  if (r.real() == 0.0 && r.imag() < 0.0) r = -r;
  return r;
}

bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(std::vector<Complex> ascending) : coeffs_(std::move(ascending)) {
  while (!coeffs_.empty() && coeffs_.back() == Complex{}) coeffs_.pop_back();
}

Polynomial Polynomial::from_roots(std::span<const Complex> roots) {
  std::vector<Complex> c{1.0};
  for (Complex r : roots) {
    std::vector<Complex> next(c.size() + 1);
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= r * c[k];
    }
    c = std::move(next);
  }
  return Polynomial(std::move(c));
}

Complex Polynomial::coefficient(int power) const {
  if (power < 0 || power > degree()) return {};
  return coeffs_[static_cast<std::size_t>(power)];
}

double Polynomial::max_abs_coefficient() const {
  double m = 0.0;
  for (Complex c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

Complex Polynomial::operator()(Complex x) const {
  Complex acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial{};
  std::vector<Complex> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  std::vector<Complex> c(std::max(coeffs_.size(), other.coeffs_.size()));
  for (std::size_t k = 0; k < coeffs_.size(); ++k) c[k] += coeffs_[k];
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) c[k] += other.coeffs_[k];
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  if (is_zero() || other.is_zero()) return Polynomial{};
  std::vector<Complex> c(coeffs_.size() + other.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * other.coeffs_[j];
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator*(Complex scalar) const {
  std::vector<Complex> c = coeffs_;
  for (Complex& v : c) v *= scalar;
  return Polynomial(std::move(c));
}

// ---------------------------------------------------------------------------
// Roots

namespace {

constexpr int kMaxRootIterations = 200;
constexpr double kRootTolerance = 1e-12;

Complex newton_polish(const Polynomial& p, Complex z, int steps) {
  const Polynomial dp = p.derivative();
  for (int s = 0; s < steps; ++s) {
    const Complex fz = p(z);
    const Complex dfz = dp(z);
    if (fz == Complex{} || dfz == Complex{}) break;
    const Complex next = z - fz / dfz;
    if (!is_finite(next) || std::abs(p(next)) >= std::abs(fz)) break;
    z = next;
  }
  return z;
}

std::vector<Complex> aberth(const Polynomial& p) {
  const int n = p.degree();
  const auto& c = p.coefficients();
  const Complex lead = c.back();

  // Fujiwara-type bound for the initial circle.
  double radius = 0.0;
  for (int k = 0; k < n; ++k) {
    const double ratio = std::abs(c[static_cast<std::size_t>(k)] / lead);
    if (ratio > 0.0) radius = std::max(radius, std::pow(ratio, 1.0 / (n - k)));
  }
  if (radius == 0.0) radius = 1.0;

  std::vector<Complex> z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k)
    z[static_cast<std::size_t>(k)] = std::polar(radius, 2.0 * std::numbers::pi * k / n + 0.4);

  const Polynomial dp = p.derivative();
  for (int iter = 0; iter < kMaxRootIterations; ++iter) {
    double worst = 0.0;
    for (std::size_t k = 0; k < z.size(); ++k) {
      const Complex fz = p(z[k]);
      if (fz == Complex{}) continue;
      const Complex ratio = fz / dp(z[k]);
      Complex repulsion{};
      for (std::size_t j = 0; j < z.size(); ++j)
        if (j != k) repulsion += 1.0 / (z[k] - z[j]);
      Complex step = ratio / (1.0 - ratio * repulsion);
      if (!is_finite(step)) step = ratio;
      if (!is_finite(step)) continue;
      z[k] -= step;
      worst = std::max(worst, std::abs(step) / std::max(1.0, std::abs(z[k])));
    }
    if (worst < kRootTolerance) break;
  }
  return z;
}

// Roots of a multiple root come back spread by ~eps^(1/m). Their centroid,
// polished against the (m-1)-th derivative, recovers full precision.
void merge_clusters(const Polynomial& p, std::vector<Complex>& z) {
  double scale = 0.0;
  for (Complex r : z) scale = std::max(scale, std::abs(r));
  const double radius = 1e-6 * std::max(scale, std::numeric_limits<double>::min());

  std::vector<int> group(z.size(), -1);
  int groups = 0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (group[i] >= 0) continue;
    group[i] = groups;
    for (std::size_t j = i + 1; j < z.size(); ++j)
      if (group[j] < 0 && std::abs(z[i] - z[j]) < radius) group[j] = groups;
    ++groups;
  }

  for (int g = 0; g < groups; ++g) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < z.size(); ++i)
      if (group[i] == g) members.push_back(i);
    if (members.size() < 2) continue;

    Complex centroid{};
    double worst_residual = 0.0;
    for (std::size_t i : members) {
      centroid += z[i];
      worst_residual = std::max(worst_residual, std::abs(p(z[i])));
    }
    centroid /= static_cast<double>(members.size());

    Polynomial d = p;
    for (std::size_t m = 1; m < members.size(); ++m) d = d.derivative();
    const Complex polished = newton_polish(d, centroid, 8);
    const double accept = worst_residual + 1e-14 * p.max_abs_coefficient();
    if (std::abs(p(polished)) <= accept)
      for (std::size_t i : members) z[i] = polished;
  }
}

}  // namespace

std::vector<Complex> poly_roots(const Polynomial& p) {
  if (p.degree() < 1) throw NumericsError("degenerate polynomial");
  for (Complex c : p.coefficients())
    if (!is_finite(c)) throw NumericsError("polynomial has non-finite coefficients");

  if (p.degree() == 1) return {-p.coefficient(0) / p.coefficient(1)};

  std::vector<Complex> z = aberth(p);
  merge_clusters(p, z);
  for (Complex& r : z) {
    // Members of a merged cluster are already exact to rounding.
    if (std::count(z.begin(), z.end(), r) == 1) r = newton_polish(p, r, 3);
  }

  const double bound = 1e-10 * p.max_abs_coefficient();
  for (Complex r : z)
    if (!is_finite(r) || std::abs(p(r)) > bound)
      throw NumericsError("root finder did not converge");
  return z;
}

// ---------------------------------------------------------------------------
// Dense linear algebra

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw NumericsError("ragged matrix initializer");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::vector<Complex> ComplexMatrix::operator*(std::span<const Complex> x) const {
  std::vector<Complex> y(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
  return y;
}

double ComplexMatrix::norm1() const {
  double best = 0.0;
  for (std::size_t j = 0; j < cols_; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) s += std::abs((*this)(i, j));
    best = std::max(best, s);
  }
  return best;
}

namespace {

struct LU {
  ComplexMatrix lu;
  std::vector<std::size_t> perm;
  bool singular = false;
};

LU factorize(const ComplexMatrix& a) {
  const std::size_t n = a.rows();
  LU f{a, std::vector<std::size_t>(n), false};
  std::iota(f.perm.begin(), f.perm.end(), std::size_t{0});
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(f.lu(i, k)) > std::abs(f.lu(pivot, k))) pivot = i;
    if (f.lu(pivot, k) == Complex{}) {
      f.singular = true;
      return f;
    }
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(f.lu(k, j), f.lu(pivot, j));
      std::swap(f.perm[k], f.perm[pivot]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex m = f.lu(i, k) / f.lu(k, k);
      f.lu(i, k) = m;
      for (std::size_t j = k + 1; j < n; ++j) f.lu(i, j) -= m * f.lu(k, j);
    }
  }
  return f;
}

std::vector<Complex> lu_solve(const LU& f, std::span<const Complex> b) {
  const std::size_t n = f.lu.rows();
  std::vector<Complex> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    Complex s = b[f.perm[i]];
    for (std::size_t j = 0; j < i; ++j) s -= f.lu(i, j) * x[j];
    x[i] = s;
  }
  for (std::size_t i = n; i-- > 0;) {
    Complex s = x[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= f.lu(i, j) * x[j];
    x[i] = s / f.lu(i, i);
  }
  return x;
}

double condition_from(const ComplexMatrix& a, const LU& f) {
  if (f.singular) return std::numeric_limits<double>::infinity();
  const std::size_t n = a.rows();
  double inv_norm = 0.0;
  std::vector<Complex> e(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::fill(e.begin(), e.end(), Complex{});
    e[j] = 1.0;
    double s = 0.0;
    for (Complex v : lu_solve(f, e)) s += std::abs(v);
    inv_norm = std::max(inv_norm, s);
  }
  return a.norm1() * inv_norm;
}

}  // namespace

double condition_number(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) throw NumericsError("condition number of a non-square matrix");
  return condition_from(a, factorize(a));
}

std::vector<Complex> solve_linear(const ComplexMatrix& a, std::span<const Complex> b,
                                  double max_condition) {
  if (a.rows() != a.cols() || a.rows() != b.size())
    throw NumericsError("linear system dimensions do not match");
  if (a.rows() == 0) return {};
  const LU f = factorize(a);
  const double cond = condition_from(a, f);
  if (!(cond <= max_condition)) throw NumericsError("ill-conditioned gluing system");

  std::vector<Complex> x = lu_solve(f, b);
  // One step of iterative refinement.
  std::vector<Complex> r = a * x;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
  const std::vector<Complex> dx = lu_solve(f, r);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += dx[i];
  return x;
}

std::vector<Complex> solve_small(const ComplexMatrix& a, std::span<const Complex> b) {
  if (a.rows() > 4) throw NumericsError("solve_small supports n <= 4");
  return solve_linear(a, b);
}

// ---------------------------------------------------------------------------
// Quadrature and differentiation

double trapezoid_2d_periodic(const Grid2<double>& samples, double cell_area) {
  if (samples.empty()) throw NumericsError("empty quadrature grid");
  double sum = 0.0;
  double carry = 0.0;
  for (double v : samples.values()) {
    // Kahan summation keeps 256x256 sums at rounding level.
    const double y = v - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  return cell_area * sum;
}

Partials central_partials(const std::function<Complex(Complex)>& f, Complex z, double h,
                          int richardson) {
  if (!(h > 0.0)) throw NumericsError("finite-difference step must be positive");
  const Complex ih{0.0, 1.0};

  auto estimate = [&](double step) {
    Complex values[4];
    const Complex offsets[4] = {step, -step, ih * step, -ih * step};
    for (int k = 0; k < 4; ++k) {
      try {
        values[k] = f(z + offsets[k]);
      } catch (const Error& e) {
        throw NumericsError(std::string("finite-difference stencil hit a singularity: ") + e.what());
      }
      if (!is_finite(values[k]))
        throw NumericsError("finite-difference stencil hit a singularity");
    }
    const Complex dx = (values[0] - values[1]) / (2.0 * step);
    const Complex dy = (values[2] - values[3]) / (2.0 * step);
    return Partials{0.5 * (dx - ih * dy), 0.5 * (dx + ih * dy)};
  };

  Partials coarse = estimate(h);
  for (int level = 0; level < richardson; ++level) {
    h *= 0.5;
    const Partials fine = estimate(h);
    coarse = Partials{(4.0 * fine.dz - coarse.dz) / 3.0, (4.0 * fine.dzbar - coarse.dzbar) / 3.0};
  }
  return coarse;
}

std::vector<double> periodic_derivative(std::span<const double> samples, double period) {
  const std::size_t n = samples.size();
  if (n == 0) throw NumericsError("empty sample set");
  if (!(period > 0.0)) throw NumericsError("period must be positive");
  // Fourier differentiation matrix (cot kernel for even n, csc for odd n),
  // Nyquist mode dropped.
  const double h = 2.0 * std::numbers::pi / static_cast<double>(n);
  const double scale = 2.0 * std::numbers::pi / period;
  std::vector<double> out(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == j) continue;
      const long offset = static_cast<long>(j) - static_cast<long>(k);
      const double sign = (offset % 2 == 0) ? 1.0 : -1.0;
      const double half = 0.5 * static_cast<double>(offset) * h;
      const double kernel = (n % 2 == 0) ? std::cos(half) / std::sin(half) : 1.0 / std::sin(half);
      acc += 0.5 * sign * kernel * samples[k];
    }
    out[j] = scale * acc;
  }
  return out;
}

double multiset_distance(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::vector<std::size_t> perm(b.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  double best = std::numeric_limits<double>::infinity();
  do {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size() && worst < best; ++i)
      worst = std::max(worst, std::abs(a[i] - b[perm[i]]));
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace finitegap
