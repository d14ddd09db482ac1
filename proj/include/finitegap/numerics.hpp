#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace finitegap {

using Complex = std::complex<double>;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NumericsError : public Error {
 public:
  using Error::Error;
};

/// Square root on the principal branch: Re >= 0, and Im >= 0 when Re == 0.
Complex principal_sqrt(Complex z);

bool is_finite(Complex z);

/// Dense polynomial with complex coefficients in ascending degree order.
/// Trailing zero coefficients are dropped on construction.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Complex> ascending);

  /// Monic polynomial prod (x - r).
  static Polynomial from_roots(std::span<const Complex> roots);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Complex>& coefficients() const { return coeffs_; }
  Complex coefficient(int power) const;
  double max_abs_coefficient() const;

  Complex operator()(Complex x) const;
  Polynomial derivative() const;

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial operator*(Complex scalar) const;

 private:
  std::vector<Complex> coeffs_;
};

/// All roots with multiplicity. Aberth iteration followed by cluster
/// averaging for multiple roots and Newton polishing.
/// Throws NumericsError("degenerate polynomial") for the zero polynomial
/// or a nonzero constant.
std::vector<Complex> poly_roots(const Polynomial& p);

/// Row-major dense complex matrix.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Complex operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<Complex> operator*(std::span<const Complex> x) const;
  /// Induced 1-norm (max column sum).
  double norm1() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

inline constexpr double kMaxCondition = 1e12;

/// LU with partial pivoting for any square system. Throws NumericsError
/// "ill-conditioned gluing system" when the 1-norm condition number exceeds
/// max_condition.
std::vector<Complex> solve_linear(const ComplexMatrix& a, std::span<const Complex> b,
                                  double max_condition = kMaxCondition);

/// solve_linear restricted to n <= 4.
std::vector<Complex> solve_small(const ComplexMatrix& a, std::span<const Complex> b);

/// 1-norm condition number via explicit inverse. Infinite when singular.
double condition_number(const ComplexMatrix& a);

/// Uniform 2D grid, x index fastest.
template <class T>
class Grid2 {
 public:
  Grid2() = default;
  Grid2(std::size_t nx, std::size_t ny, T fill = T{}) : nx_(nx), ny_(ny), data_(nx * ny, fill) {}

  std::size_t nx() const { return nx_; }
  std::size_t ny() const { return ny_; }
  bool empty() const { return data_.empty(); }
  T& operator()(std::size_t i, std::size_t j) { return data_[j * nx_ + i]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[j * nx_ + i]; }
  std::span<const T> values() const { return data_; }

 private:
  std::size_t nx_ = 0;
  std::size_t ny_ = 0;
  std::vector<T> data_;
};

/// cell_area * sum(samples). Samples must not repeat the periodic seam.
double trapezoid_2d_periodic(const Grid2<double>& samples, double cell_area);

struct Partials {
  Complex dz;     // (d/dx - i d/dy) / 2
  Complex dzbar;  // (d/dx + i d/dy) / 2
};

inline constexpr double kDefaultStep = 1e-4;

/// Central-difference Wirtinger derivatives. With richardson = 1 the h and
/// h/2 estimates are combined to cancel the h^2 term.
Partials central_partials(const std::function<Complex(Complex)>& f, Complex z,
                          double h = kDefaultStep, int richardson = 1);

/// Derivative of a sampled periodic function by trigonometric interpolation.
std::vector<double> periodic_derivative(std::span<const double> samples, double period);

/// Largest |a_i - b_pi(i)| minimised over permutations pi. Brute force, so
/// intended for n <= 8.
double multiset_distance(std::span<const Complex> a, std::span<const Complex> b);

}  // namespace finitegap
