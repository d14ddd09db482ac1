#include "finitegap/weierstrass.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "finitegap/differentials.hpp"

namespace finitegap {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kSimpsonSubintervals = 4;

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Vec3 add(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }

// Real 1-form x_z dz + conj(x_z) dzbar along a unit direction dz.
Vec3 real_form(const ComplexVec3& xz, Complex direction) {
  return {2.0 * (xz[0] * direction).real(), 2.0 * (xz[1] * direction).real(), 2.0 * (xz[2] * direction).real()};
}

struct FormSampler {
  CurveSpec curve;
  PoleDivisor poles;

  ComplexVec3 at(Complex z) const {
    return surface_derivatives(surface_spinor(solve_coefficients(curve, poles, z)));
  }
};

// Composite Simpson over [start, start + length * direction], sub-divided
// into kSimpsonSubintervals pieces.
Vec3 simpson_step(const FormSampler& forms, Complex start, Complex direction, double length) {
  const double h = length / kSimpsonSubintervals;
  Vec3 acc{};
  for (int k = 0; k <= kSimpsonSubintervals; ++k) {
    const double w = (k == 0 || k == kSimpsonSubintervals) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
    const Vec3 f = real_form(forms.at(start + direction * (h * k)), direction);
    for (int c = 0; c < 3; ++c) acc[c] += w * f[c];
  }
  for (double& v : acc) v *= h / 3.0;
  return acc;
}

GeometrySample geometry_from_frame(const Vec3& rx, const Vec3& ry, const Vec3& rxx, const Vec3& rxy,
                                   const Vec3& ryy) {
  const double E = dot(rx, rx);
  const double F = dot(rx, ry);
  const double G = dot(ry, ry);
  const double W2 = E * G - F * F;
  Vec3 n = cross(rx, ry);
  const double len = std::sqrt(dot(n, n));
  for (double& v : n) v /= len;
  const double L = dot(rxx, n);
  const double M = dot(rxy, n);
  const double N = dot(ryy, n);

  GeometrySample g;
  g.metric_factor = std::sqrt(W2);
  g.normal = n;
  g.H = (E * N - 2.0 * F * M + G * L) / (2.0 * W2);
  g.K = (L * N - M * M) / W2;
  const double disc = std::sqrt(std::max(0.0, g.H * g.H - g.K));
  g.kappa1 = g.H + disc;
  g.kappa2 = g.H - disc;
  return g;
}

}  // namespace

Vec3 operator*(const Mat3& m, const Vec3& v) { return {dot(m[0], v), dot(m[1], v), dot(m[2], v)}; }

Mat3 transpose(const Mat3& m) {
  Mat3 t{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t[i][j] = m[j][i];
  return t;
}

double determinant(const Mat3& m) { return dot(m[0], cross(m[1], m[2])); }

double distance(const Vec3& a, const Vec3& b) {
  return std::sqrt((a[0] - b[0]) * (a[0] - b[0]) + (a[1] - b[1]) * (a[1] - b[1]) + (a[2] - b[2]) * (a[2] - b[2]));
}

ComplexVec3 surface_derivatives(const Spinor& psi) {
  const Complex i{0.0, 1.0};
  const Complex a2 = psi.psi1 * psi.psi1;
  const Complex b2 = std::conj(psi.psi2) * std::conj(psi.psi2);
  return {0.5 * i * (b2 + a2), 0.5 * (b2 - a2), psi.psi1 * std::conj(psi.psi2)};
}

Spinor surface_spinor(const BASolution& s) {
  const double scale = std::pow(2.0, -0.25);
  const Spinor psi = eval_psi(s, std::conj(s.u));
  return {scale * psi.psi1, scale * psi.psi2};
}

Mat3 clifford_alignment() {
  const double h = 1.0 / std::numbers::sqrt2;
  return {{{-h, h, 0.0}, {-h, -h, 0.0}, {0.0, 0.0, -1.0}}};
}

SurfaceGrid integrate_surface(const CurveSpec& curve, std::size_t nx, std::size_t ny, double max_defect) {
  if (nx < 16 || ny < 16) throw SurfaceError("integrate_surface needs nx, ny >= 16");
  const FormSampler forms{curve, pole_divisor(curve.u())};
  const double hx = kTwoPi / static_cast<double>(nx);
  const double hy = kTwoPi / static_cast<double>(ny);
  const Complex along_x{1.0, 0.0};
  const Complex along_y{0.0, 1.0};

  SurfaceGrid grid{nx, ny, Grid2<Vec3>(nx, ny), Grid2<ComplexVec3>(nx, ny), 0.0};

  std::vector<Vec3> spine(ny + 1);
  spine[0] = transpose(clifford_alignment()) * reference_clifford(0.0, 0.0);
  for (std::size_t j = 0; j < ny; ++j)
    spine[j + 1] = add(spine[j], simpson_step(forms, Complex{0.0, hy * j}, along_y, hy));
  double defect = distance(spine[ny], spine[0]);

  for (std::size_t j = 0; j < ny; ++j) {
    const double y = hy * static_cast<double>(j);
    Vec3 p = spine[j];
    for (std::size_t i = 0; i < nx; ++i) {
      const Complex z{hx * static_cast<double>(i), y};
      grid.positions(i, j) = p;
      grid.derivs(i, j) = forms.at(z);
      p = add(p, simpson_step(forms, z, along_x, hx));
    }
    defect = std::max(defect, distance(p, spine[j]));
  }
  grid.period_defect = defect;
  if (!(defect <= max_defect)) throw SurfaceError("surface does not close");
  return grid;
}

Vec3 reference_clifford(double x, double y) {
  const double d = std::numbers::sqrt2 - std::sin(y);
  return {std::cos(x) / d, std::sin(x) / d, std::cos(y) / d};
}

GeometrySample reference_geometry(double x, double y) {
  const double sy = std::sin(y);
  const double d = std::numbers::sqrt2 - sy;
  GeometrySample g;
  g.metric_factor = 1.0 / (d * d);
  const double radial = 1.0 - std::numbers::sqrt2 * sy;
  g.normal = {std::cos(x) * radial / d, std::sin(x) * radial / d, -std::cos(y) / d};
  g.kappa1 = 1.0;
  g.kappa2 = std::numbers::sqrt2 * sy - 1.0;
  g.H = 0.5 * (g.kappa1 + g.kappa2);
  g.K = g.kappa1 * g.kappa2;
  return g;
}

Vec3 stereographic(const std::array<double, 4>& p) {
  const double r2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + p[3] * p[3];
  if (std::abs(r2 - 1.0) > 1e-12) throw SurfaceError("stereographic projection needs a point on S^3");
  const double denom = 1.0 - p[3];
  if (denom <= 1e-15) throw SurfaceError("stereographic projection of the north pole");
  return {p[0] / denom, p[1] / denom, p[2] / denom};
}

double willmore(const GeometrySampler& sampler, std::size_t n, double x0, double y0) {
  if (n == 0) throw SurfaceError("willmore needs a non-empty grid");
  const double h = kTwoPi / static_cast<double>(n);
  Grid2<double> integrand(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      const GeometrySample g = sampler(x0 + h * i, y0 + h * j);
      integrand(i, j) = (g.H * g.H - g.K) * g.metric_factor;
    }
  return trapezoid_2d_periodic(integrand, h * h);
}

double willmore_closed_form(std::size_t n, double x0, double y0) {
  return willmore(reference_geometry, n, x0, y0);
}

Grid2<GeometrySample> grid_geometry(const SurfaceGrid& grid) {
  const std::size_t nx = grid.nx;
  const std::size_t ny = grid.ny;
  Grid2<Vec3> rx(nx, ny);
  Grid2<Vec3> ry(nx, ny);
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t i = 0; i < nx; ++i) {
      rx(i, j) = real_form(grid.derivs(i, j), Complex{1.0, 0.0});
      ry(i, j) = real_form(grid.derivs(i, j), Complex{0.0, 1.0});
    }

  Grid2<Vec3> rxx(nx, ny);
  Grid2<Vec3> rxy(nx, ny);
  Grid2<Vec3> ryy(nx, ny);
  for (int c = 0; c < 3; ++c) {
    std::vector<double> line(nx);
    for (std::size_t j = 0; j < ny; ++j) {
      for (std::size_t i = 0; i < nx; ++i) line[i] = rx(i, j)[c];
      const auto d = periodic_derivative(line, kTwoPi);
      for (std::size_t i = 0; i < nx; ++i) rxx(i, j)[c] = d[i];
    }
    std::vector<double> column(ny);
    std::vector<double> column_y(ny);
    for (std::size_t i = 0; i < nx; ++i) {
      for (std::size_t j = 0; j < ny; ++j) {
        column[j] = rx(i, j)[c];
        column_y[j] = ry(i, j)[c];
      }
      const auto dxy = periodic_derivative(column, kTwoPi);
      const auto dyy = periodic_derivative(column_y, kTwoPi);
      for (std::size_t j = 0; j < ny; ++j) {
        rxy(i, j)[c] = dxy[j];
        ryy(i, j)[c] = dyy[j];
      }
    }
  }

  Grid2<GeometrySample> out(nx, ny);
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t i = 0; i < nx; ++i)
      out(i, j) = geometry_from_frame(rx(i, j), ry(i, j), rxx(i, j), rxy(i, j), ryy(i, j));
  return out;
}

double willmore(const SurfaceGrid& grid) {
  const Grid2<GeometrySample> geometry = grid_geometry(grid);
  Grid2<double> integrand(grid.nx, grid.ny);
  for (std::size_t j = 0; j < grid.ny; ++j)
    for (std::size_t i = 0; i < grid.nx; ++i) {
      const GeometrySample& g = geometry(i, j);
      integrand(i, j) = (g.H * g.H - g.K) * g.metric_factor;
    }
  return trapezoid_2d_periodic(integrand, (kTwoPi / grid.nx) * (kTwoPi / grid.ny));
}

Alignment align_to_reference(const SurfaceGrid& grid, double threshold) {
  if (grid.positions.empty()) throw SurfaceError("empty surface grid");
  Alignment a{clifford_alignment(), 0.0, 0.0};
  double sum = 0.0;
  for (std::size_t j = 0; j < grid.ny; ++j)
    for (std::size_t i = 0; i < grid.nx; ++i) {
      const double x = kTwoPi * static_cast<double>(i) / static_cast<double>(grid.nx);
      const double y = kTwoPi * static_cast<double>(j) / static_cast<double>(grid.ny);
      const double e = distance(a.transform * grid.positions(i, j), reference_clifford(x, y));
      sum += e * e;
      a.max_error = std::max(a.max_error, e);
    }
  a.rms = std::sqrt(sum / static_cast<double>(grid.nx * grid.ny));
  if (!(a.rms <= threshold)) throw SurfaceError("reconstruction does not align with the reference torus");
  return a;
}

}  // namespace finitegap
