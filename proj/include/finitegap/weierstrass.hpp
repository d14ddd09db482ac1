#pragma once

#include <array>
#include <functional>

#include "finitegap/ba_engine.hpp"
#include "finitegap/numerics.hpp"

namespace finitegap {

class SurfaceError : public Error {
 public:
  using Error::Error;
};

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;
using ComplexVec3 = std::array<Complex, 3>;

Vec3 operator*(const Mat3& m, const Vec3& v);
Mat3 transpose(const Mat3& m);
double determinant(const Mat3& m);
double distance(const Vec3& a, const Vec3& b);

/// (x^1_z, x^2_z, x^3_z) of the Weierstrass representation:
/// i/2 (conj(psi2)^2 + psi1^2), 1/2 (conj(psi2)^2 - psi1^2), psi1 conj(psi2).
ComplexVec3 surface_derivatives(const Spinor& psi);

/// 2^{-1/4} psi(z, zbar, conj u): the spinor that generates the Clifford torus.
Spinor surface_spinor(const BASolution& s);

/// The orientation-reversing orthogonal map carrying the reconstructed
/// surface onto the reference parameterization r(x, y).
Mat3 clifford_alignment();

struct SurfaceGrid {
  std::size_t nx = 0;
  std::size_t ny = 0;
  Grid2<Vec3> positions;
  Grid2<ComplexVec3> derivs;
  double period_defect = 0.0;
};

inline constexpr double kMaxPeriodDefect = 1e-8;

/// Integrates the real forms x^k_z dz + conj along the spine x = 0 and then
/// along each row, composite Simpson with four sub-intervals per grid cell.
/// The base point is placed at T^T r(0, 0) so that T maps the result onto r.
/// Throws SurfaceError("surface does not close") when a period integral
/// exceeds max_defect.
SurfaceGrid integrate_surface(const CurveSpec& curve, std::size_t nx, std::size_t ny,
                              double max_defect = kMaxPeriodDefect);

/// r(x, y) = (cos x, sin x, cos y) / (sqrt2 - sin y).
Vec3 reference_clifford(double x, double y);

struct GeometrySample {
  double metric_factor = 0.0;  // e^{2 alpha}
  Vec3 normal{};
  double kappa1 = 0.0;
  double kappa2 = 0.0;
  double H = 0.0;
  double K = 0.0;
};

/// Closed-form geometry of r(x, y).
GeometrySample reference_geometry(double x, double y);

/// Projection of S^3 from the north pole (0, 0, 0, 1).
Vec3 stereographic(const std::array<double, 4>& point);

using GeometrySampler = std::function<GeometrySample(double x, double y)>;

/// Trapezoid sum of (H^2 - K) e^{2 alpha} over an n x n grid of [0, 2pi)^2
/// shifted by (x0, y0).
double willmore(const GeometrySampler& sampler, std::size_t n, double x0 = 0.0, double y0 = 0.0);

/// willmore with the closed-form reference geometry.
double willmore_closed_form(std::size_t n, double x0 = 0.0, double y0 = 0.0);

/// Geometry of a reconstructed grid. First derivatives come from x^k_z,
/// second derivatives from Fourier differentiation along grid lines; the
/// normal follows the frame (r_x, r_y).
Grid2<GeometrySample> grid_geometry(const SurfaceGrid& grid);

double willmore(const SurfaceGrid& grid);

struct Alignment {
  Mat3 transform{};
  double rms = 0.0;
  double max_error = 0.0;
};

/// Compares T * position with r(x, y) over the grid. Throws SurfaceError
/// when the rms exceeds threshold.
Alignment align_to_reference(const SurfaceGrid& grid, double threshold = 1e-6);

}  // namespace finitegap
