#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "finitegap/numerics.hpp"
#include "finitegap/spectral_curve.hpp"
#include "finitegap/weierstrass.hpp"

namespace finitegap::cli {

/// Bad command-line input or unreadable files; maps to exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

struct VerifyRow {
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<VerifyRow> rows;
  bool passed() const;
};

std::map<std::string, double> default_tolerances();

/// Parses "name=value"; throws InputError on malformed text or unknown name.
std::pair<std::string, double> parse_tolerance(const std::string& text);

struct VerifyOptions {
  std::map<std::string, double> tolerances;  // overrides
  std::optional<CurveSpec> curve;            // defaults to clifford_curve()
};

VerifyReport run_verify(const VerifyOptions& options);
void print_report(std::ostream& out, const VerifyReport& report);

/// %.17g
std::string format_number(double value);
Complex parse_complex(const std::string& text);  // "re,im"

void print_curve(std::ostream& out, const CurveSpec& curve);

void write_potential_csv(std::ostream& out, std::size_t samples);

/// Vertex grid for `mesh`: reconstruction, or the reference torus expressed
/// in the reconstruction's frame (T^T r). Grids smaller than 64 are sampled
/// from a refined integration.
Grid2<Vec3> mesh_vertices(std::size_t nx, std::size_t ny, bool reference);
void write_obj(std::ostream& out, const Grid2<Vec3>& vertices);

void print_psi(std::ostream& out, Complex z, Complex lambda);

/// Entry point shared by the executable and tests. Returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace finitegap::cli
