#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "finitegap/ba_engine.hpp"
#include "finitegap/curve_io.hpp"
#include "finitegap/differentials.hpp"
#include "finitegap/dirac.hpp"

namespace finitegap::cli {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kWillmoreTarget = 2.0 * std::numbers::pi * std::numbers::pi;
constexpr std::uint64_t kSeed = 20040301;

struct Measurement {
  double value = 0.0;
  std::string detail;
};

Complex random_z(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(0.0, kTwoPi);
  const double x = d(rng);
  return {x, d(rng)};
}

// Admissible spectral parameter: |lambda| in [0.5, 2.5], away from poles,
// glue points and the marked points.
Complex random_lambda(std::mt19937_64& rng, const std::vector<Complex>& avoid) {
  std::uniform_real_distribution<double> radius(0.5, 2.5);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  for (;;) {
    const Complex l = std::polar(radius(rng), angle(rng));
    if (std::none_of(avoid.begin(), avoid.end(), [&](Complex p) { return std::abs(l - p) < 0.05; })) return l;
  }
}

double max_abs_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

bool VerifyReport::passed() const {
  return std::all_of(rows.begin(), rows.end(), [](const VerifyRow& r) { return r.pass; });
}

std::map<std::string, double> default_tolerances() {
  return {
      {"genus", 0.0},
      {"divisor_symmetry", 1e-9},
      {"residue_regularity", 1e-12},
      {"gluing", 1e-10},
      {"qt_x_independence", 1e-10},
      {"qt_periodicity", 1e-10},
      {"u_equals_v", 1e-9},
      {"u_real", 1e-9},
      {"u_closed_form", 1e-9},
      {"dirac", 1e-6},
      {"dirac_order", 0.5},
      {"psi2_dbar", 1e-6},
      {"multipliers", 1e-8},
      {"multiplier_glue", 1e-10},
      {"period_defect", 1e-8},
      {"surface_rms", 1e-6},
      {"willmore", 1e-8},
      {"willmore_grid", 1e-5},
  };
}

std::pair<std::string, double> parse_tolerance(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) throw InputError("tolerance override must look like name=value: " + text);
  const std::string name = text.substr(0, eq);
  const auto known = default_tolerances();
  if (!known.contains(name)) throw InputError("unknown check name in --tol: " + name);
  try {
    std::size_t used = 0;
    const double value = std::stod(text.substr(eq + 1), &used);
    if (used != text.size() - eq - 1 || !(value >= 0.0)) throw std::invalid_argument("bad");
    return {name, value};
  } catch (const std::exception&) {
    throw InputError("tolerance value must be a non-negative number: " + text);
  }
}

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

Complex parse_complex(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw InputError("expected re,im but got: " + text);
  try {
    std::size_t a = 0;
    std::size_t b = 0;
    const double re = std::stod(text.substr(0, comma), &a);
    const std::string rest = text.substr(comma + 1);
    const double im = std::stod(rest, &b);
    if (a != comma || b != rest.size()) throw std::invalid_argument("trailing");
    return {re, im};
  } catch (const std::exception&) {
    throw InputError("expected re,im but got: " + text);
  }
}

VerifyReport run_verify(const VerifyOptions& options) {
  auto tol = default_tolerances();
  for (const auto& [name, value] : options.tolerances) tol[name] = value;

  const CurveSpec curve = options.curve.value_or(clifford_curve());
  PoleDivisor poles;
  try {
    poles = pole_divisor(curve.u());
    if (curve.glue().size() != 2) throw InputError("verify expects a curve with two glue pairs");
    curve.require_simple();
  } catch (const InputError&) {
    throw;
  } catch (const Error& e) {
    throw InputError(std::string("curve spec is not supported by verify: ") + e.what());
  }
  const SolutionProvider provider = [curve, poles](Complex z) { return solve_coefficients(curve, poles, z); };

  std::vector<Complex> avoid = poles.points;
  avoid.push_back(Complex{});
  for (const GluePair& g : curve.glue()) {
    avoid.push_back(g.first);
    avoid.push_back(g.second);
  }

  VerifyReport report;
  auto check = [&](const std::string& name, const std::function<Measurement()>& body) {
    VerifyRow row{name, std::numeric_limits<double>::infinity(), tol.at(name), false, {}};
    try {
      Measurement m = body();
      row.measured = m.value;
      row.detail = std::move(m.detail);
      row.pass = row.measured <= row.threshold;
    } catch (const Error& e) {
      row.detail = e.what();
    }
    report.rows.push_back(std::move(row));
  };

  check("genus", [&] {
    const Genus g = genus(curve);
    return Measurement{std::abs(g.geometric - 0.0) + std::abs(g.arithmetic - 2.0),
                       "p_g = " + std::to_string(g.geometric) + ", p_a = " + std::to_string(g.arithmetic)};
  });

  check("divisor_symmetry", [&] {
    const DivisorSymmetryReport r = divisor_symmetry_check(curve.u(), tol.at("divisor_symmetry"));
    double value = std::max(r.q_deviation, r.q_prime_deviation);
    if (r.p3_multiplicity < 2 || r.a_residual > 1e-10) value = std::numeric_limits<double>::infinity();
    return Measurement{value, r.detail};
  });

  check("residue_regularity", [&] {
    const Complex a = solve_a_from_poles(poles.points[0], poles.points[1], curve.u());
    const Complex c = symmetric_c(curve.u());
    const double v = std::max(residue_regularity(OmegaFamily::holomorphic(curve.u(), a, -a), curve),
                              residue_regularity(OmegaFamily::antiholomorphic(curve.u(), c, c), curve));
    return Measurement{v, {}};
  });

  check("gluing", [&] {
    std::mt19937_64 rng(kSeed);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) worst = std::max(worst, gluing_residual(provider(random_z(rng)), curve));
    return Measurement{worst, "100 random z"};
  });

  check("qt_x_independence", [&] {
    double worst = 0.0;
    for (int k = 0; k < 32; ++k) {
      const double y = kTwoPi * k / 32.0;
      const BASolution a = provider(Complex{0.0, y});
      const BASolution b = provider(Complex{5.0, y});
      worst = std::max({worst, max_abs_diff(a.q, b.q), max_abs_diff(a.t, b.t)});
    }
    return Measurement{worst, {}};
  });

  check("qt_periodicity", [&] {
    double worst = 0.0;
    for (int k = 0; k < 32; ++k) {
      const double y = kTwoPi * k / 32.0;
      const BASolution a = provider(Complex{0.0, y});
      const BASolution b = provider(Complex{0.0, y + kTwoPi});
      worst = std::max({worst, max_abs_diff(a.q, b.q), max_abs_diff(a.t, b.t)});
    }
    return Measurement{worst, {}};
  });

  const auto samples = sample_potential(provider, 256);
  check("u_equals_v", [&] {
    double worst = 0.0;
    for (const auto& s : samples) worst = std::max(worst, std::abs(s.U_spectral - s.V_spectral));
    return Measurement{worst, "256 samples"};
  });
  check("u_real", [&] {
    double worst = 0.0;
    for (const auto& s : samples) worst = std::max({worst, std::abs(s.U_spectral.imag()), std::abs(s.V_spectral.imag())});
    return Measurement{worst, {}};
  });
  check("u_closed_form", [&] {
    double worst = 0.0;
    for (const auto& s : samples) worst = std::max(worst, std::abs(s.U_spectral - s.U_closed));
    return Measurement{worst, {}};
  });

  check("dirac", [&] {
    std::mt19937_64 rng(kSeed + 1);
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
      const Complex z = random_z(rng);
      worst = std::max(worst, dirac_residual(provider, z, random_lambda(rng, avoid), 1e-4).max());
    }
    return Measurement{worst, "20 random (z, lambda), h = 1e-4"};
  });

  check("dirac_order", [&] {
    std::mt19937_64 rng(kSeed + 1);
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
      const Complex z = random_z(rng);
      const Complex l = random_lambda(rng, avoid);
      const double coarse = dirac_residual(provider, z, l, 1e-4).max();
      const double fine = dirac_residual(provider, z, l, 5e-5).max();
      worst = std::max(worst, std::abs(coarse / fine - 4.0));
    }
    return Measurement{worst, "|ratio - 4| under h -> h/2"};
  });

  check("psi2_dbar", [&] {
    std::mt19937_64 rng(kSeed + 2);
    double worst = 0.0;
    int taken = 0;
    while (taken < 20) {
      const Complex z = random_z(rng);
      const Complex l = random_lambda(rng, avoid);
      if (std::abs(potential_V(provider(z))) < 0.05) continue;
      const Complex direct = eval_psi(provider(z), l).psi2;
      worst = std::max(worst, std::abs(psi2_from_dbar(provider, z, l) - direct) / std::abs(direct));
      ++taken;
    }
    return Measurement{worst, "relative, 20 random (z, lambda)"};
  });

  check("multipliers", [&] {
    std::mt19937_64 rng(kSeed + 3);
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
      const Complex l = random_lambda(rng, avoid);
      for (Period p : {Period::X, Period::Y}) {
        const Complex predicted = predicted_multiplier(l, curve.abs_u2(), p);
        worst = std::max(worst, std::abs(multiplier(provider, l, p) - predicted) / std::abs(predicted));
      }
    }
    return Measurement{worst, "relative"};
  });

  check("multiplier_glue", [&] {
    double worst = 0.0;
    for (const GluePair& g : curve.glue())
      for (Period p : {Period::X, Period::Y})
        worst = std::max(worst, std::abs(predicted_multiplier(g.first, curve.abs_u2(), p) -
                                         predicted_multiplier(g.second, curve.abs_u2(), p)));
    const Complex mu = multiplier(provider, curve.glue()[0].first, Period::X);
    return Measurement{worst, "mu_1(u) = " + format_number(mu.real()) + " + " + format_number(mu.imag()) + "i"};
  });

  std::optional<SurfaceGrid> surface;
  check("period_defect", [&] {
    surface = integrate_surface(curve, 64, 64, std::numeric_limits<double>::infinity());
    return Measurement{surface->period_defect, "64 x 64"};
  });
  check("surface_rms", [&] {
    if (!surface) throw Error("surface was not reconstructed");
    const Alignment a = align_to_reference(*surface, std::numeric_limits<double>::infinity());
    return Measurement{a.max_error, "max |T x - r|, rms = " + format_number(a.rms)};
  });
  check("willmore", [&] {
    const double w = willmore_closed_form(256);
    return Measurement{std::abs(w - kWillmoreTarget) / kWillmoreTarget, "W = " + format_number(w)};
  });
  check("willmore_grid", [&] {
    if (!surface) throw Error("surface was not reconstructed");
    const double w = willmore(*surface);
    return Measurement{std::abs(w - kWillmoreTarget) / kWillmoreTarget, "W = " + format_number(w)};
  });

  return report;
}

void print_report(std::ostream& out, const VerifyReport& report) {
  for (const VerifyRow& r : report.rows) {
    out << (r.pass ? "PASS " : "FAIL ") << r.name << " measured=" << format_number(r.measured)
        << " threshold=" << format_number(r.threshold);
    if (!r.detail.empty()) out << "  # " << r.detail;
    out << '\n';
  }
  out << (report.passed() ? "overall: PASS" : "overall: FAIL") << '\n';
}

namespace {

std::string complex_text(Complex z) { return format_number(z.real()) + " " + format_number(z.imag()); }

}  // namespace

void print_curve(std::ostream& out, const CurveSpec& curve) {
  out << "u " << complex_text(curve.u()) << '\n';
  for (std::size_t k = 0; k < curve.glue().size(); ++k)
    out << "glue" << k + 1 << ' ' << complex_text(curve.glue()[k].first) << "  "
        << complex_text(curve.glue()[k].second) << '\n';
  const PoleDivisor poles = pole_divisor(curve.u());
  for (std::size_t k = 0; k < poles.points.size(); ++k)
    out << 'p' << k + 1 << ' ' << complex_text(poles.points[k]) << '\n';
  const Genus g = genus(curve);
  out << "genus " << g.geometric << ' ' << g.arithmetic << '\n';
  const Complex a = solve_a_from_poles(poles.points[0], poles.points[1], curve.u());
  const Complex c = symmetric_c(curve.u());
  out << "a " << complex_text(a) << '\n';
  out << "b " << complex_text(-a) << '\n';
  out << "c " << complex_text(c) << '\n';
  out << "d " << complex_text(c) << '\n';
}

void write_potential_csv(std::ostream& out, std::size_t samples) {
  out << "y,U_spectral_re,U_spectral_im,U_closed,abs_err\n";
  for (const PotentialSample& s : sample_potential(clifford_provider(), samples))
    out << format_number(s.y) << ',' << format_number(s.U_spectral.real()) << ','
        << format_number(s.U_spectral.imag()) << ',' << format_number(s.U_closed) << ','
        << format_number(std::abs(s.U_spectral - s.U_closed)) << '\n';
}

Grid2<Vec3> mesh_vertices(std::size_t nx, std::size_t ny, bool reference) {
  if (nx < 3 || ny < 3) throw InputError("mesh sizes must be at least 3");
  Grid2<Vec3> out(nx, ny);
  if (reference) {
    const Mat3 back = transpose(clifford_alignment());
    for (std::size_t j = 0; j < ny; ++j)
      for (std::size_t i = 0; i < nx; ++i)
        out(i, j) = back * reference_clifford(kTwoPi * i / nx, kTwoPi * j / ny);
    return out;
  }
  const std::size_t fx = (nx + 63) / nx;
  const std::size_t fy = (ny + 63) / ny;
  const SurfaceGrid grid = integrate_surface(clifford_curve(), nx * fx, ny * fy);
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t i = 0; i < nx; ++i) out(i, j) = grid.positions(i * fx, j * fy);
  return out;
}

void write_obj(std::ostream& out, const Grid2<Vec3>& v) {
  const std::size_t nx = v.nx();
  const std::size_t ny = v.ny();
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t i = 0; i < nx; ++i)
      out << "v " << format_number(v(i, j)[0]) << ' ' << format_number(v(i, j)[1]) << ' '
          << format_number(v(i, j)[2]) << '\n';
  auto index = [&](std::size_t i, std::size_t j) { return (j % ny) * nx + (i % nx) + 1; };
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t i = 0; i < nx; ++i) {
      const std::size_t a = index(i, j), b = index(i + 1, j), c = index(i + 1, j + 1), d = index(i, j + 1);
      out << "f " << a << ' ' << b << ' ' << c << '\n';
      out << "f " << a << ' ' << c << ' ' << d << '\n';
    }
}

void print_psi(std::ostream& out, Complex z, Complex lambda) {
  const CurveSpec curve = clifford_curve();
  const Spinor psi = eval_psi(solve_coefficients(curve, pole_divisor(curve.u()), z), lambda);
  out << "psi1 " << complex_text(psi.psi1) << '\n';
  out << "psi2 " << complex_text(psi.psi2) << '\n';
}

namespace {

// Writes to the named file, or to `fallback` when the name is empty.
void with_output(const std::string& path, std::ostream& fallback, const std::function<void(std::ostream&)>& body) {
  if (path.empty()) {
    body(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot open output file: " + path);
  body(file);
  file.flush();
  if (!file) throw InputError("failed writing output file: " + path);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Baker-Akhiezer function and Weierstrass reconstruction of the Clifford torus"};
  app.require_subcommand(1);

  auto* curve_cmd = app.add_subcommand("curve", "print the spectral curve, poles, genus and (a, b, c, d)");
  std::string curve_spec_path;
  curve_cmd->add_option("--spec", curve_spec_path, "curve-spec JSON file");

  auto* verify_cmd = app.add_subcommand("verify", "run every consistency check");
  std::vector<std::string> tol_overrides;
  std::string verify_spec_path;
  verify_cmd->add_option("--tol", tol_overrides, "threshold override name=value (repeatable)");
  verify_cmd->add_option("--spec", verify_spec_path, "curve-spec JSON file");

  auto* potential_cmd = app.add_subcommand("potential", "sample U(y) and compare with the closed form");
  std::size_t potential_samples = 256;
  std::string potential_out;
  potential_cmd->add_option("--samples", potential_samples, "number of y samples in [0, 2pi)");
  potential_cmd->add_option("--out", potential_out, "CSV output file (stdout when omitted)");

  auto* mesh_cmd = app.add_subcommand("mesh", "export the reconstructed torus as OBJ");
  std::size_t mesh_nx = 64;
  std::size_t mesh_ny = 64;
  bool mesh_reference = false;
  std::string mesh_out;
  mesh_cmd->add_option("--nx", mesh_nx, "vertices along x");
  mesh_cmd->add_option("--ny", mesh_ny, "vertices along y");
  mesh_cmd->add_flag("--reference", mesh_reference, "emit the reference torus in the reconstruction frame");
  mesh_cmd->add_option("--out", mesh_out, "OBJ output file (stdout when omitted)");

  auto* psi_cmd = app.add_subcommand("psi", "evaluate psi(z, lambda)");
  std::string psi_z;
  std::string psi_lambda;
  psi_cmd->add_option("--z", psi_z, "re,im")->required();
  psi_cmd->add_option("--lambda", psi_lambda, "re,im")->required();

  auto* willmore_cmd = app.add_subcommand("willmore", "Willmore energy of the Clifford torus");
  std::size_t willmore_n = 256;
  bool willmore_reconstructed = false;
  willmore_cmd->add_option("--n", willmore_n, "grid size per direction");
  willmore_cmd->add_flag("--reconstructed", willmore_reconstructed, "integrate over the reconstructed surface");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*curve_cmd) {
      print_curve(out, curve_spec_path.empty() ? clifford_curve() : load_curve_spec(curve_spec_path));
      return 0;
    }
    if (*verify_cmd) {
      VerifyOptions options;
      for (const std::string& t : tol_overrides) options.tolerances.insert(parse_tolerance(t));
      if (!verify_spec_path.empty()) options.curve = load_curve_spec(verify_spec_path);
      const VerifyReport report = run_verify(options);
      print_report(out, report);
      return report.passed() ? 0 : 1;
    }
    if (*potential_cmd) {
      if (potential_samples == 0) throw InputError("--samples must be positive");
      with_output(potential_out, out, [&](std::ostream& o) { write_potential_csv(o, potential_samples); });
      return 0;
    }
    if (*mesh_cmd) {
      const Grid2<Vec3> vertices = mesh_vertices(mesh_nx, mesh_ny, mesh_reference);
      with_output(mesh_out, out, [&](std::ostream& o) { write_obj(o, vertices); });
      return 0;
    }
    if (*psi_cmd) {
      print_psi(out, parse_complex(psi_z), parse_complex(psi_lambda));
      return 0;
    }
    if (*willmore_cmd) {
      if (willmore_n < 32) throw InputError("--n must be at least 32");
      const double w = willmore_reconstructed ? willmore(integrate_surface(clifford_curve(), willmore_n, willmore_n))
                                              : willmore_closed_form(willmore_n);
      out << format_number(w) << '\n';
      return 0;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace finitegap::cli
