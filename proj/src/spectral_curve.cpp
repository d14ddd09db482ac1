#include "finitegap/spectral_curve.hpp"

#include <algorithm>
#include <cmath>

namespace finitegap {

namespace {

bool near(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol; }

void check_point(Complex p) {
  if (!is_finite(p)) throw CurveError("glue point must be finite (infinity_+ is a marked point)");
  if (std::abs(p) <= kMarkedPointExclusion)
    throw CurveError("glue point too close to the marked point lambda = 0");
}

}  // namespace

CurveSpec::CurveSpec(Complex u, std::vector<GluePair> glue) : u_(u), glue_(std::move(glue)) {
  if (!is_finite(u_) || u_ == Complex{}) throw CurveError("curve parameter u must be finite and nonzero");
  for (const GluePair& g : glue_) {
    check_point(g.first);
    check_point(g.second);
    if (g.first == g.second) throw CurveError("glue pair points must differ");
    if (g.multiplicity < 1) throw CurveError("glue multiplicity must be positive");
  }
  for (std::size_t i = 0; i < glue_.size(); ++i)
    for (std::size_t j = i + 1; j < glue_.size(); ++j) {
      const Complex a[2] = {glue_[i].first, glue_[i].second};
      const Complex b[2] = {glue_[j].first, glue_[j].second};
      for (Complex x : a)
        for (Complex y : b)
          if (x == y) throw CurveError("glue pair supports must be disjoint");
    }
}

void CurveSpec::require_simple() const {
  for (const GluePair& g : glue_)
    if (g.multiplicity != 1) throw CurveError("unsupported multiplicity");
}

CurveSpec clifford_curve() {
  const Complex u = kCliffordU;
  return CurveSpec(u, {{u, -std::conj(u), 1}, {-u, std::conj(u), 1}});
}

Genus genus(const CurveSpec& curve) {
  Genus g;
  for (const GluePair& pair : curve.glue()) g.arithmetic += 2 * pair.multiplicity - 1;
  return g;
}

Complex tau(Complex lambda, Complex u) {
  if (lambda == Complex{}) throw CurveError("tau is undefined at lambda = 0");
  return std::norm(u) / std::conj(lambda);
}

Complex apply(Involution which, Complex lambda, Complex u) {
  return which == Involution::Sigma ? sigma(lambda) : tau(lambda, u);
}

bool permutes_glue(const CurveSpec& curve, Involution which, double tolerance) {
  const auto& glue = curve.glue();
  for (const GluePair& g : glue) {
    const Complex a = apply(which, g.first, curve.u());
    const Complex b = apply(which, g.second, curve.u());
    const bool found = std::any_of(glue.begin(), glue.end(), [&](const GluePair& h) {
      return (near(a, h.first, tolerance) && near(b, h.second, tolerance)) ||
             (near(a, h.second, tolerance) && near(b, h.first, tolerance));
    });
    if (!found) return false;
  }
  return true;
}

}  // namespace finitegap
