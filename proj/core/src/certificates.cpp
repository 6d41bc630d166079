#include "dagcut/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dagcut/errors.hpp"
#include "dagcut/quadrature.hpp"

namespace dagcut {

CosineCertificate::CosineCertificate(std::vector<CosineTerm> terms)
    : terms_(std::move(terms)) {
  if (terms_.empty()) raise(ErrorCode::InvalidCertificate, "certificate needs at least one term");
  for (const auto& t : terms_) {
    if (!(t.amplitude >= 0.0)) {
      raise(ErrorCode::InvalidCertificate, "amplitudes must be nonnegative");
    }
    if (!(t.frequency > std::numbers::pi)) {
      raise(ErrorCode::InvalidCertificate, "frequencies must exceed pi");
    }
  }
}

double CosineCertificate::g(double x) const {
  double s = 0.0;
  for (const auto& t : terms_) s += t.amplitude * t.frequency * std::sin(t.frequency * x);
  return s;
}

double CosineCertificate::numerator() const {
  double n = 0.0;
  for (const auto& t : terms_) n += t.amplitude * (-std::sin(t.frequency)) / t.frequency;
  return n;
}

double CosineCertificate::denominator() const {
  // Bracket the sign changes of g on a 1e4-point grid, bisect each bracket,
  // then integrate |g(x)| + x g(x) piecewise between the roots so the
  // quadrature only ever sees a smooth integrand.
  const int grid = 10'000;
  std::vector<double> nodes{-1.0};
  double prev_x = -1.0;
  double prev_g = g(prev_x);
  for (int i = 1; i <= grid; ++i) {
    const double x = -1.0 + 2.0 * static_cast<double>(i) / grid;
    const double gx = g(x);
    if ((prev_g < 0.0 && gx > 0.0) || (prev_g > 0.0 && gx < 0.0)) {
      double lo = prev_x, hi = x;
      for (int it = 0; it < 60 && hi - lo > 1e-14; ++it) {
        const double mid = 0.5 * (lo + hi);
        ((g(mid) < 0.0) == (prev_g < 0.0) ? lo : hi) = mid;
      }
      nodes.push_back(0.5 * (lo + hi));
    }
    prev_x = x;
    prev_g = gx;
  }
  nodes.push_back(1.0);

  double total = 0.0;
  auto f = [this](double x) { return std::abs(g(x)) + x * g(x); };
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    total += adaptive_simpson(f, nodes[i], nodes[i + 1], 1e-12);
  }
  return total;
}

double lower_bound_certificate(const CosineCertificate& cert) {
  // Numerators at or below numerical noise (sin of a multiple of 2*pi) prove
  // nothing; reject them instead of reporting a vacuous bound.
  const double n = cert.numerator();
  if (!(n > 1e-12)) {
    raise(ErrorCode::InvalidCertificate, "certificate numerator is not positive");
  }
  return 0.5 + n / cert.denominator();
}

double certificate_identity_deviation(const CosineCertificate& cert, const LabelDensity& d) {
  const PiecewisePoly F = difference_cdf(d);
  const auto& fb = F.breakpoints();
  const auto& db = d.density().breakpoints();

  double worst = 0.0;
  for (const auto& term : cert.terms()) {
    const double t = term.frequency;

    // Characteristic-function route: E[cos tZ] = E[cos tX]^2 + E[sin tX]^2.
    double ec = 0.0, es = 0.0;
    for (std::size_t i = 0; i + 1 < db.size(); ++i) {
      const double a = to_double(db[i]);
      const double b = to_double(db[i + 1]);
      ec += adaptive_simpson(
          [&](double x) { return std::cos(t * x) * d.density_at(x); }, a, b, 1e-13);
      es += adaptive_simpson(
          [&](double x) { return std::sin(t * x) * d.density_at(x); }, a, b, 1e-13);
    }
    const double lhs = ec * ec + es * es;

    // Integration-by-parts route through the difference CDF.
    double integral = 0.0;
    for (std::size_t i = 0; i + 1 < fb.size(); ++i) {
      const double a = to_double(fb[i]);
      const double b = to_double(fb[i + 1]);
      integral += adaptive_simpson(
          [&](double x) { return std::sin(t * x) * F.eval(x); }, a, b, 1e-13);
    }
    const double rhs = std::cos(t) + t * integral;

    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

}  // namespace dagcut
