#pragma once

#include <vector>

#include "dagcut/densities.hpp"

namespace dagcut {

struct CosineTerm {
  double amplitude = 0.0;  // a_i >= 0
  double frequency = 0.0;  // t_i > pi
};

// Nonnegative cosine combination psi(z) = sum a_i cos(t_i z). Each term has
// E[cos(t_i Z)] = E[cos(t_i X)]^2 + E[sin(t_i X)]^2 >= 0 for Z = X - Y with
// i.i.d. labels, so E[psi(Z)] >= 0 regardless of the label distribution; that
// positivity forces a lower bound on any achievable sup-ratio.
class CosineCertificate {
 public:
  explicit CosineCertificate(std::vector<CosineTerm> terms);

  const std::vector<CosineTerm>& terms() const { return terms_; }

  double g(double x) const;        // sum a_i t_i sin(t_i x)
  double numerator() const;        // N = sum a_i (-sin t_i)/t_i
  double denominator() const;      // Dn = integral of |g(x)| + x g(x) over [-1,1]

 private:
  std::vector<CosineTerm> terms_;
};

// Lower bound 1/2 + N/Dn implied by the certificate. Throws
// InvalidCertificate when N <= 0 (the combination proves nothing). The
// denominator integral runs adaptive Simpson between sign changes of g, which
// are bracketed on a 1e4-point grid and bisected.
double lower_bound_certificate(const CosineCertificate& cert);

// Verifies E[cos(tZ)] = cos t + t * integral of sin(tx) F_Z(x) dx for every
// certificate frequency against the direct characteristic-function value
// E[cos tX]^2 + E[sin tX]^2. Returns the largest absolute deviation.
double certificate_identity_deviation(const CosineCertificate& cert, const LabelDensity& d);

inline bool certificate_consistency_check(const CosineCertificate& cert,
                                          const LabelDensity& d) {
  return certificate_identity_deviation(cert, d) <= 1e-8;
}

}  // namespace dagcut
