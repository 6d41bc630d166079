#pragma once

#include <vector>

#include "dagcut/polynomial.hpp"
#include "dagcut/rational.hpp"

namespace dagcut {

// Piecewise polynomial on [breaks.front(), breaks.back()] with exact rational
// coefficients. Piece i applies on [breaks[i], breaks[i+1]]; interior
// breakpoints evaluate through the right piece (continuity is a construction
// invariant for the densities and CDFs built here).
class PiecewisePoly {
 public:
  PiecewisePoly() = default;
  PiecewisePoly(std::vector<Rational> breakpoints, std::vector<RationalPoly> pieces);

  const std::vector<Rational>& breakpoints() const { return breaks_; }
  const std::vector<RationalPoly>& pieces() const { return pieces_; }
  std::size_t piece_count() const { return pieces_.size(); }

  Rational domain_lo() const { return breaks_.front(); }
  Rational domain_hi() const { return breaks_.back(); }

  // Index of the piece whose half-open interval contains t (the last piece is
  // closed on the right). t must lie inside the domain.
  std::size_t piece_index(const Rational& t) const;

  Rational eval_exact(const Rational& t) const;
  // Stable double evaluation through per-piece re-centered coefficients.
  double eval(double t) const;

  // Exact integral over the whole domain.
  Rational integral() const;

  // Antiderivative F with F(domain_lo) = offset, pieces stitched to be
  // continuous at every interior breakpoint (exactly, in rational arithmetic).
  PiecewisePoly antiderivative(const Rational& offset = Rational(0)) const;

  PiecewisePoly derivative() const;

  // Largest violation of monotonicity over an n-point uniform grid (positive
  // value = decrease found). Used by CDF sanity checks.
  double max_decrease_on_grid(int n) const;

 private:
  void compile();

  std::vector<Rational> breaks_;
  std::vector<RationalPoly> pieces_;

  // Double-precision evaluation cache. Piece polynomials are re-centered at
  // the piece midpoint before conversion: the raw monomial coefficients of
  // the degree-46 convolution products are ~1e13 and Horner at |t|<=1 would
  // lose ~5 digits; centered coefficients keep the evaluation error near
  // machine epsilon.
  std::vector<double> dbreaks_;
  std::vector<double> centers_;
  std::vector<std::vector<double>> dcoeffs_;
};

}  // namespace dagcut
