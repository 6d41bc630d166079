#include "dagcut/densities.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "dagcut/errors.hpp"

namespace dagcut {

namespace {

constexpr int kQuantileTableSize = 4097;

BigInt binomial(int n, int k) {
  BigInt r(1);
  for (int i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;
  }
  return r;
}

Rational rational_floor(const Rational& q) {
  BigInt num = boost::multiprecision::numerator(q);
  BigInt den = boost::multiprecision::denominator(q);
  BigInt d = num / den;
  if (num < 0 && d * den != num) d -= 1;
  return Rational(d);
}

}  // namespace

LabelDensity::LabelDensity(std::string name, PiecewisePoly density)
    : name_(std::move(name)),
      density_(std::move(density)),
      cdf_(density_.antiderivative(Rational(0))) {
  if (density_.domain_lo() != Rational(0) || density_.domain_hi() != Rational(1)) {
    raise(ErrorCode::InvalidArgument, "label density must live on [0,1]");
  }
  if (density_.integral() != Rational(1)) {
    raise(ErrorCode::InvalidArgument, "label density must integrate to exactly 1");
  }

  // Quantile table bracketing the inverse CDF for fast inversion.
  quantile_table_.resize(kQuantileTableSize);
  quantile_table_.front() = 0.0;
  quantile_table_.back() = 1.0;
  for (int i = 1; i + 1 < kQuantileTableSize; ++i) {
    const double u = static_cast<double>(i) / (kQuantileTableSize - 1);
    double lo = quantile_table_[i - 1], hi = 1.0;
    while (hi - lo > 1e-13) {
      const double mid = 0.5 * (lo + hi);
      (cdf_.eval(mid) < u ? lo : hi) = mid;
    }
    quantile_table_[i] = 0.5 * (lo + hi);
  }
}

double LabelDensity::inverse_cdf(double u) const {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  const int cell = std::min(kQuantileTableSize - 2,
                            static_cast<int>(u * (kQuantileTableSize - 1)));
  double lo = quantile_table_[static_cast<std::size_t>(cell)];
  double hi = quantile_table_[static_cast<std::size_t>(cell) + 1];
  // Newton from the bracket midpoint; the built-in densities are bounded
  // below (min 2/3 for the refined one) so convergence is quadratic. Falls
  // back to bisection whenever an iterate escapes the bracket.
  double t = 0.5 * (lo + hi);
  for (int it = 0; it < 60 && hi - lo > 1e-12; ++it) {
    const double ft = cdf_.eval(t) - u;
    (ft < 0.0 ? lo : hi) = t;
    const double dt = density_.eval(t);
    double next = dt > 1e-9 ? t - ft / dt : 0.5 * (lo + hi);
    if (next <= lo || next >= hi) next = 0.5 * (lo + hi);
    t = next;
  }
  return 0.5 * (lo + hi);
}

double LabelDensity::sample(std::mt19937_64& rng) const {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return inverse_cdf(u);
}

LabelDensity uniform_density() {
  PiecewisePoly p({Rational(0), Rational(1)},
                  {RationalPoly(std::vector<Rational>{Rational(1)})});
  return LabelDensity("uniform", std::move(p));
}

LabelDensity poly_density() {
  // 2/3 + (23/3) * (1-2x)^22, expanded: coefficient of x^i is
  // (23/3) * C(22,i) * (-2)^i, plus 2/3 on the constant term.
  std::vector<Rational> coeffs(23, Rational(0));
  coeffs[0] = Rational(2, 3);
  Rational scale(23, 3);
  for (int i = 0; i <= 22; ++i) {
    Rational term = scale * Rational(binomial(22, i)) * rational_pow(Rational(-2), static_cast<unsigned>(i));
    coeffs[static_cast<std::size_t>(i)] += term;
  }
  PiecewisePoly p({Rational(0), Rational(1)}, {RationalPoly(std::move(coeffs))});
  return LabelDensity("polyd", std::move(p));
}

namespace {

// A y-integration bound that is either a constant or a CDF breakpoint shifted
// by -t; both are degree<=1 polynomials in t.
struct YBound {
  Rational value_at_tmid;
  RationalPoly as_poly_in_t;
};

}  // namespace

PiecewisePoly difference_cdf(const LabelDensity& d) {
  const PiecewisePoly& dens = d.density();
  const PiecewisePoly& cdf = d.cdf();
  const auto& abreaks = dens.breakpoints();

  // The y-region structure changes exactly when a shifted CDF breakpoint
  // crosses a density breakpoint: t = b_j - a_i.
  std::vector<Rational> tbreaks;
  for (const auto& bj : abreaks) {
    for (const auto& ai : abreaks) {
      Rational t = bj - ai;
      if (t >= Rational(-1) && t <= Rational(1)) tbreaks.push_back(t);
    }
  }
  std::sort(tbreaks.begin(), tbreaks.end());
  tbreaks.erase(std::unique(tbreaks.begin(), tbreaks.end()), tbreaks.end());

  std::vector<RationalPoly> result_pieces;
  for (std::size_t s = 0; s + 1 < tbreaks.size(); ++s) {
    const Rational t_mid = (tbreaks[s] + tbreaks[s + 1]) / 2;

    std::vector<YBound> cuts;
    for (const auto& a : abreaks) {
      cuts.push_back({a, RationalPoly::constant(a)});
    }
    for (const auto& b : abreaks) {
      Rational v = b - t_mid;
      if (v > Rational(0) && v < Rational(1)) {
        cuts.push_back({v, RationalPoly(std::vector<Rational>{b, Rational(-1)})});
      }
    }
    std::sort(cuts.begin(), cuts.end(),
              [](const YBound& a, const YBound& b) { return a.value_at_tmid < b.value_at_tmid; });

    RationalPoly piece;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const Rational y_lo = cuts[i].value_at_tmid;
      const Rational y_hi = cuts[i + 1].value_at_tmid;
      if (!(y_lo < y_hi)) continue;
      const Rational y_mid = (y_lo + y_hi) / 2;
      const Rational s_mid = y_mid + t_mid;
      if (s_mid < Rational(0)) continue;  // D vanishes here

      const RationalPoly& p = dens.pieces()[dens.piece_index(y_mid)];
      if (s_mid > Rational(1)) {
        // D saturates at 1: contribution is the plain density integral.
        RationalPoly H = p.antiderivative();
        piece = piece + (H.compose(cuts[i + 1].as_poly_in_t) - H.compose(cuts[i].as_poly_in_t));
      } else {
        const RationalPoly& D = cdf.pieces()[cdf.piece_index(s_mid)];
        BivariatePoly integrand = lift_to_bivariate(p) * compose_with_y_plus_t(D);
        BivariatePoly H = integrand.antiderivative();
        RationalPoly upper = H.eval(cuts[i + 1].as_poly_in_t);
        RationalPoly lower = H.eval(cuts[i].as_poly_in_t);
        piece = piece + (upper - lower);
      }
    }
    result_pieces.push_back(std::move(piece));
  }

  PiecewisePoly F(tbreaks, std::move(result_pieces));

  // The convolution is exact, so these must hold with equality.
  if (F.eval_exact(Rational(-1)) != Rational(0) || F.eval_exact(Rational(1)) != Rational(1)) {
    raise(ErrorCode::NumericalFailure, "difference CDF endpoints are not exact");
  }
  for (std::size_t i = 1; i + 1 < F.breakpoints().size(); ++i) {
    const Rational& b = F.breakpoints()[i];
    if (F.pieces()[i - 1].eval(b) != F.pieces()[i].eval(b)) {
      raise(ErrorCode::NumericalFailure, "difference CDF is discontinuous at a breakpoint");
    }
  }
  return F;
}

namespace {

int sign_of(const Rational& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

// Exact synthetic division of f by (t + 1); f(-1) = 0 is required so the
// remainder vanishes. q_{n-1} = c_n, q_{i-1} = c_i - q_i.
RationalPoly divide_by_t_plus_one(const RationalPoly& f) {
  const auto& c = f.coeffs();
  if (c.size() < 2) return RationalPoly();
  std::vector<Rational> quotient(c.size() - 1, Rational(0));
  Rational acc = c.back();
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    quotient[i] = acc;
    if (i == 0) break;
    acc = c[i] - acc;
  }
  return RationalPoly(std::move(quotient));
}

struct Candidate {
  Rational t;
  Rational value;
};

Rational ratio_at(const RationalPoly& f, const Rational& t) {
  return f.eval(t) / (t + 1);
}

}  // namespace

SupRatioResult sup_ratio(const PiecewisePoly& F) {
  const auto& breaks = F.breakpoints();
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i] < breaks[i + 1])) {
      raise(ErrorCode::DegeneratePiece, "zero-width piece in sup-ratio input");
    }
  }

  bool have_best = false;
  Candidate best;

  auto consider = [&](const RationalPoly& f, const Rational& t) {
    Rational value;
    if (t == Rational(-1)) {
      if (f.eval(t) != Rational(0)) {
        raise(ErrorCode::InvalidArgument, "F(-1) must be 0 for a difference CDF");
      }
      value = divide_by_t_plus_one(f).eval(t);
    } else {
      value = ratio_at(f, t);
    }
    if (!have_best || value > best.value) {
      best = {t, value};
      have_best = true;
    }
  };

  for (std::size_t pi = 0; pi < F.piece_count(); ++pi) {
    const RationalPoly& f = F.pieces()[pi];
    const Rational a = breaks[pi];
    const Rational b = breaks[pi + 1];
    consider(f, a);

    // Stationary points: roots of n(t) = f'(t)(t+1) - f(t) inside (a, b),
    // isolated by an exact-sign scan and bisected to width 1e-12. Roots
    // without a sign change cannot beat the endpoints for a maximization.
    RationalPoly n = f.derivative() * RationalPoly(std::vector<Rational>{Rational(1), Rational(1)}) - f;
    if (!n.is_zero()) {
      const int scan = std::max(64, 32 * (n.degree() + 1));
      Rational prev_t = a;
      int prev_sign = sign_of(n.eval(a));
      for (int i = 1; i <= scan; ++i) {
        Rational t = a + (b - a) * Rational(i, scan);
        int sgn = sign_of(n.eval(t));
        if (sgn != 0 && prev_sign != 0 && sgn != prev_sign) {
          Rational lo = prev_t, hi = t;
          const Rational width_target(1, 1000000000000LL);  // 1e-12
          while (hi - lo > width_target) {
            Rational mid = (lo + hi) / 2;
            int ms = sign_of(n.eval(mid));
            if (ms == 0) {
              lo = hi = mid;
              break;
            }
            (ms == prev_sign ? lo : hi) = mid;
          }
          consider(f, (lo + hi) / 2);
        }
        if (sgn != 0) {
          prev_sign = sgn;
          prev_t = t;
        }
      }
    }
    consider(f, b);
  }

  if (!have_best) raise(ErrorCode::InvalidArgument, "empty sup-ratio input");

  SupRatioResult out{to_double(best.t), to_double(best.value)};

  // Independent certification: no value on a dense grid may exceed the
  // reported maximum beyond 1e-9. One local refinement pass recovers from a
  // missed interior maximum before giving up.
  const int grid = 1'000'000;
  for (int attempt = 0; attempt < 2; ++attempt) {
    double worst_excess = 0.0;
    double worst_t = 0.0;
    const double lo = to_double(F.domain_lo());
    const double hi = to_double(F.domain_hi());
    for (int i = 1; i < grid; ++i) {
      const double t = lo + (hi - lo) * static_cast<double>(i) / (grid - 1);
      const double r = F.eval(t) / (t + 1.0);
      if (r - out.value > worst_excess) {
        worst_excess = r - out.value;
        worst_t = t;
      }
    }
    if (worst_excess <= 1e-9) return out;
    // Ternary refinement around the offending grid point.
    double a = worst_t - 2.0 * (hi - lo) / grid;
    double b = worst_t + 2.0 * (hi - lo) / grid;
    for (int it = 0; it < 200; ++it) {
      const double m1 = a + (b - a) / 3.0;
      const double m2 = b - (b - a) / 3.0;
      if (F.eval(m1) / (m1 + 1.0) < F.eval(m2) / (m2 + 1.0)) {
        a = m1;
      } else {
        b = m2;
      }
    }
    const double t_ref = 0.5 * (a + b);
    const double v_ref = F.eval(t_ref) / (t_ref + 1.0);
    if (v_ref > out.value) out = {t_ref, v_ref};
  }
  raise(ErrorCode::NumericalFailure, "sup-ratio grid certification failed");
}

DiscreteLabels::DiscreteLabels(int r) : r_(r) {
  if (r < 1) raise(ErrorCode::InvalidArgument, "discrete label distribution needs r >= 1");
}

Rational DiscreteLabels::cut_probability(const Rational& threshold) const {
  // P[(j - i)/r <= threshold] over i, j uniform on {0..r}: count differences
  // d = j - i with d <= floor(r * threshold); there are (r+1-|d|) pairs per d.
  const Rational scaled = Rational(r_) * threshold;
  Rational floor_scaled = rational_floor(scaled);
  long dmax;
  if (floor_scaled > Rational(r_)) {
    dmax = r_;
  } else if (floor_scaled < Rational(-r_)) {
    return Rational(0);
  } else {
    dmax = floor_scaled.convert_to<long>();
  }
  BigInt count(0);
  for (long d = -r_; d <= dmax; ++d) {
    count += (r_ + 1 - (d < 0 ? -d : d));
  }
  return Rational(count) / Rational(BigInt(r_ + 1) * BigInt(r_ + 1));
}

double DiscreteLabels::sample(std::mt19937_64& rng) const {
  return static_cast<double>(rng() % static_cast<std::uint64_t>(r_ + 1)) / r_;
}

}  // namespace dagcut
