#include "dagcut/piecewise.hpp"

#include <algorithm>
#include <cmath>

#include "dagcut/errors.hpp"

namespace dagcut {

PiecewisePoly::PiecewisePoly(std::vector<Rational> breakpoints,
                             std::vector<RationalPoly> pieces)
    : breaks_(std::move(breakpoints)), pieces_(std::move(pieces)) {
  if (breaks_.size() < 2 || pieces_.size() + 1 != breaks_.size()) {
    raise(ErrorCode::InvalidArgument, "piecewise polynomial needs n+1 breakpoints for n pieces");
  }
  for (std::size_t i = 0; i + 1 < breaks_.size(); ++i) {
    if (!(breaks_[i] < breaks_[i + 1])) {
      raise(ErrorCode::DegeneratePiece, "breakpoints must be strictly increasing");
    }
  }
  compile();
}

std::size_t PiecewisePoly::piece_index(const Rational& t) const {
  if (t < breaks_.front() || t > breaks_.back()) {
    raise(ErrorCode::InvalidArgument, "evaluation point outside domain");
  }
  // upper_bound over rationals; piece i covers [breaks_[i], breaks_[i+1]).
  std::size_t lo = 0, hi = breaks_.size() - 1;
  while (lo + 1 < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (breaks_[mid] <= t) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

Rational PiecewisePoly::eval_exact(const Rational& t) const {
  return pieces_[piece_index(t)].eval(t);
}

double PiecewisePoly::eval(double t) const {
  // Clamp to the domain; CDF callers rely on saturation at the endpoints.
  if (t <= dbreaks_.front()) t = dbreaks_.front();
  if (t >= dbreaks_.back()) t = dbreaks_.back();
  auto it = std::upper_bound(dbreaks_.begin(), dbreaks_.end(), t);
  std::size_t idx = static_cast<std::size_t>(it - dbreaks_.begin());
  idx = idx == 0 ? 0 : idx - 1;
  if (idx >= pieces_.size()) idx = pieces_.size() - 1;

  const double s = t - centers_[idx];
  const auto& c = dcoeffs_[idx];
  double acc = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * s + c[i];
  return acc;
}

Rational PiecewisePoly::integral() const {
  Rational total(0);
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    RationalPoly F = pieces_[i].antiderivative();
    total += F.eval(breaks_[i + 1]) - F.eval(breaks_[i]);
  }
  return total;
}

PiecewisePoly PiecewisePoly::antiderivative(const Rational& offset) const {
  std::vector<RationalPoly> out;
  out.reserve(pieces_.size());
  Rational acc = offset;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    RationalPoly F = pieces_[i].antiderivative();
    Rational shift = acc - F.eval(breaks_[i]);
    out.push_back(F + RationalPoly::constant(shift));
    acc = out.back().eval(breaks_[i + 1]);
  }
  return PiecewisePoly(breaks_, std::move(out));
}

PiecewisePoly PiecewisePoly::derivative() const {
  std::vector<RationalPoly> out;
  out.reserve(pieces_.size());
  for (const auto& p : pieces_) out.push_back(p.derivative());
  return PiecewisePoly(breaks_, std::move(out));
}

double PiecewisePoly::max_decrease_on_grid(int n) const {
  const double lo = dbreaks_.front();
  const double hi = dbreaks_.back();
  double worst = 0.0;
  double prev = eval(lo);
  for (int i = 1; i < n; ++i) {
    double t = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
    double cur = eval(t);
    worst = std::max(worst, prev - cur);
    prev = cur;
  }
  return worst;
}

void PiecewisePoly::compile() {
  dbreaks_.clear();
  centers_.clear();
  dcoeffs_.clear();
  dbreaks_.reserve(breaks_.size());
  for (const auto& b : breaks_) dbreaks_.push_back(to_double(b));
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    Rational mid = (breaks_[i] + breaks_[i + 1]) / 2;
    RationalPoly centered = pieces_[i].shifted(mid);
    std::vector<double> dc;
    dc.reserve(centered.coeffs().size());
    for (const auto& q : centered.coeffs()) dc.push_back(to_double(q));
    if (dc.empty()) dc.push_back(0.0);
    centers_.push_back(to_double(mid));
    dcoeffs_.push_back(std::move(dc));
  }
}

}  // namespace dagcut
