#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "dagcut/rational.hpp"

namespace dagcut {

// Dense univariate polynomial with exact coefficients, lowest degree first.
// T is Rational for ordinary polynomials and Poly<Rational> for the
// bivariate algebra used by the difference-CDF convolution (outer variable y,
// inner variable t).
template <class T>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
  static Poly constant(T v) { return Poly(std::vector<T>{std::move(v)}); }
  // The monomial x.
  static Poly identity() { return Poly(std::vector<T>{T(0), T(1)}); }

  const std::vector<T>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  // Degree of the zero polynomial is reported as -1.
  int degree() const { return static_cast<int>(c_.size()) - 1; }

  const T& coeff(std::size_t i) const {
    static const T zero{};
    return i < c_.size() ? c_[i] : zero;
  }

  template <class Arg>
  Arg eval(const Arg& x) const {
    Arg acc{};
    for (std::size_t i = c_.size(); i-- > 0;) {
      acc = acc * x + Arg(c_[i]);
    }
    return acc;
  }

  Poly operator-() const {
    Poly out = *this;
    for (auto& v : out.c_) v = -v;
    return out;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<T> out(std::max(a.c_.size(), b.c_.size()), T{});
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (i < a.c_.size()) out[i] = out[i] + a.c_[i];
      if (i < b.c_.size()) out[i] = out[i] + b.c_[i];
    }
    return Poly(std::move(out));
  }

  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<T> out(a.c_.size() + b.c_.size() - 1, T{});
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      for (std::size_t j = 0; j < b.c_.size(); ++j) {
        out[i + j] = out[i + j] + a.c_[i] * b.c_[j];
      }
    }
    return Poly(std::move(out));
  }

  friend Poly operator*(const Poly& a, const T& s) {
    Poly out = a;
    for (auto& v : out.c_) v = v * s;
    out.trim();
    return out;
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<T> out(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) out[i - 1] = c_[i] * T(static_cast<int>(i));
    return Poly(std::move(out));
  }

  // Antiderivative with zero constant term.
  Poly antiderivative() const {
    if (c_.empty()) return Poly();
    std::vector<T> out(c_.size() + 1, T{});
    for (std::size_t i = 0; i < c_.size(); ++i) {
      out[i + 1] = div_int(c_[i], static_cast<long>(i) + 1);
    }
    return Poly(std::move(out));
  }

  // this(g(x)) by Horner in the polynomial ring.
  Poly compose(const Poly& g) const {
    Poly acc;
    for (std::size_t i = c_.size(); i-- > 0;) {
      acc = acc * g + constant(c_[i]);
    }
    return acc;
  }

  // this(x + shift): used to re-center pieces before double conversion.
  Poly shifted(const T& shift) const {
    return compose(Poly(std::vector<T>{shift, T(1)}));
  }

 private:
  static Rational div_int(const Rational& v, long k) { return v / k; }
  static Poly<Rational> div_int(const Poly<Rational>& v, long k) {
    return v * Rational(Rational(1) / k);
  }

  void trim() {
    while (!c_.empty() && c_.back() == T{}) c_.pop_back();
  }

  std::vector<T> c_;
};

using RationalPoly = Poly<Rational>;
// Bivariate polynomial in (y, t): coefficients of powers of y are
// polynomials in t.
using BivariatePoly = Poly<Poly<Rational>>;

// Lift p(y) into the bivariate ring (coefficients constant in t).
inline BivariatePoly lift_to_bivariate(const RationalPoly& p) {
  std::vector<RationalPoly> c;
  c.reserve(p.coeffs().size());
  for (const auto& v : p.coeffs()) c.push_back(RationalPoly::constant(v));
  return BivariatePoly(std::move(c));
}

// p evaluated at (y + t), as a bivariate polynomial.
inline BivariatePoly compose_with_y_plus_t(const RationalPoly& p) {
  // argument y + t: coefficient of y^0 is the polynomial "t", of y^1 is 1.
  BivariatePoly arg(std::vector<RationalPoly>{RationalPoly::identity(),
                                              RationalPoly::constant(Rational(1))});
  BivariatePoly acc;
  for (std::size_t i = p.coeffs().size(); i-- > 0;) {
    acc = acc * arg + BivariatePoly::constant(RationalPoly::constant(p.coeffs()[i]));
  }
  return acc;
}

}  // namespace dagcut
