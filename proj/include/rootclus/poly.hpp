// Polynomial representations and transforms: coefficient oracles (exact
// rational or computed-on-demand), ball-coefficient polynomials, Taylor shift
// onto a disc, Graeffe root-squaring iteration (full and prefix-only), and
// Horner evaluation.
#pragma once

#include <cassert>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rootclus/ball.hpp"
#include "rootclus/geometry.hpp"

namespace rootclus {

struct RationalComplex {
  mpq_class re, im;

  RationalComplex() : re(0), im(0) {}
  RationalComplex(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == 0 && im == 0; }

  friend RationalComplex operator+(const RationalComplex& a, const RationalComplex& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend RationalComplex operator-(const RationalComplex& a, const RationalComplex& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend RationalComplex operator*(const RationalComplex& a, const RationalComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  RationalComplex operator-() const { return {-re, -im}; }
  friend bool operator==(const RationalComplex& a, const RationalComplex& b) {
    return a.re == b.re && a.im == b.im;
  }
};

// Polynomial with complex-ball coefficients, ascending degree.
class BallPoly {
 public:
  BallPoly() = default;
  explicit BallPoly(std::vector<ComplexBall> coeffs) : c_(std::move(coeffs)) {
    assert(!c_.empty());
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const ComplexBall& operator[](std::size_t i) const { return c_[i]; }
  ComplexBall& operator[](std::size_t i) { return c_[i]; }
  const std::vector<ComplexBall>& coeffs() const { return c_; }

  // certified |coeff_i|
  RealBall coeff_abs(std::size_t i, Prec prec) const { return ball_cabs(c_[i], prec); }

 private:
  std::vector<ComplexBall> c_;
};

// A polynomial presented as "all coefficients to absolute error <= 2^-L, for
// any L". Implementations must be deterministic per L and reentrant.
class CoeffOracle {
 public:
  virtual ~CoeffOracle() = default;
  virtual int degree() const = 0;
  virtual BallPoly approximate(Prec L) const = 0;
};

inline BallPoly get_approximation(const CoeffOracle& f, Prec L) {
  assert(L >= kMinPrec);
  BallPoly p = f.approximate(L);
  assert(p.degree() == f.degree());
  return p;
}

namespace poly_detail {

// round num/den to a dyadic with absolute error <= 2^-(L+2); rad 0 when exact
inline RealBall round_rational(const mpq_class& q, Prec L) {
  if (q == 0) return RealBall(Dyadic());
  mpz_class n;
  mpz_mul_2exp(n.get_mpz_t(), q.get_num().get_mpz_t(), static_cast<mp_bitcnt_t>(L + 2));
  mpz_class t, r;
  mpz_fdiv_qr(t.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), q.get_den().get_mpz_t());
  bool exact = mpz_sgn(r.get_mpz_t()) == 0;
  if (!exact) {
    mpz_class r2 = r * 2;
    if (r2 >= q.get_den()) t += 1;
  }
  Dyadic mid(t, -(L + 2));
  return exact ? RealBall(std::move(mid)) : RealBall(std::move(mid), Dyadic::pow2(-(L + 2)));
}

}  // namespace poly_detail

// Exact polynomial over complex rationals.
class ExactPoly {
 public:
  ExactPoly() = default;
  explicit ExactPoly(std::vector<RationalComplex> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) throw std::invalid_argument("empty polynomial");
    if (c_.back().is_zero() && c_.size() > 1)
      throw std::invalid_argument("zero leading coefficient");
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const RationalComplex& operator[](std::size_t i) const { return c_[i]; }
  const std::vector<RationalComplex>& coeffs() const { return c_; }

 private:
  std::vector<RationalComplex> c_;
};

class ExactOracle : public CoeffOracle {
 public:
  explicit ExactOracle(ExactPoly p) : poly_(std::move(p)) {}

  int degree() const override { return poly_.degree(); }

  BallPoly approximate(Prec L) const override {
    {
      std::lock_guard<std::mutex> lk(mu_);
      auto it = cache_.find(L);
      if (it != cache_.end()) return it->second;
    }
    std::vector<ComplexBall> out;
    out.reserve(poly_.coeffs().size());
    for (const auto& c : poly_.coeffs()) {
      out.emplace_back(poly_detail::round_rational(c.re, L), poly_detail::round_rational(c.im, L));
    }
    BallPoly bp(std::move(out));
    std::lock_guard<std::mutex> lk(mu_);
    auto [it, ok] = cache_.emplace(L, bp);
    return it->second;
  }

  const ExactPoly& poly() const { return poly_; }

 private:
  ExactPoly poly_;
  mutable std::mutex mu_;
  mutable std::map<Prec, BallPoly> cache_;
};

// p_Delta(z) := p(c + r z), mapping the disc onto the unit disc. Plain O(d^2)
// synthetic shift followed by exact power-of-r scaling.
inline BallPoly taylor_shift(const BallPoly& p, const Disc& delta, Prec prec) {
  assert(delta.radius.sign() > 0);
  int d = p.degree();
  // pre-round the exact center to working precision so every product is LxL
  ComplexBall c(ball_detail::finish(delta.cx, Dyadic(), prec),
                ball_detail::finish(delta.cy, Dyadic(), prec));
  std::vector<ComplexBall> a(p.coeffs());
  for (int j = 0; j < d; ++j) {
    for (int i = d - 1; i >= j; --i) {
      a[i] = ball_add(a[i], ball_mul(a[i + 1], c, prec), prec);
    }
  }
  // scale by r^i
  Dyadic rp(1);
  for (int i = 1; i <= d; ++i) {
    rp = rp * delta.radius;
    a[i] = ball_scale(a[i], rp, prec);
  }
  return BallPoly(std::move(a));
}

namespace poly_detail {

// One Graeffe coefficient by the recurrence
//   g_k = (-1)^k p_k^2 + 2 * sum_{j=0}^{k-1} (-1)^j p_j p_{2k-j}
// with indices beyond the input range reading as zero.
inline ComplexBall graeffe_coeff(const std::vector<ComplexBall>& p, int k, Prec prec) {
  int top = static_cast<int>(p.size()) - 1;
  ComplexBall acc;  // zero
  int jlo = 2 * k - top < 0 ? 0 : 2 * k - top;
  for (int j = jlo; j < k; ++j) {
    ComplexBall t = ball_mul(p[j], p[2 * k - j], prec);
    acc = (j & 1) ? ball_sub(acc, t, prec) : ball_add(acc, t, prec);
  }
  acc = ball_add(acc, acc, prec);
  ComplexBall sq = ball_sqr(p[k], prec);
  return (k & 1) ? ball_sub(acc, sq, prec) : ball_add(acc, sq, prec);
}

}  // namespace poly_detail

// Graeffe root-squaring step: g(z^2) = p(z) * p(-z); the roots of g are the
// squares of the roots of p, with multiplicity.
inline BallPoly graeffe_step(const BallPoly& p, Prec prec) {
  int d = p.degree();
  assert(d >= 1);
  std::vector<ComplexBall> g;
  g.reserve(d + 1);
  for (int k = 0; k <= d; ++k) g.push_back(poly_detail::graeffe_coeff(p.coeffs(), k, prec));
  return BallPoly(std::move(g));
}

// Prefixes of successive Graeffe iterates: starting from a full iterate,
// step t yields the first 2^(steps-t)+1 coefficients of the next iterate,
// each prefix computed from the previous one. Requires 2^steps + 1 <= len(p).
inline std::vector<std::vector<ComplexBall>> graeffe_head(const BallPoly& p, int steps,
                                                          Prec prec) {
  assert(steps >= 0);
  std::vector<std::vector<ComplexBall>> out;
  if (steps == 0) return out;
  assert((std::int64_t{1} << steps) + 1 <= static_cast<std::int64_t>(p.coeffs().size()));
  const std::vector<ComplexBall>* src = &p.coeffs();
  for (int t = 1; t <= steps; ++t) {
    std::int64_t len = (std::int64_t{1} << (steps - t)) + 1;
    std::vector<ComplexBall> next;
    next.reserve(len);
    for (int k = 0; k < len; ++k) {
      next.push_back(poly_detail::graeffe_coeff(*src, k, prec));
    }
    out.push_back(std::move(next));
    src = &out.back();
  }
  return out;
}

// Horner evaluation.
inline ComplexBall evaluate(const BallPoly& p, const ComplexBall& z, Prec prec) {
  int d = p.degree();
  ComplexBall acc = p[d];
  for (int i = d - 1; i >= 0; --i) {
    acc = ball_add(ball_mul(acc, z, prec), p[i], prec);
  }
  return acc;
}

}  // namespace rootclus
