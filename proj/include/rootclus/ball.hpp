// Midpoint-radius ball arithmetic over dyadic numbers, real and complex, with
// certified containment: every operation returns a ball containing the exact
// result for any members of the input balls. Midpoints are rounded to the
// working precision; radii absorb all rounding and are kept on short mantissas.
#pragma once

#include <cassert>
#include <cstdint>

#include "rootclus/dyadic.hpp"

namespace rootclus {

enum class TriBool { False = 0, True = 1, Unresolved = 2 };

inline const char* to_string(TriBool t) {
  switch (t) {
    case TriBool::True: return "true";
    case TriBool::False: return "false";
    default: return "unresolved";
  }
}

using Prec = std::int64_t;
inline constexpr Prec kMinPrec = 2;

// Radii carry at most this many mantissa bits (rounded away from zero).
inline constexpr std::int64_t kRadBits = 32;

inline Dyadic rad_round(const Dyadic& r) { return r.round_away(kRadBits); }

class RealBall {
 public:
  RealBall() = default;
  explicit RealBall(Dyadic mid) : mid_(std::move(mid)) {}
  RealBall(Dyadic mid, Dyadic rad) : mid_(std::move(mid)), rad_(std::move(rad)) {
    assert(rad_.sign() >= 0);
  }

  static RealBall exact(long v) { return RealBall(Dyadic(v)); }

  const Dyadic& mid() const { return mid_; }
  const Dyadic& rad() const { return rad_; }
  bool is_exact() const { return rad_.is_zero(); }

  Dyadic lower() const { return mid_ - rad_; }
  Dyadic upper() const { return mid_ + rad_; }
  // upper bound on |x| over the ball
  Dyadic abs_upper() const { return mid_.abs() + rad_; }
  // lower bound on |x| over the ball (0 if the ball straddles zero)
  Dyadic abs_lower() const {
    Dyadic lo = mid_.abs() - rad_;
    return lo.sign() > 0 ? lo : Dyadic();
  }

  bool contains_zero() const { return mid_.abs() <= rad_; }
  bool contains(const mpq_class& q) const {
    mpq_class diff = q - mid_.to_mpq();
    mpq_class ad = ::abs(diff);
    return ::cmp(ad, rad_.to_mpq()) <= 0;
  }

  RealBall operator-() const { return RealBall(-mid_, rad_); }

 private:
  Dyadic mid_;
  Dyadic rad_;  // >= 0
};

namespace ball_detail {

// mid rounded to prec, rounding error folded into rad
inline RealBall finish(Dyadic mid, Dyadic rad, Prec prec) {
  std::optional<std::int64_t> err;
  Dyadic m = mid.round_nearest(prec, &err);
  if (err) rad = rad + Dyadic::pow2(*err);
  return RealBall(std::move(m), rad_round(rad));
}

}  // namespace ball_detail

inline RealBall ball_add(const RealBall& a, const RealBall& b, Prec prec) {
  assert(prec >= kMinPrec);
  // far-apart magnitudes: absorb the small side into the radius
  std::int64_t ma = a.mid().mag2(), mb = b.mid().mag2();
  if (ma != Dyadic::kZeroMag && mb != Dyadic::kZeroMag) {
    if (ma - mb > prec + 4 && mb > Dyadic::kZeroMag) {
      Dyadic rad = a.rad() + b.rad() + Dyadic::pow2(mb);
      return ball_detail::finish(a.mid(), rad, prec);
    }
    if (mb - ma > prec + 4) {
      Dyadic rad = a.rad() + b.rad() + Dyadic::pow2(ma);
      return ball_detail::finish(b.mid(), rad, prec);
    }
  }
  return ball_detail::finish(a.mid() + b.mid(), a.rad() + b.rad(), prec);
}

inline RealBall ball_sub(const RealBall& a, const RealBall& b, Prec prec) {
  return ball_add(a, -b, prec);
}

inline RealBall ball_mul(const RealBall& a, const RealBall& b, Prec prec) {
  assert(prec >= kMinPrec);
  Dyadic mid = a.mid() * b.mid();
  // |a.mid| <= 2^ma, |b.mid| <= 2^mb
  Dyadic rad = a.rad() * b.rad();
  std::int64_t ma = a.mid().mag2();
  if (ma != Dyadic::kZeroMag) rad = rad + b.rad().mul_2exp(ma);
  std::int64_t mb = b.mid().mag2();
  if (mb != Dyadic::kZeroMag) rad = rad + a.rad().mul_2exp(mb);
  return ball_detail::finish(std::move(mid), std::move(rad), prec);
}

inline RealBall ball_sqr(const RealBall& a, Prec prec) {
  assert(prec >= kMinPrec);
  Dyadic mid = a.mid() * a.mid();
  Dyadic rad = a.rad() * a.rad();
  std::int64_t ma = a.mid().mag2();
  if (ma != Dyadic::kZeroMag) rad = rad + a.rad().mul_2exp(ma + 1);
  return ball_detail::finish(std::move(mid), std::move(rad), prec);
}

// scale by an exact dyadic factor
inline RealBall ball_scale(const RealBall& a, const Dyadic& c, Prec prec) {
  Dyadic mid = a.mid() * c;
  Dyadic rad = a.rad() * c.abs();
  return ball_detail::finish(std::move(mid), std::move(rad), prec);
}

// x^(2^k) by k certified squarings
inline RealBall ball_pow2k(const RealBall& x, int k, Prec prec) {
  RealBall y = x;
  for (int i = 0; i < k; ++i) y = ball_sqr(y, prec);
  return y;
}

namespace ball_detail {

// floor(sqrt(v)) and ceil(sqrt(v)) over nonnegative dyadics, to ~prec bits
inline void sqrt_bounds(const Dyadic& v, Prec prec, Dyadic* lo, Dyadic* hi) {
  if (v.sign() <= 0) {
    *lo = Dyadic();
    *hi = Dyadic();
    return;
  }
  // scale mantissa so the integer sqrt carries >= prec+2 result bits and the
  // exponent is even
  std::int64_t bits = static_cast<std::int64_t>(mpz_sizeinbase(v.mantissa().get_mpz_t(), 2));
  std::int64_t shift = 2 * (prec + 2) > bits ? 2 * (prec + 2) - bits : 0;
  std::int64_t e = v.exponent() - shift;
  if (e & 1) {
    ++shift;
    --e;
  }
  mpz_class scaled;
  mpz_mul_2exp(scaled.get_mpz_t(), v.mantissa().get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
  mpz_class root, rem;
  mpz_sqrtrem(root.get_mpz_t(), rem.get_mpz_t(), scaled.get_mpz_t());
  std::int64_t he = e / 2;
  *lo = Dyadic(root, he);
  if (mpz_sgn(rem.get_mpz_t()) == 0) {
    *hi = *lo;
  } else {
    *hi = Dyadic(root + 1, he);
  }
}

}  // namespace ball_detail

// Certified square root of a nonnegative quantity. Lower endpoints below zero
// are clamped to zero, so the ball must describe a conceptually nonnegative
// value (e.g. a squared magnitude).
inline RealBall ball_sqrt(const RealBall& x, Prec prec) {
  assert(prec >= kMinPrec);
  Dyadic lo_in = x.lower();
  if (lo_in.sign() < 0) lo_in = Dyadic();
  Dyadic hi_in = x.upper();
  if (hi_in.sign() < 0) hi_in = Dyadic();
  Dyadic lo, hi, lo2, hi2;
  ball_detail::sqrt_bounds(lo_in, prec, &lo, &lo2);
  ball_detail::sqrt_bounds(hi_in, prec, &hi2, &hi);
  Dyadic mid = (lo + hi).mul_2exp(-1);
  Dyadic rad = (hi - lo).mul_2exp(-1);
  return ball_detail::finish(std::move(mid), std::move(rad), prec);
}

// enclosure of |x|
inline RealBall ball_abs(const RealBall& x, Prec prec) {
  if (!x.contains_zero()) {
    return ball_detail::finish(x.mid().abs(), x.rad(), prec);
  }
  Dyadic u = x.abs_upper();
  Dyadic half = u.mul_2exp(-1);
  return ball_detail::finish(half, half, prec);
}

// Three-valued soft comparison of enclosures of exact reals a, b.
//   True  => a > b certainly.
//   False => a < b certainly, or |a-b| <= theta * max(1, upper|b|) certified,
//            with theta = 2^-30.
inline constexpr std::int64_t kSoftSlackLog2 = -30;

inline TriBool int_compare(const RealBall& a, const RealBall& b) {
  Dyadic alo = a.lower(), ahi = a.upper();
  Dyadic blo = b.lower(), bhi = b.upper();
  if (alo > bhi) return TriBool::True;
  if (ahi < blo) return TriBool::False;
  // closeness: upper(|a-b|) <= theta * max(1, upper(|b|))
  Dyadic diff_hi = (a.mid() - b.mid()).abs() + a.rad() + b.rad();
  Dyadic babs = b.abs_upper();
  Dyadic bound = max(Dyadic(1), babs).mul_2exp(kSoftSlackLog2);
  if (diff_hi <= bound) return TriBool::False;
  return TriBool::Unresolved;
}

class ComplexBall {
 public:
  ComplexBall() = default;
  ComplexBall(RealBall re, RealBall im) : re_(std::move(re)), im_(std::move(im)) {}
  explicit ComplexBall(RealBall re) : re_(std::move(re)) {}
  static ComplexBall exact(const Dyadic& re, const Dyadic& im) {
    return ComplexBall(RealBall(re), RealBall(im));
  }

  const RealBall& re() const { return re_; }
  const RealBall& im() const { return im_; }

  bool contains_zero() const { return re_.contains_zero() && im_.contains_zero(); }
  bool contains(const mpq_class& qre, const mpq_class& qim) const {
    return re_.contains(qre) && im_.contains(qim);
  }

  ComplexBall operator-() const { return ComplexBall(-re_, -im_); }

 private:
  RealBall re_, im_;
};

inline ComplexBall ball_add(const ComplexBall& a, const ComplexBall& b, Prec prec) {
  return ComplexBall(ball_add(a.re(), b.re(), prec), ball_add(a.im(), b.im(), prec));
}

inline ComplexBall ball_sub(const ComplexBall& a, const ComplexBall& b, Prec prec) {
  return ComplexBall(ball_sub(a.re(), b.re(), prec), ball_sub(a.im(), b.im(), prec));
}

inline ComplexBall ball_mul(const ComplexBall& a, const ComplexBall& b, Prec prec) {
  RealBall re = ball_sub(ball_mul(a.re(), b.re(), prec), ball_mul(a.im(), b.im(), prec), prec);
  RealBall im = ball_add(ball_mul(a.re(), b.im(), prec), ball_mul(a.im(), b.re(), prec), prec);
  return ComplexBall(std::move(re), std::move(im));
}

inline ComplexBall ball_sqr(const ComplexBall& a, Prec prec) {
  RealBall re = ball_sub(ball_sqr(a.re(), prec), ball_sqr(a.im(), prec), prec);
  RealBall im = ball_mul(a.re(), a.im(), prec);
  im = ball_add(im, im, prec);
  return ComplexBall(std::move(re), std::move(im));
}

inline ComplexBall ball_scale(const ComplexBall& a, const Dyadic& c, Prec prec) {
  return ComplexBall(ball_scale(a.re(), c, prec), ball_scale(a.im(), c, prec));
}

// certified enclosure of |z| = sqrt(re^2 + im^2)
inline RealBall ball_cabs(const ComplexBall& z, Prec prec) {
  RealBall s = ball_add(ball_sqr(z.re(), prec), ball_sqr(z.im(), prec), prec);
  return ball_sqrt(s, prec);
}

}  // namespace rootclus
