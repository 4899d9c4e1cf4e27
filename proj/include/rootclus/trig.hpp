// Certified enclosures of pi and of sin/cos at exact rational multiples of
// pi, via power series with rigorous alternating-tail remainder bounds. Only
// what the polynomial family generators need; not a transcendental library.
#pragma once

#include <cstdint>
#include <map>
#include <mutex>

#include "rootclus/ball.hpp"
#include "rootclus/poly.hpp"

namespace rootclus {
namespace trig {

// atan(1/q) for integer q >= 2, by the alternating series
// sum_m (-1)^m / ((2m+1) q^(2m+1)); remainder bounded by the first omitted term.
inline RealBall atan_inv(unsigned long q, Prec prec) {
  Prec work = prec + 16;
  RealBall sum;
  mpz_class qpow(static_cast<long>(q));  // q^(2m+1)
  mpz_class q2 = mpz_class(static_cast<long>(q)) * static_cast<long>(q);
  unsigned long m = 0;
  while (true) {
    mpz_class den = qpow * (2 * m + 1);
    std::int64_t den_bits = static_cast<std::int64_t>(mpz_sizeinbase(den.get_mpz_t(), 2));
    if (den_bits > work + 4) {
      // remainder <= 1/den <= 2^-(den_bits-1)
      RealBall tail(Dyadic(), Dyadic::pow2(-(den_bits - 1)));
      sum = ball_add(sum, tail, work);
      break;
    }
    RealBall term = poly_detail::round_rational(mpq_class(1, den), work);
    sum = (m & 1) ? ball_sub(sum, term, work) : ball_add(sum, term, work);
    qpow *= q2;
    ++m;
  }
  return sum;
}

inline RealBall pi_uncached(Prec prec) {
  Prec work = prec + 16;
  // Machin: pi = 16 atan(1/5) - 4 atan(1/239)
  RealBall a = ball_scale(atan_inv(5, work), Dyadic(16), work);
  RealBall b = ball_scale(atan_inv(239, work), Dyadic(4), work);
  return ball_sub(a, b, work);
}

inline RealBall pi_ball(Prec prec) {
  static std::mutex mu;
  static std::map<Prec, RealBall> cache;
  std::lock_guard<std::mutex> lk(mu);
  auto it = cache.find(prec);
  if (it != cache.end()) return it->second;
  RealBall v = pi_uncached(prec);
  cache.emplace(prec, v);
  return v;
}

namespace detail {

// sin and cos of a ball x with |x| <= 0.8, by alternating series.
inline void sincos_small(const RealBall& x, Prec prec, RealBall* s, RealBall* c) {
  Prec work = prec + 16;
  RealBall xx = ball_sqr(x, work);
  // sin
  {
    RealBall term = x;
    RealBall sum = term;
    unsigned long m = 1;
    while (true) {
      term = ball_mul(term, xx, work);
      term = ball_mul(term, poly_detail::round_rational(mpq_class(1, (2 * m) * (2 * m + 1)), work),
                      work);
      Dyadic bound = term.abs_upper();
      if (bound.is_zero() || bound.mag2() < -(work + 4)) {
        sum = ball_add(sum, RealBall(Dyadic(), bound), work);
        break;
      }
      sum = (m & 1) ? ball_sub(sum, term, work) : ball_add(sum, term, work);
      ++m;
    }
    *s = sum;
  }
  // cos
  {
    RealBall term(Dyadic(1));
    RealBall sum = term;
    unsigned long m = 1;
    while (true) {
      term = ball_mul(term, xx, work);
      term = ball_mul(term, poly_detail::round_rational(mpq_class(1, (2 * m - 1) * (2 * m)), work),
                      work);
      Dyadic bound = term.abs_upper();
      if (bound.is_zero() || bound.mag2() < -(work + 4)) {
        sum = ball_add(sum, RealBall(Dyadic(), bound), work);
        break;
      }
      sum = (m & 1) ? ball_sub(sum, term, work) : ball_add(sum, term, work);
      ++m;
    }
    *c = sum;
  }
}

}  // namespace detail

// sin(q*pi) and cos(q*pi) for an exact rational q.
inline void sincos_pi(const mpq_class& q_in, Prec prec, RealBall* s, RealBall* c) {
  Prec work = prec + 16;
  // reduce mod 2
  mpq_class q = q_in;
  {
    mpq_class half = q / 2;
    mpz_class f2;
    mpz_fdiv_q(f2.get_mpz_t(), half.get_num().get_mpz_t(), half.get_den().get_mpz_t());
    q -= mpq_class(f2 * 2);
  }
  // q in [0,2): octant index s0 = round(2q), x = (q - s0/2) * pi, |x| <= pi/4
  mpq_class twice = q * 2;
  mpq_class shifted = twice + mpq_class(1, 2);
  mpz_class s0;
  mpz_fdiv_q(s0.get_mpz_t(), shifted.get_num().get_mpz_t(), shifted.get_den().get_mpz_t());
  mpq_class frac = q - mpq_class(s0) / 2;  // in [-1/4, 1/4]
  RealBall x = ball_mul(poly_detail::round_rational(frac, work), pi_ball(work), work);
  RealBall bs, bc;
  detail::sincos_small(x, work, &bs, &bc);
  unsigned long oct = mpz_fdiv_ui(s0.get_mpz_t(), 4);
  switch (oct) {
    case 0: *s = bs; *c = bc; break;
    case 1: *s = bc; *c = -bs; break;
    case 2: *s = -bs; *c = -bc; break;
    default: *s = -bc; *c = bs; break;
  }
}

// sqrt(3), used for the cube roots of unity.
inline RealBall sqrt3_ball(Prec prec) { return ball_sqrt(RealBall(Dyadic(3)), prec); }

}  // namespace trig
}  // namespace rootclus
