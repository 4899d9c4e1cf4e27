// Arbitrary-precision dyadic numbers: value = mantissa * 2^exponent with an
// arbitrary-size integer mantissa and a 64-bit exponent. Ring operations are
// exact; rounding is explicit and reports its error bound.
#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace rootclus {

// Fatal resource exhaustion (dyadic exponent out of 64-bit range).
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline std::int64_t checked_add_exp(std::int64_t a, std::int64_t b) {
  __int128 s = static_cast<__int128>(a) + b;
  if (s > std::numeric_limits<std::int64_t>::max() ||
      s < std::numeric_limits<std::int64_t>::min() + 4) {
    throw ResourceError("dyadic exponent overflow");
  }
  return static_cast<std::int64_t>(s);
}

}  // namespace detail

class Dyadic {
 public:
  // Magnitude exponent of zero (mag2() of a zero value).
  static constexpr std::int64_t kZeroMag = std::numeric_limits<std::int64_t>::min();

  Dyadic() : man_(0), exp_(0) {}
  Dyadic(long v) : man_(v), exp_(0) { canonicalize(); }  // NOLINT(runtime/explicit)
  Dyadic(mpz_class m, std::int64_t e) : man_(std::move(m)), exp_(e) { canonicalize(); }

  static Dyadic pow2(std::int64_t e) { return Dyadic(1, e); }

  const mpz_class& mantissa() const { return man_; }
  std::int64_t exponent() const { return exp_; }

  bool is_zero() const { return mpz_sgn(man_.get_mpz_t()) == 0; }
  int sign() const { return mpz_sgn(man_.get_mpz_t()); }

  // Smallest e with |v| < 2^e (kZeroMag for v = 0); also |v| >= 2^(e-1).
  std::int64_t mag2() const {
    if (is_zero()) return kZeroMag;
    std::int64_t bits = static_cast<std::int64_t>(mpz_sizeinbase(man_.get_mpz_t(), 2));
    return detail::checked_add_exp(exp_, bits);
  }

  Dyadic operator-() const {
    Dyadic r;
    r.man_ = -man_;
    r.exp_ = exp_;
    return r;
  }

  Dyadic abs() const {
    Dyadic r;
    mpz_abs(r.man_.get_mpz_t(), man_.get_mpz_t());
    r.exp_ = exp_;
    return r;
  }

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    Dyadic r;
    if (a.exp_ >= b.exp_) {
      std::int64_t sh = a.exp_ - b.exp_;
      mpz_mul_2exp(r.man_.get_mpz_t(), a.man_.get_mpz_t(), static_cast<mp_bitcnt_t>(sh));
      r.man_ += b.man_;
      r.exp_ = b.exp_;
    } else {
      std::int64_t sh = b.exp_ - a.exp_;
      mpz_mul_2exp(r.man_.get_mpz_t(), b.man_.get_mpz_t(), static_cast<mp_bitcnt_t>(sh));
      r.man_ += a.man_;
      r.exp_ = a.exp_;
    }
    r.canonicalize();
    return r;
  }

  friend Dyadic operator-(const Dyadic& a, const Dyadic& b) { return a + (-b); }

  friend Dyadic operator*(const Dyadic& a, const Dyadic& b) {
    Dyadic r;
    r.man_ = a.man_ * b.man_;
    r.exp_ = (mpz_sgn(r.man_.get_mpz_t()) == 0) ? 0 : detail::checked_add_exp(a.exp_, b.exp_);
    // product of odd mantissas is odd; no canonicalization needed beyond zero
    return r;
  }

  Dyadic mul_2exp(std::int64_t e) const {
    if (is_zero()) return Dyadic();
    Dyadic r;
    r.man_ = man_;
    r.exp_ = detail::checked_add_exp(exp_, e);
    return r;
  }

  Dyadic mul_ui(unsigned long k) const {
    Dyadic r;
    mpz_mul_ui(r.man_.get_mpz_t(), man_.get_mpz_t(), k);
    r.exp_ = exp_;
    r.canonicalize();
    return r;
  }

  // Sign of a - b without materializing a full difference when magnitudes differ.
  friend int cmp(const Dyadic& a, const Dyadic& b) {
    int sa = a.sign(), sb = b.sign();
    if (sa != sb) return sa < sb ? -1 : 1;
    if (sa == 0) return 0;
    // magnitude ranges [2^(m-1), 2^m) are disjoint when the exponents differ
    std::int64_t ma = a.mag2(), mb = b.mag2();
    if (ma != mb) return ma < mb ? -sa : sa;
    Dyadic d = a - b;
    return d.sign();
  }

  friend bool operator<(const Dyadic& a, const Dyadic& b) { return cmp(a, b) < 0; }
  friend bool operator<=(const Dyadic& a, const Dyadic& b) { return cmp(a, b) <= 0; }
  friend bool operator>(const Dyadic& a, const Dyadic& b) { return cmp(a, b) > 0; }
  friend bool operator>=(const Dyadic& a, const Dyadic& b) { return cmp(a, b) >= 0; }
  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.exp_ == b.exp_ && a.man_ == b.man_;
  }
  friend bool operator!=(const Dyadic& a, const Dyadic& b) { return !(a == b); }

  // Round to at most prec mantissa bits, nearest, ties away from zero.
  // Returns the rounding error bound as an exponent: error <= 2^err_exp
  // (nullopt when the result is exact).
  Dyadic round_nearest(std::int64_t prec, std::optional<std::int64_t>* err_exp = nullptr) const {
    if (err_exp) *err_exp = std::nullopt;
    if (is_zero()) return *this;
    std::int64_t bits = static_cast<std::int64_t>(mpz_sizeinbase(man_.get_mpz_t(), 2));
    if (bits <= prec) return *this;
    std::int64_t k = bits - prec;
    Dyadic r;
    mpz_class a;
    mpz_abs(a.get_mpz_t(), man_.get_mpz_t());
    int round_up = mpz_tstbit(a.get_mpz_t(), static_cast<mp_bitcnt_t>(k - 1));
    mpz_tdiv_q_2exp(r.man_.get_mpz_t(), a.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
    if (round_up) r.man_ += 1;
    if (sign() < 0) mpz_neg(r.man_.get_mpz_t(), r.man_.get_mpz_t());
    r.exp_ = detail::checked_add_exp(exp_, k);
    if (err_exp) *err_exp = detail::checked_add_exp(exp_, k - 1);
    r.canonicalize();
    return r;
  }

  // Round magnitude up (away from zero) to at most prec mantissa bits.
  Dyadic round_away(std::int64_t prec) const {
    if (is_zero()) return *this;
    std::int64_t bits = static_cast<std::int64_t>(mpz_sizeinbase(man_.get_mpz_t(), 2));
    if (bits <= prec) return *this;
    std::int64_t k = bits - prec;
    Dyadic r;
    mpz_class a;
    mpz_abs(a.get_mpz_t(), man_.get_mpz_t());
    mpz_cdiv_q_2exp(r.man_.get_mpz_t(), a.get_mpz_t(), static_cast<mp_bitcnt_t>(k));
    if (sign() < 0) mpz_neg(r.man_.get_mpz_t(), r.man_.get_mpz_t());
    r.exp_ = detail::checked_add_exp(exp_, k);
    r.canonicalize();
    return r;
  }

  mpq_class to_mpq() const {
    mpq_class q(man_);
    if (exp_ >= 0) {
      mpz_mul_2exp(q.get_num().get_mpz_t(), q.get_num().get_mpz_t(),
                   static_cast<mp_bitcnt_t>(exp_));
    } else {
      mpz_mul_2exp(q.get_den().get_mpz_t(), q.get_den().get_mpz_t(),
                   static_cast<mp_bitcnt_t>(-exp_));
    }
    q.canonicalize();
    return q;
  }

  double to_double() const {
    if (is_zero()) return 0.0;
    // keep at most 64 mantissa bits so ldexp sees a sane operand
    Dyadic t = round_nearest(64);
    double m = mpz_get_d(t.man_.get_mpz_t());
    std::int64_t e = t.exp_;
    if (e > 20000) return sign() > 0 ? std::numeric_limits<double>::infinity()
                                     : -std::numeric_limits<double>::infinity();
    if (e < -20000) return 0.0;
    return std::ldexp(m, static_cast<int>(e));
  }

  // Exact textual form "m*2^e" (canonical mantissa).
  std::string to_m2e() const {
    return man_.get_str() + "*2^" + std::to_string(exp_);
  }

  static std::optional<Dyadic> parse_m2e(const std::string& s) {
    auto pos = s.find("*2^");
    if (pos == std::string::npos) return std::nullopt;
    try {
      mpz_class m(s.substr(0, pos));
      long e = std::stol(s.substr(pos + 3));
      return Dyadic(m, e);
    } catch (...) {
      return std::nullopt;
    }
  }

  // Decimal with `sig` significant digits (round to nearest). Scientific form
  // for extreme magnitudes, plain otherwise. Deterministic pure-integer path.
  std::string to_decimal(std::size_t sig = 40) const;

 private:
  void canonicalize() {
    if (mpz_sgn(man_.get_mpz_t()) == 0) {
      exp_ = 0;
      return;
    }
    mp_bitcnt_t tz = mpz_scan1(man_.get_mpz_t(), 0);
    if (tz > 0) {
      mpz_tdiv_q_2exp(man_.get_mpz_t(), man_.get_mpz_t(), tz);
      exp_ = detail::checked_add_exp(exp_, static_cast<std::int64_t>(tz));
    }
  }

  mpz_class man_;
  std::int64_t exp_;
};

inline Dyadic min(const Dyadic& a, const Dyadic& b) { return a <= b ? a : b; }
inline Dyadic max(const Dyadic& a, const Dyadic& b) { return a >= b ? a : b; }

inline std::string Dyadic::to_decimal(std::size_t sig) const {
  if (is_zero()) return "0";
  // digits = round(|v| / 10^(D+1-sig)) where D = floor(log10 |v|)
  mpz_class a;
  mpz_abs(a.get_mpz_t(), man_.get_mpz_t());
  // ten_exp tracks the current decimal scaling of `a * 2^exp * 10^-ten_exp`
  long ten_exp = 0;
  mpz_class scaled = a;
  if (exp_ >= 0) {
    mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), static_cast<mp_bitcnt_t>(exp_));
  } else {
    // multiply by 10^t, divide by 2^-exp, keeping ~sig+2 digits of headroom
    std::int64_t need10 =
        static_cast<std::int64_t>((-exp_) * 0.30103) + static_cast<std::int64_t>(sig) + 4;
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(need10));
    scaled *= p10;
    mpz_class rem;
    mpz_tdiv_qr(scaled.get_mpz_t(), rem.get_mpz_t(), scaled.get_mpz_t(),
                mpz_class(mpz_class(1) << static_cast<mp_bitcnt_t>(-exp_)).get_mpz_t());
    ten_exp = static_cast<long>(need10);
    if (mpz_sgn(scaled.get_mpz_t()) == 0) scaled = 1;  // underflow guard; rem != 0 here
  }
  std::string digits = scaled.get_str();
  long dec_exp = static_cast<long>(digits.size()) - 1 - ten_exp;  // floor(log10 |v|), approx
  if (digits.size() > sig) {
    // round at the cut
    bool up = digits[sig] >= '5';
    digits = digits.substr(0, sig);
    if (up) {
      mpz_class d(digits);
      d += 1;
      std::string nd = d.get_str();
      if (nd.size() > digits.size()) {
        dec_exp += 1;
        nd.pop_back();
      }
      digits = nd;
    }
  }
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
  std::string sgn = sign() < 0 ? "-" : "";
  if (dec_exp < -6 || dec_exp > static_cast<long>(sig) + 6) {
    std::string frac = digits.substr(1);
    return sgn + digits.substr(0, 1) + (frac.empty() ? "" : "." + frac) + "e" +
           std::to_string(dec_exp);
  }
  if (dec_exp >= 0) {
    if (static_cast<std::size_t>(dec_exp) + 1 >= digits.size()) {
      return sgn + digits + std::string(dec_exp + 1 - digits.size(), '0');
    }
    return sgn + digits.substr(0, dec_exp + 1) + "." + digits.substr(dec_exp + 1);
  }
  return sgn + "0." + std::string(-dec_exp - 1, '0') + digits;
}

// Parse a plain decimal ("12", "-0.75", "3.5e-2") into an exact dyadic if the
// value is exactly representable (denominator a power of two); otherwise nullopt.
inline std::optional<Dyadic> parse_decimal_dyadic(const std::string& s) {
  if (s.empty()) return std::nullopt;
  std::size_t i = 0;
  bool neg = false;
  if (s[i] == '+' || s[i] == '-') {
    neg = s[i] == '-';
    ++i;
  }
  std::string int_part, frac_part;
  long exp10 = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) int_part += s[i++];
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) frac_part += s[i++];
  }
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    std::size_t pos = 0;
    try {
      exp10 = std::stol(s.substr(i), &pos);
    } catch (...) {
      return std::nullopt;
    }
    i += pos;
  }
  if (i != s.size() || (int_part.empty() && frac_part.empty())) return std::nullopt;
  mpz_class num(int_part.empty() ? "0" : int_part);
  for (char c : frac_part) {
    num *= 10;
    num += c - '0';
  }
  long f = static_cast<long>(frac_part.size()) - exp10;  // value = num / 10^f
  if (neg) num = -num;
  if (f <= 0) {
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(-f));
    return Dyadic(num * p10, 0);
  }
  mpz_class p5;
  mpz_ui_pow_ui(p5.get_mpz_t(), 5, static_cast<unsigned long>(f));
  if (!mpz_divisible_p(num.get_mpz_t(), p5.get_mpz_t())) return std::nullopt;
  return Dyadic(num / p5, -f);
}

}  // namespace rootclus
