// The seven benchmark polynomial families. Five are exact rational
// (bernoulli, mignotte, wilkinson, wilkinson_multiple, mignotte_cluster);
// spiral and nested_cluster are given by their roots and approximated on
// demand by a certified root-product expansion.
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "rootclus/poly.hpp"
#include "rootclus/trig.hpp"

namespace rootclus {

// b_0..b_n by the recurrence b_m = -(1/(m+1)) * sum_{j<m} C(m+1,j) b_j.
inline std::vector<mpq_class> bernoulli_numbers(int n) {
  if (n < 0) throw std::invalid_argument("bernoulli_numbers: n >= 0 required");
  std::vector<mpq_class> b;
  b.reserve(n + 1);
  b.emplace_back(1);
  for (int m = 1; m <= n; ++m) {
    mpq_class acc(0);
    for (int j = 0; j < m; ++j) {
      mpz_class binom;
      mpz_bin_uiui(binom.get_mpz_t(), m + 1, j);
      acc += mpq_class(binom) * b[j];
    }
    acc /= m + 1;
    b.push_back(-acc);
  }
  return b;
}

namespace families_detail {

inline std::shared_ptr<CoeffOracle> exact_oracle(std::vector<RationalComplex> coeffs) {
  return std::make_shared<ExactOracle>(ExactPoly(std::move(coeffs)));
}

inline mpq_class q(long v) { return mpq_class(v); }

// multiply exact polynomial by (z - root)
inline void mul_linear(std::vector<RationalComplex>* p, const RationalComplex& root) {
  std::vector<RationalComplex> out(p->size() + 1);
  for (std::size_t i = 0; i < p->size(); ++i) {
    out[i + 1] = out[i + 1] + (*p)[i];
    out[i] = out[i] - (*p)[i] * root;
  }
  *p = std::move(out);
}

// Monic polynomial from ball roots: balanced product of the linear factors.
inline std::vector<ComplexBall> root_product(const std::vector<ComplexBall>& roots, Prec prec) {
  std::vector<std::vector<ComplexBall>> level;
  level.reserve(roots.size());
  ComplexBall one = ComplexBall::exact(Dyadic(1), Dyadic());
  for (const auto& r : roots) level.push_back({-r, one});
  while (level.size() > 1) {
    std::vector<std::vector<ComplexBall>> next;
    next.reserve((level.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < level.size(); i += 2) {
      const auto& a = level[i];
      const auto& b = level[i + 1];
      std::vector<ComplexBall> prod(a.size() + b.size() - 1);
      for (std::size_t ia = 0; ia < a.size(); ++ia) {
        for (std::size_t ib = 0; ib < b.size(); ++ib) {
          prod[ia + ib] = ball_add(prod[ia + ib], ball_mul(a[ia], b[ib], prec), prec);
        }
      }
      next.push_back(std::move(prod));
    }
    if (level.size() & 1) next.push_back(std::move(level.back()));
    level = std::move(next);
  }
  return level.front();
}

// Oracle for a polynomial given by certified root enclosures. Coefficients are
// expanded at a guarded working precision, doubled until the requested output
// radius 2^-L is met.
class RootProductOracle : public CoeffOracle {
 public:
  using RootGen = std::vector<ComplexBall> (*)(int param, Prec prec);

  RootProductOracle(int degree, int param, RootGen gen)
      : degree_(degree), param_(param), gen_(gen) {}

  int degree() const override { return degree_; }

  BallPoly approximate(Prec L) const override {
    {
      std::lock_guard<std::mutex> lk(mu_);
      auto it = cache_.find(L);
      if (it != cache_.end()) return it->second;
    }
    Prec work = L + 2 * degree_ + 16;
    Dyadic target = Dyadic::pow2(-L);
    BallPoly result;
    while (true) {
      std::vector<ComplexBall> roots = gen_(param_, work);
      std::vector<ComplexBall> coeffs = root_product(roots, work);
      bool ok = true;
      for (const auto& c : coeffs) {
        if (c.re().rad() > target || c.im().rad() > target) {
          ok = false;
          break;
        }
      }
      if (ok) {
        result = BallPoly(std::move(coeffs));
        break;
      }
      work *= 2;
    }
    std::lock_guard<std::mutex> lk(mu_);
    auto [it, inserted] = cache_.emplace(L, result);
    return it->second;
  }

 private:
  int degree_;
  int param_;
  RootGen gen_;
  mutable std::mutex mu_;
  mutable std::map<Prec, BallPoly> cache_;
};

// roots of the spiral polynomial: (k/d) e^(4 k pi i / d), k = 1..d
inline std::vector<ComplexBall> spiral_roots(int d, Prec prec) {
  std::vector<ComplexBall> roots;
  roots.reserve(d);
  for (int k = 1; k <= d; ++k) {
    mpq_class angle(4 * static_cast<long>(k), d);
    angle.canonicalize();
    RealBall s, c;
    trig::sincos_pi(angle, prec, &s, &c);
    mpq_class mod(k, d);
    mod.canonicalize();
    RealBall scale = poly_detail::round_rational(mod, prec);
    roots.emplace_back(ball_mul(c, scale, prec), ball_mul(s, scale, prec));
  }
  return roots;
}

// roots of the nested-cluster polynomial of depth D: all sums
// sum_{j=0}^{D-1} w^(e_j) / 16^j with e_j in {1,2,3}, w = e^(2 pi i / 3)
inline std::vector<ComplexBall> nested_cluster_roots(int D, Prec prec) {
  RealBall half(Dyadic(mpz_class(-1), -1));  // -1/2
  RealBall s3h = ball_scale(trig::sqrt3_ball(prec), Dyadic(mpz_class(1), -1), prec);
  ComplexBall w(half, s3h);
  ComplexBall w2(half, -s3h);
  ComplexBall one = ComplexBall::exact(Dyadic(1), Dyadic());
  ComplexBall units[3] = {w, w2, one};
  std::vector<ComplexBall> roots{ComplexBall()};
  for (int j = 0; j < D; ++j) {
    Dyadic scale = Dyadic::pow2(-4 * j);
    std::vector<ComplexBall> next;
    next.reserve(roots.size() * 3);
    for (const auto& r : roots) {
      for (const auto& u : units) {
        next.push_back(ball_add(r, ball_scale(u, scale, prec), prec));
      }
    }
    roots = std::move(next);
  }
  return roots;
}

}  // namespace families_detail

inline std::shared_ptr<CoeffOracle> make_bernoulli(int d) {
  if (d < 1) throw std::invalid_argument("bernoulli: d >= 1 required");
  auto b = bernoulli_numbers(d);
  std::vector<RationalComplex> coeffs(d + 1);
  for (int k = 0; k <= d; ++k) {
    mpz_class binom;
    mpz_bin_uiui(binom.get_mpz_t(), d, k);
    coeffs[k] = RationalComplex(mpq_class(binom) * b[d - k], mpq_class(0));
  }
  return families_detail::exact_oracle(std::move(coeffs));
}

// Mig_d(z; a) = z^d - 2 (2^a z - 1)^2
inline std::shared_ptr<CoeffOracle> make_mignotte(int d, int a) {
  if (d < 3 || a < 1) throw std::invalid_argument("mignotte: d >= 3, a >= 1 required");
  std::vector<RationalComplex> coeffs(d + 1);
  mpz_class p2a;
  mpz_ui_pow_ui(p2a.get_mpz_t(), 2, a);
  coeffs[0].re = -2;
  coeffs[1].re = mpq_class(4 * p2a);
  coeffs[2].re = mpq_class(-2 * p2a * p2a);
  coeffs[d].re += 1;
  return families_detail::exact_oracle(std::move(coeffs));
}

// Wil_d(z) = prod_{k=1}^d (z - k)
inline std::shared_ptr<CoeffOracle> make_wilkinson(int d) {
  if (d < 1) throw std::invalid_argument("wilkinson: d >= 1 required");
  std::vector<RationalComplex> p{RationalComplex(mpq_class(1), mpq_class(0))};
  for (int k = 1; k <= d; ++k) {
    families_detail::mul_linear(&p, RationalComplex(mpq_class(k), mpq_class(0)));
  }
  return families_detail::exact_oracle(std::move(p));
}

// WilM_(D)(z) = prod_{k=1}^D (z - k)^k, degree D(D+1)/2
inline std::shared_ptr<CoeffOracle> make_wilkinson_multiple(int D) {
  if (D < 1) throw std::invalid_argument("wilkinson_multiple: D >= 1 required");
  std::vector<RationalComplex> p{RationalComplex(mpq_class(1), mpq_class(0))};
  for (int k = 1; k <= D; ++k) {
    for (int j = 0; j < k; ++j) {
      families_detail::mul_linear(&p, RationalComplex(mpq_class(k), mpq_class(0)));
    }
  }
  return families_detail::exact_oracle(std::move(p));
}

// MigC_d(z; a, k) = z^d - 2 (2^a z - 1)^k (2^a z + 1)^k = z^d - 2 (2^2a z^2 - 1)^k
inline std::shared_ptr<CoeffOracle> make_mignotte_cluster(int d, int a, int k) {
  if (d < 2 * k || k < 1 || a < 1) {
    throw std::invalid_argument("mignotte_cluster: d >= 2k, k >= 1, a >= 1 required");
  }
  std::vector<RationalComplex> coeffs(d + 1);
  mpz_class p22a;
  mpz_ui_pow_ui(p22a.get_mpz_t(), 2, 2 * static_cast<unsigned long>(a));
  mpz_class pow(1);  // (2^2a)^j
  for (int j = 0; j <= k; ++j) {
    mpz_class binom;
    mpz_bin_uiui(binom.get_mpz_t(), k, j);
    mpz_class term = 2 * binom * pow;
    if ((k - j) % 2 == 0) term = -term;
    coeffs[2 * j].re += mpq_class(term);
    pow *= p22a;
  }
  coeffs[d].re += 1;
  return families_detail::exact_oracle(std::move(coeffs));
}

inline std::shared_ptr<CoeffOracle> make_spiral(int d) {
  if (d < 1) throw std::invalid_argument("spiral: d >= 1 required");
  return std::make_shared<families_detail::RootProductOracle>(d, d,
                                                              &families_detail::spiral_roots);
}

inline std::shared_ptr<CoeffOracle> make_nested_cluster(int D) {
  if (D < 1) throw std::invalid_argument("nested_cluster: D >= 1 required");
  int d = 1;
  for (int i = 0; i < D; ++i) d *= 3;
  return std::make_shared<families_detail::RootProductOracle>(
      d, D, &families_detail::nested_cluster_roots);
}

// "name:params" dispatch, e.g. "bernoulli:64", "mignotte:64,14",
// "mignotte_cluster:64,14,3".
inline std::shared_ptr<CoeffOracle> make_family(const std::string& name,
                                                const std::vector<int>& params) {
  auto want = [&](std::size_t n) {
    if (params.size() != n) {
      throw std::invalid_argument("family " + name + ": expected " + std::to_string(n) +
                                  " parameter(s)");
    }
  };
  if (name == "bernoulli") {
    want(1);
    return make_bernoulli(params[0]);
  }
  if (name == "mignotte") {
    want(2);
    return make_mignotte(params[0], params[1]);
  }
  if (name == "wilkinson") {
    want(1);
    return make_wilkinson(params[0]);
  }
  if (name == "spiral") {
    want(1);
    return make_spiral(params[0]);
  }
  if (name == "wilkinson_multiple") {
    want(1);
    return make_wilkinson_multiple(params[0]);
  }
  if (name == "mignotte_cluster") {
    want(3);
    return make_mignotte_cluster(params[0], params[1], params[2]);
  }
  if (name == "nested_cluster") {
    want(1);
    return make_nested_cluster(params[0]);
  }
  throw std::invalid_argument("unknown family: " + name);
}

}  // namespace rootclus
