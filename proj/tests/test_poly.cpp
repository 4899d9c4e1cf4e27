#include "doctest.h"
#include "exact_poly_util.hpp"
#include "rootclus/poly.hpp"

#include <random>

using namespace rootclus;
using testutil::QPoly;

namespace {

ExactOracle oracle_zz_plus_1() {
  // z^2 + 1
  QPoly p{RationalComplex(mpq_class(1), 0), RationalComplex(mpq_class(0), 0),
          RationalComplex(mpq_class(1), 0)};
  return ExactOracle(ExactPoly(p));
}

bool poly_contains(const BallPoly& bp, const QPoly& exact) {
  if (static_cast<std::size_t>(bp.degree()) + 1 != exact.size()) return false;
  for (std::size_t i = 0; i < exact.size(); ++i) {
    if (!bp[i].contains(exact[i].re, exact[i].im)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("get_approximation: exact small integers come back exact") {
  ExactOracle f = oracle_zz_plus_1();
  BallPoly p = get_approximation(f, 53);
  CHECK(p.degree() == 2);
  CHECK(p[0].re().mid() == Dyadic(1));
  CHECK(p[0].re().rad().is_zero());
  CHECK(p[1].re().mid().is_zero());
  CHECK(p[2].re().rad().is_zero());
}

TEST_CASE("get_approximation radius bound and determinism") {
  // 1/6 - z + z^2 (the degree-2 Bernoulli polynomial)
  QPoly p{RationalComplex(mpq_class(1, 6), 0), RationalComplex(mpq_class(-1), 0),
          RationalComplex(mpq_class(1), 0)};
  ExactOracle f{ExactPoly(p)};
  for (Prec L : {53, 106, 212}) {
    BallPoly a = get_approximation(f, L);
    for (int i = 0; i <= 2; ++i) {
      CHECK(a[i].re().rad() <= Dyadic::pow2(-L));
      CHECK(a[i].contains(p[i].re, p[i].im));
    }
    BallPoly b = get_approximation(f, L);
    for (int i = 0; i <= 2; ++i) {
      CHECK(a[i].re().mid() == b[i].re().mid());
      CHECK(a[i].re().rad() == b[i].re().rad());
    }
  }
}

TEST_CASE("oracle consistency across precisions") {
  QPoly p{RationalComplex(mpq_class(22, 7), mpq_class(-3, 11)),
          RationalComplex(mpq_class(5, 9), mpq_class(1, 3))};
  ExactOracle f{ExactPoly(p)};
  BallPoly coarse = get_approximation(f, 40);
  BallPoly fine = get_approximation(f, 80);
  for (int i = 0; i <= 1; ++i) {
    CHECK(coarse[i].contains(p[i].re, p[i].im));
    CHECK(fine[i].contains(p[i].re, p[i].im));
    CHECK(fine[i].re().rad() <= coarse[i].re().rad());
  }
}

TEST_CASE("taylor_shift: spec examples") {
  Prec L = 53;
  // p = z, D(1,2) -> 1 + 2z
  {
    QPoly p{RationalComplex(mpq_class(0), 0), RationalComplex(mpq_class(1), 0)};
    BallPoly bp = ExactOracle(ExactPoly(p)).approximate(L);
    Disc d{Dyadic(1), Dyadic(0), Dyadic(2)};
    BallPoly s = taylor_shift(bp, d, L);
    QPoly expect{RationalComplex(mpq_class(1), 0), RationalComplex(mpq_class(2), 0)};
    CHECK(poly_contains(s, expect));
  }
  // p = z^2, D(i,1) -> -1 + 2i z + z^2
  {
    QPoly p{RationalComplex(mpq_class(0), 0), RationalComplex(mpq_class(0), 0),
            RationalComplex(mpq_class(1), 0)};
    BallPoly bp = ExactOracle(ExactPoly(p)).approximate(L);
    Disc d{Dyadic(0), Dyadic(1), Dyadic(1)};
    BallPoly s = taylor_shift(bp, d, L);
    QPoly expect{RationalComplex(mpq_class(-1), 0), RationalComplex(0, mpq_class(2)),
                 RationalComplex(mpq_class(1), 0)};
    CHECK(poly_contains(s, expect));
  }
  // p = z^2 - 1, D(0,2) -> -1 + 4 z^2
  {
    QPoly p{RationalComplex(mpq_class(-1), 0), RationalComplex(mpq_class(0), 0),
            RationalComplex(mpq_class(1), 0)};
    BallPoly bp = ExactOracle(ExactPoly(p)).approximate(L);
    Disc d{Dyadic(0), Dyadic(0), Dyadic(2)};
    BallPoly s = taylor_shift(bp, d, L);
    QPoly expect{RationalComplex(mpq_class(-1), 0), RationalComplex(mpq_class(0), 0),
                 RationalComplex(mpq_class(4), 0)};
    CHECK(poly_contains(s, expect));
  }
}

TEST_CASE("taylor_shift agrees with the exact oracle on random inputs") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 60; ++t) {
    int d = 1 + static_cast<int>(rng() % 7);
    QPoly p;
    for (int i = 0; i <= d; ++i) p.push_back(testutil::qcrand(rng));
    if (p.back().is_zero()) p.back() = RationalComplex(mpq_class(1), 0);
    // dyadic disc
    long ce = static_cast<long>(rng() % 5) - 2;
    Dyadic cx(mpz_class(static_cast<long>(rng() % 9) - 4), ce);
    Dyadic cy(mpz_class(static_cast<long>(rng() % 9) - 4), ce);
    Dyadic r(mpz_class(1 + static_cast<long>(rng() % 7)), -2);
    Disc disc{cx, cy, r};
    QPoly expect = testutil::qshift(p, RationalComplex(cx.to_mpq(), cy.to_mpq()), r.to_mpq());
    BallPoly got = taylor_shift(ExactOracle(ExactPoly(p)).approximate(96), disc, 96);
    CHECK(poly_contains(got, expect));
  }
}

TEST_CASE("taylor_shift maps a known root into the unit disc") {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 40; ++t) {
    // roots with small rational coordinates; disc chosen to contain root0
    std::vector<RationalComplex> roots;
    int d = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < d; ++i) roots.push_back(testutil::qcrand(rng, 4, 4));
    QPoly p = testutil::qfrom_roots(roots);
    Dyadic cx(mpz_class(static_cast<long>(rng() % 9) - 4), -1);
    Dyadic cy(mpz_class(static_cast<long>(rng() % 9) - 4), -1);
    Dyadic r(mpz_class(8));
    Disc disc{cx, cy, r};
    BallPoly s = taylor_shift(ExactOracle(ExactPoly(p)).approximate(128), disc, 128);
    RationalComplex w((roots[0].re - cx.to_mpq()) / r.to_mpq(),
                      (roots[0].im - cy.to_mpq()) / r.to_mpq());
    RealBall wr = poly_detail::round_rational(w.re, 128);
    RealBall wi = poly_detail::round_rational(w.im, 128);
    ComplexBall val = evaluate(s, ComplexBall(wr, wi), 128);
    CHECK(val.contains_zero());
  }
}

TEST_CASE("graeffe_step: spec examples") {
  Prec L = 53;
  // z - 2 -> (4, -1)
  {
    QPoly p{RationalComplex(mpq_class(-2), 0), RationalComplex(mpq_class(1), 0)};
    BallPoly g = graeffe_step(ExactOracle(ExactPoly(p)).approximate(L), L);
    QPoly expect{RationalComplex(mpq_class(4), 0), RationalComplex(mpq_class(-1), 0)};
    CHECK(poly_contains(g, expect));
  }
  // z^2 + 1 -> (1, 2, 1)
  {
    QPoly p{RationalComplex(mpq_class(1), 0), RationalComplex(mpq_class(0), 0),
            RationalComplex(mpq_class(1), 0)};
    BallPoly g = graeffe_step(ExactOracle(ExactPoly(p)).approximate(L), L);
    QPoly expect{RationalComplex(mpq_class(1), 0), RationalComplex(mpq_class(2), 0),
                 RationalComplex(mpq_class(1), 0)};
    CHECK(poly_contains(g, expect));
  }
  // z -> (0, -1)
  {
    QPoly p{RationalComplex(mpq_class(0), 0), RationalComplex(mpq_class(1), 0)};
    BallPoly g = graeffe_step(ExactOracle(ExactPoly(p)).approximate(L), L);
    QPoly expect{RationalComplex(mpq_class(0), 0), RationalComplex(mpq_class(-1), 0)};
    CHECK(poly_contains(g, expect));
  }
}

TEST_CASE("graeffe recurrence equals the product form exactly, degrees <= 16") {
  std::mt19937_64 rng(404);
  for (int t = 0; t < 80; ++t) {
    int d = 1 + static_cast<int>(rng() % 16);
    QPoly p;
    for (int i = 0; i <= d; ++i) p.push_back(testutil::qcrand(rng, 5, 3));
    if (p.back().is_zero()) p.back() = RationalComplex(mpq_class(2), 0);
    QPoly prod = testutil::qgraeffe_product(p);
    // the ball recurrence must enclose the exact product-form coefficients
    BallPoly g = graeffe_step(ExactOracle(ExactPoly(p)).approximate(256), 256);
    REQUIRE(poly_contains(g, prod));
  }
}

TEST_CASE("root squaring identity g(z^2) = p(z) p(-z) via evaluation") {
  std::mt19937_64 rng(505);
  for (int t = 0; t < 40; ++t) {
    int d = 1 + static_cast<int>(rng() % 6);
    QPoly p;
    for (int i = 0; i <= d; ++i) p.push_back(testutil::qcrand(rng, 4, 3));
    if (p.back().is_zero()) p.back() = RationalComplex(mpq_class(1), 0);
    RationalComplex z = testutil::qcrand(rng, 3, 3);
    RationalComplex expect = qeval(p, z) * qeval(testutil::qnegate_arg(p), z);
    RationalComplex z2 = z * z;
    BallPoly g = graeffe_step(ExactOracle(ExactPoly(p)).approximate(192), 192);
    ComplexBall zb(poly_detail::round_rational(z2.re, 192),
                   poly_detail::round_rational(z2.im, 192));
    ComplexBall val = evaluate(g, zb, 192);
    CHECK(val.contains(expect.re, expect.im));
  }
}

TEST_CASE("graeffe_head prefixes match the full iterates") {
  std::mt19937_64 rng(606);
  for (int t = 0; t < 25; ++t) {
    int d = 17 + static_cast<int>(rng() % 48);  // needs 2^steps+1 <= d+1
    QPoly p;
    for (int i = 0; i <= d; ++i) p.push_back(testutil::qcrand(rng, 3, 2));
    if (p.back().is_zero()) p.back() = RationalComplex(mpq_class(1), 0);
    BallPoly base = ExactOracle(ExactPoly(p)).approximate(128);
    int steps = 4;  // prefixes 9, 5, 3, 2
    auto heads = graeffe_head(base, steps, 128);
    REQUIRE(heads.size() == static_cast<std::size_t>(steps));
    // exact iterates via the product form
    QPoly it = p;
    for (int s = 1; s <= steps; ++s) {
      it = testutil::qgraeffe_product(it);
      const auto& prefix = heads[s - 1];
      REQUIRE(prefix.size() == (std::size_t{1} << (steps - s)) + 1);
      for (std::size_t i = 0; i < prefix.size(); ++i) {
        REQUIRE(prefix[i].contains(it[i].re, it[i].im));
      }
    }
  }
}

TEST_CASE("graeffe_head degenerate prefixes") {
  // one head step from (-2, 1): prefix of length 2 is (4, -1)
  QPoly p{RationalComplex(mpq_class(-2), 0), RationalComplex(mpq_class(1), 0)};
  BallPoly bp = ExactOracle(ExactPoly(p)).approximate(53);
  auto heads = graeffe_head(bp, 1, 53);
  REQUIRE(heads.size() == 1);
  REQUIRE(heads[0].size() == 2);
  CHECK(heads[0][0].contains(mpq_class(4), mpq_class(0)));
  CHECK(heads[0][1].contains(mpq_class(-1), mpq_class(0)));
}

TEST_CASE("evaluate: spec examples") {
  Prec L = 53;
  {
    // z^2 + 1 at i
    QPoly p{RationalComplex(mpq_class(1), 0), RationalComplex(mpq_class(0), 0),
            RationalComplex(mpq_class(1), 0)};
    ComplexBall z = ComplexBall::exact(Dyadic(0), Dyadic(1));
    ComplexBall v = evaluate(ExactOracle(ExactPoly(p)).approximate(L), z, L);
    CHECK(v.contains_zero());
  }
  {
    // z - 2 at 2: exactly zero
    QPoly p{RationalComplex(mpq_class(-2), 0), RationalComplex(mpq_class(1), 0)};
    ComplexBall z = ComplexBall::exact(Dyadic(2), Dyadic(0));
    ComplexBall v = evaluate(ExactOracle(ExactPoly(p)).approximate(L), z, L);
    CHECK(v.re().mid().is_zero());
    CHECK(v.re().rad().is_zero());
    CHECK(v.im().mid().is_zero());
  }
  {
    // 4z^2 - 1 at 1/2
    QPoly p{RationalComplex(mpq_class(-1), 0), RationalComplex(mpq_class(0), 0),
            RationalComplex(mpq_class(4), 0)};
    ComplexBall z = ComplexBall::exact(Dyadic(mpz_class(1), -1), Dyadic(0));
    ComplexBall v = evaluate(ExactOracle(ExactPoly(p)).approximate(L), z, L);
    CHECK(v.contains_zero());
  }
}
