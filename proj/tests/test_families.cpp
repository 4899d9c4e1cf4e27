#include "doctest.h"
#include "exact_poly_util.hpp"
#include "rootclus/families.hpp"

using namespace rootclus;

TEST_CASE("bernoulli numbers from the recurrence") {
  auto b = bernoulli_numbers(10);
  CHECK(b[0] == 1);
  CHECK(b[1] == mpq_class(-1, 2));
  CHECK(b[2] == mpq_class(1, 6));
  CHECK(b[3] == 0);
  CHECK(b[4] == mpq_class(-1, 30));
  CHECK(b[6] == mpq_class(1, 42));
  CHECK(b[8] == mpq_class(-1, 30));
  CHECK(b[10] == mpq_class(5, 66));
  CHECK(bernoulli_numbers(0).size() == 1);
}

TEST_CASE("bernoulli family: Ber_2 = 1/6 - z + z^2") {
  auto f = make_bernoulli(2);
  CHECK(f->degree() == 2);
  BallPoly p = f->approximate(53);
  CHECK(p[0].contains(mpq_class(1, 6), 0));
  CHECK(p[1].contains(mpq_class(-1), 0));
  CHECK(p[2].contains(mpq_class(1), 0));
  CHECK(p[0].re().rad() <= Dyadic::pow2(-53));
}

TEST_CASE("wilkinson d=2 is (z-1)(z-2)") {
  auto f = make_wilkinson(2);
  BallPoly p = f->approximate(53);
  CHECK(p[0].contains(2, 0));
  CHECK(p[1].contains(-3, 0));
  CHECK(p[2].contains(1, 0));
}

TEST_CASE("mignotte (4,2) = z^4 - 32 z^2 + 16 z - 2") {
  auto f = make_mignotte(4, 2);
  BallPoly p = f->approximate(53);
  CHECK(p[0].contains(-2, 0));
  CHECK(p[1].contains(16, 0));
  CHECK(p[2].contains(-32, 0));
  CHECK(p[3].contains(0, 0));
  CHECK(p[4].contains(1, 0));
}

TEST_CASE("wilkinson_multiple D=2 = (z-1)(z-2)^2 = z^3 - 5z^2 + 8z - 4") {
  auto f = make_wilkinson_multiple(2);
  CHECK(f->degree() == 3);
  BallPoly p = f->approximate(53);
  CHECK(p[0].contains(-4, 0));
  CHECK(p[1].contains(8, 0));
  CHECK(p[2].contains(-5, 0));
  CHECK(p[3].contains(1, 0));
}

TEST_CASE("mignotte_cluster (6,2,1) = z^6 - 32 z^2 + 2") {
  auto f = make_mignotte_cluster(6, 2, 1);
  BallPoly p = f->approximate(53);
  CHECK(p[0].contains(2, 0));
  CHECK(p[2].contains(-32, 0));
  CHECK(p[6].contains(1, 0));
  for (int i : {1, 3, 4, 5}) CHECK(p[i].contains(0, 0));
}

TEST_CASE("family degrees") {
  for (int D : {1, 2, 3, 4, 5}) {
    CHECK(make_wilkinson_multiple(D)->degree() == D * (D + 1) / 2);
  }
  int d = 1;
  for (int D : {1, 2, 3}) {
    d *= 3;
    CHECK(make_nested_cluster(D)->degree() == d);
  }
}

TEST_CASE("nested_cluster D=1 is z^3 - 1") {
  auto f = make_nested_cluster(1);
  BallPoly p = f->approximate(64);
  CHECK(p[0].contains(-1, 0));
  CHECK(p[1].contains(0, 0));
  CHECK(p[2].contains(0, 0));
  CHECK(p[3].contains(1, 0));
  for (int i = 0; i <= 3; ++i) {
    CHECK(p[i].re().rad() <= Dyadic::pow2(-64));
    CHECK(p[i].im().rad() <= Dyadic::pow2(-64));
  }
}

TEST_CASE("spiral d=1 is z - 1") {
  // single root (1/1) e^{4 pi i} = 1
  auto f = make_spiral(1);
  BallPoly p = f->approximate(53);
  CHECK(p[0].contains(-1, 0));
  CHECK(p[1].contains(1, 0));
  CHECK(p[0].re().rad() <= Dyadic::pow2(-53));
}

TEST_CASE("spiral d=4 roots lie on the polynomial") {
  // e^{4 k pi i / 4} = e^{k pi i} = (-1)^k, so roots are -1/4, 2/4, -3/4, 1
  auto f = make_spiral(4);
  BallPoly p = f->approximate(80);
  for (auto root : {mpq_class(-1, 4), mpq_class(1, 2), mpq_class(-3, 4), mpq_class(1)}) {
    ComplexBall z(poly_detail::round_rational(root, 80), RealBall(Dyadic(0)));
    CHECK(evaluate(p, z, 80).contains_zero());
  }
}

TEST_CASE("oracle determinism and consistency for root-product families") {
  auto f = make_nested_cluster(2);
  BallPoly a = f->approximate(53);
  BallPoly b = f->approximate(53);
  for (int i = 0; i <= f->degree(); ++i) {
    CHECK(a[i].re().mid() == b[i].re().mid());
    CHECK(a[i].re().rad() == b[i].re().rad());
  }
  BallPoly fine = f->approximate(106);
  for (int i = 0; i <= f->degree(); ++i) {
    // coarse and fine enclose a common value: |mid difference| <= rad sum
    Dyadic dm = (a[i].re().mid() - fine[i].re().mid()).abs();
    CHECK(dm <= a[i].re().rad() + fine[i].re().rad());
  }
}

TEST_CASE("certified trig: pi and sin/cos at rational multiples") {
  RealBall pi = trig::pi_ball(128);
  CHECK(pi.rad() <= Dyadic::pow2(-120));
  mpq_class lo("314159265358979323/100000000000000000");
  mpq_class hi("314159265358979324/100000000000000000");
  CHECK(pi.upper().to_mpq() > lo);
  CHECK(pi.lower().to_mpq() < hi);

  RealBall s, c;
  trig::sincos_pi(mpq_class(1, 2), 96, &s, &c);  // sin(pi/2)=1, cos(pi/2)=0
  CHECK(s.contains(mpq_class(1)));
  CHECK(c.contains(mpq_class(0)));
  trig::sincos_pi(mpq_class(1, 6), 96, &s, &c);  // sin(pi/6)=1/2
  CHECK(s.contains(mpq_class(1, 2)));
  trig::sincos_pi(mpq_class(1), 96, &s, &c);  // sin(pi)=0, cos(pi)=-1
  CHECK(s.contains(mpq_class(0)));
  CHECK(c.contains(mpq_class(-1)));
  trig::sincos_pi(mpq_class(7, 4), 96, &s, &c);  // 7pi/4: sin<0, cos>0
  CHECK(s.upper().sign() < 0);
  CHECK(c.lower().sign() > 0);
  // sin^2 + cos^2 = 1 for a scattering of angles
  for (long num = 0; num <= 24; ++num) {
    mpq_class q(num, 12);
    q.canonicalize();
    trig::sincos_pi(q, 80, &s, &c);
    RealBall one = ball_add(ball_sqr(s, 80), ball_sqr(c, 80), 80);
    CHECK(one.contains(mpq_class(1)));
  }
}

TEST_CASE("make_family dispatch and parameter validation") {
  CHECK(make_family("bernoulli", {8})->degree() == 8);
  CHECK(make_family("mignotte", {5, 3})->degree() == 5);
  CHECK(make_family("mignotte_cluster", {8, 2, 2})->degree() == 8);
  CHECK(make_family("nested_cluster", {2})->degree() == 9);
  CHECK_THROWS_AS(make_family("bogus", {1}), std::invalid_argument);
  CHECK_THROWS_AS(make_family("bernoulli", {0}), std::invalid_argument);
  CHECK_THROWS_AS(make_family("bernoulli", {1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(make_family("mignotte", {2, 1}), std::invalid_argument);
  CHECK_THROWS_AS(make_family("mignotte_cluster", {5, 2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(make_family("wilkinson", {-1}), std::invalid_argument);
}
