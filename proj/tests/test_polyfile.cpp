#include "doctest.h"
#include "rootclus/polyfile.hpp"

#include <sstream>

using namespace rootclus;

TEST_CASE("well-formed polynomial file") {
  std::istringstream in(
      "# a quadratic with a complex coefficient\n"
      "degree 2\n"
      "1/1 0/1\n"
      "-3/2 1/4   # middle coefficient\n"
      "2/1 0/1\n");
  ExactPoly p = parse_poly_stream(in);
  CHECK(p.degree() == 2);
  CHECK(p[0].re == 1);
  CHECK(p[1].re == mpq_class(-3, 2));
  CHECK(p[1].im == mpq_class(1, 4));
  CHECK(p[2].re == 2);
}

TEST_CASE("whitespace and token layout are free-form") {
  std::istringstream in("degree   1\n\n  0/1\t0/1   1/1 0/1\n");
  ExactPoly p = parse_poly_stream(in);
  CHECK(p.degree() == 1);
  CHECK(p[1].re == 1);
}

TEST_CASE("fractions reduce and handle signs") {
  std::istringstream in("degree 1\n-6/-4 0/5\n+2/+1 0/1\n");
  ExactPoly p = parse_poly_stream(in);
  CHECK(p[0].re == mpq_class(3, 2));
  CHECK(p[0].im == 0);
  CHECK(p[1].re == 2);
}

TEST_CASE("malformed inputs are rejected") {
  auto fails = [](const char* text) {
    std::istringstream in(text);
    CHECK_THROWS_AS(parse_poly_stream(in), PolyParseError);
  };
  fails("");
  fails("degree\n");
  fails("degree 0\n1/1 0/1\n");
  fails("degree x\n");
  fails("degree 1\n1/1 0/1\n");                    // missing a coefficient
  fails("degree 1\n1 0/1\n2/1 0/1\n");             // integer without slash
  fails("degree 1\n1/0 0/1\n2/1 0/1\n");           // zero denominator
  fails("degree 1\n1/1 0/1\n0/1 0/1\n");           // zero leading coefficient
  fails("degree 1\n1/1 0/1\n1/1 0/1\n3/1 0/1\n");  // trailing tokens
  fails("degree 1\na/b 0/1\n1/1 0/1\n");
}

TEST_CASE("file round trip through the oracle") {
  std::istringstream in("degree 2\n-1/1 0/1\n0/1 0/1\n1/1 0/1\n");
  ExactPoly p = parse_poly_stream(in);
  ExactOracle f(std::move(p));
  BallPoly bp = f.approximate(53);
  CHECK(bp[0].contains(-1, 0));
  CHECK(bp[2].contains(1, 0));
}
