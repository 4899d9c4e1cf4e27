// Polynomial input files: first line "degree d", then d+1 coefficient lines in
// ascending degree, each "re_num/re_den im_num/im_den" with base-10
// arbitrary-size integers. '#' starts a comment; whitespace separates tokens.
#pragma once

#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rootclus/poly.hpp"

namespace rootclus {

class PolyParseError : public std::runtime_error {
 public:
  explicit PolyParseError(const std::string& what) : std::runtime_error(what) {}
};

namespace polyfile_detail {

inline std::vector<std::string> tokenize(std::istream& in) {
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
  }
  return tokens;
}

inline bool is_integer(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

inline mpq_class parse_fraction(const std::string& tok) {
  auto slash = tok.find('/');
  if (slash == std::string::npos || slash == 0 || slash + 1 == tok.size()) {
    throw PolyParseError("malformed fraction '" + tok + "' (expected num/den)");
  }
  std::string num = tok.substr(0, slash);
  std::string den = tok.substr(slash + 1);
  if (!is_integer(num) || !is_integer(den)) {
    throw PolyParseError("malformed fraction '" + tok + "'");
  }
  mpq_class q(mpz_class(num), mpz_class(den));
  if (q.get_den() == 0) throw PolyParseError("zero denominator in '" + tok + "'");
  q.canonicalize();
  return q;
}

}  // namespace polyfile_detail

inline ExactPoly parse_poly_stream(std::istream& in) {
  auto tokens = polyfile_detail::tokenize(in);
  std::size_t pos = 0;
  auto next = [&]() -> const std::string& {
    if (pos >= tokens.size()) throw PolyParseError("unexpected end of input");
    return tokens[pos++];
  };
  if (next() != "degree") throw PolyParseError("expected 'degree d' header");
  const std::string& dtok = next();
  if (!polyfile_detail::is_integer(dtok)) throw PolyParseError("malformed degree");
  long d = 0;
  try {
    d = std::stol(dtok);
  } catch (...) {
    throw PolyParseError("degree out of range");
  }
  if (d < 1) throw PolyParseError("degree must be >= 1");
  std::vector<RationalComplex> coeffs;
  coeffs.reserve(d + 1);
  for (long i = 0; i <= d; ++i) {
    mpq_class re = polyfile_detail::parse_fraction(next());
    mpq_class im = polyfile_detail::parse_fraction(next());
    coeffs.emplace_back(std::move(re), std::move(im));
  }
  if (pos != tokens.size()) throw PolyParseError("trailing input after coefficients");
  if (coeffs.back().is_zero()) throw PolyParseError("leading coefficient must be nonzero");
  return ExactPoly(std::move(coeffs));
}

inline ExactPoly parse_poly_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PolyParseError("cannot open polynomial file: " + path);
  return parse_poly_stream(in);
}

}  // namespace rootclus
