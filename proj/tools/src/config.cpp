#include "stardeform_cli/config.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <sstream>

namespace sd::cli {

std::vector<double> Grid::points() const {
  std::vector<double> g;
  g.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) g.push_back(lo + (hi - lo) * i / (count - 1));
  return g;
}

std::vector<Complex> Grid::complex_points() const {
  std::vector<Complex> g;
  for (double x : points()) g.emplace_back(x, 0.0);
  return g;
}

void RunConfig::validate() const {
  if (!(tol > 0)) throw UsageError("--tol must be positive");
  if (grid.count < 2) throw UsageError("grid count must be at least 2");
  if (trunc < 0) throw UsageError("--trunc must be non-negative");
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double to_double(const std::string& s, const std::string& what) {
  const char* begin = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (s.empty() || end != begin + s.size()) throw UsageError("cannot read " + what + " from '" + s + "'");
  return v;
}

}  // namespace

Complex parse_scalar_pair(const std::string& s) {
  const auto parts = split(s, ',');
  if (parts.size() == 1) return {to_double(parts[0], "a number"), 0.0};
  if (parts.size() == 2) return {to_double(parts[0], "a real part"), to_double(parts[1], "an imaginary part")};
  throw UsageError("expected re,im but got '" + s + "'");
}

Grid parse_grid(const std::string& s) {
  const auto parts = split(s, ',');
  if (parts.size() != 3) throw UsageError("expected lo,hi,count but got '" + s + "'");
  Grid g;
  g.lo = to_double(parts[0], "grid start");
  g.hi = to_double(parts[1], "grid end");
  int count = 0;
  auto [ptr, ec] = std::from_chars(parts[2].data(), parts[2].data() + parts[2].size(), count);
  if (ec != std::errc() || ptr != parts[2].data() + parts[2].size()) throw UsageError("bad grid count '" + parts[2] + "'");
  g.count = count;
  return g;
}

Format parse_format(const std::string& s) {
  if (s == "text") return Format::Text;
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  throw UsageError("--format must be text, csv or json");
}

// ------------------------------------------------------------ polynomial parser

namespace {

class PolyParser {
 public:
  explicit PolyParser(const std::string& s) {
    for (char c : s)
      if (!std::isspace(static_cast<unsigned char>(c))) src_ += c;
  }

  Poly parse() {
    if (src_.empty()) throw UsageError("empty polynomial");
    Poly acc;
    bool first = true;
    while (pos_ < src_.size()) {
      double sign = 1.0;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1.0 : 1.0;
        ++pos_;
      } else if (!first) {
        fail("expected + or -");
      }
      first = false;
      acc += term() * Complex(sign);
    }
    return acc;
  }

 private:
  char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }

  [[noreturn]] void fail(const std::string& why) const {
    throw UsageError("polynomial '" + src_ + "': " + why + " at position " + std::to_string(pos_));
  }

  double number() {
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.') ++pos_;
    if ((peek() == 'e' || peek() == 'E') && pos_ > start) {
      ++pos_;
      if (peek() == '+' || peek() == '-') ++pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    }
    if (pos_ == start) fail("expected a number");
    return to_double(src_.substr(start, pos_ - start), "a coefficient");
  }

  // number [i] | i
  Complex simple_coeff() {
    if (peek() == 'i') {
      ++pos_;
      return {0.0, 1.0};
    }
    const double v = number();
    if (peek() == 'i') {
      ++pos_;
      return {0.0, v};
    }
    return {v, 0.0};
  }

  Complex paren_coeff() {
    ++pos_;  // '('
    Complex c = 0.0;
    bool any = false;
    while (peek() != ')') {
      if (peek() == '\0') fail("unclosed parenthesis");
      double sign = 1.0;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1.0 : 1.0;
        ++pos_;
      } else if (any) {
        fail("expected + or - inside parentheses");
      }
      c += sign * simple_coeff();
      any = true;
    }
    ++pos_;
    if (!any) fail("empty parentheses");
    return c;
  }

  Poly term() {
    Complex c = 1.0;
    bool has_coeff = false;
    if (peek() == '(') {
      c = paren_coeff();
      has_coeff = true;
    } else if (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.' || peek() == 'i') {
      c = simple_coeff();
      has_coeff = true;
    }
    if (peek() == '*') {
      if (!has_coeff) fail("dangling *");
      ++pos_;
      if (peek() != 'w') fail("expected w after *");
    }
    unsigned k = 0;
    if (peek() == 'w') {
      ++pos_;
      k = 1;
      if (peek() == '^') {
        ++pos_;
        const std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (pos_ == start) fail("expected an exponent");
        k = static_cast<unsigned>(std::stoul(src_.substr(start, pos_ - start)));
        if (k > 64) fail("exponent above 64");
      }
    } else if (!has_coeff) {
      fail("expected a term");
    }
    return Poly::monomial(c, k);
  }

  std::string src_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(const std::string& s) { return PolyParser(s).parse(); }

}  // namespace sd::cli
