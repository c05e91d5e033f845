#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "stardeform/poly.hpp"
#include "stardeform/scalar.hpp"

namespace sd::cli {

// Bad flags or values. Maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { Text, Csv, Json };

struct Grid {
  double lo = -1.0;
  double hi = 1.0;
  int count = 21;

  std::vector<double> points() const;
  std::vector<Complex> complex_points() const;
};

struct RunConfig {
  Complex tau{1.0, 0.0};
  Complex nu{0.0, 0.0};
  double tol = 1e-10;
  int trunc = 6;
  Grid grid;
  Format format = Format::Text;
  std::uint64_t seed = 20240101;

  // Throws UsageError unless tol > 0, count >= 2 and trunc >= 0.
  void validate() const;
};

// "re,im" or a single real number.
Complex parse_scalar_pair(const std::string& s);
// "lo,hi,count"
Grid parse_grid(const std::string& s);
Format parse_format(const std::string& s);

// Minimal polynomial grammar: terms c*w^k joined by + or -. The coefficient
// is a real number, an imaginary number such as 2i, or a parenthesised
// complex such as (1+2i); "*" and "^k" are optional, so "3w", "w^2", "-i*w"
// and "0.5" all parse.
Poly parse_poly(const std::string& s);

}  // namespace sd::cli
