#include "stardeform/quadrature.hpp"

#include <array>

#include <boost/math/quadrature/gauss.hpp>

namespace sd::quad {

namespace {

constexpr std::size_t kPoints = 30;

struct Rule {
  std::array<double, kPoints> x{};
  std::array<double, kPoints> w{};
};

// Boost stores the non-negative half of the symmetric rule.
Rule build() {
  using G = boost::math::quadrature::gauss<double, kPoints>;
  const auto& a = G::abscissa();
  const auto& w = G::weights();
  Rule r;
  std::size_t k = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    r.x[k] = -a[i];
    r.w[k++] = w[i];
    r.x[k] = a[i];
    r.w[k++] = w[i];
  }
  return r;
}

const Rule& rule() {
  static const Rule r = build();
  return r;
}

}  // namespace

std::span<const double> gl_nodes() { return rule().x; }
std::span<const double> gl_weights() { return rule().w; }

}  // namespace sd::quad
