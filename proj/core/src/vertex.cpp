#include "stardeform/vertex.hpp"

#include <cmath>
#include <sstream>

namespace sd {

// ---------------------------------------------------------------- CoeffRing

void CoeffRing::add(const Mono& m, const mpq_class& c) {
  if (c == 0) return;
  auto [it, fresh] = t_.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) t_.erase(it);
  }
}

CoeffRing CoeffRing::constant(const mpq_class& c) {
  CoeffRing r;
  r.add({0, 0, 0, 0}, c);
  return r;
}

CoeffRing CoeffRing::laurent(int j, unsigned cap) {
  CoeffRing r;
  if (j % 2 == 0) return r;
  const int k = (j + 1) / 2;
  for (int l = std::max(0, -k); l <= static_cast<int>(cap); ++l) {
    mpq_class c = mpq_class(1) / (factorial_q(static_cast<unsigned>(l + k)) * factorial_q(static_cast<unsigned>(l)));
    if (l % 2 == 1) c = -c;
    r.add({1, 2 * l, l + k, l}, c);
  }
  return r;
}

CoeffRing& CoeffRing::operator+=(const CoeffRing& o) {
  for (const auto& [m, c] : o.t_) add(m, c);
  return *this;
}

CoeffRing& CoeffRing::operator-=(const CoeffRing& o) {
  for (const auto& [m, c] : o.t_) add(m, -c);
  return *this;
}

CoeffRing operator*(const CoeffRing& a, const CoeffRing& b) {
  CoeffRing r;
  for (const auto& [ma, ca] : a.t_) {
    for (const auto& [mb, cb] : b.t_) {
      r.add({ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2], ma[3] + mb[3]}, ca * cb);
    }
  }
  return r;
}

CoeffRing operator*(const mpq_class& c, CoeffRing a) {
  if (c == 0) return {};
  for (auto& kv : a.t_) kv.second *= c;
  return a;
}

CoeffRing CoeffRing::truncate_degree(unsigned d) const {
  CoeffRing r;
  for (const auto& [m, c] : t_)
    if (m[3] <= static_cast<int>(d)) r.t_.emplace(m, c);
  return r;
}

Complex gamma_value(Complex tau, Complex nu, Complex w) {
  return std::exp(nu / tau - w * w / tau) / std::sqrt(-tau);
}

Complex CoeffRing::evaluate(Complex tau, Complex nu, Complex w) const {
  const Complex g = gamma_value(tau, nu, w);
  const Complex zi = 1.0 / tau;
  Complex sum = 0.0;
  for (const auto& [m, c] : t_) {
    sum += c.get_d() * std::pow(g, m[0]) * std::pow(zi, m[1]) * std::pow(nu, m[2]) * std::pow(w * w, m[3]);
  }
  return sum;
}

std::string CoeffRing::to_string() const {
  if (t_.empty()) return "0";
  static const char* names[] = {"g", "tinv", "nu", "w2"};
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : t_) {
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    const mpq_class a = abs(c);
    bool bare = true;
    for (int i = 0; i < 4; ++i) bare = bare && m[i] == 0;
    if (a != 1 || bare) os << a.get_str();
    for (int i = 0; i < 4; ++i) {
      if (m[i] == 0) continue;
      os << (a != 1 || bare ? "*" : "") << names[i];
      if (m[i] != 1) os << "^" << m[i];
      bare = false;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------- VertexElem

VertexElem VertexElem::x(int m) {
  VertexElem e;
  e.add(m, 0, CoeffRing::constant(1));
  return e;
}

void VertexElem::add(int m, unsigned k, const CoeffRing& c) {
  if (c.is_zero()) return;
  auto key = std::make_pair(m, k);
  auto it = terms.find(key);
  if (it == terms.end()) {
    terms.emplace(key, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms.erase(it);
}

VertexElem& VertexElem::operator+=(const VertexElem& o) {
  for (const auto& [key, c] : o.terms) add(key.first, key.second, c);
  return *this;
}

VertexElem& VertexElem::operator-=(const VertexElem& o) {
  for (const auto& [key, c] : o.terms) add(key.first, key.second, mpq_class(-1) * c);
  return *this;
}

VertexElem operator*(const mpq_class& c, const VertexElem& e) {
  VertexElem r;
  for (const auto& [key, v] : e.terms) r.add(key.first, key.second, c * v);
  return r;
}

VertexElem VertexElem::up_to_grade(unsigned k) const {
  VertexElem r;
  for (const auto& [key, c] : terms)
    if (key.second <= k) r.terms.emplace(key, c);
  return r;
}

VertexElem L_action(int n, const VertexElem& e, unsigned K, bool strict, bool* overflowed) {
  VertexElem r;
  bool dropped = false;
  for (const auto& [key, c] : e.terms) {
    const auto [m, k] = key;
    r.add(n + m, k, mpq_class(m) * c);
    if (k + 1 > K) {
      if (strict) throw TruncationOverflow("L action leaves the grade budget " + std::to_string(K));
      dropped = true;
      continue;
    }
    r.add(n + m + 2, k + 1, mpq_class(2) * c);
  }
  if (overflowed) *overflowed = dropped;
  return r;
}

CoeffRing bracket_xx(int m, int n, unsigned cap) { return mpq_class(m - n) * CoeffRing::laurent(m + n - 1, cap); }

CentralSeries bracket(const VertexElem& a, const VertexElem& b, unsigned K, unsigned cap) {
  CentralSeries out;
  for (const auto& [ka, ca] : a.terms) {
    for (const auto& [kb, cb] : b.terms) {
      const unsigned grade = ka.second + kb.second;
      if (grade > K) continue;
      const CoeffRing v = ca * cb * bracket_xx(ka.first, kb.first, cap);
      if (v.is_zero()) continue;
      out[grade] += v;
      if (out[grade].is_zero()) out.erase(grade);
    }
  }
  return out;
}

bool witt_identity_check(int n, int ell, int m, unsigned K, WittSign sign) {
  if (K < 2) throw DomainError("the Witt check needs grade budget K >= 2");
  const VertexElem x = VertexElem::x(m);
  const VertexElem lhs = L_action(n, L_action(ell, x, K), K) - L_action(ell, L_action(n, x, K), K);
  const int c = sign == WittSign::LMinusN ? ell - n : n - ell;
  return lhs == mpq_class(c) * L_action(n + ell, x, K);
}

VertexElem nested_action_closed(int ell, int n, int m) {
  const int big = n + m + ell;
  VertexElem r;
  r.add(big, 0, CoeffRing::constant(m * (n + m)));
  r.add(big + 2, 1, CoeffRing::constant(2 * (2 * m + n + 2)));
  r.add(big + 4, 2, CoeffRing::constant(4));
  return r;
}

VertexElem y_generator(int m, unsigned K, YForm form) {
  VertexElem y;
  for (unsigned k = 0; k <= K; ++k) {
    const mpq_class base = form == YForm::Corrected ? mpq_class(-1) : mpq_class(-2);
    mpq_class c = 1;
    for (unsigned i = 0; i < k; ++i) c *= base;
    c /= factorial_q(k);
    const int index = form == YForm::Corrected ? m + 2 * static_cast<int>(k) : m + static_cast<int>(k);
    y.add(index, k, CoeffRing::constant(c));
  }
  return y;
}

bool y_eigen_check(int n, int m, unsigned K, YForm form) {
  // Act with one spare grade so the comparison through K sees every term.
  const VertexElem act = L_action(n, y_generator(m, K, form), K + 1);
  const VertexElem diff = act - mpq_class(m) * y_generator(n + m, K, form);
  return diff.up_to_grade(K).is_zero();
}

namespace {

CentralSeries scaled(const CentralSeries& s, const mpq_class& c) {
  CentralSeries r;
  for (const auto& [g, v] : s) {
    CoeffRing t = c * v;
    if (!t.is_zero()) r.emplace(g, std::move(t));
  }
  return r;
}

CentralSeries display_c1(unsigned K) {
  // -2 sum_n (-4)^n / n! a_{n-1} u^n
  CentralSeries r;
  mpq_class c = -2;
  for (unsigned n = 0; n <= K; ++n) {
    if (n > 0) c = c * -4 / n;
    CoeffRing v = c * CoeffRing::laurent(static_cast<int>(n) - 1, K);
    if (!v.is_zero()) r.emplace(n, std::move(v));
  }
  return r;
}

CentralSeries truncate(const CentralSeries& s, unsigned k) {
  CentralSeries r;
  for (const auto& [g, v] : s) {
    if (g > k) continue;
    CoeffRing t = v.truncate_degree(k);
    if (!t.is_zero()) r.emplace(g, std::move(t));
  }
  return r;
}

}  // namespace

CentralReport central_constraint_check(unsigned K, YForm form, int range) {
  if (K < 2) throw DomainError("the central check needs grade budget K >= 2");
  std::map<int, VertexElem> y;
  for (int m = -range; m <= range; ++m) y.emplace(m, y_generator(m, K, form));
  auto c = [&](int l, int m) { return bracket(y.at(l), y.at(m), K, K); };

  CentralReport rep;
  rep.c1 = c(-1, 1);
  for (int l = -range; l <= range; ++l) {
    for (int m = -range; m <= range; ++m) {
      const CentralSeries v = c(l, m);
      if (l == 0 && !v.empty()) rep.y0_central = false;
      if (l + m != 0 && !v.empty() && rep.off_diagonal_zero) {
        rep.off_diagonal_zero = false;
        rep.first_off_diagonal = {l, m};
      }
      if (l + m == 0 && !(v == scaled(rep.c1, mpq_class(-l)))) rep.diagonal_law = false;
    }
  }
  rep.c1_matches_display = rep.c1 == display_c1(K);
  return rep;
}

bool k_centrality_check(int m, int n, unsigned K, YForm form, int range) {
  for (int l = -range; l <= range; ++l) {
    const VertexElem y = y_generator(l, K, form);
    const VertexElem lhs = L_action(m, L_action(n, y, K), K) - L_action(n, L_action(m, y, K), K);
    const VertexElem rhs = mpq_class(n - m) * L_action(m + n, y, K);
    if (!(lhs - rhs).up_to_grade(K).is_zero()) return false;
  }
  return true;
}

bool truncation_stable(unsigned k_lo, unsigned k_hi, YForm form, int range) {
  for (int l = -range; l <= range; ++l) {
    for (int m = -range; m <= range; ++m) {
      const CentralSeries lo = bracket(y_generator(l, k_lo, form), y_generator(m, k_lo, form), k_lo, k_lo);
      const CentralSeries hi = bracket(y_generator(l, k_hi, form), y_generator(m, k_hi, form), k_hi, k_hi);
      if (!(truncate(lo, k_lo) == truncate(hi, k_lo))) return false;
    }
  }
  return true;
}

}  // namespace sd
