#pragma once

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "qkchev/root_system.hpp"

namespace qkchev {

/// Laurent polynomial in q: exponent -> coefficient, zeros removed.
using LaurentPoly = std::map<int, long long>;

/// Finitely supported element of Z[q, q^{-1}][P].
class GroupAlgebraElem {
 public:
  GroupAlgebraElem() = default;

  static GroupAlgebraElem monomial(const Weight& xi, long long c = 1, int q_power = 0) {
    GroupAlgebraElem f;
    f.add(xi.coeffs, q_power, c);
    return f;
  }

  void add(const std::vector<int>& xi, int q_power, long long c) {
    if (c == 0) return;
    auto& poly = terms_[xi];
    poly[q_power] += c;
    if (poly[q_power] == 0) poly.erase(q_power);
    if (poly.empty()) terms_.erase(xi);
  }

  void add(const GroupAlgebraElem& o, long long scale = 1) {
    for (const auto& [xi, poly] : o.terms_)
      for (const auto& [e, c] : poly) add(xi, e, scale * c);
  }

  /// Product with e^{shift}.
  GroupAlgebraElem shifted(const std::vector<int>& shift) const {
    GroupAlgebraElem out;
    for (const auto& [xi, poly] : terms_) {
      auto w = xi;
      for (std::size_t i = 0; i < w.size(); ++i) w[i] += shift[i];
      for (const auto& [e, c] : poly) out.add(w, e, c);
    }
    return out;
  }

  bool is_zero() const { return terms_.empty(); }
  const std::map<std::vector<int>, LaurentPoly>& terms() const { return terms_; }
  bool operator==(const GroupAlgebraElem& o) const { return terms_ == o.terms_; }

  /// "q^a e^{c1*w1+...}" terms joined by " + ".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [xi, poly] : terms_) {
      for (const auto& [e, c] : poly) {
        os << (first ? "" : " + ");
        if (c != 1) os << c << ' ';
        if (e != 0) os << "q^" << e << ' ';
        os << "e^{" << RootSystem::format_weight(xi) << '}';
        first = false;
      }
    }
    return os.str();
  }

 private:
  std::map<std::vector<int>, LaurentPoly> terms_;
};

/// D_i on e^xi with n = <xi, alpha_i^vee>:
///   n <= 0: e^xi (1 + e^{alpha_i} + ... + e^{-n alpha_i}),  n = 1: 0,
///   n >= 2: -e^xi (e^{-alpha_i} + ... + e^{(-n+1) alpha_i}).
inline GroupAlgebraElem demazure(const RootSystem& rs, int i, const GroupAlgebraElem& f) {
  if (i < 1 || i > rs.rank()) throw Error("node " + std::to_string(i) + " out of range");
  const auto& a = rs.simple(i).weight;
  GroupAlgebraElem out;
  for (const auto& [xi, poly] : f.terms()) {
    int n = xi[static_cast<std::size_t>(i - 1)];
    auto step = [&](int t) {
      auto w = xi;
      for (std::size_t r = 0; r < w.size(); ++r) w[r] += t * a[r];
      return w;
    };
    for (const auto& [e, c] : poly) {
      if (n <= 0) {
        for (int t = 0; t <= -n; ++t) out.add(step(t), e, c);
      } else if (n >= 2) {
        for (int t = 1; t <= n - 1; ++t) out.add(step(-t), e, -c);
      }
    }
  }
  return out;
}

/// D_i(e^lambda e^mu) == (D_i e^{lambda+rho}) e^{mu-rho} + e^{s_i lambda} (D_i e^mu).
inline bool leibniz_check(const RootSystem& rs, int i, const Weight& lambda, const Weight& mu) {
  Weight rho = rs.rho();
  auto lhs = demazure(rs, i, GroupAlgebraElem::monomial(lambda + mu));
  auto rhs = demazure(rs, i, GroupAlgebraElem::monomial(lambda + rho)).shifted((mu - rho).coeffs);
  Weight sl = lambda - lambda[i - 1] * rs.root_weight(rs.simple(i));
  rhs.add(demazure(rs, i, GroupAlgebraElem::monomial(mu)).shifted(sl.coeffs));
  return lhs == rhs;
}

}  // namespace qkchev
