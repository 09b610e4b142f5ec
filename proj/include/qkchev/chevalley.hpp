#pragma once

#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qkchev/qbg.hpp"
#include "qkchev/reflection_order.hpp"
#include "qkchev/weyl.hpp"

namespace qkchev {

enum class Side { QK, Character };

/// Basis index (v in W^J, m) of an expansion; ordered by m, then length, then lex word.
struct TermKey {
  int m = 0;
  Word v;

  bool operator<(const TermKey& o) const {
    if (m != o.m) return m < o.m;
    if (v.size() != o.v.size()) return v.size() < o.v.size();
    return v < o.v;
  }
  bool operator==(const TermKey& o) const = default;
};

struct SchubertExpansion {
  LieType type;
  int k = 0;
  Word x;
  Weight prefactor;  // x varpi_k
  Side side = Side::QK;
  bool above_s_theta = false;
  std::map<TermKey, int> terms;  // nonzero coefficients only

  int coeff(const Word& v, int m) const {
    auto it = terms.find({m, v});
    return it == terms.end() ? 0 : it->second;
  }
  void add(const Word& v, int m, int c) {
    auto& slot = terms[{m, v}];
    slot += c;
    if (slot == 0) terms.erase({m, v});
  }
  bool same_terms(const SchubertExpansion& o) const { return terms == o.terms; }
};

/// Per-coset path counts for the paths of QBG_x that leave BG_x.
struct CosetCount {
  Word v;
  int count = 0;       // #G_x(v) in ADE, #X_x(v) in type B
  int h_count = 0;     // #H_x(v), type B only
  int signed_sum = 0;  // sum of (-1)^{l(ed q) - l(x)} over the counted paths
};

struct CancellationReport {
  Word x;
  bool above_s_theta = false;
  bool type_b = false;
  std::vector<CosetCount> rows;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

/// Everything fixed by (type, k): Weyl group, J = I \ {k}, gamma_Q, floor(s_theta), W^J.
class Chevalley {
 public:
  Chevalley(LieType type, int k) : weyl_(type), k_(k) {
    const auto& rs = weyl_.roots();
    if (k < 1 || k > rs.rank()) throw Error("k=" + std::to_string(k) + " is not a node of " + type.name());
    rs.require_minuscule(k);
    if (!type.simply_laced() && k != rs.rank()) throw Error("type B requires k = n");
    J_ = ParabolicSubset::complement_of(rs.rank(), k);
    if (type.simply_laced()) {
      gamma_q_ = rs.simple(k).index;
    } else {
      std::vector<int> c(static_cast<std::size_t>(rs.rank()), 0);
      c[static_cast<std::size_t>(k - 2)] = 1;
      c[static_cast<std::size_t>(k - 1)] = 2;
      gamma_q_ = rs.root_from_coeffs(c).index;
    }
    s_theta_ = weyl_.min_rep(weyl_.reflection(rs.highest_root()), J_);
    allowed_.assign(static_cast<std::size_t>(rs.num_positive()), false);
    for (const auto& r : rs.positive_roots()) allowed_[static_cast<std::size_t>(r.index)] = !ReflectionOrder::in_subsystem(r, J_);
    wj_ = weyl_.enumerate_WJ(J_);
    if (!type.simply_laced()) sqs_ = weyl_.from_word({rs.rank(), rs.rank() - 1, rs.rank()});
  }

  const Weyl& weyl() const { return weyl_; }
  const RootSystem& roots() const { return weyl_.roots(); }
  int k() const { return k_; }
  const ParabolicSubset& J() const { return J_; }
  const Root& gamma_q() const { return roots().root(gamma_q_); }
  const WeylElem& s_theta_min() const { return s_theta_; }
  const std::vector<WeylElem>& WJ() const { return wj_; }
  const std::vector<bool>& labels_outside_J() const { return allowed_; }
  bool type_b() const { return !roots().type().simply_laced(); }

  ReflectionOrder order(std::uint64_t seed = 0) const { return ReflectionOrder::j_compatible(weyl_, J_, seed); }

  bool above_s_theta(const WeylElem& x) const { return weyl_.bruhat_leq(s_theta_, x); }

  /// Throws unless x is in W^J, quoting floor(x).
  void require_WJ(const WeylElem& x) const {
    if (weyl_.in_WJ(x, J_)) return;
    auto m = weyl_.word_string(weyl_.min_rep(x, J_));
    throw Error("x = " + display(weyl_.word_string(x)) + " is not in W^J; its minimal representative is " + display(m));
  }

  /// m-coordinate of [xi]^J, i.e. the coefficient of alpha_k^vee.
  int m_of(const CorootVec& xi) const { return xi[k_ - 1]; }

  /// ed(BG_x) with signs (-1)^{l(y) - l(x)}, sorted by (length, lex).
  std::vector<std::pair<WeylElem, int>> classical_terms(const WeylElem& x, const ReflectionOrder& ord) const {
    require_WJ(x);
    auto paths = increasing_paths_from(weyl_, x, ord, allowed_, Graph::BG);
    std::vector<WeylElem> ends;
    ElemSet seen;
    for (const auto& p : paths)
      if (seen.insert(p.end()).second) ends.push_back(p.end());
    check_invariant(ends.size() == paths.size(), "two BG paths share an endpoint");
    weyl_.sort_elements(ends);
    std::vector<std::pair<WeylElem, int>> out;
    for (auto& y : ends) out.emplace_back(y, sign(y, x));
    return out;
  }

  /// Partner pairs (y, floor(y s_gammaQ)) for y in ed(BG_x).
  std::vector<std::pair<WeylElem, WeylElem>> quantum_partners(const WeylElem& x, const ReflectionOrder& ord) const {
    std::vector<std::pair<WeylElem, WeylElem>> out;
    for (const auto& [y, s] : classical_terms(x, ord))
      out.emplace_back(y, weyl_.min_rep(weyl_.right_reflect(y, gamma_q()), J_));
    return out;
  }

  /// The closed formula: classical block, plus the partner block when x >= floor(s_theta).
  SchubertExpansion closed_formula(const WeylElem& x, const ReflectionOrder& ord) const {
    SchubertExpansion e = blank(x);
    auto classical = classical_terms(x, ord);
    for (const auto& [y, s] : classical) e.add(weyl_.reduced_word(y), 0, s);
    if (e.above_s_theta) {
      ElemSet partners;
      for (const auto& [y, s] : classical) {
        WeylElem p = weyl_.min_rep(weyl_.right_reflect(y, gamma_q()), J_);
        check_invariant(partners.insert(p).second, "partner map is not injective");
        e.add(weyl_.reduced_word(p), 1, -s);
      }
    }
    return e;
  }

  SchubertExpansion closed_formula(const WeylElem& x) const { return closed_formula(x, order()); }

  /// Direct sum over QBG_x with labels outside Delta^+_J: each path contributes its sign at
  /// (floor(ed p), alpha_k^vee-coefficient of wt p).
  SchubertExpansion oracle_expansion(const WeylElem& x, const ReflectionOrder& ord) const {
    require_WJ(x);
    SchubertExpansion e = blank(x);
    for (const auto& p : increasing_paths_from(weyl_, x, ord, allowed_, Graph::QBG)) {
      int m = m_of(weyl_.coroot_project(p.weight(roots()), J_));
      e.add(weyl_.reduced_word(weyl_.min_rep(p.end(), J_)), m, sign(p.end(), x));
    }
    return e;
  }

  SchubertExpansion oracle_expansion(const WeylElem& x) const { return oracle_expansion(x, order()); }

  /// ed(QBG_x) as a set of elements (sorted).
  std::vector<WeylElem> quantum_endpoints(const WeylElem& x, const ReflectionOrder& ord) const {
    std::vector<WeylElem> ends;
    for (const auto& p : increasing_paths_from(weyl_, x, ord, allowed_, Graph::QBG)) ends.push_back(p.end());
    weyl_.sort_elements(ends);
    return ends;
  }

  /// Counts the paths of QBG_x \ BG_x per coset and checks the finiteness and cancellation claims.
  CancellationReport cancellation_report(const WeylElem& x, const ReflectionOrder& ord) const {
    require_WJ(x);
    CancellationReport rep;
    rep.x = weyl_.reduced_word(x);
    rep.above_s_theta = above_s_theta(x);
    rep.type_b = type_b();
    const int an = roots().simple(roots().rank()).index;
    std::map<std::pair<std::size_t, Word>, CosetCount> rows;
    for (const auto& p : increasing_paths_from(weyl_, x, ord, allowed_, Graph::QBG)) {
      if (!p.has_quantum_edge()) continue;
      int m = m_of(weyl_.coroot_project(p.weight(roots()), J_));
      Word v = weyl_.reduced_word(weyl_.min_rep(p.end(), J_));
      if (m != 1) rep.violations.push_back("path with m=" + std::to_string(m) + " ending in coset " + display(format_word(v)));
      auto& row = rows[{v.size(), v}];
      row.v = v;
      row.count += 1;
      row.signed_sum += sign(p.end(), x);
      if (rep.type_b && is_h_path(p, an)) row.h_count += 1;
    }
    for (auto& [key, row] : rows) rep.rows.push_back(row);
    std::string xs = display(format_word(rep.x));
    for (const auto& row : rep.rows) {
      std::string where = "x=" + xs + ", v=" + display(format_word(row.v));
      if (rep.above_s_theta) {
        int c = rep.type_b ? row.h_count : row.count;
        if (c > 1) rep.violations.push_back(where + ": count " + std::to_string(c) + " > 1 although x >= floor(s_theta)");
      } else if (!x.is_identity() && row.count == 1) {
        rep.violations.push_back(where + ": count 1 although x is not >= floor(s_theta)");
      }
      if (row.count >= 2 && row.signed_sum != 0)
        rep.violations.push_back(where + ": " + std::to_string(row.count) + " paths with nonzero signed sum");
    }
    return rep;
  }

  /// Lemma-style recurrences between expansions of neighbouring x. Returns violations.
  std::vector<std::string> check_recurrences(const std::map<Word, SchubertExpansion>& exps) const {
    std::vector<std::string> bad;
    int max_m = 1;
    for (const auto& [w, e] : exps)
      for (const auto& [key, c] : e.terms) max_m = std::max(max_m, key.m);
    for (const auto& x : wj_) {
      Word xw = weyl_.reduced_word(x);
      auto xit = exps.find(xw);
      if (xit == exps.end()) continue;
      const auto& cx = xit->second;
      Weight xl = weyl_.act(x, roots().fundamental(k_));
      for (int j = 1; j <= roots().rank(); ++j) {
        int pj = xl[j - 1];
        if (pj == 1) {
          for (const auto& v : wj_) {
            if (weyl_.act(v, roots().fundamental(k_))[j - 1] != 0) continue;
            for (int m = 0; m <= max_m; ++m)
              if (cx.coeff(weyl_.reduced_word(v), m) != 0)
                bad.push_back("+1 rule: x=" + display(format_word(xw)) + ", j=" + std::to_string(j) + ", v=" +
                              display(weyl_.word_string(v)) + ", m=" + std::to_string(m));
          }
        } else if (pj == -1) {
          WeylElem sx = weyl_.left_simple(j, x);
          auto sit = exps.find(weyl_.reduced_word(sx));
          if (sit == exps.end()) continue;
          const auto& csx = sit->second;
          for (const auto& v : wj_) {
            int pv = weyl_.act(v, roots().fundamental(k_))[j - 1];
            if (pv == 0) continue;
            Word vw = weyl_.reduced_word(v);
            Word svw = weyl_.reduced_word(weyl_.left_simple(j, v));
            for (int m = 0; m <= max_m; ++m) {
              int lhs = csx.coeff(vw, m);
              int rhs = pv < 0 ? -cx.coeff(vw, m) : cx.coeff(svw, m);
              if (lhs != rhs)
                bad.push_back("-1 rule: x=" + display(format_word(xw)) + ", j=" + std::to_string(j) + ", v=" +
                              display(format_word(vw)) + ", m=" + std::to_string(m));
            }
          }
        }
      }
    }
    return bad;
  }

  static std::string display(const std::string& word) { return word.empty() ? "e" : word; }

 private:
  static int sign(const WeylElem& y, const WeylElem& x) { return ((y.length() - x.length()) % 2 == 0) ? 1 : -1; }

  SchubertExpansion blank(const WeylElem& x) const {
    require_WJ(x);
    SchubertExpansion e;
    e.type = roots().type();
    e.k = k_;
    e.x = weyl_.reduced_word(x);
    e.prefactor = weyl_.act(x, roots().fundamental(k_));
    e.above_s_theta = above_s_theta(x);
    return e;
  }

  // Member of H_x: Bruhat edges followed by one final quantum edge, labelled alpha_n from an
  // endpoint not >= s_n s_{n-1} s_n, or gamma_Q from an endpoint that is.
  bool is_h_path(const QBGPath& p, int an) const {
    int L = p.length();
    if (L == 0 || p.kinds.back() != EdgeKind::Quantum) return false;
    for (int i = 0; i + 1 < L; ++i)
      if (p.kinds[static_cast<std::size_t>(i)] != EdgeKind::Bruhat) return false;
    bool in_a = weyl_.bruhat_leq(sqs_, p.vertices[static_cast<std::size_t>(L - 1)]);
    int last = p.labels.back();
    return (last == an && !in_a) || (last == gamma_q_ && in_a);
  }

  Weyl weyl_;
  int k_;
  ParabolicSubset J_;
  int gamma_q_ = -1;
  WeylElem s_theta_;
  WeylElem sqs_;
  std::vector<bool> allowed_;
  std::vector<WeylElem> wj_;
};

inline std::string schubert_label(const Word& w) {
  if (w.empty()) return "e";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? " s" : "s") + std::to_string(w[i]);
  return s;
}

/// Renders the product. QK: [O_x] * [O(-w_k)] = e^{x*w_k}(...); Character: gch identity with e^{-x*w_k}.
inline std::string to_qk_product_string(const SchubertExpansion& e) {
  std::ostringstream body;
  bool first = true;
  std::string k = std::to_string(e.k);
  for (const auto& [key, c] : e.terms) {
    std::string cls;
    if (e.side == Side::QK) {
      cls = "[O_{" + schubert_label(key.v) + "}]";
    } else {
      cls = "gch V^-_{" + schubert_label(key.v) + (key.m ? " t_{" + (key.m == 1 ? std::string() : std::to_string(key.m)) + "a" + k + "^vee}" : std::string()) +
            "}(N*w" + k + ")";
    }
    if (e.side == Side::QK && key.m > 0) cls += " Q_" + k + (key.m == 1 ? std::string() : "^" + std::to_string(key.m));
    int a = std::abs(c);
    body << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    if (a != 1) body << a << ' ';
    body << cls;
    first = false;
  }
  std::string inner = first ? "0" : body.str();
  std::ostringstream os;
  std::string x = schubert_label(e.x);
  if (e.side == Side::QK) {
    os << "[O_{" << x << "}] ⋆ [O(-w" << k << ")] = e^{x*w" << k << "}(" << inner << ")";
  } else {
    os << "gch V^-_{" << x << "}((N-1)*w" << k << ") = e^{-x*w" << k << "}(" << inner << ")";
  }
  return os.str();
}

/// The same product moved into the [O_x] * [O_{s_k}] form.
inline std::string to_sk_product_string(const SchubertExpansion& e) {
  auto full = to_qk_product_string(e);
  auto pos = full.find("= e^{x*w");
  std::string inner = full.substr(full.find('(', pos));
  std::string k = std::to_string(e.k);
  std::string x = schubert_label(e.x);
  return "[O_{" + x + "}] ⋆ [O_{s" + k + "}] = [O_{" + x + "}] - e^{x*w" + k + "-w" + k + "}" + inner;
}

inline nlohmann::json to_json(const SchubertExpansion& e) {
  nlohmann::json j;
  j["type"] = std::string(1, family_char(e.type.family));
  j["rank"] = e.type.rank;
  j["k"] = e.k;
  j["x"] = format_word(e.x);
  j["prefactor"] = "x*w" + std::to_string(e.k);
  j["prefactor_weight"] = e.prefactor.coeffs;
  j["side"] = e.side == Side::QK ? "QK" : "Character";
  j["classical"] = nlohmann::json::array();
  j["quantum"] = nlohmann::json::array();
  for (const auto& [key, c] : e.terms) {
    if (key.m == 0) j["classical"].push_back({{"y", format_word(key.v)}, {"sign", c}});
    else j["quantum"].push_back({{"y", format_word(key.v)}, {"sign", c}, {"q_power", key.m}});
  }
  j["above_s_theta"] = e.above_s_theta;
  return j;
}

/// Inverse of to_json (terms only need the words; the type is read back as well).
inline SchubertExpansion expansion_from_json(const nlohmann::json& j) {
  SchubertExpansion e;
  e.type = LieType::parse(j.at("type").get<std::string>(), j.at("rank").get<int>());
  e.k = j.at("k").get<int>();
  e.x = parse_word(j.at("x").get<std::string>(), e.type.rank);
  if (j.contains("prefactor_weight")) e.prefactor = Weight(j["prefactor_weight"].get<std::vector<int>>());
  e.side = j.at("side").get<std::string>() == "QK" ? Side::QK : Side::Character;
  e.above_s_theta = j.at("above_s_theta").get<bool>();
  for (const auto& t : j.at("classical")) e.add(parse_word(t.at("y").get<std::string>(), e.type.rank), 0, t.at("sign").get<int>());
  for (const auto& t : j.at("quantum"))
    e.add(parse_word(t.at("y").get<std::string>(), e.type.rank), t.at("q_power").get<int>(), t.at("sign").get<int>());
  return e;
}

}  // namespace qkchev
