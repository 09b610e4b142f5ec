#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include <boost/rational.hpp>
#include <json.hpp>

#include "qkchev/qbg.hpp"

namespace qkchev {

using Rational = boost::rational<int>;

/// eta = (x_1, ..., x_s ; 0 = sigma_0 < ... < sigma_s = 1).
struct QLSPath {
  std::vector<WeylElem> dirs;
  std::vector<Rational> cuts;  // size s + 1

  int segments() const { return static_cast<int>(dirs.size()); }

  std::string to_string(const Weyl& weyl) const {
    std::string out = "(";
    for (std::size_t u = 0; u < dirs.size(); ++u) {
      out += (u ? ", " : "");
      auto w = weyl.word_string(dirs[u]);
      out += w.empty() ? "e" : w;
    }
    out += " ;";
    for (const auto& c : cuts) {
      out += ' ' + std::to_string(c.numerator());
      if (c.denominator() != 1) out += '/' + std::to_string(c.denominator());
    }
    return out + ")";
  }
};

/// J_mu = { i : <mu, alpha_i^vee> = 0 }.
inline ParabolicSubset stabilizer_nodes(const Weight& mu) {
  std::vector<int> nodes;
  for (int i = 1; i <= mu.rank(); ++i)
    if (mu[i - 1] == 0) nodes.push_back(i);
  return ParabolicSubset(mu.rank(), nodes);
}

/// Parabolic quantum Bruhat graph on W^J for a fixed dominant mu, with the QB_sigma subgraphs.
class ParabolicQBG {
 public:
  struct Edge {
    int from;
    int to;
    int label;
    EdgeKind kind;
  };

  ParabolicQBG(const Weyl& weyl, const Weight& mu) : weyl_(&weyl), mu_(mu), J_(stabilizer_nodes(mu)) {
    if (!mu.dominant()) throw Error("shape must be a dominant weight");
    const auto& rs = weyl.roots();
    verts_ = weyl.enumerate_WJ(J_);
    for (std::size_t i = 0; i < verts_.size(); ++i) index_.emplace(verts_[i], static_cast<int>(i));
    for (const auto& beta : rs.positive_roots()) {
      int p = 0;
      for (int i = 0; i < rs.rank(); ++i) p += mu[i] * beta.coroot[static_cast<std::size_t>(i)];
      mu_pair_.push_back(p);
    }
    for (const auto& beta : rs.positive_roots()) {
      if (ReflectionOrder::in_subsystem(beta, J_)) continue;
      int two_rho_j = 0;  // <2 rho_J, beta^vee>
      for (const auto& a : rs.positive_roots())
        if (ReflectionOrder::in_subsystem(a, J_)) two_rho_j += rs.pair(a, beta);
      for (std::size_t w = 0; w < verts_.size(); ++w) {
        WeylElem v = weyl.min_rep(weyl.right_reflect(verts_[w], beta), J_);
        int lw = verts_[w].length(), lv = v.length();
        std::optional<EdgeKind> kind;
        if (lv == lw + 1) kind = EdgeKind::Bruhat;
        else if (lv == lw + 1 - (2 * beta.coheight - two_rho_j)) kind = EdgeKind::Quantum;
        if (kind) edges_.push_back({static_cast<int>(w), index_.at(v), beta.index, *kind});
      }
    }
  }

  const ParabolicSubset& J() const { return J_; }
  const Weight& mu() const { return mu_; }
  const std::vector<WeylElem>& vertices() const { return verts_; }
  const std::vector<Edge>& edges() const { return edges_; }
  int index_of(const WeylElem& w) const { return index_.at(w); }
  int mu_pair(int root) const { return mu_pair_[static_cast<std::size_t>(root)]; }

  /// Cuts sigma in (0,1) for which some edge survives in QB_sigma.
  std::vector<Rational> candidate_cuts() const {
    std::set<Rational> out;
    for (int d : mu_pair_)
      for (int a = 1; a < d; ++a) out.insert(Rational(a, d));
    return {out.begin(), out.end()};
  }

  bool edge_in(const Edge& e, const Rational& sigma, bool bruhat_only) const {
    if (bruhat_only && e.kind != EdgeKind::Bruhat) return false;
    return mu_pair(e.label) % sigma.denominator() == 0;
  }

  /// reach[a][b]: a directed path of positive length from a to b in QB_sigma (or B_sigma).
  const std::vector<std::vector<bool>>& reach(const Rational& sigma, bool bruhat_only = false) const {
    auto key = std::make_pair(sigma.denominator(), bruhat_only);
    auto it = reach_.find(key);
    if (it != reach_.end()) return it->second;
    std::size_t N = verts_.size();
    std::vector<std::vector<int>> adj(N);
    for (const auto& e : edges_)
      if (edge_in(e, sigma, bruhat_only)) adj[static_cast<std::size_t>(e.from)].push_back(e.to);
    std::vector<std::vector<bool>> r(N, std::vector<bool>(N, false));
    for (std::size_t s = 0; s < N; ++s) {
      std::vector<int> stack(adj[s].begin(), adj[s].end());
      while (!stack.empty()) {
        int t = stack.back();
        stack.pop_back();
        if (r[s][static_cast<std::size_t>(t)]) continue;
        r[s][static_cast<std::size_t>(t)] = true;
        for (int n : adj[static_cast<std::size_t>(t)]) stack.push_back(n);
      }
    }
    return reach_.emplace(key, std::move(r)).first->second;
  }

 private:
  const Weyl* weyl_;
  Weight mu_;
  ParabolicSubset J_;
  std::vector<WeylElem> verts_;
  ElemMap<int> index_;
  std::vector<int> mu_pair_;
  std::vector<Edge> edges_;
  mutable std::map<std::pair<int, bool>, std::vector<std::vector<bool>>> reach_;
};

/// All QLS paths of shape mu (LS paths only when ls_only). Throws past `limit` paths.
inline std::vector<QLSPath> enumerate_qls(const ParabolicQBG& g, bool ls_only = false, std::size_t limit = 1000000) {
  const auto& verts = g.vertices();
  auto cuts = g.candidate_cuts();
  std::vector<QLSPath> out;
  std::vector<int> dirs;
  std::vector<Rational> sig{Rational(0)};
  auto emit = [&] {
    QLSPath p;
    for (int d : dirs) p.dirs.push_back(verts[static_cast<std::size_t>(d)]);
    p.cuts = sig;
    p.cuts.push_back(Rational(1));
    out.push_back(std::move(p));
    if (out.size() > limit) throw Error("QLS enumeration exceeded " + std::to_string(limit) + " paths");
  };
  auto rec = [&](auto&& self, std::size_t next_cut) -> void {
    emit();
    int cur = dirs.back();
    for (std::size_t c = next_cut; c < cuts.size(); ++c) {
      const auto& r = g.reach(cuts[c], ls_only);
      for (std::size_t y = 0; y < verts.size(); ++y) {
        if (static_cast<int>(y) == cur || !r[y][static_cast<std::size_t>(cur)]) continue;
        dirs.push_back(static_cast<int>(y));
        sig.push_back(cuts[c]);
        self(self, c + 1);
        dirs.pop_back();
        sig.pop_back();
      }
    }
  };
  for (std::size_t x = 0; x < verts.size(); ++x) {
    dirs = {static_cast<int>(x)};
    rec(rec, 0);
  }
  return out;
}

inline std::vector<QLSPath> enumerate_qls(const Weyl& weyl, const Weight& mu, bool ls_only = false) {
  return enumerate_qls(ParabolicQBG(weyl, mu), ls_only);
}

/// Re-checks the defining connectivity condition of a QLS path.
inline bool is_qls(const ParabolicQBG& g, const QLSPath& eta) {
  if (eta.dirs.empty() || eta.cuts.size() != eta.dirs.size() + 1) return false;
  if (eta.cuts.front() != Rational(0) || eta.cuts.back() != Rational(1)) return false;
  for (std::size_t u = 0; u + 1 < eta.cuts.size(); ++u)
    if (!(eta.cuts[u] < eta.cuts[u + 1])) return false;
  for (std::size_t u = 0; u + 1 < eta.dirs.size(); ++u) {
    if (eta.dirs[u] == eta.dirs[u + 1]) return false;
    const auto& r = g.reach(eta.cuts[u + 1]);
    if (!r[static_cast<std::size_t>(g.index_of(eta.dirs[u + 1]))][static_cast<std::size_t>(g.index_of(eta.dirs[u]))])
      return false;
  }
  return true;
}

/// wt(eta) = sum (sigma_u - sigma_{u-1}) x_u mu.
inline Weight qls_wt(const Weyl& weyl, const QLSPath& eta, const Weight& mu) {
  int n = weyl.rank();
  std::vector<Rational> acc(static_cast<std::size_t>(n), Rational(0));
  for (std::size_t u = 0; u < eta.dirs.size(); ++u) {
    Rational len = eta.cuts[u + 1] - eta.cuts[u];
    Weight xm = weyl.act(eta.dirs[u], mu);
    for (int i = 0; i < n; ++i) acc[static_cast<std::size_t>(i)] += len * xm[i];
  }
  Weight out = Weight::zero(n);
  for (int i = 0; i < n; ++i) {
    check_invariant(acc[static_cast<std::size_t>(i)].denominator() == 1, "non-integral wt of a QLS path");
    out.coeffs[static_cast<std::size_t>(i)] = acc[static_cast<std::size_t>(i)].numerator();
  }
  return out;
}

/// Deg(eta) = - sum_{u<s} sigma_u <mu, wt(x_{u+1} => x_u)>; always <= 0.
inline int qls_deg(const QBGraph& graph, const QLSPath& eta, const Weight& mu) {
  const auto& rs = graph.weyl().roots();
  Rational acc(0);
  for (std::size_t u = 0; u + 1 < eta.dirs.size(); ++u) {
    CorootVec w = graph.path_weight(eta.dirs[u + 1], eta.dirs[u]);
    acc += eta.cuts[u + 1] * rs.pair(mu, w);
  }
  check_invariant(acc.denominator() == 1, "non-integral Deg of a QLS path");
  int deg = -acc.numerator();
  check_invariant(deg <= 0, "positive Deg of a QLS path");
  return deg;
}

/// (kappa(eta, v), zeta(eta, v)) via the tilted-maximum recursion; ord must be J-compatible.
inline std::pair<WeylElem, CorootVec> kappa_zeta(const QBGraph& graph, const QLSPath& eta, const ParabolicSubset& J,
                                                 const WeylElem& v, const ReflectionOrder& ord) {
  std::vector<WeylElem> hat{v};
  for (const auto& x : eta.dirs) hat.push_back(graph.tilted_max(x, J, hat.back(), ord));
  CorootVec zeta = graph.path_weight(hat[1], v);
  for (std::size_t u = 1; u + 1 < hat.size(); ++u) zeta += graph.path_weight(hat[u + 1], hat[u]);
  return {hat.back(), zeta};
}

struct NOSTerm {
  WeylElem v;
  CorootVec zeta;
  int deg = 0;     // exponent of q, = -Deg(eta) >= 0
  Weight weight;   // exponent of e, = -wt(eta)
  int sign = 1;
  QLSPath eta;
};

/// One term per (v, eta) with kappa(eta, v) = x.
inline std::vector<NOSTerm> nos_expansion(const QBGraph& graph, const WeylElem& x, const Weight& mu) {
  const auto& weyl = graph.weyl();
  ParabolicQBG pg(weyl, mu);
  const auto& J = pg.J();
  auto ord = ReflectionOrder::j_compatible(weyl, J);
  WeylElem xmin = weyl.min_rep(x, J);
  std::vector<NOSTerm> out;
  for (const auto& eta : enumerate_qls(pg)) {
    if (!(eta.dirs.back() == xmin)) continue;  // kappa(eta, v) lies in x_s W_J
    Weight wt = qls_wt(weyl, eta, mu);
    int deg = qls_deg(graph, eta, mu);
    for (const auto& v : graph.group().elements()) {
      auto [kappa, zeta] = kappa_zeta(graph, eta, J, v, ord);
      if (!(kappa == x)) continue;
      int sign = ((v.length() - x.length()) % 2 == 0) ? 1 : -1;
      out.push_back({v, zeta, -deg, -wt, sign, eta});
    }
  }
  std::stable_sort(out.begin(), out.end(), [&](const NOSTerm& a, const NOSTerm& b) { return weyl.word_less(a.v, b.v); });
  return out;
}

/// Terms collected on the basis (floor(v), [zeta]^J); zero coefficients dropped.
struct ReducedNOSTerm {
  Word v;
  CorootVec zeta;
  int deg;
  Weight weight;
  int coeff;
};

inline std::vector<ReducedNOSTerm> reduce_nos(const Weyl& weyl, const std::vector<NOSTerm>& terms,
                                              const ParabolicSubset& J) {
  using Key = std::tuple<std::size_t, Word, std::vector<int>, int, std::vector<int>>;
  std::map<Key, int> acc;
  for (const auto& t : terms) {
    Word w = weyl.reduced_word(weyl.min_rep(t.v, J));
    auto z = weyl.coroot_project(t.zeta, J);
    acc[{w.size(), w, z.coeffs, t.deg, t.weight.coeffs}] += t.sign;
  }
  std::vector<ReducedNOSTerm> out;
  for (const auto& [k, c] : acc) {
    if (c == 0) continue;
    out.push_back({std::get<1>(k), CorootVec(std::get<2>(k)), std::get<3>(k), Weight(std::get<4>(k)), c});
  }
  return out;
}

inline nlohmann::json to_json(const Weyl& weyl, const NOSTerm& t) {
  return {{"v", weyl.word_string(t.v)},
          {"zeta", t.zeta.coeffs},
          {"q_power", t.deg},
          {"weight", t.weight.coeffs},
          {"sign", t.sign},
          {"eta", t.eta.to_string(weyl)}};
}

}  // namespace qkchev
