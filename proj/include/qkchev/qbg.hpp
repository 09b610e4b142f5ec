#pragma once

#include <cstdint>
#include <list>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qkchev/reflection_order.hpp"
#include "qkchev/weyl.hpp"

namespace qkchev {

enum class EdgeKind { Bruhat, Quantum };

enum class Graph { BG, QBG };

inline const char* kind_name(EdgeKind k) { return k == EdgeKind::Bruhat ? "B" : "Q"; }

/// Kind of the edge w -> w s_beta, if it is an edge of QBG(W).
inline std::optional<EdgeKind> edge_kind(const Weyl& weyl, const WeylElem& w, const Root& beta) {
  int len = weyl.length_after_reflect(w, beta);
  if (len == w.length() + 1) return EdgeKind::Bruhat;
  if (len == w.length() + 1 - 2 * beta.coheight) return EdgeKind::Quantum;
  return std::nullopt;
}

/// Quantum roots: long roots, and short roots that are sums of short simple roots.
inline bool is_quantum_root(const RootSystem& rs, const Root& beta) {
  if (beta.is_long) return true;
  for (std::size_t i = 0; i < beta.coeffs.size(); ++i)
    if (beta.coeffs[i] != 0 && rs.simple(static_cast<int>(i) + 1).is_long) return false;
  return true;
}

struct QBGPath {
  std::vector<WeylElem> vertices;
  std::vector<int> labels;  // root indices
  std::vector<EdgeKind> kinds;

  const WeylElem& start() const { return vertices.front(); }
  const WeylElem& end() const { return vertices.back(); }
  int length() const { return static_cast<int>(labels.size()); }

  CorootVec weight(const RootSystem& rs) const {
    CorootVec out = CorootVec::zero(rs.rank());
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (kinds[i] == EdgeKind::Quantum) out += rs.coroot(rs.root(labels[i]));
    return out;
  }

  bool has_quantum_edge() const {
    for (auto k : kinds)
      if (k == EdgeKind::Quantum) return true;
    return false;
  }

  std::string to_string(const Weyl& weyl) const {
    std::ostringstream os;
    os << '(' << weyl.word_string(vertices.front()) << ')';
    for (std::size_t i = 0; i < labels.size(); ++i) {
      os << " -" << RootSystem::format_root(weyl.roots().root(labels[i]).coeffs) << '/' << kind_name(kinds[i])
         << "-> (" << weyl.word_string(vertices[i + 1]) << ')';
    }
    return os.str();
  }
};

/// Every directed path from x whose labels are strictly increasing in ord and lie in `allowed`
/// (indexed by root). The empty path is included. BG restricts to Bruhat edges.
inline std::vector<QBGPath> increasing_paths_from(const Weyl& weyl, const WeylElem& x, const ReflectionOrder& ord,
                                                  const std::vector<bool>& allowed, Graph graph) {
  const auto& rs = weyl.roots();
  std::vector<int> labels;  // allowed roots in increasing order
  for (int p = 0; p < ord.size(); ++p)
    if (allowed.at(static_cast<std::size_t>(ord.at(p)))) labels.push_back(ord.at(p));

  std::vector<QBGPath> out;
  QBGPath cur;
  cur.vertices.push_back(x);
  auto dfs = [&](auto&& self, std::size_t from) -> void {
    out.push_back(cur);
    const WeylElem w = cur.vertices.back();
    for (std::size_t li = from; li < labels.size(); ++li) {
      const Root& beta = rs.root(labels[li]);
      auto kind = edge_kind(weyl, w, beta);
      if (!kind || (graph == Graph::BG && *kind != EdgeKind::Bruhat)) continue;
      cur.vertices.push_back(weyl.right_reflect(w, beta));
      cur.labels.push_back(beta.index);
      cur.kinds.push_back(*kind);
      self(self, li + 1);
      cur.vertices.pop_back();
      cur.labels.pop_back();
      cur.kinds.pop_back();
    }
  };
  dfs(dfs, 0);
  return out;
}

/// Shortest-path data towards one target: dist[u] = l(u => v), weights flat by rank.
struct DistTable {
  int target = -1;
  int rank = 0;
  std::vector<int> dist;
  std::vector<int> wt;

  CorootVec weight(int u) const {
    auto b = wt.begin() + static_cast<std::ptrdiff_t>(u) * rank;
    return CorootVec(std::vector<int>(b, b + rank));
  }
};

/// QBG(W) over a fully enumerated group, with a shared LRU cache of distance tables.
/// The cache budget is in bytes; at least one table is always kept.
class QBGraph {
 public:
  explicit QBGraph(const FullGroup& group, std::size_t cache_bytes = std::size_t{256} << 20) : group_(&group) {
    const auto& weyl = group.weyl();
    const auto& rs = weyl.roots();
    P_ = rs.num_positive();
    std::size_t N = group.size();
    std::size_t table_bytes = N * static_cast<std::size_t>(rs.rank() + 1) * sizeof(int);
    budget_ = std::max<std::size_t>(1, cache_bytes / table_bytes);
    step_.assign(N * static_cast<std::size_t>(P_), -1);
    kind_.assign(N * static_cast<std::size_t>(P_), 0);
    for (std::size_t w = 0; w < N; ++w) {
      const WeylElem& x = group.at(static_cast<int>(w));
      for (int r = 0; r < P_; ++r) {
        const Root& beta = rs.root(r);
        WeylElem y = weyl.right_reflect(x, beta);
        std::size_t slot = w * static_cast<std::size_t>(P_) + static_cast<std::size_t>(r);
        if (y.length() == x.length() + 1) kind_[slot] = 1;
        else if (y.length() == x.length() + 1 - 2 * beta.coheight) kind_[slot] = 2;
        step_[slot] = group.index_of(y);
      }
    }
  }

  const FullGroup& group() const { return *group_; }
  const Weyl& weyl() const { return group_->weyl(); }
  int num_roots() const { return P_; }

  /// Index of w s_beta.
  int step(int w, int r) const { return step_[slot(w, r)]; }
  std::optional<EdgeKind> kind(int w, int r) const {
    auto k = kind_[slot(w, r)];
    if (k == 0) return std::nullopt;
    return k == 1 ? EdgeKind::Bruhat : EdgeKind::Quantum;
  }

  /// BFS over reversed edges from v; cached.
  std::shared_ptr<const DistTable> dist_table(int v) const {
    {
      std::lock_guard<std::mutex> lock(mu_);
      for (auto it = lru_.begin(); it != lru_.end(); ++it) {
        if ((*it)->target == v) {
          auto t = *it;
          lru_.erase(it);
          lru_.push_front(t);
          return t;
        }
      }
    }
    auto t = build_table(v);
    std::lock_guard<std::mutex> lock(mu_);
    lru_.push_front(t);
    while (lru_.size() > budget_) lru_.pop_back();
    return t;
  }

  std::shared_ptr<const DistTable> dist_table(const WeylElem& v) const { return dist_table(group_->index_of(v)); }

  int distance(const WeylElem& x, const WeylElem& y) const {
    return dist_table(y)->dist[static_cast<std::size_t>(group_->index_of(x))];
  }
  CorootVec path_weight(const WeylElem& x, const WeylElem& y) const {
    return dist_table(y)->weight(group_->index_of(x));
  }

  /// The unique label-increasing path from x to y, reconstructed greedily from the distance table.
  QBGPath label_increasing_path(const WeylElem& x, const WeylElem& y, const ReflectionOrder& ord) const {
    auto table = dist_table(y);
    int cur = group_->index_of(x);
    int goal = table->target;
    QBGPath path;
    path.vertices.push_back(group_->at(cur));
    int last = -1;
    while (cur != goal) {
      int d = table->dist[static_cast<std::size_t>(cur)];
      int chosen = -1;
      for (int p = last + 1; p < P_; ++p) {
        int r = ord.at(p);
        if (kind_[slot(cur, r)] == 0) continue;
        if (table->dist[static_cast<std::size_t>(step(cur, r))] == d - 1) {
          chosen = p;
          break;
        }
      }
      check_invariant(chosen >= 0, "no label-increasing continuation towards the target");
      int r = ord.at(chosen);
      path.labels.push_back(r);
      path.kinds.push_back(*kind(cur, r));
      cur = step(cur, r);
      path.vertices.push_back(group_->at(cur));
      last = chosen;
    }
    return path;
  }

  /// Maximum of u W_J under the dual v-tilted order, read off the label-increasing path
  /// from floor(u) to v for a J-compatible order: the vertex where labels leave Delta^+_J.
  WeylElem tilted_max(const WeylElem& u, const ParabolicSubset& J, const WeylElem& v,
                      const ReflectionOrder& ord) const {
    const auto& weyl = group_->weyl();
    if (!ord.is_j_compatible(weyl.roots(), J)) throw Error("tilted_max needs a J-compatible reflection order");
    QBGPath p = label_increasing_path(weyl.min_rep(u, J), v, ord);
    std::size_t i = 0;
    while (i < p.labels.size() && ReflectionOrder::in_subsystem(weyl.roots().root(p.labels[i]), J)) ++i;
    return p.vertices[i];
  }

  WeylElem tilted_max(const WeylElem& u, const ParabolicSubset& J, const WeylElem& v) const {
    return tilted_max(u, J, v, ReflectionOrder::j_compatible(group_->weyl(), J));
  }

  /// DOT rendering of the edges between lengths lo..hi.
  std::string to_dot(int lo, int hi) const {
    const auto& weyl = group_->weyl();
    std::ostringstream os;
    os << "digraph QBG {\n";
    for (std::size_t w = 0; w < group_->size(); ++w) {
      const auto& x = group_->at(static_cast<int>(w));
      if (x.length() < lo || x.length() > hi) continue;
      for (int r = 0; r < P_; ++r) {
        auto k = kind(static_cast<int>(w), r);
        if (!k) continue;
        const auto& y = group_->at(step(static_cast<int>(w), r));
        if (y.length() < lo || y.length() > hi) continue;
        os << "  \"" << weyl.word_string(x) << "\" -> \"" << weyl.word_string(y) << "\" [label=\""
           << RootSystem::format_root(weyl.roots().root(r).coeffs) << ' ' << kind_name(*k) << "\"];\n";
      }
    }
    os << "}\n";
    return os.str();
  }

 private:
  std::size_t slot(int w, int r) const {
    return static_cast<std::size_t>(w) * static_cast<std::size_t>(P_) + static_cast<std::size_t>(r);
  }

  std::shared_ptr<const DistTable> build_table(int v) const {
    const auto& rs = group_->weyl().roots();
    int n = rs.rank();
    std::size_t N = group_->size();
    auto t = std::make_shared<DistTable>();
    t->target = v;
    t->rank = n;
    t->dist.assign(N, -1);
    t->wt.assign(N * static_cast<std::size_t>(n), 0);
    std::vector<int> queue{v};
    t->dist[static_cast<std::size_t>(v)] = 0;
    for (std::size_t q = 0; q < queue.size(); ++q) {
      int w = queue[q];
      for (int r = 0; r < P_; ++r) {
        int u = step(w, r);  // candidate edge u -> w with label beta_r
        auto k = kind_[slot(u, r)];
        if (k == 0) continue;
        int du = t->dist[static_cast<std::size_t>(w)] + 1;
        auto& cur = t->dist[static_cast<std::size_t>(u)];
        const auto& cor = rs.root(r).coroot;
        auto wb = static_cast<std::size_t>(w) * static_cast<std::size_t>(n);
        auto ub = static_cast<std::size_t>(u) * static_cast<std::size_t>(n);
        if (cur < 0) {
          cur = du;
          for (int i = 0; i < n; ++i)
            t->wt[ub + static_cast<std::size_t>(i)] =
                t->wt[wb + static_cast<std::size_t>(i)] + (k == 2 ? cor[static_cast<std::size_t>(i)] : 0);
          queue.push_back(u);
        } else if (cur == du) {
          for (int i = 0; i < n; ++i) {
            int alt = t->wt[wb + static_cast<std::size_t>(i)] + (k == 2 ? cor[static_cast<std::size_t>(i)] : 0);
            check_invariant(alt == t->wt[ub + static_cast<std::size_t>(i)], "shortest paths with different weights");
          }
        }
      }
    }
    for (int d : t->dist) check_invariant(d >= 0, "QBG is not strongly connected");
    return t;
  }

  const FullGroup* group_;
  int P_ = 0;
  std::vector<int> step_;
  std::vector<std::uint8_t> kind_;
  std::size_t budget_ = 1;
  mutable std::mutex mu_;
  mutable std::list<std::shared_ptr<const DistTable>> lru_;
};

enum class DLCase { BruhatLift, Parallel };

struct EdgeTransform {
  DLCase which;
  WeylElem from;
  WeylElem to;
  int label;
  EdgeKind kind;
};

/// Transforms an edge u -beta-> w under s_j according to the sign pattern of w^{-1} alpha_j, u^{-1} alpha_j.
inline EdgeTransform edge_transform(const Weyl& weyl, const WeylElem& u, const WeylElem& w, const Root& beta, int j) {
  auto k = edge_kind(weyl, u, beta);
  if (!k || !(weyl.right_reflect(u, beta) == w)) throw Error("edge_transform: u -> w is not an edge with this label");
  bool w_neg = weyl.left_descent(w, j);  // w^{-1} alpha_j < 0
  bool u_neg = weyl.left_descent(u, j);
  if (w_neg && !u_neg) {
    check_invariant(*k == EdgeKind::Bruhat, "edge is not Bruhat");
    check_invariant(weyl.act_root(weyl.inverse(u), weyl.roots().simple(j)) == beta.index + 1,
                    "label is not u^{-1} alpha_j");
    check_invariant(weyl.left_simple(j, u) == w, "w is not s_j u");
    return {DLCase::BruhatLift, u, w, beta.index, *k};
  }
  if (w_neg == u_neg) {
    WeylElem a = weyl.left_simple(j, u), b = weyl.left_simple(j, w);
    auto k2 = edge_kind(weyl, a, beta);
    check_invariant(k2.has_value() && weyl.right_reflect(a, beta) == b, "no parallel edge");
    check_invariant(*k2 == *k, "parallel edge changes kind");
    return {DLCase::Parallel, a, b, beta.index, *k2};
  }
  throw Error("edge_transform: sign pattern w^{-1} alpha_j > 0, u^{-1} alpha_j < 0 is not covered");
}

}  // namespace qkchev
