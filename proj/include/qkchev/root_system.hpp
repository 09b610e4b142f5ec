#pragma once

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace qkchev {

/// Error raised for invalid user input (bad type, bad word, non-minuscule node, ...).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an internal invariant fails; indicates a bug, not bad input.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void check_invariant(bool ok, const std::string& what) {
  if (!ok) throw InvariantError(what);
}

struct VecHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (int x : v) {
      h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(x)) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

enum class Family { A, B, D, E };

inline char family_char(Family f) {
  switch (f) {
    case Family::A: return 'A';
    case Family::B: return 'B';
    case Family::D: return 'D';
    case Family::E: return 'E';
  }
  return '?';
}

struct LieType {
  Family family = Family::A;
  int rank = 1;

  static LieType make(Family f, int n) {
    LieType t{f, n};
    t.validate();
    return t;
  }

  /// Parses a family letter ("A", "b", ...) together with a rank.
  static LieType parse(const std::string& family, int n) {
    std::string f = family;
    for (auto& c : f) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    const std::string allowed = "supported types are A_n (n>=1), B_n (n>=2), D_n (n>=3), E_6, E_7";
    if (f == "A") return make(Family::A, n);
    if (f == "B") return make(Family::B, n);
    if (f == "D") return make(Family::D, n);
    if (f == "E") return make(Family::E, n);
    throw Error("unsupported type '" + family + "'; " + allowed);
  }

  void validate() const {
    const std::string allowed = "supported types are A_n (n>=1), B_n (n>=2), D_n (n>=3), E_6, E_7";
    bool ok = false;
    switch (family) {
      case Family::A: ok = rank >= 1; break;
      case Family::B: ok = rank >= 2; break;
      case Family::D: ok = rank >= 3; break;
      case Family::E: ok = rank == 6 || rank == 7; break;
    }
    if (!ok) throw Error("unsupported type " + name() + "; " + allowed);
  }

  bool simply_laced() const { return family != Family::B; }

  std::string name() const { return std::string(1, family_char(family)) + std::to_string(rank); }

  auto operator<=>(const LieType&) const = default;
};

/// Integer vector over the fundamental weights.
struct Weight {
  std::vector<int> coeffs;

  Weight() = default;
  explicit Weight(std::vector<int> c) : coeffs(std::move(c)) {}
  static Weight zero(int n) { return Weight(std::vector<int>(static_cast<std::size_t>(n), 0)); }
  static Weight fundamental(int n, int i) {
    Weight w = zero(n);
    w.coeffs.at(static_cast<std::size_t>(i - 1)) = 1;
    return w;
  }

  int rank() const { return static_cast<int>(coeffs.size()); }
  bool dominant() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](int c) { return c >= 0; });
  }
  bool is_zero() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](int c) { return c == 0; });
  }
  int operator[](int i) const { return coeffs[static_cast<std::size_t>(i)]; }

  Weight& operator+=(const Weight& o) {
    if (o.coeffs.size() != coeffs.size()) throw Error("weights of different rank");
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
    return *this;
  }
  Weight& operator-=(const Weight& o) {
    if (o.coeffs.size() != coeffs.size()) throw Error("weights of different rank");
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] -= o.coeffs[i];
    return *this;
  }
  friend Weight operator+(Weight a, const Weight& b) { return a += b; }
  friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
  bool operator==(const Weight&) const = default;
  friend Weight operator-(Weight a) {
    for (auto& c : a.coeffs) c = -c;
    return a;
  }
  friend Weight operator*(int s, Weight a) {
    for (auto& c : a.coeffs) c *= s;
    return a;
  }
  auto operator<=>(const Weight&) const = default;
};

/// Integer vector over the simple coroots.
struct CorootVec {
  std::vector<int> coeffs;

  CorootVec() = default;
  explicit CorootVec(std::vector<int> c) : coeffs(std::move(c)) {}
  static CorootVec zero(int n) { return CorootVec(std::vector<int>(static_cast<std::size_t>(n), 0)); }

  int rank() const { return static_cast<int>(coeffs.size()); }
  bool is_zero() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](int c) { return c == 0; });
  }
  int operator[](int i) const { return coeffs[static_cast<std::size_t>(i)]; }

  CorootVec& operator+=(const CorootVec& o) {
    if (o.coeffs.size() != coeffs.size()) throw Error("coroot vectors of different rank");
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
    return *this;
  }
  friend CorootVec operator+(CorootVec a, const CorootVec& b) { return a += b; }
  bool operator==(const CorootVec&) const = default;
  auto operator<=>(const CorootVec&) const = default;
};

/// A positive root, with its data precomputed at build time.
struct Root {
  int index = -1;                 // position in RootSystem::positive_roots()
  std::vector<int> coeffs;        // over simple roots
  std::vector<int> weight;        // same root over fundamental weights
  std::vector<int> coroot;        // beta^vee over simple coroots
  int height = 0;
  int coheight = 0;               // <rho, beta^vee>
  bool is_long = true;

  bool operator==(const Root& o) const { return coeffs == o.coeffs; }
};

/// Immutable root datum of a finite type. Nodes are 1-based in the public API.
class RootSystem {
 public:
  explicit RootSystem(LieType t) : type_(t) {
    type_.validate();
    n_ = t.rank;
    build_cartan();
    build_roots();
  }

  static RootSystem build(LieType t) { return RootSystem(t); }

  const LieType& type() const { return type_; }
  int rank() const { return n_; }

  /// a_{ij} = <alpha_j, alpha_i^vee>, nodes 1-based.
  int cartan(int i, int j) const { return a_[idx(i - 1, j - 1)]; }

  const std::vector<Root>& positive_roots() const { return roots_; }
  int num_positive() const { return static_cast<int>(roots_.size()); }
  const Root& root(int index) const { return roots_.at(static_cast<std::size_t>(index)); }
  const Root& simple(int i) const { return roots_.at(static_cast<std::size_t>(i - 1)); }
  const Root& highest_root() const { return roots_.at(static_cast<std::size_t>(highest_)); }

  /// Signed lookup of a root given in weight coordinates: +(idx+1), -(idx+1), or 0 if not a root.
  int lookup_weight(const std::vector<int>& wt) const {
    auto it = by_weight_.find(wt);
    return it == by_weight_.end() ? 0 : it->second;
  }

  /// Index of a positive root given in simple-root coordinates, or -1.
  int find_root(const std::vector<int>& coeffs) const {
    for (const auto& r : roots_)
      if (r.coeffs == coeffs) return r.index;
    return -1;
  }

  const Root& root_from_coeffs(const std::vector<int>& coeffs) const {
    int i = find_root(coeffs);
    if (i < 0) throw Error("not a positive root: " + format_coeffs(coeffs));
    return roots_[static_cast<std::size_t>(i)];
  }

  /// Converts simple-root coordinates to weight coordinates.
  std::vector<int> to_weight(const std::vector<int>& coeffs) const {
    std::vector<int> out(static_cast<std::size_t>(n_), 0);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) out[static_cast<std::size_t>(i)] += a_[idx(i, j)] * coeffs[static_cast<std::size_t>(j)];
    return out;
  }

  Weight root_weight(const Root& r) const { return Weight(r.weight); }
  Weight rho() const { return Weight(std::vector<int>(static_cast<std::size_t>(n_), 1)); }
  Weight fundamental(int i) const { return Weight::fundamental(n_, i); }
  CorootVec simple_coroot(int i) const {
    CorootVec c = CorootVec::zero(n_);
    c.coeffs.at(static_cast<std::size_t>(i - 1)) = 1;
    return c;
  }
  CorootVec coroot(const Root& r) const { return CorootVec(r.coroot); }

  /// 2 * rho^vee over simple coroots; pairing a root with it is positive iff the root is positive.
  const std::vector<int>& two_rho_vee() const { return two_rho_vee_; }

  int pair(const Weight& lambda, const CorootVec& xi) const {
    check_rank(lambda.rank(), "weight");
    check_rank(xi.rank(), "coroot vector");
    int s = 0;
    for (int i = 0; i < n_; ++i) s += lambda[i] * xi[i];
    return s;
  }
  int pair(const Weight& lambda, const Root& beta) const { return pair(lambda, coroot(beta)); }
  int pair(const Root& alpha, const Root& beta) const { return pair(root_weight(alpha), coroot(beta)); }
  int pair(const Root& alpha, const CorootVec& xi) const { return pair(root_weight(alpha), xi); }

  /// Nodes k with <varpi_k, beta^vee> <= 1 for every positive root.
  std::vector<int> minuscule_nodes() const {
    std::vector<int> out;
    for (int k = 1; k <= n_; ++k) {
      bool ok = std::all_of(roots_.begin(), roots_.end(),
                            [&](const Root& r) { return r.coroot[static_cast<std::size_t>(k - 1)] <= 1; });
      if (ok) out.push_back(k);
    }
    return out;
  }

  bool is_minuscule(int k) const {
    auto m = minuscule_nodes();
    return std::find(m.begin(), m.end(), k) != m.end();
  }

  /// Throws with the list of valid nodes when k is not minuscule.
  void require_minuscule(int k) const {
    if (is_minuscule(k)) return;
    std::ostringstream os;
    os << "k=" << k << " is not a minuscule node of " << type_.name() << "; valid k:";
    for (int m : minuscule_nodes()) os << ' ' << m;
    throw Error(os.str());
  }

  static std::string format_coeffs(const std::vector<int>& c) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? " " : "") << c[i];
    os << ']';
    return os.str();
  }

  /// Renders a root such as "a1+2a2".
  static std::string format_root(const std::vector<int>& c) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c.size(); ++i) {
      int v = c[i];
      if (v == 0) continue;
      if (v < 0) os << '-';
      else if (!first) os << '+';
      if (std::abs(v) != 1) os << std::abs(v);
      os << 'a' << (i + 1);
      first = false;
    }
    if (first) os << '0';
    return os.str();
  }

  /// Renders a weight such as "w1-w3".
  static std::string format_weight(const std::vector<int>& c) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c.size(); ++i) {
      int v = c[i];
      if (v == 0) continue;
      if (v < 0) os << '-';
      else if (!first) os << '+';
      if (std::abs(v) != 1) os << std::abs(v) << '*';
      os << 'w' << (i + 1);
      first = false;
    }
    if (first) os << '0';
    return os.str();
  }

 private:
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i * n_ + j); }

  void check_rank(int r, const char* what) const {
    if (r != n_) throw Error(std::string("mismatched root systems: ") + what + " of rank " + std::to_string(r) +
                             " used with " + type_.name());
  }

  void link(int i, int j) {  // 1-based simple edge
    a_[idx(i - 1, j - 1)] = -1;
    a_[idx(j - 1, i - 1)] = -1;
  }

  void build_cartan() {
    a_.assign(static_cast<std::size_t>(n_ * n_), 0);
    sqlen_.assign(static_cast<std::size_t>(n_), 2);
    for (int i = 0; i < n_; ++i) a_[idx(i, i)] = 2;
    switch (type_.family) {
      case Family::A:
        for (int i = 1; i < n_; ++i) link(i, i + 1);
        break;
      case Family::B:
        for (int i = 1; i < n_; ++i) link(i, i + 1);
        a_[idx(n_ - 1, n_ - 2)] = -2;  // <alpha_{n-1}, alpha_n^vee>
        sqlen_[static_cast<std::size_t>(n_ - 1)] = 1;
        break;
      case Family::D:
        for (int i = 1; i < n_ - 1; ++i) link(i, i + 1);
        link(n_ - 2, n_);
        break;
      case Family::E:
        link(1, 3);
        link(3, 4);
        link(4, 5);
        link(5, 6);
        link(2, 4);
        if (n_ == 7) link(6, 7);
        break;
    }
  }

  // (beta, beta) with long roots of squared length 2.
  int sq_length(const std::vector<int>& c) const {
    int twice = 0;
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        twice += c[static_cast<std::size_t>(i)] * c[static_cast<std::size_t>(j)] * a_[idx(i, j)] * sqlen_[static_cast<std::size_t>(i)];
    return twice / 2;
  }

  void build_roots() {
    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> queue;
    for (int i = 0; i < n_; ++i) {
      std::vector<int> e(static_cast<std::size_t>(n_), 0);
      e[static_cast<std::size_t>(i)] = 1;
      seen.insert(e);
      queue.push_back(e);
    }
    for (std::size_t q = 0; q < queue.size(); ++q) {
      const auto beta = queue[q];
      for (int i = 0; i < n_; ++i) {
        int p = 0;
        for (int j = 0; j < n_; ++j) p += a_[idx(i, j)] * beta[static_cast<std::size_t>(j)];
        auto img = beta;
        img[static_cast<std::size_t>(i)] -= p;
        bool positive = std::all_of(img.begin(), img.end(), [](int c) { return c >= 0; });
        bool negative = std::all_of(img.begin(), img.end(), [](int c) { return c <= 0; });
        check_invariant(positive || negative, "simple reflection of a root is not a root");
        if (positive && seen.insert(img).second) queue.push_back(img);
      }
    }
    std::vector<std::vector<int>> list(seen.begin(), seen.end());
    auto height = [](const std::vector<int>& c) {
      int h = 0;
      for (int x : c) h += x;
      return h;
    };
    std::sort(list.begin(), list.end(), [&](const auto& a, const auto& b) {
      int ha = height(a), hb = height(b);
      if (ha != hb) return ha < hb;
      return a > b;  // alpha_1 before alpha_2 at equal height
    });
    roots_.clear();
    two_rho_vee_.assign(static_cast<std::size_t>(n_), 0);
    for (std::size_t r = 0; r < list.size(); ++r) {
      Root root;
      root.index = static_cast<int>(r);
      root.coeffs = list[r];
      root.weight = to_weight(root.coeffs);
      root.height = height(root.coeffs);
      int len = sq_length(root.coeffs);
      check_invariant(len == 1 || len == 2, "unexpected root length");
      root.is_long = len == 2;
      root.coroot.assign(static_cast<std::size_t>(n_), 0);
      for (int j = 0; j < n_; ++j) {
        int num = root.coeffs[static_cast<std::size_t>(j)] * sqlen_[static_cast<std::size_t>(j)];
        check_invariant(num % len == 0, "non-integral coroot");
        root.coroot[static_cast<std::size_t>(j)] = num / len;
        root.coheight += num / len;
        two_rho_vee_[static_cast<std::size_t>(j)] += num / len;
      }
      roots_.push_back(root);
    }
    highest_ = static_cast<int>(roots_.size()) - 1;
    by_weight_.clear();
    for (const auto& r : roots_) {
      by_weight_[r.weight] = r.index + 1;
      std::vector<int> neg = r.weight;
      for (auto& c : neg) c = -c;
      by_weight_[neg] = -(r.index + 1);
    }
  }

  LieType type_;
  int n_ = 0;
  std::vector<int> a_;
  std::vector<int> sqlen_;
  std::vector<Root> roots_;
  std::vector<int> two_rho_vee_;
  int highest_ = 0;
  std::unordered_map<std::vector<int>, int, VecHash> by_weight_;
};

}  // namespace qkchev
