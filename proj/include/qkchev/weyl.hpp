#pragma once

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <deque>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "qkchev/root_system.hpp"

namespace qkchev {

/// Element of W, stored as its integer action matrix on weight coordinates (row-major).
/// Equality is equality of the action.
class WeylElem {
 public:
  WeylElem() = default;
  WeylElem(std::vector<int> matrix, int length) : m_(std::move(matrix)), len_(length) {}

  const std::vector<int>& matrix() const { return m_; }
  int length() const { return len_; }
  bool is_identity() const { return len_ == 0; }

  bool operator==(const WeylElem& o) const { return m_ == o.m_; }

 private:
  std::vector<int> m_;
  int len_ = 0;
};

struct WeylElemHash {
  std::size_t operator()(const WeylElem& w) const noexcept { return VecHash{}(w.matrix()); }
};

template <class V>
using ElemMap = std::unordered_map<WeylElem, V, WeylElemHash>;
using ElemSet = std::unordered_set<WeylElem, WeylElemHash>;

/// A subset J of the Dynkin nodes (1-based).
class ParabolicSubset {
 public:
  ParabolicSubset() = default;
  ParabolicSubset(int rank, const std::vector<int>& nodes) : in_(static_cast<std::size_t>(rank), false) {
    for (int j : nodes) {
      if (j < 1 || j > rank) throw Error("node " + std::to_string(j) + " out of range");
      in_[static_cast<std::size_t>(j - 1)] = true;
    }
  }
  /// J = I \ {k}.
  static ParabolicSubset complement_of(int rank, int k) {
    if (k < 1 || k > rank) throw Error("node " + std::to_string(k) + " out of range");
    ParabolicSubset p;
    p.in_.assign(static_cast<std::size_t>(rank), true);
    p.in_[static_cast<std::size_t>(k - 1)] = false;
    return p;
  }
  static ParabolicSubset empty(int rank) { return ParabolicSubset(rank, {}); }

  bool contains(int j) const { return in_.at(static_cast<std::size_t>(j - 1)); }
  int rank() const { return static_cast<int>(in_.size()); }
  std::vector<int> nodes() const {
    std::vector<int> out;
    for (int j = 1; j <= rank(); ++j)
      if (contains(j)) out.push_back(j);
    return out;
  }
  /// The single node outside J, or 0 if there is not exactly one.
  int complement_node() const {
    int found = 0;
    for (int j = 1; j <= rank(); ++j) {
      if (!contains(j)) {
        if (found) return 0;
        found = j;
      }
    }
    return found;
  }
  bool operator==(const ParabolicSubset&) const = default;

 private:
  std::vector<bool> in_;
};

using Word = std::vector<int>;

inline std::string format_word(const Word& w) {
  std::ostringstream os;
  for (std::size_t i = 0; i < w.size(); ++i) os << (i ? " " : "") << w[i];
  return os.str();
}

/// Parses "1 4 3 2", "1,4,3" or "e"/"" (identity). Errors carry the 1-based character position.
inline Word parse_word(const std::string& text, int rank) {
  Word out;
  std::size_t i = 0;
  auto trimmed = text;
  trimmed.erase(0, trimmed.find_first_not_of(" \t"));
  trimmed.erase(trimmed.find_last_not_of(" \t") + 1);
  if (trimmed == "e" || trimmed.empty()) return out;
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == ',' || c == '\t') {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (c == 's' && i + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[i + 1]))) ++i;
    std::size_t digits = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == digits || (i < text.size() && text[i] != ' ' && text[i] != ',' && text[i] != '\t')) {
      throw Error("bad word '" + text + "': unexpected character at position " + std::to_string(i + 1));
    }
    int v = std::stoi(text.substr(digits, i - digits));
    if (v < 1 || v > rank) {
      throw Error("bad word '" + text + "': letter " + std::to_string(v) + " at position " +
                  std::to_string(start + 1) + " is not a node 1.." + std::to_string(rank));
    }
    out.push_back(v);
  }
  return out;
}

/// Weyl group arithmetic for one root system.
class Weyl {
 public:
  explicit Weyl(LieType t) : rs_(t), n_(t.rank) {}

  const RootSystem& roots() const { return rs_; }
  int rank() const { return n_; }

  WeylElem identity() const {
    std::vector<int> m(static_cast<std::size_t>(n_ * n_), 0);
    for (int i = 0; i < n_; ++i) m[at(i, i)] = 1;
    return WeylElem(std::move(m), 0);
  }

  WeylElem simple(int i) const { return left_simple(i, identity()); }

  /// s_i w.
  WeylElem left_simple(int i, const WeylElem& w) const {
    const auto& a = rs_.simple(i).weight;
    auto m = w.matrix();
    const auto& src = w.matrix();
    int r0 = i - 1;
    int pair = 0;
    for (int c = 0; c < n_; ++c) pair += src[at(r0, c)];  // (w rho)_i
    for (int r = 0; r < n_; ++r) {
      if (a[static_cast<std::size_t>(r)] == 0) continue;
      for (int c = 0; c < n_; ++c) m[at(r, c)] -= a[static_cast<std::size_t>(r)] * src[at(r0, c)];
    }
    return WeylElem(std::move(m), w.length() + (pair > 0 ? 1 : -1));
  }

  /// w s_i.
  WeylElem right_simple(const WeylElem& w, int i) const {
    auto img = apply_matrix(w, rs_.simple(i).weight);
    bool up = is_positive_weight_root(img);
    auto m = w.matrix();
    for (int r = 0; r < n_; ++r) m[at(r, i - 1)] -= img[static_cast<std::size_t>(r)];
    return WeylElem(std::move(m), w.length() + (up ? 1 : -1));
  }

  /// w s_beta for a positive root beta.
  WeylElem right_reflect(const WeylElem& w, const Root& beta) const {
    auto img = apply_matrix(w, beta.weight);
    auto m = w.matrix();
    for (int r = 0; r < n_; ++r) {
      int x = img[static_cast<std::size_t>(r)];
      if (x == 0) continue;
      for (int c = 0; c < n_; ++c) m[at(r, c)] -= x * beta.coroot[static_cast<std::size_t>(c)];
    }
    int len = length_of_matrix(m);
    return WeylElem(std::move(m), len);
  }

  /// Length of w s_beta without building the element.
  int length_after_reflect(const WeylElem& w, const Root& beta) const {
    auto rho = rho_image(w);
    auto img = apply_matrix(w, beta.weight);
    int shift = beta.coheight;  // <rho, beta^vee>
    for (int r = 0; r < n_; ++r) rho[static_cast<std::size_t>(r)] -= shift * img[static_cast<std::size_t>(r)];
    return length_of_rho_image(rho);
  }

  WeylElem reflection(const Root& beta) const { return right_reflect(identity(), beta); }

  WeylElem reflection_of(const std::vector<int>& coeffs) const {
    return reflection(rs_.root_from_coeffs(coeffs));
  }

  WeylElem mul(const WeylElem& u, const WeylElem& w) const {
    std::vector<int> m(static_cast<std::size_t>(n_ * n_), 0);
    const auto& a = u.matrix();
    const auto& b = w.matrix();
    for (int r = 0; r < n_; ++r)
      for (int k = 0; k < n_; ++k) {
        int x = a[at(r, k)];
        if (x == 0) continue;
        for (int c = 0; c < n_; ++c) m[at(r, c)] += x * b[at(k, c)];
      }
    int len = length_of_matrix(m);
    return WeylElem(std::move(m), len);
  }

  WeylElem inverse(const WeylElem& w) const {
    auto word = reduced_word(w);
    std::reverse(word.begin(), word.end());
    return from_word(word);
  }

  /// Product s_{w[0]} s_{w[1]} ... ; the word need not be reduced.
  WeylElem from_word(const Word& word) const {
    WeylElem w = identity();
    for (int i : word) {
      if (i < 1 || i > n_) throw Error("letter " + std::to_string(i) + " is not a node of " + rs_.type().name());
      w = right_simple(w, i);
    }
    return w;
  }

  WeylElem parse(const std::string& text) const { return from_word(parse_word(text, n_)); }

  bool is_reduced(const Word& word) const { return from_word(word).length() == static_cast<int>(word.size()); }

  /// Lex-least reduced word, obtained by always peeling the least left descent.
  Word reduced_word(const WeylElem& w) const {
    Word out;
    auto v = rho_image(w);
    for (;;) {
      int i = first_negative(v);
      if (i < 0) break;
      out.push_back(i + 1);
      reflect_vector(v, i + 1);
    }
    check_invariant(static_cast<int>(out.size()) == w.length(), "reduced word length mismatch");
    return out;
  }

  std::string word_string(const WeylElem& w) const { return format_word(reduced_word(w)); }

  /// Sort key (length, lex-least word).
  bool word_less(const WeylElem& a, const WeylElem& b) const {
    if (a.length() != b.length()) return a.length() < b.length();
    return reduced_word(a) < reduced_word(b);
  }

  void sort_elements(std::vector<WeylElem>& v) const {
    std::vector<std::pair<Word, std::size_t>> keyed;
    keyed.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) keyed.emplace_back(reduced_word(v[i]), i);
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
      if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
      return a.first < b.first;
    });
    std::vector<WeylElem> out;
    out.reserve(v.size());
    for (auto& k : keyed) out.push_back(v[k.second]);
    v = std::move(out);
  }

  Weight act(const WeylElem& w, const Weight& lambda) const {
    if (lambda.rank() != n_) throw Error("mismatched root systems: weight of rank " + std::to_string(lambda.rank()));
    return Weight(apply_matrix(w, lambda.coeffs));
  }

  /// w beta as a signed root index: +(idx+1) for a positive image, -(idx+1) for a negative one.
  int act_root(const WeylElem& w, const Root& beta) const {
    int s = rs_.lookup_weight(apply_matrix(w, beta.weight));
    check_invariant(s != 0, "image of a root is not a root");
    return s;
  }

  bool sends_positive(const WeylElem& w, const Root& beta) const {
    return is_positive_weight_root(apply_matrix(w, beta.weight));
  }

  bool left_descent(const WeylElem& w, int i) const {
    const auto& m = w.matrix();
    int s = 0;
    for (int c = 0; c < n_; ++c) s += m[at(i - 1, c)];
    return s < 0;
  }

  bool right_descent(const WeylElem& w, int i) const { return !sends_positive(w, rs_.simple(i)); }

  /// Inv(w) = { alpha > 0 : w alpha < 0 }, as root indices.
  std::vector<int> inversion_set(const WeylElem& w) const {
    std::vector<int> out;
    for (const auto& r : rs_.positive_roots())
      if (!sends_positive(w, r)) out.push_back(r.index);
    return out;
  }

  /// u <= w in Bruhat order, by repeated lifting along left descents of w.
  bool bruhat_leq(const WeylElem& u, const WeylElem& w) const {
    int lu = u.length(), lw = w.length();
    if (lu > lw) return false;
    auto a = rho_image(u), b = rho_image(w);
    while (lw > 0) {
      if (lu == 0) return true;
      if (lu > lw) return false;
      if (lu == lw) return a == b;
      int i = first_negative(b);
      reflect_vector(b, i + 1);
      --lw;
      if (a[static_cast<std::size_t>(i)] < 0) {
        reflect_vector(a, i + 1);
        --lu;
      }
    }
    return lu == 0;
  }

  bool in_WJ(const WeylElem& w, const ParabolicSubset& J) const {
    for (int j : J.nodes())
      if (right_descent(w, j)) return false;
    return true;
  }

  bool in_subgroup(const WeylElem& w, const ParabolicSubset& J) const {
    for (int i : reduced_word(w))
      if (!J.contains(i)) return false;
    return true;
  }

  /// Minimal-length representative of w W_J.
  WeylElem min_rep(WeylElem w, const ParabolicSubset& J) const {
    auto nodes = J.nodes();
    for (bool again = true; again;) {
      again = false;
      for (int j : nodes) {
        if (right_descent(w, j)) {
          w = right_simple(w, j);
          again = true;
        }
      }
    }
    return w;
  }

  /// Zeroes the coordinates of xi indexed by J.
  CorootVec coroot_project(const CorootVec& xi, const ParabolicSubset& J) const {
    if (xi.rank() != n_) throw Error("mismatched root systems: coroot vector of rank " + std::to_string(xi.rank()));
    CorootVec out = xi;
    for (int j : J.nodes()) out.coeffs[static_cast<std::size_t>(j - 1)] = 0;
    return out;
  }

  /// W^J sorted by (length, lex word), generated by left multiplication from e.
  std::vector<WeylElem> enumerate_WJ(const ParabolicSubset& J) const {
    int k = J.complement_node();
    std::vector<WeylElem> out{identity()};
    ElemSet seen{identity()};
    for (std::size_t q = 0; q < out.size(); ++q) {
      WeylElem w = out[q];
      for (int j = 1; j <= n_; ++j) {
        bool grow;
        if (k) {
          grow = w.matrix()[at(j - 1, k - 1)] > 0;  // <w varpi_k, alpha_j^vee> > 0
        } else {
          grow = !left_descent(w, j) && in_WJ(left_simple(j, w), J);
        }
        if (!grow) continue;
        WeylElem v = left_simple(j, w);
        if (seen.insert(v).second) out.push_back(v);
      }
    }
    sort_elements(out);
    return out;
  }

  /// The parabolic subgroup W_J.
  std::vector<WeylElem> enumerate_subgroup(const ParabolicSubset& J) const {
    std::vector<WeylElem> out{identity()};
    ElemSet seen{identity()};
    auto nodes = J.nodes();
    for (std::size_t q = 0; q < out.size(); ++q) {
      WeylElem w = out[q];
      for (int j : nodes) {
        WeylElem v = right_simple(w, j);
        if (seen.insert(v).second) out.push_back(v);
      }
    }
    sort_elements(out);
    return out;
  }

  WeylElem longest() const { return longest_in(ParabolicSubset(n_, all_nodes())); }

  /// Longest element of W_J.
  WeylElem longest_in(const ParabolicSubset& J) const {
    WeylElem w = identity();
    auto nodes = J.nodes();
    for (bool again = true; again;) {
      again = false;
      for (int j : nodes) {
        if (!left_descent(w, j)) {
          w = left_simple(j, w);
          again = true;
        }
      }
    }
    return w;
  }

  /// y = ytilde * z * s_k with ytilde in W^J, z in W_J, lengths adding up (J = I \ {k}).
  std::pair<WeylElem, WeylElem> factor_minuscule(const WeylElem& y, int k) const {
    auto J = ParabolicSubset::complement_of(n_, k);
    if (y.is_identity()) throw Error("factor_minuscule: y must not be e");
    if (!in_WJ(y, J)) throw Error("factor_minuscule: y = " + word_string(y) + " is not in W^J");
    WeylElem rest = right_simple(y, k);
    check_invariant(rest.length() == y.length() - 1, "s_k is not a right descent of y in W^J");
    WeylElem yt = min_rep(rest, J);
    WeylElem z = mul(inverse(yt), rest);
    check_invariant(yt.length() + z.length() + 1 == y.length(), "factorization is not length additive");
    return {yt, z};
  }

  /// Type B_n, J = I \ {n}: y = xtilde * w * s_n s_{n-1} s_n with xtilde in W^J, w in W_J.
  std::pair<WeylElem, WeylElem> factor_minuscule_B(const WeylElem& y) const {
    if (rs_.type().family != Family::B) throw Error("factor_minuscule_B requires type B");
    auto J = ParabolicSubset::complement_of(n_, n_);
    if (!in_WJ(y, J)) throw Error("factor_minuscule_B: y = " + word_string(y) + " is not in W^J");
    WeylElem t = from_word({n_, n_ - 1, n_});
    if (!bruhat_leq(t, y)) throw Error("factor_minuscule_B: y = " + word_string(y) + " is not >= s_n s_{n-1} s_n");
    WeylElem rest = mul(y, t);
    check_invariant(rest.length() == y.length() - 3, "s_n s_{n-1} s_n is not a right factor of y");
    WeylElem xt = min_rep(rest, J);
    WeylElem w = mul(inverse(xt), rest);
    check_invariant(xt.length() + w.length() + 3 == y.length(), "factorization is not length additive");
    return {xt, w};
  }

  std::vector<int> rho_image(const WeylElem& w) const {
    std::vector<int> v(static_cast<std::size_t>(n_), 0);
    const auto& m = w.matrix();
    for (int r = 0; r < n_; ++r)
      for (int c = 0; c < n_; ++c) v[static_cast<std::size_t>(r)] += m[at(r, c)];
    return v;
  }

  std::vector<int> apply_matrix(const WeylElem& w, const std::vector<int>& x) const {
    std::vector<int> out(static_cast<std::size_t>(n_), 0);
    const auto& m = w.matrix();
    for (int r = 0; r < n_; ++r) {
      int s = 0;
      for (int c = 0; c < n_; ++c) s += m[at(r, c)] * x[static_cast<std::size_t>(c)];
      out[static_cast<std::size_t>(r)] = s;
    }
    return out;
  }

  /// Sign test for a root given in weight coordinates.
  bool is_positive_weight_root(const std::vector<int>& wt) const {
    const auto& t = rs_.two_rho_vee();
    int s = 0;
    for (int i = 0; i < n_; ++i) s += wt[static_cast<std::size_t>(i)] * t[static_cast<std::size_t>(i)];
    return s > 0;
  }

  std::vector<int> all_nodes() const {
    std::vector<int> v;
    for (int i = 1; i <= n_; ++i) v.push_back(i);
    return v;
  }

 private:
  std::size_t at(int r, int c) const { return static_cast<std::size_t>(r * n_ + c); }

  static int first_negative(const std::vector<int>& v) {
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] < 0) return static_cast<int>(i);
    return -1;
  }

  void reflect_vector(std::vector<int>& v, int i) const {
    const auto& a = rs_.simple(i).weight;
    int p = v[static_cast<std::size_t>(i - 1)];
    for (int r = 0; r < n_; ++r) v[static_cast<std::size_t>(r)] -= p * a[static_cast<std::size_t>(r)];
  }

  // l(w) = #{ gamma > 0 : <w rho, gamma^vee> < 0 }.
  int length_of_rho_image(const std::vector<int>& rho) const {
    int len = 0;
    for (const auto& g : rs_.positive_roots()) {
      int s = 0;
      for (int i = 0; i < n_; ++i) s += rho[static_cast<std::size_t>(i)] * g.coroot[static_cast<std::size_t>(i)];
      if (s < 0) ++len;
    }
    return len;
  }

  int length_of_matrix(const std::vector<int>& m) const {
    std::vector<int> v(static_cast<std::size_t>(n_), 0);
    for (int r = 0; r < n_; ++r)
      for (int c = 0; c < n_; ++c) v[static_cast<std::size_t>(r)] += m[at(r, c)];
    return length_of_rho_image(v);
  }

  RootSystem rs_;
  int n_;
};

/// Default cap on |W| for full enumeration; QBG_GROUP_CAP overrides it.
inline std::size_t group_cap() {
  if (const char* env = std::getenv("QBG_GROUP_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && v > 0) return static_cast<std::size_t>(v);
  }
  return 1000000;
}

inline unsigned long long weyl_order(const LieType& t) {
  unsigned long long f = 1;
  switch (t.family) {
    case Family::A:
      for (int i = 2; i <= t.rank + 1; ++i) f *= static_cast<unsigned long long>(i);
      return f;
    case Family::B:
      for (int i = 2; i <= t.rank; ++i) f *= static_cast<unsigned long long>(i);
      return f << t.rank;
    case Family::D:
      for (int i = 2; i <= t.rank; ++i) f *= static_cast<unsigned long long>(i);
      return f << (t.rank - 1);
    case Family::E:
      return t.rank == 6 ? 51840ull : 2903040ull;
  }
  return 0;
}

/// All of W with an index, built only when |W| is within the cap.
class FullGroup {
 public:
  explicit FullGroup(const Weyl& weyl, std::size_t cap = group_cap()) : weyl_(&weyl) {
    auto order = weyl_order(weyl.roots().type());
    if (order > cap) {
      throw Error("|W| = " + std::to_string(order) + " for " + weyl.roots().type().name() +
                  " exceeds the enumeration cap " + std::to_string(cap) +
                  "; restrict the computation to the needed vertices or raise QBG_GROUP_CAP");
    }
    elems_.push_back(weyl.identity());
    index_.emplace(elems_.back(), 0);
    for (std::size_t q = 0; q < elems_.size(); ++q) {
      for (int i = 1; i <= weyl.rank(); ++i) {
        WeylElem v = weyl.right_simple(elems_[q], i);
        if (index_.emplace(v, static_cast<int>(elems_.size())).second) elems_.push_back(std::move(v));
      }
    }
    check_invariant(elems_.size() == order, "group enumeration size mismatch");
  }

  const Weyl& weyl() const { return *weyl_; }
  std::size_t size() const { return elems_.size(); }
  const WeylElem& at(int i) const { return elems_[static_cast<std::size_t>(i)]; }
  const std::vector<WeylElem>& elements() const { return elems_; }
  int index_of(const WeylElem& w) const {
    auto it = index_.find(w);
    if (it == index_.end()) throw InvariantError("element not in group table");
    return it->second;
  }

 private:
  const Weyl* weyl_;
  std::vector<WeylElem> elems_;
  ElemMap<int> index_;
};

}  // namespace qkchev
