#pragma once

#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qkchev/weyl.hpp"

namespace qkchev {

/// A total order on the positive roots. Position 0 is the smallest.
class ReflectionOrder {
 public:
  ReflectionOrder() = default;

  /// Order induced by a reduced word of w0 = s_{j_p} ... s_{j_1} (the last letter is j_1):
  /// beta_q = s_{j_1} ... s_{j_{q-1}} alpha_{j_q}, and beta_p < ... < beta_1.
  static ReflectionOrder from_reduced_word(const Weyl& weyl, const Word& word) {
    const auto& rs = weyl.roots();
    int p = rs.num_positive();
    if (static_cast<int>(word.size()) != p) {
      throw Error("word of length " + std::to_string(word.size()) + " cannot be a reduced word of w0 (length " +
                  std::to_string(p) + ")");
    }
    ReflectionOrder ord;
    ord.word_ = word;
    ord.seq_.assign(static_cast<std::size_t>(p), -1);
    ord.pos_.assign(static_cast<std::size_t>(p), -1);
    WeylElem prefix = weyl.identity();
    for (int q = 1; q <= p; ++q) {
      int j = word[static_cast<std::size_t>(p - q)];
      if (j < 1 || j > rs.rank()) throw Error("letter " + std::to_string(j) + " is not a node");
      int s = weyl.act_root(prefix, rs.simple(j));
      if (s < 0) throw Error("word '" + format_word(word) + "' is not reduced");
      int idx = s - 1;
      if (ord.pos_[static_cast<std::size_t>(idx)] >= 0) throw Error("word '" + format_word(word) + "' is not reduced");
      ord.pos_[static_cast<std::size_t>(idx)] = p - q;
      ord.seq_[static_cast<std::size_t>(p - q)] = idx;
      prefix = weyl.right_simple(prefix, j);
    }
    check_invariant(prefix.length() == p, "product of the word is not w0");
    return ord;
  }

  /// Order with Delta^+_J first, built from w0 = v * floor(w0), floor(w0) in W^J.
  /// seed 0 uses lex-least words; any other seed picks random reduced words.
  static ReflectionOrder j_compatible(const Weyl& weyl, const ParabolicSubset& J, std::uint64_t seed = 0) {
    WeylElem w0 = weyl.longest();
    WeylElem top = weyl.min_rep(w0, J);
    WeylElem v = weyl.mul(w0, weyl.inverse(top));
    check_invariant(v.length() + top.length() == w0.length(), "w0 = v * floor(w0) is not length additive");
    std::mt19937_64 rng(seed);
    Word word = pick_word(weyl, v, seed, rng);
    Word tail = pick_word(weyl, top, seed, rng);
    word.insert(word.end(), tail.begin(), tail.end());
    return from_reduced_word(weyl, word);
  }

  /// J-compatible order whose largest block is Inv(t): w0 = v * w2 * w1 with w1 a word of t.
  static ReflectionOrder refine_with_inv(const Weyl& weyl, const ParabolicSubset& J, const WeylElem& t,
                                         std::uint64_t seed = 0) {
    WeylElem w0 = weyl.longest();
    WeylElem top = weyl.min_rep(w0, J);
    WeylElem v = weyl.mul(w0, weyl.inverse(top));
    WeylElem w2 = weyl.mul(top, weyl.inverse(t));
    if (w2.length() + t.length() != top.length()) {
      throw Error("t = " + weyl.word_string(t) + " is not a right factor of floor(w0) in W^J");
    }
    std::mt19937_64 rng(seed);
    Word word = pick_word(weyl, v, seed, rng);
    Word mid = pick_word(weyl, w2, seed, rng);
    Word tail = pick_word(weyl, t, seed, rng);
    word.insert(word.end(), mid.begin(), mid.end());
    word.insert(word.end(), tail.begin(), tail.end());
    return from_reduced_word(weyl, word);
  }

  /// Order from a random reduced word of w0 (not J-compatible in general).
  static ReflectionOrder random(const Weyl& weyl, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return from_reduced_word(weyl, pick_word(weyl, weyl.longest(), seed, rng));
  }

  /// A reduced word of w; lex-least when seed is 0, otherwise random descents.
  static Word pick_word(const Weyl& weyl, WeylElem w, std::uint64_t seed, std::mt19937_64& rng) {
    if (seed == 0) return weyl.reduced_word(w);
    Word out;
    while (!w.is_identity()) {
      std::vector<int> desc;
      for (int i = 1; i <= weyl.rank(); ++i)
        if (weyl.left_descent(w, i)) desc.push_back(i);
      std::uniform_int_distribution<std::size_t> pick(0, desc.size() - 1);
      int i = desc[pick(rng)];
      out.push_back(i);
      w = weyl.left_simple(i, w);
    }
    return out;
  }

  int size() const { return static_cast<int>(seq_.size()); }
  /// Root index at a position (0 = smallest).
  int at(int position) const { return seq_.at(static_cast<std::size_t>(position)); }
  /// Position of a root index.
  int position(int root_index) const { return pos_.at(static_cast<std::size_t>(root_index)); }
  bool less(int a, int b) const { return position(a) < position(b); }
  const std::vector<int>& sequence() const { return seq_; }
  const Word& provenance() const { return word_; }

  bool operator==(const ReflectionOrder& o) const { return seq_ == o.seq_; }

  /// Every alpha + beta in Delta^+ sits strictly between alpha and beta.
  bool is_convex(const RootSystem& rs) const {
    const auto& roots = rs.positive_roots();
    for (const auto& a : roots) {
      for (const auto& b : roots) {
        if (a.index >= b.index) continue;
        std::vector<int> sum = a.coeffs;
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += b.coeffs[i];
        int c = rs.find_root(sum);
        if (c < 0) continue;
        int pa = position(a.index), pb = position(b.index), pc = position(c);
        if (!((pa < pc && pc < pb) || (pb < pc && pc < pa))) return false;
      }
    }
    return true;
  }

  /// Every root of Delta^+_J precedes every root outside it.
  bool is_j_compatible(const RootSystem& rs, const ParabolicSubset& J) const {
    int max_in = -1, min_out = size();
    for (const auto& r : rs.positive_roots()) {
      if (in_subsystem(r, J)) max_in = std::max(max_in, position(r.index));
      else min_out = std::min(min_out, position(r.index));
    }
    return max_in < min_out;
  }

  std::string to_string(const RootSystem& rs) const {
    std::ostringstream os;
    for (int p = 0; p < size(); ++p) os << (p ? " ⊲ " : "") << RootSystem::format_root(rs.root(at(p)).coeffs);
    return os.str();
  }

  nlohmann::json to_json(const RootSystem& rs) const {
    auto arr = nlohmann::json::array();
    for (int idx : seq_) arr.push_back(rs.root(idx).coeffs);
    return arr;
  }

  static bool in_subsystem(const Root& r, const ParabolicSubset& J) {
    for (std::size_t i = 0; i < r.coeffs.size(); ++i)
      if (r.coeffs[i] != 0 && !J.contains(static_cast<int>(i) + 1)) return false;
    return true;
  }

 private:
  std::vector<int> seq_;
  std::vector<int> pos_;
  Word word_;
};

}  // namespace qkchev
