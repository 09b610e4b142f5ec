#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace qkchev;
using oracle::A;
using oracle::B;
using oracle::D;

namespace {

std::vector<std::vector<int>> order_coeffs(const RootSystem& rs, const ReflectionOrder& ord) {
  std::vector<std::vector<int>> out;
  for (int idx : ord.sequence()) out.push_back(rs.root(idx).coeffs);
  return out;
}

/// All reduced words of w, by peeling left descents.
void all_words(const Weyl& weyl, const WeylElem& w, Word& prefix, std::vector<Word>& out) {
  if (w.is_identity()) {
    out.push_back(prefix);
    return;
  }
  for (int i = 1; i <= weyl.rank(); ++i) {
    if (!weyl.left_descent(w, i)) continue;
    prefix.push_back(i);
    all_words(weyl, weyl.left_simple(i, w), prefix, out);
    prefix.pop_back();
  }
}

std::set<int> inversion_indices(const Weyl& weyl, const WeylElem& w) {
  auto v = weyl.inversion_set(w);
  return {v.begin(), v.end()};
}

}  // namespace

TEST(ReflectionOrder, FromReducedWordA2) {
  Weyl a2(A(2));
  const auto& rs = a2.roots();
  // The last letter is j_1, so beta_1 = alpha_{j_1} is the largest root.
  auto o121 = ReflectionOrder::from_reduced_word(a2, {1, 2, 1});
  EXPECT_EQ(order_coeffs(rs, o121), (std::vector<std::vector<int>>{{0, 1}, {1, 1}, {1, 0}}));
  auto o212 = ReflectionOrder::from_reduced_word(a2, {2, 1, 2});
  EXPECT_EQ(order_coeffs(rs, o212), (std::vector<std::vector<int>>{{1, 0}, {1, 1}, {0, 1}}));
  EXPECT_EQ(o121.to_string(rs), "a2 ⊲ a1+a2 ⊲ a1");
  EXPECT_EQ(o121.to_json(rs).dump(), "[[0,1],[1,1],[1,0]]");
  EXPECT_EQ(o121.provenance(), (Word{1, 2, 1}));
}

TEST(ReflectionOrder, FromReducedWordRejectsBadWords) {
  Weyl a2(A(2));
  EXPECT_THROW(ReflectionOrder::from_reduced_word(a2, {1, 2}), Error);
  EXPECT_THROW(ReflectionOrder::from_reduced_word(a2, {1, 1, 2}), Error);
  EXPECT_THROW(ReflectionOrder::from_reduced_word(a2, {1, 2, 3}), Error);
  EXPECT_THROW(ReflectionOrder::from_reduced_word(a2, {1, 2, 1, 2}), Error);
}

TEST(ReflectionOrder, EveryReducedWordGivesADistinctConvexOrder) {
  for (auto t : {A(3), B(3)}) {
    Weyl w(t);
    std::vector<Word> words;
    Word prefix;
    all_words(w, w.longest(), prefix, words);
    std::set<std::vector<int>> seen;
    for (const auto& word : words) {
      auto ord = ReflectionOrder::from_reduced_word(w, word);
      EXPECT_TRUE(ord.is_convex(w.roots())) << format_word(word);
      seen.insert(ord.sequence());
    }
    EXPECT_EQ(seen.size(), words.size()) << t.name();
    EXPECT_EQ(words.size(), t.family == Family::A ? 16u : 42u);
  }
}

TEST(ReflectionOrder, JCompatibleStructure) {
  struct C {
    LieType t;
    int k;
  };
  for (const auto& c : std::vector<C>{{A(3), 2}, {A(5), 3}, {A(6), 3}, {B(3), 3}, {B(4), 4}, {D(4), 1}, {D(5), 5}}) {
    Weyl w(c.t);
    const auto& rs = w.roots();
    auto J = ParabolicSubset::complement_of(c.t.rank, c.k);
    WeylElem top = w.min_rep(w.longest(), J);
    auto inv_top = inversion_indices(w, top);
    int outside = 0;
    for (const auto& r : rs.positive_roots()) outside += !ReflectionOrder::in_subsystem(r, J);
    EXPECT_EQ(static_cast<int>(inv_top.size()), outside);
    for (std::uint64_t seed : {0, 1, 2, 3, 17}) {
      auto ord = ReflectionOrder::j_compatible(w, J, seed);
      EXPECT_TRUE(ord.is_convex(rs));
      EXPECT_TRUE(ord.is_j_compatible(rs, J));
      std::set<int> last;
      for (int p = ord.size() - outside; p < ord.size(); ++p) last.insert(ord.at(p));
      EXPECT_EQ(last, inv_top);
      int largest = ord.at(ord.size() - 1);
      EXPECT_EQ(largest, rs.simple(c.k).index) << c.t.name() << " seed " << seed;
      if (c.t.family == Family::B) {
        std::vector<int> gq(static_cast<std::size_t>(c.t.rank), 0);
        gq[static_cast<std::size_t>(c.t.rank - 2)] = 1;
        gq[static_cast<std::size_t>(c.t.rank - 1)] = 2;
        EXPECT_EQ(ord.at(ord.size() - 2), rs.find_root(gq));
      }
    }
  }
}

TEST(ReflectionOrder, DeterministicA6OrderMatchesTheWorkedGrassmannianExample) {
  Weyl a6(A(6));
  const auto& rs = a6.roots();
  auto J = ParabolicSubset::complement_of(6, 3);
  auto ord = ReflectionOrder::j_compatible(a6, J);
  std::vector<std::vector<int>> want = {
      {1, 1, 1, 1, 1, 1}, {1, 1, 1, 1, 1, 0}, {1, 1, 1, 1, 0, 0}, {1, 1, 1, 0, 0, 0},
      {0, 1, 1, 1, 1, 1}, {0, 1, 1, 1, 1, 0}, {0, 1, 1, 1, 0, 0}, {0, 1, 1, 0, 0, 0},
      {0, 0, 1, 1, 1, 1}, {0, 0, 1, 1, 1, 0}, {0, 0, 1, 1, 0, 0}, {0, 0, 1, 0, 0, 0}};
  auto all = order_coeffs(rs, ord);
  std::vector<std::vector<int>> tail(all.end() - 12, all.end());
  EXPECT_EQ(tail, want);
}

TEST(ReflectionOrder, B3TopTwo) {
  Weyl b3(B(3));
  auto ord = ReflectionOrder::j_compatible(b3, ParabolicSubset::complement_of(3, 3));
  auto all = order_coeffs(b3.roots(), ord);
  EXPECT_EQ(all[7], (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(all[8], (std::vector<int>{0, 0, 1}));
}

TEST(ReflectionOrder, RefineWithInvPutsInvTLast) {
  Weyl a4(A(4));
  const auto& rs = a4.roots();
  auto J = ParabolicSubset::complement_of(4, 2);
  WeylElem st = a4.min_rep(a4.reflection(rs.highest_root()), J);
  for (std::uint64_t seed : {0, 5, 9}) {
    auto ord = ReflectionOrder::refine_with_inv(a4, J, st, seed);
    EXPECT_TRUE(ord.is_convex(rs));
    EXPECT_TRUE(ord.is_j_compatible(rs, J));
    std::set<int> last;
    for (int p = ord.size() - st.length(); p < ord.size(); ++p) last.insert(ord.at(p));
    EXPECT_EQ(last, inversion_indices(a4, st));
  }
  WeylElem top = a4.min_rep(a4.longest(), J);
  EXPECT_EQ(ReflectionOrder::refine_with_inv(a4, J, top), ReflectionOrder::j_compatible(a4, J));
  EXPECT_EQ(ReflectionOrder::refine_with_inv(a4, J, a4.identity()), ReflectionOrder::j_compatible(a4, J));
  EXPECT_THROW(ReflectionOrder::refine_with_inv(a4, J, a4.simple(1)), Error);
}

TEST(ReflectionOrder, RefineWithZkSkInTypeB) {
  Weyl b4(B(4));
  const auto& rs = b4.roots();
  auto J = ParabolicSubset::complement_of(4, 4);
  WeylElem zs = b4.min_rep(b4.mul(b4.longest_in(J), b4.simple(4)), J);
  WeylElem st = b4.min_rep(b4.reflection(rs.highest_root()), J);
  for (const auto& t : {zs, st}) {
    auto ord = ReflectionOrder::refine_with_inv(b4, J, t, 3);
    EXPECT_TRUE(ord.is_convex(rs));
    EXPECT_TRUE(ord.is_j_compatible(rs, J));
    std::set<int> last;
    for (int p = ord.size() - t.length(); p < ord.size(); ++p) last.insert(ord.at(p));
    EXPECT_EQ(last, inversion_indices(b4, t));
  }
}

TEST(ReflectionOrder, RandomOrdersAreConvex) {
  for (auto t : {A(4), B(4), D(4), D(5)}) {
    Weyl w(t);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      auto ord = ReflectionOrder::random(w, seed);
      EXPECT_TRUE(ord.is_convex(w.roots())) << t.name() << " seed " << seed;
      EXPECT_EQ(ord, ReflectionOrder::random(w, seed));
    }
  }
}
