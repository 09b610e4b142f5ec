// Chevalley formula on Gr(3,7): the A6, k = 3 quotient.
// Prints the expansion for x = s1 s4 s3 s2 s6 s5 s4 s3 and the number of
// elements of W^J above floor(s_theta).

#include <iostream>

#include "qkchev/chevalley.hpp"

int main() {
  using namespace qkchev;
  Chevalley ch(LieType::make(Family::A, 6), 3);
  const Weyl& w = ch.weyl();

  WeylElem x = w.from_word({1, 4, 3, 2, 6, 5, 4, 3});
  SchubertExpansion e = ch.closed_formula(x);
  std::cout << to_qk_product_string(e) << "\n";
  std::cout << to_sk_product_string(e) << "\n\n";

  std::cout << "floor(s_theta) = " << Chevalley::display(w.word_string(ch.s_theta_min())) << "\n";
  int above = 0;
  for (const auto& y : ch.WJ()) above += ch.above_s_theta(y);
  std::cout << above << " of " << ch.WJ().size() << " elements of W^J carry quantum terms\n";
}
