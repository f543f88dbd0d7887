#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qfock/hecke.hpp"

using namespace qfock;

namespace {

HeckeElement gen(int m, int i, int sign = 1) {
  return HeckeElement::unit(m).mul_gen_left(i, sign);
}

HeckeElement random_element(int m, std::mt19937 &rng) {
  std::uniform_int_distribution<int> coef(-2, 2), qe(-1, 1);
  auto perms = all_permutations(m);
  std::uniform_int_distribution<size_t> pick(0, perms.size() - 1);
  HeckeElement e;
  for (int t = 0; t < 3; ++t)
    e.add(perms[pick(rng)], Scalar::monomial(coef(rng), qe(rng), 0));
  return e;
}

}  // namespace

TEST_CASE("permutation primitives") {
  Permutation w{{3, 1, 2}};
  CHECK(w.length() == 2);
  auto word = w.reduced_word();
  CHECK(word.size() == 2);
  Permutation rebuilt = Permutation::identity(3);
  for (auto it = word.rbegin(); it != word.rend(); ++it)
    rebuilt = rebuilt.swap_values(*it);
  CHECK(rebuilt == w);
  CHECK(all_permutations(4).size() == 24);
}

TEST_CASE("quadratic and braid relations") {
  for (int m = 2; m <= 4; ++m) {
    const Scalar qq = Scalar::q() - Scalar::q(-1);
    for (int i = 1; i < m; ++i) {
      HeckeElement ti = gen(m, i);
      // T_i^2 = (q - q^{-1}) T_i + 1
      CHECK(ti * ti == qq * ti + HeckeElement::unit(m));
      CHECK(ti * gen(m, i, -1) == HeckeElement::unit(m));
      for (int j = i + 2; j < m; ++j)
        CHECK(ti * gen(m, j) == gen(m, j) * ti);
    }
    for (int i = 1; i + 1 < m; ++i) {
      HeckeElement a = gen(m, i), b = gen(m, i + 1);
      CHECK(a * (b * a) == b * (a * b));
    }
  }
}

TEST_CASE("signed word evaluation") {
  // T_1 T_2^{-1} in H_3, checked against explicit products
  HeckeElement x = hecke_from_word(3, {{1, 1}, {2, -1}});
  CHECK(x == gen(3, 1) * gen(3, 2, -1));
  HeckeElement y = hecke_from_word(3, {{1, 2}});
  CHECK(y == gen(3, 1) * gen(3, 1));
}

TEST_CASE("associativity on seeded triples") {
  std::mt19937 rng(777);
  for (int m = 2; m <= 4; ++m) {
    for (int trial = 0; trial < 60; ++trial) {
      HeckeElement a = random_element(m, rng), b = random_element(m, rng),
                   c = random_element(m, rng);
      CHECK((a * b) * c == a * (b * c));
    }
  }
}

TEST_CASE("involution") {
  for (int m = 2; m <= 3; ++m) {
    for (int i = 1; i < m; ++i) {
      // omega(T_i) = -T_i^{-1}
      CHECK(gen(m, i).omega(m) == Scalar(-1) * gen(m, i, -1));
      // omega is an involution on generators
      CHECK(gen(m, i).omega(m).omega(m) == gen(m, i));
    }
  }
  // omega is multiplicative on seeded samples
  std::mt19937 rng(778);
  for (int m = 2; m <= 3; ++m)
    for (int trial = 0; trial < 30; ++trial) {
      HeckeElement a = random_element(m, rng), b = random_element(m, rng);
      CHECK((a * b).omega(m) == a.omega(m) * b.omega(m));
      CHECK(a.omega(m).omega(m) == a);
    }
}

TEST_CASE("symmetrizers") {
  // omega(S_m) = q^{m(m-1)} A_m
  for (int m = 2; m <= 4; ++m) {
    HeckeElement s = hecke_symmetrizer(m);
    HeckeElement a = hecke_antisymmetrizer(m);
    CHECK(s.omega(m) == Scalar::q(m * (m - 1)) * a);
    // T_i S_m = q S_m and T_i A_m = -q^{-1} A_m
    for (int i = 1; i < m; ++i) {
      CHECK(s.mul_gen_left(i) == Scalar::q() * s);
      CHECK(a.mul_gen_left(i) == -Scalar::q(-1) * a);
    }
  }
}
