#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qfock/cherednik.hpp"

using namespace qfock;

namespace {

LaurentPoly mono(int m, std::vector<int> e, Scalar c = Scalar(1)) {
  return LaurentPoly::monomial(m, e, c);
}

LaurentPoly random_poly(int m, std::mt19937 &rng) {
  std::uniform_int_distribution<int> coef(-3, 3), expo(-2, 2);
  LaurentPoly f(m);
  for (int t = 0; t < 3; ++t) {
    std::vector<int> e(m);
    for (auto &x : e) x = expo(rng);
    f.add(e, Scalar(coef(rng)));
  }
  return f;
}

}  // namespace

TEST_CASE("laurent arithmetic and exact division") {
  LaurentPoly f = mono(2, {1, 0}) - mono(2, {0, 1});  // z1 - z2
  LaurentPoly g = mono(2, {2, 0}) - mono(2, {0, 2});  // z1^2 - z2^2
  CHECK(g.divide_zi_minus_zj(1, 2) == mono(2, {1, 0}) + mono(2, {0, 1}));
  CHECK(f.divide_zi_minus_zj(1, 2) == LaurentPoly::one(2));
  // Laurent case: z1^-1 - z2^-1 = -(z1-z2) z1^-1 z2^-1
  LaurentPoly h = mono(2, {-1, 0}) - mono(2, {0, -1});
  CHECK(h.divide_zi_minus_zj(1, 2) == mono(2, {-1, -1}, Scalar(-1)));
  CHECK_THROWS_AS(mono(2, {1, 0}).divide_zi_minus_zj(1, 2), std::logic_error);
  CHECK(f.swap_vars(1, 2) == Scalar(-1) * f);
  CHECK(mono(2, {2, 0}).scale_var(1, Scalar::u(3)) == mono(2, {2, 0}, Scalar::u(6)));
}

TEST_CASE("elementary and t operators") {
  ScalarContext ctx(3);
  CherednikRep rep(ctx, 2);
  // shift(1,+1) on z1^2 -> p^2 z1^2
  CHECK(rep.apply_op({WordOp::Shift, 1, 0, 1}, mono(2, {2, 0})) ==
        mono(2, {2, 0}, ctx.p(2)));
  CHECK(rep.y(LaurentPoly::one(2), 1) == mono(2, {-1, 0}));
  CHECK(apply_t(LaurentPoly::one(2), 1, 2) ==
        LaurentPoly::monomial(2, {0, 0}, Scalar::q()));
  CHECK(apply_t(mono(2, {1, 0}), 1, 2) == mono(2, {0, 1}, Scalar::q(-1)));
  // quadratic relation on a probe monomial
  LaurentPoly f = mono(2, {3, 1});
  LaurentPoly lhs = apply_t(apply_t(f, 1, 2), 1, 2) +
                    Scalar::q(-1) * apply_t(f, 1, 2) -
                    Scalar::q() * apply_t(f, 1, 2) -
                    f;  // (t+q^-1)(t-q) f = t^2 f + (q^-1-q) t f - f
  CHECK(lhs.is_zero());
}

TEST_CASE("x words") {
  ScalarContext ctx(3);
  {
    CherednikRep rep(ctx, 1);
    LaurentPoly f = mono(1, {2}) + mono(1, {-1});
    CHECK(rep.x(f, 1) == mono(1, {2}, ctx.p(-2)) + mono(1, {-1}, ctx.p(1)));
    CHECK(rep.hat_x(f, 1) == rep.x(f, 1));
  }
  CherednikRep rep(ctx, 2);
  // trivial-module eigenvalue: x_i(1) = q^{2i-m-1}
  CHECK(rep.x(LaurentPoly::one(2), 1) ==
        LaurentPoly::monomial(2, {0, 0}, Scalar::q(-1)));
  CHECK(rep.x(LaurentPoly::one(2), 2) ==
        LaurentPoly::monomial(2, {0, 0}, Scalar::q(1)));
  std::mt19937 rng(11);
  for (int t = 0; t < 5; ++t) {
    LaurentPoly f = random_poly(2, rng);
    CHECK(rep.x(rep.x(f, 1, -1), 1) == f);
    CHECK(rep.x(rep.x(f, 2, -1), 2) == f);
    CHECK(rep.x(rep.x(f, 1), 2) == rep.x(rep.x(f, 2), 1));
    CHECK(rep.q_op(rep.q_op(f, -1)) == f);
    CHECK(rep.hat_x(rep.hat_x(f, 1, -1), 1) == f);
    CHECK(rep.hat_x(rep.hat_x(f, 2, -1), 2) == f);
  }
  // Q(z_1) = z_2, Q(z_2) = p^{-1} z_1 for m=2; oracle Q Y_m Q^{-1} = p Y_1
  CHECK(rep.q_op(mono(2, {1, 0})) == mono(2, {0, 1}));
  CHECK(rep.q_op(mono(2, {0, 1})) == mono(2, {1, 0}, ctx.p(-1)));
  for (int t = 0; t < 3; ++t) {
    LaurentPoly f = random_poly(2, rng);
    CHECK(rep.q_op(rep.y(rep.q_op(f, -1), 2), 1) == ctx.p() * rep.y(f, 1));
  }
}

TEST_CASE("hat_x specializes to the shift at q = 1") {
  ScalarContext ctx(3);
  for (int m = 2; m <= 3; ++m) {
    CherednikRep rep(ctx, m);
    std::mt19937 rng(21 + m);
    for (int l = 1; l <= m; ++l)
      for (int t = 0; t < 3; ++t) {
        LaurentPoly f = random_poly(m, rng);
        LaurentPoly diff =
            rep.hat_x(f, l) - f.scale_var(l, ctx.p(-1));  // x̂_l - D_l^{-1}
        for (const auto &[e, c] : diff.terms())
          CHECK(c.at_q_one().is_zero());
      }
  }
}

TEST_CASE("relation suite") {
  ScalarContext ctx(3);
  RelationReport r2 = check_daha_relations(ctx, 2, 2);
  INFO((r2.failures.empty() ? std::string() : r2.failures.front().relation));
  CHECK(r2.ok());
  CHECK(r2.checked > 0);
  RelationReport r3 = check_daha_relations(ctx, 3, 1);
  INFO((r3.failures.empty() ? std::string() : r3.failures.front().relation));
  CHECK(r3.ok());
  // negative control: corrupted t (drop the -q^{-1} term) must fail with a
  // witness on the quadratic relation
  auto corrupt = [](const LaurentPoly &f, int i, int j) {
    return apply_t(f, i, j) + Scalar::q(-1) * f;
  };
  RelationReport bad = check_daha_relations(ctx, 2, 1, corrupt);
  CHECK(!bad.ok());
  bool quadratic_failed = false;
  for (const auto &fail : bad.failures)
    if (fail.relation.find("quadratic") != std::string::npos)
      quadratic_failed = true;
  CHECK(quadratic_failed);
}

TEST_CASE("operator word parsing") {
  ScalarContext ctx(3);
  CherednikRep rep(ctx, 2);
  auto w = parse_operator_word("s(1,2) D(1) t-(1,2)", 2);
  REQUIRE(w.size() == 3);
  LaurentPoly f = mono(2, {0, 2});
  // tokens act in listed order: swap, then shift, then t^{-1}
  LaurentPoly expect = apply_t_inv(mono(2, {2, 0}, ctx.p(2)), 1, 2);
  CHECK(rep.apply_word(w, f) == expect);
  auto wm = parse_operator_word("mul(q*z1^2-2*z2^-1)", 2);
  CHECK(rep.apply_word(wm, LaurentPoly::one(2)) ==
        mono(2, {2, 0}, Scalar::q()) + mono(2, {0, -1}, Scalar(-2)));
  CHECK_THROWS_AS(parse_operator_word("t(1,3)", 2), std::invalid_argument);
  CHECK_THROWS_AS(parse_operator_word("blah(1)", 2), std::invalid_argument);
}
