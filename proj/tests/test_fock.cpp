#include <vector>

#include "catch2/catch_amalgamated.hpp"
#include "qfock/fock.hpp"

using namespace qfock;

TEST_CASE("semi-infinite monomials") {
  SECTION("normalization trims the vacuum tail") {
    CHECK(fock_normalize(0, {0, -1, -2}) == IndexTuple{});
    CHECK(fock_normalize(2, {3, 1, 0}) == IndexTuple{3});
    CHECK_THROWS_AS(fock_normalize(0, {1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(fock_normalize(0, {-1}), std::invalid_argument);
  }

  SECTION("degree of the vacuum is zero") {
    CHECK(fock_degree({}, 3, 0) == 0);
    CHECK(fock_degree({}, 2, 5) == 0);
  }

  SECTION("one-step deviation degrees") {
    // n=2, e=0: j = (1, -1, -2, ...) has degree 1
    CHECK(fock_degree(fock_normalize(0, {1}), 2, 0) == 1);
    // n=3, e=2: raising inside the window block keeps degree zero
    CHECK(fock_degree(fock_normalize(2, {3}), 3, 2) == 0);
    CHECK(fock_degree(fock_normalize(2, {5}), 3, 2) == 1);
  }
}

TEST_CASE("fock basis enumeration") {
  SECTION("degree zero contains the vacuum") {
    for (int n : {2, 3})
      for (int e : {0, 1, 2}) {
        auto basis = fock_basis(n, e, 0);
        REQUIRE(basis.size() == 1);
        bool has_vac = false;
        for (const auto &j : basis[0]) {
          CHECK(fock_degree(j, n, e) == 0);
          if (j.empty()) has_vac = true;
        }
        CHECK(has_vac);
      }
  }

  SECTION("counts agree with the finite wedge sectors") {
    for (int n : {2, 3})
      for (int e : {0, 2}) {
        auto basis = fock_basis(n, e, 3);
        for (int k = 0; k <= 3; ++k) {
          const int m = admissible_slots(n, e, k);
          CHECK(basis[k].size() == sector_basis(n, e, k, m).size());
        }
      }
  }

  SECTION("reduction is a bijection onto the sector basis") {
    const int n = 3, e = 2, k = 2;
    const int m = admissible_slots(n, e, k);
    auto fine = sector_basis(n, e, k, m);
    auto fock = fock_basis(n, e, k)[k];
    REQUIRE(fine.size() == fock.size());
    std::vector<IndexTuple> reduced;
    for (const auto &j : fock) {
      auto [mm, w] = reduce_to_finite(n, e, k, FockVector::basis(e, j));
      CHECK(mm == m);
      REQUIRE(w.terms().size() == 1);
      reduced.push_back(w.terms().begin()->first);
    }
    std::sort(reduced.begin(), reduced.end());
    CHECK(reduced == fine);
  }
}

TEST_CASE("truncation and extension") {
  SECTION("vacuum reduces to the finite vacuum") {
    auto [m, w] = reduce_to_finite(3, 0, 0, FockVector::vacuum(0));
    CHECK(m == admissible_slots(3, 0, 0));
    IndexTuple vac(m);
    for (int l = 0; l < m; ++l) vac[l] = sector_entry(0, l + 1);
    CHECK(w == WedgeVector::basis(vac));
  }

  SECTION("round trip on basis monomials") {
    const int n = 3, e = 1;
    auto basis = fock_basis(n, e, 2);
    for (int k = 0; k <= 2; ++k)
      for (const auto &j : basis[k]) {
        FockVector v = FockVector::basis(e, j, Scalar::q(1) + Scalar(2));
        auto [m, w] = reduce_to_finite(n, e, k, v);
        CHECK(extend_to_fock(e, m, w) == v);
      }
  }

  SECTION("non-homogeneous input is rejected") {
    FockVector v = FockVector::vacuum(0);
    v.add(fock_normalize(0, {3}), Scalar(1));
    CHECK_THROWS_AS(reduce_to_finite(3, 0, 0, v), std::invalid_argument);
  }

  SECTION("escaping tuples raise") {
    // the slot-2 tuple (0,-3) cannot merge into the e=0 tail after 2 slots
    WedgeVector w = WedgeVector::basis({0, -3});
    CHECK_THROWS_AS(extend_to_fock(0, 2, w), EscapeError);
  }
}

TEST_CASE("shift automorphism") {
  SECTION("vacuum shifts to the next vacuum") {
    CHECK(phi_infinity(FockVector::vacuum(0), 1) == FockVector::vacuum(1));
    CHECK(phi_infinity(FockVector::vacuum(5), -1) == FockVector::vacuum(4));
  }

  SECTION("round trip") {
    FockVector v = FockVector::basis(2, fock_normalize(2, {5}), Scalar::q(3));
    v.add(fock_normalize(2, {3}), Scalar(7));
    CHECK(phi_infinity(phi_infinity(v, 1), -1) == v);
  }

  SECTION("degree bound h = bar(e) + (n+1)k") {
    const int n = 3;
    for (int e : {0, 2})
      for (int k = 0; k <= 2; ++k) {
        const int h = window_bar(e, n) + (n + 1) * k;
        const auto layer = fock_basis(n, e, k);
        for (const auto &j : layer[k]) {
          FockVector img = phi_infinity(FockVector::basis(e, j), 1);
          for (const auto &[jj, c] : img.terms())
            CHECK(fock_degree(jj, n, e + 1) <= h);
        }
      }
  }
}

TEST_CASE("vertical action") {
  ScalarContext ctx(3);
  const int n = 3;

  SECTION("boundary eigenvalues on the vacuum") {
    for (int e : {0, 2}) {
      FockVector vac = FockVector::vacuum(e);
      CHECK(act_vertical(ctx, 'k', 0, vac) == Scalar::q(1) * vac);
      // k_i for i = 1..n is diagonal on the vacuum with no tail correction
      for (int i = 1; i <= n; ++i) {
        FockVector kv = act_vertical(ctx, 'k', i, vac);
        REQUIRE(kv.terms().size() == 1);
        CHECK(kv.terms().begin()->first.empty());
      }
    }
  }

  SECTION("k inverse round trip") {
    FockVector v = FockVector::basis(2, fock_normalize(2, {5}));
    for (int i = 0; i <= n; ++i)
      CHECK(act_vertical(ctx, 'k', i, act_vertical(ctx, 'k', i, v, -1)) == v);
  }

  SECTION("action is independent of the truncation slot count") {
    const int e = 2;
    for (int k = 0; k <= 1; ++k) {
      const auto layer = fock_basis(n, e, k);
      for (const auto &j : layer[k]) {
        FockVector v = FockVector::basis(e, j);
        for (int extra : {2, 3})
          for (int i : {0, 1, n}) {
            const auto wider = [&](char g) {
              return detail::transport(
                  n, e, v, extra, [&](int m, const WedgeVector &w) {
                    WedgeVector img = wedge_act(ctx, g, i, w);
                    if (i == 0 && g == 'e') img = Scalar::q(1) * img;
                    if (i == 0 && g == 'f') {
                      const WedgeVector kin = wedge_act_k_inverse(ctx, 0, w);
                      WedgeVector wide(m + 1);
                      for (const auto &[t, c] : img.terms()) {
                        IndexTuple tt = t;
                        tt.push_back(sector_entry(e, m + 1));
                        wide.add_wedge(tt, c);
                      }
                      for (const auto &[t, c] : kin.terms()) {
                        IndexTuple tt = t;
                        tt.push_back(sector_entry(e, m));
                        wide.add_wedge(tt, c);
                      }
                      return wide;
                    }
                    return img;
                  });
            };
            CHECK(act_vertical(ctx, 'e', i, v) == wider('e'));
            CHECK(act_vertical(ctx, 'f', i, v) == wider('f'));
          }
      }
    }
  }

  SECTION("commutator relations on low degrees") {
    const int e = 2;
    const Scalar denom = Scalar::q(1) - Scalar::q(-1);
    std::vector<FockVector> sample;
    for (int k = 0; k <= 1; ++k)
      for (const auto &layer = fock_basis(n, e, k); const auto &j : layer[k])
        sample.push_back(FockVector::basis(e, j));
    // vertical family 1..n and horizontal family 0..n-1: [e_i, f_j] tests
    const auto family = [&](int lo, int hi) {
      for (const auto &v : sample)
        for (int i = lo; i <= hi; ++i)
          for (int j = lo; j <= hi; ++j) {
            FockVector lhs =
                act_vertical(ctx, 'e', i, act_vertical(ctx, 'f', j, v)) -
                act_vertical(ctx, 'f', j, act_vertical(ctx, 'e', i, v));
            if (i != j) {
              CHECK(lhs.is_zero());
            } else {
              FockVector rhs = denom.inverse() *
                               (act_vertical(ctx, 'k', i, v) -
                                act_vertical(ctx, 'k', i, v, -1));
              CHECK(lhs == rhs);
            }
          }
    };
    family(1, n);
    family(0, n - 1);
  }

  SECTION("Cartan conjugation on low degrees") {
    const int e = 0;
    std::vector<FockVector> sample;
    for (const auto &layer = fock_basis(n, e, 1); const auto &j : layer[1])
      sample.push_back(FockVector::basis(e, j));
    ScalarContext c3(3);
    for (const auto &v : sample)
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
          const int a = c3.cartan(i % n, j % n);
          FockVector lhs = act_vertical(
              ctx, 'k', i,
              act_vertical(ctx, 'e', j, act_vertical(ctx, 'k', i, v, -1)));
          CHECK(lhs == Scalar::q(a) * act_vertical(ctx, 'e', j, v));
        }
  }
}

TEST_CASE("toroidal modes on the Fock space") {
  ScalarContext ctx(3);
  const int n = 3, e = 2;
  std::vector<FockVector> sample;
  for (int k = 0; k <= 1; ++k)
    for (const auto &layer = fock_basis(n, e, k); const auto &j : layer[k])
      sample.push_back(FockVector::basis(e, j));

  SECTION("mode zero matches the vertical generators") {
    for (const auto &v : sample)
      for (int i = 1; i <= n - 1; ++i) {
        CHECK(act_toroidal_mode(ctx, 'e', i, 0, v) ==
              act_vertical(ctx, 'e', i, v));
        CHECK(act_toroidal_mode(ctx, 'f', i, 0, v) ==
              act_vertical(ctx, 'f', i, v));
      }
  }

  SECTION("mode zero of the affine current matches the boundary formulas") {
    for (const auto &v : sample) {
      CHECK(act_toroidal_mode(ctx, 'e', 0, 0, v) ==
            act_vertical(ctx, 'e', 0, v));
      CHECK(act_toroidal_mode(ctx, 'f', 0, 0, v) ==
            act_vertical(ctx, 'f', 0, v));
    }
  }

  SECTION("shift conjugation identity for interior indices") {
    // e_i(w) = phi^{-1} e_{i+1}(p^{1/n} w) phi for i = 1..n-2
    for (const auto &v : sample)
      for (int r : {-1, 0, 1})
        for (char tag : {'e', 'f'}) {
          FockVector rhs = ctx.u_root(-r) *
                           phi_infinity(act_toroidal_mode(
                                            ctx, tag, 2, r, phi_infinity(v, 1)),
                                        -1);
          CHECK(act_toroidal_mode(ctx, tag, 1, r, v) == rhs);
        }
  }

  SECTION("transported modes are independent of the slot count") {
    for (const auto &v : sample)
      for (int r : {-1, 1})
        for (int i : {1, 2}) {
          FockVector wide = detail::transport(
              n, e, v, std::abs(r) + 3, [&](int, const WedgeVector &w) {
                return drinfeld_mode(ctx, 'e', i, r, w);
              });
          CHECK(act_toroidal_mode(ctx, 'e', i, r, v) == wide);
        }
  }
}
