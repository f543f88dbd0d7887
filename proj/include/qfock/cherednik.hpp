#pragma once

#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "qfock/laurent.hpp"
#include "qfock/scalar.hpp"

namespace qfock {

/// t_{i,j} = (1 + s_{i,j}) (q^{-1}z_i - q z_j)/(z_i - z_j) - q^{-1},
/// computed with exact division; the numerator vanishes on z_i = z_j.
inline LaurentPoly apply_t(const LaurentPoly &f, int i, int j) {
  const int m = f.nvars();
  LaurentPoly::Expo zi(m, 0), zj(m, 0);
  zi[i - 1] = 1;
  zj[j - 1] = 1;
  LaurentPoly fs = f.swap_vars(i, j);
  LaurentPoly num = f.mul_monomial(zi, Scalar::q(-1)) -
                    f.mul_monomial(zj, Scalar::q(1)) +
                    fs.mul_monomial(zi, Scalar::q(1)) -
                    fs.mul_monomial(zj, Scalar::q(-1));
  return num.divide_zi_minus_zj(i, j) - Scalar::q(-1) * f;
}

inline LaurentPoly apply_t_inv(const LaurentPoly &f, int i, int j) {
  return apply_t(f, i, j) - (Scalar::q() - Scalar::q(-1)) * f;
}

/// One primitive factor of an operator word.
struct WordOp {
  enum Kind { Swap, Shift, T, TInv, Mul } kind;
  int i = 0, j = 0;        // 1-based variable indices
  int power = 0;           // for Shift: D_i^{power}
  LaurentPoly factor{0};   // for Mul
};

class CherednikRep {
 public:
  CherednikRep(const ScalarContext &ctx, int m) : ctx_(ctx), m_(m) {}

  int nvars() const { return m_; }
  const ScalarContext &context() const { return ctx_; }

  LaurentPoly apply_op(const WordOp &op, const LaurentPoly &f) const {
    switch (op.kind) {
      case WordOp::Swap:
        return f.swap_vars(op.i, op.j);
      case WordOp::Shift:
        return f.scale_var(op.i, ctx_.p(op.power));
      case WordOp::T:
        return apply_t(f, op.i, op.j);
      case WordOp::TInv:
        return apply_t_inv(f, op.i, op.j);
      case WordOp::Mul:
        return op.factor * f;
    }
    throw std::logic_error("apply_op: bad kind");
  }

  /// Applies the factors in sequence: word.front() acts first.
  LaurentPoly apply_word(const std::vector<WordOp> &word,
                         const LaurentPoly &f) const {
    LaurentPoly r = f;
    for (const auto &op : word) r = apply_op(op, r);
    return r;
  }

  LaurentPoly y(const LaurentPoly &f, int i, int power = 1) const {
    LaurentPoly::Expo e(m_, 0);
    e[i - 1] = -power;
    return f.mul_monomial(e);
  }

  /// Q acts by the substitution z_k -> z_{k+1} (k < m), z_m -> p^{-1} z_1.
  LaurentPoly q_op(const LaurentPoly &f, int sign = 1) const {
    LaurentPoly r = f;
    if (sign > 0) {
      for (int k = m_ - 1; k >= 1; --k) r = r.swap_vars(k, k + 1);
      r = r.scale_var(1, ctx_.p(-1));
    } else {
      r = r.scale_var(1, ctx_.p(1));
      for (int k = 1; k <= m_ - 1; ++k) r = r.swap_vars(k, k + 1);
    }
    return r;
  }

  /// X_l = T_{l-1}...T_1 Q T_{m-1}^{-1}...T_l^{-1}, listed in application
  /// order: the rightmost algebra factor acts first.
  std::vector<WordOp> x_word(int l) const {
    std::vector<WordOp> w;
    for (int k = l; k <= m_ - 1; ++k) w.push_back({WordOp::TInv, k, k + 1});
    for (int k = m_ - 1; k >= 1; --k) w.push_back({WordOp::Swap, k, k + 1});
    w.push_back({WordOp::Shift, 1, 0, -1});
    for (int k = 1; k <= l - 1; ++k) w.push_back({WordOp::T, k, k + 1});
    return w;
  }

  std::vector<WordOp> x_word_inv(int l) const {
    std::vector<WordOp> w;
    for (int k = l - 1; k >= 1; --k) w.push_back({WordOp::TInv, k, k + 1});
    w.push_back({WordOp::Shift, 1, 0, 1});
    for (int k = 1; k <= m_ - 1; ++k) w.push_back({WordOp::Swap, k, k + 1});
    for (int k = m_ - 1; k >= l; --k) w.push_back({WordOp::T, k, k + 1});
    return w;
  }

  LaurentPoly x(const LaurentPoly &f, int l, int sign = 1) const {
    return apply_word(sign > 0 ? x_word(l) : x_word_inv(l), f);
  }

  /// x̂_l = q^{m-1} t_{l-1,l}^{-1} s_{l-1,l} ... t_{1,l}^{-1} s_{1,l} D_l
  ///        s_{l,m} t_{l,m} ... s_{l,l+1} t_{l,l+1}
  /// (rightmost factor acts first); at q = 1 it reduces to z_l -> p^{-1} z_l.
  LaurentPoly hat_x(const LaurentPoly &f, int l, int sign = 1) const {
    LaurentPoly r = f;
    if (sign > 0) {
      for (int k = l + 1; k <= m_; ++k) {
        r = apply_t(r, l, k);
        r = r.swap_vars(l, k);
      }
      r = r.scale_var(l, ctx_.p(-1));
      for (int k = 1; k <= l - 1; ++k) {
        r = r.swap_vars(k, l);
        r = apply_t_inv(r, k, l);
      }
      return Scalar::q(m_ - 1) * r;
    }
    for (int k = l - 1; k >= 1; --k) {
      r = apply_t(r, k, l);
      r = r.swap_vars(k, l);
    }
    r = r.scale_var(l, ctx_.p(1));
    for (int k = m_; k >= l + 1; --k) {
      r = r.swap_vars(l, k);
      r = apply_t_inv(r, l, k);
    }
    return Scalar::q(1 - m_) * r;
  }

 private:
  ScalarContext ctx_;
  int m_;
};

/// Parses a whitespace-free Laurent polynomial like `2*q*z1^2*z2^-1+u^2*z1`.
inline LaurentPoly parse_laurent(const std::string &text, int m) {
  LaurentPoly f(m);
  size_t pos = 0;
  auto parse_int = [&]() {
    int sign = 1;
    if (pos < text.size() && text[pos] == '-') {
      sign = -1;
      ++pos;
    }
    size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
      ++pos;
    if (start == pos)
      throw std::invalid_argument("laurent parse: expected integer at " +
                                  std::to_string(pos));
    return sign * std::stoi(text.substr(start, pos - start));
  };
  while (pos < text.size()) {
    int sign = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
    }
    Scalar coeff(sign);
    LaurentPoly::Expo e(m, 0);
    bool any = false;
    while (pos < text.size()) {
      char c = text[pos];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        coeff *= Scalar(static_cast<long>(parse_int()));
        any = true;
      } else if (c == 'q' || c == 'u') {
        ++pos;
        int k = 1;
        if (pos < text.size() && text[pos] == '^') {
          ++pos;
          k = parse_int();
        }
        coeff *= c == 'q' ? Scalar::q(k) : Scalar::u(k);
        any = true;
      } else if (c == 'z') {
        ++pos;
        size_t start = pos;
        while (pos < text.size() &&
               std::isdigit(static_cast<unsigned char>(text[pos])))
          ++pos;
        if (start == pos)
          throw std::invalid_argument("laurent parse: bad variable at " +
                                      std::to_string(pos));
        int idx = std::stoi(text.substr(start, pos - start));
        if (idx < 1 || idx > m)
          throw std::invalid_argument("laurent parse: variable out of range");
        int k = 1;
        if (pos < text.size() && text[pos] == '^') {
          ++pos;
          k = parse_int();
        }
        e[idx - 1] += k;
        any = true;
      } else {
        break;
      }
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        continue;
      }
      break;
    }
    if (!any)
      throw std::invalid_argument("laurent parse: empty term at " +
                                  std::to_string(pos));
    f.add(e, coeff);
    if (pos < text.size() && text[pos] != '+' && text[pos] != '-')
      throw std::invalid_argument("laurent parse: unexpected character at " +
                                  std::to_string(pos));
  }
  return f;
}

/// Parses whitespace-separated tokens
///   s(i,j)  D(i)  D-(i)  t(i,j)  t-(i,j)  mul(<poly>)
/// into an operator word (tokens act in the listed order).
std::vector<WordOp> parse_operator_word(const std::string &text, int m);

struct RelationFailure {
  std::string relation;
  LaurentPoly::Expo witness;
};

struct RelationReport {
  int checked = 0;
  std::vector<RelationFailure> failures;
  bool ok() const { return failures.empty(); }
};

namespace detail {

inline void enumerate_box(int m, int b, LaurentPoly::Expo &e, int pos,
                          const std::function<void(const LaurentPoly::Expo &)> &fn) {
  if (pos == m) {
    fn(e);
    return;
  }
  for (int v = -b; v <= b; ++v) {
    e[pos] = v;
    enumerate_box(m, b, e, pos + 1, fn);
  }
}

}  // namespace detail

/// Certifies the defining relations of the double affine presentation and the
/// X-form relations as operator identities on all monomials in [-b,b]^m.
/// An operator override hook supports negative-control tests.
inline RelationReport check_daha_relations(
    const ScalarContext &ctx, int m, int b,
    std::function<LaurentPoly(const LaurentPoly &, int, int)> t_override = {}) {
  CherednikRep rep(ctx, m);
  auto tt = [&](const LaurentPoly &f, int i, int j) {
    return t_override ? t_override(f, i, j) : apply_t(f, i, j);
  };
  auto tinv = [&](const LaurentPoly &f, int i, int j) {
    return tt(f, i, j) - (Scalar::q() - Scalar::q(-1)) * f;
  };
  using Fn = std::function<LaurentPoly(const LaurentPoly &)>;
  auto T = [&](int i) { return Fn([&tt, i](const LaurentPoly &f) { return tt(f, i, i + 1); }); };
  auto Ti = [&](int i) { return Fn([&tinv, i](const LaurentPoly &f) { return tinv(f, i, i + 1); }); };
  auto Y = [&](int i, int s) { return Fn([&rep, i, s](const LaurentPoly &f) { return rep.y(f, i, s); }); };
  auto Qop = [&](int s) { return Fn([&rep, s](const LaurentPoly &f) { return rep.q_op(f, s); }); };
  auto X = [&](int i, int s) { return Fn([&rep, i, s](const LaurentPoly &f) { return rep.x(f, i, s); }); };
  auto scale = [&](const Scalar &c) { return Fn([c](const LaurentPoly &f) { return c * f; }); };

  auto chain = [](std::vector<Fn> fns) {
    return Fn([fns](const LaurentPoly &f) {
      LaurentPoly r = f;
      for (auto it = fns.rbegin(); it != fns.rend(); ++it) r = (*it)(r);
      return r;
    });
  };

  std::vector<std::pair<std::string, std::pair<Fn, Fn>>> rels;
  auto rel = [&](const std::string &name, Fn lhs, Fn rhs) {
    rels.push_back({name, {lhs, rhs}});
  };

  const Scalar p = ctx.p();
  for (int i = 1; i < m; ++i) {
    rel("T" + std::to_string(i) + " quadratic",
        chain({T(i), T(i)}),
        [&, i](const LaurentPoly &f) {
          return tt(f, i, i + 1).mul_monomial(LaurentPoly::Expo(m, 0),
                                              Scalar::q() - Scalar::q(-1)) +
                 f;
        });
    rel("T" + std::to_string(i) + " inverse", chain({T(i), Ti(i)}),
        chain({}));
    rel("T" + std::to_string(i) + "^-1 Y_i T^-1 = Y_{i+1}",
        chain({Ti(i), Y(i, 1), Ti(i)}), Y(i + 1, 1));
    for (int j = 1; j <= m; ++j)
      if (j != i && j != i + 1)
        rel("Y" + std::to_string(j) + " T" + std::to_string(i) + " commute",
            chain({Y(j, 1), T(i)}), chain({T(i), Y(j, 1)}));
  }
  for (int i = 1; i + 1 < m; ++i)
    rel("braid T" + std::to_string(i), chain({T(i), T(i + 1), T(i)}),
        chain({T(i + 1), T(i), T(i + 1)}));
  for (int i = 1; i < m; ++i)
    for (int j = i + 2; j < m; ++j)
      rel("T commute", chain({T(i), T(j)}), chain({T(j), T(i)}));
  for (int i = 2; i < m; ++i)
    rel("Q T_{i-1} Q^-1 = T_i", chain({Qop(1), T(i - 1), Qop(-1)}), T(i));
  if (m >= 2)
    rel("Q^2 T_{m-1} Q^-2 = T_1",
        chain({Qop(1), Qop(1), T(m - 1), Qop(-1), Qop(-1)}), T(1));
  for (int i = 1; i < m; ++i)
    rel("Q Y_i Q^-1 = Y_{i+1}", chain({Qop(1), Y(i, 1), Qop(-1)}),
        Y(i + 1, 1));
  rel("Q Y_m Q^-1 = p Y_1", chain({Qop(1), Y(m, 1), Qop(-1)}),
      chain({scale(p), Y(1, 1)}));
  for (int i = 1; i < m; ++i)
    rel("T_i X_i T_i = X_{i+1}", chain({T(i), X(i, 1), T(i)}), X(i + 1, 1));
  {
    // X_0 = X_1 ... X_m
    std::vector<Fn> x0;
    for (int i = 1; i <= m; ++i) x0.push_back(X(i, 1));
    Fn X0 = chain(x0);
    rel("X_0 Y_1 = p Y_1 X_0", chain({X0, Y(1, 1)}),
        chain({scale(p), Y(1, 1), X0}));
  }
  if (m >= 2)
    rel("Y_2 X_1^-1 Y_2^-1 X_1 = T_1^-2",
        chain({Y(2, 1), X(1, -1), Y(2, -1), X(1, 1)}),
        chain({Ti(1), Ti(1)}));
  for (int i = 1; i <= m; ++i)
    for (int j = i + 1; j <= m; ++j) {
      rel("X commute", chain({X(i, 1), X(j, 1)}), chain({X(j, 1), X(i, 1)}));
      rel("Y commute", chain({Y(i, 1), Y(j, 1)}), chain({Y(j, 1), Y(i, 1)}));
    }
  for (int i = 1; i < m; ++i)
    for (int j = 1; j <= m; ++j)
      if (j != i && j != i + 1)
        rel("X T commute", chain({X(j, 1), T(i)}), chain({T(i), X(j, 1)}));
  // X_1 from the word Q T_{m-1}^{-1} ... T_1^{-1}
  {
    std::vector<Fn> w{Qop(1)};
    for (int i = m - 1; i >= 1; --i) w.push_back(Ti(i));
    rel("X_1 = Q T_{m-1}^-1...T_1^-1", chain(w), X(1, 1));
  }

  RelationReport report;
  LaurentPoly::Expo e(m, 0);
  detail::enumerate_box(m, b, e, 0, [&](const LaurentPoly::Expo &mono) {
    LaurentPoly f = LaurentPoly::monomial(m, mono);
    for (const auto &[name, fns] : rels) {
      ++report.checked;
      if (!(fns.first(f) == fns.second(f))) {
        report.failures.push_back({name, mono});
      }
    }
  });
  return report;
}

inline std::vector<WordOp> parse_operator_word(const std::string &text,
                                               int m) {
  std::vector<WordOp> word;
  std::istringstream in(text);
  std::string tok;
  auto parse_args = [&](const std::string &t, size_t open) {
    if (t.back() != ')')
      throw std::invalid_argument("operator word: missing ')' in " + t);
    return t.substr(open + 1, t.size() - open - 2);
  };
  while (in >> tok) {
    size_t open = tok.find('(');
    if (open == std::string::npos)
      throw std::invalid_argument("operator word: bad token " + tok);
    std::string head = tok.substr(0, open);
    std::string args = parse_args(tok, open);
    WordOp op;
    auto two_ints = [&]() {
      size_t comma = args.find(',');
      if (comma == std::string::npos)
        throw std::invalid_argument("operator word: expected i,j in " + tok);
      op.i = std::stoi(args.substr(0, comma));
      op.j = std::stoi(args.substr(comma + 1));
      if (op.i < 1 || op.i > m || op.j < 1 || op.j > m || op.i == op.j)
        throw std::invalid_argument("operator word: index range in " + tok);
    };
    if (head == "s") {
      op.kind = WordOp::Swap;
      two_ints();
    } else if (head == "t") {
      op.kind = WordOp::T;
      two_ints();
    } else if (head == "t-") {
      op.kind = WordOp::TInv;
      two_ints();
    } else if (head == "D" || head == "D-") {
      op.kind = WordOp::Shift;
      op.i = std::stoi(args);
      op.power = head == "D" ? 1 : -1;
      if (op.i < 1 || op.i > m)
        throw std::invalid_argument("operator word: index range in " + tok);
    } else if (head == "mul") {
      op.kind = WordOp::Mul;
      op.factor = parse_laurent(args, m);
    } else {
      throw std::invalid_argument("operator word: unknown token " + tok);
    }
    word.push_back(op);
  }
  return word;
}

}  // namespace qfock
