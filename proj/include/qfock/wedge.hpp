#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qfock/matrix.hpp"
#include "qfock/vm.hpp"

namespace qfock {

/// Vector in the q-wedge quotient of (C^n[X^+-1])^{(x)m}: basis wedges
/// u_{j_1} ^ ... ^ u_{j_m} indexed by strictly decreasing integer tuples.
class WedgeVector {
 public:
  using TermMap = std::map<IndexTuple, Scalar>;

  explicit WedgeVector(int m) : m_(m) {}

  static WedgeVector basis(const IndexTuple &j, const Scalar &c = Scalar(1)) {
    WedgeVector w(static_cast<int>(j.size()));
    w.add_wedge(j, c);
    return w;
  }

  int nslots() const { return m_; }
  const TermMap &terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  /// Adds c.u_{j_1}^...^u_{j_m}, normalizing by signed antisymmetrization:
  /// repeated entries give zero, sorting to strictly decreasing order flips
  /// the sign once per transposition.
  void add_wedge(IndexTuple j, Scalar c) {
    if (static_cast<int>(j.size()) != m_)
      throw std::invalid_argument("WedgeVector::add_wedge: arity mismatch");
    if (c.is_zero()) return;
    bool neg = false;
    for (size_t a = 1; a < j.size(); ++a) {
      size_t b = a;
      while (b > 0 && j[b] > j[b - 1]) {
        std::swap(j[b], j[b - 1]);
        neg = !neg;
        --b;
      }
      if (b > 0 && j[b] == j[b - 1]) return;
    }
    if (neg) c = -c;
    auto it = t_.find(j);
    if (it == t_.end()) {
      t_.emplace(std::move(j), std::move(c));
      return;
    }
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }

  WedgeVector &operator+=(const WedgeVector &o) {
    for (const auto &[j, c] : o.t_) add_wedge(j, c);
    return *this;
  }
  WedgeVector operator+(const WedgeVector &o) const {
    WedgeVector r = *this;
    r += o;
    return r;
  }
  WedgeVector operator-(const WedgeVector &o) const {
    WedgeVector r = *this;
    for (const auto &[j, c] : o.t_) r.add_wedge(j, -c);
    return r;
  }
  friend WedgeVector operator*(const Scalar &c, const WedgeVector &w) {
    WedgeVector r(w.m_);
    if (c.is_zero()) return r;
    for (const auto &[j, x] : w.t_) r.t_.emplace(j, c * x);
    return r;
  }
  bool operator==(const WedgeVector &o) const {
    return m_ == o.m_ && t_ == o.t_;
  }

  std::string to_string() const {
    if (t_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto &[j, c] : t_) {
      if (!first) out << " + ";
      first = false;
      out << "(" << c.to_string() << ")*u[";
      for (size_t l = 0; l < j.size(); ++l) out << (l ? "," : "") << j[l];
      out << "]";
    }
    return out.str();
  }

 private:
  int m_;
  TermMap t_;
};

namespace detail {

/// Reduction of a module vector to coset coordinates: z-exponents evaluate
/// to q-powers (the Y_i - q^{2i-2} relations), tensor indices antisymmetrize
/// plainly (the T_i + q^{-1} relations on z-free vectors).
inline WedgeVector coinvariant_reduce(const VmVector &v) {
  const int m = v.nslots();
  WedgeVector out(m);
  for (const auto &[key, c] : v.terms()) {
    Scalar s = c;
    for (int i = 1; i <= m; ++i) s *= Scalar::q((2 - 2 * i) * key.first[i - 1]);
    out.add_wedge(key.second, s);
  }
  return out;
}

/// Evaluates the class of the monomial X^{-g} v_w, without the basis
/// normalization: the twist q^{#increasing pairs} identifies the tensor
/// slot with the induced-module generator, then the X-words act.
inline WedgeVector eval_monomial_class(const ScalarContext &ctx,
                                       const std::vector<int> &g,
                                       const IndexTuple &w, const Scalar &c) {
  static std::map<std::tuple<int, std::vector<int>, IndexTuple>, WedgeVector>
      cache;
  const auto key = std::make_tuple(ctx.n, g, w);
  auto it = cache.find(key);
  if (it == cache.end()) {
    const int m = static_cast<int>(w.size());
    VmVector cur = VmVector::basis(w, std::vector<int>(m, 0),
                                   Scalar::q(increasing_pairs(w)));
    for (int l = 1; l <= m; ++l) {
      const int p = -g[l - 1];
      for (int a = 0; a < std::abs(p); ++a)
        cur = act_vm_X(ctx, cur, l, p > 0 ? 1 : -1);
    }
    it = cache.emplace(key, coinvariant_reduce(cur)).first;
  }
  WedgeVector out(static_cast<int>(w.size()));
  for (const auto &[j, x] : it->second.terms()) out.add_wedge(j, c * x);
  return out;
}

/// Normalizer of a normally ordered basis wedge: the class of the monomial
/// lift is a single multiple of the wedge itself; this returns that scalar.
inline Scalar wedge_diag(const ScalarContext &ctx, const IndexTuple &j) {
  static std::map<std::pair<int, IndexTuple>, Scalar> cache;
  auto it = cache.find({ctx.n, j});
  if (it != cache.end()) return it->second;
  const int m = static_cast<int>(j.size());
  std::vector<int> g(m);
  IndexTuple w(m);
  for (int l = 0; l < m; ++l) {
    w[l] = window_bar(j[l], ctx.n);
    g[l] = window_under(j[l], ctx.n);
  }
  WedgeVector cls = eval_monomial_class(ctx, g, w, Scalar(1));
  if (cls.terms().size() != 1 || cls.terms().begin()->first != j)
    throw std::logic_error("wedge_diag: lift class is not diagonal");
  cache.emplace(std::make_pair(ctx.n, j), cls.terms().begin()->second);
  return cache.at({ctx.n, j});
}

}  // namespace detail

/// A representative of a wedge class: VmVector terms z^g (x) v_w stand for
/// the monomial X^{-g} v_w, i.e. the pure tensor with u-indices
/// j_l = w_l + n g_l. The result is expressed in the normally ordered
/// wedge basis (u_j for strictly decreasing j).
inline WedgeVector rep_to_wedge(const ScalarContext &ctx, const VmVector &v) {
  const int m = v.nslots();
  WedgeVector raw(m);
  for (const auto &[key, c] : v.terms())
    raw += detail::eval_monomial_class(ctx, key.first, key.second, c);
  WedgeVector out(m);
  for (const auto &[j, c] : raw.terms())
    out.add_wedge(j, c * detail::wedge_diag(ctx, j).inverse());
  return out;
}

/// Projection of a pure tensor combination (tuples over Z index the basis
/// u_j of each slot) to the quotient by Om = Sum Ker(T_i - q).
inline WedgeVector project_to_wedge(const ScalarContext &ctx,
                                    const TensorVector &v) {
  const int m = v.nslots();
  VmVector rep(m);
  for (const auto &[j, c] : v.terms()) {
    std::vector<int> g(m);
    IndexTuple w(m);
    for (int l = 0; l < m; ++l) {
      w[l] = window_bar(j[l], ctx.n);
      g[l] = window_under(j[l], ctx.n);
    }
    rep.add(g, w, c);
  }
  return rep_to_wedge(ctx, rep);
}

/// Deterministic section: the strictly decreasing wedge index lifts to
/// X^{-under(j)} v_{bar(j)} with slots in the given order.
inline VmVector wedge_lift(const IndexTuple &j, int n,
                           const Scalar &c = Scalar(1)) {
  const int m = static_cast<int>(j.size());
  std::vector<int> g(m);
  IndexTuple w(m);
  for (int l = 0; l < m; ++l) {
    w[l] = window_bar(j[l], n);
    g[l] = window_under(j[l], n);
  }
  return VmVector::basis(w, g, c);
}

inline VmVector wedge_lift(const WedgeVector &w, int n) {
  VmVector out(w.nslots());
  for (const auto &[j, c] : w.terms()) out += wedge_lift(j, n, c);
  return out;
}

/// The slot permutation of a monomial with the window part in weakly
/// increasing order; the translation exponents follow their slots.
struct IncreasingLift {
  std::vector<int> zexp;
  IndexTuple window;
};

inline IncreasingLift wedge_lift_increasing(const IndexTuple &j, int n) {
  const int m = static_cast<int>(j.size());
  std::vector<int> ord(m);
  for (int l = 0; l < m; ++l) ord[l] = l;
  std::stable_sort(ord.begin(), ord.end(), [&](int a, int b) {
    return window_bar(j[a], n) < window_bar(j[b], n);
  });
  IncreasingLift out;
  out.zexp.resize(m);
  out.window.resize(m);
  for (int l = 0; l < m; ++l) {
    out.window[l] = window_bar(j[ord[l]], n);
    out.zexp[l] = window_under(j[ord[l]], n);
  }
  return out;
}

namespace detail {

/// Applies a tensor-slot operator to every z-exponent group of a rep.
inline VmVector map_tensor(
    const VmVector &v,
    const std::function<TensorVector(const TensorVector &)> &f) {
  const int m = v.nslots();
  std::map<std::vector<int>, TensorVector> groups;
  for (const auto &[key, c] : v.terms()) {
    auto it = groups.find(key.first);
    if (it == groups.end()) it = groups.emplace(key.first, TensorVector(m)).first;
    it->second.add(key.second, c);
  }
  VmVector out(m);
  for (const auto &[g, tv] : groups) {
    const TensorVector img = f(tv);
    for (const auto &[j, c] : img.terms()) out.add(g, j, c);
  }
  return out;
}

/// Applies a Laurent-polynomial operator to every window group of a rep.
inline VmVector map_poly(
    const VmVector &v,
    const std::function<LaurentPoly(const LaurentPoly &)> &f) {
  const int m = v.nslots();
  std::map<IndexTuple, LaurentPoly> groups;
  for (const auto &[key, c] : v.terms()) {
    auto it = groups.find(key.second);
    if (it == groups.end()) it = groups.emplace(key.second, LaurentPoly(m)).first;
    it->second.add(key.first, c);
  }
  VmVector out(m);
  for (const auto &[j, f0] : groups) {
    const LaurentPoly img = f(f0);
    for (const auto &[e, c] : img.terms()) out.add(e, j, c);
  }
  return out;
}

}  // namespace detail

/// Right multiplication of a representative by X_l^{power}: the polynomial
/// part picks up z_l^{-power} (z stands for X^{-1}).
inline VmVector rep_mul_x(const VmVector &v, int l, int power) {
  VmVector out(v.nslots());
  for (const auto &[key, c] : v.terms()) {
    std::vector<int> g = key.first;
    g[l - 1] -= power;
    out.add(g, key.second, c);
  }
  return out;
}

/// Right multiplication by Y_l^{power}, absorbed into the polynomial part
/// through the hat-x substitution operators (their defining property
/// identifies P(X^{-1}) Y_l^{-1} with hat_x_l(P)(X^{-1}) in the quotient).
inline VmVector rep_apply_y_right(const ScalarContext &ctx, const VmVector &v,
                                  int l, int power) {
  if (power == 0) return v;
  CherednikRep rep(ctx, v.nslots());
  const int sgn = power < 0 ? 1 : -1;
  VmVector out = v;
  for (int k = 0; k < std::abs(power); ++k)
    out = detail::map_poly(
        out, [&](const LaurentPoly &f) { return rep.hat_x(f, l, sgn); });
  return out;
}

/// Right multiplication by T_k^{sign}: acts on the window part alone.
inline VmVector rep_tau(const VmVector &v, int n, int k, int sign = 1) {
  return detail::map_tensor(
      v, [&](const TensorVector &t) { return act_xmodel_T(t, n, k, sign); });
}

/// The toroidal action on a representative, generator families:
/// i = 1..n-1 coproduct; i = 0 via X_l^{+-1} and the Schur pair; i = n via
/// hat_x_l^{+-1} and the Schur pair, with the q^{-+1} p^{+-1/n} prefactor.
inline VmVector wedge_act_rep(const ScalarContext &ctx, char gen, int i,
                              const VmVector &v, int sign = 1) {
  const int n = ctx.n, m = v.nslots();
  if (i < 0 || i > n) throw std::invalid_argument("wedge_act_rep: bad index");
  if (gen == 'k') {
    if (i >= 1 && i <= n - 1)
      return detail::map_tensor(v, [&](const TensorVector &t) {
        return act_coproduct(ctx, 'k', i, t, sign);
      });
    // k_0 = k_n: k_theta^{-1} on every slot
    return detail::map_tensor(v, [&](const TensorVector &t) {
      TensorVector r = t;
      for (int s = 1; s <= m; ++s)
        r = act_schur_theta_slot(ctx, 'k', r, s, -sign);
      return r;
    });
  }
  if (gen != 'e' && gen != 'f')
    throw std::invalid_argument("wedge_act_rep: unknown generator");
  if (sign != 1)
    throw std::invalid_argument("wedge_act_rep: e/f take no inverse");
  if (i >= 1 && i <= n - 1)
    return detail::map_tensor(v, [&](const TensorVector &t) {
      return act_coproduct(ctx, gen, i, t);
    });
  VmVector out(m);
  CherednikRep rep(ctx, m);
  for (int l = 1; l <= m; ++l) {
    VmVector term = detail::map_tensor(v, [&](const TensorVector &t) {
      return gen == 'e' ? act_f_theta_l(ctx, t, l) : act_e_theta_l(ctx, t, l);
    });
    if (i == 0) {
      term = rep_mul_x(term, l, gen == 'e' ? 1 : -1);
    } else {
      const int hs = gen == 'e' ? 1 : -1;
      term = detail::map_poly(
          term, [&](const LaurentPoly &f) { return rep.hat_x(f, l, hs); });
    }
    out += term;
  }
  if (i == n)
    out = (gen == 'e' ? Scalar::q(-1) * ctx.u_root(1)
                      : Scalar::q(1) * ctx.u_root(-1)) *
          out;
  return out;
}

inline WedgeVector wedge_act(const ScalarContext &ctx, char gen, int i,
                             const WedgeVector &w, int sign = 1) {
  return rep_to_wedge(ctx, wedge_act_rep(ctx, gen, i, wedge_lift(w, ctx.n), sign));
}

namespace detail {

/// A letter of a word in the braid and translation generators.
struct TYLetter {
  bool is_t;
  int idx;
  int sign;  // exponent +-1
};

struct TYTerm {
  Scalar c;
  std::vector<TYLetter> w;
};

/// Rewrites a word so every Y-letter stands left of every T-letter, using
/// the T/Y commutation rules of the affine Hecke algebra.
inline std::vector<TYTerm> straighten_ty(const std::vector<TYLetter> &word) {
  std::vector<TYTerm> work{{Scalar(1), word}}, done;
  const Scalar comm = Scalar::q() - Scalar::q(-1);
  while (!work.empty()) {
    TYTerm t = std::move(work.back());
    work.pop_back();
    size_t pos = 0;
    bool found = false;
    for (size_t k = 0; k + 1 < t.w.size(); ++k)
      if (t.w[k].is_t && !t.w[k + 1].is_t) {
        pos = k;
        found = true;
        break;
      }
    if (!found) {
      done.push_back(std::move(t));
      continue;
    }
    const TYLetter T = t.w[pos], Y = t.w[pos + 1];
    auto emit = [&](const Scalar &c, const std::vector<TYLetter> &mid) {
      TYTerm s;
      s.c = t.c * c;
      s.w.assign(t.w.begin(), t.w.begin() + pos);
      s.w.insert(s.w.end(), mid.begin(), mid.end());
      s.w.insert(s.w.end(), t.w.begin() + pos + 2, t.w.end());
      work.push_back(std::move(s));
    };
    const int i = T.idx;
    auto YL = [](int j, int s) { return TYLetter{false, j, s}; };
    auto TL = [](int j, int s) { return TYLetter{true, j, s}; };
    if (Y.idx != i && Y.idx != i + 1) {
      emit(Scalar(1), {Y, T});
    } else if (T.sign > 0) {
      if (Y.idx == i && Y.sign > 0) {
        emit(comm, {YL(i, 1)});
        emit(Scalar(1), {YL(i + 1, 1), TL(i, 1)});
      } else if (Y.idx == i + 1 && Y.sign > 0) {
        emit(Scalar(1), {YL(i, 1), TL(i, -1)});
      } else if (Y.idx == i && Y.sign < 0) {
        emit(Scalar(1), {YL(i + 1, -1), TL(i, -1)});
      } else {
        emit(comm, {YL(i + 1, -1)});
        emit(Scalar(1), {YL(i, -1), TL(i, 1)});
      }
    } else {
      if (Y.idx == i && Y.sign > 0) {
        emit(Scalar(1), {YL(i + 1, 1), TL(i, 1)});
      } else if (Y.idx == i + 1 && Y.sign > 0) {
        emit(Scalar(1), {YL(i, 1), TL(i, -1)});
        emit(-comm, {YL(i + 1, 1)});
      } else if (Y.idx == i && Y.sign < 0) {
        emit(Scalar(1), {YL(i + 1, -1), TL(i, -1)});
        emit(-comm, {YL(i, -1)});
      } else {
        emit(Scalar(1), {YL(i, -1), TL(i, 1)});
      }
    }
  }
  return done;
}

/// Evaluates z^g . word . v_w in the quotient: Y-letters absorb into the
/// polynomial part, T-letters act on the window part, rightmost first.
inline VmVector eval_ty_word(const ScalarContext &ctx,
                             const std::vector<TYLetter> &word,
                             const std::vector<int> &g, const IndexTuple &w,
                             const Scalar &c) {
  const int m = static_cast<int>(w.size());
  VmVector out(m);
  for (const auto &term : straighten_ty(word)) {
    VmVector r = VmVector::basis(w, g, c * term.c);
    size_t split = 0;
    while (split < term.w.size() && !term.w[split].is_t) ++split;
    for (size_t k = 0; k < split; ++k)
      r = rep_apply_y_right(ctx, r, term.w[k].idx, term.w[k].sign);
    for (size_t k = term.w.size(); k > split; --k)
      r = rep_tau(r, ctx.n, term.w[k - 1].idx, term.w[k - 1].sign);
    out += r;
  }
  return out;
}

/// Expresses a basis wedge through classes of monomials whose window part
/// is in weakly increasing slot order: u_j = sum_t beta_t class(R_t), where
/// R_t is the window-sorted monomial built from the normally ordered tuple
/// t. The straightening closure is finite on every weight component.
inline const std::vector<std::pair<IndexTuple, Scalar>> &
increasing_decomposition(const ScalarContext &ctx, const IndexTuple &j) {
  static std::map<std::pair<int, IndexTuple>,
                  std::vector<std::pair<IndexTuple, Scalar>>>
      cache;
  const std::pair<int, IndexTuple> key{ctx.n, j};
  auto hit = cache.find(key);
  if (hit != cache.end()) return hit->second;

  std::vector<IndexTuple> order = {j};
  std::map<IndexTuple, size_t> col = {{j, 0}};
  std::vector<WedgeVector> cls;
  for (size_t c = 0; c < order.size(); ++c) {
    IncreasingLift lift = wedge_lift_increasing(order[c], ctx.n);
    cls.push_back(
        rep_to_wedge(ctx, VmVector::basis(lift.window, lift.zexp)));
    for (const auto &[t, s] : cls.back().terms())
      if (!col.count(t)) {
        col.emplace(t, order.size());
        order.push_back(t);
      }
    if (order.size() > 4096)
      throw std::logic_error("increasing_decomposition: closure too large");
  }
  const size_t N = order.size();
  Matrix M(N, N);
  for (size_t c = 0; c < N; ++c)
    for (const auto &[t, s] : cls[c].terms()) M.at(col.at(t), c) = s;
  std::vector<Scalar> rhs(N);
  rhs[0] = Scalar(1);
  auto beta = M.solve(rhs);
  if (!beta)
    throw std::logic_error("increasing_decomposition: singular system");
  std::vector<std::pair<IndexTuple, Scalar>> out;
  for (size_t c = 0; c < N; ++c)
    if (!(*beta)[c].is_zero()) out.emplace_back(order[c], (*beta)[c]);
  return cache.emplace(key, std::move(out)).first->second;
}

}  // namespace detail

/// Mode r of the Drinfeld current e_i(z) or f_i(z), 1 <= i <= n-1: the
/// epsilon factor contributes (q^n p^{i/n})^{-r} Y^{-r} at the pivot slot.
inline WedgeVector drinfeld_mode(const ScalarContext &ctx, char tag, int i,
                                 int r, const WedgeVector &w) {
  const int n = ctx.n;
  if (i < 1 || i > n - 1)
    throw std::invalid_argument("drinfeld_mode: index out of range");
  if (tag != 'e' && tag != 'f')
    throw std::invalid_argument("drinfeld_mode: unknown current");
  VmVector acc(w.nslots());
  const Scalar mode_c = Scalar::q(-n * r) * ctx.u_root(-i * r);
  for (const auto &[j0, c00] : w.terms())
    for (const auto &[t, beta] : detail::increasing_decomposition(ctx, j0)) {
      IncreasingLift lift = wedge_lift_increasing(t, n);
      const Scalar c0 = c00 * beta;
      const int m = static_cast<int>(t.size());
      std::vector<int> pre;
      for (int l = 1; l <= m; ++l)
        if (lift.window[l - 1] == (tag == 'f' ? i : i + 1)) pre.push_back(l);
      if (pre.empty()) continue;
      const Scalar base =
          c0 * mode_c * Scalar::q(1 - static_cast<int>(pre.size()));
      if (tag == 'f') {
        const int s = pre.back();
        IndexTuple tgt = lift.window;
        tgt[s - 1] += 1;
        for (int k : pre) {
          std::vector<detail::TYLetter> word;
          for (int a = k; a <= s - 1; ++a) word.push_back({true, a, 1});
          for (int a = 0; a < std::abs(r); ++a)
            word.push_back({false, s, r > 0 ? -1 : 1});
          acc += detail::eval_ty_word(ctx, word, lift.zexp, tgt,
                                      base * Scalar::q(s - k));
        }
      } else {
        const int s1 = pre.front();
        IndexTuple tgt = lift.window;
        tgt[s1 - 1] -= 1;
        for (int k : pre) {
          std::vector<detail::TYLetter> word;
          for (int a = k - 1; a >= s1; --a) word.push_back({true, a, 1});
          for (int a = 0; a < std::abs(r); ++a)
            word.push_back({false, s1, r > 0 ? -1 : 1});
          acc += detail::eval_ty_word(ctx, word, lift.zexp, tgt,
                                      base * Scalar::q(k - s1));
        }
      }
    }
  return rep_to_wedge(ctx, acc);
}

/// Charge-sector reference tuple: entry l of the vacuum is e - l + 1.
inline int sector_entry(int e, int l) { return e - l + 1; }

/// Degree of a wedge index in the charge-e sector; -1 if the tuple leaves
/// the sector (some underline drops below the vacuum underline).
inline int wedge_degree(const IndexTuple &j, int n, int e) {
  int deg = 0;
  for (size_t l = 0; l < j.size(); ++l) {
    int d = window_under(j[l], n) -
            window_under(sector_entry(e, static_cast<int>(l) + 1), n);
    if (d < 0) return -1;
    deg += d;
  }
  return deg;
}

namespace detail {

inline void sector_basis_rec(int n, int e, int m, int l, int budget, int prev,
                             IndexTuple &cur, std::vector<IndexTuple> &out) {
  if (l > m) {
    if (budget == 0) out.push_back(cur);
    return;
  }
  const int base = window_under(sector_entry(e, l), n);
  int hi = n * (base + budget) + n;
  if (l > 1) hi = std::min(hi, prev - 1);
  for (int j = hi; j >= n * base + 1; --j) {
    const int d = window_under(j, n) - base;
    if (d < 0 || d > budget) continue;
    cur[l - 1] = j;
    sector_basis_rec(n, e, m, l + 1, budget - d, j, cur, out);
  }
}

}  // namespace detail

/// All strictly decreasing tuples in the charge-e sector of degree k,
/// in lexicographic order.
inline std::vector<IndexTuple> sector_basis(int n, int e, int k, int m) {
  if (k < 0) throw std::invalid_argument("sector_basis: negative degree");
  std::vector<IndexTuple> out;
  IndexTuple cur(m);
  detail::sector_basis_rec(n, e, m, 1, k, 0, cur, out);
  std::sort(out.begin(), out.end());
  return out;
}

/// Projection from the (m+n)-slot sector to the m-slot sector: keeps a
/// wedge iff the n tail underlines match the vacuum, then drops the tail.
inline WedgeVector pi_projection(int n, int e, int m, const WedgeVector &w) {
  if (w.nslots() != m + n)
    throw std::invalid_argument("pi_projection: expected m+n slots");
  WedgeVector out(m);
  for (const auto &[j, c] : w.terms()) {
    bool keep = true;
    for (int l = m + 1; l <= m + n; ++l)
      if (window_under(j[l - 1], n) != window_under(sector_entry(e, l), n)) {
        keep = false;
        break;
      }
    if (!keep) continue;
    out.add_wedge(IndexTuple(j.begin(), j.begin() + m), c);
  }
  return out;
}

/// Thrown when an operator image leaves the declared target span.
class EscapeError : public std::runtime_error {
 public:
  EscapeError(std::string msg, std::vector<IndexTuple> tuples)
      : std::runtime_error(std::move(msg)), escaped(std::move(tuples)) {}
  std::vector<IndexTuple> escaped;
};

/// Matrix of a wedge operator: columns are images of the domain basis in
/// target coordinates; escaping tuples raise EscapeError.
inline Matrix matrix_of_generator(
    const std::function<WedgeVector(const WedgeVector &)> &op,
    const std::vector<IndexTuple> &domain,
    const std::vector<IndexTuple> &target) {
  std::map<IndexTuple, size_t> row;
  for (size_t i = 0; i < target.size(); ++i) row.emplace(target[i], i);
  Matrix mat(target.size(), domain.size());
  std::vector<IndexTuple> escaped;
  for (size_t col = 0; col < domain.size(); ++col) {
    WedgeVector img = op(WedgeVector::basis(domain[col]));
    for (const auto &[j, c] : img.terms()) {
      auto it = row.find(j);
      if (it == row.end()) {
        escaped.push_back(j);
        continue;
      }
      mat.at(it->second, col) = c;
    }
  }
  if (!escaped.empty()) {
    std::sort(escaped.begin(), escaped.end());
    escaped.erase(std::unique(escaped.begin(), escaped.end()), escaped.end());
    std::ostringstream msg;
    msg << "matrix_of_generator: image escapes target span:";
    for (const auto &j : escaped) {
      msg << " [";
      for (size_t l = 0; l < j.size(); ++l) msg << (l ? "," : "") << j[l];
      msg << "]";
    }
    throw EscapeError(msg.str(), std::move(escaped));
  }
  return mat;
}

}  // namespace qfock
