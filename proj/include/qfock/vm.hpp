#pragma once

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "qfock/cherednik.hpp"
#include "qfock/tensor.hpp"

namespace qfock {

/// Finitely supported vector in the module (C^n)^{(x)m}[zeta^{+-1}, z^{+-1}]:
/// each term is v_j . z^e with j an index tuple and e the z-exponent vector.
class VmVector {
 public:
  using Key = std::pair<std::vector<int>, IndexTuple>;
  using TermMap = std::map<Key, Scalar>;

  explicit VmVector(int m) : m_(m) {}

  static VmVector basis(const IndexTuple &j, const std::vector<int> &e,
                        const Scalar &c = Scalar(1)) {
    VmVector v(static_cast<int>(j.size()));
    v.add(e, j, c);
    return v;
  }

  static VmVector from_tensor(const TensorVector &v) {
    VmVector out(v.nslots());
    std::vector<int> e(v.nslots(), 0);
    for (const auto &[j, c] : v.terms()) out.add(e, j, c);
    return out;
  }

  int nslots() const { return m_; }
  const TermMap &terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  void add(const std::vector<int> &e, const IndexTuple &j, const Scalar &c) {
    if (static_cast<int>(e.size()) != m_ || static_cast<int>(j.size()) != m_)
      throw std::invalid_argument("VmVector::add: slot count mismatch");
    Key key{e, j};
    auto it = t_.find(key);
    if (it == t_.end()) {
      if (!c.is_zero()) t_.emplace(std::move(key), c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }

  VmVector &operator+=(const VmVector &o) {
    for (const auto &[k, c] : o.t_) add(k.first, k.second, c);
    return *this;
  }

  VmVector operator+(const VmVector &o) const {
    VmVector r = *this;
    r += o;
    return r;
  }

  VmVector operator-(const VmVector &o) const {
    VmVector r = *this;
    for (const auto &[k, c] : o.t_) r.add(k.first, k.second, -c);
    return r;
  }

  friend VmVector operator*(const Scalar &c, const VmVector &v) {
    VmVector r(v.m_);
    if (c.is_zero()) return r;
    for (const auto &[k, x] : v.t_) r.t_.emplace(k, c * x);
    return r;
  }

  bool operator==(const VmVector &o) const { return m_ == o.m_ && t_ == o.t_; }

  std::string to_string() const {
    if (t_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto &[k, c] : t_) {
      if (!first) out << " + ";
      first = false;
      out << "(" << c.to_string() << ")*v[";
      for (size_t l = 0; l < k.second.size(); ++l)
        out << (l ? "," : "") << k.second[l];
      out << "]*z^(";
      for (size_t l = 0; l < k.first.size(); ++l)
        out << (l ? "," : "") << k.first[l];
      out << ")";
    }
    return out.str();
  }

 private:
  int m_;
  TermMap t_;
};

/// T_i(v.P) = (tau_i(v) - q v).s_i(P) + v.t_i(P).
inline VmVector act_vm_T(const VmVector &v, int i, int sign = 1) {
  const int m = v.nslots();
  if (i < 1 || i >= m) throw std::invalid_argument("act_vm_T: bad slot");
  VmVector out(m);
  for (const auto &[key, c] : v.terms()) {
    const auto &[e, j] = key;
    std::vector<int> se = e;
    std::swap(se[i - 1], se[i]);
    TensorVector tv =
        act_tau(TensorVector::basis(j), i) -
        Scalar::q() * TensorVector::basis(j);
    for (const auto &[j2, c2] : tv.terms()) out.add(se, j2, c * c2);
    LaurentPoly tp = apply_t(LaurentPoly::monomial(m, e), i, i + 1);
    for (const auto &[e2, c2] : tp.terms()) out.add(e2, j, c * c2);
  }
  if (sign < 0) return out - (Scalar::q() - Scalar::q(-1)) * v;
  return out;
}

/// Y_i^{power}: multiplication by z_i^{-power}.
inline VmVector act_vm_Y(const VmVector &v, int i, int power = 1) {
  VmVector out(v.nslots());
  for (const auto &[key, c] : v.terms()) {
    std::vector<int> e = key.first;
    e[i - 1] -= power;
    out.add(e, key.second, c);
  }
  return out;
}

/// Q = theta-rotation on the tensor part times D_1 s_{1,m}...s_{1,2} on the
/// z-part.
inline VmVector act_vm_Q(const ScalarContext &ctx, const VmVector &v,
                         int sign = 1) {
  const int m = v.nslots();
  VmVector out(m);
  for (const auto &[key, c] : v.terms()) {
    const auto &[e, j] = key;
    std::vector<int> pe(m);
    Scalar coeff = c;
    if (sign > 0) {
      // substitution z_k -> z_{k+1}, z_m -> p^{-1} z_1 on the z-part
      pe[0] = e[m - 1];
      for (int k = 1; k < m; ++k) pe[k] = e[k - 1];
      coeff *= ctx.p(-pe[0]);
    } else {
      coeff *= ctx.p(e[0]);
      for (int k = 0; k + 1 < m; ++k) pe[k] = e[k + 1];
      pe[m - 1] = e[0];
    }
    TensorVector tv = act_theta_rot(TensorVector::basis(j), ctx.n, sign);
    for (const auto &[j2, c2] : tv.terms()) out.add(pe, j2, coeff * c2);
  }
  return out;
}

namespace detail {

/// X_l = T_{l-1}...T_1 Q T_{m-1}^{-1}...T_l^{-1}, rightmost factor first.
inline VmVector act_vm_X_word(const ScalarContext &ctx, const VmVector &v,
                              int l, int sign) {
  const int m = v.nslots();
  VmVector r = v;
  if (sign > 0) {
    for (int k = l; k <= m - 1; ++k) r = act_vm_T(r, k, -1);
    r = act_vm_Q(ctx, r);
    for (int k = 1; k <= l - 1; ++k) r = act_vm_T(r, k);
  } else {
    for (int k = l - 1; k >= 1; --k) r = act_vm_T(r, k, -1);
    r = act_vm_Q(ctx, r, -1);
    for (int k = m - 1; k >= l; --k) r = act_vm_T(r, k);
  }
  return r;
}

} // namespace detail

/// X_l action, evaluated term by term with a singleton cache so repeated
/// basis elements across long X-words are only expanded once.
inline VmVector act_vm_X(const ScalarContext &ctx, const VmVector &v, int l,
                         int sign = 1) {
  const int m = v.nslots();
  if (l < 1 || l > m) throw std::invalid_argument("act_vm_X: bad index");
  using Key = std::tuple<int, int, int, std::vector<int>, IndexTuple>;
  static std::map<Key, VmVector> cache;
  VmVector out(m);
  for (const auto &[key, c] : v.terms()) {
    const auto k = std::make_tuple(ctx.n, l, sign, key.first, key.second);
    auto it = cache.find(k);
    if (it == cache.end()) {
      VmVector one = VmVector::basis(key.second, key.first, Scalar::q(0));
      it = cache.emplace(k, detail::act_vm_X_word(ctx, one, l, sign)).first;
    }
    for (const auto &[k2, c2] : it->second.terms())
      out.add(k2.first, k2.second, c * c2);
  }
  return out;
}

/// The level-zero toroidal generators e_i, f_i, k_i (i = 0..n-1) act on the
/// tensor part only.
inline VmVector act_vm_affine(const ScalarContext &ctx, char gen, int i,
                              const VmVector &v, int sign = 1) {
  VmVector out(v.nslots());
  for (const auto &[key, c] : v.terms()) {
    TensorVector tv =
        act_affine(ctx, gen, i, TensorVector::basis(key.second), sign);
    for (const auto &[j2, c2] : tv.terms()) out.add(key.first, j2, c * c2);
  }
  return out;
}

/// theta-operators of the Schur dual: e_theta(v_j) = delta(j=n)v_1,
/// f_theta(v_j) = delta(j=1)v_n, k_theta(v_j) = q^{d(j=1)-d(j=n)}v_j on
/// window values.
inline TensorVector act_schur_theta_slot(const ScalarContext &ctx, char gen,
                                         const TensorVector &v, int l,
                                         int sign = 1) {
  const int n = ctx.n;
  TensorVector out(v.nslots());
  for (const auto &[j, c] : v.terms()) {
    if (!in_window(j, n))
      throw std::invalid_argument("act_schur_theta_slot: index not in window");
    int val = j[l - 1];
    IndexTuple r = j;
    if (gen == 'e') {
      if (val != n) continue;
      r[l - 1] = 1;
      out.add(r, c);
    } else if (gen == 'f') {
      if (val != 1) continue;
      r[l - 1] = n;
      out.add(r, c);
    } else if (gen == 'k') {
      out.add(j, c * Scalar::q(sign * ((val == 1) - (val == n))));
    } else {
      throw std::invalid_argument("act_schur_theta_slot: unknown generator");
    }
  }
  return out;
}

/// f_{theta,l} = 1^{(x)l-1} (x) f_theta (x) (k_theta^{-1})^{(x)m-l}.
inline TensorVector act_f_theta_l(const ScalarContext &ctx,
                                  const TensorVector &v, int l) {
  TensorVector r = act_schur_theta_slot(ctx, 'f', v, l);
  for (int s = l + 1; s <= v.nslots(); ++s)
    r = act_schur_theta_slot(ctx, 'k', r, s, -1);
  return r;
}

/// e_{theta,l} = k_theta^{(x)l-1} (x) e_theta (x) 1^{(x)m-l}.
inline TensorVector act_e_theta_l(const ScalarContext &ctx,
                                  const TensorVector &v, int l) {
  TensorVector r = act_schur_theta_slot(ctx, 'e', v, l);
  for (int s = 1; s < l; ++s) r = act_schur_theta_slot(ctx, 'k', r, s, 1);
  return r;
}

namespace detail {

struct CoreReduction {
  struct Op {
    char kind;  // 'T' or 'Q'
    int index;  // slot for T, sign for Q
  };
  std::vector<Op> ops;  // discovery order: v_j = gamma * ops[0](ops[1](...))
  IndexTuple core;
  Scalar gamma{1};
};

/// Expresses a basis vector v_j (z-free) as gamma * W(v_core) with core in
/// the weakly increasing window set and W a word in T_k, Q^{+-1}.
inline CoreReduction reduce_to_core(const IndexTuple &j, int n) {
  CoreReduction red;
  IndexTuple t = j;
  const int m = static_cast<int>(t.size());
  while (true) {
    int k = 0;
    for (int s = 1; s < m; ++s)
      if (t[s - 1] > t[s]) {
        k = s;
        break;
      }
    if (k > 0) {
      // strict descent: v_t = q * T_k(v_{t s_k})
      red.ops.push_back({'T', k});
      red.gamma *= Scalar::q();
      std::swap(t[k - 1], t[k]);
      continue;
    }
    if (t.front() < 1) {
      // v_t = Q(v_{(t_2,...,t_m,t_1+n)})
      red.ops.push_back({'Q', 1});
      int first = t.front();
      t.erase(t.begin());
      t.push_back(first + n);
      continue;
    }
    if (t.back() > n) {
      // v_t = Q^{-1}(v_{(t_m-n,t_1,...,t_{m-1})})
      red.ops.push_back({'Q', -1});
      int last = t.back();
      t.pop_back();
      t.insert(t.begin(), last - n);
      continue;
    }
    break;
  }
  red.core = t;
  return red;
}

}  // namespace detail

/// The extra vertical triple e_n, f_n, k_n on V_m: defined by the display on
/// v_j with j weakly increasing in the window, extended to everything else
/// through the commutation with the DAHA operators (reduction to a core
/// vector, replayed word).
inline VmVector act_vm_vertical_extra(const ScalarContext &ctx, char gen,
                                      const VmVector &v, int sign = 1) {
  const int n = ctx.n;
  const int m = v.nslots();
  const Scalar root = Scalar::u(1);  // fixed n-th root of p
  VmVector out(m);
  for (const auto &[key, c] : v.terms()) {
    const auto &[e, j] = key;
    auto red = detail::reduce_to_core(j, n);
    const IndexTuple &core = red.core;
    int count1 = 0, countn = 0;
    for (int val : core) {
      count1 += val == 1;
      countn += val == n;
    }
    VmVector w(m);
    std::vector<int> zero(m, 0);
    if (gen == 'k') {
      w.add(zero, core, Scalar::q(sign * (countn - count1)));
    } else if (gen == 'e') {
      for (int k = 1; k <= m; ++k) {
        if (core[k - 1] != 1) continue;
        IndexTuple r = core;
        r[k - 1] = n;  // j_k - 1 then zeta_k^{-1}
        std::vector<int> ze = zero;
        ze[k - 1] = 1;  // Y_k^{-1}
        w.add(ze, r, Scalar::q(countn - 1 + 2 * k - 1 - m) * root);
      }
    } else if (gen == 'f') {
      for (int k = 1; k <= m; ++k) {
        if (core[k - 1] != n) continue;
        IndexTuple r = core;
        r[k - 1] = 1;  // j_k + 1 then zeta_k
        std::vector<int> ze = zero;
        ze[k - 1] = -1;  // Y_k
        w.add(ze, r, Scalar::q(count1 + 1 + m - 2 * k + 1) *
                         root.inverse());
      }
    } else {
      throw std::invalid_argument("act_vm_vertical_extra: unknown generator");
    }
    // replay the word innermost-first, then restore the z-monomial
    for (auto it = red.ops.rbegin(); it != red.ops.rend(); ++it) {
      if (it->kind == 'T')
        w = act_vm_T(w, it->index);
      else
        w = act_vm_Q(ctx, w, it->index);
    }
    VmVector shifted(m);
    for (const auto &[k2, c2] : w.terms()) {
      std::vector<int> e2 = k2.first;
      for (int l = 0; l < m; ++l) e2[l] += e[l];
      shifted.add(e2, k2.second, c2);
    }
    out += (c * red.gamma) * shifted;
  }
  return out;
}

/// Toroidal generator dispatch: i in 0..n-1 level-zero, i = n the extra
/// vertical triple.
inline VmVector act_toroidal_vm(const ScalarContext &ctx, char gen, int i,
                                const VmVector &v, int sign = 1) {
  if (i == ctx.n) return act_vm_vertical_extra(ctx, gen, v, sign);
  return act_vm_affine(ctx, gen, i, v, sign);
}

}  // namespace qfock
