#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qfock/matrix.hpp"
#include "qfock/scalar.hpp"

namespace qfock {

/// An m-tuple of integers, identified with the function j: Z -> Z with
/// j(k+m) = j(k) + n.
using IndexTuple = std::vector<int>;

/// j = n*under + bar with bar in {1..n}.
inline int window_bar(int j, int n) {
  int r = j % n;
  if (r <= 0) r += n;
  return r;
}

inline int window_under(int j, int n) { return (j - window_bar(j, n)) / n; }

inline bool in_window(const IndexTuple &j, int n) {
  for (int v : j)
    if (v < 1 || v > n) return false;
  return true;
}

/// Membership in the set of weakly increasing window tuples.
inline bool weakly_increasing_window(const IndexTuple &j, int n) {
  if (!in_window(j, n)) return false;
  for (size_t k = 0; k + 1 < j.size(); ++k)
    if (j[k] > j[k + 1]) return false;
  return true;
}

inline bool normally_ordered(const IndexTuple &j) {
  for (size_t k = 0; k + 1 < j.size(); ++k)
    if (j[k] <= j[k + 1]) return false;
  return true;
}

/// Value of the periodic function at any position k in Z.
inline int tuple_value_at(const IndexTuple &j, int n, int k) {
  int m = static_cast<int>(j.size());
  int r = k % m;
  if (r <= 0) r += m;
  return j[r - 1] + n * ((k - r) / m);
}

/// All positions k in Z with j(k) = value; finite, returned sorted.
inline std::vector<int> preimage_positions(const IndexTuple &j, int n,
                                           int value) {
  int m = static_cast<int>(j.size());
  std::vector<int> out;
  for (int r = 1; r <= m; ++r) {
    int diff = value - j[r - 1];
    if (diff % n == 0) out.push_back(r + m * (diff / n));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Adds delta to the function value at position k (i.e. at the slot
/// representing k mod m).
inline IndexTuple modify_at(const IndexTuple &j, int k, int delta) {
  int m = static_cast<int>(j.size());
  int r = k % m;
  if (r <= 0) r += m;
  IndexTuple out = j;
  out[r - 1] += delta;
  return out;
}

/// Number of increasing pairs s < t with j_s < j_t.
inline int increasing_pairs(const IndexTuple &j) {
  int c = 0;
  for (size_t s = 0; s < j.size(); ++s)
    for (size_t t = s + 1; t < j.size(); ++t)
      if (j[s] < j[t]) ++c;
  return c;
}

/// Finitely supported vector in the basis v_j of the m-fold tensor power of
/// C^n[zeta^{+-1}], with v_{i+nk} = v_i zeta^{-k}.  The same container also
/// serves for the X-polynomial tensor model, where the tuple j encodes the
/// basis vector u_j = X^{-under(j)} v_{bar(j)}.
class TensorVector {
 public:
  using TermMap = std::map<IndexTuple, Scalar>;

  explicit TensorVector(int m) : m_(m) {}

  static TensorVector basis(const IndexTuple &j, const Scalar &c = Scalar(1)) {
    TensorVector v(static_cast<int>(j.size()));
    v.add(j, c);
    return v;
  }

  int nslots() const { return m_; }
  const TermMap &terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  void add(const IndexTuple &j, const Scalar &c) {
    if (static_cast<int>(j.size()) != m_)
      throw std::invalid_argument("TensorVector::add: slot count mismatch");
    auto it = t_.find(j);
    if (it == t_.end()) {
      if (!c.is_zero()) t_.emplace(j, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }

  TensorVector &operator+=(const TensorVector &o) {
    for (const auto &[j, c] : o.t_) add(j, c);
    return *this;
  }

  TensorVector operator+(const TensorVector &o) const {
    TensorVector r = *this;
    r += o;
    return r;
  }

  TensorVector operator-(const TensorVector &o) const {
    TensorVector r = *this;
    for (const auto &[j, c] : o.t_) r.add(j, -c);
    return r;
  }

  friend TensorVector operator*(const Scalar &c, const TensorVector &v) {
    TensorVector r(v.m_);
    if (c.is_zero()) return r;
    for (const auto &[j, x] : v.t_) r.t_.emplace(j, c * x);
    return r;
  }

  bool operator==(const TensorVector &o) const {
    return m_ == o.m_ && t_ == o.t_;
  }

  std::string to_string() const {
    if (t_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto &[j, c] : t_) {
      if (!first) out << " + ";
      first = false;
      out << "(" << c.to_string() << ")*v[";
      for (size_t k = 0; k < j.size(); ++k)
        out << (k ? "," : "") << j[k];
      out << "]";
    }
    return out.str();
  }

 private:
  int m_;
  TermMap t_;
};

/// The affine quantum group action on the tensor module; gen is 'e', 'f' or
/// 'k' (sign = -1 for k inverse), with i = 0..n-1.
inline TensorVector act_affine(const ScalarContext &ctx, char gen, int i,
                               const TensorVector &v, int sign = 1) {
  const int n = ctx.n;
  TensorVector out(v.nslots());
  for (const auto &[j, c] : v.terms()) {
    if (gen == 'k') {
      auto pi = preimage_positions(j, n, i);
      auto pi1 = preimage_positions(j, n, i + 1);
      out.add(j, c * Scalar::q(sign * (static_cast<int>(pi.size()) -
                                       static_cast<int>(pi1.size()))));
    } else if (gen == 'e') {
      auto pi = preimage_positions(j, n, i);
      auto pi1 = preimage_positions(j, n, i + 1);
      for (int k : pi1) {
        int over = 0;
        for (int l : pi)
          if (l > k) ++over;
        out.add(modify_at(j, k, -1),
                c * Scalar::q(2 * over - static_cast<int>(pi.size())));
      }
    } else if (gen == 'f') {
      auto pi = preimage_positions(j, n, i);
      auto pi1 = preimage_positions(j, n, i + 1);
      for (int k : pi) {
        int under = 0;
        for (int l : pi1)
          if (l < k) ++under;
        out.add(modify_at(j, k, 1),
                c * Scalar::q(2 * under - static_cast<int>(pi1.size())));
      }
    } else {
      throw std::invalid_argument("act_affine: unknown generator");
    }
  }
  return out;
}

/// tau_{k,k+1}^{sign} from the three-case table on Z-indices.
inline TensorVector act_tau(const TensorVector &v, int k, int sign = 1) {
  TensorVector out(v.nslots());
  if (k < 1 || k >= v.nslots())
    throw std::invalid_argument("act_tau: slot out of range");
  const Scalar comm = Scalar::q() - Scalar::q(-1);
  for (const auto &[j, c] : v.terms()) {
    int a = j[k - 1], b = j[k];
    IndexTuple swapped = j;
    std::swap(swapped[k - 1], swapped[k]);
    if (a == b) {
      out.add(j, c * Scalar::q());
    } else if (a < b) {
      out.add(swapped, c * Scalar::q(-1));
    } else {
      out.add(swapped, c * Scalar::q());
      out.add(j, c * comm);
    }
  }
  if (sign < 0) return out - comm * v;
  return out;
}

/// The rotation representing Q: v_{i_1...i_m} -> v_{i_m - n, i_1, ..., i_{m-1}}.
inline TensorVector act_theta_rot(const TensorVector &v, int n, int sign = 1) {
  TensorVector out(v.nslots());
  for (const auto &[j, c] : v.terms()) {
    IndexTuple r(j.size());
    if (sign > 0) {
      r[0] = j.back() - n;
      std::copy(j.begin(), j.end() - 1, r.begin() + 1);
    } else {
      std::copy(j.begin() + 1, j.end(), r.begin());
      r.back() = j.front() + n;
    }
    out.add(r, c);
  }
  return out;
}

/// X_l^{sign} as an operator word: X_1 = Q T_{m-1}^{-1}...T_1^{-1} and
/// X_{l+1} = T_l X_l T_l, factors applied leftmost-first.
inline TensorVector act_x_tensor(const TensorVector &v, int n, int l,
                                 int sign = 1) {
  const int m = v.nslots();
  if (l < 1 || l > m) throw std::invalid_argument("act_x_tensor: bad index");
  TensorVector r = v;
  if (sign > 0) {
    // X_l = T_{l-1}...T_1 Q T_{m-1}^{-1}...T_l^{-1}, rightmost factor first
    for (int k = l; k <= m - 1; ++k) r = act_tau(r, k, -1);
    r = act_theta_rot(r, n);
    for (int k = 1; k <= l - 1; ++k) r = act_tau(r, k);
  } else {
    for (int k = l - 1; k >= 1; --k) r = act_tau(r, k, -1);
    r = act_theta_rot(r, n, -1);
    for (int k = m - 1; k >= l; --k) r = act_tau(r, k);
  }
  return r;
}

/// Evaluates an X-model vector (tuples encoding u_j = X^{-under} v_{bar})
/// in the zeta-model through the operator words: u_j -> X^{under-word}(v_bar).
inline TensorVector theta_eval(const TensorVector &w, int n) {
  const int m = w.nslots();
  TensorVector out(m);
  for (const auto &[j, c] : w.terms()) {
    IndexTuple bar(m);
    for (int l = 0; l < m; ++l) bar[l] = window_bar(j[l], n);
    TensorVector r = TensorVector::basis(bar, c);
    for (int l = 0; l < m; ++l) {
      int a = -window_under(j[l], n);
      for (int s = 0; s < std::abs(a); ++s)
        r = act_x_tensor(r, n, l + 1, a > 0 ? 1 : -1);
    }
    out += r;
  }
  return out;
}

/// Inverse of theta_eval by exact linear algebra on the finite component
/// cut out by the support invariants (entry sum and residue multiset).
/// Throws when the search bound is insufficient, never returns a wrong
/// answer.
inline TensorVector theta_eval_inverse(const TensorVector &v, int n,
                                       int bound = 2) {
  const int m = v.nslots();
  TensorVector coords(m);
  if (v.is_zero()) return coords;
  // Group the support by (sum, residue multiset); each block is solved
  // independently.
  std::map<std::pair<int, std::vector<int>>, std::vector<IndexTuple>> blocks;
  for (const auto &[j, c] : v.terms()) {
    int sum = 0;
    std::vector<int> res(m);
    for (int l = 0; l < m; ++l) {
      sum += j[l];
      res[l] = window_bar(j[l], n);
    }
    std::sort(res.begin(), res.end());
    blocks[{sum, res}].push_back(j);
  }
  for (const auto &[key, support] : blocks) {
    const auto &[sum, res] = key;
    // Candidate u_j tuples share the invariants and have bounded underline.
    std::set<IndexTuple> cands;
    std::vector<int> base(res);
    std::sort(base.begin(), base.end());
    do {
      std::vector<int> t(m, -bound);
      while (true) {
        IndexTuple j(m);
        int s = 0;
        for (int l = 0; l < m; ++l) {
          j[l] = base[l] + n * t[l];
          s += j[l];
        }
        if (s == sum) cands.insert(j);
        int pos = 0;
        while (pos < m && t[pos] == bound) t[pos++] = -bound;
        if (pos == m) break;
        ++t[pos];
      }
    } while (std::next_permutation(base.begin(), base.end()));
    std::vector<IndexTuple> cand(cands.begin(), cands.end());
    // Evaluate candidates and index the rows.
    std::vector<TensorVector> images;
    std::map<IndexTuple, int> rows;
    for (const auto &j : cand) {
      images.push_back(theta_eval(TensorVector::basis(j), n));
      for (const auto &[t, c] : images.back().terms())
        rows.emplace(t, static_cast<int>(rows.size()));
    }
    TensorVector target(m);
    for (const auto &j : support) target.add(j, v.terms().at(j));
    for (const auto &[t, c] : target.terms())
      rows.emplace(t, static_cast<int>(rows.size()));
    Matrix A(static_cast<int>(rows.size()), static_cast<int>(cand.size()));
    for (size_t col = 0; col < cand.size(); ++col)
      for (const auto &[t, c] : images[col].terms())
        A.at(rows.at(t), static_cast<int>(col)) = c;
    std::vector<Scalar> b(rows.size());
    for (const auto &[t, c] : target.terms()) b[rows.at(t)] = c;
    auto sol = A.solve(b);
    if (!sol)
      throw std::runtime_error(
          "theta_eval_inverse: increase bound (component not closed)");
    for (size_t col = 0; col < cand.size(); ++col)
      if (!(*sol)[col].is_zero()) coords.add(cand[col], (*sol)[col]);
  }
  return coords;
}

/// Psi twist on X-model coordinates: scales the u_j term by
/// q^{sign * #increasing pairs of bar(j)}.
inline TensorVector psi_twist(const TensorVector &w, int n, int sign = 1) {
  TensorVector out(w.nslots());
  for (const auto &[j, c] : w.terms()) {
    IndexTuple bar(j.size());
    for (size_t l = 0; l < j.size(); ++l) bar[l] = window_bar(j[l], n);
    out.add(j, c * Scalar::q(sign * increasing_pairs(bar)));
  }
  return out;
}

/// Phi-dot: X^a (x) v_c -> X^a . Psi(v_c).
inline TensorVector phi_dot(const TensorVector &w, int n) {
  return theta_eval(psi_twist(w, n), n);
}

inline TensorVector phi_dot_inverse(const TensorVector &v, int n,
                                    int bound = 2) {
  return psi_twist(theta_eval_inverse(v, n, bound), n, -1);
}

/// Psi as an operator on the zeta-model (X-linear extension of the window
/// twist).
inline TensorVector act_psi(const TensorVector &v, int n, int sign = 1,
                            int bound = 2) {
  return theta_eval(psi_twist(theta_eval_inverse(v, n, bound), n, sign), n);
}

/// Iterated-coproduct action on the X-model for e_i, f_i, k_i with
/// i = 1..n-1: the window entries carry the slot action, the X-part is
/// untouched.
inline TensorVector act_coproduct(const ScalarContext &ctx, char gen, int i,
                                  const TensorVector &w, int sign = 1) {
  const int n = ctx.n;
  if (i < 0 || i > n - 1)
    throw std::invalid_argument("act_coproduct: i out of range");
  // slot conditions in window values: i = 0 raises/lowers across the edge
  const int lo = i == 0 ? n : i, hi = i == 0 ? 1 : i + 1;
  TensorVector out(w.nslots());
  const int m = w.nslots();
  for (const auto &[j, c] : w.terms()) {
    IndexTuple bar(m);
    for (int l = 0; l < m; ++l) bar[l] = window_bar(j[l], n);
    if (gen == 'k') {
      int e = 0;
      for (int l = 0; l < m; ++l)
        e += (bar[l] == lo) - (bar[l] == hi);
      out.add(j, c * Scalar::q(sign * e));
      continue;
    }
    for (int k = 0; k < m; ++k) {
      if (gen == 'e') {
        // 1^{k-1} (x) e_i (x) k_i^{m-k}
        if (bar[k] != hi) continue;
        int e = 0;
        for (int l = k + 1; l < m; ++l) e += (bar[l] == lo) - (bar[l] == hi);
        IndexTuple r = j;
        r[k] -= 1;
        out.add(r, c * Scalar::q(e));
      } else if (gen == 'f') {
        // k_i^{-(k-1)} (x) f_i (x) 1^{m-k}
        if (bar[k] != lo) continue;
        int e = 0;
        for (int l = 0; l < k; ++l) e += (bar[l] == lo) - (bar[l] == hi);
        IndexTuple r = j;
        r[k] += 1;
        out.add(r, c * Scalar::q(-e));
      } else {
        throw std::invalid_argument("act_coproduct: unknown generator");
      }
    }
  }
  return out;
}

namespace detail {

/// (X^a Y^b - X^b Y^a)/(X - Y) as a list of exponent pairs with signs.
inline void divided_difference(int a, int b,
                               std::vector<std::pair<std::pair<int, int>, int>> &out) {
  if (a == b) return;
  int lo = std::min(a, b), hi = std::max(a, b);
  int s = a > b ? 1 : -1;
  for (int t = 0; t < hi - lo; ++t)
    out.push_back({{lo + t, hi - 1 - t}, s});
}

}  // namespace detail

/// T_k on the X-model by the three-case divided-difference formula.
inline TensorVector act_xmodel_T(const TensorVector &w, int n, int k,
                                 int sign = 1) {
  const int m = w.nslots();
  if (k < 1 || k >= m) throw std::invalid_argument("act_xmodel_T: bad slot");
  TensorVector out(m);
  const Scalar comm = Scalar::q(-1) - Scalar::q();
  for (const auto &[j, c] : w.terms()) {
    int a = -window_under(j[k - 1], n), b = -window_under(j[k], n);
    int ck = window_bar(j[k - 1], n), ck1 = window_bar(j[k], n);
    auto put = [&](int ea, int eb, int wk, int wk1, const Scalar &coeff) {
      IndexTuple r = j;
      r[k - 1] = wk - n * ea;
      r[k] = wk1 - n * eb;
      out.add(r, coeff);
    };
    // Divided-difference part: X_{k+1} (P - P^{s_k})/(X_k - X_{k+1}) v_c,
    // or the shifted numerator in the third case.
    std::vector<std::pair<std::pair<int, int>, int>> dd;
    if (ck <= ck1) {
      detail::divided_difference(a, b, dd);
      for (auto &[e, s] : dd)
        put(e.first, e.second + 1, ck, ck1, c * comm * Scalar(s));
    } else {
      // (X_{k+1} P - X_k P^{s_k})/(X_k - X_{k+1})
      detail::divided_difference(a, b + 1, dd);
      for (auto &[e, s] : dd) put(e.first, e.second, ck, ck1, c * comm * Scalar(s));
    }
    if (ck == ck1) {
      put(b, a, ck, ck1, c * Scalar::q());
    } else {
      put(b, a, ck1, ck, c);
    }
  }
  if (sign < 0) return out - (Scalar::q() - Scalar::q(-1)) * w;
  return out;
}

/// Relation check report shared by the module-level certification suites.
struct CheckReport {
  int checked = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Certifies the Kac-Moody relations (including Serre) of the affine action
/// on the given basis tuples.
inline CheckReport check_affine_tensor_relations(
    const ScalarContext &ctx, const std::vector<IndexTuple> &tuples) {
  CheckReport rep;
  const int n = ctx.n;
  auto E = [&](int i, const TensorVector &v) { return act_affine(ctx, 'e', i, v); };
  auto F = [&](int i, const TensorVector &v) { return act_affine(ctx, 'f', i, v); };
  auto K = [&](int i, int s, const TensorVector &v) {
    return act_affine(ctx, 'k', i, v, s);
  };
  auto fail = [&](const std::string &name, const IndexTuple &j) {
    std::ostringstream os;
    os << name << " at v[";
    for (size_t l = 0; l < j.size(); ++l) os << (l ? "," : "") << j[l];
    os << "]";
    rep.failures.push_back(os.str());
  };
  const Scalar denom = Scalar::q() - Scalar::q(-1);
  for (const auto &j : tuples) {
    TensorVector v = TensorVector::basis(j);
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l) {
        int a = ctx.cartan(i, l);
        ++rep.checked;
        if (!(K(i, 1, K(l, 1, v)) == K(l, 1, K(i, 1, v)))) fail("k_i k_j = k_j k_i", j);
        ++rep.checked;
        if (!(K(i, 1, E(l, K(i, -1, v))) == Scalar::q(a) * E(l, v)))
          fail("k_i e_j k_i^-1 = q^{a_ij} e_j", j);
        ++rep.checked;
        if (!(K(i, 1, F(l, K(i, -1, v))) == Scalar::q(-a) * F(l, v)))
          fail("k_i f_j k_i^-1 = q^{-a_ij} f_j", j);
        ++rep.checked;
        TensorVector comm = E(i, F(l, v)) - F(l, E(i, v));
        TensorVector rhs(v.nslots());
        if (i == l) rhs = denom.inverse() * (K(i, 1, v) - K(i, -1, v));
        if (!(comm == rhs)) fail("[e_i, f_j] relation", j);
        if (i != l) {
          if (a == 0) {
            ++rep.checked;
            if (!(E(i, E(l, v)) == E(l, E(i, v)))) fail("e_i e_j commute", j);
            ++rep.checked;
            if (!(F(i, F(l, v)) == F(l, F(i, v)))) fail("f_i f_j commute", j);
          } else if (a == -1) {
            const Scalar two = Scalar::q() + Scalar::q(-1);
            ++rep.checked;
            TensorVector s = E(i, E(i, E(l, v))) - two * E(i, E(l, E(i, v))) +
                             E(l, E(i, E(i, v)));
            if (!s.is_zero()) fail("e Serre", j);
            ++rep.checked;
            TensorVector sf = F(i, F(i, F(l, v))) - two * F(i, F(l, F(i, v))) +
                              F(l, F(i, F(i, v)));
            if (!sf.is_zero()) fail("f Serre", j);
          }
        }
      }
  }
  return rep;
}

/// Certifies that the affine action commutes with the Hecke operators
/// (T_k, Q, and the X-words) on the given basis tuples.
inline CheckReport check_affine_hecke_commutation(
    const ScalarContext &ctx, const std::vector<IndexTuple> &tuples) {
  CheckReport rep;
  const int n = ctx.n;
  auto fail = [&](const std::string &name, const IndexTuple &j) {
    std::ostringstream os;
    os << name << " at v[";
    for (size_t l = 0; l < j.size(); ++l) os << (l ? "," : "") << j[l];
    os << "]";
    rep.failures.push_back(os.str());
  };
  for (const auto &j : tuples) {
    const int m = static_cast<int>(j.size());
    TensorVector v = TensorVector::basis(j);
    for (int i = 0; i < n; ++i)
      for (char g : {'e', 'f', 'k'}) {
        TensorVector gv = act_affine(ctx, g, i, v);
        for (int k = 1; k < m; ++k) {
          ++rep.checked;
          if (!(act_tau(gv, k) == act_affine(ctx, g, i, act_tau(v, k))))
            fail("[U, T_k] = 0", j);
        }
        ++rep.checked;
        if (!(act_theta_rot(gv, n) ==
              act_affine(ctx, g, i, act_theta_rot(v, n))))
          fail("[U, Q] = 0", j);
        for (int l = 1; l <= m; ++l) {
          ++rep.checked;
          if (!(act_x_tensor(gv, n, l) ==
                act_affine(ctx, g, i, act_x_tensor(v, n, l))))
            fail("[U, X_l] = 0", j);
        }
      }
  }
  return rep;
}

}  // namespace qfock
