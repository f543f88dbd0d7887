#pragma once

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qfock/wedge.hpp"

namespace qfock {

/// A semi-infinite monomial u_{j_1} ^ u_{j_2} ^ ... in the charge-e sector is
/// stored as the explicit prefix of entries; entry l (1-based) defaults to
/// the vacuum value e - l + 1 beyond the prefix.  The prefix is normalized:
/// trailing vacuum entries are trimmed.
inline IndexTuple fock_normalize(int e, IndexTuple prefix) {
  while (!prefix.empty() &&
         prefix.back() == sector_entry(e, static_cast<int>(prefix.size())))
    prefix.pop_back();
  const int len = static_cast<int>(prefix.size());
  for (int l = 0; l + 1 < len; ++l)
    if (prefix[l] <= prefix[l + 1])
      throw std::invalid_argument("fock_normalize: not strictly decreasing");
  if (len > 0 && prefix.back() <= sector_entry(e, len + 1))
    throw std::invalid_argument("fock_normalize: prefix below the vacuum tail");
  // a strictly decreasing sequence merging into the vacuum dominates it
  for (int l = 0; l < len; ++l)
    if (prefix[l] < sector_entry(e, l + 1))
      throw std::invalid_argument("fock_normalize: entry below vacuum");
  return prefix;
}

/// Degree of the monomial: total underline deviation from the vacuum.
inline int fock_degree(const IndexTuple &prefix, int n, int e) {
  int deg = 0;
  for (size_t l = 0; l < prefix.size(); ++l)
    deg += window_under(prefix[l], n) -
           window_under(sector_entry(e, static_cast<int>(l) + 1), n);
  return deg;
}

/// Finitely supported combination of semi-infinite monomials in one sector.
class FockVector {
 public:
  explicit FockVector(int sector) : e_(sector) {}

  static FockVector vacuum(int sector) {
    FockVector v(sector);
    v.add({}, Scalar(1));
    return v;
  }

  static FockVector basis(int sector, IndexTuple prefix,
                          const Scalar &c = Scalar(1)) {
    FockVector v(sector);
    v.add(std::move(prefix), c);
    return v;
  }

  int sector() const { return e_; }
  const std::map<IndexTuple, Scalar> &terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  void add(IndexTuple prefix, const Scalar &c) {
    if (c.is_zero()) return;
    auto key = fock_normalize(e_, std::move(prefix));
    auto it = t_.find(key);
    if (it == t_.end()) {
      t_.emplace(std::move(key), c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
  }

  FockVector &operator+=(const FockVector &o) {
    if (o.e_ != e_)
      throw std::invalid_argument("FockVector: mixed sectors");
    for (const auto &[j, c] : o.t_) add(j, c);
    return *this;
  }
  FockVector operator+(const FockVector &o) const {
    FockVector r = *this;
    r += o;
    return r;
  }
  FockVector operator-(const FockVector &o) const {
    FockVector r = *this;
    if (o.e_ != e_)
      throw std::invalid_argument("FockVector: mixed sectors");
    for (const auto &[j, c] : o.t_) r.add(j, -c);
    return r;
  }
  friend FockVector operator*(const Scalar &c, const FockVector &v) {
    FockVector r(v.e_);
    for (const auto &[j, x] : v.t_) r.add(j, c * x);
    return r;
  }
  bool operator==(const FockVector &o) const {
    return e_ == o.e_ && t_ == o.t_;
  }
  bool operator!=(const FockVector &o) const { return !(*this == o); }

 private:
  int e_;
  std::map<IndexTuple, Scalar> t_;
};

/// All degree-k monomial prefixes for k = 0..max_degree, each list in
/// lexicographic order.  The deviation j - vacuum is a partition; a run of n
/// consecutive positive parts raises the degree, so prefixes are bounded.
inline std::vector<std::vector<IndexTuple>> fock_basis(int n, int e,
                                                       int max_degree) {
  if (max_degree < 0)
    throw std::invalid_argument("fock_basis: negative degree bound");
  std::vector<std::vector<IndexTuple>> out(max_degree + 1);
  const int max_len = n * (max_degree + 1);
  IndexTuple prefix;
  const auto recurse = [&](auto &&self, int slot, int prev_part,
                           int deg) -> void {
    out[deg].push_back(fock_normalize(e, prefix));
    if (slot > max_len) return;
    const int vac = sector_entry(e, slot);
    for (int part = 1; part <= prev_part; ++part) {
      const int d =
          deg + window_under(vac + part, n) - window_under(vac, n);
      if (d > max_degree) continue;
      prefix.push_back(vac + part);
      self(self, slot + 1, part, d);
      prefix.pop_back();
    }
  };
  recurse(recurse, 1, n * max_degree + n - 1, 0);
  for (auto &list : out) std::sort(list.begin(), list.end());
  return out;
}

/// The minimal slot count m with bar(m) = bar(e) and under(m) >= k; the
/// finite wedge sector at such an m is isomorphic to the degree-k component.
inline int admissible_slots(int n, int e, int k) {
  if (k < 0) throw std::invalid_argument("admissible_slots: negative degree");
  return window_bar(e, n) + n * k;
}

/// The first m entries of each monomial, as a finite wedge vector.
inline WedgeVector reduce_to_slots(int e, const FockVector &v, int m) {
  WedgeVector out(m);
  for (const auto &[prefix, c] : v.terms()) {
    if (static_cast<int>(prefix.size()) > m)
      throw std::invalid_argument("reduce_to_slots: prefix exceeds slots");
    IndexTuple j = prefix;
    for (int l = static_cast<int>(prefix.size()); l < m; ++l)
      j.push_back(sector_entry(e, l + 1));
    out.add_wedge(j, c);
  }
  return out;
}

/// Truncation of a homogeneous degree-k vector to the minimal admissible
/// slot count.  Returns the slot count together with the finite vector.
inline std::pair<int, WedgeVector> reduce_to_finite(int n, int e, int k,
                                                    const FockVector &v) {
  for (const auto &[prefix, c] : v.terms())
    if (fock_degree(prefix, n, e) != k)
      throw std::invalid_argument("reduce_to_finite: input not homogeneous");
  const int m = admissible_slots(n, e, k);
  return {m, reduce_to_slots(e, v, m)};
}

/// Inverse of the truncation: append the vacuum tail e_{m+1}, e_{m+2}, ...
/// Throws EscapeError when a tuple cannot merge into the tail.
inline FockVector extend_to_fock(int e, int m, const WedgeVector &w) {
  if (w.nslots() != m)
    throw std::invalid_argument("extend_to_fock: slot mismatch");
  FockVector out(e);
  std::vector<IndexTuple> escaped;
  for (const auto &[j, c] : w.terms()) {
    try {
      out.add(j, c);
    } catch (const std::invalid_argument &) {
      escaped.push_back(j);
    }
  }
  if (!escaped.empty())
    throw EscapeError("extend_to_fock: tuples do not merge into the tail",
                      std::move(escaped));
  return out;
}

/// The shift wedge u_j -> wedge u_{1+j}, mapping sector e to e + dir.
inline FockVector phi_infinity(const FockVector &v, int dir) {
  if (dir != 1 && dir != -1)
    throw std::invalid_argument("phi_infinity: direction must be +-1");
  FockVector out(v.sector() + dir);
  for (const auto &[prefix, c] : v.terms()) {
    IndexTuple j = prefix;
    for (int &x : j) x += dir;
    out.add(std::move(j), c);
  }
  return out;
}

namespace detail {

inline std::map<int, FockVector> split_by_degree(int n, const FockVector &v) {
  std::map<int, FockVector> parts;
  for (const auto &[prefix, c] : v.terms()) {
    const int k = fock_degree(prefix, n, v.sector());
    parts.emplace(k, FockVector(v.sector())).first->second.add(prefix, c);
  }
  return parts;
}

/// Applies a finite-slot wedge operator to each graded piece and extends the
/// image back, widening the slot count when the image escapes the tail.
template <class Op>
FockVector transport(int n, int e, const FockVector &v, int margin, Op op) {
  FockVector out(e);
  for (const auto &[k, piece] : split_by_degree(n, v)) {
    const int m0 = admissible_slots(n, e, k + margin);
    bool done = false;
    for (int widen = 0; widen <= 4 && !done; ++widen) {
      const int m = m0 + n * widen;
      try {
        const WedgeVector img = op(m, reduce_to_slots(e, piece, m));
        out += extend_to_fock(e, img.nslots(), img);
        done = true;
      } catch (const EscapeError &) {
        if (widen == 4) throw;
      }
    }
  }
  return out;
}

}  // namespace detail

/// Diagonal inverse of k_i on a finite wedge vector (k_i acts diagonally on
/// the wedge basis).
inline WedgeVector wedge_act_k_inverse(const ScalarContext &ctx, int i,
                                       const WedgeVector &w) {
  WedgeVector out(w.nslots());
  for (const auto &[j, c] : w.terms()) {
    const WedgeVector img = wedge_act(ctx, 'k', i, WedgeVector::basis(j));
    auto it = img.terms().find(j);
    if (img.terms().size() != 1 || it == img.terms().end())
      throw std::logic_error("wedge_act_k_inverse: generator not diagonal");
    out.add_wedge(j, c * it->second.inverse());
  }
  return out;
}

/// The vertical action on a sector, i = 0..n: truncate, act on the finite
/// wedge, extend back with the boundary rules
///   e_i|tail> = 0,  f_i|tail> = d(i=0) u_{e_m} ^ |shorter tail>,
///   k_i|tail> = q^{d(i=0)} |tail>.
inline FockVector act_vertical(const ScalarContext &ctx, char gen, int i,
                               const FockVector &v, int sign = 1) {
  const int n = ctx.n, e = v.sector();
  if (gen != 'e' && gen != 'f' && gen != 'k')
    throw std::invalid_argument("act_vertical: unknown generator");
  return detail::transport(
      n, e, v, /*margin=*/1, [&](int m, const WedgeVector &w) {
        WedgeVector img = wedge_act(ctx, gen, i, w, sign);
        if (i == 0 && (gen == 'e' || gen == 'k'))
          img = Scalar::q(gen == 'k' ? sign : 1) * img;
        if (i == 0 && gen == 'f') {
          // boundary term k_0^{-1}(v) ^ u_{e_m} in m + 1 slots: fold it back
          // to m slots is impossible, so emit it on the widened tuple set
          const WedgeVector kin = wedge_act_k_inverse(ctx, 0, w);
          WedgeVector wide(m + 1);
          for (const auto &[j, c] : img.terms()) {
            IndexTuple jj = j;
            jj.push_back(sector_entry(e, m + 1));
            wide.add_wedge(jj, c);
          }
          for (const auto &[j, c] : kin.terms()) {
            IndexTuple jj = j;
            jj.push_back(sector_entry(e, m));
            wide.add_wedge(jj, c);
          }
          return wide;
        }
        return img;
      });
}

/// Mode r of the current e_i(w) or f_i(w) on a sector.  For i = 1..n-1 the
/// finite-wedge mode is transported through the truncation; the i = 0 modes
/// are defined by conjugation with the shift, picking up p^{-r/n} from the
/// substitution w -> p^{1/n} w.
inline FockVector act_toroidal_mode(const ScalarContext &ctx, char tag, int i,
                                    int r, const FockVector &v) {
  const int n = ctx.n, e = v.sector();
  if (tag != 'e' && tag != 'f')
    throw std::invalid_argument("act_toroidal_mode: unknown current");
  if (i < 0 || i > n - 1)
    throw std::invalid_argument("act_toroidal_mode: index out of range");
  if (i == 0) {
    const FockVector img =
        act_toroidal_mode(ctx, tag, 1, r, phi_infinity(v, 1));
    return ctx.u_root(-r) * phi_infinity(img, -1);
  }
  return detail::transport(
      n, e, v, /*margin=*/std::abs(r) + 1, [&](int m, const WedgeVector &w) {
        (void)m;
        return drinfeld_mode(ctx, tag, i, r, w);
      });
}

}  // namespace qfock
