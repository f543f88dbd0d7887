#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "qfock/scalar.hpp"

namespace qfock {

/// Permutation of {1..m} in one-line notation: img[i] = w(i+1).
struct Permutation {
  std::vector<int> img;

  static Permutation identity(int m) {
    Permutation w;
    w.img.resize(m);
    std::iota(w.img.begin(), w.img.end(), 1);
    return w;
  }

  int size() const { return static_cast<int>(img.size()); }
  bool is_identity() const {
    for (int i = 0; i < size(); ++i)
      if (img[i] != i + 1) return false;
    return true;
  }

  int length() const {
    int inv = 0;
    for (int i = 0; i < size(); ++i)
      for (int j = i + 1; j < size(); ++j)
        if (img[i] > img[j]) ++inv;
    return inv;
  }

  /// Left multiplication by the simple transposition s_i (1-based i):
  /// swaps the values i and i+1.
  Permutation swap_values(int i) const {
    Permutation r = *this;
    for (auto &v : r.img) {
      if (v == i)
        v = i + 1;
      else if (v == i + 1)
        v = i;
    }
    return r;
  }

  /// True iff l(s_i w) = l(w) + 1.
  bool left_ascent(int i) const {
    int pos_i = 0, pos_i1 = 0;
    for (int k = 0; k < size(); ++k) {
      if (img[k] == i) pos_i = k;
      if (img[k] == i + 1) pos_i1 = k;
    }
    return pos_i < pos_i1;
  }

  /// A reduced word s_{i_1} ... s_{i_k} (1-based generator indices).
  std::vector<int> reduced_word() const {
    Permutation w = *this;
    std::vector<int> word;
    bool moved = true;
    while (moved) {
      moved = false;
      for (int i = 0; i + 1 < w.size(); ++i) {
        if (w.img[i] > w.img[i + 1]) {
          std::swap(w.img[i], w.img[i + 1]);  // w := w s_i, shorter
          word.push_back(i + 1);
          moved = true;
          break;
        }
      }
    }
    std::reverse(word.begin(), word.end());
    return word;
  }

  friend bool operator<(const Permutation &a, const Permutation &b) {
    return a.img < b.img;
  }
  friend bool operator==(const Permutation &a, const Permutation &b) {
    return a.img == b.img;
  }
};

inline std::vector<Permutation> all_permutations(int m) {
  Permutation w = Permutation::identity(m);
  std::vector<Permutation> out;
  do {
    out.push_back(w);
  } while (std::next_permutation(w.img.begin(), w.img.end()));
  std::sort(out.begin(), out.end());
  return out;
}

/// Element of the finite Hecke algebra in the standard basis {T_w}.
/// Quadratic relation: (T_i - q)(T_i + q^{-1}) = 0.
class HeckeElement {
 public:
  using TermMap = std::map<Permutation, Scalar>;

  HeckeElement() = default;

  static HeckeElement unit(int m, const Scalar &c = Scalar(1)) {
    HeckeElement e;
    e.add(Permutation::identity(m), c);
    return e;
  }

  static HeckeElement basis(const Permutation &w, const Scalar &c = Scalar(1)) {
    HeckeElement e;
    e.add(w, c);
    return e;
  }

  const TermMap &terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  void add(const Permutation &w, const Scalar &c) {
    if (c.is_zero()) return;
    auto it = t_.find(w);
    if (it == t_.end()) {
      t_.emplace(w, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) t_.erase(it);
    }
  }

  friend HeckeElement operator+(const HeckeElement &a, const HeckeElement &b) {
    HeckeElement r = a;
    for (const auto &[w, c] : b.t_) r.add(w, c);
    return r;
  }
  friend HeckeElement operator-(const HeckeElement &a, const HeckeElement &b) {
    HeckeElement r = a;
    for (const auto &[w, c] : b.t_) r.add(w, -c);
    return r;
  }
  friend HeckeElement operator*(const Scalar &c, const HeckeElement &a) {
    HeckeElement r;
    for (const auto &[w, x] : a.t_) r.add(w, c * x);
    return r;
  }
  friend bool operator==(const HeckeElement &a, const HeckeElement &b) {
    return a.t_ == b.t_;
  }

  /// T_i^{sign} * this (sign = +1 or -1), straightened to the T_w basis.
  HeckeElement mul_gen_left(int i, int sign = 1) const {
    const Scalar qq = Scalar::q() - Scalar::q(-1);
    HeckeElement r;
    for (const auto &[w, c] : t_) {
      Permutation sw = w.swap_values(i);
      if (w.left_ascent(i)) {
        r.add(sw, c);
        if (sign < 0) r.add(w, -qq * c);
      } else {
        r.add(sw, c);
        if (sign > 0) r.add(w, qq * c);
      }
    }
    return r;
  }

  friend HeckeElement operator*(const HeckeElement &a, const HeckeElement &b) {
    HeckeElement r;
    for (const auto &[w, c] : a.t_) {
      HeckeElement x = b;
      std::vector<int> word = w.reduced_word();
      for (auto it = word.rbegin(); it != word.rend(); ++it)
        x = x.mul_gen_left(*it);
      r = r + (c * x);
    }
    return r;
  }

  /// Image under the involution T_i -> -T_i^{-1} (coefficientwise linear).
  HeckeElement omega(int m) const {
    HeckeElement r;
    for (const auto &[w, c] : t_) {
      HeckeElement x = HeckeElement::unit(m);
      std::vector<int> word = w.reduced_word();
      for (auto it = word.rbegin(); it != word.rend(); ++it)
        x = x.mul_gen_left(*it, -1);
      Scalar sign = (w.length() % 2) ? Scalar(-1) : Scalar(1);
      r = r + ((sign * c) * x);
    }
    return r;
  }

 private:
  TermMap t_;
};

/// T_{i_1}^{e_1} ... T_{i_k}^{e_k} from a signed word, applied to 1.
inline HeckeElement hecke_from_word(
    int m, const std::vector<std::pair<int, int>> &word) {
  HeckeElement x = HeckeElement::unit(m);
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    int e = it->second;
    if (e == 0) continue;
    for (int k = 0; k < std::abs(e); ++k)
      x = x.mul_gen_left(it->first, e > 0 ? 1 : -1);
  }
  return x;
}

/// Symmetrizer sum_w q^{l(w)} T_w.
inline HeckeElement hecke_symmetrizer(int m) {
  HeckeElement s;
  for (const auto &w : all_permutations(m)) s.add(w, Scalar::q(w.length()));
  return s;
}

/// Antisymmetrizer sum_w (-q)^{-l(w)} T_w.
inline HeckeElement hecke_antisymmetrizer(int m) {
  HeckeElement s;
  for (const auto &w : all_permutations(m)) {
    int l = w.length();
    Scalar c = Scalar::q(-l);
    if (l % 2) c = -c;
    s.add(w, c);
  }
  return s;
}

}  // namespace qfock
