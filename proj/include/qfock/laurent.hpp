#pragma once

#include <map>
#include <vector>

#include "qfock/scalar.hpp"

namespace qfock {

/// Laurent polynomial in z_1..z_m with Scalar coefficients.
class LaurentPoly {
 public:
  using Expo = std::vector<int>;
  using TermMap = std::map<Expo, Scalar>;

  explicit LaurentPoly(int nvars) : m_(nvars) {}

  static LaurentPoly monomial(int nvars, const Expo &e,
                              const Scalar &c = Scalar(1)) {
    LaurentPoly f(nvars);
    f.add(e, c);
    return f;
  }
  static LaurentPoly one(int nvars) {
    return monomial(nvars, Expo(nvars, 0));
  }

  int nvars() const { return m_; }
  const TermMap &terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  void add(const Expo &e, const Scalar &c) {
    if (c.is_zero()) return;
    if (static_cast<int>(e.size()) != m_)
      throw std::invalid_argument("LaurentPoly: exponent arity");
    auto it = t_.find(e);
    if (it == t_.end()) {
      t_.emplace(e, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) t_.erase(it);
    }
  }

  friend LaurentPoly operator+(const LaurentPoly &a, const LaurentPoly &b) {
    LaurentPoly r = a;
    for (const auto &[e, c] : b.t_) r.add(e, c);
    return r;
  }
  friend LaurentPoly operator-(const LaurentPoly &a, const LaurentPoly &b) {
    LaurentPoly r = a;
    for (const auto &[e, c] : b.t_) r.add(e, -c);
    return r;
  }
  friend LaurentPoly operator*(const Scalar &c, const LaurentPoly &a) {
    LaurentPoly r(a.m_);
    for (const auto &[e, x] : a.t_) r.add(e, c * x);
    return r;
  }
  friend LaurentPoly operator*(const LaurentPoly &a, const LaurentPoly &b) {
    LaurentPoly r(a.m_);
    for (const auto &[ea, ca] : a.t_)
      for (const auto &[eb, cb] : b.t_) {
        Expo e = ea;
        for (int k = 0; k < a.m_; ++k) e[k] += eb[k];
        r.add(e, ca * cb);
      }
    return r;
  }
  friend bool operator==(const LaurentPoly &a, const LaurentPoly &b) {
    return a.m_ == b.m_ && a.t_ == b.t_;
  }

  /// Exchange z_i and z_j (1-based).
  LaurentPoly swap_vars(int i, int j) const {
    LaurentPoly r(m_);
    for (const auto &[e, c] : t_) {
      Expo e2 = e;
      std::swap(e2[i - 1], e2[j - 1]);
      r.add(e2, c);
    }
    return r;
  }

  /// Substitute z_i -> base * z_i, i.e. multiply each term by base^{e_i}.
  LaurentPoly scale_var(int i, const Scalar &base) const {
    LaurentPoly r(m_);
    for (const auto &[e, c] : t_) r.add(e, c * base.pow(e[i - 1]));
    return r;
  }

  LaurentPoly mul_monomial(const Expo &shift,
                           const Scalar &c = Scalar(1)) const {
    LaurentPoly r(m_);
    for (const auto &[e, x] : t_) {
      Expo e2 = e;
      for (int k = 0; k < m_; ++k) e2[k] += shift[k];
      r.add(e2, c * x);
    }
    return r;
  }

  std::string to_string() const {
    if (t_.empty()) return "0";
    std::string s;
    for (const auto &[e, c] : t_) {
      std::string mono;
      for (int k = 0; k < m_; ++k) {
        if (e[k] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += "z" + std::to_string(k + 1);
        if (e[k] != 1) mono += "^" + std::to_string(e[k]);
      }
      std::string cs = c.to_string();
      std::string term;
      if (mono.empty()) {
        term = cs;
      } else if (c.is_one()) {
        term = mono;
      } else {
        bool simple = cs.find('+') == std::string::npos &&
                      cs.find('-', 1) == std::string::npos &&
                      cs.find('/') == std::string::npos;
        term = (simple ? cs : "(" + cs + ")") + "*" + mono;
      }
      if (!s.empty() && term[0] != '-') s += "+";
      s += term;
    }
    return s;
  }

  /// Exact division by (z_i - z_j); throws if the input is not divisible.
  LaurentPoly divide_zi_minus_zj(int i, int j) const {
    if (is_zero()) return LaurentPoly(m_);
    const int vi = i - 1, vj = j - 1;
    int lo = t_.begin()->first[vi], hi = lo;
    for (const auto &[e, c] : t_) {
      lo = std::min(lo, e[vi]);
      hi = std::max(hi, e[vi]);
    }
    // Coefficients of z_i^k (after clearing z_i^{lo}); each is a Laurent
    // polynomial in the remaining variables with slot vi forced to zero.
    std::vector<LaurentPoly> coef(hi - lo + 1, LaurentPoly(m_));
    for (const auto &[e, c] : t_) {
      Expo e2 = e;
      e2[vi] = 0;
      coef[e[vi] - lo].add(e2, c);
    }
    // f * z_i^{-lo} = (z_i - z_j) * g with g_{k-1} = c_k + z_j g_k.
    std::vector<LaurentPoly> g(coef.size(), LaurentPoly(m_));
    Expo zj(m_, 0);
    zj[vj] = 1;
    LaurentPoly carry(m_);
    for (size_t k = coef.size(); k-- > 1;) {
      g[k - 1] = coef[k] + carry;
      carry = g[k - 1].mul_monomial(zj);
    }
    if (!(coef[0] + carry).is_zero())
      throw std::logic_error("divide_zi_minus_zj: nonzero remainder");
    LaurentPoly r(m_);
    for (size_t k = 0; k + 1 < g.size(); ++k) {
      Expo shift(m_, 0);
      shift[vi] = static_cast<int>(k) + lo;
      r = r + g[k].mul_monomial(shift);
    }
    return r;
  }

 private:
  int m_;
  TermMap t_;
};

}  // namespace qfock
