#pragma once

#include <array>
#include <cctype>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace qfock {

using Int = mpz_class;
using Rat = mpq_class;

namespace detail {

// Dense univariate polynomial over Z, coefficient of x^i at index i.
using UPoly = std::vector<Int>;

inline void utrim(UPoly &a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline bool uzero(const UPoly &a) { return a.empty(); }

inline UPoly uadd(const UPoly &a, const UPoly &b) {
  UPoly r(std::max(a.size(), b.size()), Int(0));
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  utrim(r);
  return r;
}

inline UPoly uneg(UPoly a) {
  for (auto &c : a) c = -c;
  return a;
}

inline UPoly umul(const UPoly &a, const UPoly &b) {
  if (uzero(a) || uzero(b)) return {};
  UPoly r(a.size() + b.size() - 1, Int(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  utrim(r);
  return r;
}

inline UPoly umul_int(UPoly a, const Int &c) {
  for (auto &x : a) x *= c;
  utrim(a);
  return a;
}

inline Int ucontent(const UPoly &a) {
  Int g = 0;
  for (const auto &c : a) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

inline UPoly udiv_int_exact(UPoly a, const Int &c) {
  for (auto &x : a) {
    Int q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
    if (r != 0) throw std::logic_error("udiv_int_exact: not divisible");
    x = q;
  }
  return a;
}

// Exact division, throws if the division leaves a remainder.
inline UPoly udiv_exact(UPoly a, const UPoly &b) {
  if (uzero(b)) throw std::logic_error("udiv_exact: division by zero");
  if (uzero(a)) return {};
  if (a.size() < b.size()) throw std::logic_error("udiv_exact: not divisible");
  UPoly q(a.size() - b.size() + 1, Int(0));
  for (size_t k = q.size(); k-- > 0;) {
    Int top = a[k + b.size() - 1];
    if (top == 0) continue;
    Int c, r;
    mpz_fdiv_qr(c.get_mpz_t(), r.get_mpz_t(), top.get_mpz_t(),
                b.back().get_mpz_t());
    if (r != 0) throw std::logic_error("udiv_exact: not divisible");
    q[k] = c;
    for (size_t i = 0; i < b.size(); ++i) a[k + i] -= c * b[i];
  }
  utrim(a);
  if (!uzero(a)) throw std::logic_error("udiv_exact: nonzero remainder");
  return q;
}

// Pseudo-remainder of a by b (lc(b)^(deg a - deg b + 1) * a mod b).
inline UPoly uprem(UPoly a, const UPoly &b) {
  const size_t db = b.size() - 1;
  while (!uzero(a) && a.size() - 1 >= db) {
    const Int lead = a.back();
    const size_t shift = a.size() - 1 - db;
    for (auto &c : a) c *= b.back();
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= lead * b[i];
    utrim(a);
  }
  return a;
}

inline UPoly uprimitive(const UPoly &a) {
  if (uzero(a)) return a;
  Int c = ucontent(a);
  if (sgn(a.back()) < 0) c = -c;
  return udiv_int_exact(a, c);
}

inline UPoly usignnorm(UPoly a) {
  if (!uzero(a) && sgn(a.back()) < 0)
    for (auto &c : a) c = -c;
  return a;
}

inline UPoly ugcd(const UPoly &a0, const UPoly &b0) {
  if (uzero(a0)) return usignnorm(b0);
  if (uzero(b0)) return usignnorm(a0);
  Int ca = ucontent(a0), cb = ucontent(b0), cg;
  mpz_gcd(cg.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  UPoly a = uprimitive(a0), b = uprimitive(b0);
  if (a.size() < b.size()) std::swap(a, b);
  while (!uzero(b)) {
    UPoly r = uprem(a, b);
    a = std::move(b);
    b = uprimitive(r);
  }
  return umul_int(uprimitive(a), cg);
}

// Bivariate polynomial Z[u][q]: coefficient of q^i is a UPoly in u.
using BPoly = std::vector<UPoly>;

inline void btrim(BPoly &a) {
  while (!a.empty() && uzero(a.back())) a.pop_back();
}

inline bool bzero(const BPoly &a) { return a.empty(); }

inline BPoly bmul(const BPoly &a, const BPoly &b) {
  if (bzero(a) || bzero(b)) return {};
  BPoly r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = uadd(r[i + j], umul(a[i], b[j]));
  btrim(r);
  return r;
}

inline BPoly bmul_u(const BPoly &a, const UPoly &c) {
  BPoly r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = umul(a[i], c);
  btrim(r);
  return r;
}

inline UPoly bcontent(const BPoly &a) {
  UPoly g;
  for (const auto &c : a) g = ugcd(g, c);
  return g;
}

inline BPoly bdiv_u_exact(const BPoly &a, const UPoly &c) {
  BPoly r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = udiv_exact(a[i], c);
  btrim(r);
  return r;
}

inline BPoly bprem(BPoly a, const BPoly &b) {
  const size_t db = b.size() - 1;
  while (!bzero(a) && a.size() - 1 >= db) {
    const UPoly lead = a.back();
    const size_t shift = a.size() - 1 - db;
    for (auto &c : a) c = umul(c, b.back());
    for (size_t i = 0; i < b.size(); ++i) {
      a[shift + i] = uadd(a[shift + i], uneg(umul(lead, b[i])));
    }
    btrim(a);
  }
  return a;
}

inline BPoly bprimitive(const BPoly &a) {
  if (bzero(a)) return a;
  UPoly c = bcontent(a);
  // Sign normalization: leading coefficient (in q, then u) positive.
  if (sgn(a.back().back()) < 0) c = uneg(c);
  return bdiv_u_exact(a, c);
}

inline BPoly bdiv_exact(BPoly a, const BPoly &b);

inline Int ueval(const UPoly &a, const Int &x) {
  Int r = 0;
  for (size_t i = a.size(); i-- > 0;) r = r * x + a[i];
  return r;
}

inline size_t budeg(const BPoly &a) {
  size_t d = 0;
  for (const auto &c : a)
    if (!uzero(c)) d = std::max(d, c.size() - 1);
  return d;
}

/// Gcd of the primitive parts via evaluation at u-points, univariate gcd
/// over Z, Newton interpolation over Q, and trial-division verification.
/// Inputs must be primitive with respect to q.
inline BPoly bgcd_pp(const BPoly &a, const BPoly &b) {
  const UPoly one{Int(1)};
  if (a.size() == 1 || b.size() == 1) {
    // A q-primitive constant-in-q polynomial is a unit times 1.
    return {one};
  }
  UPoly gamma = ugcd(a.back(), b.back());
  const size_t npoints = gamma.size() + std::min(budeg(a), budeg(b));

  struct Sample {
    Int u0;
    std::vector<Rat> g;  // monic-to-gamma scaled univariate gcd in q
  };
  std::vector<Sample> samples;
  size_t dmin = SIZE_MAX;

  for (long trial = 0, used = 0; used < 400; ++trial) {
    Int u0 = (trial % 2 == 0) ? Int(trial / 2) : Int(-(trial / 2 + 1));
    if (ueval(a.back(), u0) == 0 || ueval(b.back(), u0) == 0) continue;
    ++used;
    UPoly a0(a.size()), b0(b.size());
    for (size_t i = 0; i < a.size(); ++i) a0[i] = ueval(a[i], u0);
    for (size_t i = 0; i < b.size(); ++i) b0[i] = ueval(b[i], u0);
    utrim(a0);
    utrim(b0);
    UPoly g0 = ugcd(a0, b0);
    if (g0.size() == 1) return {one};
    if (g0.size() - 1 > dmin) continue;  // unlucky point
    if (g0.size() - 1 < dmin) {
      dmin = g0.size() - 1;
      samples.clear();
    }
    Sample s;
    s.u0 = u0;
    Rat scale = Rat(ueval(gamma, u0)) / Rat(g0.back());
    scale.canonicalize();
    s.g.reserve(g0.size());
    for (const auto &c : g0) {
      Rat v = Rat(c) * scale;
      v.canonicalize();
      s.g.push_back(v);
    }
    samples.push_back(std::move(s));
    if (samples.size() < npoints) continue;

    // Newton interpolation of each q-coefficient as a polynomial in u.
    const size_t N = samples.size();
    std::vector<std::vector<Rat>> dd(dmin + 1, std::vector<Rat>(N));
    for (size_t k = 0; k <= dmin; ++k)
      for (size_t i = 0; i < N; ++i) dd[k][i] = samples[i].g[k];
    for (size_t lvl = 1; lvl < N; ++lvl)
      for (size_t i = N - 1; i >= lvl; --i) {
        Rat diff = Rat(samples[i].u0 - samples[i - lvl].u0);
        for (size_t k = 0; k <= dmin; ++k) {
          dd[k][i] = (dd[k][i] - dd[k][i - 1]) / diff;
          dd[k][i].canonicalize();
        }
      }
    // Expand Newton form into u-power coefficients.
    std::vector<std::vector<Rat>> coef(dmin + 1);
    std::vector<Rat> basis{Rat(1)};
    for (size_t lvl = 0; lvl < N; ++lvl) {
      for (size_t k = 0; k <= dmin; ++k) {
        if (coef[k].size() < basis.size()) coef[k].resize(basis.size(), Rat(0));
        for (size_t i = 0; i < basis.size(); ++i) {
          coef[k][i] += dd[k][lvl] * basis[i];
          coef[k][i].canonicalize();
        }
      }
      if (lvl + 1 < N) {
        basis.push_back(Rat(0));
        for (size_t i = basis.size() - 1; i > 0; --i)
          basis[i] = basis[i - 1] - Rat(samples[lvl].u0) * basis[i];
        basis[0] = -Rat(samples[lvl].u0) * basis[0];
        for (auto &v : basis) v.canonicalize();
      }
    }
    // Clear denominators to land in Z[u][q], then take the primitive part.
    Int lcm = 1;
    for (const auto &row : coef)
      for (const auto &v : row)
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den().get_mpz_t());
    BPoly h(dmin + 1);
    for (size_t k = 0; k <= dmin; ++k) {
      h[k].resize(coef[k].size());
      for (size_t i = 0; i < coef[k].size(); ++i)
        h[k][i] = coef[k][i].get_num() * (lcm / coef[k][i].get_den());
      utrim(h[k]);
    }
    btrim(h);
    if (!bzero(h)) {
      h = bprimitive(h);
      try {
        bdiv_exact(a, h);
        bdiv_exact(b, h);
        return h;
      } catch (const std::logic_error &) {
        // Interpolated candidate failed verification: unlucky points, keep
        // sampling (a later point with lower gcd degree resets the batch).
      }
    }
    samples.clear();
    dmin = SIZE_MAX;
  }
  throw std::logic_error("bgcd_pp: failed to stabilize");
}

inline BPoly bgcd(const BPoly &a0, const BPoly &b0) {
  if (bzero(a0)) {
    BPoly b = b0;
    if (!bzero(b) && sgn(b.back().back()) < 0)
      for (auto &uc : b)
        for (auto &c : uc) c = -c;
    return b;
  }
  if (bzero(b0)) return bgcd(b0, a0);
  UPoly ca = bcontent(a0), cb = bcontent(b0);
  UPoly cg = ugcd(ca, cb);
  BPoly a = bdiv_u_exact(a0, ca), b = bdiv_u_exact(b0, cb);
  if (sgn(a.back().back()) < 0) a = bprimitive(a);
  if (sgn(b.back().back()) < 0) b = bprimitive(b);
  return bmul_u(bgcd_pp(a, b), cg);
}

// Exact division in Z[u][q]; throws on a nonzero remainder.
inline BPoly bdiv_exact(BPoly a, const BPoly &b) {
  if (bzero(b)) throw std::logic_error("bdiv_exact: division by zero");
  if (bzero(a)) return {};
  if (a.size() < b.size()) throw std::logic_error("bdiv_exact: not divisible");
  BPoly q(a.size() - b.size() + 1);
  for (size_t k = q.size(); k-- > 0;) {
    const UPoly &top = a[k + b.size() - 1];
    if (uzero(top)) continue;
    UPoly c = udiv_exact(top, b.back());
    q[k] = c;
    for (size_t i = 0; i < b.size(); ++i)
      a[k + i] = uadd(a[k + i], uneg(umul(c, b[i])));
  }
  btrim(a);
  if (!bzero(a)) throw std::logic_error("bdiv_exact: nonzero remainder");
  return q;
}

}  // namespace detail

/// Element of the fraction field Q(q,u), kept in canonical reduced form.
///
/// The numerator is a Laurent polynomial in q,u with integer coefficients;
/// the denominator is a genuine polynomial, coprime to the numerator's
/// polynomial part, with positive leading coefficient in (q,u)-lex order.
class Scalar {
 public:
  // (q exponent, u exponent) -> integer coefficient
  using Expo = std::pair<int, int>;
  using TermMap = std::map<Expo, Int>;

  Scalar() = default;
  Scalar(long v) {
    if (v != 0) num_[{0, 0}] = v;
    den_[{0, 0}] = 1;
  }
  Scalar(const Int &v) {
    if (v != 0) num_[{0, 0}] = v;
    den_[{0, 0}] = 1;
  }
  Scalar(const Rat &v) {
    Rat r = v;
    r.canonicalize();
    if (r.get_num() != 0) num_[{0, 0}] = r.get_num();
    den_[{0, 0}] = r.get_den();
    normalize();
  }

  /// q^a * u^b monomial with integer coefficient.
  static Scalar monomial(const Int &c, int qexp, int uexp) {
    Scalar s;
    if (c != 0) s.num_[{qexp, uexp}] = c;
    s.den_[{0, 0}] = 1;
    return s;
  }
  static Scalar q(int k = 1) { return monomial(1, k, 0); }
  static Scalar u(int k = 1) { return monomial(1, 0, k); }

  bool is_zero() const { return num_.empty(); }
  bool is_one() const {
    return num_.size() == 1 && num_.count({0, 0}) &&
           num_.at({0, 0}) == 1 && den_.size() == 1 &&
           den_.count({0, 0}) && den_.at({0, 0}) == 1;
  }

  const TermMap &num() const { return num_; }
  const TermMap &den() const { return den_; }

  friend Scalar operator+(const Scalar &a, const Scalar &b) {
    Scalar r;
    r.num_ = add_maps(mul_maps(a.num_, b.den_), mul_maps(b.num_, a.den_));
    r.den_ = mul_maps(a.den_, b.den_);
    r.normalize();
    return r;
  }
  friend Scalar operator-(const Scalar &a, const Scalar &b) {
    return a + (-b);
  }
  Scalar operator-() const {
    Scalar r = *this;
    for (auto &t : r.num_) t.second = -t.second;
    return r;
  }
  friend Scalar operator*(const Scalar &a, const Scalar &b) {
    Scalar r;
    r.num_ = mul_maps(a.num_, b.num_);
    r.den_ = mul_maps(a.den_, b.den_);
    r.normalize();
    return r;
  }
  friend Scalar operator/(const Scalar &a, const Scalar &b) {
    if (b.is_zero()) throw std::domain_error("Scalar: division by zero");
    Scalar r;
    r.num_ = mul_maps(a.num_, b.den_);
    r.den_ = mul_maps(a.den_, b.num_);
    r.normalize();
    return r;
  }
  Scalar &operator+=(const Scalar &b) { return *this = *this + b; }
  Scalar &operator-=(const Scalar &b) { return *this = *this - b; }
  Scalar &operator*=(const Scalar &b) { return *this = *this * b; }
  Scalar &operator/=(const Scalar &b) { return *this = *this / b; }

  friend bool operator==(const Scalar &a, const Scalar &b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Scalar &a, const Scalar &b) {
    return !(a == b);
  }
  friend bool operator<(const Scalar &a, const Scalar &b) {
    if (a.num_ != b.num_) return a.num_ < b.num_;
    return a.den_ < b.den_;
  }

  Scalar inverse() const { return Scalar(1) / *this; }

  Scalar pow(long k) const {
    if (k == 0) return Scalar(1);
    Scalar base = k > 0 ? *this : inverse();
    long e = k > 0 ? k : -k;
    Scalar r(1);
    while (e) {
      if (e & 1) r *= base;
      base = base * base;
      e >>= 1;
    }
    return r;
  }

  /// Exact evaluation at rational (q0, u0); throws on a denominator pole.
  Rat specialize(const Rat &q0, const Rat &u0) const {
    Rat d = eval_map(den_, q0, u0);
    if (d == 0) throw std::domain_error("Scalar: pole at specialization point");
    return eval_map(num_, q0, u0) / d;
  }

  /// Partial substitution q := 1 (keeps u formal); throws if the
  /// denominator vanishes at q = 1.
  Scalar at_q_one() const {
    Scalar r;
    r.num_ = collapse_q(num_);
    r.den_ = collapse_q(den_);
    if (r.den_.empty())
      throw std::domain_error("Scalar: denominator vanishes at q=1");
    r.normalize();
    return r;
  }

  std::string to_string() const {
    if (den_.size() == 1 && den_.count({0, 0}) && den_.at({0, 0}) == 1)
      return map_to_string(num_);
    return "(" + map_to_string(num_) + ")/(" + map_to_string(den_) + ")";
  }

  static Scalar parse(const std::string &s);

 private:
  TermMap num_;                 // Laurent polynomial (exponents may be negative)
  TermMap den_{{{0, 0}, Int(1)}};  // genuine polynomial, canonical

  static TermMap add_maps(const TermMap &a, const TermMap &b) {
    TermMap r = a;
    for (const auto &[e, c] : b) {
      auto it = r.find(e);
      if (it == r.end()) {
        r.emplace(e, c);
      } else {
        it->second += c;
        if (it->second == 0) r.erase(it);
      }
    }
    return r;
  }

  static TermMap mul_maps(const TermMap &a, const TermMap &b) {
    TermMap r;
    for (const auto &[ea, ca] : a)
      for (const auto &[eb, cb] : b) {
        Expo e{ea.first + eb.first, ea.second + eb.second};
        auto it = r.find(e);
        if (it == r.end()) {
          r.emplace(e, ca * cb);
        } else {
          it->second += ca * cb;
        }
      }
    for (auto it = r.begin(); it != r.end();)
      it = it->second == 0 ? r.erase(it) : std::next(it);
    return r;
  }

  static Rat eval_map(const TermMap &m, const Rat &q0, const Rat &u0) {
    Rat r = 0;
    for (const auto &[e, c] : m) {
      r += Rat(c) * pow_rat(q0, e.first) * pow_rat(u0, e.second);
    }
    r.canonicalize();
    return r;
  }

  static Rat pow_rat(const Rat &x, int k) {
    if (k == 0) return Rat(1);
    if (x == 0) throw std::domain_error("Scalar: 0 raised to negative power");
    Rat b = k > 0 ? x : Rat(1) / x;
    int e = std::abs(k);
    Rat r(1);
    while (e) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    r.canonicalize();
    return r;
  }

  static TermMap collapse_q(const TermMap &m) {
    TermMap r;
    for (const auto &[e, c] : m) {
      Expo e2{0, e.second};
      auto it = r.find(e2);
      if (it == r.end()) {
        r.emplace(e2, c);
      } else {
        it->second += c;
      }
    }
    for (auto it = r.begin(); it != r.end();)
      it = it->second == 0 ? r.erase(it) : std::next(it);
    return r;
  }

  // map <-> recursive dense conversion, with exponent offsets shifted out
  static detail::BPoly to_bpoly(const TermMap &m, int qmin, int umin) {
    detail::BPoly b;
    for (const auto &[e, c] : m) {
      size_t qi = static_cast<size_t>(e.first - qmin);
      size_t ui = static_cast<size_t>(e.second - umin);
      if (b.size() <= qi) b.resize(qi + 1);
      if (b[qi].size() <= ui) b[qi].resize(ui + 1, Int(0));
      b[qi][ui] = c;
    }
    return b;
  }

  static TermMap from_bpoly(const detail::BPoly &b, int qshift, int ushift) {
    TermMap m;
    for (size_t qi = 0; qi < b.size(); ++qi)
      for (size_t ui = 0; ui < b[qi].size(); ++ui)
        if (b[qi][ui] != 0)
          m[{static_cast<int>(qi) + qshift, static_cast<int>(ui) + ushift}] =
              b[qi][ui];
    return m;
  }

  void normalize() {
    if (den_.empty()) throw std::domain_error("Scalar: zero denominator");
    if (num_.empty()) {
      den_.clear();
      den_[{0, 0}] = 1;
      return;
    }
    int nqmin = 1 << 30, numin = 1 << 30, dqmin = 1 << 30, dumin = 1 << 30;
    for (const auto &[e, c] : num_) {
      nqmin = std::min(nqmin, e.first);
      numin = std::min(numin, e.second);
    }
    for (const auto &[e, c] : den_) {
      dqmin = std::min(dqmin, e.first);
      dumin = std::min(dumin, e.second);
    }
    detail::BPoly n = to_bpoly(num_, nqmin, numin);
    detail::BPoly d = to_bpoly(den_, dqmin, dumin);
    detail::BPoly g = detail::bgcd(n, d);
    bool nontrivial_g =
        g.size() > 1 || (g.size() == 1 && (g[0].size() > 1 || g[0][0] != 1));
    if (nontrivial_g) {
      n = detail::bdiv_exact(n, g);
      d = detail::bdiv_exact(d, g);
    }
    // Denominator sign: leading coefficient positive in (q,u)-lex order.
    if (sgn(d.back().back()) < 0) {
      for (auto &uc : n)
        for (auto &c : uc) c = -c;
      for (auto &uc : d)
        for (auto &c : uc) c = -c;
    }
    // All monomial content goes to the numerator shift.
    num_ = from_bpoly(n, nqmin - dqmin, numin - dumin);
    den_ = from_bpoly(d, 0, 0);
  }

  static std::string term_to_string(const Int &c, int qe, int ue) {
    std::string s;
    Int a = abs(c);
    bool needc = (a != 1) || (qe == 0 && ue == 0);
    if (needc) s += a.get_str();
    auto var = [&](const char *name, int e) {
      if (e == 0) return;
      if (!s.empty()) s += "*";
      s += name;
      if (e != 1) s += "^" + std::to_string(e);
    };
    var("q", qe);
    var("u", ue);
    return s;
  }

  static std::string map_to_string(const TermMap &m) {
    if (m.empty()) return "0";
    // descending (q,u)-lex
    std::string s;
    for (auto it = m.rbegin(); it != m.rend(); ++it) {
      const auto &[e, c] = *it;
      if (s.empty()) {
        if (sgn(c) < 0) s += "-";
      } else {
        s += sgn(c) < 0 ? "-" : "+";
      }
      s += term_to_string(c, e.first, e.second);
    }
    return s;
  }
};

namespace detail {

class ScalarParser {
 public:
  explicit ScalarParser(const std::string &s) : s_(s) {}

  Scalar parse() {
    skip();
    Scalar r;
    if (peek() == '(') {
      size_t save = pos_;
      Scalar numerator = parse_paren();
      skip();
      if (peek() == '/') {
        ++pos_;
        Scalar denominator = parse_paren();
        r = numerator / denominator;
      } else {
        pos_ = save;
        r = parse_poly();
      }
    } else {
      r = parse_poly();
    }
    skip();
    if (pos_ != s_.size())
      throw std::invalid_argument("scalar parse error at position " +
                                  std::to_string(pos_));
    return r;
  }

 private:
  const std::string &s_;
  size_t pos_ = 0;

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }

  Scalar parse_paren() {
    skip();
    if (peek() != '(')
      throw std::invalid_argument("scalar parse: expected '(' at " +
                                  std::to_string(pos_));
    ++pos_;
    Scalar r = parse_poly();
    skip();
    if (peek() != ')')
      throw std::invalid_argument("scalar parse: expected ')' at " +
                                  std::to_string(pos_));
    ++pos_;
    return r;
  }

  Scalar parse_poly() {
    Scalar r(0);
    bool first = true;
    while (true) {
      skip();
      int sign = 1;
      char c = peek();
      if (c == '+' || c == '-') {
        sign = c == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        break;
      }
      Scalar t = parse_term();
      r += sign > 0 ? t : -t;
      first = false;
      skip();
      char n = peek();
      if (n != '+' && n != '-') break;
    }
    return r;
  }

  Scalar parse_term() {
    Scalar r(1);
    bool any = false;
    while (true) {
      skip();
      char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        r *= Scalar(Int(s_.substr(start, pos_ - start)));
        any = true;
      } else if (c == 'q' || c == 'u') {
        ++pos_;
        int e = 1;
        if (peek() == '^') {
          ++pos_;
          e = parse_int();
        }
        r *= c == 'q' ? Scalar::q(e) : Scalar::u(e);
        any = true;
      } else {
        break;
      }
      skip();
      if (peek() == '*') {
        ++pos_;
        continue;
      }
      break;
    }
    if (!any) throw std::invalid_argument("scalar parse: empty term at " +
                                          std::to_string(pos_));
    return r;
  }

  int parse_int() {
    skip();
    int sign = 1;
    if (peek() == '-') {
      sign = -1;
      ++pos_;
    }
    if (!std::isdigit(static_cast<unsigned char>(peek())))
      throw std::invalid_argument("scalar parse: expected integer at " +
                                  std::to_string(pos_));
    size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    return sign * std::stoi(s_.substr(start, pos_ - start));
  }
};

}  // namespace detail

inline Scalar Scalar::parse(const std::string &s) {
  return detail::ScalarParser(s).parse();
}

/// Session context: the rank n and the derived constants and matrices of the
/// toroidal presentation.  p = u^n and d = q^{-1} u throughout.
struct ScalarContext {
  int n;

  // n = 2 is allowed for pure dimension combinatorics; the toroidal
  // relation suites require n >= 3 and check it themselves.
  explicit ScalarContext(int rank) : n(rank) {
    if (n < 2) throw std::invalid_argument("ScalarContext: n must be >= 2");
  }

  Scalar p(int k = 1) const { return Scalar::u(n * k); }
  Scalar u_root(int k = 1) const { return Scalar::u(k); }  // p^{k/n}
  Scalar d(int k = 1) const {
    return Scalar::monomial(1, -k, k);  // (q^{-1} u)^k
  }

  /// Cyclic affine Cartan matrix entry a_{ij}, indices mod n.
  int cartan(int i, int j) const {
    int diff = ((i - j) % n + n) % n;
    if (diff == 0) return 2;
    if (diff == 1 || diff == n - 1) return -1;
    return 0;
  }

  /// Twist matrix entry m_{ij}: -1 on (i, i+1), +1 on (i, i-1), cyclically.
  int twist(int i, int j) const {
    int diff = ((j - i) % n + n) % n;
    if (diff == 1) return -1;
    if (diff == n - 1) return 1;
    return 0;
  }
};

/// Quantum integer [k] = (q^k - q^{-k}) / (q - q^{-1}), in expanded
/// Laurent form.
inline Scalar quantum_integer(int k) {
  if (k == 0) return Scalar(0);
  if (k < 0) return -quantum_integer(-k);
  Scalar r(0);
  for (int i = 0; i < k; ++i) r += Scalar::q(k - 1 - 2 * i);
  return r;
}

inline Scalar quantum_factorial(int k) {
  if (k < 0)
    throw std::invalid_argument("quantum_factorial: negative argument");
  Scalar r(1);
  for (int i = 2; i <= k; ++i) r *= quantum_integer(i);
  return r;
}

}  // namespace qfock
