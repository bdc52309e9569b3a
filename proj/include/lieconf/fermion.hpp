#pragma once

// Symbolic lambda-bracket engine for the fermionic vertex algebra F(A-bar)
// attached to a space A with a symmetric pairing, together with an exact
// oracle realizing F(A-bar) as the Clifford module on half-integer modes.
//
// Elements are kept in a canonical normally ordered form
//   :T^{n1}(x_{i1}) ... T^{nk}(x_{ik}):
// with factors strictly increasing in (generator, derivative order); a
// repeated factor annihilates the monomial (its modes square to zero in the
// Clifford module). Lambda-polynomials are stored in divided powers
// lambda^(s) = lambda^s / s!, whose s-th coefficient is the s-th product
// a_(s) b.

#include <algorithm>
#include <cassert>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lieconf/linalg.hpp"
#include "lieconf/rat.hpp"

namespace lieconf {

// ===========================================================================
// The generator space: an odd space with a symmetric pairing.
// ===========================================================================

struct FermionSpace {
  Mat pairing;  // symmetric, invertible
  Mat dual;     // inverse of the pairing

  static FermionSpace make(Mat b) {
    size_t n = b.size();
    for (size_t i = 0; i < n; ++i) {
      if (b[i].size() != n) throw std::invalid_argument("pairing not square");
      for (size_t j = 0; j < n; ++j)
        if (b[i][j] != b[j][i])
          throw std::invalid_argument("pairing not symmetric");
    }
    if (det(b) == 0) throw std::invalid_argument("pairing degenerate");
    FermionSpace v;
    v.dual = inverse(b);
    v.pairing = std::move(b);
    return v;
  }
  // k hyperbolic pairs: generators 2i, 2i+1 isotropic with (x_{2i},x_{2i+1})=1
  static FermionSpace hyperbolic(int k) {
    Mat b = mat_zero(2 * k, 2 * k);
    for (int i = 0; i < k; ++i) b[2 * i][2 * i + 1] = b[2 * i + 1][2 * i] = 1;
    return make(std::move(b));
  }
  static FermionSpace euclidean(int n) { return make(mat_id(n)); }

  int dim() const { return (int)pairing.size(); }
  const Rat& pair(int i, int j) const { return pairing[i][j]; }
};

// ===========================================================================
// Normally ordered expressions.
// ===========================================================================

using NOFactor = std::pair<int, int>;  // (generator index, derivative order)
using NOKey = std::vector<NOFactor>;   // strictly increasing

// doubled conformal weight of a monomial: sum of (2n + 1) over factors
inline long weight2(const NOKey& k) {
  long w = 0;
  for (const auto& f : k) w += 2 * f.second + 1;
  return w;
}

struct NOExpr {
  std::map<NOKey, Rat> t;  // no zero coefficients stored

  bool zero() const { return t.empty(); }
  NOExpr& add(const NOKey& k, const Rat& c) {
    if (c == 0) return *this;
    auto it = t.find(k);
    if (it == t.end()) {
      t.emplace(k, c);
    } else {
      it->second += c;
      if (it->second == 0) t.erase(it);
    }
    return *this;
  }
  NOExpr& operator+=(const NOExpr& o) {
    for (const auto& [k, c] : o.t) add(k, c);
    return *this;
  }
  NOExpr& operator-=(const NOExpr& o) {
    for (const auto& [k, c] : o.t) add(k, -c);
    return *this;
  }
  NOExpr& operator*=(const Rat& s) {
    if (s == 0) {
      t.clear();
      return *this;
    }
    for (auto& [k, c] : t) c *= s;
    return *this;
  }
  friend NOExpr operator+(NOExpr a, const NOExpr& b) { return a += b; }
  friend NOExpr operator-(NOExpr a, const NOExpr& b) { return a -= b; }
  friend NOExpr operator*(const Rat& s, NOExpr a) { return a *= s; }
  friend bool operator==(const NOExpr&, const NOExpr&) = default;

  // parity of the (assumed homogeneous) expression: +1 even, -1 odd
  int parity() const {
    if (t.empty()) return 1;
    int p = t.begin()->first.size() % 2 ? -1 : 1;
    for (const auto& [k, c] : t)
      assert((k.size() % 2 ? -1 : 1) == p && "parity-inhomogeneous");
    return p;
  }
  std::string str() const;
};

namespace detail {

// sort factors with transposition signs; sign 0 when a factor repeats
inline int no_sort(NOKey& f) {
  int sign = 1;
  for (size_t i = 1; i < f.size(); ++i)
    for (size_t j = i; j > 0 && f[j] < f[j - 1]; --j) {
      std::swap(f[j], f[j - 1]);
      sign = -sign;
    }
  for (size_t i = 1; i < f.size(); ++i)
    if (f[i] == f[i - 1]) return 0;
  return sign;
}

}  // namespace detail

inline NOExpr no_term(NOKey f, const Rat& c = Rat(1)) {
  int s = detail::no_sort(f);
  NOExpr e;
  if (s != 0) e.add(f, s < 0 ? -c : c);
  return e;
}
inline NOExpr no_vacuum(const Rat& c = Rat(1)) { return no_term({}, c); }
inline NOExpr no_gen(int g, int der = 0) { return no_term({{g, der}}); }
// the staircase :T^0(x_g) T^1(x_g) ... T^n(x_g):
inline NOExpr no_staircase(int g, int n) {
  NOKey k;
  for (int d = 0; d <= n; ++d) k.push_back({g, d});
  return no_term(std::move(k));
}

// T as a derivation of the normally ordered product
inline NOExpr apply_T(const NOExpr& e) {
  NOExpr out;
  for (const auto& [k, c] : e.t)
    for (size_t i = 0; i < k.size(); ++i) {
      NOKey k2 = k;
      k2[i].second += 1;
      out += no_term(std::move(k2), c);
    }
  return out;
}
// divided power T^(j) = T^j / j!
inline NOExpr apply_T_div(NOExpr e, long j) {
  for (long i = 0; i < j; ++i) e = apply_T(e);
  return e *= Rat(1) / Rat(factorial(j));
}

// ===========================================================================
// The Fock module: exterior monomials in creation modes x^g_(-d-1).
// ===========================================================================

using ModeKey = std::vector<std::pair<int, int>>;  // (generator, d), increasing

inline long energy2(const ModeKey& k) {
  long e = 0;
  for (const auto& m : k) e += 2 * m.second + 1;
  return e;
}

struct FockState {
  std::map<ModeKey, Rat> t;

  bool zero() const { return t.empty(); }
  FockState& add(const ModeKey& k, const Rat& c) {
    if (c == 0) return *this;
    auto it = t.find(k);
    if (it == t.end()) {
      t.emplace(k, c);
    } else {
      it->second += c;
      if (it->second == 0) t.erase(it);
    }
    return *this;
  }
  FockState& add_scaled(const FockState& o, const Rat& s) {
    if (s == 0) return *this;
    for (const auto& [k, c] : o.t) add(k, s * c);
    return *this;
  }
  FockState& operator+=(const FockState& o) { return add_scaled(o, 1); }
  FockState& operator-=(const FockState& o) { return add_scaled(o, -1); }
  FockState& operator*=(const Rat& s) {
    if (s == 0) {
      t.clear();
      return *this;
    }
    for (auto& [k, c] : t) c *= s;
    return *this;
  }
  friend bool operator==(const FockState&, const FockState&) = default;

  long max_energy2() const {
    long e = -1;
    for (const auto& [k, c] : t) e = std::max(e, energy2(k));
    return e;
  }
};

inline FockState fock_vacuum(const Rat& c = Rat(1)) {
  FockState s;
  s.add({}, c);
  return s;
}

// T^n(x_g) corresponds to n! x^g_(-n-1); on canonical monomials the
// identification with mode monomials is factorwise
inline FockState state_of(const NOExpr& e) {
  FockState s;
  for (const auto& [k, c] : e.t) {
    Rat f = c;
    for (const auto& [g, d] : k) f *= Rat(factorial(d));
    s.add(k, f);
  }
  return s;
}
inline NOExpr expr_of(const FockState& s) {
  NOExpr e;
  for (const auto& [k, c] : s.t) {
    Rat f = c;
    for (const auto& [g, d] : k) f /= Rat(factorial(d));
    e.add(k, f);
  }
  return e;
}

// the mode x^g_(m): creation for m <= -1 (inserts x^g_(-d-1), d = -m-1),
// annihilation via the pairing for m >= 0
inline FockState apply_gen_mode(const FermionSpace& v, int g, long m,
                                const FockState& s) {
  FockState out;
  for (const auto& [k, c] : s.t) {
    if (m <= -1) {
      std::pair<int, int> nf{g, (int)(-m - 1)};
      int sign = 1;
      size_t i = 0;
      while (i < k.size() && k[i] < nf) {
        sign = -sign;
        ++i;
      }
      if (i < k.size() && k[i] == nf) continue;  // repeated mode
      ModeKey k2;
      k2.reserve(k.size() + 1);
      k2.insert(k2.end(), k.begin(), k.begin() + i);
      k2.push_back(nf);
      k2.insert(k2.end(), k.begin() + i, k.end());
      out.add(k2, sign < 0 ? -c : c);
    } else {
      int sign = 1;
      for (size_t i = 0; i < k.size(); ++i) {
        if ((long)k[i].second == m) {
          const Rat& pr = v.pair(g, k[i].first);
          if (pr != 0) {
            ModeKey k2;
            k2.reserve(k.size() - 1);
            k2.insert(k2.end(), k.begin(), k.begin() + i);
            k2.insert(k2.end(), k.begin() + i + 1, k.end());
            out.add(k2, (sign < 0 ? -c : c) * pr);
          }
        }
        sign = -sign;
      }
    }
  }
  return out;
}

inline FockState state_T(const FockState& s) {
  FockState out;
  for (const auto& [k, c] : s.t)
    for (size_t i = 0; i < k.size(); ++i) {
      // T(x_(-d-1)) = (d+1) x_(-d-2) on modes
      ModeKey k2 = k;
      k2[i].second += 1;
      int sign = 1;
      // restore strict order (bump can collide with or pass the next factor)
      for (size_t j = i + 1; j < k2.size() && k2[j] < k2[j - 1]; ++j) {
        std::swap(k2[j], k2[j - 1]);
        sign = -sign;
      }
      bool dup = false;
      for (size_t j = 1; j < k2.size(); ++j)
        if (k2[j] == k2[j - 1]) dup = true;
      if (!dup) out.add(k2, c * Rat(k[i].second + 1) * sign);
    }
  return out;
}

namespace detail {

// (a[pos..])_(n) b via the iterate formula: with a = u_(-1-D) R,
//   (u_(-1-D) R)_(n) = sum_j C(D+j,j) [ u_(-1-D-j) (R_(n+j) b)
//                      + (-1)^D p(u,R) R_(-1-D+n-j) (u_(j) b) ].
// Memoized on (position, mode index, state): the j-loops re-query the same
// suffixes many times, and deep monomials would otherwise blow up.
struct ModeCache {
  const FermionSpace& v;
  const ModeKey& a;
  std::map<std::tuple<size_t, long, std::map<ModeKey, Rat>>, FockState> memo;

  ModeCache(const FermionSpace& vv, const ModeKey& aa) : v(vv), a(aa) {}

  const FockState& run(size_t pos, long n, const FockState& b) {
    auto key = std::make_tuple(pos, n, b.t);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    FockState out;
    if (b.t.empty()) {
      // nothing
    } else if (pos == a.size()) {
      if (n == -1) out = b;
    } else {
      int g = a[pos].first;
      long d = a[pos].second;
      long er2 = 0;
      for (size_t i = pos + 1; i < a.size(); ++i) er2 += 2 * a[i].second + 1;
      long eb2 = b.max_energy2();
      int sgn = ((d + (long)(a.size() - pos - 1)) % 2) ? -1 : 1;
      for (long j = 0; 2 * (n + j) <= er2 + eb2 - 2; ++j) {
        const FockState& r = run(pos + 1, n + j, b);
        if (r.t.empty()) continue;
        out.add_scaled(apply_gen_mode(v, g, -1 - d - j, r), binom(d + j, j));
      }
      for (long j = 0; 2 * j <= eb2 - 1; ++j) {
        FockState ub = apply_gen_mode(v, g, j, b);
        if (ub.t.empty()) continue;
        const FockState& r = run(pos + 1, -1 - d + n - j, ub);
        out.add_scaled(r, binom(d + j, j) * sgn);
      }
    }
    return memo.emplace(std::move(key), std::move(out)).first->second;
  }
};

}  // namespace detail

// the n-th product a_(n) b computed in the Clifford module
inline FockState apply_modes(const FermionSpace& v, const FockState& a, long n,
                             const FockState& b) {
  FockState out;
  for (const auto& [k, c] : a.t) {
    detail::ModeCache ctx(v, k);
    out.add_scaled(ctx.run(0, n, b), c);
  }
  return out;
}

// the (-1) product :a b:, canonicalized through the Fock realization (this
// accounts for all quasi-associativity corrections exactly)
inline NOExpr no_product(const FermionSpace& v, const NOExpr& a,
                         const NOExpr& b) {
  return expr_of(apply_modes(v, state_of(a), -1, state_of(b)));
}

// ===========================================================================
// Lambda-polynomials in divided powers.
// ===========================================================================

struct LambdaPoly {
  std::map<int, NOExpr> c;  // s -> coefficient of lambda^(s); no zero entries

  bool zero() const { return c.empty(); }
  LambdaPoly& add(int s, const NOExpr& e) {
    if (e.zero()) return *this;
    auto it = c.find(s);
    if (it == c.end()) {
      c.emplace(s, e);
    } else {
      it->second += e;
      if (it->second.zero()) c.erase(it);
    }
    return *this;
  }
  LambdaPoly& operator+=(const LambdaPoly& o) {
    for (const auto& [s, e] : o.c) add(s, e);
    return *this;
  }
  LambdaPoly& operator*=(const Rat& r) {
    if (r == 0) {
      c.clear();
      return *this;
    }
    for (auto& [s, e] : c) e *= r;
    return *this;
  }
  friend bool operator==(const LambdaPoly&, const LambdaPoly&) = default;

  int degree() const { return c.empty() ? -1 : c.rbegin()->first; }
  NOExpr coeff(int s) const {
    auto it = c.find(s);
    return it == c.end() ? NOExpr{} : it->second;
  }
  std::string str() const;
};

// P(-lambda-T): lambda^(s) v  ->  sum_{i+j=s} (-1)^s lambda^(i) T^(j)(v)
inline LambdaPoly subst_minus_lambda_T(const LambdaPoly& p) {
  LambdaPoly out;
  for (const auto& [s, v] : p.c)
    for (int j = 0; j <= s; ++j) {
      NOExpr w = apply_T_div(v, j);
      if (s % 2) w *= Rat(-1);
      out.add(s - j, w);
    }
  return out;
}

// ===========================================================================
// The lambda-bracket: Clifford-module oracle.
// ===========================================================================

inline LambdaPoly bracket_oracle(const FermionSpace& v, const FockState& a,
                                 const FockState& b) {
  LambdaPoly p;
  long ea = a.max_energy2(), eb = b.max_energy2();
  for (long n = 0; 2 * n <= ea + eb - 2; ++n) {
    FockState r = apply_modes(v, a, n, b);
    if (!r.t.empty()) p.add((int)n, expr_of(r));
  }
  return p;
}

// ===========================================================================
// The lambda-bracket: structural Wick recursion on canonical monomials.
// ===========================================================================

namespace detail {

LambdaPoly bracket_mono(const FermionSpace& v, const NOKey& a, const NOKey& b);

// [T^m(x_g)_lambda :T^n(x_h) C:] by the right Wick formula; the integral
// term vanishes because [u_lambda b0] is a multiple of the vacuum
inline LambdaPoly bracket_single(const FermionSpace& v, const NOFactor& u,
                                 const NOKey& b) {
  LambdaPoly out;
  if (b.empty()) return out;
  NOFactor b0 = b[0];
  NOKey rest(b.begin() + 1, b.end());
  const Rat& pr = v.pair(u.first, b0.first);
  if (pr != 0) {
    // (-1)^m (m+n)! pair lambda^((m+n)) tensor the remaining factors
    Rat coef = pr * Rat(factorial(u.second + b0.second));
    if (u.second % 2) coef = -coef;
    out.add(u.second + b0.second, no_term(rest, coef));
  }
  if (!rest.empty()) {
    LambdaPoly rec = bracket_single(v, u, rest);
    NOExpr head = no_gen(b0.first, b0.second);
    for (const auto& [s, w] : rec.c) {
      NOExpr prod = no_product(v, head, w);
      prod *= Rat(-1);  // p(u, b0) = -1
      out.add(s, prod);
    }
  }
  return out;
}

// [:u A:_lambda b] by the left Wick formula:
//   :(e^{T d/dlambda} u)[A_lambda b]: + p(u,A) :(e^{T d/dlambda} A)[u_lambda b]:
//   + p(u,A) int_0^lambda [A_mu [u_{lambda-mu} b]] dmu
inline LambdaPoly bracket_mono_impl(const FermionSpace& v, const NOKey& a,
                                    const NOKey& b) {
  if (a.empty() || b.empty()) return {};
  if (a.size() == 1) return bracket_single(v, a[0], b);
  NOFactor u = a[0];
  NOKey rest(a.begin() + 1, a.end());
  int pa = rest.size() % 2 ? -1 : 1;  // p(u, A)
  LambdaPoly out;

  LambdaPoly pA = bracket_mono(v, rest, b);
  for (const auto& [s, w] : pA.c)
    for (int j = 0; j <= s; ++j) {
      NOExpr term = no_product(v, no_gen(u.first, u.second + j), w);
      term *= Rat(1) / Rat(factorial(j));
      out.add(s - j, term);
    }

  LambdaPoly pU = bracket_single(v, u, b);
  NOExpr restx = no_term(rest);
  for (const auto& [s, w] : pU.c)
    for (int j = 0; j <= s; ++j) {
      NOExpr term = no_product(v, apply_T_div(restx, j), w);
      if (pa < 0) term *= Rat(-1);
      out.add(s - j, term);
    }

  // integral term: substitute lambda-mu into [u_nu b], bracket with A in mu,
  // then integrate divided powers: mu^(q) -> lambda^(q+1)
  std::map<std::pair<int, int>, NOExpr> two;  // (lambda index, mu index)
  for (const auto& [s, w] : pU.c) {
    // [A_mu w] as a polynomial in mu
    LambdaPoly aw;
    for (const auto& [kw, cw] : w.t) {
      LambdaPoly part = bracket_mono(v, rest, kw);
      part *= cw;
      aw += part;
    }
    for (int i = 0; i <= s; ++i) {
      int j = s - i;
      for (const auto& [q, x] : aw.c) {
        // (-1)^j lambda^(i) mu^(j) mu^(q) -> binom(j+q, j) mu^(j+q)
        NOExpr y = x;
        y *= binom(j + q, j);
        if (j % 2) y *= Rat(-1);
        auto key = std::make_pair(i, j + q);
        auto it = two.find(key);
        if (it == two.end())
          two.emplace(key, y);
        else {
          it->second += y;
          if (it->second.zero()) two.erase(it);
        }
      }
    }
  }
  for (const auto& [ij, x] : two) {
    // int_0^lambda lambda^(i) mu^(q) dmu = binom(i+q+1, i) lambda^(i+q+1)
    NOExpr y = x;
    y *= binom(ij.first + ij.second + 1, ij.first);
    if (pa < 0) y *= Rat(-1);
    out.add(ij.first + ij.second + 1, y);
  }
  return out;
}

inline LambdaPoly bracket_mono(const FermionSpace& v, const NOKey& a,
                               const NOKey& b) {
  return bracket_mono_impl(v, a, b);
}

}  // namespace detail

inline LambdaPoly bracket_symbolic(const FermionSpace& v, const NOExpr& a,
                                   const NOExpr& b) {
  LambdaPoly out;
  for (const auto& [ka, ca] : a.t)
    for (const auto& [kb, cb] : b.t) {
      LambdaPoly p = detail::bracket_mono(v, ka, kb);
      p *= ca * cb;
      out += p;
    }
  return out;
}

// ===========================================================================
// Jacobi defect (two-variable): [a_l [b_m c]] - p(a,b)[b_m [a_l c]]
//                               - [[a_l b]_{l+m} c]; zero iff Jacobi holds.
// ===========================================================================

struct LambdaPoly2 {
  std::map<std::pair<int, int>, NOExpr> c;  // (lambda index, mu index)

  bool zero() const { return c.empty(); }
  void add(int i, int j, const NOExpr& e) {
    if (e.zero()) return;
    auto key = std::make_pair(i, j);
    auto it = c.find(key);
    if (it == c.end()) {
      c.emplace(key, e);
    } else {
      it->second += e;
      if (it->second.zero()) c.erase(it);
    }
  }
};

inline LambdaPoly2 jacobi_defect(const FermionSpace& v, const NOExpr& a,
                                 const NOExpr& b, const NOExpr& cc) {
  int pab = (a.parity() < 0 && b.parity() < 0) ? -1 : 1;
  LambdaPoly2 out;
  // [a_lambda [b_mu c]]
  LambdaPoly bm = bracket_symbolic(v, b, cc);
  for (const auto& [t, w] : bm.c) {
    LambdaPoly al = bracket_symbolic(v, a, w);
    for (const auto& [s, x] : al.c) out.add(s, t, x);
  }
  // - p(a,b) [b_mu [a_lambda c]]
  LambdaPoly am = bracket_symbolic(v, a, cc);
  for (const auto& [s, w] : am.c) {
    LambdaPoly bl = bracket_symbolic(v, b, w);
    for (const auto& [t, x] : bl.c) {
      NOExpr y = x;
      y *= Rat(-pab);
      out.add(s, t, y);
    }
  }
  // - [[a_lambda b]_{lambda+mu} c]
  LambdaPoly ab = bracket_symbolic(v, a, b);
  for (const auto& [s, w] : ab.c) {
    LambdaPoly wc = bracket_symbolic(v, w, cc);
    for (const auto& [u, x] : wc.c)
      for (int i = 0; i <= u; ++i) {
        int j = u - i;  // (lambda+mu)^(u) = sum lambda^(i) mu^(j)
        // lambda^(s) lambda^(i) = binom(s+i, s) lambda^(s+i)
        NOExpr y = x;
        y *= -binom(s + i, s);
        out.add(s + i, j, y);
      }
  }
  return out;
}

// ===========================================================================
// Virasoro element, conformal weights, central charge.
// ===========================================================================

inline NOExpr virasoro(const FermionSpace& v) {
  NOExpr w;
  int n = v.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Rat& d = v.dual[j][i];
      if (d != 0) w += no_term({{i, 1}, {j, 0}}, d / 2);
    }
  return w;
}

// central charge read off [w_lambda w] = (T + 2 lambda) w + lambda^(3) (c/2)
inline Rat fermion_central_charge(const FermionSpace& v) {
  NOExpr w = virasoro(v);
  LambdaPoly p = bracket_oracle(v, state_of(w), state_of(w));
  NOExpr top = p.coeff(3);
  assert(top.t.size() <= 1);
  Rat half_c = top.t.empty() ? Rat(0) : top.t.begin()->second;
  if (!top.t.empty()) assert(top.t.begin()->first.empty());
  return 2 * half_c;
}

// conformal weight: the omega_(1) eigenvalue (throws if not an eigenvector)
inline Rat conformal_weight(const FermionSpace& v, const NOExpr& a) {
  FockState s = state_of(a);
  if (s.t.empty()) return 0;
  FockState w = apply_modes(v, state_of(virasoro(v)), 1, s);
  Rat delta = 0;
  if (!w.t.empty()) {
    auto it = s.t.find(w.t.begin()->first);
    if (it == s.t.end())
      throw std::invalid_argument("conformal_weight: not an eigenvector");
    delta = w.t.begin()->second / it->second;
  }
  FockState expect = s;
  expect *= delta;
  if (!(w == expect))
    throw std::invalid_argument("conformal_weight: not an eigenvector");
  return delta;
}

// ===========================================================================
// The Theta embedding of so(A): Theta(X) = 1/2 sum : (X x_i) x^i :.
// ===========================================================================

inline NOExpr theta(const FermionSpace& v, const Mat& x) {
  int n = v.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Rat s = 0;
      for (int k = 0; k < n; ++k)
        s += x[k][i] * v.pairing[k][j] + v.pairing[i][k] * x[k][j];
      if (s != 0) throw std::invalid_argument("theta: matrix not skew");
    }
  NOExpr out;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (x[k][i] == 0) continue;
      for (int j = 0; j < n; ++j) {
        Rat coef = x[k][i] * v.dual[j][i] / 2;
        if (coef != 0) out += no_term({{k, 0}, {j, 0}}, coef);
      }
    }
  return out;
}

// [Theta(X)_lambda Theta(Y)] = Theta([X,Y]) + lambda s(X,Y)|0>; returns the
// current part and the level scalar, asserting exactly this shape
struct ThetaBracket {
  NOExpr current;
  Rat level = 0;
};

inline ThetaBracket theta_bracket(const FermionSpace& v, const Mat& x,
                                  const Mat& y) {
  LambdaPoly p =
      bracket_oracle(v, state_of(theta(v, x)), state_of(theta(v, y)));
  ThetaBracket tb;
  tb.current = p.coeff(0);
  NOExpr lin = p.coeff(1);
  assert(p.degree() <= 1);
  assert(lin.t.size() <= 1);
  if (!lin.t.empty()) {
    assert(lin.t.begin()->first.empty());
    tb.level = lin.t.begin()->second;
  }
  return tb;
}

// ===========================================================================
// C(n, m) = det((-1)^{n_j} (m_i + n_j)!).
// ===========================================================================

inline Rat det_C(const std::vector<long>& n, const std::vector<long>& m) {
  if (n.size() != m.size())
    throw std::invalid_argument("det_C: length mismatch");
  if (n.empty()) return 0;
  size_t k = n.size();
  Mat a(k, Vec(k));
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j) {
      a[i][j] = Rat(factorial(m[i] + n[j]));
      if (n[j] % 2) a[i][j] = -a[i][j];
    }
  return det(a);
}

// ===========================================================================
// Rendering.
// ===========================================================================

inline std::string no_factor_str(const NOFactor& f) {
  std::string g = "x" + std::to_string(f.first + 1);
  if (f.second == 0) return g;
  return "T^" + std::to_string(f.second) + "(" + g + ")";
}

inline std::string NOExpr::str() const {
  if (t.empty()) return "0";
  std::string out;
  for (const auto& [k, c] : t) {
    if (!out.empty()) out += " + ";
    std::string mono;
    if (k.empty()) {
      mono = "|0>";
    } else if (k.size() == 1) {
      mono = no_factor_str(k[0]);
    } else {
      mono = ":";
      for (size_t i = 0; i < k.size(); ++i) {
        if (i) mono += " ";
        mono += no_factor_str(k[i]);
      }
      mono += ":";
    }
    if (c == 1 && !k.empty())
      out += mono;
    else
      out += rat_str(c) + "*" + mono;
  }
  return out;
}

inline std::string LambdaPoly::str() const {
  if (c.empty()) return "0";
  std::string out;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    if (!out.empty()) out += " + ";
    out += "L^(" + std::to_string(it->first) + ")*(" + it->second.str() + ")";
  }
  return out;
}

}  // namespace lieconf
