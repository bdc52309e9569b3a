#pragma once

// Central-charge arithmetic: the Sugawara central charge c_g(k), the coset
// charge of an embedding (subalgebra factors at rescaled levels), the
// conformality condition c_{g,k}(k) = 0, an exact rational scan for
// non-integer levels solving it, and the singular-vector bound forcing
// conformal levels <= 1 in the integrable setting.

#include <cassert>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "affinepair.hpp"
#include "rootsys.hpp"

namespace lieconf {

namespace detail {

inline long dual_coxeter(const SimpleType& t) {
  static std::mutex mu;
  static std::map<SimpleType, long> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(t);
  if (it != cache.end()) return it->second;
  long h = RootSystem::build(t).hvee;
  cache.emplace(t, h);
  return h;
}

}  // namespace detail

// c_g(k) = k dim(g) / (k + h_vee) for a simple type
inline Rat central_charge(const SimpleType& t, const Rat& k) {
  long h = detail::dual_coxeter(t);
  if (k == -h)
    throw std::domain_error("central charge pole at k = -" +
                            std::to_string(h) + " for " + t.str());
  return k * t.dim() / (k + h);
}

// ===========================================================================
// An embedding datum: an ambient sum of simple ideals, all at level k, and a
// reductive subalgebra whose simple ideals live at levels j_S k.  An abelian
// summand of dimension d contributes central charge d at any nonzero level
// (each dimension carries one Heisenberg coset).
// ===========================================================================

struct ConformalFactor {
  SimpleType type;
  Rat j;  // level multiplier: the factor sits at level j * k
};

// One side of an embedding: simple ideals with level multipliers plus an
// abelian summand.
struct ConformalSide {
  std::vector<ConformalFactor> simples;
  int abelian_dim = 0;

  Rat charge(const Rat& k) const {
    Rat c = 0;
    for (const auto& f : simples) c += central_charge(f.type, f.j * k);
    if (abelian_dim > 0 && k != 0) c += abelian_dim;
    return c;
  }
  std::string str() const {
    std::string out;
    for (const auto& f : simples) {
      if (!out.empty()) out += "x";
      out += f.type.str();
      if (f.j != 1) out += "(j=" + rat_str(f.j) + ")";
    }
    if (abelian_dim > 0) {
      if (!out.empty()) out += "x";
      out += "u" + std::to_string(abelian_dim);
    }
    return out.empty() ? "0" : out;
  }
};

struct ConformalDatum {
  ConformalSide ambient;
  ConformalSide sub;
  std::string name;
};

struct CentralChargeReport {
  Rat k;
  Rat cg;                     // ambient central charge at level k
  std::vector<Rat> factor_c;  // per subalgebra ideal, center last if present
  Rat coset;                  // cg minus the factor sum
  bool conformal = false;     // coset == 0
};

inline CentralChargeReport coset_charge(const ConformalDatum& dm,
                                        const Rat& k) {
  CentralChargeReport rep;
  rep.k = k;
  rep.cg = dm.ambient.charge(k);
  Rat sum = 0;
  for (const auto& f : dm.sub.simples) {
    Rat c = central_charge(f.type, f.j * k);
    rep.factor_c.push_back(c);
    sum += c;
  }
  if (dm.sub.abelian_dim > 0) {
    Rat c = k == 0 ? Rat(0) : Rat(dm.sub.abelian_dim);
    rep.factor_c.push_back(c);
    sum += c;
  }
  rep.coset = rep.cg - sum;
  rep.conformal = rep.coset == 0;
  return rep;
}

// so(n) at level j*k, written through types whose normalized form matches:
// so(3) is A1 at a doubled level, so(4) splits into two A1 ideals, so(2) is
// abelian.
inline ConformalSide so_side(long n, const Rat& j = Rat(1)) {
  ConformalSide side;
  if (n == 2) {
    side.abelian_dim = 1;
  } else if (n == 3) {
    side.simples = {{SimpleType{'A', 1}, 2 * j}};
  } else if (n == 4) {
    side.simples = {{SimpleType{'A', 1}, j}, {SimpleType{'A', 1}, j}};
  } else if (n == 5) {
    side.simples = {{SimpleType{'B', 2}, j}};
  } else if (n >= 6) {
    if (n % 2 == 0)
      side.simples = {{SimpleType{'D', (int)n / 2}, j}};
    else
      side.simples = {{SimpleType{'B', (int)(n - 1) / 2}, j}};
  }
  return side;
}

// The embedding attached to a symmetric pair: r acts on the fermions built
// on p at the trace-form levels j_S, sitting conformally inside so(dim p) at
// level one.
inline ConformalDatum datum_from_pair(const SymmetricPair& sp) {
  ConformalDatum dm;
  dm.ambient = so_side(sp.dim_p.get_si());
  for (size_t s = 0; s < sp.rcomps.size(); ++s)
    dm.sub.simples.push_back({sp.rcomps[s].type, sp.jlevels[s]});
  if (sp.hermitian) dm.sub.abelian_dim = 1;
  dm.name = sp.inv.diag.label;
  return dm;
}

// ===========================================================================
// Exact scan for non-integer rational levels solving c_{g,k}(k) = 0.
// ===========================================================================

struct ScanHit {
  size_t index;  // into the candidate list
  Rat k;
};

namespace detail {

// The coset charge is a rational function of k; if it vanishes at more
// sample points than its numerator degree, it is identically zero and the
// datum carries no proper equal-rank condition to solve.
inline bool coset_identically_zero(const ConformalDatum& dm) {
  int needed =
      (int)dm.ambient.simples.size() + (int)dm.sub.simples.size() + 3;
  int hits = 0;
  for (long k = 1; hits < needed; ++k) {
    try {
      if (coset_charge(dm, Rat(k)).coset != 0) return false;
    } catch (const std::domain_error&) {
      continue;  // pole: pick another sample
    }
    ++hits;
  }
  return true;
}

}  // namespace detail

inline std::vector<ScanHit> admissible_scan(
    const std::vector<ConformalDatum>& candidates, int denom_bound,
    int level_bound) {
  assert(denom_bound >= 1 && level_bound >= 1);
  std::vector<ScanHit> out;
  for (size_t i = 0; i < candidates.size(); ++i) {
    if (detail::coset_identically_zero(candidates[i])) continue;
    for (int b = 2; b <= denom_bound; ++b)
      for (long a = -(long)level_bound * b; a <= (long)level_bound * b; ++a) {
        if (std::gcd(a < 0 ? -a : a, (long)b) != 1) continue;
        Rat k(a, b);
        try {
          if (coset_charge(candidates[i], k).conformal)
            out.push_back({i, k});
        } catch (const std::domain_error&) {
          // pole in some factor: skipped silently
        }
      }
  }
  return out;
}

// ===========================================================================
// Table of the non-integer admissible conformal levels for equal-rank
// maximal pairs: (B_l, D_l) at -l+3/2, (G2, A2) at -5/3, (F4, B4) at -5/2.
// ===========================================================================

struct Table1Row {
  Rat k;
  SimpleType g;
  SimpleType sub;
  CentralChargeReport rep;
};

inline std::vector<Table1Row> table1_rows(int lmin = 4, int lmax = 10) {
  auto make = [](SimpleType g, SimpleType sub, Rat k) {
    ConformalDatum dm;
    dm.ambient.simples = {{g, Rat(1)}};
    dm.sub.simples = {{sub, Rat(1)}};
    dm.name = g.str() + ">" + sub.str();
    return Table1Row{k, g, sub, coset_charge(dm, k)};
  };
  std::vector<Table1Row> rows;
  for (int l = lmin; l <= lmax; ++l)
    rows.push_back(make(SimpleType{'B', l}, SimpleType{'D', l},
                        Rat(3 - 2 * l, 2)));
  rows.push_back(make(SimpleType{'G', 2}, SimpleType{'A', 2}, Rat(-5, 3)));
  rows.push_back(make(SimpleType{'F', 4}, SimpleType{'B', 4}, Rat(-5, 2)));
  return rows;
}

// ===========================================================================
// The singular-vector bound: a conformal embedding into V^k(g) forces a
// singular vector of conformal weight 2, hence some lambda equal to zero or
// to a sum of at most two roots with
//   ((2 rho + lambda, lambda) - 2(k + h_vee)) / (k + h_vee) = 2.
// Maximizing the left side numerator over all such lambda shows the largest
// solvable level is exactly 1.
// ===========================================================================

inline bool level_one_bound_check(const SimpleType& t) {
  RootSystem rs = RootSystem::build(t);
  std::vector<Vec> roots;
  for (const auto& v : rs.pos) {
    Vec a(rs.n), b(rs.n);
    for (int i = 0; i < rs.n; ++i) {
      a[i] = v[i];
      b[i] = -v[i];
    }
    roots.push_back(a);
    roots.push_back(b);
  }
  Vec rho(rs.n, Rat(0));
  for (const auto& v : rs.pos)
    for (int i = 0; i < rs.n; ++i) rho[i] += v[i];
  for (auto& x : rho) x /= 2;

  // q(lambda) = (2 rho + lambda, lambda); the level solving the display is
  // k = q/4 - h_vee
  Rat qmax = 0;  // lambda = 0
  auto consider = [&](const Vec& lam) {
    Rat q = 2 * rs.form_rc(rho, lam) + rs.form_rc(lam, lam);
    if (q > qmax) qmax = q;
  };
  for (size_t i = 0; i < roots.size(); ++i) {
    consider(roots[i]);
    for (size_t j = i; j < roots.size(); ++j) {
      Vec lam(rs.n);
      for (int x = 0; x < rs.n; ++x) lam[x] = roots[i][x] + roots[j][x];
      consider(lam);
    }
  }
  return qmax / 4 - rs.hvee == 1;
}

}  // namespace lieconf
