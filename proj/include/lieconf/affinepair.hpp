#pragma once
// Affine diagrams (untwisted, twisted, and split two-copy forms), involutions
// given by 0/1 labels on diagram nodes, and the restricted root data of the
// associated symmetric pair: the fixed subalgebra r with its simple
// components, the weights of the odd part p with multiplicities, trace-form
// levels, and the highest noncompact weight with its classification.

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "linalg.hpp"
#include "rat.hpp"
#include "rootsys.hpp"

namespace lieconf {

// ===========================================================================
// Affine diagram.  Node 0 always denotes the distinguished added node of the
// standard numbering; for the two-rank twisted chain the distinguished node
// carries mark 2.  `gram` stores the inner products of the restricted simple
// roots in the normalization where long roots of the ambient algebra have
// squared length 2; `dlevel` stores the delta'-coefficient of each node.
// ===========================================================================

struct AffineDiagram {
  std::string label;
  LieType ambient;                       // two equal factors for split form
  int twist = 1;                         // 1 untwisted, 2 twisted/split
  bool split = false;                    // a = s + s with the swap
  int n = 0;                             // number of nodes
  std::vector<std::vector<int>> cartan;  // cartan[i][j] = <alpha_j, alpha_i^vee>
  std::vector<int> marks;                // right null vector (cartan * a = 0)
  std::vector<int> comarks;              // left null vector
  std::vector<Rat> dhalf;                // (alpha_i, alpha_i)/2
  std::vector<Rat> dlevel;               // delta'-level of node i
  Mat gram;                              // gram[i][j] = (alpha_i, alpha_j)
  RootSystem fin;                        // ambient simple factor, finite data

  // delta'-level of the fundamental imaginary root: 1 untwisted, 1/2 else.
  Rat fund_level() const {
    Rat s = 0;
    for (int i = 0; i < n; ++i) s += Rat(marks[i]) * dlevel[i];
    return s;
  }
  long hvee_sum() const {
    long s = 0;
    for (int c : comarks) s += c;
    return s;
  }
};

namespace detail {

inline Mat transpose(const Mat& a) {
  int r = (int)a.size(), c = (int)a[0].size();
  Mat t(c, Vec(r));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) t[j][i] = a[i][j];
  return t;
}

// Positive primitive integer null vector of a corank-one matrix whose
// principal submatrices are invertible (generalized Cartan matrices).
inline std::vector<int> primitive_null(const Mat& a) {
  int n = (int)a.size();
  assert(n >= 1);
  Vec x;
  if (n == 1) {
    assert(a[0][0] == 0);
    x = {Rat(1)};
  } else {
    Mat m(n - 1, Vec(n - 1));
    Vec b(n - 1);
    for (int i = 0; i + 1 < n; ++i) {
      for (int j = 0; j + 1 < n; ++j) m[i][j] = a[i][j];
      b[i] = -a[i][n - 1];
    }
    auto sol = solve(m, b);
    assert(sol.has_value());
    x = *sol;
    x.push_back(Rat(1));
  }
  for (int i = 0; i < n; ++i) {
    Rat r = 0;
    for (int j = 0; j < n; ++j) r += a[i][j] * x[j];
    assert(r == 0);
  }
  Int l(1);
  for (auto& v : x) l = lcm(l, v.get_den());
  std::vector<Int> num(n);
  Int g(0);
  for (int i = 0; i < n; ++i) {
    Rat s = x[i] * Rat(l);
    assert(is_integer(s));
    num[i] = s.get_num();
    g = gcd(g, num[i]);
  }
  assert(g != 0);
  std::vector<int> out(n);
  bool neg = num[0] < 0;
  for (int i = 0; i < n; ++i) {
    Int v = num[i] / g;
    if (neg) v = -v;
    assert(v > 0);
    out[i] = (int)to_long(Rat(v));
  }
  return out;
}

inline AffineDiagram finish_affine(std::string label, LieType ambient, int twist,
                                   bool split, Mat gram, std::vector<Rat> dlevel,
                                   RootSystem fin) {
  AffineDiagram d;
  d.label = std::move(label);
  d.ambient = std::move(ambient);
  d.twist = twist;
  d.split = split;
  d.n = (int)gram.size();
  d.gram = std::move(gram);
  d.dlevel = std::move(dlevel);
  d.fin = std::move(fin);
  d.dhalf.resize(d.n);
  d.cartan.assign(d.n, std::vector<int>(d.n, 0));
  Mat cr(d.n, Vec(d.n));
  for (int i = 0; i < d.n; ++i) {
    d.dhalf[i] = d.gram[i][i] / 2;
    assert(d.dhalf[i] > 0);
    for (int j = 0; j < d.n; ++j) {
      Rat e = d.gram[i][j] / d.dhalf[i];
      assert(is_integer(e));
      d.cartan[i][j] = (int)to_long(e);
      cr[i][j] = e;
    }
    assert(d.cartan[i][i] == 2);
  }
  for (int i = 0; i < d.n; ++i)
    for (int j = 0; j < d.n; ++j)
      if (i != j) assert(d.cartan[i][j] <= 0);
  d.marks = primitive_null(cr);
  d.comarks = primitive_null(transpose(cr));
  Rat lv = 0;
  for (int i = 0; i < d.n; ++i) lv += Rat(d.marks[i]) * d.dlevel[i];
  assert(lv == (twist == 1 && !split ? Rat(1) : Rat(1, 2)));
  return d;
}

}  // namespace detail

// Untwisted diagram of a simple type: node 0 is delta - theta.
inline AffineDiagram affine_untwisted(const SimpleType& t) {
  RootSystem rs = RootSystem::build(t);
  int n = rs.n + 1;
  Mat gram(n, Vec(n, Rat(0)));
  std::vector<Rat> dlevel(n, Rat(0));
  dlevel[0] = 1;
  // root coordinates of the node representatives: -theta, alpha_1..alpha_n
  std::vector<RootVec> rc(n);
  rc[0] = rs.theta;
  for (auto& v : rc[0]) v = -v;
  for (int i = 1; i < n; ++i) {
    rc[i].assign(rs.n, 0);
    rc[i][i - 1] = 1;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) gram[i][j] = rs.form_rc(rc[i], rc[j]);
  return detail::finish_affine(t.str() + "^(1)", LieType{{t}, 0}, 1, false,
                               std::move(gram), std::move(dlevel), std::move(rs));
}

// Split two-copy diagram for the pair (s + s, swap): the diagram of s^(1)
// with every restricted inner product halved and the added node at level 1/2.
inline AffineDiagram affine_split(const SimpleType& t) {
  AffineDiagram u = affine_untwisted(t);
  Mat gram = u.gram;
  for (auto& row : gram)
    for (auto& v : row) v /= 2;
  std::vector<Rat> dlevel(u.n, Rat(0));
  dlevel[0] = Rat(1, 2);
  return detail::finish_affine("split(" + t.str() + ")", LieType{{t, t}, 0}, 2,
                               true, std::move(gram), std::move(dlevel),
                               std::move(u.fin));
}

// Twisted diagram of order 2 for ambient type A_{2l} (l>=1), A_{2l-1} (l>=2),
// D_{l+1} (l>=2), or E_6, in the standard node numbering.
inline AffineDiagram affine_twisted(const SimpleType& am) {
  // Realize the restricted simple roots as vectors (c; x_1..x_m): c is the
  // delta'/2-coefficient (metrically null), x in R^m with (e_i, e_j) = w d_ij.
  auto build = [&](const std::string& label, int m, const Rat& w,
                   const std::vector<std::pair<Rat, Vec>>& nodes) {
    int n = (int)nodes.size();
    Mat gram(n, Vec(n, Rat(0)));
    std::vector<Rat> dlevel(n);
    for (int i = 0; i < n; ++i) {
      dlevel[i] = nodes[i].first;
      for (int j = 0; j < n; ++j) {
        Rat s = 0;
        for (int k = 0; k < m; ++k) s += nodes[i].second[k] * nodes[j].second[k];
        gram[i][j] = s * w;
      }
    }
    return detail::finish_affine(label, LieType{{am}, 0}, 2, false,
                                 std::move(gram), std::move(dlevel),
                                 RootSystem::build(am));
  };
  auto unit = [](int m, int i) {
    Vec v(m, Rat(0));
    v[i] = 1;
    return v;
  };
  if (am.fam == 'A' && am.rank >= 2 && am.rank % 2 == 0) {
    int l = am.rank / 2;
    std::vector<std::pair<Rat, Vec>> nodes;
    nodes.push_back({Rat(0), unit(l, l - 1)});  // e_l
    for (int i = 1; i < l; ++i) {               // e_{l-i} - e_{l-i+1}
      Vec v(l, Rat(0));
      v[l - i - 1] = 1;
      v[l - i] = -1;
      nodes.push_back({Rat(0), std::move(v)});
    }
    Vec v(l, Rat(0));
    v[0] = -2;                                  // delta'/2 - 2 e_1
    nodes.push_back({Rat(1, 2), std::move(v)});
    return build(am.str() + "^(2)", l, Rat(1, 2), nodes);
  }
  if (am.fam == 'A' && am.rank >= 3 && am.rank % 2 == 1) {
    int l = (am.rank + 1) / 2;
    std::vector<std::pair<Rat, Vec>> nodes;
    Vec v0(l, Rat(0));
    v0[0] = -1;
    v0[1] = -1;                                 // delta'/2 - e_1 - e_2
    nodes.push_back({Rat(1, 2), std::move(v0)});
    for (int i = 1; i < l; ++i) {               // e_i - e_{i+1}
      Vec v(l, Rat(0));
      v[i - 1] = 1;
      v[i] = -1;
      nodes.push_back({Rat(0), std::move(v)});
    }
    Vec vl(l, Rat(0));
    vl[l - 1] = 2;                              // 2 e_l
    nodes.push_back({Rat(0), std::move(vl)});
    return build(am.str() + "^(2)", l, Rat(1, 2), nodes);
  }
  if (am.fam == 'D' && am.rank >= 3) {
    int l = am.rank - 1;
    std::vector<std::pair<Rat, Vec>> nodes;
    Vec v0(l, Rat(0));
    v0[0] = -1;                                 // delta'/2 - e_1
    nodes.push_back({Rat(1, 2), std::move(v0)});
    for (int i = 1; i < l; ++i) {
      Vec v(l, Rat(0));
      v[i - 1] = 1;
      v[i] = -1;
      nodes.push_back({Rat(0), std::move(v)});
    }
    nodes.push_back({Rat(0), unit(l, l - 1)});  // e_l
    return build(am.str() + "^(2)", l, Rat(1), nodes);
  }
  if (am.fam == 'E' && am.rank == 6) {
    std::vector<std::pair<Rat, Vec>> nodes;
    Vec v0(4, Rat(0));
    v0[0] = -1;                                 // delta'/2 - e_1
    nodes.push_back({Rat(1, 2), std::move(v0)});
    nodes.push_back({Rat(0), {Rat(1, 2), Rat(-1, 2), Rat(-1, 2), Rat(-1, 2)}});
    nodes.push_back({Rat(0), unit(4, 3)});      // e_4
    nodes.push_back({Rat(0), {Rat(0), Rat(0), Rat(1), Rat(-1)}});
    nodes.push_back({Rat(0), {Rat(0), Rat(1), Rat(-1), Rat(0)}});
    return build("E6^(2)", 4, Rat(1), nodes);
  }
  throw std::invalid_argument("no order-2 twisted diagram for type " + am.str());
}

// ===========================================================================
// Involution data: 0/1 labels s' on the diagram nodes with
// twist * sum_{s'_i = 1} marks_i = 2, so P = {i : s'_i = 1} has size 1, or
// size 2 in the untwisted case (hermitian pairs, normalized with 0 in P).
// ===========================================================================

struct KacInvolution {
  AffineDiagram diag;
  std::vector<int> sprime;
  std::vector<int> P;

  static KacInvolution make(AffineDiagram d, std::vector<int> sp) {
    if ((int)sp.size() != d.n)
      throw std::invalid_argument("label vector size does not match diagram");
    KacInvolution kv;
    kv.diag = std::move(d);
    kv.sprime = std::move(sp);
    long tot = 0;
    for (int i = 0; i < kv.diag.n; ++i) {
      if (kv.sprime[i] != 0 && kv.sprime[i] != 1)
        throw std::invalid_argument("labels must be 0 or 1");
      if (kv.sprime[i]) {
        kv.P.push_back(i);
        tot += kv.diag.marks[i];
      }
    }
    if ((long)kv.diag.twist * tot != 2)
      throw std::invalid_argument("labels do not define an involution");
    if (kv.P.size() < 1 || kv.P.size() > 2)
      throw std::invalid_argument("label support must have one or two nodes");
    if (kv.P.size() == 2) {
      if (kv.diag.twist != 1)
        throw std::invalid_argument("two marked nodes require an untwisted diagram");
      if (kv.P[0] != 0)
        throw std::invalid_argument("two marked nodes must include node 0");
    }
    if (kv.diag.split && kv.P != std::vector<int>{0})
      throw std::invalid_argument("split pairs mark exactly node 0");
    return kv;
  }

  bool hermitian() const { return P.size() == 2; }
};

// ===========================================================================
// Restricted weight class: a functional on the restricted Cartan, recorded by
// its values g on the coweights {omega_beta^vee : beta not in P} (these are
// also its coefficients on the restricted simple roots) and, for hermitian
// pairs, its value piw on the central element varpi with alpha_p(varpi) = 1.
// ===========================================================================

struct PWeight {
  Vec g;                 // size n; entries at P nodes are 0
  Vec rfw;               // pairing with restricted simple coroots; 0 at P
  Rat piw = 0;           // value on varpi (hermitian pairs only)
  Rat norm2 = 0;         // squared length in the ambient normalization
  Vec rc;                // hermitian pairs: finite root coordinates
  int mult = 1;
  bool imaginary = false;
  std::vector<int> c;    // representative affine coefficient vector
  Rat level = 0;         // delta'-level of the representative
  bool in_r = false;
  bool in_p = false;
  bool is_long = false;
  bool positive = false;

  std::pair<Vec, Rat> key() const { return {g, piw}; }
};

namespace detail {

inline std::pair<Vec, Rat> key_neg(const std::pair<Vec, Rat>& k) {
  auto r = k;
  for (auto& v : r.first) v = -v;
  r.second = -r.second;
  return r;
}

inline std::pair<Vec, Rat> key_sub(const std::pair<Vec, Rat>& a,
                                   const std::pair<Vec, Rat>& b) {
  auto r = a;
  for (size_t i = 0; i < r.first.size(); ++i) r.first[i] -= b.first[i];
  r.second -= b.second;
  return r;
}

inline long psum(const std::vector<int>& c, const std::vector<int>& P) {
  long s = 0;
  for (int p : P) s += c[p];
  return s;
}

inline bool is_imaginary_vec(const std::vector<int>& v,
                             const std::vector<int>& marks) {
  if (v[0] <= 0 || v[0] % marks[0] != 0) return false;
  int t = v[0] / marks[0];
  for (size_t i = 0; i < v.size(); ++i)
    if (v[i] != t * marks[i]) return false;
  return true;
}

}  // namespace detail

// All positive real roots of the affine system whose coefficient sum over the
// nodes of P is at most 1, by breadth-first closure along root strings.
inline std::vector<std::vector<int>> positive_reals_psum_le1(
    const AffineDiagram& d, const std::vector<int>& P) {
  std::set<std::vector<int>> found;
  std::map<long, std::set<std::vector<int>>> todo;
  int n = d.n;
  for (int i = 0; i < n; ++i) {
    std::vector<int> e(n, 0);
    e[i] = 1;
    found.insert(e);
    todo[1].insert(std::move(e));
  }
  auto member = [&](const std::vector<int>& v) {
    for (int x : v)
      if (x < 0) return false;
    return found.count(v) != 0 || detail::is_imaginary_vec(v, d.marks);
  };
  while (!todo.empty()) {
    auto it = todo.begin();
    long h = it->first;
    auto batch = std::move(it->second);
    todo.erase(it);
    for (const auto& c : batch) {
      for (int i = 0; i < n; ++i) {
        long pairing = 0;
        for (int j = 0; j < n; ++j) pairing += (long)d.cartan[i][j] * c[j];
        long q = 0;
        std::vector<int> w = c;
        for (;;) {
          w[i] -= 1;
          if (!member(w)) break;
          ++q;
        }
        long pmax = q - pairing;
        std::vector<int> up = c;
        for (long k = 1; k <= pmax; ++k) {
          up[i] += 1;
          if (detail::is_imaginary_vec(up, d.marks)) continue;
          if (detail::psum(up, P) > 1) break;
          if (found.insert(up).second) todo[h + k].insert(up);
        }
      }
    }
  }
  return {found.begin(), found.end()};
}

// ===========================================================================
// Symmetric pair data.
// ===========================================================================

struct RComponent {
  SimpleType type;
  std::vector<int> nodes;  // diagram nodes in the frozen standard order
  RootSystem rs;
  Mat cowgram;             // (omega_i^vee, omega_j^vee), standard indices
};

struct ThetaPClassification {
  bool is_long = false;
  bool noncompact = false;
  bool complex_weight = false;
  bool long_noncompact = false;
  Rat threshold = 0;  // maximal squared length among the real classes
};

struct SymmetricPair {
  KacInvolution inv;
  bool hermitian = false;
  std::vector<int> rnodes;            // diagram nodes spanning r
  std::vector<RComponent> rcomps;
  std::vector<PWeight> p_classes;     // all of Delta(p), zero class included
  std::vector<PWeight> r_pos;         // positive roots of r
  Int dim_p = 0;
  Int dim_r = 0;
  PWeight theta_p;                    // highest noncompact weight
  ThetaPClassification theta_cls;
  std::vector<Rat> jlevels;           // trace-form level of each r component
  Vec nu_g;                           // nu(varpi) on the coweights (hermitian)
  Rat nu_piw = 0;                     // nu(varpi)(varpi) = dim p (hermitian)
  std::map<std::pair<Vec, Rat>, int> p_index;
  std::set<std::pair<Vec, Rat>> rkeys_all;  // keys of r roots, both signs

  // evaluation scaffolding, filled once by build_pair (hermitian pairs)
  std::vector<Vec> herm_x;  // per diagram node: coweight over the r-root basis
  Vec herm_varpi;           // varpi over the finite coroot basis

  const PWeight* find_p(const std::pair<Vec, Rat>& k) const {
    auto it = p_index.find(k);
    return it == p_index.end() ? nullptr : &p_classes[it->second];
  }

  // Restriction of an arbitrary integer vector over the affine simple basis
  // to a functional on the restricted Cartan (g / rfw / piw / rc), together
  // with its delta'-level and squared length.  Flags are left at defaults.
  PWeight eval_class(const std::vector<int>& c) const {
    const AffineDiagram& d = inv.diag;
    const RootSystem& fin = d.fin;
    int n = d.n;
    int p0 = inv.P[0];
    PWeight w;
    w.c = c;
    w.g.assign(n, Rat(0));
    w.rfw.assign(n, Rat(0));
    for (int i = 0; i < n; ++i) w.level += Rat(c[i]) * d.dlevel[i];
    if (!hermitian) {
      Rat t = Rat(c[p0]) / d.marks[p0];
      for (int b : rnodes) w.g[b] = Rat(c[b]) - Rat(d.marks[b]) * t;
      for (int b : rnodes) {
        Rat s = 0;
        for (int a : rnodes) s += Rat(d.cartan[b][a]) * w.g[a];
        w.rfw[b] = s;
      }
      Rat nn = 0;
      for (int a : rnodes)
        for (int b : rnodes) nn += w.g[a] * w.g[b] * d.gram[a][b];
      w.norm2 = nn;
    } else {
      int m = fin.n;
      Vec rc(m);
      for (int i = 0; i < m; ++i)
        rc[i] = Rat(c[i + 1]) - Rat(c[0]) * fin.marks[i];
      Vec pr(m, Rat(0));  // pairing with finite simple coroots
      for (int gi = 0; gi < m; ++gi) {
        Rat s = 0;
        for (int j = 0; j < m; ++j) s += Rat(fin.cartan[gi][j]) * rc[j];
        pr[gi] = s;
      }
      std::vector<int> rfin;
      for (int b : rnodes)
        if (b != 0) rfin.push_back(b - 1);
      for (size_t bi = 0; bi < rfin.size(); ++bi) {
        int node = rfin[bi] + 1;
        Rat s = 0;
        for (size_t gi = 0; gi < rfin.size(); ++gi)
          s += herm_x[node][gi] * pr[rfin[gi]];
        w.g[node] = s;
        w.rfw[node] = pr[rfin[bi]];
      }
      Rat pw = 0;
      for (int gi = 0; gi < m; ++gi) pw += herm_varpi[gi] * pr[gi];
      w.piw = pw;
      w.norm2 = fin.form_rc(rc, rc);
      w.rc = std::move(rc);
    }
    return w;
  }
};

// Inner products of fundamental coweights of a finite simple system.
inline Mat coweight_gram(const RootSystem& rs) {
  int k = rs.n;
  Mat ct(k, Vec(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) ct[i][j] = rs.cartan[j][i];
  Mat y = inverse(ct);  // omega_i^vee = sum_k y[k][i] alpha_k^vee
  Mat cv(k, Vec(k));    // (alpha_k^vee, alpha_m^vee)
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      cv[a][b] = rs.form[a][b] / (rs.halfnorm[a] * rs.halfnorm[b]);
  Mat out(k, Vec(k, Rat(0)));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      Rat s = 0;
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) s += y[a][i] * y[b][j] * cv[a][b];
      out[i][j] = s;
    }
  return out;
}

inline SymmetricPair build_pair(const KacInvolution& inv) {
  SymmetricPair sp;
  sp.inv = inv;
  const AffineDiagram& d = inv.diag;
  int n = d.n;
  sp.hermitian = inv.hermitian();

  for (int i = 0; i < n; ++i)
    if (!inv.sprime[i]) sp.rnodes.push_back(i);

  // --- components of r ---
  auto comps = diagram_components(d.cartan, sp.rnodes);
  for (auto& cnodes : comps) {
    auto cc = classify_component(d.cartan, cnodes);
    RComponent rc;
    rc.type = cc.type;
    rc.nodes = cc.std_to_orig;
    rc.rs = RootSystem::build(cc.type);
    // the abstract Cartan matrix must match the diagram in the frozen order
    for (int i = 0; i < rc.rs.n; ++i)
      for (int j = 0; j < rc.rs.n; ++j)
        assert(rc.rs.cartan[i][j] == d.cartan[rc.nodes[i]][rc.nodes[j]]);
    rc.cowgram = coweight_gram(rc.rs);
    sp.rcomps.push_back(std::move(rc));
  }
  sp.dim_r = sp.hermitian ? Int(1) : Int(0);
  for (auto& rc : sp.rcomps) sp.dim_r += rc.type.dim();

  // --- evaluation of a class from its affine coefficient vector ---
  int p0 = inv.P[0];
  int qnode = sp.hermitian ? inv.P[1] : -1;
  const RootSystem& fin = d.fin;

  // precomputation for the hermitian path: express coweights in the finite
  // coroot basis
  sp.herm_x.assign(n, Vec());
  if (sp.hermitian) {
    int m = fin.n;  // finite nodes are diagram nodes 1..n-1
    std::vector<int> rfin;  // finite indices of the r nodes
    for (int b : sp.rnodes)
      if (b != 0) rfin.push_back(b - 1);
    int k = (int)rfin.size();
    Mat mr(k, Vec(k));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) mr[i][j] = fin.cartan[rfin[j]][rfin[i]];
    for (int bi = 0; bi < k; ++bi) {
      Vec e(k, Rat(0));
      e[bi] = 1;
      auto sol = solve(mr, e);
      assert(sol.has_value());
      sp.herm_x[rfin[bi] + 1] = *sol;
    }
    Mat ct(m, Vec(m));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) ct[i][j] = fin.cartan[j][i];
    Vec eq(m, Rat(0));
    eq[qnode - 1] = 1;
    auto sol = solve(ct, eq);
    assert(sol.has_value());
    sp.herm_varpi = *sol;
  }

  auto evaluate = [&](const std::vector<int>& c) { return sp.eval_class(c); };

  // --- enumerate and split into r roots and p classes ---
  auto reals = positive_reals_psum_le1(d, inv.P);
  std::map<std::pair<Vec, Rat>, int> rkey_pos;
  for (const auto& c : reals) {
    long ps = detail::psum(c, inv.P);
    PWeight w = evaluate(c);
    if (ps == 0) {
      w.in_r = true;
      w.positive = true;
      auto key = w.key();
      bool fresh = rkey_pos.emplace(key, (int)sp.r_pos.size()).second;
      assert(fresh);
      sp.r_pos.push_back(std::move(w));
    } else {
      assert(ps == 1);
      w.in_p = true;
      auto key = w.key();
      bool fresh = sp.p_index.emplace(key, (int)sp.p_classes.size()).second;
      assert(fresh);  // distinct positive reals restrict injectively
      sp.p_classes.push_back(std::move(w));
    }
  }
  // The enumeration covers all of Delta(p): positive affine roots at the
  // two relevant levels restrict onto each nonzero class exactly once.
  // the zero class (rank drop), present exactly when twist = 2
  if (d.twist == 2) {
    long rank_a = d.split ? 2L * fin.n : fin.n;
    long drop = rank_a - (long)sp.rnodes.size();
    assert(drop >= 1);
    PWeight z;
    z.g.assign(n, Rat(0));
    z.rfw.assign(n, Rat(0));
    z.imaginary = true;
    z.mult = (int)drop;
    z.c = d.marks;
    z.level = d.fund_level();
    z.in_p = true;
    bool fresh = sp.p_index.emplace(z.key(), (int)sp.p_classes.size()).second;
    assert(fresh);
    sp.p_classes.push_back(std::move(z));
  }

  // --- positivity and sign conventions ---
  for (auto& w : sp.p_classes) {
    if (w.imaginary) continue;
    if (sp.hermitian) {
      assert(w.piw == 1 || w.piw == -1);
      w.positive = (w.piw == 1);
    } else {
      Rat s = 0;
      for (int b : sp.rnodes) s += w.g[b];
      if (s != 0) {
        w.positive = s > 0;
      } else {
        bool pos = false;
        for (int b : sp.rnodes)
          if (w.g[b] != 0) {
            pos = w.g[b] > 0;
            break;
          }
        w.positive = pos;
      }
    }
  }

  // --- compact / noncompact flags and the length threshold ---
  std::set<std::pair<Vec, Rat>>& rall = sp.rkeys_all;
  for (auto& w : sp.r_pos) {
    rall.insert(w.key());
    rall.insert(detail::key_neg(w.key()));
  }
  Rat thr = 0;
  for (auto& w : sp.p_classes)
    if (!w.imaginary && w.norm2 > thr) thr = w.norm2;
  for (auto& w : sp.r_pos)
    if (w.norm2 > thr) thr = w.norm2;
  for (auto& w : sp.p_classes) {
    if (w.imaginary) continue;
    w.in_r = rall.count(w.key()) != 0;
    w.is_long = (w.norm2 == thr);
  }
  for (auto& w : sp.r_pos) {
    w.in_p = sp.p_index.count(w.key()) != 0;
    w.is_long = (w.norm2 == thr);
  }

  // --- dimension bookkeeping ---
  sp.dim_p = d.ambient.dim() - sp.dim_r;
  {
    Int s = 0;
    for (auto& w : sp.p_classes) s += w.mult;
    assert(s == sp.dim_p);
    size_t npos = 0;
    for (auto& rc : sp.rcomps) npos += rc.rs.pos.size();
    assert(sp.r_pos.size() == npos);
  }

  // --- highest noncompact weight: theta_p = -restriction of alpha_{P[0]},
  // with p = node 0 for hermitian pairs ---
  {
    std::pair<Vec, Rat> key;
    if (!sp.hermitian) {
      Vec g(n, Rat(0));
      for (int b : sp.rnodes) g[b] = Rat(d.marks[b]) / d.marks[p0];
      key = {g, Rat(0)};
    } else {
      std::vector<int> c(n, 0);
      for (int i = 0; i < fin.n; ++i) c[i + 1] = fin.marks[i];
      PWeight th = evaluate(c);
      key = th.key();
    }
    const PWeight* t = sp.find_p(key);
    assert(t != nullptr);
    assert(t->positive);
    sp.theta_p = *t;
    for (int b : sp.rnodes) assert(sp.theta_p.rfw[b] >= 0);  // r-dominant
    sp.theta_cls.threshold = thr;
    sp.theta_cls.is_long = sp.theta_p.is_long;
    sp.theta_cls.complex_weight = sp.theta_p.in_r;
    sp.theta_cls.noncompact = !sp.theta_p.in_r;
    sp.theta_cls.long_noncompact =
        sp.theta_cls.is_long && sp.theta_cls.noncompact;
  }

  // --- pairing of classes, lowest weight, hermitian varpi sum ---
  for (auto& w : sp.p_classes) {
    if (w.imaginary) continue;
    const PWeight* m = sp.find_p(detail::key_neg(w.key()));
    assert(m && m->mult == w.mult && (m->positive != w.positive));
  }
  for (auto& w : sp.p_classes) {
    if (w.imaginary) continue;
    // no class lies strictly below -theta_p in the restricted root order
    bool all_le0 = true, nonzero = false;
    for (int b : sp.rnodes) {
      Rat v = w.g[b] + sp.theta_p.g[b];
      if (v > 0) all_le0 = false;
      if (v != 0) nonzero = true;
    }
    if (!sp.hermitian) assert(!(nonzero && all_le0));
  }
  if (sp.hermitian) {
    Rat s = 0;
    for (auto& w : sp.p_classes)
      if (w.positive) s += w.piw * w.mult;
    assert(s * 2 == Rat(sp.dim_p));
    sp.nu_g.assign(n, Rat(0));
    for (auto& w : sp.p_classes) {
      for (int b : sp.rnodes) sp.nu_g[b] += Rat(w.mult) * w.piw * w.g[b];
      sp.nu_piw += Rat(w.mult) * w.piw * w.piw;
    }
    assert(sp.nu_piw == Rat(sp.dim_p));
  }

  // --- trace-form levels on each simple component of r ---
  for (auto& rc : sp.rcomps) {
    int k = rc.rs.n;
    std::optional<Rat> j;
    for (int i = 0; i < k; ++i)
      for (int jj = 0; jj < k; ++jj) {
        Rat lhs = 0;
        for (auto& w : sp.p_classes) {
          Rat gi = w.g[rc.nodes[i]], gj = w.g[rc.nodes[jj]];
          lhs += Rat(w.mult) * gi * gj;  // both signs already included
        }
        lhs /= 2;
        if (rc.cowgram[i][jj] == 0) {
          assert(lhs == 0);
          continue;
        }
        Rat cand = lhs / rc.cowgram[i][jj];
        if (!j)
          j = cand;
        else
          assert(*j == cand);
      }
    assert(j.has_value());
    sp.jlevels.push_back(*j);
  }
  // distinct ideals of r are orthogonal under the trace form on p
  for (size_t s = 0; s < sp.rcomps.size(); ++s)
    for (size_t t = s + 1; t < sp.rcomps.size(); ++t)
      for (int i : sp.rcomps[s].nodes)
        for (int jj : sp.rcomps[t].nodes) {
          Rat lhs = 0;
          for (auto& w : sp.p_classes)
            lhs += Rat(w.mult) * w.g[i] * w.g[jj];
          assert(lhs == 0);
        }

  return sp;
}

// Exact membership test for the full affine root system, at any level.  A
// sign-definite nonzero vector is a root iff it is a multiple of the minimal
// imaginary root, or its restricted class is an r-root at an integer
// delta'-level, or a nonzero class of p at a non-integer level.  (For
// untwisted diagrams every level is integral and the involution is inner, so
// the class test degenerates to membership of the finite root itself.)
inline bool is_affine_root(const SymmetricPair& sp, std::vector<int> v) {
  bool pos = false, neg = false;
  for (int x : v) {
    pos |= x > 0;
    neg |= x < 0;
  }
  if (pos == neg) return false;  // zero or mixed signs
  if (neg)
    for (auto& x : v) x = -x;
  const AffineDiagram& d = sp.inv.diag;
  if (detail::is_imaginary_vec(v, d.marks)) return true;
  PWeight w = sp.eval_class(v);
  auto key = w.key();
  if (d.twist == 1) return sp.rkeys_all.count(key) || sp.p_index.count(key);
  if (is_integer(w.level)) return sp.rkeys_all.count(key) != 0;
  const PWeight* c = sp.find_p(key);
  return c != nullptr && !c->imaginary;
}

// Full level vector: j_0 = 1 for the central ideal of a hermitian pair,
// followed by the levels of the simple components of r.
inline std::vector<Rat> levels_j(const SymmetricPair& sp) {
  std::vector<Rat> out;
  if (sp.hermitian) out.push_back(Rat(1));
  for (auto& j : sp.jlevels) out.push_back(j);
  return out;
}

inline ThetaPClassification classify_theta_p(const SymmetricPair& sp) {
  if (sp.hermitian)
    throw std::invalid_argument("theta_p classification requires |P| = 1");
  return sp.theta_cls;
}

// The set m = { mu in Delta(p) : mu = theta_p - beta, beta in
// Delta^+(r) or beta = 0 }, as classes (the zero class may occur).
inline std::vector<PWeight> m_set(const SymmetricPair& sp) {
  if (sp.hermitian)
    throw std::invalid_argument("the m set requires |P| = 1");
  std::vector<PWeight> out;
  std::set<std::pair<Vec, Rat>> seen;
  auto add = [&](const std::pair<Vec, Rat>& k) {
    const PWeight* w = sp.find_p(k);
    if (w && seen.insert(k).second) out.push_back(*w);
  };
  add(sp.theta_p.key());
  for (auto& b : sp.r_pos) add(detail::key_sub(sp.theta_p.key(), b.key()));
  return out;
}

struct MSumReport {
  bool applicable = false;   // P = {p}, theta_p long noncompact, alpha_S unique
  bool holds = false;        // <m \ {theta_p}> + theta_p = sum_S j_S omega_S
  bool formula_agrees = false;  // j_S = n_S h^vee(a) - h^vee_S on each S
  Vec lhs_g, rhs_g;
};

inline MSumReport m_sum_check(const SymmetricPair& sp) {
  MSumReport rep;
  if (sp.hermitian) return rep;
  const AffineDiagram& d = sp.inv.diag;
  int n = d.n;
  int p0 = sp.inv.P[0];

  // alpha_S: the unique node of each component adjacent to p
  std::vector<int> alpha_s;
  for (auto& rc : sp.rcomps) {
    int found = -1;
    int count = 0;
    for (int node : rc.nodes)
      if (d.cartan[node][p0] != 0) {
        found = node;
        ++count;
      }
    if (count != 1) return rep;  // not applicable
    alpha_s.push_back(found);
  }
  if (!sp.theta_cls.long_noncompact) return rep;
  rep.applicable = true;

  // left side: sum over m of the class plus theta_p once more, in root
  // coordinates (the g vector is exactly the coefficient vector on the
  // restricted simple roots)
  Vec lhs(n, Rat(0));
  for (auto& w : m_set(sp))
    for (int b : sp.rnodes) lhs[b] += w.g[b];
  for (int b : sp.rnodes) lhs[b] += sp.theta_p.g[b];

  // right side: sum_S j_S omega_S, solved through the component Cartan blocks
  Vec rhs(n, Rat(0));
  for (size_t s = 0; s < sp.rcomps.size(); ++s) {
    auto& rc = sp.rcomps[s];
    int k = rc.rs.n;
    Mat m(k, Vec(k));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) m[i][j] = d.cartan[rc.nodes[i]][rc.nodes[j]];
    Vec e(k, Rat(0));
    for (int i = 0; i < k; ++i)
      if (rc.nodes[i] == alpha_s[s]) e[i] = 1;
    auto sol = solve(m, e);
    assert(sol.has_value());
    for (int i = 0; i < k; ++i) rhs[rc.nodes[i]] += sp.jlevels[s] * (*sol)[i];
  }
  rep.lhs_g = lhs;
  rep.rhs_g = rhs;
  rep.holds = (lhs == rhs);

  // closed form: j_S = n_S h^vee(a) - h^vee_S with theta_p = sum n_S omega_S
  bool ok = true;
  long hva = d.fin.hvee;
  for (size_t s = 0; s < sp.rcomps.size(); ++s) {
    Rat ns = sp.theta_p.rfw[alpha_s[s]];
    if (!is_integer(ns)) {
      ok = false;
      break;
    }
    if (sp.jlevels[s] != ns * hva - sp.rcomps[s].rs.hvee) ok = false;
  }
  // theta_p must be supported exactly on the alpha_S
  for (auto& rc : sp.rcomps)
    for (int node : rc.nodes) {
      bool is_as = false;
      for (int a : alpha_s) is_as |= (a == node);
      if (!is_as && sp.theta_p.rfw[node] != 0) ok = false;
    }
  rep.formula_agrees = ok;
  return rep;
}

}  // namespace lieconf
