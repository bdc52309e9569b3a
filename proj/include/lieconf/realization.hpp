#pragma once
// Exact matrix realizations of the isotropy representation of a symmetric
// pair: the reductive part r acting on the odd part p, over the rationals.
// Each realization is aligned with the combinatorial class data of the pair
// (restricted weights, multiplicities, trace-form levels) and produces a
// fermion space on p whose generator order follows the class order, so that
// explicit vectors in the spin module can be written down and tested.

#include <algorithm>
#include <cassert>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "abelian.hpp"
#include "fermion.hpp"

namespace lieconf {

namespace rz {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw std::logic_error("realization: " + what);
}

// ---------------------------------------------------------------------------
// small matrix utilities
// ---------------------------------------------------------------------------

inline Mat mat_add(const Mat& a, const Mat& b) {
  Mat r = a;
  for (size_t i = 0; i < r.size(); ++i)
    for (size_t j = 0; j < r[i].size(); ++j) r[i][j] += b[i][j];
  return r;
}

inline Mat mat_sub(const Mat& a, const Mat& b) {
  Mat r = a;
  for (size_t i = 0; i < r.size(); ++i)
    for (size_t j = 0; j < r[i].size(); ++j) r[i][j] -= b[i][j];
  return r;
}

inline Mat mat_scaled(const Mat& a, const Rat& c) {
  Mat r = a;
  for (auto& row : r)
    for (auto& x : row) x *= c;
  return r;
}

inline Mat mat_bracket(const Mat& a, const Mat& b) {
  return mat_sub(mat_mul(a, b), mat_mul(b, a));
}

inline bool mat_is_zero(const Mat& a) {
  for (auto& row : a)
    for (auto& x : row)
      if (x != 0) return false;
  return true;
}

inline bool mat_is_diag(const Mat& a) {
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[i].size(); ++j)
      if (i != j && a[i][j] != 0) return false;
  return true;
}

inline Rat mat_trace_prod(const Mat& a, const Mat& b) {
  Rat t = 0;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t k = 0; k < a[i].size(); ++k) t += a[i][k] * b[k][i];
  return t;
}

inline Mat elem(int n, int i, int j) {
  Mat m = mat_zero(n, n);
  m[i][j] = 1;
  return m;
}

inline Vec flat(const Mat& m) {
  Vec v;
  v.reserve(m.size() * m[0].size());
  for (auto& row : m)
    for (auto& x : row) v.push_back(x);
  return v;
}

inline Mat unflat(const Vec& v, int rows, int cols) {
  Mat m = mat_zero(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m[i][j] = v[i * cols + j];
  return m;
}

// Nullspace basis of a (possibly non-square) constraint matrix.
inline std::vector<Vec> kernel_basis(Mat a, size_t cols) {
  size_t rows = a.size();
  std::vector<long> pivrow(cols, -1);
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    Rat lead = a[r][c];
    for (size_t cc = 0; cc < cols; ++cc) a[r][cc] /= lead;
    for (size_t rr = 0; rr < rows; ++rr) {
      if (rr == r || a[rr][c] == 0) continue;
      Rat f = a[rr][c];
      for (size_t cc = 0; cc < cols; ++cc) a[rr][cc] -= f * a[r][cc];
    }
    pivrow[c] = (long)r;
    ++r;
  }
  std::vector<Vec> out;
  for (size_t c = 0; c < cols; ++c) {
    if (pivrow[c] >= 0) continue;
    Vec x(cols, Rat(0));
    x[c] = 1;
    for (size_t cc = 0; cc < cols; ++cc)
      if (pivrow[cc] >= 0) x[cc] = -a[pivrow[cc]][c];
    out.push_back(std::move(x));
  }
  return out;
}

// Coordinates of v in an independent list of vectors.
inline Vec coords_in(const std::vector<Vec>& basis, const Vec& v) {
  size_t rows = v.size(), cols = basis.size();
  Mat a = mat_zero(rows, cols);
  for (size_t c = 0; c < cols; ++c)
    for (size_t r = 0; r < rows; ++r) a[r][c] = basis[c][r];
  auto x = solve(a, v);
  require(x.has_value(), "vector not in span");
  return *x;
}

// Incremental reduced row space, used for Lie closures and decompositions.
struct RowSpace {
  std::vector<Vec> rows;
  std::vector<size_t> pivs;

  Vec reduce(Vec v) const {
    for (size_t i = 0; i < rows.size(); ++i) {
      if (v[pivs[i]] == 0) continue;
      Rat f = v[pivs[i]];
      for (size_t k = 0; k < v.size(); ++k) v[k] -= f * rows[i][k];
    }
    return v;
  }
  bool add(Vec v) {
    v = reduce(std::move(v));
    size_t p = 0;
    while (p < v.size() && v[p] == 0) ++p;
    if (p == v.size()) return false;
    Rat lead = v[p];
    for (auto& x : v) x /= lead;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (rows[i][p] == 0) continue;
      Rat f = rows[i][p];
      for (size_t k = 0; k < v.size(); ++k) rows[i][k] -= f * v[k];
    }
    rows.push_back(std::move(v));
    pivs.push_back(p);
    return true;
  }
  size_t dim() const { return rows.size(); }
};

// ---------------------------------------------------------------------------
// Chevalley generators of the split classical algebras, defining matrices
// ---------------------------------------------------------------------------

// One simple factor: generator triples and the Cartan matrix they satisfy,
// cart[a][b] = <alpha_b, alpha_a^vee> = alpha_b(h_a).
struct GenSet {
  Mat cart;
  std::vector<Mat> e, f, h;
  std::string label;
  int rank() const { return (int)e.size(); }
};

inline Mat cart_of(SimpleType t) {
  if (t.rank == 1) return Mat{{Rat(2)}};
  auto c = RootSystem::build(t).cartan;
  Mat m = mat_zero(c.size(), c.size());
  for (size_t i = 0; i < c.size(); ++i)
    for (size_t j = 0; j < c.size(); ++j) m[i][j] = c[i][j];
  return m;
}

inline void close_h(GenSet& g) {
  g.h.clear();
  for (size_t a = 0; a < g.e.size(); ++a) g.h.push_back(mat_bracket(g.e[a], g.f[a]));
}

// sl(n) with the usual elementary generators.
inline GenSet sl_defn(int n) {
  require(n >= 2, "sl factor needs n >= 2");
  GenSet g;
  g.label = "sl(" + std::to_string(n) + ")";
  g.cart = cart_of({'A', n - 1});
  for (int a = 0; a + 1 < n; ++a) {
    g.e.push_back(elem(n, a, a + 1));
    g.f.push_back(elem(n, a + 1, a));
  }
  close_h(g);
  return g;
}

// so(N) for the all-ones antidiagonal gram; G(i,j) = E_ij - E_{N-1-j,N-1-i}.
inline Mat soG(int N, int i, int j) {
  Mat m = elem(N, i, j);
  m[N - 1 - j][N - 1 - i] -= 1;
  return m;
}

// Simple factors of so(N): one for N = 3 or N >= 5, two commuting rank-one
// factors for N = 4, none for N <= 2.
inline std::vector<GenSet> so_defn(int N) {
  std::vector<GenSet> out;
  if (N <= 2) return out;
  if (N == 3) {
    GenSet g;
    g.label = "so(3)";
    g.cart = Mat{{Rat(2)}};
    g.e.push_back(soG(3, 0, 1));
    g.f.push_back(mat_scaled(soG(3, 1, 0), 2));
    close_h(g);
    out.push_back(std::move(g));
    return out;
  }
  if (N == 4) {
    GenSet g1;
    g1.label = "so(4).1";
    g1.cart = Mat{{Rat(2)}};
    g1.e.push_back(soG(4, 0, 1));
    g1.f.push_back(soG(4, 1, 0));
    close_h(g1);
    GenSet g2;
    g2.label = "so(4).2";
    g2.cart = Mat{{Rat(2)}};
    g2.e.push_back(soG(4, 0, 2));
    g2.f.push_back(soG(4, 2, 0));
    close_h(g2);
    out.push_back(std::move(g1));
    out.push_back(std::move(g2));
    return out;
  }
  GenSet g;
  g.label = "so(" + std::to_string(N) + ")";
  int r = N / 2;
  if (N % 2 == 1) {
    g.cart = cart_of({'B', r});
    for (int a = 0; a + 2 <= r; ++a) {
      g.e.push_back(soG(N, a, a + 1));
      g.f.push_back(soG(N, a + 1, a));
    }
    g.e.push_back(soG(N, r - 1, r));
    g.f.push_back(mat_scaled(soG(N, r, r - 1), 2));
  } else {
    g.cart = cart_of({'D', r});
    for (int a = 0; a + 2 <= r; ++a) {
      g.e.push_back(soG(N, a, a + 1));
      g.f.push_back(soG(N, a + 1, a));
    }
    g.e.push_back(soG(N, r - 2, r));
    g.f.push_back(soG(N, r, r - 2));
  }
  close_h(g);
  out.push_back(std::move(g));
  return out;
}

// The antidiagonal symplectic gram on 2r coordinates.
inline Rat jval(int i, int r) { return i < r ? Rat(1) : Rat(-1); }

inline Mat sp_gram(int r) {
  Mat j = mat_zero(2 * r, 2 * r);
  for (int i = 0; i < 2 * r; ++i) j[i][2 * r - 1 - i] = jval(i, r);
  return j;
}

// sp(2r) for the antidiagonal symplectic form.
inline GenSet sp_defn(int r) {
  require(r >= 1, "sp factor needs r >= 1");
  GenSet g;
  g.label = "sp(" + std::to_string(2 * r) + ")";
  int N = 2 * r;
  g.cart = r == 1 ? Mat{{Rat(2)}} : cart_of({'C', r});
  for (int a = 0; a + 2 <= r; ++a) {
    g.e.push_back(mat_sub(elem(N, a, a + 1), elem(N, N - 2 - a, N - 1 - a)));
    g.f.push_back(mat_sub(elem(N, a + 1, a), elem(N, N - 1 - a, N - 2 - a)));
  }
  g.e.push_back(elem(N, r - 1, r));
  g.f.push_back(elem(N, r, r - 1));
  close_h(g);
  return g;
}

// Symmetric-power representation of sl(2) on a (k+1)-dimensional space.
inline GenSet sl2_sympow(int k) {
  GenSet g;
  g.label = "sl(2) sym^" + std::to_string(k);
  g.cart = Mat{{Rat(2)}};
  Mat e = mat_zero(k + 1, k + 1), f = mat_zero(k + 1, k + 1);
  for (int j = 1; j <= k; ++j) e[j - 1][j] = k - j + 1;
  for (int j = 0; j < k; ++j) f[j + 1][j] = j + 1;
  g.e.push_back(e);
  g.f.push_back(f);
  close_h(g);
  return g;
}

// ---------------------------------------------------------------------------
// raw representation data produced by the per-family constructors
// ---------------------------------------------------------------------------

struct RepBuild {
  std::string label;
  int dim = 0;                  // dim p
  Mat form;                     // invariant symmetric pairing on the raw basis
  std::vector<GenSet> comps;    // simple factors of r acting on p
  Mat varpi;                    // center action with eigenvalues +-1
  bool has_center = false;
};

// Matrix of a linear action on a subspace given by independent flat vectors.
template <class F>
inline Mat lift_action(const std::vector<Vec>& pbasis, F&& apply) {
  size_t d = pbasis.size(), outer = pbasis[0].size();
  Mat a = mat_zero(outer, d);
  for (size_t c = 0; c < d; ++c)
    for (size_t r = 0; r < outer; ++r) a[r][c] = pbasis[c][r];
  Mat out = mat_zero(d, d);
  for (size_t c = 0; c < d; ++c) {
    Vec img = apply(pbasis[c]);
    auto x = solve(a, img);
    require(x.has_value(), "action does not preserve the subspace");
    for (size_t r = 0; r < d; ++r) out[r][c] = (*x)[r];
  }
  return out;
}

template <class F>
inline GenSet lift_genset(const GenSet& gs, const std::vector<Vec>& pbasis, F&& act) {
  GenSet out;
  out.cart = gs.cart;
  out.label = gs.label;
  for (auto& m : gs.e)
    out.e.push_back(lift_action(pbasis, [&](const Vec& v) { return act(m, v); }));
  for (auto& m : gs.f)
    out.f.push_back(lift_action(pbasis, [&](const Vec& v) { return act(m, v); }));
  for (auto& m : gs.h)
    out.h.push_back(lift_action(pbasis, [&](const Vec& v) { return act(m, v); }));
  return out;
}

// Invariant bilinear form with a prescribed support pattern (weight pairing),
// solved from invariance under the given generators; must be unique.
template <class Allowed>
inline Mat solve_form(const std::vector<Mat>& gens, int d, Allowed&& allowed) {
  std::vector<std::pair<int, int>> slots;
  std::vector<std::vector<int>> slot_of(d, std::vector<int>(d, -1));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (allowed(i, j)) {
        slot_of[i][j] = (int)slots.size();
        slots.push_back({i, j});
      }
  Mat con;
  for (auto& x : gens)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        Vec row(slots.size(), Rat(0));
        bool any = false;
        for (int k = 0; k < d; ++k) {
          if (x[k][i] != 0 && slot_of[k][j] >= 0) {
            row[slot_of[k][j]] += x[k][i];
            any = true;
          }
          if (x[k][j] != 0 && slot_of[i][k] >= 0) {
            row[slot_of[i][k]] += x[k][j];
            any = true;
          }
        }
        if (any) con.push_back(std::move(row));
      }
  auto kern = kernel_basis(std::move(con), slots.size());
  require(kern.size() == 1, "invariant form not unique");
  Mat b = mat_zero(d, d);
  for (size_t s = 0; s < slots.size(); ++s) b[slots[s].first][slots[s].second] = kern[0][s];
  bool sym = true, skew = true;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      sym = sym && b[i][j] == b[j][i];
      skew = skew && b[i][j] == -b[j][i];
    }
  require(sym || skew, "invariant form has no parity");
  require(det(b) != 0, "invariant form degenerate");
  return b;
}

// ---------------------------------------------------------------------------
// adjoint models: split simple algebras recovered from a spanning set
// ---------------------------------------------------------------------------

inline std::vector<Mat> lie_closure(const std::vector<Mat>& gens) {
  std::vector<Mat> basis;
  RowSpace rs;
  auto addm = [&](const Mat& m) {
    if (rs.add(flat(m))) basis.push_back(m);
  };
  for (auto& g : gens) addm(g);
  for (size_t i = 0; i < basis.size(); ++i)
    for (size_t j = 0; j < i; ++j) addm(mat_bracket(basis[i], basis[j]));
  return basis;
}

struct SpanModel {
  std::vector<Mat> pbasis;      // weight-adapted basis of the algebra itself
  std::vector<GenSet> comps;    // Chevalley generators, defining matrices
  int cartan_dim = 0;
};

inline SpanModel analyze_span(const std::vector<Mat>& gens) {
  SpanModel sm;
  std::vector<Mat> basis = lie_closure(gens);
  size_t dimg = basis.size();
  int N = (int)basis[0].size();

  // Cartan subalgebra: the members that are diagonal matrices.
  Mat offdiag;
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      if (a == b) continue;
      Vec row(dimg, Rat(0));
      bool any = false;
      for (size_t k = 0; k < dimg; ++k) {
        row[k] = basis[k][a][b];
        any = any || row[k] != 0;
      }
      if (any) offdiag.push_back(std::move(row));
    }
  std::vector<Mat> tbasis;
  for (auto& coeff : kernel_basis(std::move(offdiag), dimg)) {
    Mat t = mat_zero(N, N);
    for (size_t k = 0; k < dimg; ++k)
      if (coeff[k] != 0) t = mat_add(t, mat_scaled(basis[k], coeff[k]));
    tbasis.push_back(std::move(t));
  }
  size_t rank = tbasis.size();
  require(rank > 0, "no Cartan subalgebra found");
  sm.cartan_dim = (int)rank;

  // Decompose into eigenspaces of the Cartan: the key of a coordinate (a,b)
  // is the vector of eigenvalue differences, and each algebra element splits
  // into key-homogeneous pieces that stay inside the algebra.
  auto key_of = [&](int a, int b) {
    Vec k(rank, Rat(0));
    for (size_t i = 0; i < rank; ++i) k[i] = tbasis[i][a][a] - tbasis[i][b][b];
    return k;
  };
  Vec zerokey(rank, Rat(0));
  std::map<Vec, std::pair<RowSpace, std::vector<Mat>>> rootsp;
  RowSpace zspace;
  size_t total = 0;
  for (auto& m : basis) {
    std::map<Vec, Mat> parts;
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b) {
        if (m[a][b] == 0) continue;
        Vec k = a == b ? zerokey : key_of(a, b);
        auto it = parts.find(k);
        if (it == parts.end()) it = parts.emplace(std::move(k), mat_zero(N, N)).first;
        it->second[a][b] = m[a][b];
      }
    for (auto& [k, part] : parts) {
      if (k == zerokey) {
        if (zspace.add(flat(part))) ++total;
      } else {
        auto& [rs, mats] = rootsp[k];
        if (rs.add(flat(part))) {
          mats.push_back(part);
          ++total;
        }
      }
    }
  }
  require(zspace.dim() == rank, "zero-weight space exceeds the Cartan");
  require(total + rank == dimg + zspace.dim(), "weight decomposition misses the algebra");

  for (auto& [k, v] : rootsp)
    require(v.second.size() == 1, "root multiplicity above one");

  // A generic functional picks the positive system; simple roots are the
  // indecomposable positive roots.
  auto posval = [&](const Vec& k) {
    Rat s = 0, w = 1;
    for (size_t i = 0; i < k.size(); ++i) {
      s += k[i] * w;
      w *= 1000;
    }
    return s;
  };
  std::set<Vec> poskeys;
  for (auto& [k, v] : rootsp) {
    Rat s = posval(k);
    require(s != 0, "degenerate positivity functional");
    if (s > 0) poskeys.insert(k);
  }
  auto vec_sub = [](const Vec& a, const Vec& b) {
    Vec r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
  };
  std::vector<Vec> simples;
  for (auto& k : poskeys) {
    bool dec = false;
    for (auto& g : poskeys) {
      if (g == k) continue;
      if (poskeys.count(vec_sub(k, g))) {
        dec = true;
        break;
      }
    }
    if (!dec) simples.push_back(k);
  }
  require(simples.size() == rank, "simple system has wrong size");

  // Normalized triples and the Cartan matrix values.
  std::vector<Vec> tflats;
  for (auto& t : tbasis) tflats.push_back(flat(t));
  std::vector<Mat> se(rank), sf(rank), sh(rank);
  std::vector<Vec> hcoords(rank);
  for (size_t a = 0; a < rank; ++a) {
    const Vec& beta = simples[a];
    Vec neg = beta;
    for (auto& x : neg) x = -x;
    require(rootsp.count(neg), "missing opposite root");
    Mat e = rootsp[beta].second[0];
    Mat f0 = rootsp[neg].second[0];
    Mat h0 = mat_bracket(e, f0);
    Vec hc = coords_in(tflats, flat(h0));
    Rat bh = 0;
    for (size_t i = 0; i < rank; ++i) bh += hc[i] * beta[i];
    require(bh != 0, "degenerate simple triple");
    Mat f = mat_scaled(f0, Rat(2) / bh);
    se[a] = e;
    sf[a] = f;
    sh[a] = mat_bracket(e, f);
    hcoords[a] = coords_in(tflats, flat(sh[a]));
  }
  Mat cart = mat_zero(rank, rank);
  for (size_t a = 0; a < rank; ++a)
    for (size_t b = 0; b < rank; ++b) {
      Rat v = 0;
      for (size_t i = 0; i < rank; ++i) v += hcoords[a][i] * simples[b][i];
      require(v.get_den() == 1, "Cartan matrix not integral");
      cart[a][b] = v;
    }

  // Split into connected components of the simple-root graph.
  std::vector<int> comp_of(rank, -1);
  int ncomp = 0;
  for (size_t s = 0; s < rank; ++s) {
    if (comp_of[s] >= 0) continue;
    std::vector<size_t> stack{s};
    comp_of[s] = ncomp;
    while (!stack.empty()) {
      size_t u = stack.back();
      stack.pop_back();
      for (size_t v = 0; v < rank; ++v)
        if (comp_of[v] < 0 && cart[u][v] != 0) {
          comp_of[v] = ncomp;
          stack.push_back(v);
        }
    }
    ++ncomp;
  }
  for (int c = 0; c < ncomp; ++c) {
    GenSet g;
    g.label = "adjoint factor " + std::to_string(c);
    std::vector<size_t> idx;
    for (size_t s = 0; s < rank; ++s)
      if (comp_of[s] == c) idx.push_back(s);
    g.cart = mat_zero(idx.size(), idx.size());
    for (size_t a = 0; a < idx.size(); ++a)
      for (size_t b = 0; b < idx.size(); ++b) g.cart[a][b] = cart[idx[a]][idx[b]];
    for (size_t a : idx) {
      g.e.push_back(se[a]);
      g.f.push_back(sf[a]);
      g.h.push_back(sh[a]);
    }
    sm.comps.push_back(std::move(g));
  }

  // Weight-adapted basis: Cartan first, then root vectors in key order.
  sm.pbasis = tbasis;
  for (auto& [k, v] : rootsp) sm.pbasis.push_back(v.second[0]);
  require(sm.pbasis.size() == dimg, "basis reassembly lost elements");
  return sm;
}

// Derivations of the split octonions (Zorn vector matrices), a 14-dimensional
// split simple algebra of the exceptional rank-two kind.  Basis order of the
// octonions: two diagonal idempotents, then the two three-dimensional slots.
inline std::vector<Mat> octonion_derivations() {
  const int D = 8;
  auto cross = [](const Vec& x, const Vec& y) {
    return Vec{x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2],
               x[0] * y[1] - x[1] * y[0]};
  };
  auto dot3 = [](const Vec& x, const Vec& y) -> Rat {
    return Rat(x[0] * y[0]) + Rat(x[1] * y[1]) + Rat(x[2] * y[2]);
  };
  auto mul = [&](const Vec& u, const Vec& v) {
    Rat a = u[0], b = u[7], a2 = v[0], b2 = v[7];
    Vec x{u[1], u[2], u[3]}, y{u[4], u[5], u[6]};
    Vec x2{v[1], v[2], v[3]}, y2{v[4], v[5], v[6]};
    Vec xo(3), yo(3);
    Vec cyy = cross(y, y2), cxx = cross(x, x2);
    for (int i = 0; i < 3; ++i) {
      xo[i] = a * x2[i] + b2 * x[i] - cyy[i];
      yo[i] = a2 * y[i] + b * y2[i] + cxx[i];
    }
    Vec out(8, Rat(0));
    out[0] = a * a2 + dot3(x, y2);
    out[7] = dot3(y, x2) + b * b2;
    for (int i = 0; i < 3; ++i) {
      out[1 + i] = xo[i];
      out[4 + i] = yo[i];
    }
    return out;
  };
  std::vector<Vec> units(D, Vec(D, Rat(0)));
  for (int i = 0; i < D; ++i) units[i][i] = 1;
  std::vector<std::vector<Vec>> table(D, std::vector<Vec>(D));
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j) table[i][j] = mul(units[i], units[j]);
  // Alternativity check pins the sign conventions of the product.
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j) {
      Vec lhs = mul(table[i][i], units[j]), rhs = mul(units[i], table[i][j]);
      require(lhs == rhs, "octonion table not left alternative");
      Vec lhs2 = mul(table[j][i], units[i]), rhs2 = mul(units[j], table[i][i]);
      require(lhs2 == rhs2, "octonion table not right alternative");
    }
  // Derivation equations D(e_i e_j) = D(e_i) e_j + e_i D(e_j).
  Mat con;
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j)
      for (int s = 0; s < D; ++s) {
        Vec row(D * D, Rat(0));
        for (int k = 0; k < D; ++k) row[s * D + k] += table[i][j][k];
        for (int r = 0; r < D; ++r) {
          row[r * D + i] -= table[r][j][s];
          row[r * D + j] -= table[i][r][s];
        }
        con.push_back(std::move(row));
      }
  auto kern = kernel_basis(std::move(con), D * D);
  require(kern.size() == 14, "octonion derivation algebra has wrong dimension");
  std::vector<Mat> out;
  for (auto& v : kern) out.push_back(unflat(v, D, D));
  return out;
}

// ---------------------------------------------------------------------------
// per-family constructors
// ---------------------------------------------------------------------------

// Pair (s + s, swap): p is s itself with the adjoint action, trace form of
// the defining representation.
inline RepBuild rb_group(SimpleType t) {
  std::vector<Mat> span;
  switch (t.fam) {
    case 'A': {
      auto g = sl_defn(t.rank + 1);
      span.insert(span.end(), g.e.begin(), g.e.end());
      span.insert(span.end(), g.f.begin(), g.f.end());
      break;
    }
    case 'B': {
      auto g = so_defn(2 * t.rank + 1)[0];
      span.insert(span.end(), g.e.begin(), g.e.end());
      span.insert(span.end(), g.f.begin(), g.f.end());
      break;
    }
    case 'C': {
      auto g = sp_defn(t.rank);
      span.insert(span.end(), g.e.begin(), g.e.end());
      span.insert(span.end(), g.f.begin(), g.f.end());
      break;
    }
    case 'D': {
      require(t.rank >= 3, "group pair of type D needs rank >= 3");
      auto g = so_defn(2 * t.rank)[0];
      span.insert(span.end(), g.e.begin(), g.e.end());
      span.insert(span.end(), g.f.begin(), g.f.end());
      break;
    }
    case 'G':
      span = octonion_derivations();
      break;
    default:
      throw std::invalid_argument("realization: group pair of type " + t.str() +
                                  " is outside the matrix-model scope");
  }
  SpanModel sm = analyze_span(span);
  require((long)sm.pbasis.size() == (long)t.dim(), "adjoint model has wrong dimension");

  RepBuild rb;
  rb.label = "group " + t.str();
  rb.dim = (int)sm.pbasis.size();
  std::vector<Vec> pb;
  for (auto& m : sm.pbasis) pb.push_back(flat(m));
  int N = (int)sm.pbasis[0].size();
  auto act = [&](const Mat& g, const Vec& v) { return flat(mat_bracket(g, unflat(v, N, N))); };
  for (auto& gs : sm.comps) rb.comps.push_back(lift_genset(gs, pb, act));
  rb.form = mat_zero(rb.dim, rb.dim);
  for (int a = 0; a < rb.dim; ++a)
    for (int b = 0; b < rb.dim; ++b)
      rb.form[a][b] = mat_trace_prod(sm.pbasis[a], sm.pbasis[b]);
  return rb;
}

// Fixed space of an involution on traceless matrices, with the conjugation
// action of the fixed subalgebra; covers sl(m)/so(m) and sl(2l)/sp(2l).
inline RepBuild rb_A_matrixspace(int m, bool orthogonal) {
  require(orthogonal ? m >= 3 : (m >= 4 && m % 2 == 0), "matrix-space family parameter");
  int NN = m * m;
  Mat con;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Vec row(NN, Rat(0));
      row[i * m + j] += 1;
      if (orthogonal) {
        // X = S X^T S with the all-ones antidiagonal S.
        row[(m - 1 - j) * m + (m - 1 - i)] -= 1;
      } else {
        // X = -J X^T J with the antidiagonal symplectic J, J^{-1} = -J.
        int l = m / 2;
        row[(m - 1 - j) * m + (m - 1 - i)] += jval(i, l) * jval(m - 1 - j, l);
      }
      con.push_back(std::move(row));
    }
  Vec tr(NN, Rat(0));
  for (int i = 0; i < m; ++i) tr[i * m + i] = 1;
  con.push_back(std::move(tr));
  auto pb = kernel_basis(std::move(con), NN);

  RepBuild rb;
  rb.label = orthogonal ? "sl(" + std::to_string(m) + ")/so(" + std::to_string(m) + ")"
                        : "sl(" + std::to_string(m) + ")/sp(" + std::to_string(m) + ")";
  rb.dim = (int)pb.size();
  auto act = [&](const Mat& g, const Vec& v) { return flat(mat_bracket(g, unflat(v, m, m))); };
  std::vector<GenSet> ks = orthogonal ? so_defn(m) : std::vector<GenSet>{sp_defn(m / 2)};
  for (auto& gs : ks) rb.comps.push_back(lift_genset(gs, pb, act));
  rb.form = mat_zero(rb.dim, rb.dim);
  for (int a = 0; a < rb.dim; ++a) {
    Mat ma = unflat(pb[a], m, m);
    for (int b = 0; b < rb.dim; ++b) rb.form[a][b] = mat_trace_prod(ma, unflat(pb[b], m, m));
  }
  return rb;
}

inline Mat embed_block(const Mat& small, int n, int off) {
  Mat m = mat_zero(n, n);
  for (size_t i = 0; i < small.size(); ++i)
    for (size_t j = 0; j < small.size(); ++j) m[off + i][off + j] = small[i][j];
  return m;
}

// sl(p+q) over its maximal-block subalgebra; p spans the two off-diagonal
// blocks and the center acts with eigenvalues +-1.
inline RepBuild rb_AIII(int p, int q) {
  int n = p + q;
  std::vector<Vec> pb;
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < q; ++j) pb.push_back(flat(elem(n, i, p + j)));
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < q; ++j) pb.push_back(flat(elem(n, p + j, i)));

  RepBuild rb;
  rb.label = "sl(" + std::to_string(n) + ") block (" + std::to_string(p) + "," + std::to_string(q) + ")";
  rb.dim = 2 * p * q;
  auto act = [&](const Mat& g, const Vec& v) { return flat(mat_bracket(g, unflat(v, n, n))); };
  if (p >= 2) {
    GenSet gs = sl_defn(p);
    GenSet emb;
    emb.cart = gs.cart;
    emb.label = gs.label;
    for (auto& m : gs.e) emb.e.push_back(embed_block(m, n, 0));
    for (auto& m : gs.f) emb.f.push_back(embed_block(m, n, 0));
    for (auto& m : gs.h) emb.h.push_back(embed_block(m, n, 0));
    rb.comps.push_back(lift_genset(emb, pb, act));
  }
  if (q >= 2) {
    GenSet gs = sl_defn(q);
    GenSet emb;
    emb.cart = gs.cart;
    emb.label = gs.label;
    for (auto& m : gs.e) emb.e.push_back(embed_block(m, n, p));
    for (auto& m : gs.f) emb.f.push_back(embed_block(m, n, p));
    for (auto& m : gs.h) emb.h.push_back(embed_block(m, n, p));
    rb.comps.push_back(lift_genset(emb, pb, act));
  }
  Mat w = mat_zero(n, n);
  for (int i = 0; i < p; ++i) w[i][i] = rat(q, n);
  for (int j = 0; j < q; ++j) w[p + j][p + j] = rat(-p, n);
  rb.varpi = lift_action(pb, [&](const Vec& v) { return act(w, v); });
  rb.has_center = true;
  rb.form = mat_zero(rb.dim, rb.dim);
  for (int a = 0; a < rb.dim; ++a) {
    Mat ma = unflat(pb[a], n, n);
    for (int b = 0; b < rb.dim; ++b) rb.form[a][b] = mat_trace_prod(ma, unflat(pb[b], n, n));
  }
  return rb;
}

// Tensor-product representations (orthogonal x orthogonal and symplectic x
// symplectic pairs).
struct TensorFactor {
  int dim = 0;
  std::vector<GenSet> comps;
  Mat form;
  Mat center;
  bool has_center = false;
};

inline TensorFactor so_factor(int m) {
  TensorFactor f;
  f.dim = m;
  f.comps = so_defn(m);
  f.form = mat_zero(m, m);
  for (int i = 0; i < m; ++i) f.form[i][m - 1 - i] = 1;
  if (m == 2) {
    f.center = mat_zero(2, 2);
    f.center[0][0] = 1;
    f.center[1][1] = -1;
    f.has_center = true;
  }
  return f;
}

inline TensorFactor sp_factor(int r) {
  TensorFactor f;
  f.dim = 2 * r;
  f.comps = {sp_defn(r)};
  f.form = sp_gram(r);
  return f;
}

inline Mat kron(const Mat& a, const Mat& b) {
  int ar = (int)a.size(), br = (int)b.size();
  Mat m = mat_zero(ar * br, ar * br);
  for (int i = 0; i < ar; ++i)
    for (int j = 0; j < ar; ++j) {
      if (a[i][j] == 0) continue;
      for (int k = 0; k < br; ++k)
        for (int l = 0; l < br; ++l)
          if (b[k][l] != 0) m[i * br + k][j * br + l] = a[i][j] * b[k][l];
    }
  return m;
}

inline RepBuild tensor_rep(const TensorFactor& A, const TensorFactor& B, std::string label) {
  RepBuild rb;
  rb.label = std::move(label);
  rb.dim = A.dim * B.dim;
  auto liftA = [&](const Mat& x) { return kron(x, mat_id(B.dim)); };
  auto liftB = [&](const Mat& y) { return kron(mat_id(A.dim), y); };
  for (auto& gs : A.comps) {
    GenSet g;
    g.cart = gs.cart;
    g.label = gs.label;
    for (auto& m : gs.e) g.e.push_back(liftA(m));
    for (auto& m : gs.f) g.f.push_back(liftA(m));
    for (auto& m : gs.h) g.h.push_back(liftA(m));
    rb.comps.push_back(std::move(g));
  }
  for (auto& gs : B.comps) {
    GenSet g;
    g.cart = gs.cart;
    g.label = gs.label;
    for (auto& m : gs.e) g.e.push_back(liftB(m));
    for (auto& m : gs.f) g.f.push_back(liftB(m));
    for (auto& m : gs.h) g.h.push_back(liftB(m));
    rb.comps.push_back(std::move(g));
  }
  require(!(A.has_center && B.has_center), "two centers in a tensor pair");
  if (A.has_center) {
    rb.varpi = liftA(A.center);
    rb.has_center = true;
  } else if (B.has_center) {
    rb.varpi = liftB(B.center);
    rb.has_center = true;
  }
  rb.form = kron(A.form, B.form);
  return rb;
}

inline RepBuild rb_BDI(int m, int n) {
  if (m < n) std::swap(m, n);
  require(m >= 3 && n >= 1, "orthogonal tensor pair needs m >= 3, n >= 1");
  TensorFactor B;
  if (n == 1) {
    B.dim = 1;
    B.form = Mat{{Rat(1)}};
  } else {
    B = so_factor(n);
  }
  return tensor_rep(so_factor(m), B,
                    "so(" + std::to_string(m) + ") x so(" + std::to_string(n) + ") tensor");
}

inline RepBuild rb_CII(int a, int b) {
  return tensor_rep(sp_factor(a), sp_factor(b),
                    "sp(" + std::to_string(2 * a) + ") x sp(" + std::to_string(2 * b) + ") tensor");
}

// gl(m) acting on two copies of the symmetric or antisymmetric square.
inline RepBuild rb_CIorDIII(int m, bool symmetric) {
  require(m >= 2, "square-type pair needs m >= 2");
  std::vector<Mat> shapes;
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      if (i == j) {
        if (symmetric) shapes.push_back(elem(m, i, i));
        continue;
      }
      Mat s = elem(m, i, j);
      s[j][i] = symmetric ? Rat(1) : Rat(-1);
      shapes.push_back(std::move(s));
    }
  int half = (int)shapes.size();
  int NN = m * m;
  std::vector<Vec> pb;
  for (auto& s : shapes) {
    Vec v(2 * NN, Rat(0));
    Vec fs = flat(s);
    for (int k = 0; k < NN; ++k) v[k] = fs[k];
    pb.push_back(std::move(v));
  }
  for (auto& s : shapes) {
    Vec v(2 * NN, Rat(0));
    Vec fs = flat(s);
    for (int k = 0; k < NN; ++k) v[NN + k] = fs[k];
    pb.push_back(std::move(v));
  }
  RepBuild rb;
  rb.label = std::string(symmetric ? "sp" : "so") + " over gl(" + std::to_string(m) + ")";
  rb.dim = 2 * half;
  auto act = [&](const Mat& g, const Vec& v) {
    Mat U = unflat(Vec(v.begin(), v.begin() + NN), m, m);
    Mat V = unflat(Vec(v.begin() + NN, v.end()), m, m);
    Mat gU = mat_add(mat_mul(g, U), mat_mul(U, detail::transpose(g)));
    Mat gV = mat_scaled(mat_add(mat_mul(detail::transpose(g), V), mat_mul(V, g)), Rat(-1));
    Vec out(2 * NN, Rat(0));
    Vec f1 = flat(gU), f2 = flat(gV);
    for (int k = 0; k < NN; ++k) {
      out[k] = f1[k];
      out[NN + k] = f2[k];
    }
    return out;
  };
  rb.comps.push_back(lift_genset(sl_defn(m), pb, act));
  rb.varpi = mat_zero(rb.dim, rb.dim);
  for (int i = 0; i < half; ++i) {
    rb.varpi[i][i] = 1;
    rb.varpi[half + i][half + i] = -1;
  }
  rb.has_center = true;
  rb.form = mat_zero(rb.dim, rb.dim);
  for (int a = 0; a < half; ++a)
    for (int b = 0; b < half; ++b) {
      Rat t = mat_trace_prod(shapes[a], shapes[b]);
      rb.form[a][half + b] = t;
      rb.form[half + b][a] = t;
    }
  return rb;
}

// The sixteen-dimensional spin representation of so(9), built on the exterior
// algebra of a four-dimensional space with Clifford generators.
inline RepBuild rb_FII() {
  const int N = 9, D = 16;
  auto wedge = [&](int k) {
    Mat m = mat_zero(D, D);
    for (int s = 0; s < D; ++s) {
      if (s & (1 << k)) continue;
      int below = 0;
      for (int j = 0; j < k; ++j)
        if (s & (1 << j)) ++below;
      m[s | (1 << k)][s] = (below % 2 == 0) ? 1 : -1;
    }
    return m;
  };
  auto contract = [&](int k) {
    Mat m = mat_zero(D, D);
    for (int s = 0; s < D; ++s) {
      if (!(s & (1 << k))) continue;
      int below = 0;
      for (int j = 0; j < k; ++j)
        if (s & (1 << j)) ++below;
      m[s & ~(1 << k)][s] = (below % 2 == 0) ? 2 : -2;
    }
    return m;
  };
  std::vector<Mat> cliff(N);
  for (int k = 0; k < 4; ++k) {
    cliff[k] = wedge(k);
    cliff[8 - k] = contract(k);
  }
  Mat parity = mat_zero(D, D);
  for (int s = 0; s < D; ++s) parity[s][s] = (__builtin_popcount((unsigned)s) % 2 == 0) ? 1 : -1;
  cliff[4] = parity;
  // Clifford relations against the all-ones antidiagonal gram on 9 slots.
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      Mat anti = mat_add(mat_mul(cliff[a], cliff[b]), mat_mul(cliff[b], cliff[a]));
      Rat want = (a + b == N - 1) ? Rat(2) : Rat(0);
      Mat expect = mat_scaled(mat_id(D), want);
      require(anti == expect, "Clifford relations fail");
    }
  auto spinify = [&](const Mat& M) {
    Mat out = mat_zero(D, D);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        if (i + j >= N - 1 || M[i][j] == 0) continue;
        Mat q = mat_scaled(mat_sub(mat_mul(cliff[i], cliff[N - 1 - j]), mat_mul(cliff[N - 1 - j], cliff[i])),
                           Rat(1, 4));
        out = mat_add(out, mat_scaled(q, M[i][j]));
      }
    return out;
  };
  GenSet so9 = so_defn(N)[0];
  GenSet spin;
  spin.cart = so9.cart;
  spin.label = "so(9) spin";
  for (auto& m : so9.e) spin.e.push_back(spinify(m));
  for (auto& m : so9.f) spin.f.push_back(spinify(m));
  for (auto& m : so9.h) spin.h.push_back(spinify(m));
  // The representation property is certified by the bracket checks at
  // alignment time; the form pairs complementary subsets.
  std::vector<Mat> gens;
  gens.insert(gens.end(), spin.e.begin(), spin.e.end());
  gens.insert(gens.end(), spin.f.begin(), spin.f.end());
  RepBuild rb;
  rb.label = "spin(9) on 16";
  rb.dim = D;
  rb.form = solve_form(gens, D, [&](int i, int j) { return (i ^ j) == D - 1; });
  rb.comps.push_back(std::move(spin));
  return rb;
}

// Rank-two exceptional split pair over sl(2) + sl(2): the odd part is the
// tensor of the defining representation with the third symmetric power.
inline RepBuild rb_G2split() {
  TensorFactor A;
  A.dim = 2;
  A.comps = {sl_defn(2)};
  A.form = Mat{{Rat(0), Rat(1)}, {Rat(-1), Rat(0)}};
  TensorFactor B;
  B.dim = 4;
  GenSet s3 = sl2_sympow(3);
  std::vector<Mat> gens{s3.e[0], s3.f[0]};
  B.form = solve_form(gens, 4, [&](int i, int j) { return i + j == 3; });
  B.comps = {std::move(s3)};
  return tensor_rep(A, B, "rank-two exceptional split tensor");
}

}  // namespace rz

// ---------------------------------------------------------------------------
// the aligned realization
// ---------------------------------------------------------------------------

struct Realization {
  const SymmetricPair* sp = nullptr;
  std::string label;
  int dim = 0;
  FermionSpace fs;                          // fermions on p in the class order
  std::vector<rz::GenSet> comps;            // aligned with sp->rcomps, node order
  Mat varpi;                                // center action (hermitian pairs)
  bool hermitian = false;
  std::vector<std::vector<int>> class_gens; // class index -> generator indices
  std::vector<int> gen_class;               // generator -> class index
  std::vector<int> pos_classes;             // positive classes, ascending
  std::vector<int> zero_gens;               // generators of the zero class
  std::vector<Rat> jlevels;                 // trace-form levels, per component

  int gen_of(int ci) const {
    rz::require(class_gens[ci].size() == 1, "class is not multiplicity one");
    return class_gens[ci][0];
  }
  int neg_class(int ci) const {
    auto k = detail::key_neg(sp->p_classes[ci].key());
    auto it = sp->p_index.find(k);
    rz::require(it != sp->p_index.end(), "class has no opposite");
    return it->second;
  }
};

namespace rz {

// All bijections of node positions that carry one Cartan matrix to the other.
inline std::vector<std::vector<int>> cartan_orderings(const std::vector<std::vector<int>>& target,
                                                      const Mat& mine) {
  int r = (int)target.size();
  std::vector<std::vector<int>> out;
  std::vector<int> cur(r, -1);
  std::vector<bool> used(r, false);
  auto dfs = [&](auto&& self, int pos) -> void {
    if (pos == r) {
      out.push_back(cur);
      return;
    }
    for (int c = 0; c < r; ++c) {
      if (used[c]) continue;
      bool ok = mine[c][c] == target[pos][pos];
      for (int q = 0; ok && q < pos; ++q)
        ok = mine[c][cur[q]] == target[pos][q] && mine[cur[q]][c] == target[q][pos];
      if (!ok) continue;
      used[c] = true;
      cur[pos] = c;
      self(self, pos + 1);
      used[c] = false;
    }
  };
  dfs(dfs, 0);
  return out;
}

inline Realization align_realization(RepBuild rb, const SymmetricPair& sp) {
  const int d = rb.dim;
  require(d == (int)sp.dim_p.get_si(), "odd-part dimension mismatch");
  require(rb.has_center == sp.hermitian, "center presence mismatch");
  require(rb.comps.size() == sp.rcomps.size(), "component count mismatch");

  // Structural checks: bracket relations, commuting factors, diagonal Cartan,
  // invariance of the form.
  std::vector<std::pair<const Mat*, std::string>> allgens;
  for (size_t s = 0; s < rb.comps.size(); ++s) {
    auto& g = rb.comps[s];
    int r = g.rank();
    for (int a = 0; a < r; ++a) {
      require((int)g.e[a].size() == d, "generator size");
      require(mat_is_diag(g.h[a]), "Cartan action not diagonal");
      for (int b = 0; b < r; ++b) {
        require(mat_bracket(g.h[a], g.h[b]) == mat_zero(d, d), "Cartan not abelian");
        require(mat_bracket(g.h[a], g.e[b]) == mat_scaled(g.e[b], g.cart[a][b]),
                "raising generator has wrong weight");
        require(mat_bracket(g.h[a], g.f[b]) == mat_scaled(g.f[b], -g.cart[a][b]),
                "lowering generator has wrong weight");
        if (a != b)
          require(mat_bracket(g.e[a], g.f[b]) == mat_zero(d, d), "cross triple does not vanish");
      }
      allgens.push_back({&g.e[a], "e"});
      allgens.push_back({&g.f[a], "f"});
      allgens.push_back({&g.h[a], "h"});
    }
  }
  for (size_t s = 0; s < rb.comps.size(); ++s)
    for (size_t t = 0; t < s; ++t)
      for (auto ga : {&rb.comps[s].e, &rb.comps[s].f, &rb.comps[s].h})
        for (auto gb : {&rb.comps[t].e, &rb.comps[t].f, &rb.comps[t].h})
          for (auto& ma : *ga)
            for (auto& mb : *gb)
              require(mat_bracket(ma, mb) == mat_zero(d, d), "factors do not commute");
  if (rb.has_center) {
    require(mat_is_diag(rb.varpi), "center action not diagonal");
    for (auto& [m, kind] : allgens)
      require(mat_bracket(rb.varpi, *m) == mat_zero(d, d), "center does not centralize");
  }
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < i; ++j) require(rb.form[i][j] == rb.form[j][i], "form not symmetric");
  {
    std::vector<Mat> inv;
    for (auto& [m, kind] : allgens) inv.push_back(*m);
    if (rb.has_center) inv.push_back(rb.varpi);
    for (auto& x : inv) {
      Mat xt = detail::transpose(x);
      require(mat_add(mat_mul(xt, rb.form), mat_mul(rb.form, x)) == mat_zero(d, d),
              "form not invariant");
    }
  }
  require(det(rb.form) != 0, "form degenerate");

  // Target class keys: restricted weights on the component coroots plus the
  // center eigenvalue.
  int ncls = (int)sp.p_classes.size();
  std::map<std::pair<Vec, Rat>, int> class_of;
  for (int ci = 0; ci < ncls; ++ci) {
    const PWeight& pw = sp.p_classes[ci];
    Vec key;
    for (auto& rc : sp.rcomps)
      for (int node : rc.nodes) key.push_back(pw.rfw[node]);
    class_of[{key, pw.piw}] = ci;
  }
  require((int)class_of.size() == ncls, "class keys collide");

  // Search over component assignments, node orderings, and the center sign.
  size_t m = rb.comps.size();
  std::vector<int> perm(m);
  for (size_t i = 0; i < m; ++i) perm[i] = (int)i;
  std::sort(perm.begin(), perm.end());
  std::vector<int> assign_class(d, -1);
  std::vector<int> comp_pick, node_pick;
  Rat center_sign = 1;
  bool found = false;
  do {
    bool ranks_ok = true;
    for (size_t s = 0; s < m && ranks_ok; ++s)
      ranks_ok = rb.comps[perm[s]].rank() == (int)sp.rcomps[s].nodes.size();
    if (!ranks_ok) continue;
    std::vector<std::vector<std::vector<int>>> orders(m);
    bool any_empty = false;
    for (size_t s = 0; s < m; ++s) {
      orders[s] = cartan_orderings(sp.rcomps[s].rs.cartan, rb.comps[perm[s]].cart);
      if (orders[s].empty()) any_empty = true;
    }
    if (any_empty) continue;
    std::vector<size_t> oi(m, 0);
    while (true) {
      for (Rat eps : sp.hermitian ? std::vector<Rat>{Rat(1), Rat(-1)} : std::vector<Rat>{Rat(1)}) {
        std::vector<int> cls(d, -1);
        std::vector<int> count(ncls, 0);
        bool ok = true;
        for (int v = 0; v < d && ok; ++v) {
          Vec key;
          for (size_t s = 0; s < m; ++s) {
            auto& sigma = orders[s][oi[s]];
            for (size_t pos = 0; pos < sigma.size(); ++pos)
              key.push_back(rb.comps[perm[s]].h[sigma[pos]][v][v]);
          }
          Rat piw = sp.hermitian ? eps * rb.varpi[v][v] : Rat(0);
          auto it = class_of.find({key, piw});
          if (it == class_of.end()) {
            ok = false;
            break;
          }
          cls[v] = it->second;
          ++count[it->second];
        }
        if (ok)
          for (int ci = 0; ci < ncls; ++ci)
            if (count[ci] != sp.p_classes[ci].mult) ok = false;
        if (ok) {
          assign_class = cls;
          comp_pick = perm;
          node_pick.clear();
          for (size_t s = 0; s < m; ++s)
            node_pick.insert(node_pick.end(), orders[s][oi[s]].begin(), orders[s][oi[s]].end());
          center_sign = eps;
          found = true;
          break;
        }
      }
      if (found) break;
      size_t s = 0;
      while (s < m && ++oi[s] == orders[s].size()) {
        oi[s] = 0;
        ++s;
      }
      if (s == m) break;
    }
    if (found) break;
  } while (std::next_permutation(perm.begin(), perm.end()));
  require(found, "weight alignment failed");

  // New basis order: zero class, positive classes ascending, then their
  // opposites paired to unit pairing against the positives.
  std::vector<std::vector<int>> raw_of_class(ncls);
  for (int v = 0; v < d; ++v) raw_of_class[assign_class[v]].push_back(v);
  std::vector<int> pos_classes, zero_classes;
  for (int ci = 0; ci < ncls; ++ci) {
    if (sp.p_classes[ci].imaginary)
      zero_classes.push_back(ci);
    else if (sp.p_classes[ci].positive)
      pos_classes.push_back(ci);
  }
  require(zero_classes.size() <= 1, "several zero classes");

  Mat P = mat_zero(d, d);
  int col = 0;
  std::vector<std::vector<int>> class_gens(ncls);
  std::vector<int> zero_gens;
  if (!zero_classes.empty())
    for (int v : raw_of_class[zero_classes[0]]) {
      P[v][col] = 1;
      zero_gens.push_back(col);
      class_gens[zero_classes[0]].push_back(col);
      ++col;
    }
  for (int ci : pos_classes)
    for (int v : raw_of_class[ci]) {
      P[v][col] = 1;
      class_gens[ci].push_back(col);
      ++col;
    }
  for (int ci : pos_classes) {
    auto nk = detail::key_neg(sp.p_classes[ci].key());
    auto it = sp.p_index.find(nk);
    require(it != sp.p_index.end(), "positive class has no opposite");
    int ni = it->second;
    auto& pos_raw = raw_of_class[ci];
    auto& neg_raw = raw_of_class[ni];
    require(pos_raw.size() == neg_raw.size(), "opposite multiplicities differ");
    size_t mm = pos_raw.size();
    Mat c = mat_zero(mm, mm);
    for (size_t a = 0; a < mm; ++a)
      for (size_t b = 0; b < mm; ++b) c[a][b] = rb.form[pos_raw[a]][neg_raw[b]];
    Mat cinv = inverse(c);
    for (size_t b = 0; b < mm; ++b) {
      for (size_t a = 0; a < mm; ++a) P[neg_raw[a]][col] = cinv[a][b];
      class_gens[ni].push_back(col);
      ++col;
    }
  }
  require(col == d, "basis reorder incomplete");

  Mat Pinv = inverse(P);
  auto conj = [&](const Mat& a) { return mat_mul(Pinv, mat_mul(a, P)); };
  Mat form2 = mat_mul(detail::transpose(P), mat_mul(rb.form, P));

  Realization out;
  out.sp = &sp;
  out.label = rb.label;
  out.dim = d;
  out.hermitian = sp.hermitian;
  out.class_gens = class_gens;
  out.gen_class.assign(d, -1);
  for (int ci = 0; ci < ncls; ++ci)
    for (int g : class_gens[ci]) out.gen_class[g] = ci;
  out.pos_classes = pos_classes;
  out.zero_gens = zero_gens;

  int mcomp = (int)m;
  int nodebase = 0;
  for (int s = 0; s < mcomp; ++s) {
    auto& src = rb.comps[comp_pick[s]];
    int r = src.rank();
    GenSet g;
    g.label = src.label;
    g.cart = mat_zero(r, r);
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b) g.cart[a][b] = sp.rcomps[s].rs.cartan[a][b];
    for (int pos = 0; pos < r; ++pos) {
      int a = node_pick[nodebase + pos];
      g.e.push_back(conj(src.e[a]));
      g.f.push_back(conj(src.f[a]));
      g.h.push_back(conj(src.h[a]));
    }
    nodebase += r;
    out.comps.push_back(std::move(g));
  }
  if (sp.hermitian) out.varpi = mat_scaled(conj(rb.varpi), center_sign);

  // Pairing shape: unit pairing between each positive class and its opposite,
  // zero elsewhere off the zero block.
  {
    int z = (int)zero_gens.size();
    int npos = 0;
    for (int ci : pos_classes) npos += (int)class_gens[ci].size();
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        Rat want;
        bool check = true;
        if (i < z && j < z)
          check = false;  // zero-block gram is arbitrary symmetric
        else if (i >= z && j >= z && i < z + npos && j >= z + npos)
          want = (j - npos == i) ? 1 : 0;
        else if (j >= z && i >= z && j < z + npos && i >= z + npos)
          want = (i - npos == j) ? 1 : 0;
        else
          want = 0;
        if (check) require(form2[i][j] == want, "pairing shape off");
      }
    if (z > 0) {
      Mat zb = mat_zero(z, z);
      for (int i = 0; i < z; ++i)
        for (int j = 0; j < z; ++j) zb[i][j] = form2[i][j];
      require(det(zb) != 0, "zero-block gram degenerate");
    }
  }

  // Re-check the diagonal class data in the new order, then the trace-form
  // levels against the combinatorial ones.
  for (int v = 0; v < d; ++v) {
    const PWeight& pw = sp.p_classes[out.gen_class[v]];
    for (int s = 0; s < mcomp; ++s)
      for (size_t pos = 0; pos < sp.rcomps[s].nodes.size(); ++pos)
        require(out.comps[s].h[pos][v][v] == pw.rfw[sp.rcomps[s].nodes[pos]],
                "aligned weight mismatch");
    if (sp.hermitian) require(out.varpi[v][v] == pw.piw, "aligned center eigenvalue mismatch");
  }
  for (int s = 0; s < mcomp; ++s) {
    Rat level;
    bool first = true;
    for (int b = 0; b < out.comps[s].rank(); ++b) {
      Rat j = mat_trace_prod(out.comps[s].e[b], out.comps[s].f[b]) *
              sp.rcomps[s].rs.halfnorm[b] / 2;
      if (first) {
        level = j;
        first = false;
      } else {
        require(j == level, "component level not constant");
      }
    }
    require(level == sp.jlevels[s], "trace-form level mismatch");
    out.jlevels.push_back(level);
  }
  if (sp.hermitian) {
    Rat tr2 = 0;
    for (int v = 0; v < d; ++v) tr2 += out.varpi[v][v] * out.varpi[v][v];
    require(tr2 == sp.nu_piw, "center norm mismatch");
  }

  out.fs = FermionSpace::make(form2);
  return out;
}

}  // namespace rz

// ---------------------------------------------------------------------------
// family dispatch
// ---------------------------------------------------------------------------

inline Realization realize(const SymmetricPair& sp) {
  const AffineDiagram& dg = sp.inv.diag;
  const auto& P = sp.inv.P;
  SimpleType am = dg.ambient.simples[0];
  auto oops = [&](const std::string& why) {
    return std::invalid_argument("realization: " + why + " (" + dg.label + ")");
  };
  rz::RepBuild rb;
  if (dg.split) {
    rb = rz::rb_group(am);
  } else if (dg.twist == 2) {
    int j = P[0];
    switch (am.fam) {
      case 'A':
        if (am.rank % 2 == 0) {
          rz::require(j == dg.n - 1, "unexpected node on the even twisted diagram");
          rb = rz::rb_A_matrixspace(am.rank + 1, true);
        } else if (j == 0) {
          rb = rz::rb_A_matrixspace(am.rank + 1, false);
        } else {
          rz::require(j == dg.n - 1, "unexpected node on the odd twisted diagram");
          rb = rz::rb_A_matrixspace(am.rank + 1, true);
        }
        break;
      case 'D': {
        int l = am.rank - 1;
        rb = rz::rb_BDI(2 * j + 1, 2 * (l - j) + 1);
        break;
      }
      default:
        throw oops("twisted exceptional pair is outside the matrix-model scope");
    }
  } else if (P.size() == 1) {
    int j = P[0];
    switch (am.fam) {
      case 'B':
        rb = rz::rb_BDI(2 * j, 2 * (am.rank - j) + 1);
        break;
      case 'D':
        rb = rz::rb_BDI(2 * j, 2 * (am.rank - j));
        break;
      case 'C':
        rb = rz::rb_CII(j, am.rank - j);
        break;
      case 'F':
        if (j == 4) {
          rb = rz::rb_FII();
          break;
        }
        throw oops("the 28-dimensional odd part is outside the matrix-model scope");
      case 'G':
        rb = rz::rb_G2split();
        break;
      default:
        throw oops("inner involution outside the matrix-model scope");
    }
  } else {
    int j = std::max(P[0], P[1]);
    switch (am.fam) {
      case 'A':
        rb = rz::rb_AIII(j, am.rank + 1 - j);
        break;
      case 'B':
        rz::require(j == 1, "unexpected node pair on type B");
        rb = rz::rb_BDI(2 * am.rank - 1, 2);
        break;
      case 'C':
        rz::require(j == am.rank, "unexpected node pair on type C");
        rb = rz::rb_CIorDIII(am.rank, true);
        break;
      case 'D':
        if (j == 1)
          rb = rz::rb_BDI(2 * am.rank - 2, 2);
        else if (j == am.rank - 1 || j == am.rank)
          rb = rz::rb_CIorDIII(am.rank, false);
        else
          throw oops("unexpected node pair on type D");
        break;
      default:
        throw oops("hermitian exceptional pair is outside the matrix-model scope");
    }
  }
  return rz::align_realization(std::move(rb), sp);
}

// Cached accessor keyed by the pair object; the pair must outlive its uses.
inline const Realization& realization_for(const SymmetricPair& sp) {
  static std::map<const SymmetricPair*, std::unique_ptr<Realization>> cache;
  auto& slot = cache[&sp];
  if (!slot) slot = std::make_unique<Realization>(realize(sp));
  return *slot;
}

}  // namespace lieconf
