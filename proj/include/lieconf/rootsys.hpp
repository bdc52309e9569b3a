#pragma once

// Finite root systems with exact Cartan data: positive roots, normalized
// invariant form ((theta,theta) = 2 per simple factor), marks/comarks,
// fundamental (co)weights and Weyl-group words.
//
// Node numbering follows Kac, "Infinite dimensional Lie algebras", Tables
// Fin / Aff 1-2, and is frozen:
//   A_n   1 - 2 - ... - n
//   B_n   1 - 2 - ... - (n-1) => n          (alpha_n short)
//   C_n   1 - 2 - ... - (n-1) <= n          (alpha_n long)
//   D_n   1 - ... - (n-2) < (n-1, n)        (fork)
//   E_6   1 - 2 - 3 - 4 - 5   with 6 on node 3
//   E_7   1 - 2 - 3 - 4 - 5 - 6  with 7 on node 3
//   E_8   1 - 2 - 3 - 4 - 5 - 6 - 7  with 8 on node 5
//   F_4   1 - 2 => 3 - 4                    (1, 2 long)
//   G_2   1 => 2  (triple edge; alpha_1 long, marks (2,3))
//
// Internally nodes are 0-based; printed labels are 1-based.

#include <algorithm>
#include <cassert>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "rat.hpp"

namespace lieconf {

struct SimpleType {
  char fam = 'A';  // 'A'..'G'
  int rank = 0;

  bool operator==(const SimpleType& o) const { return fam == o.fam && rank == o.rank; }
  bool operator<(const SimpleType& o) const {
    return fam != o.fam ? fam < o.fam : rank < o.rank;
  }

  void validate() const {
    bool ok = false;
    switch (fam) {
      case 'A': ok = rank >= 1; break;
      case 'B': ok = rank >= 2; break;
      case 'C': ok = rank >= 2; break;
      case 'D': ok = rank >= 3; break;  // D3 admitted, isomorphic to A3 but keeps D labels
      case 'E': ok = rank >= 6 && rank <= 8; break;
      case 'F': ok = rank == 4; break;
      case 'G': ok = rank == 2; break;
      default: ok = false;
    }
    if (!ok) throw std::invalid_argument("invalid simple type " + str());
  }

  std::string str() const { return std::string(1, fam) + std::to_string(rank); }

  long dim() const {
    long n = rank;
    switch (fam) {
      case 'A': return n * (n + 2);
      case 'B': return n * (2 * n + 1);
      case 'C': return n * (2 * n + 1);
      case 'D': return n * (2 * n - 1);
      case 'E': return rank == 6 ? 78 : (rank == 7 ? 133 : 248);
      case 'F': return 52;
      case 'G': return 14;
    }
    return 0;
  }
};

// A reductive type: product of simple factors plus an abelian summand.
struct LieType {
  std::vector<SimpleType> simples;
  int abelian_dim = 0;

  long dim() const {
    long d = abelian_dim;
    for (auto& s : simples) d += s.dim();
    return d;
  }
  long rank() const {
    long r = abelian_dim;
    for (auto& s : simples) r += s.rank;
    return r;
  }
  std::string str() const {
    std::string out;
    for (auto& s : simples) {
      if (!out.empty()) out += "x";
      out += s.str();
    }
    if (abelian_dim > 0) {
      if (!out.empty()) out += "x";
      out += "u" + std::to_string(abelian_dim);
    }
    return out.empty() ? "0" : out;
  }
  // Parse e.g. "A2", "B3xA1", "A2xA1xu1".
  static LieType parse(const std::string& s) {
    LieType t;
    size_t i = 0;
    while (i < s.size()) {
      if (s[i] == 'x' || s[i] == ' ') { ++i; continue; }
      char f = s[i];
      size_t j = i + 1;
      while (j < s.size() && isdigit(s[j])) ++j;
      if (j == i + 1) throw std::invalid_argument("bad type string: " + s);
      int r = std::stoi(s.substr(i + 1, j - i - 1));
      if (f == 'u')
        t.abelian_dim += r;
      else {
        SimpleType st{f, r};
        st.validate();
        t.simples.push_back(st);
      }
      i = j;
    }
    return t;
  }
};

using RootVec = std::vector<int>;  // coefficients over simple roots
using Weight = Vec;                // coordinates over fundamental weights (values on coroots)
using WeylWord = std::vector<int>; // 0-based simple-reflection indices

namespace detail {
inline long height(const RootVec& v) {
  long h = 0;
  for (int c : v) h += c;
  return h;
}
}  // namespace detail

struct RootSystem {
  SimpleType type;
  int n = 0;
  std::vector<std::vector<int>> cartan;  // cartan[i][j] = <alpha_j, alpha_i^vee>
  std::vector<Rat> halfnorm;             // (alpha_i, alpha_i)/2, theta normalized to 2
  Mat form;                              // (alpha_i, alpha_j)
  Mat form_inv;
  std::vector<RootVec> pos;              // graded-lex: by height, then lex
  std::map<RootVec, int> pos_index;
  RootVec theta;
  std::vector<int> marks;    // coefficients of theta
  std::vector<int> comarks;  // marks[i] * halfnorm[i], always integral
  long hvee = 0;

  long num_pos() const { return (long)pos.size(); }
  long dim() const { return 2 * num_pos() + n; }

  bool is_pos_root(const RootVec& v) const { return pos_index.count(v) != 0; }
  bool is_root(const RootVec& v) const {
    if (is_pos_root(v)) return true;
    RootVec m(v);
    for (auto& c : m) c = -c;
    return is_pos_root(m);
  }

  // <beta, alpha_i^vee>
  long croot_pair(const RootVec& beta, int i) const {
    long s = 0;
    for (int j = 0; j < n; ++j) s += (long)cartan[i][j] * beta[j];
    return s;
  }

  Weight fw_of_root(const RootVec& beta) const {
    Weight w(n, Rat(0));
    for (int i = 0; i < n; ++i) w[i] = Rat(croot_pair(beta, i));
    return w;
  }

  // root coords of a weight given in fundamental-weight coords (exact; the
  // result is rational).
  Vec root_coords(const Weight& w) const {
    // solve cartan * c = w
    Mat a(n, Vec(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a[i][j] = Rat(cartan[i][j]);
    auto c = solve(a, w);
    assert(c);
    return *c;
  }

  // invariant form on weights given in root coordinates
  Rat form_rc(const Vec& a, const Vec& b) const {
    Rat s = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) s += a[i] * form[i][j] * b[j];
    return s;
  }
  Rat form_rc(const RootVec& a, const RootVec& b) const {
    Vec x(a.begin(), a.end()), y(b.begin(), b.end());
    return form_rc(x, y);
  }
  // invariant form on weights in fundamental-weight coords
  Rat form_fw(const Weight& a, const Weight& b) const {
    return form_rc(root_coords(a), root_coords(b));
  }
  Rat norm2_root(const RootVec& a) const { return form_rc(a, a); }

  // simple reflection on root coordinates
  RootVec reflect_rc(int i, const RootVec& v) const {
    RootVec r = v;
    r[i] -= (int)croot_pair(v, i);
    return r;
  }
  // simple reflection on fundamental-weight coordinates
  Weight reflect_fw(int i, const Weight& w) const {
    Weight r = w;
    for (int j = 0; j < n; ++j) r[j] -= w[i] * Rat(cartan[j][i]);
    return r;
  }

  // w = s_{word[0]} s_{word[1]} ... ; act(w, v) applies rightmost first.
  Weight act(const WeylWord& word, Weight w) const {
    for (auto it = word.rbegin(); it != word.rend(); ++it) w = reflect_fw(*it, w);
    return w;
  }
  RootVec act_rc(const WeylWord& word, RootVec v) const {
    for (auto it = word.rbegin(); it != word.rend(); ++it) v = reflect_rc(*it, v);
    return v;
  }
  Weight inv_act(const WeylWord& word, Weight w) const {
    for (int i : word) w = reflect_fw(i, w);
    return w;
  }
  RootVec inv_act_rc(const WeylWord& word, RootVec v) const {
    for (int i : word) v = reflect_rc(i, v);
    return v;
  }

  // N(w) = { beta in Delta+ : w^{-1}(beta) < 0 }, by the definition.
  std::vector<RootVec> inversion_set(const WeylWord& word) const {
    std::vector<RootVec> out;
    for (auto& b : pos) {
      RootVec img = inv_act_rc(word, b);
      bool neg = true;
      for (int c : img) neg = neg && c <= 0;
      if (neg) out.push_back(b);
    }
    return out;
  }

  // N(w) computed incrementally along the word: {a_{i1}, s_{i1} a_{i2}, ...}.
  // Coincides with inversion_set for reduced words.
  std::vector<RootVec> inversion_set_incremental(const WeylWord& word) const {
    std::vector<RootVec> out;
    WeylWord prefix;
    for (int i : word) {
      RootVec a(n, 0);
      a[i] = 1;
      out.push_back(act_rc(prefix, a));
      prefix.push_back(i);
    }
    return out;
  }

  WeylWord longest_word() const {
    Weight lam(n, Rat(1));  // rho
    std::vector<int> picks;
    bool moved = true;
    while (moved) {
      moved = false;
      for (int i = 0; i < n; ++i) {
        if (lam[i] > 0) {
          lam = reflect_fw(i, lam);
          picks.push_back(i);
          moved = true;
          break;
        }
      }
    }
    // lam = -rho now; w0 = s_{i_k} ... s_{i_1}
    return WeylWord(picks.rbegin(), picks.rend());
  }

  // lambda* = -w0(lambda)
  Weight lambda_star(const Weight& w) const {
    Weight r = act(longest_word(), w);
    for (auto& x : r) x = -x;
    return r;
  }

  std::set<int> minuscule_nodes() const {
    std::set<int> j;
    for (int i = 0; i < n; ++i)
      if (marks[i] == 1) j.insert(i);
    return j;
  }

  // Independent derivation of the dual Coxeter number from the trace form:
  // (1/2) sum_{alpha in Delta+} alpha(theta^vee)^2, with theta^vee = theta.
  Rat hvee_trace() const {
    Rat s = 0;
    for (auto& a : pos) {
      Rat v = form_rc(a, theta);  // alpha(theta^vee) = 2(alpha,theta)/(theta,theta) = (alpha,theta)
      s += v * v;
    }
    return s / 2;
  }

  Weight rho() const { return Weight(n, Rat(1)); }

  static RootSystem build(SimpleType t);
};

namespace detail {

struct DiagramData {
  std::vector<std::pair<int, int>> edges;
  std::vector<Rat> halfnorm;
};

inline DiagramData diagram_of(SimpleType t) {
  int n = t.rank;
  DiagramData d;
  d.halfnorm.assign(n, Rat(1));
  auto chain = [&](int upto) {
    for (int i = 0; i + 1 < upto; ++i) d.edges.push_back({i, i + 1});
  };
  switch (t.fam) {
    case 'A': chain(n); break;
    case 'B':
      chain(n);
      d.halfnorm[n - 1] = Rat(1, 2);
      break;
    case 'C':
      chain(n);
      for (int i = 0; i < n - 1; ++i) d.halfnorm[i] = Rat(1, 2);
      break;
    case 'D':
      chain(n - 1);
      d.edges.push_back({n - 3, n - 1});
      break;
    case 'E':
      chain(n - 1);
      d.edges.push_back({t.rank == 8 ? 4 : 2, n - 1});
      break;
    case 'F':
      chain(4);
      d.halfnorm[2] = d.halfnorm[3] = Rat(1, 2);
      break;
    case 'G':
      chain(2);
      d.halfnorm[1] = Rat(1, 3);
      break;
  }
  return d;
}

}  // namespace detail

inline RootSystem RootSystem::build(SimpleType t) {
  t.validate();
  RootSystem rs;
  rs.type = t;
  rs.n = t.rank;
  int n = rs.n;
  auto dd = detail::diagram_of(t);
  rs.halfnorm = dd.halfnorm;

  rs.cartan.assign(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) rs.cartan[i][i] = 2;
  for (auto [i, j] : dd.edges) {
    Rat ip = -std::max(rs.halfnorm[i], rs.halfnorm[j]);  // (alpha_i, alpha_j)
    Rat aij = ip / rs.halfnorm[i];
    Rat aji = ip / rs.halfnorm[j];
    assert(is_integer(aij) && is_integer(aji));
    rs.cartan[i][j] = (int)to_long(aij);
    rs.cartan[j][i] = (int)to_long(aji);
  }

  rs.form = mat_zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) rs.form[i][j] = rs.halfnorm[i] * Rat(rs.cartan[i][j]);
  rs.form_inv = inverse(rs.form);

  // generate positive roots by height using root strings
  std::set<RootVec> all;
  for (int i = 0; i < n; ++i) {
    RootVec a(n, 0);
    a[i] = 1;
    all.insert(a);
  }
  std::vector<RootVec> frontier(all.begin(), all.end());
  while (!frontier.empty()) {
    std::vector<RootVec> next;
    for (auto& b : frontier) {
      for (int i = 0; i < n; ++i) {
        // p = max k with b - k alpha_i a root (or b - k alpha_i = 0 treated as stop)
        long p = 0;
        RootVec down = b;
        while (true) {
          down[i] -= 1;
          bool zero = true, nonneg = true;
          for (int c : down) {
            zero = zero && c == 0;
            nonneg = nonneg && c >= 0;
          }
          if (zero || !nonneg || !all.count(down)) break;
          ++p;
        }
        long q_pair = 0;
        for (int j = 0; j < n; ++j) q_pair += (long)rs.cartan[i][j] * b[j];
        if (p - q_pair > 0) {
          RootVec up = b;
          up[i] += 1;
          if (!all.count(up)) {
            all.insert(up);
            next.push_back(up);
          }
        }
      }
    }
    frontier = next;
  }
  rs.pos.assign(all.begin(), all.end());
  std::sort(rs.pos.begin(), rs.pos.end(), [](const RootVec& a, const RootVec& b) {
    long ha = detail::height(a), hb = detail::height(b);
    if (ha != hb) return ha < hb;
    return a < b;
  });
  for (size_t i = 0; i < rs.pos.size(); ++i) rs.pos_index[rs.pos[i]] = (int)i;

  rs.theta = rs.pos.back();
  assert(rs.norm2_root(rs.theta) == 2);
  rs.marks = rs.theta;
  rs.comarks.resize(n);
  long csum = 0;
  for (int i = 0; i < n; ++i) {
    Rat cm = Rat(rs.marks[i]) * rs.halfnorm[i];
    assert(is_integer(cm));
    rs.comarks[i] = (int)to_long(cm);
    csum += rs.comarks[i];
  }
  rs.hvee = 1 + csum;
  return rs;
}

// ---------------------------------------------------------------------------
// Classification of a connected Dynkin (sub)diagram given by an integer
// Cartan matrix. Returns the simple type and the map std position -> node,
// where "std position" is the 0-based Kac numbering above.

struct ClassifiedComponent {
  SimpleType type;
  std::vector<int> std_to_orig;
};

// cart: full square integer Cartan matrix over some node universe;
// comp: the node ids of one connected component.
inline ClassifiedComponent classify_component(const std::vector<std::vector<int>>& cart,
                                              const std::vector<int>& comp) {
  int k = (int)comp.size();
  auto a = [&](int x, int y) { return cart[comp[x]][comp[y]]; };
  if (k == 1) return {{'A', 1}, {comp[0]}};

  std::vector<std::vector<int>> adj(k);
  int triple = -1;
  std::vector<std::pair<int, int>> doubles;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      if (i == j || a(i, j) == 0) continue;
      adj[i].push_back(j);
      if (i < j) {
        int m = a(i, j) * a(j, i);
        if (m == 3) triple = i;
        if (m == 2) doubles.push_back({i, j});
      }
    }

  auto result = [&](SimpleType t, const std::vector<int>& order) {
    std::vector<int> m;
    for (int p : order) m.push_back(comp[p]);
    return ClassifiedComponent{t, m};
  };

  if (triple >= 0) {
    assert(k == 2);
    // long node has row entry -1
    int lo = a(0, 1) == -1 ? 0 : 1;
    return result({'G', 2}, {lo, 1 - lo});
  }

  // walk the diagram as a chain if max degree <= 2
  auto chain_order = [&]() -> std::vector<int> {
    int end = -1;
    for (int i = 0; i < k; ++i)
      if (adj[i].size() == 1) end = i;
    assert(end >= 0);
    std::vector<int> order{end};
    int prev = -1, cur = end;
    while ((int)order.size() < k) {
      int nxt = -1;
      for (int x : adj[cur])
        if (x != prev) nxt = x;
      assert(nxt >= 0);
      order.push_back(nxt);
      prev = cur;
      cur = nxt;
    }
    return order;
  };

  if (!doubles.empty()) {
    assert(doubles.size() == 1);
    auto order = chain_order();
    // locate double edge along the chain
    int pos = -1;
    for (int i = 0; i + 1 < k; ++i) {
      int m = a(order[i], order[i + 1]) * a(order[i + 1], order[i]);
      if (m == 2) pos = i;
    }
    assert(pos >= 0);
    if (pos == 0) {
      std::reverse(order.begin(), order.end());
      pos = k - 2;
    }
    if (pos == k - 2) {
      // B if the far endpoint is the short root (its own row entry is -2)
      int e = order[k - 1], p = order[k - 2];
      if (a(e, p) == -2) return result({'B', k}, order);
      assert(a(p, e) == -2);
      return result({'C', k}, order);
    }
    // middle double edge: F4
    assert(k == 4 && pos == 1);
    if (a(order[1], order[2]) == -1) return result({'F', 4}, order);
    std::reverse(order.begin(), order.end());
    assert(a(order[1], order[2]) == -1);
    return result({'F', 4}, order);
  }

  // simply laced: A, D or E
  int branch = -1;
  for (int i = 0; i < k; ++i)
    if (adj[i].size() >= 3) branch = i;
  if (branch < 0) {
    auto order = chain_order();
    if (comp[order.front()] > comp[order.back()]) std::reverse(order.begin(), order.end());
    return result({'A', k}, order);
  }

  assert(adj[branch].size() == 3);
  // collect the three arms (walking away from the branch node)
  std::vector<std::vector<int>> arms;
  for (int s : adj[branch]) {
    std::vector<int> arm{s};
    int prev = branch, cur = s;
    while (adj[cur].size() == 2) {
      int nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
      arm.push_back(nxt);
      prev = cur;
      cur = nxt;
    }
    arms.push_back(arm);
  }
  std::sort(arms.begin(), arms.end(), [&](auto& x, auto& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return comp[x.front()] < comp[y.front()];
  });
  size_t l0 = arms[0].size(), l1 = arms[1].size(), l2 = arms[2].size();

  if (l0 == 1 && l1 == 1) {
    // D_k: long arm reversed, then branch, then the two fork nodes
    std::vector<int> order(arms[2].rbegin(), arms[2].rend());
    order.push_back(branch);
    int f1 = arms[0][0], f2 = arms[1][0];
    if (comp[f1] > comp[f2]) std::swap(f1, f2);
    order.push_back(f1);
    order.push_back(f2);
    return result({'D', k}, order);
  }

  // E types: arms (1, 2, k-3). In the frozen numbering the arm *preceding*
  // the branch node has length 2 for E6/E7 but length 4 for E8.
  assert(l0 == 1 && l1 == 2 && l2 == (size_t)k - 3 && k >= 6 && k <= 8);
  auto& before = k == 8 ? arms[2] : arms[1];
  auto& after = k == 8 ? arms[1] : arms[2];
  std::vector<int> order(before.rbegin(), before.rend());
  order.push_back(branch);
  for (int x : after) order.push_back(x);
  order.push_back(arms[0][0]);
  return result({'E', k}, order);
}

// Connected components of a node subset of a Cartan matrix.
inline std::vector<std::vector<int>> diagram_components(
    const std::vector<std::vector<int>>& cart, const std::vector<int>& nodes) {
  std::set<int> left(nodes.begin(), nodes.end());
  std::vector<std::vector<int>> comps;
  while (!left.empty()) {
    std::vector<int> stack{*left.begin()}, comp;
    left.erase(left.begin());
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      comp.push_back(x);
      for (int y : std::vector<int>(left.begin(), left.end()))
        if (cart[x][y] != 0) {
          left.erase(y);
          stack.push_back(y);
        }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(comp);
  }
  std::sort(comps.begin(), comps.end());
  return comps;
}

}  // namespace lieconf
