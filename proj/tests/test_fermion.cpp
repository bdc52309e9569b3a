// Tests for the free-fermion lambda-bracket engine: the symbolic Wick
// recursion, the Clifford-module oracle, the Virasoro element, the Theta
// embedding of so(A), and the factorial determinants.

#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <random>
#include <vector>

#include "lieconf/fermion.hpp"

using namespace lieconf;

namespace {

Mat mat_add(Mat a, const Mat& b) {
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[i].size(); ++j) a[i][j] += b[i][j];
  return a;
}
Mat mat_sub(Mat a, const Mat& b) {
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[i].size(); ++j) a[i][j] -= b[i][j];
  return a;
}
Mat comm(const Mat& x, const Mat& y) {
  return mat_sub(mat_mul(x, y), mat_mul(y, x));
}
Rat trace(const Mat& a) {
  Rat t = 0;
  for (size_t i = 0; i < a.size(); ++i) t += a[i][i];
  return t;
}
// basis element B^{-1}(E_ij - E_ji) of so(B)
Mat so_elem(const FermionSpace& v, int i, int j) {
  Mat w = mat_zero(v.dim(), v.dim());
  w[i][j] = 1;
  w[j][i] = -1;
  return mat_mul(v.dual, w);
}

NOExpr vac(const Rat& c = Rat(1)) { return no_vacuum(c); }

// the product of staircases :T^0(x_i)...T^{n_i}(x_i): across hyperbolic
// pairs; ys selects the partner generators 2i+1
NOKey stair_key(const std::vector<long>& ns, bool ys) {
  NOKey k;
  for (size_t i = 0; i < ns.size(); ++i)
    for (long d = 0; d <= ns[i]; ++d)
      k.push_back({2 * (int)i + (ys ? 1 : 0), (int)d});
  return k;
}

Rat cprod(long n) {  // prod_{i=0}^n (i!)^2
  Rat c = 1;
  for (long i = 0; i <= n; ++i) {
    Rat f = Rat(factorial(i));
    c *= f * f;
  }
  return c;
}

// every canonical monomial key with derivative order <= maxd and doubled
// weight <= maxw2 (the vacuum key included)
std::vector<NOKey> keys_up_to(int dim, int maxd, long maxw2) {
  std::vector<NOFactor> pool;
  for (int g = 0; g < dim; ++g)
    for (int d = 0; d <= maxd; ++d) pool.push_back({g, d});
  std::vector<NOKey> out;
  NOKey cur;
  std::function<void(size_t, long)> rec = [&](size_t start, long w2) {
    out.push_back(cur);
    for (size_t i = start; i < pool.size(); ++i) {
      long w = 2 * pool[i].second + 1;
      if (w2 + w > maxw2) continue;
      cur.push_back(pool[i]);
      rec(i + 1, w2 + w);
      cur.pop_back();
    }
  };
  rec(0, 0);
  return out;
}

// incremental row-rank tracker over the rationals
struct RankTracker {
  size_t cols;
  std::vector<std::pair<size_t, Vec>> rows;  // (pivot column, reduced row)
  explicit RankTracker(size_t c) : cols(c) {}
  size_t rank() const { return rows.size(); }
  void add(Vec v) {
    for (const auto& [p, w] : rows) {
      if (v[p] == 0) continue;
      Rat f = v[p];
      for (size_t i = 0; i < cols; ++i) v[i] -= f * w[i];
    }
    size_t p = cols;
    for (size_t i = 0; i < cols; ++i)
      if (v[i] != 0) {
        p = i;
        break;
      }
    if (p == cols) return;
    Rat f = v[p];
    for (auto& x : v) x /= f;
    rows.push_back({p, std::move(v)});
  }
};

}  // namespace

TEST_CASE("canonical normal ordering") {
  SECTION("transposition signs and vanishing repeats") {
    REQUIRE(no_term({{1, 0}, {0, 0}}) == no_term({{0, 0}, {1, 0}}, -1));
    REQUIRE(no_term({{0, 1}, {0, 0}}) == no_term({{0, 0}, {0, 1}}, -1));
    REQUIRE(no_term({{0, 0}, {0, 0}}).zero());
    REQUIRE(no_term({{0, 0}, {1, 0}, {0, 0}}).zero());
    REQUIRE(weight2({{0, 0}}) == 1);
    REQUIRE(weight2({{0, 1}, {1, 0}}) == 4);  // conformal weight 2
    REQUIRE(no_staircase(0, 2) == no_term({{0, 0}, {0, 1}, {0, 2}}));
  }
  SECTION("T acts as a derivation") {
    NOExpr e = no_term({{0, 0}, {1, 0}});
    REQUIRE(apply_T(e) ==
            no_term({{0, 1}, {1, 0}}) + no_term({{0, 0}, {1, 1}}));
    REQUIRE(apply_T(no_vacuum()).zero());
    REQUIRE(apply_T_div(no_gen(0), 3) == no_term({{0, 3}}, rat(1, 6)));
  }
  SECTION("pairing validation") {
    REQUIRE_THROWS_AS(FermionSpace::make({{1, 0}}), std::invalid_argument);
    REQUIRE_THROWS_AS(FermionSpace::make({{0, 1}, {2, 0}}),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(FermionSpace::make({{1, 1}, {1, 1}}),
                      std::invalid_argument);
  }
}

TEST_CASE("pair brackets of generators") {
  FermionSpace v = FermionSpace::hyperbolic(1);
  SECTION("base case") {
    LambdaPoly p = bracket_symbolic(v, no_gen(0), no_gen(1));
    REQUIRE(p.degree() == 0);
    REQUIRE(p.coeff(0) == vac());
    // the lambda^(n) coefficient is the n-th product
    REQUIRE(expr_of(apply_modes(v, state_of(no_gen(0)), 0,
                                state_of(no_gen(1)))) == vac());
    REQUIRE(bracket_symbolic(v, no_gen(0), no_gen(0)).zero());
    FermionSpace e = FermionSpace::euclidean(2);
    REQUIRE(bracket_symbolic(e, no_gen(0), no_gen(0)).coeff(0) == vac());
    REQUIRE(bracket_symbolic(e, no_gen(0), no_gen(1)).zero());
  }
  SECTION("derivatives of generators") {
    for (int n = 0; n <= 3; ++n)
      for (int m = 0; m + n <= 3; ++m) {
        // [T^n(x)_l T^m(y)] = (-1)^n (m+n)! l^((m+n)) (x,y)
        Rat c = Rat(factorial(n + m));
        if (n % 2) c = -c;
        LambdaPoly expect;
        expect.add(n + m, vac(c));
        REQUIRE(bracket_symbolic(v, no_gen(0, n), no_gen(1, m)) == expect);
        REQUIRE(bracket_oracle(v, state_of(no_gen(0, n)),
                               state_of(no_gen(1, m))) == expect);
      }
  }
  SECTION("sesquilinearity") {
    FermionSpace h2 = FermionSpace::hyperbolic(2);
    std::vector<NOKey> keys = {{{0, 0}},
                               {{0, 1}},
                               {{0, 0}, {1, 0}},
                               {{0, 0}, {1, 1}},
                               {{1, 0}, {2, 0}, {3, 0}}};
    for (const NOKey& ka : keys)
      for (const NOKey& kb : keys) {
        NOExpr a = no_term(ka), b = no_term(kb);
        LambdaPoly p = bracket_symbolic(h2, a, b);
        LambdaPoly q = bracket_symbolic(h2, apply_T(a), b);
        LambdaPoly r = bracket_symbolic(h2, a, apply_T(b));
        int top = std::max(p.degree(), std::max(q.degree(), r.degree())) + 1;
        REQUIRE(q.coeff(0).zero());
        for (int u = 0; u <= top; ++u) {
          // [Ta_l b] = -l [a_l b]
          if (u >= 1) REQUIRE(q.coeff(u) == Rat(-u) * p.coeff(u - 1));
          // [a_l Tb] = (l + T)[a_l b]
          NOExpr want = apply_T(p.coeff(u));
          if (u >= 1) want += Rat(u) * p.coeff(u - 1);
          REQUIRE(r.coeff(u) == want);
        }
      }
  }
}

TEST_CASE("a derivative field against a train of derivatives") {
  FermionSpace v = FermionSpace::hyperbolic(1);
  SECTION("two-factor example") {
    // [y_l :x T(x):] = l^(0) T(x) - l^(1) x
    LambdaPoly p = bracket_symbolic(v, no_gen(1), no_term({{0, 0}, {0, 1}}));
    LambdaPoly expect;
    expect.add(0, no_gen(0, 1));
    expect.add(1, no_term({{0, 0}}, -1));
    REQUIRE(p == expect);
  }
  SECTION("alternating contraction sum") {
    // [T^n(y)_l :T^{d1}(x)...T^{dk}(x):]
    //   = sum_i (-1)^{i+1} (-l)^n l^{d_i} : ... hat_i ... :
    std::vector<std::vector<int>> trains = {{0, 1},    {0, 2},    {1, 2},
                                            {0, 1, 2}, {0, 1, 3}, {0, 1, 2, 3}};
    for (int n = 0; n <= 2; ++n)
      for (const auto& tr : trains) {
        NOKey bk;
        for (int d : tr) bk.push_back({0, d});
        LambdaPoly expect;
        for (size_t i = 0; i < tr.size(); ++i) {
          NOKey hat;
          for (size_t j = 0; j < tr.size(); ++j)
            if (j != i) hat.push_back({0, tr[j]});
          Rat c = Rat(factorial(n + tr[i]));
          if ((n + (int)i) % 2) c = -c;
          expect.add(n + tr[i], no_term(hat, c));
        }
        REQUIRE(bracket_symbolic(v, no_gen(1, n), no_term(bk)) == expect);
        REQUIRE(bracket_oracle(v, state_of(no_gen(1, n)),
                               state_of(no_term(bk))) == expect);
      }
  }
}

TEST_CASE("wedge products of paired generators") {
  // [:x1...xk:_l :y1...yk:] starts (-1)^[k/2] (|0> l^(k-1)
  //                                            + l^(k-2) sum :xi yi:)
  for (int k = 2; k <= 5; ++k) {
    FermionSpace v = FermionSpace::hyperbolic(k);
    NOKey ak, bk;
    for (int i = 0; i < k; ++i) {
      ak.push_back({2 * i, 0});
      bk.push_back({2 * i + 1, 0});
    }
    LambdaPoly p = bracket_symbolic(v, no_term(ak), no_term(bk));
    int sgn = (k / 2) % 2 ? -1 : 1;
    NOExpr diag;
    for (int i = 0; i < k; ++i)
      diag += no_term({{2 * i, 0}, {2 * i + 1, 0}}, sgn);
    REQUIRE(p.coeff(k - 1) == vac(sgn));
    REQUIRE(p.coeff(k - 2) == diag);
    REQUIRE(p == bracket_oracle(v, state_of(no_term(ak)),
                                state_of(no_term(bk))));
    if (k == 2) {
      LambdaPoly full;
      full.add(1, vac(-1));
      full.add(0, diag);
      REQUIRE(p == full);
    }
  }
}

TEST_CASE("staircase products") {
  SECTION("one hyperbolic pair") {
    FermionSpace v = FermionSpace::hyperbolic(1);
    NOExpr xy = no_term({{0, 0}, {1, 0}});
    // n = 1: N = 3, leading (0!1!)^2 = 1, then 2 :x y:
    LambdaPoly p = bracket_oracle(v, state_of(no_staircase(0, 1)),
                                  state_of(no_staircase(1, 1)));
    REQUIRE(p.degree() == 3);
    REQUIRE(p.coeff(3) == vac(1));
    REQUIRE(p.coeff(2) == Rat(2) * xy);
    REQUIRE(p == bracket_symbolic(v, no_staircase(0, 1), no_staircase(1, 1)));
    // n = 2: N = 8, leading (0!1!2!)^2 = 4, then 4*3 :x y:
    LambdaPoly q = bracket_oracle(v, state_of(no_staircase(0, 2)),
                                  state_of(no_staircase(1, 2)));
    REQUIRE(q.degree() == 8);
    REQUIRE(q.coeff(8) == vac(cprod(2)));
    REQUIRE(q.coeff(7) == (cprod(2) * 3) * xy);
    // n = 3: N = 15, leading (0!1!2!3!)^2 = 144, then 144*4 :x y:
    LambdaPoly r = bracket_oracle(v, state_of(no_staircase(0, 3)),
                                  state_of(no_staircase(1, 3)));
    REQUIRE(r.degree() == 15);
    REQUIRE(r.coeff(15) == vac(cprod(3)));
    REQUIRE(r.coeff(14) == (cprod(3) * 4) * xy);
  }
  SECTION("several hyperbolic pairs") {
    std::vector<std::vector<long>> samples = {{0, 1}, {1, 0},    {1, 2},
                                              {2, 2}, {0, 1, 2}, {3, 1},
                                              {1, 1, 1}};
    for (const auto& ns : samples) {
      int k = (int)ns.size();
      FermionSpace v = FermionSpace::hyperbolic(k);
      NOExpr a = no_term(stair_key(ns, false));
      NOExpr b = no_term(stair_key(ns, true));
      long nn = -1;
      for (long n : ns) nn += (n + 1) * (n + 1);
      int sgn = 1;
      for (size_t i = 0; i < ns.size(); ++i)
        for (size_t j = i + 1; j < ns.size(); ++j)
          if (((ns[i] + 1) * (ns[j] + 1)) % 2) sgn = -sgn;
      Rat c = sgn;
      for (long n : ns) c *= cprod(n);
      LambdaPoly p = bracket_oracle(v, state_of(a), state_of(b));
      INFO("staircase profile size " << k);
      REQUIRE(p.degree() == nn);
      REQUIRE(p.coeff((int)nn) == vac(c));
      NOExpr second;
      for (int i = 0; i < k; ++i)
        second += no_term({{2 * i, 0}, {2 * i + 1, 0}}, c * Rat(ns[i] + 1));
      REQUIRE(p.coeff((int)nn - 1) == second);
    }
    // deep case through the symbolic engine as well
    std::vector<long> ns = {1, 2};
    FermionSpace v = FermionSpace::hyperbolic(2);
    NOExpr a = no_term(stair_key(ns, false));
    NOExpr b = no_term(stair_key(ns, true));
    REQUIRE(bracket_symbolic(v, a, b) ==
            bracket_oracle(v, state_of(a), state_of(b)));
  }
}

TEST_CASE("factorial determinants") {
  SECTION("input validation and conventions") {
    REQUIRE_THROWS_AS(det_C({0}, {0, 1}), std::invalid_argument);
    REQUIRE(det_C({}, {}) == 0);
    REQUIRE(det_C({0}, {0}) == 1);
    REQUIRE(det_C({1}, {0}) == -1);  // (-1)^1 (0+1)!
    REQUIRE(det_C({0, 1}, {0, 1}) == -1);
  }
  SECTION("closed forms") {
    REQUIRE(det(Mat{{1, 1}, {1, 2}}) == 1);   // det((i+j)!), 0 <= i,j <= 1
    REQUIRE(det(Mat{{2, 6}, {6, 24}}) == 12);  // det((i+j)!), 1 <= i,j <= 2
    for (long n = 1; n <= 4; ++n) {
      std::vector<long> full, tail;
      for (long i = 0; i <= n; ++i) full.push_back(i);
      for (long i = 1; i <= n; ++i) tail.push_back(i);
      Rat pf = 1;  // prod_{i=1}^n (i!)^2
      for (long i = 1; i <= n; ++i) {
        Rat f = Rat(factorial(i));
        pf *= f * f;
      }
      Rat sgn = ((n * (n + 1) / 2) % 2) ? -1 : 1;
      REQUIRE(det_C(full, full) == sgn * pf);
      REQUIRE(det_C(tail, tail) == sgn * Rat(n + 1) * pf);
    }
  }
}

TEST_CASE("Fock realization") {
  FermionSpace v = FermionSpace::hyperbolic(2);
  SECTION("mode dictionary") {
    FockState e1;
    e1.add({{0, 0}}, 1);
    REQUIRE(state_of(no_gen(0)) == e1);
    FockState e2;
    e2.add({{0, 2}}, 2);  // T^2(x) = 2! x_(-3)
    REQUIRE(state_of(no_gen(0, 2)) == e2);
    NOExpr mixed = no_term({{0, 1}, {1, 2}}, rat(3, 7));
    REQUIRE(expr_of(state_of(mixed)) == mixed);
  }
  SECTION("creation property") {
    std::vector<NOKey> keys = {
        {{0, 0}}, {{0, 1}}, {{0, 0}, {1, 0}}, {{0, 0}, {0, 1}, {2, 2}}};
    for (const NOKey& k : keys) {
      FockState a = state_of(no_term(k));
      REQUIRE(apply_modes(v, a, -1, fock_vacuum()) == a);
      for (long n = 0; n <= 4; ++n)
        REQUIRE(apply_modes(v, a, n, fock_vacuum()).zero());
    }
  }
  SECTION("mode anticommutators") {
    FockState b;
    b.add({{0, 0}, {1, 1}}, 1);
    b.add({{2, 0}, {3, 0}}, 2);
    for (int g = 0; g < 4; ++g)
      for (int h = 0; h < 4; ++h)
        for (long m = -2; m <= 1; ++m)
          for (long n = -2; n <= 1; ++n) {
            FockState lhs = apply_gen_mode(v, g, m, apply_gen_mode(v, h, n, b));
            lhs += apply_gen_mode(v, h, n, apply_gen_mode(v, g, m, b));
            FockState want = b;
            want *= (m + n == -1) ? v.pair(g, h) : Rat(0);
            REQUIRE(lhs == want);
          }
  }
  SECTION("translation operator") {
    NOExpr e = no_term({{0, 0}, {1, 1}}, 3) + no_term({{2, 2}}, rat(1, 2));
    REQUIRE(state_of(apply_T(e)) == state_T(state_of(e)));
    REQUIRE(state_T(fock_vacuum()).zero());
  }
}

TEST_CASE("symbolic bracket matches the Clifford oracle") {
  std::mt19937 rng(20260814);
  std::vector<FermionSpace> spaces;
  spaces.push_back(FermionSpace::hyperbolic(1));
  spaces.push_back(FermionSpace::hyperbolic(2));
  spaces.push_back(FermionSpace::hyperbolic(3));
  spaces.push_back(FermionSpace::euclidean(2));
  spaces.push_back(FermionSpace::euclidean(5));
  spaces.push_back(FermionSpace::make({{1, 1, 0}, {1, 0, 2}, {0, 2, 1}}));
  std::vector<std::vector<NOKey>> keylists;
  for (const auto& sp : spaces) {
    std::vector<NOKey> ks = keys_up_to(sp.dim(), 2, 9);
    std::vector<NOKey> nonempty;
    for (auto& k : ks)
      if (!k.empty()) nonempty.push_back(std::move(k));
    keylists.push_back(std::move(nonempty));
  }
  int done = 0;
  while (done < 200) {
    size_t si = rng() % spaces.size();
    const FermionSpace& v = spaces[si];
    const auto& keys = keylists[si];
    const NOKey& ka = keys[rng() % keys.size()];
    const NOKey& kb = keys[rng() % keys.size()];
    if (weight2(ka) + weight2(kb) > 12) continue;  // total weight <= 6
    NOExpr a = no_term(ka), b = no_term(kb);
    LambdaPoly sym = bracket_symbolic(v, a, b);
    LambdaPoly orc = bracket_oracle(v, state_of(a), state_of(b));
    INFO("space " << si << " pair " << a.str() << " ; " << b.str());
    REQUIRE(sym == orc);
    // skew-symmetry [b_l a] = -p(a,b) [a_{-l-T} b]
    LambdaPoly ba = bracket_symbolic(v, b, a);
    LambdaPoly skw = subst_minus_lambda_T(sym);
    int p = (ka.size() % 2 && kb.size() % 2) ? -1 : 1;
    skw *= Rat(-p);
    REQUIRE(ba == skw);
    ++done;
  }
}

TEST_CASE("Jacobi identity") {
  std::vector<FermionSpace> spaces;
  spaces.push_back(FermionSpace::hyperbolic(2));
  spaces.push_back(FermionSpace::euclidean(3));
  spaces.push_back(FermionSpace::make({{1, 1, 0}, {1, 0, 2}, {0, 2, 1}}));
  SECTION("single-generator triples") {
    std::mt19937 rng(4711);
    for (int trial = 0; trial < 30; ++trial) {
      const FermionSpace& v = spaces[rng() % spaces.size()];
      auto pick = [&]() {
        return no_gen((int)(rng() % v.dim()), (int)(rng() % 4));
      };
      NOExpr a = pick(), b = pick(), c = pick();
      INFO(a.str() << " ; " << b.str() << " ; " << c.str());
      REQUIRE(jacobi_defect(v, a, b, c).zero());
    }
  }
  SECTION("composite triples") {
    const FermionSpace& v = spaces[0];
    NOExpr a = no_term({{0, 0}, {1, 0}});
    NOExpr b = no_term({{0, 0}, {1, 1}});
    NOExpr c = no_term({{2, 0}, {3, 0}});
    NOExpr d = no_gen(1);
    REQUIRE(jacobi_defect(v, a, b, d).zero());
    REQUIRE(jacobi_defect(v, a, d, b).zero());
    REQUIRE(jacobi_defect(v, d, a, b).zero());
    REQUIRE(jacobi_defect(v, a, b, c).zero());
    REQUIRE(jacobi_defect(v, a, c, no_term({{0, 1}, {2, 0}})).zero());
  }
}

TEST_CASE("top weight bound for unbalanced trains") {
  // when h < k and the bracket is nonzero, its leading coefficient has
  // conformal weight >= min(m_i) + 1/2
  FermionSpace v = FermionSpace::hyperbolic(1);
  std::mt19937 rng(99);
  int checked = 0;
  while (checked < 25) {
    int h = 1 + (int)(rng() % 2);
    int k = h + 1 + (int)(rng() % (3 - h));
    auto distinct = [&](int count) {
      std::vector<int> all = {0, 1, 2, 3};
      for (int i = 3; i > 0; --i) std::swap(all[i], all[rng() % (i + 1)]);
      std::vector<int> out(all.begin(), all.begin() + count);
      std::sort(out.begin(), out.end());
      return out;
    };
    std::vector<int> n = distinct(h), m = distinct(k);
    NOKey ak, bk;
    for (int d : n) ak.push_back({0, d});
    for (int d : m) bk.push_back({1, d});
    LambdaPoly p =
        bracket_oracle(v, state_of(no_term(ak)), state_of(no_term(bk)));
    if (p.zero()) continue;
    long top2 = weight2(ak) + weight2(bk) - 2 * p.degree() - 2;
    REQUIRE(top2 >= 2 * m[0] + 1);
    ++checked;
  }
}

TEST_CASE("only zero annihilates a nonzero state") {
  // over the whole weight <= 3 slice, the joint kernel of a -> a_(n) b is
  // trivial for a nonzero b
  std::mt19937 rng(31337);
  std::vector<FermionSpace> spaces;
  spaces.push_back(FermionSpace::hyperbolic(2));
  spaces.push_back(FermionSpace::euclidean(3));
  for (const FermionSpace& v : spaces) {
    std::vector<NOKey> cols = keys_up_to(v.dim(), 2, 6);
    std::vector<NOKey> bkeys = keys_up_to(v.dim(), 1, 5);
    FockState b;
    b.add(bkeys[1 + rng() % (bkeys.size() - 1)], 1);
    b.add(bkeys[1 + rng() % (bkeys.size() - 1)], 2);
    REQUIRE(!b.zero());
    long nmax = (6 + b.max_energy2()) / 2;
    // rows indexed by (mode, output monomial); columns by the weight slice
    std::map<std::pair<long, ModeKey>, Vec> rows;
    for (size_t c = 0; c < cols.size(); ++c) {
      FockState a = state_of(no_term(cols[c]));
      for (long n = -3; n <= nmax; ++n) {
        FockState r = apply_modes(v, a, n, b);
        for (const auto& [k, coef] : r.t) {
          auto it = rows.find({n, k});
          if (it == rows.end())
            it = rows.emplace(std::make_pair(n, k), Vec(cols.size(), Rat(0)))
                     .first;
          it->second[c] = coef;
        }
      }
    }
    RankTracker tr(cols.size());
    for (auto& [key, row] : rows) {
      if (tr.rank() == cols.size()) break;
      tr.add(std::move(row));
    }
    REQUIRE(tr.rank() == cols.size());
  }
}

TEST_CASE("Virasoro structure") {
  SECTION("bracket shape and central charge") {
    std::vector<FermionSpace> spaces;
    spaces.push_back(FermionSpace::euclidean(3));
    spaces.push_back(FermionSpace::hyperbolic(2));
    for (const FermionSpace& v : spaces) {
      NOExpr w = virasoro(v);
      LambdaPoly p = bracket_oracle(v, state_of(w), state_of(w));
      REQUIRE(p.coeff(0) == apply_T(w));
      REQUIRE(p.coeff(1) == Rat(2) * w);
      REQUIRE(p.coeff(2).zero());
      REQUIRE(p.degree() == 3);
      REQUIRE(p.coeff(3) == vac(Rat(v.dim()) / 4));  // c/2 with c = dim/2
      REQUIRE(fermion_central_charge(v) == Rat(v.dim()) / 2);
      REQUIRE(p == bracket_symbolic(v, w, w));
    }
    REQUIRE(fermion_central_charge(FermionSpace::euclidean(3)) == rat(3, 2));
  }
  SECTION("conformal weights") {
    FermionSpace v = FermionSpace::hyperbolic(1);
    REQUIRE(conformal_weight(v, no_vacuum()) == 0);
    REQUIRE(conformal_weight(v, no_gen(0)) == rat(1, 2));
    REQUIRE(conformal_weight(v, no_gen(1, 1)) == rat(3, 2));
    REQUIRE(conformal_weight(v, no_term({{0, 1}, {1, 0}})) == 2);
    REQUIRE(conformal_weight(v, virasoro(v)) == 2);
    REQUIRE_THROWS_AS(conformal_weight(v, no_gen(0) + no_term({{0, 0},
                                                               {1, 0}})),
                      std::invalid_argument);
  }
  SECTION("zero mode of the Virasoro field is T") {
    FermionSpace v = FermionSpace::euclidean(3);
    FockState w = state_of(virasoro(v));
    std::vector<NOExpr> samples = {no_gen(0), no_term({{0, 0}, {1, 1}}),
                                   no_term({{0, 2}}, 5) +
                                       no_term({{1, 0}, {2, 0}})};
    for (const NOExpr& e : samples) {
      FockState s = state_of(e);
      REQUIRE(apply_modes(v, w, 0, s) == state_T(s));
      REQUIRE(expr_of(apply_modes(v, w, 0, s)) == apply_T(e));
    }
  }
}

TEST_CASE("Theta embedding of so(A)") {
  SECTION("hyperbolic Cartan element") {
    FermionSpace v = FermionSpace::hyperbolic(1);
    Mat x = {{1, 0}, {0, -1}};
    REQUIRE(theta(v, x) == no_term({{0, 0}, {1, 0}}));
    ThetaBracket tb = theta_bracket(v, x, x);
    REQUIRE(tb.current.zero());
    REQUIRE(tb.level == 1);
    REQUIRE(theta(v, mat_zero(2, 2)).zero());
    Mat bad = {{1, 0}, {0, 1}};
    REQUIRE_THROWS_AS(theta(v, bad), std::invalid_argument);
  }
  SECTION("closure, level form, bilinearity, invariance") {
    std::vector<FermionSpace> spaces;
    spaces.push_back(FermionSpace::euclidean(3));
    spaces.push_back(FermionSpace::euclidean(4));
    spaces.push_back(FermionSpace::hyperbolic(2));
    for (const FermionSpace& v : spaces) {
      int n = v.dim();
      std::vector<Mat> basis;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) basis.push_back(so_elem(v, i, j));
      auto s = [&](const Mat& a, const Mat& b) {
        return theta_bracket(v, a, b).level;
      };
      for (const Mat& x : basis)
        for (const Mat& y : basis) {
          ThetaBracket tb = theta_bracket(v, x, y);
          REQUIRE(tb.current == theta(v, comm(x, y)));
          REQUIRE(tb.level == trace(mat_mul(x, y)) / 2);
        }
      REQUIRE(s(mat_add(basis[0], basis[1]), basis[2]) ==
              s(basis[0], basis[2]) + s(basis[1], basis[2]));
      REQUIRE(s(comm(basis[0], basis[1]), basis[2]) ==
              s(basis[0], comm(basis[1], basis[2])));
    }
  }
  SECTION("the images span the weight-one space") {
    std::vector<FermionSpace> spaces;
    spaces.push_back(FermionSpace::euclidean(3));
    spaces.push_back(FermionSpace::euclidean(6));
    spaces.push_back(FermionSpace::hyperbolic(3));
    for (const FermionSpace& v : spaces) {
      int n = v.dim();
      std::vector<NOKey> slice;
      std::map<NOKey, size_t> index;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          index[{{i, 0}, {j, 0}}] = slice.size();
          slice.push_back({{i, 0}, {j, 0}});
        }
      RankTracker tr(slice.size());
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          NOExpr im = theta(v, so_elem(v, i, j));
          Vec row(slice.size(), Rat(0));
          for (const auto& [k, c] : im.t) row[index.at(k)] = c;
          tr.add(std::move(row));
        }
      REQUIRE(tr.rank() == slice.size());
    }
  }
}
