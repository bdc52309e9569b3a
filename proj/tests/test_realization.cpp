// Tests for the matrix realizations of isotropy representations.

#include <catch2/catch_amalgamated.hpp>

#include "lieconf/realization.hpp"

using namespace lieconf;

namespace {

KacInvolution single_node(AffineDiagram d, int node) {
  std::vector<int> sp(d.n, 0);
  sp[node] = 1;
  return KacInvolution::make(std::move(d), std::move(sp));
}

KacInvolution two_nodes(AffineDiagram d, int a, int b) {
  std::vector<int> sp(d.n, 0);
  sp[a] = 1;
  sp[b] = 1;
  return KacInvolution::make(std::move(d), std::move(sp));
}

// The alignment itself re-derives and checks every structural property; the
// checks here confirm the externally visible contract.
void check_basic(const SymmetricPair& sp, const Realization& rz) {
  CHECK(rz.dim == (int)sp.dim_p.get_si());
  CHECK(rz.fs.dim() == rz.dim);
  CHECK(rz.comps.size() == sp.rcomps.size());
  CHECK(rz.jlevels == sp.jlevels);
  CHECK(rz.hermitian == sp.hermitian);
  // every class is represented with its multiplicity
  for (size_t ci = 0; ci < sp.p_classes.size(); ++ci)
    CHECK((int)rz.class_gens[ci].size() == sp.p_classes[ci].mult);
  // generator diagonal data matches the class weights
  for (int v = 0; v < rz.dim; ++v) {
    const PWeight& pw = sp.p_classes[rz.gen_class[v]];
    for (size_t s = 0; s < sp.rcomps.size(); ++s)
      for (size_t pos = 0; pos < sp.rcomps[s].nodes.size(); ++pos)
        CHECK(rz.comps[s].h[pos][v][v] == pw.rfw[sp.rcomps[s].nodes[pos]]);
    if (sp.hermitian) CHECK(rz.varpi[v][v] == pw.piw);
  }
  // unit pairing between opposite nonzero classes
  for (int ci : rz.pos_classes) {
    int ni = rz.neg_class(ci);
    for (size_t a = 0; a < rz.class_gens[ci].size(); ++a)
      for (size_t b = 0; b < rz.class_gens[ni].size(); ++b)
        CHECK(rz.fs.pair(rz.class_gens[ci][a], rz.class_gens[ni][b]) ==
              (a == b ? Rat(1) : Rat(0)));
  }
  // the currents reproduce the component levels
  for (size_t s = 0; s < sp.rcomps.size(); ++s)
    for (int b = 0; b < rz.comps[s].rank(); ++b) {
      ThetaBracket tb = theta_bracket(rz.fs, rz.comps[s].e[b], rz.comps[s].f[b]);
      CHECK(tb.level * sp.rcomps[s].rs.halfnorm[b] == sp.jlevels[s]);
      CHECK(tb.current == theta(rz.fs, rz.comps[s].h[b]));
    }
}

SymmetricPair pair_single(SimpleType t, int twist, int node) {
  if (twist == 2) return build_pair(single_node(affine_twisted(t), node));
  return build_pair(single_node(affine_untwisted(t), node));
}

}  // namespace

TEST_CASE("group pairs realize with adjoint matrix models") {
  for (SimpleType t : {SimpleType{'A', 1}, SimpleType{'A', 2}, SimpleType{'A', 3},
                       SimpleType{'B', 2}, SimpleType{'G', 2}}) {
    SymmetricPair sp = build_pair(single_node(affine_split(t), 0));
    Realization rz = realize(sp);
    check_basic(sp, rz);
    CHECK((int)rz.zero_gens.size() == t.rank);
    // group pairs: level is the dual Coxeter number
    REQUIRE(rz.jlevels.size() == 1);
    CHECK(rz.jlevels[0] == Rat(RootSystem::build(t).hvee));
  }
}

TEST_CASE("fixed spaces of transpose involutions") {
  // orthogonal fixed spaces
  for (int m : {3, 4, 5, 6}) {
    SymmetricPair sp = m % 2 == 1 ? pair_single({'A', m - 1}, 2, (m - 1) / 2)
                                  : pair_single({'A', m - 1}, 2, m / 2);
    Realization rz = realize(sp);
    check_basic(sp, rz);
    CHECK(rz.dim == (m - 1) * (m + 2) / 2);
  }
  // symplectic fixed spaces
  for (int l : {2, 3}) {
    SymmetricPair sp = pair_single({'A', 2 * l - 1}, 2, 0);
    Realization rz = realize(sp);
    check_basic(sp, rz);
    CHECK(rz.dim == (l - 1) * (2 * l + 1));
  }
}

TEST_CASE("orthogonal tensor pairs") {
  // odd x odd from twisted diagrams
  {
    SymmetricPair sp = pair_single({'D', 3}, 2, 0);  // so(5) x so(1)
    Realization rz = realize(sp);
    check_basic(sp, rz);
    CHECK(rz.dim == 5);
  }
  {
    SymmetricPair sp = pair_single({'D', 4}, 2, 2);  // so(5) x so(3)
    Realization rz = realize(sp);
    check_basic(sp, rz);
    CHECK(rz.dim == 15);
    CHECK(rz.zero_gens.size() == 1);
  }
  // even x odd and even x even from untwisted diagrams
  {
    SymmetricPair sp = pair_single({'B', 2}, 1, 2);  // so(4) x so(1)
    Realization rz = realize(sp);
    check_basic(sp, rz);
    CHECK(rz.dim == 4);
  }
  {
    SymmetricPair sp = pair_single({'B', 3}, 1, 2);  // so(4) x so(3)
    Realization rz = realize(sp);
    check_basic(sp, rz);
    CHECK(rz.dim == 12);
  }
  {
    SymmetricPair sp = pair_single({'D', 4}, 1, 2);  // so(4) x so(4)
    Realization rz = realize(sp);
    check_basic(sp, rz);
    CHECK(rz.dim == 16);
    CHECK(rz.comps.size() == 4);
  }
  // hermitian rows: so(m) x so(2)
  for (auto [fam, rank] : {std::pair<char, int>{'B', 3}, {'D', 4}, {'D', 5}}) {
    SymmetricPair sp = build_pair(two_nodes(affine_untwisted({fam, rank}), 0, 1));
    Realization rz = realize(sp);
    check_basic(sp, rz);
    CHECK(rz.hermitian);
  }
}

TEST_CASE("symplectic tensor pairs") {
  {
    SymmetricPair sp = pair_single({'C', 2}, 1, 1);  // sp(2) x sp(2)
    Realization rz = realize(sp);
    check_basic(sp, rz);
    CHECK(rz.dim == 4);
  }
  {
    SymmetricPair sp = pair_single({'C', 3}, 1, 1);  // sp(2) x sp(4)
    Realization rz = realize(sp);
    check_basic(sp, rz);
    CHECK(rz.dim == 8);
  }
}

TEST_CASE("block and square hermitian pairs") {
  // off-diagonal blocks in sl(n)
  for (auto [p, q] : {std::pair<int, int>{1, 1}, {1, 2}, {2, 2}, {2, 3}, {1, 5}}) {
    SymmetricPair sp = build_pair(two_nodes(affine_untwisted({'A', p + q - 1}), 0, p));
    Realization rz = realize(sp);
    check_basic(sp, rz);
    CHECK(rz.dim == 2 * p * q);
  }
  // symmetric squares over gl(m)
  for (int mrank : {2, 3, 4}) {
    SymmetricPair sp = build_pair(two_nodes(affine_untwisted({'C', mrank}), 0, mrank));
    Realization rz = realize(sp);
    check_basic(sp, rz);
    CHECK(rz.dim == mrank * (mrank + 1));
  }
  // antisymmetric squares over gl(m)
  for (auto [rank, node] : {std::pair<int, int>{4, 4}, {4, 3}, {5, 5}}) {
    SymmetricPair sp = build_pair(two_nodes(affine_untwisted({'D', rank}), 0, node));
    Realization rz = realize(sp);
    check_basic(sp, rz);
    CHECK(rz.dim == rank * (rank - 1));
  }
}

TEST_CASE("spin realization of the sixteen-dimensional odd part") {
  SymmetricPair sp = pair_single({'F', 4}, 1, 4);
  Realization rz = realize(sp);
  check_basic(sp, rz);
  CHECK(rz.dim == 16);
  REQUIRE(rz.comps.size() == 1);
  CHECK(rz.comps[0].rank() == 4);
  // all sixteen classes are extreme: no zero class, multiplicity one
  CHECK(rz.zero_gens.empty());
  for (auto& cg : rz.class_gens) CHECK(cg.size() == 1);
}

TEST_CASE("rank-two exceptional split pair") {
  SymmetricPair sp = pair_single({'G', 2}, 1, 1);
  Realization rz = realize(sp);
  check_basic(sp, rz);
  CHECK(rz.dim == 8);
  CHECK(rz.comps.size() == 2);
}

TEST_CASE("virasoro data of the fermion spaces") {
  SymmetricPair sp = build_pair(two_nodes(affine_untwisted({'A', 2}), 0, 1));
  Realization rz = realize(sp);
  // central charge is half the dimension of p
  CHECK(fermion_central_charge(rz.fs) == rat(rz.dim, 2));
}

TEST_CASE("pairs beyond the matrix-model scope throw") {
  CHECK_THROWS_AS(realize(pair_single({'F', 4}, 1, 1)), std::invalid_argument);
  CHECK_THROWS_AS(realize(pair_single({'E', 6}, 2, 4)), std::invalid_argument);
  CHECK_THROWS_AS(realize(build_pair(two_nodes(affine_untwisted({'E', 7}), 0, 1))),
                  std::invalid_argument);
}

TEST_CASE("cached realizations are stable") {
  SymmetricPair sp = pair_single({'C', 2}, 1, 1);
  const Realization& a = realization_for(sp);
  const Realization& b = realization_for(sp);
  CHECK(&a == &b);
  CHECK(a.sp == &sp);
}
