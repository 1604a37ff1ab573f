#include <gtest/gtest.h>

#include <set>

#include "klcells/cells.hpp"
#include "klcells/parabolic.hpp"
#include "klcells/typeb.hpp"
#include "support.hpp"

using namespace klcells;
namespace kt = klcells::testing;

namespace {

HeckePtr make(CoxeterType t, int n, bool equal = false) {
  auto W = CoxeterSystem::make(t, n);
  return make_hecke(W, equal ? WeightFunction::equal(*W) : WeightFunction::specialized(*W, 1, n + 1));
}

std::vector<Elt> parse_all(const CoxeterSystem& W, const std::vector<std::string>& words) {
  std::vector<Elt> r;
  for (const auto& w : words) r.push_back(W.parse(w));
  std::sort(r.begin(), r.end());
  return r;
}

std::set<std::vector<Elt>> as_set(const std::vector<std::vector<Elt>>& cells) {
  return {cells.begin(), cells.end()};
}

std::vector<std::size_t> row_lengths(const Tableau& t) {
  std::vector<std::size_t> s;
  for (const auto& row : t) s.push_back(row.size());
  return s;
}

// Trace of left multiplication by h on H, in the T basis.
GroupRingElement regular_trace(const HeckeAlgebra& H, const HeckeElement& h) {
  GroupRingElement tr = H.zero();
  for (Elt y = 0; y < H.size(); ++y) tr += H.t_mul(h, H.T(y))[y];
  return tr;
}

GroupRingElement matrix_trace(const AMatrix& m, int k) {
  GroupRingElement tr(k);
  for (std::size_t i = 0; i < m.size(); ++i) tr += m[i][i];
  return tr;
}

}  // namespace

// ---- partitions ----

TEST(Cells, B2LeftCells) {
  auto H = make(CoxeterType::B, 2);
  CellStructure cs(*H, H->W().all_gens());
  std::vector<std::vector<Elt>> expect;
  for (const auto& c : kt::b2_left_cells()) expect.push_back(parse_all(H->W(), c));
  EXPECT_EQ(as_set(cs.left_cells()), as_set(expect));
  Elt s0 = H->W().parse("s0"), s1s0 = H->W().parse("s1s0");
  EXPECT_TRUE(cs.leq(CellSide::L, s1s0, s0));
  EXPECT_TRUE(cs.leq(CellSide::L, s0, s1s0));
}

TEST(Cells, B2GenericWeightsSameLeftCells) {
  auto W = CoxeterSystem::make(CoxeterType::B, 2);
  auto H = make_hecke(W, WeightFunction::generic(*W));
  CellStructure cs(*H, W->all_gens());
  std::vector<std::vector<Elt>> expect;
  for (const auto& c : kt::b2_left_cells()) expect.push_back(parse_all(*W, c));
  EXPECT_EQ(as_set(cs.left_cells()), as_set(expect));
}

TEST(Cells, S3LeftCellsMatchRobinsonSchensted) {
  auto H = make(CoxeterType::A, 2, true);
  const auto& W = H->W();
  CellStructure cs(*H, W.all_gens());
  std::set<std::vector<Elt>> expect = {parse_all(W, {"1"}), parse_all(W, {"s1", "s2s1"}), parse_all(W, {"s2", "s1s2"}),
                                       parse_all(W, {"s1s2s1"})};
  EXPECT_EQ(as_set(cs.left_cells()), expect);
  std::map<Tableau, std::vector<Elt>> byQ;
  for (Elt w = 0; w < W.size(); ++w) byQ[rs_classical(W, w).second].push_back(w);
  std::set<std::vector<Elt>> rs;
  for (auto& [q, v] : byQ) rs.insert(v);
  EXPECT_EQ(as_set(cs.left_cells()), rs);
}

TEST(Cells, S4AndS5LeftCellsMatchRobinsonSchensted) {
  for (int n : {3, 4}) {
    auto H = make(CoxeterType::A, n, true);
    CellStructure cs(*H, H->W().all_gens());
    EXPECT_TRUE(check_rs_cells(cs).passed()) << "rank " << n;
  }
}

TEST(Cells, B2TwoSidedCells) {
  auto H = make(CoxeterType::B, 2);
  CellStructure cs(*H, H->W().all_gens());
  EXPECT_EQ(cs.partition(CellSide::LR).cells.size(), 5u);
  for (const auto& c : cs.partition(CellSide::LR).cells)
    for (Elt x : c)
      for (Elt y : c) EXPECT_TRUE(cs.equiv(CellSide::LR, x, y));
}

TEST(Cells, PartitionInvariants) {
  for (auto [t, n] : {std::pair{CoxeterType::B, 3}, std::pair{CoxeterType::A, 3}}) {
    auto H = make(t, n, t == CoxeterType::A);
    const auto& W = H->W();
    CellStructure cs(*H, W.all_gens());
    for (auto side : {CellSide::L, CellSide::R, CellSide::LR}) {
      const auto& P = cs.partition(side);
      std::vector<int> seen(W.size(), 0);
      for (std::size_t i = 0; i < P.cells.size(); ++i)
        for (Elt x : P.cells[i]) {
          ++seen[x];
          EXPECT_EQ(P.cell_of[x], static_cast<int>(i));
        }
      for (int c : seen) EXPECT_EQ(c, 1);
      for (Elt x = 0; x < W.size(); ++x) {
        EXPECT_TRUE(cs.leq(side, x, x));
        for (Elt y = 0; y < W.size(); ++y)
          EXPECT_EQ(cs.leq(side, x, y) && cs.leq(side, y, x), P.same(x, y));
      }
      std::set<std::pair<int, int>> order(P.order.begin(), P.order.end());
      for (Elt x = 0; x < W.size(); ++x)
        for (Elt y = 0; y < W.size(); ++y)
          if (!P.same(x, y)) EXPECT_EQ(cs.leq(side, x, y), order.count({P.cell_of[x], P.cell_of[y]}) == 1);
    }
  }
}

TEST(Cells, RightPreorderIsInverseOfLeft) {
  auto H = make(CoxeterType::B, 3);
  const auto& W = H->W();
  CellStructure cs(*H, W.all_gens());
  for (Elt x = 0; x < W.size(); ++x)
    for (Elt y = 0; y < W.size(); ++y)
      EXPECT_EQ(cs.leq(CellSide::R, x, y), cs.leq(CellSide::L, W.inverse(x), W.inverse(y)));
}

TEST(Cells, LeftEdgesComeFromGeneratorRows) {
  auto H = make(CoxeterType::B, 2);
  const auto& W = H->W();
  CellStructure cs(*H, W.all_gens());
  for (Elt x = 0; x < W.size(); ++x)
    for (Elt y = 0; y < W.size(); ++y) {
      bool edge = false;
      for (int s = 0; s < W.rank(); ++s) edge |= !sparse_get(H->gen_row(s, y), x).is_zero();
      if (edge) EXPECT_TRUE(cs.leq(CellSide::L, x, y));
    }
}

TEST(Cells, RelativePreorderRestrictsToParabolic) {
  auto H = make(CoxeterType::B, 2);
  const auto& W = H->W();
  GenSet I = parse_gen_set(W, "s1");
  CellStructure rel(*H, I);
  auto A1 = CoxeterSystem::make(CoxeterType::A, 1);
  auto HA = make_hecke(A1, WeightFunction::equal(*A1, 3));
  CellStructure abs(*HA, A1->all_gens());
  for (const char* x : {"1", "s1"})
    for (const char* y : {"1", "s1"})
      EXPECT_EQ(rel.leq(CellSide::L, W.parse(x), W.parse(y)), abs.leq(CellSide::L, A1->parse(x), A1->parse(y)))
          << x << " " << y;
}

// ---- cell modules ----

TEST(CellModule, TrivialCellAffordsSignRepresentation) {
  auto W = CoxeterSystem::make(CoxeterType::B, 2);
  auto H = make_hecke(W, WeightFunction::generic(*W));
  CellModule plain(*H, {W->identity()});
  CellModule twisted(*H, {W->identity()}, true);
  for (int s = 0; s < W->rank(); ++s) {
    EXPECT_EQ(plain.T_gen_matrix(s)[0][0], -H->qinv(s));
    EXPECT_EQ(twisted.T_gen_matrix(s)[0][0], H->q(s));
  }
}

TEST(CellModule, EntriesAreStructureConstants) {
  auto H = make(CoxeterType::B, 2);
  const auto& W = H->W();
  std::vector<Elt> cell = parse_all(W, {"s0", "s1s0"});
  CellModule m(*H, cell);
  for (Elt w = 0; w < W.size(); ++w) {
    auto M = m.matrix(w);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        auto h = H->h(w, cell[j], cell[i]);
        EXPECT_EQ(M[i][j], h.arity() ? h : H->zero());
      }
  }
}

TEST(CellModule, RelationsHoldOnEveryLeftCell) {
  for (auto [t, n] : {std::pair{CoxeterType::B, 2}, std::pair{CoxeterType::B, 3}, std::pair{CoxeterType::A, 3}}) {
    auto H = make(t, n, t == CoxeterType::A);
    CellStructure cs(*H, H->W().all_gens());
    for (const auto& c : cs.left_cells())
      for (bool tw : {false, true}) EXPECT_TRUE(CellModule(*H, c, tw).check_relations().passed());
  }
}

// The left cells give a filtration of the regular module, so the cell module
// traces add up to the trace of the regular representation.
TEST(CellModule, TracesSumToRegularTrace) {
  auto W = CoxeterSystem::make(CoxeterType::B, 2);
  auto H = make_hecke(W, WeightFunction::generic(*W));
  CellStructure cs(*H, W->all_gens());
  for (Elt w = 0; w < W->size(); ++w) {
    GroupRingElement sum = H->zero();
    for (const auto& c : cs.left_cells()) sum += matrix_trace(CellModule(*H, c).T_matrix(w), H->arity());
    EXPECT_EQ(sum, regular_trace(*H, H->T(w))) << W->word_string(w);
  }
}

// ---- approx / heart ----

TEST(Approx, IdentityBijectionPasses) {
  auto H = make(CoxeterType::B, 3);
  CellStructure cs(*H, H->W().all_gens());
  for (const auto& c : cs.left_cells()) EXPECT_TRUE(approx_check(*H, c, c, c, &cs).passed());
}

TEST(Approx, S3DifferentShapesHaveNoBijection) {
  auto H = make(CoxeterType::A, 2, true);
  const auto& W = H->W();
  auto a = parse_all(W, {"s1", "s2s1"}), w0 = parse_all(W, {"s1s2s1"}), one = parse_all(W, {"1"});
  EXPECT_TRUE(heart_bijections(*H, a, w0, W.all_gens(), 10).empty());
  EXPECT_TRUE(heart_bijections(*H, one, w0, W.all_gens(), 10).empty());
  EXPECT_FALSE(approx_check(*H, one, w0, w0).passed());
  auto b = parse_all(W, {"s2", "s1s2"});
  EXPECT_EQ(heart_bijections(*H, a, b, W.all_gens(), 10).size(), 1u);
}

TEST(Approx, S4ShapeTwoOneOneCellsViaRobinsonSchensted) {
  auto H = make(CoxeterType::A, 3, true);
  const auto& W = H->W();
  CellStructure cs(*H, W.all_gens());
  std::vector<std::vector<Elt>> cells;
  for (const auto& c : cs.left_cells())
    if (row_lengths(rs_classical(W, c[0]).first) == std::vector<std::size_t>{2, 1, 1}) cells.push_back(c);
  ASSERT_EQ(cells.size(), 3u);
  std::size_t checked = 0;
  for (const auto& c : cells)
    for (const auto& c1 : cells) {
      std::vector<Elt> image;
      for (Elt x : c)
        for (Elt y : c1)
          if (rs_classical(W, x).first == rs_classical(W, y).first) image.push_back(y);
      ASSERT_EQ(image.size(), c.size());
      auto r = approx_check(*H, c, c1, image, &cs);
      EXPECT_TRUE(r.passed()) << (r.counterexamples.empty() ? "" : r.counterexamples[0]);
      ++checked;
    }
  EXPECT_EQ(checked, 9u);
}

TEST(Approx, DiagramFlipPreservesCellsAndRelation) {
  auto H = make(CoxeterType::A, 2, true);
  const auto& W = H->W();
  CellStructure cs(*H, W.all_gens());
  auto flip = [&](Elt w) {
    std::vector<int> word = W.reduced_word(w);
    for (int& s : word) s = 1 - s;
    return W.from_word(word);
  };
  auto flip_all = [&](std::vector<Elt> c) {
    for (Elt& x : c) x = flip(x);
    std::sort(c.begin(), c.end());
    return c;
  };
  auto cells = as_set(cs.left_cells());
  for (const auto& c : cs.left_cells()) EXPECT_TRUE(cells.count(flip_all(c)));
  for (const auto& c : cs.left_cells())
    for (const auto& c1 : cs.left_cells())
      for (const auto& f : heart_bijections(*H, c, c1, W.all_gens(), 10)) {
        std::vector<Elt> img;
        for (Elt x : f) img.push_back(flip(x));
        std::vector<Elt> src;
        for (Elt x : c) src.push_back(flip(x));
        EXPECT_TRUE(heart_check(*H, W.all_gens(), src, img).passed());
      }
}

TEST(Approx, MultiplyingByLongestElementPreservesRelation) {
  auto H = make(CoxeterType::A, 3, true);
  const auto& W = H->W();
  CellStructure cs(*H, W.all_gens());
  Elt w0 = W.longest();
  std::size_t pairs = 0;
  for (const auto& c : cs.left_cells())
    for (const auto& c1 : cs.left_cells()) {
      if (c == c1) continue;
      auto fs = heart_bijections(*H, c, c1, W.all_gens(), 1);
      if (fs.empty()) continue;
      ++pairs;
      std::vector<Elt> r, ri, l, li;
      for (std::size_t i = 0; i < c.size(); ++i) {
        r.push_back(W.multiply(c[i], w0));
        ri.push_back(W.multiply(fs[0][i], w0));
        l.push_back(W.multiply(w0, c[i]));
        li.push_back(W.multiply(w0, fs[0][i]));
      }
      EXPECT_TRUE(heart_check(*H, W.all_gens(), r, ri).passed());
      EXPECT_TRUE(heart_check(*H, W.all_gens(), l, li).passed());
    }
  EXPECT_GT(pairs, 0u);
}

// ---- a-function and properties ----

TEST(AFunction, B2Values) {
  auto H = make(CoxeterType::B, 2);
  const auto& W = H->W();
  auto A = a_function_data(*H);
  EXPECT_EQ(A.a[0], Exponent(0));
  EXPECT_EQ(A.Delta[0], Exponent(0));
  EXPECT_EQ(A.n[0], 1);
  std::vector<Elt> inv;
  for (Elt w = 0; w < W.size(); ++w)
    if (W.inverse(w) == w) inv.push_back(w);
  EXPECT_EQ(A.D, inv);
  EXPECT_EQ(inv.size(), 6u);
  for (Elt z = 0; z < W.size(); ++z) EXPECT_NE(A.n[z], 0);
}

TEST(AFunction, ZeroAtIdentityByFullScan) {
  auto H = make(CoxeterType::B, 2);
  Exponent worst(0);
  for (Elt x = 0; x < H->size(); ++x)
    for (Elt y = 0; y < H->size(); ++y) {
      auto h = H->h(x, y, 0);
      if (h.arity() && !h.is_zero()) worst = std::max(worst, -h.min_exponent());
    }
  EXPECT_EQ(a_function_data(*H).a[0], worst);
}

TEST(AFunction, S3LongestElement) {
  auto H = make(CoxeterType::A, 2, true);
  auto A = a_function_data(*H);
  EXPECT_EQ(A.a[H->W().longest()], Exponent(3));
}

TEST(Properties, B2AllHold) {
  auto H = make(CoxeterType::B, 2);
  CellStructure cs(*H, H->W().all_gens());
  auto A = a_function_data(*H);
  for (const auto& r : check_properties(cs, A, expand_property_list("P1-P8,P11,spadesuit")))
    EXPECT_TRUE(r.passed()) << r.property << " " << (r.counterexamples.empty() ? r.note : r.counterexamples[0]);
}

TEST(Properties, B3SpadesuitAndConstancy) {
  auto H = make(CoxeterType::B, 3);
  CellStructure cs(*H, H->W().all_gens());
  auto A = a_function_data(*H);
  for (const auto& r : check_properties(cs, A, {"P4", "P8", "spadesuit"})) {
    EXPECT_TRUE(r.passed()) << r.property;
    EXPECT_GT(r.checked, 0u) << r.property;
  }
}

TEST(Properties, TLengthDecreasesUpTheOrder) {
  for (int n : {2, 3}) {
    auto H = make(CoxeterType::B, n);
    CellStructure cs(*H, H->W().all_gens());
    EXPECT_TRUE(check_t_length_monotone(cs).passed());
  }
}

TEST(Properties, ExpandList) {
  EXPECT_EQ(expand_property_list("P1-P3,P11,spadesuit"),
            (std::vector<std::string>{"P1", "P2", "P3", "P11", "spadesuit"}));
}

TEST(Properties, RelativeSpadesuitAllSubsets) {
  struct Case {
    CoxeterType t;
    int n;
    bool equal;
  };
  for (auto c : {Case{CoxeterType::A, 2, true}, Case{CoxeterType::A, 3, true}, Case{CoxeterType::B, 2, false},
                 Case{CoxeterType::B, 3, false}}) {
    auto H = make(c.t, c.n, c.equal);
    for (GenSet I : all_subsets(H->W())) {
      CellStructure rel(*H, I);
      EXPECT_TRUE(check_relative_spadesuit(rel).passed()) << type_name(c.t) << c.n << " I=" << I;
      EXPECT_TRUE(check_relative_order_bounds(rel).passed()) << type_name(c.t) << c.n << " I=" << I;
      EXPECT_TRUE(check_relative_translation(rel).passed()) << type_name(c.t) << c.n << " I=" << I;
    }
  }
}

// ---- parabolic ----

TEST(Parabolic, B2CosetRepresentatives) {
  auto H = make(CoxeterType::B, 2);
  const auto& W = H->W();
  ParabolicContext ctx(*H, parse_gen_set(W, "s1"));
  EXPECT_EQ(ctx.X(), parse_all(W, {"1", "s0", "s1s0", "s0s1s0"}));
  auto [x, u] = ctx.split(W.parse("s0s1"));
  EXPECT_EQ(x, W.parse("s0"));
  EXPECT_EQ(u, W.parse("s1"));
}

TEST(Parabolic, EmptySubsetGivesAbsoluteTable) {
  auto H = make(CoxeterType::B, 2);
  const auto& W = H->W();
  ParabolicContext ctx(*H, 0);
  for (Elt w = 0; w < W.size(); ++w)
    for (Elt y = 0; y < W.size(); ++y)
      if (W.bruhat_leq(y, w)) EXPECT_EQ(ctx.pstar(y, w), H->p(y, w));
}

TEST(Parabolic, FullSubsetIsDiagonal) {
  auto H = make(CoxeterType::B, 2);
  ParabolicContext ctx(*H, H->W().all_gens());
  EXPECT_EQ(ctx.X(), std::vector<Elt>{0});
  for (Elt w = 0; w < H->size(); ++w) {
    EXPECT_EQ(ctx.split(w), std::make_pair(Elt(0), w));
    EXPECT_EQ(ctx.pstar(w, w), H->one());
  }
}

TEST(Parabolic, TablesAndBaseChangesAllSubsets) {
  for (int n : {2, 3})
    for (bool generic : {false, true}) {
      auto W = CoxeterSystem::make(CoxeterType::B, n);
      auto H = make_hecke(W, generic ? WeightFunction::generic(*W) : WeightFunction::specialized(*W, 1, n + 1));
      for (GenSet I : all_subsets(*W)) {
        ParabolicContext ctx(*H, I);
        std::string tag = "B" + std::to_string(n) + (generic ? " generic" : "") + " I=" + std::to_string(I);
        EXPECT_TRUE(ctx.kl3_consistent()) << tag;
        EXPECT_TRUE(ctx.check_pstar().passed()) << tag;
        EXPECT_TRUE(ctx.check_r_polynomials().passed()) << tag;
        EXPECT_TRUE(ctx.check_bruhat_support().passed()) << tag;
        EXPECT_TRUE(ctx.check_inverse_base_change().passed()) << tag;
        for (Elt w = 0; w < W->size(); ++w) EXPECT_EQ(ctx.pstar(w, w), H->one()) << tag;
      }
    }
}

// C_{yv} = sum p*_{xu,yv} T_x C_u, expanded directly in the T basis.
TEST(Parabolic, FactorizationReproducesKLBasis) {
  auto H = make(CoxeterType::B, 2);
  const auto& W = H->W();
  ParabolicContext ctx(*H, parse_gen_set(W, "s1"));
  for (Elt w = 0; w < W.size(); ++w) {
    HeckeElement sum = H->zero_element();
    for (const auto& [z, p] : ctx.pstar_column(w)) {
      auto [x, u] = ctx.split(z);
      auto term = H->t_mul(H->T(x), H->C(u));
      for (Elt e = 0; e < W.size(); ++e) sum[e] += p * term[e];
    }
    auto C = H->C(w);
    for (Elt e = 0; e < W.size(); ++e) EXPECT_EQ(sum[e], C[e]) << W.word_string(w);
  }
}

TEST(Parabolic, ABCoefficients) {
  auto H = make(CoxeterType::B, 2);
  const auto& W = H->W();
  ParabolicContext ctx(*H, parse_gen_set(W, "s1"));
  ABCoefficients ab(ctx);
  for (Elt w = 0; w < W.size(); ++w) {
    EXPECT_EQ(ab.a(w, w), H->one());
    for (Elt z = 0; z < W.size(); ++z) EXPECT_EQ(ab.a(z, w), ctx.pstar(W.inverse(z), W.inverse(w)));
  }
  EXPECT_TRUE(ab.check().passed());
  EXPECT_TRUE(ab.check_convolution().passed());
}

TEST(Parabolic, ABCoefficientsB3AllSubsets) {
  auto H = make(CoxeterType::B, 3);
  for (GenSet I : all_subsets(H->W())) {
    ParabolicContext ctx(*H, I);
    ABCoefficients ab(ctx);
    EXPECT_TRUE(ab.check().passed()) << I;
  }
}

// ---- induction ----

TEST(Induction, TrivialCellInducesCosetRepresentatives) {
  auto H = make(CoxeterType::B, 2);
  for (GenSet I : all_subsets(H->W())) {
    ParabolicContext ctx(*H, I);
    auto ic = induce_cell(ctx, {ctx.W().longest(I)});
    std::vector<Elt> expect;
    for (Elt x : ctx.X()) expect.push_back(ctx.W().multiply(x, ctx.W().longest(I)));
    std::sort(expect.begin(), expect.end());
    EXPECT_EQ(ic.elements, expect);
    auto one = induce_cell(ctx, {0});
    EXPECT_EQ(one.elements, ctx.X());
  }
}

TEST(Induction, B2InducedCellIsUnionOfLeftCells) {
  auto H = make(CoxeterType::B, 2);
  const auto& W = H->W();
  CellStructure abs(*H, W.all_gens());
  ParabolicContext ctx(*H, parse_gen_set(W, "s1"));
  auto ic = induce_cell(ctx, {W.parse("s1")});
  std::set<Elt> S(ic.elements.begin(), ic.elements.end());
  for (const auto& c : abs.left_cells()) {
    std::size_t in = 0;
    for (Elt x : c) in += S.count(x);
    EXPECT_TRUE(in == 0 || in == c.size());
  }
  EXPECT_TRUE(check_induced(ctx, abs, ic).passed());
}

TEST(Induction, RejectsNonCells) {
  auto H = make(CoxeterType::B, 2);
  const auto& W = H->W();
  ParabolicContext ctx(*H, parse_gen_set(W, "s1"));
  EXPECT_THROW(induce_cell(ctx, {W.parse("s0")}), std::invalid_argument);
  EXPECT_THROW(induce_cell(ctx, {0, W.parse("s1")}), std::invalid_argument);
}

// The sign (-1)^{l(x)} alone does not intertwine the twisted actions; the
// coefficients must also be conjugated.
TEST(Induction, TwistedVariants) {
  for (int n : {2, 3}) {
    auto H = make(CoxeterType::B, n);
    CellStructure abs(*H, H->W().all_gens());
    std::size_t literal_failures = 0;
    for (GenSet I : all_subsets(H->W())) {
      ParabolicContext ctx(*H, I);
      for (const auto& c : ctx.relative_cells().partition(CellSide::L).cells) {
        if (!H->W().in_parabolic(c[0], I)) continue;
        EXPECT_TRUE(check_induced(ctx, abs, induce_cell(ctx, c)).passed()) << I;
        EXPECT_TRUE(check_induced(ctx, abs, induce_cell(ctx, c, InduceVariant::Twisted)).passed()) << I;
        if (!check_induced(ctx, abs, induce_cell(ctx, c, InduceVariant::TwistedLiteral)).passed()) ++literal_failures;
      }
    }
    EXPECT_GT(literal_failures, 0u);
  }
}

TEST(Induction, IndependenceIdentityBijection) {
  auto H = make(CoxeterType::B, 2);
  CellStructure abs(*H, H->W().all_gens());
  ParabolicContext ctx(*H, parse_gen_set(H->W(), "s1"));
  for (const auto& c : ctx.relative_cells().partition(CellSide::L).cells)
    if (H->W().in_parabolic(c[0], ctx.I())) EXPECT_TRUE(check_indep(ctx, abs, c, c, c).passed());
}

TEST(Induction, IndependenceS3InsideB3) {
  auto H = make(CoxeterType::B, 3);
  const auto& W = H->W();
  CellStructure abs(*H, W.all_gens());
  ParabolicContext ctx(*H, parse_gen_set(W, "s1,s2"));
  std::vector<std::vector<Elt>> pair;
  for (const auto& c : ctx.relative_cells().partition(CellSide::L).cells)
    if (W.in_parabolic(c[0], ctx.I()) && c.size() == 2) pair.push_back(c);
  ASSERT_EQ(pair.size(), 2u);
  auto f = heart_bijections(*H, pair[0], pair[1], ctx.I(), 2);
  ASSERT_EQ(f.size(), 1u);
  auto r = check_indep(ctx, abs, pair[0], pair[1], f[0]);
  EXPECT_TRUE(r.passed()) << r.note;
  EXPECT_GT(r.checked, 0u);
}

TEST(Induction, IndependenceS4ShapeTwoOneOne) {
  auto H = make(CoxeterType::A, 3, true);
  const auto& W = H->W();
  CellStructure abs(*H, W.all_gens());
  ParabolicContext ctx(*H, W.all_gens());
  std::vector<std::vector<Elt>> cells;
  for (const auto& c : abs.left_cells())
    if (row_lengths(rs_classical(W, c[0]).first) == std::vector<std::size_t>{2, 1, 1}) cells.push_back(c);
  ASSERT_EQ(cells.size(), 3u);
  auto f = heart_bijections(*H, cells[0], cells[1], W.all_gens(), 1);
  ASSERT_EQ(f.size(), 1u);
  EXPECT_TRUE(check_indep(ctx, abs, cells[0], cells[1], f[0]).passed());
}

TEST(Induction, IndependenceReportsFailedHeartAsPrecondition) {
  auto H = make(CoxeterType::A, 2, true);
  const auto& W = H->W();
  CellStructure abs(*H, W.all_gens());
  ParabolicContext ctx(*H, W.all_gens());
  auto one = parse_all(W, {"1"}), w0 = parse_all(W, {"s1s2s1"});
  auto r = check_indep(ctx, abs, one, w0, w0);
  EXPECT_EQ(r.status, PropertyReport::Status::Precondition);
}

TEST(Induction, SuiteB2AllSubsets) {
  auto H = make(CoxeterType::B, 2);
  CellStructure abs(*H, H->W().all_gens());
  for (GenSet I : all_subsets(H->W())) {
    auto r = check_induction_suite(ParabolicContext(*H, I), abs);
    EXPECT_TRUE(r.passed()) << r.property << " " << (r.counterexamples.empty() ? "" : r.counterexamples[0]);
  }
}
