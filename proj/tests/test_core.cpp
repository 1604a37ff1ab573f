#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include <unistd.h>

#include "klcells/coxeter.hpp"
#include "klcells/grpring.hpp"
#include "klcells/hecke.hpp"
#include "klcells/io.hpp"
#include "support.hpp"

using namespace klcells;
namespace kt = klcells::testing;

namespace {

GroupRingElement mono(int k, std::int64_t a, std::int64_t b = 0, long c = 1) {
  return GroupRingElement::monomial(k, Exponent(a, b), BigInt(c));
}

GroupRingElement random_element(std::mt19937& rng, int k) {
  std::uniform_int_distribution<int> e(-3, 3), c(-4, 4), n(0, 4);
  GroupRingElement g(k);
  int terms = n(rng);
  for (int i = 0; i < terms; ++i) g += mono(k, e(rng), k == 2 ? e(rng) : 0, c(rng));
  return g;
}

HeckeElement random_hecke(std::mt19937& rng, const HeckeAlgebra& H) {
  HeckeElement h(H.size());
  std::uniform_int_distribution<int> pick(0, 2);
  for (Elt w = 0; w < H.size(); ++w)
    if (pick(rng) == 0) h[w] = random_element(rng, H.arity());
  return h;
}

HeckePtr b2(int a = 1, int b = 3) {
  auto W = CoxeterSystem::make(CoxeterType::B, 2);
  return make_hecke(W, WeightFunction::specialized(*W, a, b));
}

}  // namespace

// ---- group ring ----

TEST(GroupRing, DefiningRelation) {
  EXPECT_EQ(mono(2, 1, 0) * mono(2, 0, 1), mono(2, 1, 1));
}

TEST(GroupRing, BinomialSquare) {
  auto x = mono(1, 2) + mono(1, -2);
  EXPECT_EQ(x * x, mono(1, 4) + mono(1, 0, 0, 2) + mono(1, -4));
}

TEST(GroupRing, AdditiveInverseIsEmpty) {
  auto x = mono(2, 1, 2, 5) + mono(2, -1, 0, -3);
  auto z = x + (-x);
  EXPECT_TRUE(z.is_zero());
  EXPECT_TRUE(z.terms().empty());
}

TEST(GroupRing, Bar) {
  EXPECT_EQ((mono(1, 1) + mono(1, 0, 0, 3)).bar(), mono(1, -1) + mono(1, 0, 0, 3));
  EXPECT_TRUE(GroupRingElement(1).bar().is_zero());
  std::mt19937 rng(7);
  for (int i = 0; i < 50; ++i) {
    auto x = random_element(rng, 2);
    EXPECT_EQ(x.bar().bar(), x);
  }
}

TEST(GroupRing, SignPart) {
  auto x = mono(1, 1) + mono(1, -1);
  auto [neg, all] = x.sign_part(Region::Neg);
  EXPECT_EQ(neg, mono(1, -1));
  EXPECT_FALSE(all);
  auto [n2, all2] = mono(1, -1).sign_part(Region::Neg);
  EXPECT_EQ(n2, mono(1, -1));
  EXPECT_TRUE(all2);
  EXPECT_TRUE(GroupRingElement(1).sign_part(Region::Pos).second);
  // lexicographic order on Z^2: (1,-5) > 0
  EXPECT_TRUE(mono(2, 1, -5).in(Region::Pos));
  EXPECT_TRUE(mono(2, 0, -1).in(Region::Neg));
}

TEST(GroupRing, Specialize) {
  // V v^{-1} with (a,b) = (1,3) gives e^2
  EXPECT_EQ(mono(2, 1, -1).specialize(1, 3), mono(1, 2));
  EXPECT_EQ(GroupRingElement::constant(2, 5).specialize(1, 3), GroupRingElement::constant(1, 5));
  EXPECT_EQ((mono(1, 1) + mono(1, -1)).theta1(), 2);
}

TEST(GroupRing, RingAxiomsAgainstEvaluation) {
  std::mt19937 rng(11);
  for (int i = 0; i < 200; ++i) {
    auto x = random_element(rng, 2), y = random_element(rng, 2), z = random_element(rng, 2);
    EXPECT_EQ((x * y) * z, x * (y * z));
    EXPECT_EQ(x * (y + z), x * y + x * z);
    EXPECT_EQ(x * y, y * x);
    BigRational p(3, 2), q(-5, 7);
    EXPECT_EQ(kt::evaluate(x * y, p, q), kt::evaluate(x, p, q) * kt::evaluate(y, p, q));
    EXPECT_EQ(kt::evaluate(x + y, p, q), kt::evaluate(x, p, q) + kt::evaluate(y, p, q));
  }
}

TEST(GroupRing, Fractions) {
  auto x = RationalFraction(mono(1, 1) + mono(1, 0, 0, 2), mono(1, 2));
  auto y = RationalFraction(mono(1, -1) + mono(1, 0, 0, -1), mono(1, 1) + mono(1, 0, 0, 4));
  EXPECT_EQ((x / y) * (y / x), RationalFraction(GroupRingElement::one(1)));
  auto c = RationalFraction(GroupRingElement::one(1), mono(1, 0, 0, 3));
  EXPECT_EQ(c + RationalFraction(GroupRingElement(1)), c);
  auto lhs = RationalFraction(mono(1, 2) - GroupRingElement::one(1), mono(1, 1) - GroupRingElement::one(1));
  EXPECT_EQ(lhs, RationalFraction(mono(1, 1) + GroupRingElement::one(1)));
  EXPECT_THROW(x / RationalFraction(GroupRingElement(1)), std::domain_error);
}

TEST(GroupRing, JsonRoundTrip) {
  std::mt19937 rng(3);
  for (int i = 0; i < 30; ++i) {
    auto x = random_element(rng, 2);
    EXPECT_EQ(group_ring_from_json(to_json_value(x), 2), x);
    EXPECT_EQ(group_ring_json_string(x), to_json_value(x).dump());
  }
}

// ---- Coxeter groups ----

TEST(Coxeter, Orders) {
  EXPECT_EQ(CoxeterSystem::make(CoxeterType::B, 2)->size(), 8);
  EXPECT_EQ(CoxeterSystem::make(CoxeterType::A, 3)->size(), 24);
  EXPECT_EQ(CoxeterSystem::make(CoxeterType::B, 3)->size(), 48);
  EXPECT_EQ(CoxeterSystem::make(CoxeterType::I2, 5)->size(), 10);
}

TEST(Coxeter, ResourceLimit) {
  EXPECT_THROW(CoxeterSystem::make(CoxeterType::B, 8, 1000), ResourceLimitError);
  EXPECT_THROW(CoxeterSystem::make(CoxeterType::B, 1), std::invalid_argument);
}

TEST(Coxeter, LengthsMatchBreadthFirstSearch) {
  for (auto [t, n] : {std::pair{CoxeterType::A, 3}, {CoxeterType::B, 3}, {CoxeterType::B, 4}, {CoxeterType::A, 4}}) {
    auto W = CoxeterSystem::make(t, n);
    auto dist = kt::bfs_lengths(t, n);
    ASSERT_EQ(static_cast<int>(dist.size()), W->size());
    for (Elt w = 0; w < W->size(); ++w) {
      EXPECT_EQ(dist.at(W->key(w)), W->length(w));
      EXPECT_EQ(static_cast<int>(W->reduced_word(w).size()), W->length(w));
      EXPECT_EQ(W->from_word(W->reduced_word(w)), w);
    }
  }
}

TEST(Coxeter, B2LongestElement) {
  auto W = CoxeterSystem::make(CoxeterType::B, 2);
  Elt w0 = W->parse("s1s0s1s0");
  EXPECT_EQ(W->length(w0), 4);
  EXPECT_EQ(w0, W->parse("s0s1s0s1"));
  EXPECT_EQ(w0, W->longest());
  for (Elt x = 0; x < W->size(); ++x) EXPECT_EQ(W->multiply(w0, x), W->multiply(x, w0));
  for (Elt x = 0; x < W->size(); ++x) EXPECT_EQ(W->conj_by_w0(x), x);
  EXPECT_EQ(W->left_descents(w0), W->all_gens());
  EXPECT_EQ(W->right_descents(w0), W->all_gens());
  EXPECT_EQ(W->left_descents(W->identity()), 0u);
  EXPECT_TRUE(W->reduced_word(W->identity()).empty());
  EXPECT_EQ(W->left_descents(W->parse("s0s1s0")), 1u);
  EXPECT_EQ(W->longest(2u), W->parse("s1"));
}

TEST(Coxeter, S3) {
  auto W = CoxeterSystem::make(CoxeterType::A, 2);
  EXPECT_EQ(W->length(W->longest()), 3);
  EXPECT_EQ(W->conj_by_w0(W->gen(0)), W->gen(1));
  EXPECT_EQ(W->conj_by_w0(W->gen(1)), W->gen(0));
  EXPECT_EQ(W->multiply(W->identity(), W->gen(1)), W->gen(1));
}

TEST(Coxeter, GroupAxioms) {
  auto W = CoxeterSystem::make(CoxeterType::B, 3);
  for (Elt x = 0; x < W->size(); ++x) {
    EXPECT_EQ(W->multiply(x, W->inverse(x)), W->identity());
    EXPECT_EQ(W->length(W->inverse(x)), W->length(x));
    for (Elt y = 0; y < W->size(); y += 5)
      for (Elt z = 0; z < W->size(); z += 7)
        EXPECT_EQ(W->multiply(W->multiply(x, y), z), W->multiply(x, W->multiply(y, z)));
  }
}

TEST(Coxeter, BruhatMatchesSubwordProperty) {
  for (auto [t, n] : {std::pair{CoxeterType::B, 3}, {CoxeterType::A, 3}, {CoxeterType::I2, 6}}) {
    auto W = CoxeterSystem::make(t, n);
    for (Elt y = 0; y < W->size(); ++y) {
      auto below = kt::bruhat_below_subwords(*W, y);
      for (Elt x = 0; x < W->size(); ++x) EXPECT_EQ(W->bruhat_leq(x, y), below.count(x) > 0);
    }
  }
  auto W = CoxeterSystem::make(CoxeterType::B, 2);
  EXPECT_FALSE(W->bruhat_leq(W->gen(0), W->gen(1)));
  for (Elt x = 0; x < W->size(); ++x) {
    EXPECT_TRUE(W->bruhat_leq(W->identity(), x));
    EXPECT_TRUE(W->bruhat_leq(x, W->longest()));
  }
}

TEST(Coxeter, CosetRepresentatives) {
  auto W = CoxeterSystem::make(CoxeterType::B, 2);
  auto all = W->all_gens();
  EXPECT_EQ(W->coset_reps(all), std::vector<Elt>{W->identity()});
  EXPECT_EQ(static_cast<int>(W->coset_reps(0).size()), W->size());
  for (Elt w = 0; w < W->size(); ++w) EXPECT_EQ(W->coset_decompose(w, all), std::make_pair(W->identity(), w));
  GenSet I = 2;  // {s1}
  auto X = W->coset_reps(I);
  std::vector<Elt> expect = {W->identity(), W->parse("s0"), W->parse("s1s0"), W->parse("s0s1s0")};
  std::sort(expect.begin(), expect.end());
  auto Xs = X;
  std::sort(Xs.begin(), Xs.end());
  EXPECT_EQ(Xs, expect);
  EXPECT_EQ(W->coset_decompose(W->parse("s0s1"), I), std::make_pair(W->parse("s0"), W->parse("s1")));
  // every w = x u with lengths adding, by brute force over X x W_I
  auto B3 = CoxeterSystem::make(CoxeterType::B, 3);
  for (GenSet J : all_subsets(*B3)) {
    auto XJ = B3->coset_reps(J);
    for (Elt w = 0; w < B3->size(); ++w) {
      auto [x, u] = B3->coset_decompose(w, J);
      EXPECT_EQ(B3->multiply(x, u), w);
      EXPECT_TRUE(B3->in_parabolic(u, J));
      EXPECT_EQ(B3->length(x) + B3->length(u), B3->length(w));
      EXPECT_TRUE(std::count(XJ.begin(), XJ.end(), x));
    }
  }
}

TEST(Coxeter, TLength) {
  auto W = CoxeterSystem::make(CoxeterType::B, 3);
  for (Elt w = 0; w < W->size(); ++w) {
    const auto& word = W->reduced_word(w);
    EXPECT_EQ(W->t_length(w), std::count(word.begin(), word.end(), 0));
    int neg = 0;
    for (int v : W->key(w)) neg += v < 0;
    EXPECT_EQ(W->t_length(w), neg);
  }
}

// ---- Hecke algebra ----

TEST(Hecke, QuadraticRelation) {
  auto H = b2();
  for (int s = 0; s < 2; ++s) {
    Elt g = H->W().gen(s);
    auto p = H->t_mul(H->T(g), H->T(g));
    auto expect = H->T(0);
    expect.add_scaled(H->T(g), H->qdiff(s));
    EXPECT_EQ(p, expect);
  }
}

TEST(Hecke, LengthAdditiveProducts) {
  auto H = b2();
  const auto& W = H->W();
  for (Elt x = 0; x < W.size(); ++x)
    for (Elt y = 0; y < W.size(); ++y) {
      Elt xy = W.multiply(x, y);
      if (W.length(xy) == W.length(x) + W.length(y)) EXPECT_EQ(H->t_mul(H->T(x), H->T(y)), H->T(xy));
    }
  Elt s0 = W.gen(0), s1 = W.gen(1);
  EXPECT_EQ(H->t_mul(H->t_mul(H->T(s0), H->T(s1)), H->T(s0)), H->t_mul(H->T(s0), H->t_mul(H->T(s1), H->T(s0))));
}

TEST(Hecke, Associativity) {
  auto W = CoxeterSystem::make(CoxeterType::B, 3);
  auto H = make_hecke(W, WeightFunction::generic(*W));
  std::mt19937 rng(5);
  for (int i = 0; i < 5; ++i) {
    auto x = random_hecke(rng, *H), y = random_hecke(rng, *H), z = random_hecke(rng, *H);
    EXPECT_EQ(H->t_mul(H->t_mul(x, y), z), H->t_mul(x, H->t_mul(y, z)));
  }
}

TEST(Hecke, BarInvolution) {
  auto H = b2();
  const auto& W = H->W();
  EXPECT_EQ(H->bar(H->T(0)), H->T(0));
  for (int s = 0; s < 2; ++s) {
    auto expect = H->T(W.gen(s));
    expect.add_scaled(H->T(0), -H->qdiff(s));
    EXPECT_EQ(H->bar(H->T(W.gen(s))), expect);
  }
  std::mt19937 rng(9);
  for (int i = 0; i < 20; ++i) {
    auto h = random_hecke(rng, *H), g = random_hecke(rng, *H);
    EXPECT_EQ(H->bar(H->bar(h)), h);
    EXPECT_EQ(H->bar(H->t_mul(h, g)), H->t_mul(H->bar(h), H->bar(g)));
  }
}

TEST(Hecke, KLBasisB2) {
  auto H = b2();
  const auto& W = H->W();
  EXPECT_EQ(H->C(0), H->T(0));
  Elt s0 = W.gen(0);
  auto expect = H->T(s0);
  expect.add_scaled(H->T(0), H->qinv(0));
  EXPECT_EQ(H->C(s0), expect);
}

TEST(Hecke, BarInvarianceAndTriangularity) {
  for (auto [t, n, generic] : {std::tuple{CoxeterType::B, 2, false}, {CoxeterType::B, 3, false}, {CoxeterType::B, 3, true},
                              {CoxeterType::A, 3, false}, {CoxeterType::I2, 6, true}}) {
    auto W = CoxeterSystem::make(t, n);
    auto L = generic ? WeightFunction::generic(*W)
                     : (t == CoxeterType::B ? WeightFunction::specialized(*W, 1, 3) : WeightFunction::equal(*W));
    auto H = make_hecke(W, L);
    for (Elt w = 0; w < W->size(); ++w) {
      auto C = H->C(w);
      EXPECT_EQ(H->bar(C), C);
      EXPECT_EQ(C[w], H->one());
      for (Elt y = 0; y < W->size(); ++y) {
        if (y == w || C[y].is_zero()) continue;
        EXPECT_TRUE(W->bruhat_leq(y, w));
        EXPECT_TRUE(C[y].in(Region::Neg));
      }
    }
  }
}

TEST(Hecke, EqualParameterMatchesClassicalKL) {
  for (int n : {2, 3, 4}) {
    auto W = CoxeterSystem::make(CoxeterType::A, n);
    auto H = make_hecke(W, WeightFunction::equal(*W));
    kt::ClassicalKL kl(*W);
    for (Elt w = 0; w < W->size(); ++w)
      for (Elt y = 0; y < W->size(); ++y) {
        if (!W->bruhat_leq(y, w)) {
          EXPECT_TRUE(H->p(y, w).is_zero());
          continue;
        }
        // p*_{y,w} = v^{-(l(w)-l(y))} P_{y,w}(v^2)
        GroupRingElement expect(1);
        const auto& P = kl.P(y, w);
        int d = W->length(w) - W->length(y);
        for (std::size_t i = 0; i < P.size(); ++i)
          if (P[i]) expect += mono(1, 2 * static_cast<int>(i) - d, 0, P[i]);
        EXPECT_EQ(H->p(y, w), expect) << W->word_string(y) << " " << W->word_string(w);
      }
  }
}

TEST(Hecke, PositivityS4) {
  auto W = CoxeterSystem::make(CoxeterType::A, 3);
  auto H = make_hecke(W, WeightFunction::equal(*W));
  for (Elt w = 0; w < W->size(); ++w)
    for (Elt y = 0; y < W->size(); ++y) {
      if (y == w) continue;
      for (const auto& [e, c] : H->p(y, w).terms()) {
        EXPECT_GT(c, 0);
        EXPECT_LT(e.c[0], 0);
      }
    }
  for (Elt x = 0; x < W->size(); ++x)
    for (Elt y = 0; y < W->size(); ++y)
      for (const auto& [z, h] : H->h_row(x, y))
        for (const auto& [e, c] : h.terms()) EXPECT_GT(c, 0);
}

TEST(Hecke, MuErrorsAndClassicalMu) {
  auto W = CoxeterSystem::make(CoxeterType::A, 2);
  auto H = make_hecke(W, WeightFunction::equal(*W));
  EXPECT_THROW(H->mu(0, W->identity(), W->longest()), std::invalid_argument);
  kt::ClassicalKL kl(*W);
  int checked = 0;
  for (int s = 0; s < W->rank(); ++s)
    for (Elt y = 0; y < W->size(); ++y)
      for (Elt z = 0; z < W->size(); ++z) {
        bool ok = W->length(W->lmul(s, z)) < W->length(z) && W->length(z) < W->length(y) &&
                  W->length(y) < W->length(W->lmul(s, y));
        if (!ok) continue;
        ++checked;
        EXPECT_EQ(H->mu(s, z, y), GroupRingElement::constant(1, kl.mu(z, y)));
        // coefficient of C_z in C_s C_y
        EXPECT_EQ(H->mu(s, z, y), H->to_C(H->t_mul(H->C(W->gen(s)), H->C(y)))[z]);
      }
  EXPECT_GT(checked, 0);
}

TEST(Hecke, MuUnderLongestElement) {
  auto H = b2();
  const auto& W = H->W();
  Elt w0 = W.longest();
  int checked = 0;
  for (int s = 0; s < 2; ++s)
    for (Elt x = 0; x < W.size(); ++x)
      for (Elt y = 0; y < W.size(); ++y) {
        Elt xw = W.multiply(x, w0), yw = W.multiply(y, w0);
        auto cond = [&](Elt z, Elt v) {
          return W.length(W.lmul(s, z)) < W.length(z) && W.length(z) < W.length(v) && W.length(v) < W.length(W.lmul(s, v));
        };
        if (!cond(xw, yw) || !cond(y, x)) continue;
        ++checked;
        auto m = H->mu(s, y, x);
        if ((W.length(x) + W.length(y)) % 2 == 0) m = -m;
        EXPECT_EQ(H->mu(s, xw, yw), m);
      }
  EXPECT_GT(checked, 0);
}

TEST(Hecke, GeneratorProductClosedForm) {
  auto W = CoxeterSystem::make(CoxeterType::B, 3);
  auto H = make_hecke(W, WeightFunction::generic(*W));
  for (int s = 0; s < W->rank(); ++s)
    for (Elt y = 0; y < W->size(); ++y) {
      auto direct = H->to_C(H->t_mul(H->C(W->gen(s)), H->C(y)));
      std::vector<GroupRingElement> closed(W->size(), H->zero());
      Elt sy = W->lmul(s, y);
      if (W->length(sy) < W->length(y)) {
        closed[y] = H->qsum(s);
      } else {
        closed[sy] = H->one();
        for (Elt z = 0; z < W->size(); ++z) {
          bool ok = W->length(W->lmul(s, z)) < W->length(z) && W->length(z) < W->length(y);
          if (ok) closed[z] = H->mu(s, z, y);
        }
      }
      for (Elt z = 0; z < W->size(); ++z) {
        auto d = direct[z].arity() ? direct[z] : H->zero();
        auto c = closed[z].arity() ? closed[z] : H->zero();
        EXPECT_EQ(d, c);
      }
    }
}

TEST(Hecke, StructureConstantsTwoRoutes) {
  for (bool generic : {false, true}) {
    auto W = CoxeterSystem::make(CoxeterType::B, 3);
    auto H = make_hecke(W, generic ? WeightFunction::generic(*W) : WeightFunction::specialized(*W, 1, 3));
    for (Elt x = 0; x < W->size(); ++x)
      for (Elt y = 0; y < W->size(); ++y) {
        auto direct = H->product_C(x, y);
        for (Elt z = 0; z < W->size(); ++z) {
          auto d = direct[z].arity() ? direct[z] : H->zero();
          auto h = H->h(x, y, z).arity() ? H->h(x, y, z) : H->zero();
          ASSERT_EQ(h, d);
        }
      }
  }
}

TEST(Hecke, StructureConstantExamples) {
  auto H = b2();
  const auto& W = H->W();
  for (int s = 0; s < 2; ++s) EXPECT_EQ(H->h(W.gen(s), W.gen(s), W.gen(s)), H->qsum(s));
  for (Elt y = 0; y < W.size(); ++y)
    for (Elt z = 0; z < W.size(); ++z) EXPECT_EQ(H->h(0, y, z).arity() ? H->h(0, y, z) : H->zero(), y == z ? H->one() : H->zero());
}

TEST(Hecke, SpecializationCompatibility) {
  auto W = CoxeterSystem::make(CoxeterType::B, 3);
  auto G = make_hecke(W, WeightFunction::generic(*W));
  auto S = make_hecke(W, WeightFunction::specialized(*W, 1, 3));
  for (Elt x = 0; x < W->size(); ++x)
    for (Elt y = 0; y < W->size(); ++y) {
      EXPECT_EQ(G->p(x, y).specialize(1, 3), S->p(x, y).arity() ? S->p(x, y) : GroupRingElement(1));
      for (Elt z = 0; z < W->size(); ++z) {
        auto g = G->h(x, y, z), s = S->h(x, y, z);
        EXPECT_EQ(g.arity() ? g.specialize(1, 3) : GroupRingElement(1), s.arity() ? s : GroupRingElement(1));
      }
    }
}

TEST(Hecke, DeltaFlatAndJ) {
  auto H = b2();
  const auto& W = H->W();
  for (int s = 0; s < 2; ++s) {
    Elt g = W.gen(s);
    auto expect = H->T(g).scaled(-H->one());
    expect.add_scaled(H->T(0), H->q(s));
    EXPECT_EQ(H->delta(H->C(g)), expect);
    // delta(T_s) = -T_s^{-1} = -(T_s - (q - q^-1))
    auto dts = H->T(g).scaled(-H->one());
    dts.add_scaled(H->T(0), H->qdiff(s));
    EXPECT_EQ(H->delta(H->T(g)), dts);
  }
  EXPECT_EQ(H->flat(H->C(W.parse("s0s1"))), H->C(W.parse("s1s0")));
  std::mt19937 rng(1);
  for (int i = 0; i < 20; ++i) {
    auto h = random_hecke(rng, *H), g = random_hecke(rng, *H);
    EXPECT_EQ(H->j_map(H->delta(h)), H->bar(h));
    EXPECT_EQ(H->delta(H->t_mul(h, g)), H->t_mul(H->delta(h), H->delta(g)));
    EXPECT_EQ(H->flat(H->t_mul(h, g)), H->t_mul(H->flat(g), H->flat(h)));
  }
}

TEST(Hecke, Trace) {
  auto H = b2();
  const auto& W = H->W();
  EXPECT_EQ(H->tau(H->T(0)), H->one());
  for (int s = 0; s < 2; ++s) EXPECT_EQ(H->tau(H->t_mul(H->T(W.gen(s)), H->T(W.gen(s)))), H->one());
  std::mt19937 rng(2);
  for (int i = 0; i < 20; ++i) {
    auto h = random_hecke(rng, *H), g = random_hecke(rng, *H);
    EXPECT_EQ(H->tau(H->t_mul(h, g)), H->tau(H->t_mul(g, h)));
    EXPECT_EQ(H->tau(H->t_mul(h, g)), H->tau_product(h, g));
  }
}

TEST(Hecke, DualBasis) {
  for (bool generic : {false, true}) {
    auto W = CoxeterSystem::make(CoxeterType::B, 2);
    auto H = make_hecke(W, generic ? WeightFunction::generic(*W) : WeightFunction::specialized(*W, 1, 3));
    int N = W->size();
    for (Elt w = 0; w < N; ++w)
      for (Elt z = 0; z < N; ++z)
        EXPECT_EQ(H->tau_product(H->C(w), H->D_inv(z)), w == z ? H->one() : H->zero()) << w << " " << z;
    for (Elt x = 0; x < N; ++x)
      for (Elt y = 0; y < N; ++y) {
        auto CC = H->t_mul(H->C(x), H->C(y));
        for (Elt z = 0; z < N; ++z) {
          auto h = H->h(x, y, z).arity() ? H->h(x, y, z) : H->zero();
          EXPECT_EQ(H->tau_product(CC, H->D_inv(z)), h);
        }
        // C_x D_{y^-1} = sum_w h_{w,x,y} D_{w^-1}
        HeckeElement rhs(N);
        for (Elt w = 0; w < N; ++w)
          if (!H->h(w, x, y).is_zero()) rhs.add_scaled(H->D_inv(w), H->h(w, x, y));
        EXPECT_EQ(H->t_mul(H->C(x), H->D_inv(y)), rhs);
      }
  }
}

TEST(Hecke, DualOfLongestBySolvingDuality) {
  // tau(C_w T_u) = p*_{u^-1,w}, so tau(C_w D) = delta_{w,w0} reads
  // sum_{v <= w} p*_{v,w} D_{v^-1} = delta_{w,w0}: solve upwards in w.
  auto H = b2();
  const auto& W = H->W();
  int N = W.size();
  Elt w0 = W.longest();
  std::vector<GroupRingElement> D(N, H->zero());
  for (Elt w = 0; w < N; ++w) {
    GroupRingElement rhs = w == w0 ? H->one() : H->zero();
    for (Elt v = 0; v < N; ++v)
      if (v != w && W.bruhat_leq(v, w)) rhs -= H->p(v, w) * D[W.inverse(v)];
    D[W.inverse(w)] = rhs;
  }
  HeckeElement d(N);
  d.c = D;
  EXPECT_EQ(H->D_inv(w0), d);
}

TEST(Weights, Validation) {
  auto W = CoxeterSystem::make(CoxeterType::A, 3);
  EXPECT_THROW(WeightFunction::specialized(*W, 1, 2), std::invalid_argument);
  auto B = CoxeterSystem::make(CoxeterType::B, 3);
  EXPECT_THROW(WeightFunction::specialized(*B, 0, 2), std::invalid_argument);
  EXPECT_THROW(WeightFunction(*B, 1, {Exponent(2), Exponent(1), Exponent(3)}, "bad"), std::invalid_argument);
  EXPECT_TRUE(WeightFunction::specialized(*B, 1, 3).asymptotic(*B));
  EXPECT_FALSE(WeightFunction::specialized(*B, 1, 2).asymptotic(*B));
  EXPECT_TRUE(WeightFunction::generic(*B).asymptotic(*B));
}

// ---- exports and cache ----

TEST(Export, HTableCsvShape) {
  auto H = b2();
  auto csv = h_table_csv(*H);
  EXPECT_EQ(csv.substr(0, 8), "x,y,z,h\n");
  std::size_t rows = 0;
  for (Elt x = 0; x < H->size(); ++x)
    for (Elt y = 0; y < H->size(); ++y) rows += H->h_row(x, y).size();
  EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')), rows + 1);
  EXPECT_EQ(h_table_json(*H).size(), rows);
  EXPECT_EQ(kl_table_csv(*H), kl_table_csv(*b2()));
}

TEST(Cache, SerializationRoundTrip) {
  auto W = CoxeterSystem::make(CoxeterType::B, 3);
  auto H = make_hecke(W, WeightFunction::generic(*W));
  auto text = serialize_h_table(*H);
  auto t = parse_h_table(text, H->size(), H->arity());
  for (Elt x = 0; x < H->size(); ++x)
    for (Elt y = 0; y < H->size(); ++y) EXPECT_EQ(t[x * H->size() + y], H->h_row(x, y));
  EXPECT_THROW(parse_h_table("0 0 0\n", H->size(), 2), std::runtime_error);
  EXPECT_THROW(parse_h_table("0 0 99 0/0:1\n", H->size(), 2), std::runtime_error);
}

TEST(Cache, HitMissAndCorruption) {
  auto dir = std::filesystem::temp_directory_path() / ("klcells-test-cache-" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  TableCache cache(dir);
  auto W = CoxeterSystem::make(CoxeterType::B, 3);
  auto H1 = make_hecke(W, WeightFunction::specialized(*W, 1, 3));
  EXPECT_EQ(cache.load_h_table(*H1), TableCache::Status::Miss);
  auto path = cache.path_for(*H1, "htable");
  ASSERT_TRUE(std::filesystem::exists(path));

  auto H2 = make_hecke(W, WeightFunction::specialized(*W, 1, 3));
  EXPECT_EQ(cache.load_h_table(*H2), TableCache::Status::Hit);
  EXPECT_EQ(h_table_csv(*H1), h_table_csv(*H2));

  // different weights use a different file
  auto H3 = make_hecke(W, WeightFunction::specialized(*W, 1, 4));
  EXPECT_NE(cache.path_for(*H3, "htable"), path);

  // flip one payload byte: detected, recomputed, rewritten
  {
    std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
    f.seekg(0, std::ios::end);
    auto size = static_cast<long>(f.tellg());
    f.seekp(size - 3);
    f.put('9');
  }
  auto H4 = make_hecke(W, WeightFunction::specialized(*W, 1, 3));
  EXPECT_EQ(cache.load_h_table(*H4), TableCache::Status::Corrupt);
  EXPECT_EQ(h_table_csv(*H1), h_table_csv(*H4));
  auto H5 = make_hecke(W, WeightFunction::specialized(*W, 1, 3));
  EXPECT_EQ(cache.load_h_table(*H5), TableCache::Status::Hit);

  // truncated file
  std::filesystem::resize_file(path, 40);
  auto H6 = make_hecke(W, WeightFunction::specialized(*W, 1, 3));
  EXPECT_EQ(cache.load_h_table(*H6), TableCache::Status::Corrupt);
  std::filesystem::remove_all(dir);
}

TEST(Cache, DisabledWithoutDirectory) {
  TableCache cache;
  auto H = b2();
  EXPECT_FALSE(cache.enabled());
  EXPECT_EQ(cache.load_h_table(*H), TableCache::Status::Disabled);
  EXPECT_TRUE(H->has_h_table());
}
