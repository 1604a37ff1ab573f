#pragma once
// Type B_n in the asymptotic case: t-length, a_l, w = a_w a_l sigma_w b_w^{-1},
// Robinson-Schensted invariants, the E_w basis, and the cell datum.

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "cells.hpp"
#include "hecke.hpp"
#include "report.hpp"

namespace klcells {

// ---- tableaux ----

using Tableau = std::vector<std::vector<int>>;
using Partition = std::vector<int>;
using Bitableau = std::pair<Tableau, Tableau>;
using Bipartition = std::pair<Partition, Partition>;

inline Partition shape(const Tableau& T) {
  Partition p;
  for (const auto& r : T) p.push_back(static_cast<int>(r.size()));
  return p;
}

inline Bipartition shape(const Bitableau& B) { return {shape(B.first), shape(B.second)}; }

/// Row insertion of w(1), ..., w(n); returns (P, Q).
inline std::pair<Tableau, Tableau> rs_insert(const std::vector<int>& word) {
  Tableau P, Q;
  for (std::size_t k = 0; k < word.size(); ++k) {
    int x = word[k];
    std::size_t row = 0;
    for (;; ++row) {
      if (row == P.size()) {
        P.push_back({x});
        Q.push_back({static_cast<int>(k + 1)});
        break;
      }
      auto it = std::upper_bound(P[row].begin(), P[row].end(), x);
      if (it == P[row].end()) {
        P[row].push_back(x);
        Q[row].push_back(static_cast<int>(k + 1));
        break;
      }
      std::swap(x, *it);
    }
  }
  return {P, Q};
}

/// Classical RS of a type A element (its window).
inline std::pair<Tableau, Tableau> rs_classical(const CoxeterSystem& W, Elt w) {
  if (W.type() != CoxeterType::A) throw std::invalid_argument("rs_classical: type A element expected");
  return rs_insert(W.key(w));
}

inline Tableau relabel(Tableau T, const std::function<int(int)>& f) {
  for (auto& r : T)
    for (auto& x : r) x = f(x);
  return T;
}

inline bool is_standard(const Tableau& T) {
  for (std::size_t i = 0; i < T.size(); ++i)
    for (std::size_t j = 0; j < T[i].size(); ++j) {
      if (j + 1 < T[i].size() && T[i][j] >= T[i][j + 1]) return false;
      if (i + 1 < T.size() && j < T[i + 1].size() && T[i][j] >= T[i + 1][j]) return false;
      if (i + 1 < T.size() && T[i + 1].size() > T[i].size()) return false;
    }
  return true;
}

/// Standard tableaux of shape p filled with 1..|p|.
inline std::vector<Tableau> standard_tableaux(const Partition& p) {
  std::vector<Tableau> out;
  int n = 0;
  for (int x : p) n += x;
  Tableau T(p.size());
  std::function<void(int)> place = [&](int k) {
    if (k > n) {
      out.push_back(T);
      return;
    }
    for (std::size_t r = 0; r < p.size(); ++r) {
      std::size_t c = T[r].size();
      if (static_cast<int>(c) >= p[r]) continue;
      if (r > 0 && T[r - 1].size() <= c) continue;
      T[r].push_back(k);
      place(k + 1);
      T[r].pop_back();
    }
  };
  place(1);
  return out;
}

inline std::vector<Partition> partitions(int n, int maxpart = -1) {
  if (maxpart < 0) maxpart = n;
  std::vector<Partition> out;
  if (n == 0) return {Partition{}};
  for (int first = std::min(n, maxpart); first >= 1; --first)
    for (auto& rest : partitions(n - first, first)) {
      Partition p{first};
      p.insert(p.end(), rest.begin(), rest.end());
      out.push_back(p);
    }
  return out;
}

inline std::vector<Bipartition> bipartitions(int n) {
  std::vector<Bipartition> out;
  for (int k = n; k >= 0; --k)
    for (auto& a : partitions(k))
      for (auto& b : partitions(n - k)) out.emplace_back(a, b);
  return out;
}

inline std::vector<int> row_reading(const Bitableau& B) {
  std::vector<int> r;
  for (const auto& row : B.first) r.insert(r.end(), row.begin(), row.end());
  r.push_back(0);
  for (const auto& row : B.second) r.insert(r.end(), row.begin(), row.end());
  return r;
}

/// n-standard bitableaux of shape lambda, in lexicographic row-reading order.
inline std::vector<Bitableau> standard_bitableaux(const Bipartition& lam) {
  int n1 = 0, n2 = 0;
  for (int x : lam.first) n1 += x;
  for (int x : lam.second) n2 += x;
  int n = n1 + n2;
  auto t1 = standard_tableaux(lam.first), t2 = standard_tableaux(lam.second);
  std::vector<Bitableau> out;
  std::vector<int> mask(n, 0);
  std::fill(mask.begin(), mask.begin() + n1, 1);
  std::sort(mask.begin(), mask.end());
  do {
    std::vector<int> A, B;
    for (int i = 0; i < n; ++i) (mask[i] ? A : B).push_back(i + 1);
    for (const auto& x : t1)
      for (const auto& y : t2)
        out.emplace_back(relabel(x, [&](int v) { return A[v - 1]; }), relabel(y, [&](int v) { return B[v - 1]; }));
  } while (std::next_permutation(mask.begin(), mask.end()));
  std::sort(out.begin(), out.end(), [](const Bitableau& a, const Bitableau& b) { return row_reading(a) < row_reading(b); });
  return out;
}

inline nlohmann::json tableau_json(const Tableau& T) { return T; }
inline nlohmann::json bitableau_json(const Bitableau& B) { return nlohmann::json::array({B.first, B.second}); }
inline nlohmann::json bipartition_json(const Bipartition& p) { return nlohmann::json::array({p.first, p.second}); }

inline std::string partition_string(const Partition& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return s + ")";
}
inline std::string bipartition_string(const Bipartition& p) {
  return "(" + partition_string(p.first) + "," + partition_string(p.second) + ")";
}

// ---- type B combinatorics ----

inline void require_type_b(const CoxeterSystem& W) {
  if (W.type() != CoxeterType::B) throw std::invalid_argument("type B system required");
}

/// Generators of the symmetric group S_n = <s1, ..., s_{n-1}>.
inline GenSet symmetric_gens(const CoxeterSystem& W) { return W.all_gens() & ~GenSet(1); }

/// Sigma_{l,n-l}: s1..s_{n-1} without s_l.
inline GenSet young_gens(const CoxeterSystem& W, int l) {
  GenSet I = symmetric_gens(W);
  if (l >= 1 && l <= W.rank() - 1) I &= ~(GenSet(1) << l);
  return I;
}

/// a_l = t (s1 t) (s2 s1 t) ... (s_{l-1} ... s1 t).
inline Elt a_l_element(const CoxeterSystem& W, int l) {
  require_type_b(W);
  if (l < 0 || l > W.rank()) throw std::invalid_argument("a_l: l out of range");
  std::vector<int> word;
  for (int k = 0; k < l; ++k) {
    for (int i = k; i >= 1; --i) word.push_back(i);
    word.push_back(0);
  }
  return W.from_word(word);
}

/// X_{l,n-l}: distinguished left coset representatives of S_{l,n-l} in S_n.
inline std::vector<Elt> young_coset_reps(const CoxeterSystem& W, int l) {
  std::vector<Elt> r;
  GenSet S = symmetric_gens(W), I = young_gens(W, l);
  for (Elt w = 0; w < W.size(); ++w)
    if (W.in_parabolic(w, S) && (W.right_descents(w) & I) == 0) r.push_back(w);
  return r;
}

struct BDecomposition {
  Elt a = 0;
  int l = 0;
  Elt sigma = 0;
  Elt b = 0;
};

/// w = a_w a_l sigma_w b_w^{-1} with a_w, b_w in X_{l,n-l}, sigma_w in S_{l,n-l}.
inline BDecomposition bi_decompose(const CoxeterSystem& W, Elt w) {
  require_type_b(W);
  int l = W.t_length(w);
  Elt al = a_l_element(W, l);
  GenSet I = young_gens(W, l);
  auto X = young_coset_reps(W, l);
  for (Elt a : X) {
    Elt m = W.multiply(al, W.multiply(W.inverse(a), w));
    for (Elt b : X) {
      Elt s = W.multiply(m, b);
      if (W.in_parabolic(s, I)) return {a, l, s, b};
    }
  }
  throw std::logic_error("bi_decompose: no decomposition found");
}

/// Left-cell invariant (l, b_w, Q of the S_l factor, Q of the S_{[l+1,n]} factor).
struct BInvariant {
  int l = 0;
  Elt b = 0;
  Tableau Q1, Q2;
  auto operator<=>(const BInvariant&) const = default;
};

// ---- context ----

/// Tables for one type B Hecke algebra in the asymptotic case.
class TypeBContext {
 public:
  explicit TypeBContext(const HeckeAlgebra& H) : H_(&H), abs_(H, H.W().all_gens()) {
    const auto& W = H.W();
    require_type_b(W);
    if (!H.weights().asymptotic(W))
      throw std::invalid_argument("weights " + H.weights().label() + " are not in the asymptotic case (need b > (n-1)a)");
    n_ = W.rank();
    N_ = W.size();
    for (int l = 0; l <= n_; ++l) {
      al_.push_back(a_l_element(W, l));
      rel_.emplace_back(H, young_gens(W, l));
    }
    dec_.resize(N_);
    inv_.resize(N_);
    B_.resize(N_);
    for (Elt w = 0; w < N_; ++w) {
      dec_[w] = bi_decompose(W, w);
      inv_[w] = compute_invariant(w);
    }
    for (Elt w = 0; w < N_; ++w) B_[w] = bitableau_of(inv_[w]);
    for (Elt w = 0; w < N_; ++w) {
      Bipartition lam = shape(B_[w]);
      if (std::find(labels_.begin(), labels_.end(), lam) == labels_.end()) labels_.push_back(lam);
    }
    std::sort(labels_.begin(), labels_.end(), std::greater<>());
    label_of_.resize(N_);
    for (Elt w = 0; w < N_; ++w)
      label_of_[w] = static_cast<int>(std::find(labels_.begin(), labels_.end(), shape(B_[w])) - labels_.begin());
  }

  const HeckeAlgebra& hecke() const { return *H_; }
  const CoxeterSystem& W() const { return H_->W(); }
  int n() const { return n_; }
  const CellStructure& cells() const { return abs_; }
  /// Relative cells for Sigma_{l,n-l}.
  const CellStructure& relative(int l) const { return rel_.at(l); }
  Elt a_l(int l) const { return al_.at(l); }
  const BDecomposition& decomposition(Elt w) const { return dec_[w]; }
  /// sigma_w b_w^{-1}.
  Elt sb(Elt w) const { return W().multiply(dec_[w].sigma, W().inverse(dec_[w].b)); }
  const BInvariant& invariant(Elt w) const { return inv_[w]; }
  /// B(w); the left-cell tableau pair.
  const Bitableau& B(Elt w) const { return B_[w]; }
  /// A(w) = B(w^{-1}).
  const Bitableau& A(Elt w) const { return B_[W().inverse(w)]; }
  Bipartition label(Elt w) const { return shape(B_[w]); }
  /// Labels that occur (all of Lambda_n), in decreasing lexicographic order.
  const std::vector<Bipartition>& labels() const { return labels_; }
  int label_index(Elt w) const { return label_of_[w]; }

  /// Whether the element is the product of its decomposition with the
  /// stated memberships and additive lengths.
  bool decomposition_valid(Elt w) const {
    const auto& Wr = W();
    const auto& d = dec_[w];
    GenSet I = young_gens(Wr, d.l);
    auto X = young_coset_reps(Wr, d.l);
    bool mem = std::count(X.begin(), X.end(), d.a) && std::count(X.begin(), X.end(), d.b) && Wr.in_parabolic(d.sigma, I);
    Elt r = Wr.multiply(Wr.multiply(Wr.multiply(d.a, al_[d.l]), d.sigma), Wr.inverse(d.b));
    int len = Wr.length(d.a) + Wr.length(al_[d.l]) + Wr.length(d.sigma) + Wr.length(d.b);
    return mem && r == w && len == Wr.length(w);
  }

  // ---- E basis ----

  /// E_w = T_{a_w} C_{a_l sigma_w b_w^{-1}}.
  HeckeElement E(Elt w) const {
    const auto& d = dec_[w];
    return H_->lmul_T(d.a, H_->C(W().multiply(al_[d.l], sb(w))));
  }

  /// y ⪯ w.
  bool preceq(Elt y, Elt w) const {
    int l = dec_[y].l;
    if (l != dec_[w].l) return false;
    if (!rel_[l].leq(CellSide::L, sb(y), sb(w))) return false;
    return y == w || W().length(y) < W().length(w);
  }

  // ---- cell datum ----

  /// w_lambda(S, T): the element with A = S, B = T.
  Elt w_lambda(const Bitableau& S, const Bitableau& T) const {
    for (Elt w = 0; w < N_; ++w)
      if (B_[w] == T && A(w) == S) return w;
    throw std::invalid_argument("no element with the given bitableaux");
  }

 private:
  BInvariant compute_invariant(Elt w) const {
    const auto& Wr = W();
    const auto& d = dec_[w];
    const auto& k = Wr.key(d.sigma);
    std::vector<int> p1(k.begin(), k.begin() + d.l), p2;
    for (int i = d.l; i < n_; ++i) p2.push_back(k[i] - d.l);
    return {d.l, d.b, rs_insert(p1).second, rs_insert(p2).second};
  }

  // Entries of the S_l factor go to b(1..l), the others to b(l+1..n);
  // lambda_1 carries the S_{[l+1,n]} factor.
  Bitableau bitableau_of(const BInvariant& v) const {
    const auto& bk = W().key(v.b);
    int l = v.l;
    Tableau t2 = relabel(v.Q1, [&](int i) { return bk[i - 1]; });
    Tableau t1 = relabel(v.Q2, [&](int j) { return bk[l + j - 1]; });
    return {t1, t2};
  }

  const HeckeAlgebra* H_;
  CellStructure abs_;
  int n_ = 0, N_ = 0;
  std::vector<Elt> al_;
  std::vector<CellStructure> rel_;
  std::vector<BDecomposition> dec_;
  std::vector<BInvariant> inv_;
  std::vector<Bitableau> B_;
  std::vector<Bipartition> labels_;
  std::vector<int> label_of_;
};

// ---- E-basis tables ----

/// pi_{y,w} (C_w = sum pi_{y,w} E_y) and lambda_{y,w}
/// (bar(E_w) = sum bar(lambda_{y,w}) E_y).
class EBasis {
 public:
  explicit EBasis(const TypeBContext& ctx) : ctx_(&ctx) {
    const auto& H = ctx.hecke();
    N_ = H.size();
    E_.reserve(N_);
    for (Elt w = 0; w < N_; ++w) E_.push_back(ctx.E(w));
    pi_.resize(N_);
    lam_.resize(N_);
    for (Elt w = 0; w < N_; ++w) {
      pi_[w] = to_E(H.C(w));
      lam_[w] = to_E(H.bar(E_[w]));
      for (auto& c : lam_[w]) c = c.bar();
    }
    solve_kl3();
  }

  const HeckeElement& E(Elt w) const { return E_[w]; }
  /// Coordinates in the E basis (E_w = T_w + shorter terms).
  std::vector<GroupRingElement> to_E(HeckeElement h) const {
    const auto& H = ctx_->hecke();
    std::vector<GroupRingElement> out(N_, H.zero());
    for (Elt z = N_ - 1; z >= 0; --z) {
      if (h[z].is_zero()) continue;
      GroupRingElement c = h[z];
      h.add_scaled(E_[z], -c);
      out[z] = std::move(c);
    }
    return out;
  }
  const GroupRingElement& pi(Elt y, Elt w) const { return pi_[w][y]; }
  const GroupRingElement& lambda(Elt y, Elt w) const { return lam_[w][y]; }
  /// pi obtained from the (KL1')-(KL3') recursion.
  const GroupRingElement& pi_recursive(Elt y, Elt w) const { return pik_[w][y]; }
  bool kl3_consistent() const { return kl3_ok_; }

  /// Leading term, triangularity, the support of lambda and pi, membership
  /// in Z[q, q^{-1}], and agreement of direct and recursive pi.
  PropertyReport check() const {
    PropertyReport rep("e-basis");
    const auto& W = ctx_->W();
    const auto& H = ctx_->hecke();
    rep.expect(kl3_ok_, "KL3' right-hand side not of the form bar(pi)-pi");
    for (Elt w = 0; w < N_; ++w) {
      rep.expect(E_[w][w] == H.one(), "E_w does not have leading term T_w at " + W.word_string(w));
      for (Elt z = w + 1; z < N_; ++z)
        rep.expect(E_[w][z].is_zero(), "E_w not triangular at " + W.word_string(w));
      const auto& d = ctx_->decomposition(w);
      HeckeElement alt = H.lmul_T(d.a, H.t_mul(H.C(ctx_->a_l(d.l)), H.C(ctx_->sb(w))));
      rep.expect((alt -= E_[w]).is_zero(), "T_a C_{a_l} C_{sigma b^-1} != E_w at " + W.word_string(w));
      for (Elt y = 0; y < N_; ++y) {
        std::string at = tuple_string(W, {y, w});
        const auto& p = pi_[w][y];
        const auto& l = lam_[w][y];
        if (y == w) {
          rep.expect(p == H.one(), "pi_{w,w} != 1 at " + at);
          rep.expect(l == H.one(), "lambda_{w,w} != 1 at " + at);
          continue;
        }
        if (!p.is_zero()) {
          rep.expect(ctx_->preceq(y, w), "pi nonzero outside ⪯ at " + at);
          rep.expect(p.in(Region::Neg) && in_q_ring(p), "pi not in q^-1 Z[q^-1] at " + at);
        }
        if (!l.is_zero()) {
          rep.expect(ctx_->preceq(y, w), "lambda nonzero outside ⪯ at " + at);
          rep.expect(in_q_ring(l), "lambda not in Z[q,q^-1] at " + at);
        }
        rep.expect(p == pik_[w][y], "recursive pi disagrees at " + at);
      }
    }
    return rep;
  }

  /// C_s E_w for s = s_i stays in the t-length stratum and goes down in
  /// <=_{L,l}; C_t E_w raises the t-length or goes down in <=_{L,l}.
  PropertyReport check_generator_action() const {
    PropertyReport rep("e-basis-action");
    const auto& W = ctx_->W();
    const auto& H = ctx_->hecke();
    for (int s = 0; s < W.rank(); ++s)
      for (Elt w = 0; w < N_; ++w) {
        auto c = to_E(H.t_mul(H.C(W.gen(s)), E_[w]));
        int l = ctx_->decomposition(w).l;
        for (Elt z = 0; z < N_; ++z) {
          if (c[z].is_zero()) continue;
          int lz = ctx_->decomposition(z).l;
          bool down = lz == l && ctx_->relative(l).leq(CellSide::L, ctx_->sb(z), ctx_->sb(w));
          bool ok = s == 0 ? (lz > l || down) : down;
          rep.expect(ok, "C_" + W.gen_name(s) + " E_w has E_z outside the allowed range at " + tuple_string(W, {z, w}));
        }
      }
    return rep;
  }

 private:
  bool in_q_ring(const GroupRingElement& g) const {
    const auto& H = ctx_->hecke();
    Exponent a = H.weights()(1);
    for (const auto& [e, c] : g.terms()) {
      (void)c;
      // e must be an integer multiple of a.
      std::int64_t k = 0;
      bool found = false;
      for (int i = 0; i < H.arity(); ++i)
        if (a.c[i] != 0) {
          if (e.c[i] % a.c[i]) return false;
          k = e.c[i] / a.c[i];
          found = true;
          break;
        }
      if (!found) return false;
      if (!(a * k == e)) return false;
    }
    return true;
  }

  void solve_kl3() {
    const auto& H = ctx_->hecke();
    pik_.assign(N_, std::vector<GroupRingElement>(N_, H.zero()));
    for (Elt w = 0; w < N_; ++w) {
      pik_[w][w] = H.one();
      for (Elt y = w - 1; y >= 0; --y) {
        if (!ctx_->preceq(y, w)) continue;
        GroupRingElement f = H.zero();
        for (Elt z = y + 1; z <= w; ++z)
          if (!lam_[z][y].is_zero() && !pik_[w][z].is_zero() && ctx_->preceq(z, w)) f.add_product(lam_[z][y], pik_[w][z]);
        auto [neg, _] = f.sign_part(Region::Neg);
        GroupRingElement p = -neg;
        if (!(f == p.bar() - p)) kl3_ok_ = false;
        pik_[w][y] = p;
      }
    }
  }

  const TypeBContext* ctx_;
  int N_;
  std::vector<HeckeElement> E_;
  std::vector<std::vector<GroupRingElement>> pi_, lam_, pik_;
  bool kl3_ok_ = true;
};

// ---- checks ----

/// The two identities C_sigma C_{a_l} = C_{sigma a_l}, C_{a_l} C_sigma =
/// C_{a_l sigma}, and C_sigma C_{a_l} = C_{a_l} C_{a_l sigma a_l} for sigma
/// in S_{l,n-l}.
inline PropertyReport check_a_l_products(const TypeBContext& ctx) {
  PropertyReport rep("a_l-products");
  const auto& W = ctx.W();
  const auto& H = ctx.hecke();
  GenSet S = symmetric_gens(W);
  for (int l = 0; l <= ctx.n(); ++l) {
    Elt al = ctx.a_l(l);
    rep.expect(W.inverse(al) == al, "a_l is not an involution for l=" + std::to_string(l));
    rep.expect(W.t_length(al) == l, "a_l has wrong t-length for l=" + std::to_string(l));
    GenSet I = young_gens(W, l);
    for (Elt s = 0; s < W.size(); ++s) {
      if (!W.in_parabolic(s, S)) continue;
      std::string at = "l=" + std::to_string(l) + " sigma=" + W.word_string(s);
      HeckeElement left = H.t_mul(H.C(s), H.C(al));
      HeckeElement right = H.t_mul(H.C(al), H.C(s));
      rep.expect((HeckeElement(left) -= H.C(W.multiply(s, al))).is_zero(), "C_sigma C_{a_l} != C_{sigma a_l} at " + at);
      rep.expect((HeckeElement(right) -= H.C(W.multiply(al, s))).is_zero(), "C_{a_l} C_sigma != C_{a_l sigma} at " + at);
      if (W.in_parabolic(s, I)) {
        Elt c = W.multiply(W.multiply(al, s), al);
        rep.expect(W.in_parabolic(c, I), "a_l sigma a_l leaves the Young subgroup at " + at);
        HeckeElement alt = H.t_mul(H.C(al), H.C(c));
        rep.expect((alt -= left).is_zero(), "C_sigma C_{a_l} != C_{a_l} C_{a_l sigma a_l} at " + at);
      }
    }
  }
  return rep;
}

/// T_{t s1 ... s_l} C_{a_l} = C_{a_{l+1}} + h(a_l) C_{a_l} with
/// h(a_l) = -Q^{-1} bar(T_{s1...s_l}), supported on w <= s1...s_l.
inline PropertyReport check_a_l_step(const TypeBContext& ctx) {
  PropertyReport rep("a_l-step");
  const auto& W = ctx.W();
  const auto& H = ctx.hecke();
  for (int l = 0; l + 1 <= ctx.n(); ++l) {
    std::vector<int> word{0}, tail;
    for (int i = 1; i <= l; ++i) {
      word.push_back(i);
      tail.push_back(i);
    }
    Elt x = W.from_word(word), y = W.from_word(tail);
    HeckeElement lhs = H.lmul_T(x, H.C(ctx.a_l(l)));
    lhs -= H.C(ctx.a_l(l + 1));
    HeckeElement h = H.bar_T(y).scaled(-H.qinv(0));
    for (Elt w = 0; w < W.size(); ++w)
      if (!h[w].is_zero()) rep.expect(W.bruhat_leq(w, y), "h(a_l) has a term above s1...s_l for l=" + std::to_string(l));
    HeckeElement rhs = H.t_mul(h, H.C(ctx.a_l(l)));
    rep.expect((rhs -= lhs).is_zero(), "step identity fails for l=" + std::to_string(l));
  }
  return rep;
}

/// Decomposition validity, label orientation |lambda_2| = l_t, labels
/// constant on two-sided cells, and the invariant separating left cells.
inline PropertyReport check_invariants(const TypeBContext& ctx) {
  PropertyReport rep("b-invariants");
  const auto& W = ctx.W();
  const auto& cs = ctx.cells();
  int N = W.size();
  for (Elt w = 0; w < N; ++w) {
    rep.expect(ctx.decomposition_valid(w), "bad decomposition of " + W.word_string(w));
    int l2 = 0;
    for (int x : ctx.label(w).second) l2 += x;
    rep.expect(l2 == W.t_length(w), "|lambda_2| != l_t at " + W.word_string(w));
    rep.expect(shape(ctx.A(w)) == shape(ctx.B(w)), "A(w), B(w) of different shape at " + W.word_string(w));
  }
  for (Elt x = 0; x < N; ++x)
    for (Elt y = 0; y < N; ++y) {
      std::string at = tuple_string(W, {x, y});
      bool L = cs.equiv(CellSide::L, x, y);
      rep.expect(L == (ctx.invariant(x) == ctx.invariant(y)), "invariant vs left cell mismatch at " + at);
      rep.expect(L == (ctx.B(x) == ctx.B(y)), "B-tableau vs left cell mismatch at " + at);
      const auto& dx = ctx.decomposition(x);
      const auto& dy = ctx.decomposition(y);
      bool b = dx.l == dy.l && dx.b == dy.b && ctx.relative(dx.l).equiv(CellSide::L, dx.sigma, dy.sigma);
      rep.expect(L == b, "(l, b, sigma) criterion mismatch at " + at);
      rep.expect(cs.equiv(CellSide::LR, x, y) == (ctx.label(x) == ctx.label(y)), "label vs two-sided cell mismatch at " + at);
    }
  return rep;
}

/// x <=_L y iff sigma_x b_x^{-1} <=_{L,l} sigma_y b_y^{-1} (equal t-length),
/// plus the two-sided statements on sigma.
inline PropertyReport check_left_order_reduction(const TypeBContext& ctx) {
  PropertyReport rep("left-order-reduction");
  const auto& W = ctx.W();
  const auto& cs = ctx.cells();
  int N = W.size();
  for (Elt x = 0; x < N; ++x)
    for (Elt y = 0; y < N; ++y) {
      const auto& dx = ctx.decomposition(x);
      const auto& dy = ctx.decomposition(y);
      std::string at = tuple_string(W, {x, y});
      if (dx.l == dy.l) {
        const auto& rel = ctx.relative(dx.l);
        rep.expect(cs.leq(CellSide::L, x, y) == rel.leq(CellSide::L, ctx.sb(x), ctx.sb(y)), "left preorder mismatch at " + at);
        if (cs.leq(CellSide::LR, x, y))
          rep.expect(rel.leq(CellSide::LR, dx.sigma, dy.sigma), "two-sided bound on sigma fails at " + at);
      }
      if (cs.equiv(CellSide::LR, x, y))
        rep.expect(dx.l == dy.l && ctx.relative(dx.l).equiv(CellSide::LR, dx.sigma, dy.sigma),
                   "two-sided cell does not match sigma at " + at);
    }
  return rep;
}

/// For left cells in the same R_lambda: the right-cell matching bijection
/// satisfies ♥ and is the only one.
inline PropertyReport check_equivalent_cells(const TypeBContext& ctx) {
  PropertyReport rep("equivalent-cells");
  const auto& H = ctx.hecke();
  const auto& W = ctx.W();
  const auto& cs = ctx.cells();
  const auto& cells = cs.left_cells();
  for (std::size_t i = 0; i < cells.size(); ++i)
    for (std::size_t j = 0; j < cells.size(); ++j) {
      if (ctx.label(cells[i][0]) != ctx.label(cells[j][0])) continue;
      std::vector<Elt> img;
      bool complete = true;
      for (Elt x : cells[i]) {
        Elt m = -1;
        for (Elt z : cells[j])
          if (cs.equiv(CellSide::R, x, z)) {
            rep.expect(m < 0, "two elements of a left cell in one right cell");
            m = z;
          }
        if (m < 0) {
          rep.fail("no right-cell partner for " + W.word_string(x));
          complete = false;
        }
        img.push_back(m);
      }
      if (!complete || std::set<Elt>(img.begin(), img.end()).size() != cells[j].size()) {
        rep.fail("right-cell matching is not a bijection");
        continue;
      }
      std::string at = "cells " + W.word_string(cells[i][0]) + " / " + W.word_string(cells[j][0]);
      auto r = approx_check(H, cells[i], cells[j], img);
      rep.expect(r.passed(), "right-cell bijection fails ♥ for " + at);
      auto all = heart_bijections(H, cells[i], cells[j], W.all_gens(), 2);
      rep.expect(all.size() == 1 && all[0] == img, "♥ bijection not unique for " + at);
    }
  return rep;
}

/// C ≈ C b via x -> x b, and C b = X_{l,n-l} a_l C-bar.
inline PropertyReport check_coset_translation(const TypeBContext& ctx) {
  PropertyReport rep("coset-translation");
  const auto& H = ctx.hecke();
  const auto& W = ctx.W();
  const auto& cs = ctx.cells();
  for (const auto& cell : cs.left_cells()) {
    const auto& d0 = ctx.decomposition(cell[0]);
    std::vector<Elt> img;
    std::set<Elt> bar;
    for (Elt x : cell) {
      img.push_back(W.multiply(x, d0.b));
      bar.insert(ctx.decomposition(x).sigma);
    }
    std::string at = W.word_string(cell[0]);
    int c = cs.partition(CellSide::L).cell_of[img[0]];
    auto target = cs.partition(CellSide::L).cells[c];
    rep.expect(std::set<Elt>(target.begin(), target.end()) == std::set<Elt>(img.begin(), img.end()),
               "C b is not a left cell for " + at);
    if (target.size() != img.size()) continue;
    rep.expect(approx_check(H, cell, target, img).passed(), "C ≈ C b fails for " + at);
    std::set<Elt> expect;
    for (Elt x : young_coset_reps(W, d0.l))
      for (Elt s : bar) expect.insert(W.multiply(W.multiply(x, ctx.a_l(d0.l)), s));
    rep.expect(expect == std::set<Elt>(img.begin(), img.end()), "C b != X a_l C-bar for " + at);
  }
  return rep;
}

// ---- cell datum ----

struct CellDatum {
  std::vector<Bipartition> Lambda;
  std::vector<std::vector<Bitableau>> M;          // M(lambda)
  std::vector<std::vector<std::vector<Elt>>> C;   // C[lambda][S][T] = w_lambda(S, T)
  std::vector<std::pair<int, int>> order;         // (i, j): Lambda[i] < Lambda[j]
};

inline CellDatum build_cell_datum(const TypeBContext& ctx) {
  const auto& W = ctx.W();
  const auto& cs = ctx.cells();
  CellDatum D;
  D.Lambda = bipartitions(ctx.n());
  std::map<std::pair<Bitableau, Bitableau>, Elt> index;
  for (Elt w = 0; w < W.size(); ++w) index[{ctx.A(w), ctx.B(w)}] = w;
  for (const auto& lam : D.Lambda) {
    D.M.push_back(standard_bitableaux(lam));
    const auto& M = D.M.back();
    std::vector<std::vector<Elt>> grid(M.size(), std::vector<Elt>(M.size(), -1));
    for (std::size_t s = 0; s < M.size(); ++s)
      for (std::size_t t = 0; t < M.size(); ++t) {
        auto it = index.find({M[s], M[t]});
        if (it != index.end()) grid[s][t] = it->second;
      }
    D.C.push_back(std::move(grid));
  }
  int L = static_cast<int>(D.Lambda.size());
  std::vector<std::vector<Elt>> members(L);
  for (Elt w = 0; w < W.size(); ++w)
    for (int i = 0; i < L; ++i)
      if (ctx.label(w) == D.Lambda[i]) members[i].push_back(w);
  for (int i = 0; i < L; ++i)
    for (int j = 0; j < L; ++j) {
      if (i == j || members[i].empty() || members[j].empty()) continue;
      bool below = false;
      for (Elt x : members[i])
        for (Elt y : members[j])
          if (!below && cs.leq(CellSide::LR, x, y)) below = true;
      if (below) D.order.emplace_back(i, j);
    }
  return D;
}

inline nlohmann::json cell_datum_json(const TypeBContext& ctx, const CellDatum& D) {
  const auto& W = ctx.W();
  nlohmann::json lam = nlohmann::json::array();
  for (std::size_t i = 0; i < D.Lambda.size(); ++i) {
    nlohmann::json tabs = nlohmann::json::array();
    for (const auto& T : D.M[i]) tabs.push_back(bitableau_json(T));
    nlohmann::json grid = nlohmann::json::array();
    for (const auto& row : D.C[i]) {
      nlohmann::json r = nlohmann::json::array();
      for (Elt w : row) r.push_back(w < 0 ? nlohmann::json(nullptr) : W.to_json(w));
      grid.push_back(r);
    }
    lam.push_back({{"label", bipartition_json(D.Lambda[i])}, {"tableaux", tabs}, {"elements", grid}});
  }
  nlohmann::json order = nlohmann::json::array();
  for (auto [i, j] : D.order) order.push_back({i, j});
  return {{"Lambda", lam}, {"order", order}};
}

/// (C1) injective onto the basis; (C2) flat swaps S and T; (C3) for each
/// generator (and every w when the h-table is built): coefficients r_w(S',S)
/// agree for all columns T, and the remaining terms lie strictly below.
inline PropertyReport check_cell_datum(const TypeBContext& ctx, const CellDatum& D, bool all_w = false) {
  PropertyReport rep("cell-datum");
  const auto& W = ctx.W();
  const auto& H = ctx.hecke();
  int N = W.size();
  std::vector<int> hit(N, 0);
  for (std::size_t i = 0; i < D.Lambda.size(); ++i)
    for (std::size_t s = 0; s < D.M[i].size(); ++s)
      for (std::size_t t = 0; t < D.M[i].size(); ++t) {
        Elt w = D.C[i][s][t];
        rep.expect(w >= 0, "C1: no element for a tableau pair in " + bipartition_string(D.Lambda[i]));
        if (w < 0) continue;
        ++hit[w];
        rep.expect(W.inverse(w) == D.C[i][t][s], "C2: inverse does not swap tableaux at " + W.word_string(w));
      }
  for (Elt w = 0; w < N; ++w) rep.expect(hit[w] == 1, "C1: element hit " + std::to_string(hit[w]) + " times: " + W.word_string(w));
  std::set<std::pair<int, int>> below(D.order.begin(), D.order.end());
  // transitive closure of the order (it should already be transitive)
  std::vector<int> lab(N, -1);
  for (std::size_t i = 0; i < D.Lambda.size(); ++i)
    for (const auto& row : D.C[i])
      for (Elt w : row)
        if (w >= 0) lab[w] = static_cast<int>(i);
  std::vector<Elt> ws;
  if (all_w)
    for (Elt w = 0; w < N; ++w) ws.push_back(w);
  else
    for (int s = 0; s < W.rank(); ++s) ws.push_back(W.gen(s));
  auto h = [&](Elt w, Elt x, Elt y) -> GroupRingElement {
    if (all_w) return H.h(w, x, y);
    int s = std::find(ws.begin(), ws.end(), w) - ws.begin();
    const auto& g = sparse_get(H.gen_row(s, x), y);
    return g.arity() ? g : H.zero();
  };
  auto row_of = [&](Elt w, Elt x) {
    std::vector<std::pair<Elt, GroupRingElement>> r;
    if (all_w) {
      for (const auto& e : H.h_row(w, x)) r.push_back(e);
    } else {
      int s = std::find(ws.begin(), ws.end(), w) - ws.begin();
      for (const auto& e : H.gen_row(s, x)) r.push_back(e);
    }
    return r;
  };
  for (Elt w : ws)
    for (std::size_t i = 0; i < D.Lambda.size(); ++i) {
      const auto& grid = D.C[i];
      std::size_t m = grid.size();
      for (std::size_t s = 0; s < m; ++s)
        for (std::size_t t = 0; t < m; ++t) {
          Elt x = grid[s][t];
          if (x < 0) continue;
          for (const auto& [y, c] : row_of(w, x)) {
            if (c.is_zero()) continue;
            bool in_col = false;
            for (std::size_t s2 = 0; s2 < m; ++s2) in_col = in_col || grid[s2][t] == y;
            if (!in_col)
              rep.expect(lab[y] >= 0 && below.count({lab[y], static_cast<int>(i)}),
                         "C3: term outside the column not in a lower cell for " + tuple_string(W, {w, x, y}));
          }
          for (std::size_t s2 = 0; s2 < m; ++s2) {
            GroupRingElement r0 = h(w, x, grid[s2][t]);
            for (std::size_t t1 = 0; t1 < m; ++t1)
              if (t1 != t)
                rep.expect(r0 == h(w, grid[s][t1], grid[s2][t1]),
                           "C3: r_w depends on the column for " + tuple_string(W, {w, x, grid[s2][t]}));
          }
        }
    }
  return rep;
}

// ---- symmetric group ----

/// Classes of equal Q (recording tableau) equal left cells; equal P equal
/// right cells; Q(w) = P(w^{-1}).
inline PropertyReport check_rs_cells(const CellStructure& cs) {
  PropertyReport rep("rs-cells");
  const auto& W = cs.hecke().W();
  int N = W.size();
  std::vector<std::pair<Tableau, Tableau>> pq(N);
  for (Elt w = 0; w < N; ++w) pq[w] = rs_classical(W, w);
  for (Elt w = 0; w < N; ++w) {
    rep.expect(pq[w].second == pq[W.inverse(w)].first, "Q(w) != P(w^-1) at " + W.word_string(w));
    rep.expect(is_standard(pq[w].first) && is_standard(pq[w].second), "nonstandard tableau at " + W.word_string(w));
  }
  for (Elt x = 0; x < N; ++x)
    for (Elt y = 0; y < N; ++y) {
      std::string at = tuple_string(W, {x, y});
      rep.expect(cs.equiv(CellSide::L, x, y) == (pq[x].second == pq[y].second), "Q-class vs left cell at " + at);
      rep.expect(cs.equiv(CellSide::R, x, y) == (pq[x].first == pq[y].first), "P-class vs right cell at " + at);
      rep.expect(cs.equiv(CellSide::LR, x, y) == (shape(pq[x].first) == shape(pq[y].first)), "shape vs two-sided cell at " + at);
    }
  return rep;
}

}  // namespace klcells
