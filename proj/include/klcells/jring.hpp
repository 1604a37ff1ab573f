#pragma once
// Schur elements, the ring J_n with basis t_w, the homomorphism phi and the
// canonical map Phi onto the group algebra (type B, asymptotic case).

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cells.hpp"
#include "matrix.hpp"
#include "typeb.hpp"

namespace klcells {

/// Choice of the sign function n-hat: Lusztig's n_d, or constant 1.
enum class NHat { Lusztig, One };

/// Coordinates with respect to the basis {t_w} (over A).
using JVector = std::vector<GroupRingElement>;
/// Element of the group algebra R W as coefficients of group elements.
using GroupAlgebraElement = std::vector<RationalGroupRingElement>;

namespace detail {
inline GroupRingElement orzero(const GroupRingElement& g, const HeckeAlgebra& H) { return g.arity() ? g : H.zero(); }
}  // namespace detail

class JRing {
 public:
  JRing(const TypeBContext& ctx, NHat choice = NHat::Lusztig) : ctx_(&ctx), choice_(choice) {
    const auto& W = ctx.W();
    const auto& cs = ctx.cells();
    N_ = W.size();
    const auto& L = cs.partition(CellSide::L);
    const auto& R = cs.partition(CellSide::R);
    d_.assign(N_, -1);
    for (const auto& cell : L.cells) {
      Elt inv = -1;
      int count = 0;
      for (Elt x : cell)
        if (W.inverse(x) == x) {
          inv = x;
          ++count;
        }
      if (count != 1) throw std::logic_error("left cell without a unique involution");
      for (Elt x : cell) d_[x] = inv;
    }
    nd_.resize(N_);
    nhat_.resize(N_);
    for (Elt w = 0; w < N_; ++w) nd_[w] = H().p(0, d_[w]).leading_coeff();
    for (Elt w = 0; w < N_; ++w) nhat_[w] = choice == NHat::One ? BigInt(1) : nd_[W.inverse(w)];
    for (Elt w = 0; w < N_; ++w) cellpair_[{R.cell_of[w], L.cell_of[w]}] = w;
    lr_ = cs.partition(CellSide::LR).cell_of;
  }

  const TypeBContext& context() const { return *ctx_; }
  const HeckeAlgebra& H() const { return ctx_->hecke(); }
  NHat choice() const { return choice_; }
  int size() const { return N_; }
  /// The involution in the left cell of z.
  Elt d(Elt z) const { return d_[z]; }
  /// n_{d_z}: leading coefficient of p*_{1,d_z}.
  const BigInt& n_of_d(Elt z) const { return nd_[z]; }
  const BigInt& nhat(Elt w) const { return nhat_[w]; }
  int two_sided(Elt w) const { return lr_[w]; }

  /// The element z with x ~R z ~L y, if x ~L y^{-1}.
  std::optional<Elt> product_target(Elt x, Elt y) const {
    const auto& cs = ctx_->cells();
    if (!cs.equiv(CellSide::L, x, H().W().inverse(y))) return std::nullopt;
    auto it = cellpair_.find({cs.partition(CellSide::R).cell_of[x], cs.partition(CellSide::L).cell_of[y]});
    if (it == cellpair_.end()) return std::nullopt;
    return it->second;
  }

  /// gamma-hat_{x,y,z^{-1}} from the defining condition.
  BigInt gamma_hat(Elt x, Elt y, Elt z_inv) const {
    const auto& cs = ctx_->cells();
    const auto& W = H().W();
    Elt z = W.inverse(z_inv);
    if (cs.equiv(CellSide::L, x, W.inverse(y)) && cs.equiv(CellSide::R, x, z) && cs.equiv(CellSide::L, z, y))
      return nhat_[y];
    return 0;
  }

  JVector zero() const { return JVector(N_, H().zero()); }
  JVector basis(Elt w) const {
    JVector v = zero();
    v[w] = H().one();
    return v;
  }
  /// sum over D of n-hat_z t_z.
  JVector unit() const {
    JVector v = zero();
    for (Elt z = 0; z < N_; ++z)
      if (d_[z] == z) v[z] = GroupRingElement::constant(H().arity(), nhat_[z]);
    return v;
  }

  JVector multiply(const JVector& a, const JVector& b) const {
    JVector r = zero();
    for (Elt x = 0; x < N_; ++x) {
      if (a[x].is_zero()) continue;
      for (Elt y = 0; y < N_; ++y) {
        if (b[y].is_zero()) continue;
        auto z = product_target(x, y);
        if (!z) continue;
        r[*z].add_product(a[x], b[y].scaled(nhat_[y]));
      }
    }
    return r;
  }

  /// N1, N2, the table of gamma-hat against the product rule, the number of
  /// nonzero entries, associativity, the unit, and J_{n,lambda} = M_d(Z).
  PropertyReport check() const {
    PropertyReport rep("j-ring");
    const auto& W = H().W();
    const auto& cs = ctx_->cells();
    for (Elt w = 0; w < N_; ++w) {
      rep.expect(nhat_[w] == 1 || nhat_[w] == -1, "n-hat not a sign at " + W.word_string(w));
      for (Elt y = 0; y < N_; ++y)
        if (cs.equiv(CellSide::R, w, y)) rep.expect(nhat_[w] == nhat_[y], "n-hat not constant on a right cell");
    }
    std::size_t nonzero = 0;
    for (Elt x = 0; x < N_; ++x)
      for (Elt y = 0; y < N_; ++y) {
        auto t = product_target(x, y);
        for (Elt z = 0; z < N_; ++z) {
          BigInt g = gamma_hat(x, y, W.inverse(z));
          if (g != 0) ++nonzero;
          BigInt via = t && *t == z ? nhat_[y] : BigInt(0);
          rep.expect(g == via, "gamma-hat disagrees with the product rule at " + tuple_string(W, {x, y, z}));
          if (g != 0)
            rep.expect(cs.equiv(CellSide::L, x, W.inverse(y)) && cs.equiv(CellSide::L, y, z) && cs.equiv(CellSide::R, z, x),
                       "gamma-hat support at " + tuple_string(W, {x, y, z}));
        }
      }
    std::size_t cubes = 0;
    for (const auto& c : cs.partition(CellSide::LR).cells) {
      std::size_t d = 0;
      for (const auto& l : cs.left_cells())
        if (lr_[l[0]] == lr_[c[0]]) ++d;
      cubes += d * d * d;
    }
    rep.expect(nonzero == cubes, "number of nonzero gamma-hat " + std::to_string(nonzero) + " != sum d^3 = " + std::to_string(cubes));
    JVector e = unit();
    for (Elt w = 0; w < N_; ++w) {
      JVector b = basis(w);
      rep.expect(multiply(e, b) == b && multiply(b, e) == b, "unit fails at " + W.word_string(w));
    }
    for (Elt x = 0; x < N_; ++x)
      for (Elt y = 0; y < N_; ++y) {
        auto xy = product_target(x, y);
        for (Elt z = 0; z < N_; ++z) {
          auto yz = product_target(y, z);
          BigInt lc = 0, rc = 0;
          Elt le = -1, re = -1;
          if (xy) {
            if (auto t = product_target(*xy, z)) {
              le = *t;
              lc = nhat_[y] * nhat_[z];
            }
          }
          if (yz) {
            if (auto t = product_target(x, *yz)) {
              re = *t;
              rc = nhat_[z] * nhat_[*yz];
            }
          }
          rep.expect(le == re && lc == rc, "associativity fails at " + tuple_string(W, {x, y, z}));
        }
      }
    check_matrix_rings(rep);
    return rep;
  }

 private:
  // t-hat_w -> E_{r(w), c(w)} with r the right cell, c the left cell,
  // right cells indexed as inverses of left cells.
  void check_matrix_rings(PropertyReport& rep) const {
    const auto& W = H().W();
    const auto& cs = ctx_->cells();
    const auto& L = cs.partition(CellSide::L);
    std::map<int, std::vector<int>> lcells;  // two-sided index -> left cell ids
    for (std::size_t k = 0; k < L.cells.size(); ++k) lcells[lr_[L.cells[k][0]]].push_back(static_cast<int>(k));
    for (const auto& [lam, ids] : lcells) {
      std::size_t d = ids.size();
      auto index_of_left = [&](Elt w) { return std::find(ids.begin(), ids.end(), L.cell_of[w]) - ids.begin(); };
      std::map<std::pair<std::size_t, std::size_t>, Elt> unit;
      std::vector<Elt> members;
      for (Elt w = 0; w < N_; ++w)
        if (lr_[w] == lam) {
          members.push_back(w);
          unit[{index_of_left(W.inverse(w)), index_of_left(w)}] = w;
        }
      rep.expect(members.size() == d * d && unit.size() == d * d, "J_lambda is not of rank d^2");
      for (Elt x : members)
        for (Elt y : members) {
          std::size_t a = index_of_left(W.inverse(x)), b = index_of_left(x);
          std::size_t c = index_of_left(W.inverse(y)), e = index_of_left(y);
          auto t = product_target(x, y);
          if (b != c) {
            rep.expect(!t, "matrix-unit product should vanish at " + tuple_string(W, {x, y}));
          } else {
            auto it = unit.find({a, e});
            rep.expect(t && it != unit.end() && *t == it->second, "matrix-unit product wrong at " + tuple_string(W, {x, y}));
          }
        }
    }
  }

  const TypeBContext* ctx_;
  NHat choice_;
  int N_ = 0;
  std::vector<Elt> d_;
  std::vector<BigInt> nd_, nhat_;
  std::map<std::pair<int, int>, Elt> cellpair_;
  std::vector<int> lr_;
};

// ---- Schur elements and the Wedderburn decomposition ----

class SchurData {
 public:
  explicit SchurData(const JRing& J) : J_(&J) {
    const auto& cs = J.context().cells();
    const auto& H = J.H();
    for (const auto& c : cs.partition(CellSide::LR).cells) {
      Elt m = *std::min_element(c.begin(), c.end());
      auto cell = cs.left_cells()[cs.partition(CellSide::L).cell_of[m]];
      std::sort(cell.begin(), cell.end());
      reps_.push_back(cell);
      modules_.emplace_back(H, cell);
      labels_.push_back(J.context().label(m));
    }
    for (std::size_t l = 0; l < reps_.size(); ++l) {
      Elt x = reps_[l][0];
      schur_.push_back(a_trace(modules_[l].element_matrix(CD(x, x))));
    }
  }

  std::size_t count() const { return reps_.size(); }
  const std::vector<Elt>& cell(std::size_t l) const { return reps_[l]; }
  const Bipartition& label(std::size_t l) const { return labels_[l]; }
  int dim(std::size_t l) const { return static_cast<int>(reps_[l].size()); }
  const GroupRingElement& c(std::size_t l) const { return schur_[l]; }
  /// Index of the two-sided cell of w.
  std::size_t lambda_of(Elt w) const {
    const auto& cs = J_->context().cells();
    for (std::size_t l = 0; l < reps_.size(); ++l)
      if (cs.equiv(CellSide::LR, reps_[l][0], w)) return l;
    throw std::logic_error("element outside every two-sided cell");
  }
  /// X_lambda(h) for h in the T basis.
  AMatrix X(std::size_t l, const HeckeElement& h) const { return modules_[l].element_matrix(h); }
  /// C_x D_{y^{-1}} in the T basis.
  HeckeElement CD(Elt x, Elt y) const {
    const auto& H = J_->H();
    return H.t_mul(H.C(x), H.D_inv(y));
  }
  /// Product of all Schur elements.
  GroupRingElement product() const {
    GroupRingElement p = J_->H().one();
    for (const auto& c : schur_) p *= c;
    return p;
  }

  /// c != 0, theta_1(c) = |W|/d, the matrix-unit property, vanishing in the
  /// other representations, and tau = sum chi/c on every T_w.
  PropertyReport check() const {
    PropertyReport rep("schur");
    const auto& H = J_->H();
    const auto& W = H.W();
    int k = H.arity();
    for (std::size_t l = 0; l < count(); ++l) {
      std::string at = bipartition_string(labels_[l]);
      rep.expect(!schur_[l].is_zero(), "zero Schur element for " + at);
      rep.expect(schur_[l].theta1() * dim(l) == W.size(), "theta_1(c) != |W|/d for " + at);
      for (int i = 0; i < dim(l); ++i)
        for (int j = 0; j < dim(l); ++j) {
          HeckeElement h = CD(reps_[l][i], reps_[l][j]);
          for (std::size_t m = 0; m < count(); ++m) {
            AMatrix e = a_zero(dim(m), dim(m), k);
            if (m == l) e[i][j] = schur_[l];
            rep.expect(a_equal(X(m, h), e), "C_x D_y^-1 is not c times a matrix unit for " + at + " in " +
                                               bipartition_string(labels_[m]));
          }
        }
    }
    GroupRingElement P = product();
    for (Elt w = 0; w < W.size(); ++w) {
      GroupRingElement s = H.zero();
      for (std::size_t l = 0; l < count(); ++l) {
        GroupRingElement others = H.one();
        for (std::size_t m = 0; m < count(); ++m)
          if (m != l) others *= schur_[m];
        s.add_product(a_trace(X(l, H.T(w))), others);
      }
      rep.expect(s == (w == 0 ? P : H.zero()), "tau != sum chi/c at T_" + W.word_string(w));
    }
    return rep;
  }

  /// C_x D_{y^{-1}} = C_{x1} D_{y1^{-1}} where x -> x1, y -> y1 is the
  /// right-cell matching between two left cells of one two-sided cell.
  PropertyReport check_cell_products() const {
    PropertyReport rep("cell-products");
    const auto& cs = J_->context().cells();
    const auto& W = J_->H().W();
    const auto& cells = cs.left_cells();
    for (const auto& a : cells)
      for (const auto& b : cells) {
        if (&a == &b || !cs.equiv(CellSide::LR, a[0], b[0])) continue;
        std::map<Elt, Elt> f;
        for (Elt x : a)
          for (Elt y : b)
            if (cs.equiv(CellSide::R, x, y)) f[x] = y;
        if (f.size() != a.size()) {
          rep.fail("no right-cell matching between " + W.word_string(a[0]) + " and " + W.word_string(b[0]));
          continue;
        }
        for (Elt x : a)
          for (Elt y : a)
            rep.expect(CD(x, y) == CD(f[x], f[y]), "C_x D_y^-1 changes under the matching at " + tuple_string(W, {x, y}));
      }
    return rep;
  }

  /// Expansion of every C_w in the elements C_z D_{d_z} (scaled by the
  /// product of Schur elements), the multiplication rule for pairs (every
  /// pair when `all_pairs`, otherwise pairs with z in a stride sample), and
  /// the unit sum over involutions.
  PropertyReport check_embedding(bool all_pairs = true) const {
    PropertyReport rep("embedding");
    const auto& J = *J_;
    const auto& H = J.H();
    const auto& W = H.W();
    int N = W.size();
    GroupRingElement P = product();
    std::vector<GroupRingElement> cofactor(count());
    for (std::size_t l = 0; l < count(); ++l) {
      cofactor[l] = H.one();
      for (std::size_t m = 0; m < count(); ++m)
        if (m != l) cofactor[l] *= schur_[m];
    }
    std::vector<HeckeElement> cd(N);
    std::vector<std::size_t> lam(N);
    for (Elt z = 0; z < N; ++z) {
      cd[z] = CD(z, J.d(z));
      lam[z] = lambda_of(z);
    }
    for (Elt w = 0; w < N; ++w) {
      HeckeElement s = H.zero_element();
      for (Elt z = 0; z < N; ++z) {
        GroupRingElement h = detail::orzero(H.h(w, J.d(z), z), H);
        if (!h.is_zero()) s.add_scaled(cd[z], h * cofactor[lam[z]]);
      }
      rep.expect(s == H.C(w).scaled(P), "expansion of C_w fails at " + W.word_string(w));
    }
    for (Elt z = 0; z < N; ++z) {
      if (!all_pairs && z % 5) continue;
      for (Elt w = 0; w < N; ++w) {
        HeckeElement prod = H.t_mul(cd[z], cd[w]);
        HeckeElement expect = H.zero_element();
        const auto& cs = J.context().cells();
        if (cs.equiv(CellSide::R, w, W.inverse(z))) {
          Elt u = -1;
          for (Elt v = 0; v < N; ++v)
            if (cs.equiv(CellSide::R, z, v) && cs.equiv(CellSide::L, v, w)) u = v;
          if (u < 0) {
            rep.fail("no element u with z ~R u ~L w at " + tuple_string(W, {z, w}));
            continue;
          }
          expect = cd[u].scaled(schur_[lam[z]]);
        }
        rep.expect(prod == expect, "product rule fails at " + tuple_string(W, {z, w}));
      }
    }
    HeckeElement unit = H.zero_element();
    for (Elt z = 0; z < N; ++z)
      if (J.d(z) == z) unit.add_scaled(cd[z], cofactor[lam[z]]);
    rep.expect(unit == H.T(0).scaled(P), "sum over involutions of t-hat_z is not T_1");
    return rep;
  }

 private:
  const JRing* J_;
  std::vector<std::vector<Elt>> reps_;
  std::vector<CellModule> modules_;
  std::vector<Bipartition> labels_;
  std::vector<GroupRingElement> schur_;
};

// ---- phi ----

/// phi(C_w^delta) = sum_z h_{w,d_z,z} n-hat_z t_z.
class PhiMap {
 public:
  explicit PhiMap(const JRing& J) : J_(&J) {
    const auto& H = J.H();
    int N = H.size();
    m_ = a_zero(N, N, H.arity());
    for (Elt w = 0; w < N; ++w)
      for (Elt z = 0; z < N; ++z) {
        const auto& h = H.h(w, J.d(z), z);
        if (!h.is_zero()) m_[w][z] = h.scaled(J.nhat(z));
      }
  }

  const JRing& ring() const { return *J_; }
  const AMatrix& matrix() const { return m_; }
  JVector phi_delta_C(Elt w) const { return m_[w]; }
  /// phi(h^delta) for h given in the C basis.
  JVector apply_C(const std::vector<GroupRingElement>& coords) const {
    JVector r = J_->zero();
    for (std::size_t w = 0; w < coords.size(); ++w) {
      if (coords[w].is_zero()) continue;
      for (std::size_t z = 0; z < r.size(); ++z)
        if (!m_[w][z].is_zero()) r[z].add_product(coords[w], m_[w][z]);
    }
    return r;
  }

  /// Multiplicativity on all pairs (`all`) or on generators times all
  /// elements, the unit, and the same after theta_1 (the map beta).
  PropertyReport check(bool all = true) const {
    PropertyReport rep("phi");
    const auto& J = *J_;
    const auto& H = J.H();
    const auto& W = H.W();
    int N = W.size();
    std::vector<Elt> left;
    if (all)
      for (Elt x = 0; x < N; ++x) left.push_back(x);
    else
      for (int s = 0; s < W.rank(); ++s) left.push_back(W.gen(s));
    auto theta = [&](const JVector& v) {
      JVector r = v;
      for (auto& c : r) c = GroupRingElement::constant(H.arity(), c.theta1());
      return r;
    };
    for (Elt x : left)
      for (Elt y = 0; y < N; ++y) {
        JVector lhs = J.zero();
        std::vector<GroupRingElement> hx(N, H.zero());
        for (const auto& [z, c] : H.h_row(x, y)) hx[z] = c;
        lhs = apply_C(hx);
        JVector rhs = J.multiply(m_[x], m_[y]);
        rep.expect(lhs == rhs, "phi not multiplicative at " + tuple_string(W, {x, y}));
        rep.expect(theta(lhs) == J.multiply(theta(m_[x]), theta(m_[y])), "beta not multiplicative at " + tuple_string(W, {x, y}));
      }
    rep.expect(m_[0] == J.unit(), "phi(T_1) is not the unit");
    return rep;
  }

  /// phi(t-hat_w^delta) = t-hat_w, i.e. sum_y (C_w D_{d_w})_y h_{y,d_z,z}
  /// n-hat_z = c_lambda n-hat_w delta_{wz}.
  PropertyReport check_split(const SchurData& S) const {
    PropertyReport rep("phi-delta");
    const auto& J = *J_;
    const auto& H = J.H();
    const auto& W = H.W();
    for (Elt w = 0; w < W.size(); ++w) {
      JVector v = apply_C(H.to_C(S.CD(w, J.d(w))));
      JVector e = J.zero();
      e[w] = S.c(S.lambda_of(w)).scaled(J.nhat(w));
      rep.expect(v == e, "phi(t-hat^delta) != t-hat at " + W.word_string(w));
    }
    return rep;
  }

  /// C_w.eps_x - phi(C_w^delta) * eps_x lies in the span of eps_y, y <_LR x.
  PropertyReport check_defect() const {
    PropertyReport rep("phi-defect");
    const auto& J = *J_;
    const auto& H = J.H();
    const auto& W = H.W();
    const auto& cs = J.context().cells();
    int N = W.size();
    for (Elt w = 0; w < N; ++w)
      for (Elt x = 0; x < N; ++x) {
        std::vector<GroupRingElement> diff(N, H.zero());
        for (const auto& [y, c] : H.h_row(w, x)) diff[y] += c;
        // t_z * eps_x = sum_y gamma-hat_{z,x,y^-1} n_x n_y eps_y
        for (Elt z = 0; z < N; ++z) {
          if (m_[w][z].is_zero()) continue;
          auto y = J.product_target(z, x);
          if (!y) continue;
          BigInt g = J.nhat(x) * J.nhat(x) * J.nhat(*y);
          diff[*y] -= m_[w][z].scaled(g);
        }
        for (Elt y = 0; y < N; ++y)
          if (!diff[y].is_zero())
            rep.expect(cs.leq(CellSide::LR, y, x) && !cs.equiv(CellSide::LR, y, x),
                       "defect not below x at " + tuple_string(W, {w, x, y}));
      }
    return rep;
  }

 private:
  const JRing* J_;
  AMatrix m_;
};

// ---- Table 1 and Phi ----

/// theta_1(h_{w,d_z,z}) over all w, z (global element order).
inline IntMatrix theta_table(const JRing& J) {
  const auto& H = J.H();
  int N = H.size();
  IntMatrix t(N, std::vector<BigInt>(N));
  for (Elt w = 0; w < N; ++w)
    for (Elt z = 0; z < N; ++z) t[w][z] = H.h(w, J.d(z), z).theta1();
  return t;
}

/// Row and column labels of the B2 table, in order.
inline const std::vector<std::string>& table1_words() {
  static const std::vector<std::string> w = {"1", "s1", "s0", "s1s0", "s1s0s1", "s0s1", "s0s1s0", "s1s0s1s0"};
  return w;
}

/// Row and column order used for the B2 table: 1, s1, s0, s1s0, s1s0s1,
/// s0s1, s0s1s0, w0.
inline std::vector<Elt> table1_order(const CoxeterSystem& W) {
  if (W.type() != CoxeterType::B || W.rank() != 2) throw std::invalid_argument("table order is defined for B2 only");
  std::vector<Elt> r;
  for (const auto& s : table1_words()) r.push_back(W.parse(s));
  return r;
}

/// Rows and columns in `order`, labelled by `names` (reduced words by
/// default).
inline std::string theta_table_csv(const CoxeterSystem& W, const IntMatrix& t, const std::vector<Elt>& order,
                                   std::vector<std::string> names = {}) {
  if (names.empty())
    for (Elt z : order) names.push_back(W.word_string(z));
  std::string out = "w";
  for (const auto& n : names) out += "," + n;
  out += "\n";
  for (std::size_t i = 0; i < order.size(); ++i) {
    out += names[i];
    for (Elt z : order) out += "," + t[order[i]][z].str();
    out += "\n";
  }
  return out;
}

/// Phi = beta^{-1} o alpha with n-hat = 1.  Phi_{w,z} are the coefficients
/// of Phi(C_w) in the basis c_z = theta(C_z) of the group algebra; the
/// coefficients on group elements are kept as well.
class CanonicalPhi {
 public:
  explicit CanonicalPhi(const JRing& J) : J_(&J) {
    const auto& H = J.H();
    const auto& W = H.W();
    int N = W.size();
    theta_ = theta_table(J);
    auto inv = invert_integer_matrix(theta_);
    if (!inv) throw std::logic_error("specialized matrix theta(h_{w,d_z,z}) is singular");
    theta_inv_ = *inv;
    int k = H.arity();
    // M = (h_{w,d_z,z}) theta^{-1}
    auto& M = m_;
    M.assign(N, std::vector<RationalGroupRingElement>(N, RationalGroupRingElement(k)));
    for (Elt w = 0; w < N; ++w)
      for (Elt z = 0; z < N; ++z) {
        const auto& h = H.h(w, J.d(z), z);
        if (h.is_zero()) continue;
        RationalGroupRingElement hr = to_rational(h);
        for (Elt u = 0; u < N; ++u)
          if (theta_inv_[z][u] != 0) M[w][u] += hr.scaled(theta_inv_[z][u]);
      }
    // c_u = sum_y theta(p_{y,u}) y
    phi_.assign(N, GroupAlgebraElement(N, RationalGroupRingElement(k)));
    for (Elt w = 0; w < N; ++w)
      for (Elt u = 0; u < N; ++u) {
        if (M[w][u].is_zero()) continue;
        for (Elt y = 0; y < N; ++y) {
          BigInt p = H.p(y, u).theta1();
          if (p != 0) phi_[w][y] += M[w][u].scaled(BigRational(p));
        }
      }
    for (const auto& row : theta_inv_)
      for (const auto& x : row) den_ = boost::multiprecision::lcm(den_, BigInt(boost::multiprecision::denominator(x)));
    iphi_.assign(N, std::vector<GroupRingElement>(N, H.zero()));
    for (Elt w = 0; w < N; ++w)
      for (Elt y = 0; y < N; ++y) {
        std::vector<GroupRingElement::Term> t;
        for (const auto& [e, c] : phi_[w][y].terms()) {
          BigRational v = c * BigRational(den_);
          if (boost::multiprecision::denominator(v) != 1) throw std::logic_error("denominator of Phi exceeds that of theta^{-1}");
          t.emplace_back(e, boost::multiprecision::numerator(v));
        }
        iphi_[w][y] = GroupRingElement::from_terms(k, std::move(t));
      }
  }

  const IntMatrix& theta() const { return theta_; }
  /// Common denominator of the entries of theta^{-1}.
  const BigInt& denominator() const { return den_; }
  const RatMatrix& theta_inverse() const { return theta_inv_; }
  /// Phi_{w,z} (basis c_z).
  const RationalGroupRingElement& coeff(Elt w, Elt z) const { return m_[w][z]; }
  /// Coefficient of the group element z in Phi(C_w).
  const RationalGroupRingElement& group_coeff(Elt w, Elt z) const { return phi_[w][z]; }
  const GroupAlgebraElement& of_C(Elt w) const { return phi_[w]; }
  GroupAlgebraElement of_T(Elt w) const { return apply(J_->H().inverse_kl_column(w)); }
  GroupAlgebraElement apply(const std::vector<GroupRingElement>& coords) const {
    int N = J_->size();
    GroupAlgebraElement r(N, RationalGroupRingElement(J_->H().arity()));
    for (Elt u = 0; u < N; ++u) {
      if (coords[u].is_zero()) continue;
      RationalGroupRingElement c = to_rational(coords[u]);
      for (Elt y = 0; y < N; ++y)
        if (!phi_[u][y].is_zero()) r[y].add_product(c, phi_[u][y]);
    }
    return r;
  }
  GroupAlgebraElement group_multiply(const GroupAlgebraElement& a, const GroupAlgebraElement& b) const {
    const auto& W = J_->H().W();
    int N = W.size();
    GroupAlgebraElement r(N, RationalGroupRingElement(J_->H().arity()));
    for (Elt x = 0; x < N; ++x) {
      if (a[x].is_zero()) continue;
      for (Elt y = 0; y < N; ++y)
        if (!b[y].is_zero()) r[W.multiply(x, y)].add_product(a[x], b[y]);
    }
    return r;
  }

  /// Bar invariance and theta_1(Phi_{w,z}) = delta_{wz}; homomorphism on
  /// all pairs (`all`) or generators times all.
  PropertyReport check(bool all = true) const {
    PropertyReport rep("canonical-Phi");
    const auto& H = J_->H();
    const auto& W = H.W();
    int N = W.size();
    for (Elt w = 0; w < N; ++w)
      for (Elt z = 0; z < N; ++z) {
        const auto& c = m_[w][z];
        std::string at = tuple_string(W, {w, z});
        rep.expect(c.bar() == c, "Phi_{w,z} not bar-invariant at " + at);
        rep.expect(phi_[w][z].bar() == phi_[w][z], "group coefficient of Phi(C_w) not bar-invariant at " + at);
        rep.expect(c.theta1() == BigRational(w == z ? 1 : 0), "theta(Phi_{w,z}) != delta at " + at);
      }
    std::vector<Elt> left;
    if (all)
      for (Elt x = 0; x < N; ++x) left.push_back(x);
    else
      for (int s = 0; s < W.rank(); ++s) left.push_back(W.gen(s));
    for (Elt x : left)
      for (Elt y = 0; y < N; ++y) {
        std::vector<GroupRingElement> hx(N, H.zero());
        for (const auto& [z, c] : H.h_row(x, y)) hx[z] = c;
        // both sides scaled by den^2 to stay in Z[Gamma]
        std::vector<GroupRingElement> lhs(N, H.zero()), rhs(N, H.zero());
        for (Elt u = 0; u < N; ++u) {
          if (iphi_[x][u].is_zero()) continue;
          for (Elt v = 0; v < N; ++v)
            if (!iphi_[y][v].is_zero()) lhs[W.multiply(u, v)].add_product(iphi_[x][u], iphi_[y][v]);
        }
        for (Elt z = 0; z < N; ++z) {
          if (hx[z].is_zero()) continue;
          GroupRingElement c = hx[z].scaled(den_);
          for (Elt v = 0; v < N; ++v)
            if (!iphi_[z][v].is_zero()) rhs[v].add_product(c, iphi_[z][v]);
        }
        rep.expect(lhs == rhs, "Phi not multiplicative at " + tuple_string(W, {x, y}));
      }
    return rep;
  }

  /// h.eps_x - Phi(h) <> eps_x lies in the span of eps_y, y <_LR x, where
  /// c_u acts on eps_x by sum_y theta(h_{u,x,y}) eps_y.
  PropertyReport check_defect() const {
    PropertyReport rep("Phi-defect");
    const auto& H = J_->H();
    const auto& W = H.W();
    const auto& cs = J_->context().cells();
    int N = W.size();
    int k = H.arity();
    for (Elt w = 0; w < N; ++w)
      for (Elt x = 0; x < N; ++x) {
        std::vector<RationalGroupRingElement> act(N, RationalGroupRingElement(k));
        for (Elt u = 0; u < N; ++u) {
          if (m_[w][u].is_zero()) continue;
          for (const auto& [y, c] : H.h_row(u, x)) {
            BigInt t = c.theta1();
            if (t != 0) act[y] += m_[w][u].scaled(BigRational(t));
          }
        }
        for (const auto& [y, c] : H.h_row(w, x)) act[y] -= to_rational(c);
        for (Elt y = 0; y < N; ++y)
          if (!act[y].is_zero())
            rep.expect(cs.leq(CellSide::LR, y, x) && !cs.equiv(CellSide::LR, y, x),
                       "Phi defect not below x at " + tuple_string(W, {w, x, y}));
      }
    return rep;
  }

  nlohmann::json to_json() const {
    const auto& W = J_->H().W();
    nlohmann::json rows = nlohmann::json::array();
    for (Elt w = 0; w < W.size(); ++w) {
      nlohmann::json r = nlohmann::json::array();
      for (Elt z = 0; z < W.size(); ++z) r.push_back(to_json_value(m_[w][z]));
      rows.push_back({{"w", W.to_json(w)}, {"coefficients", r}});
    }
    return rows;
  }

 private:
  const JRing* J_;
  IntMatrix theta_;
  RatMatrix theta_inv_;
  BigInt den_ = 1;
  std::vector<std::vector<RationalGroupRingElement>> m_;
  std::vector<std::vector<GroupRingElement>> iphi_;  // den * group coefficients
  std::vector<GroupAlgebraElement> phi_;
};

/// Rank of the matrix (h_{w,d_z,z}) after theta_1 and after evaluating at
/// v = 2 (all generators of Gamma sent to 2).
inline std::pair<int, int> embedding_ranks(const JRing& J) {
  const auto& H = J.H();
  int N = H.size();
  IntMatrix t = theta_table(J);
  std::int64_t lo = 0;
  for (Elt w = 0; w < N; ++w)
    for (Elt z = 0; z < N; ++z) {
      const auto& h = H.h(w, J.d(z), z);
      if (h.is_zero()) continue;
      for (const auto& [e, c] : h.terms()) lo = std::min(lo, e.c[0] + e.c[1]);
    }
  IntMatrix ev(N, std::vector<BigInt>(N));
  for (Elt w = 0; w < N; ++w)
    for (Elt z = 0; z < N; ++z) {
      const auto& h = H.h(w, J.d(z), z);
      if (h.is_zero()) continue;
      BigInt s = 0;
      for (const auto& [e, c] : h.terms()) s += c * (BigInt(1) << static_cast<unsigned>(e.c[0] + e.c[1] - lo));
      ev[w][z] = s;
    }
  return {integer_rank(t), integer_rank(ev)};
}

// ---- weak P15 and the identification with gamma ----

/// For y ~L x' ~R x^{-1}: sum_z h_{w,z,y} gh_{x,x',z^-1} = sum_z h_{w,x,z}
/// gh_{z,x',y^-1}, over all w.  Quadruples outside the hypothesis are
/// skipped and counted in the note.
inline PropertyReport check_weak_p15(const JRing& J) {
  PropertyReport rep("weak-P15");
  const auto& H = J.H();
  const auto& W = H.W();
  const auto& cs = J.context().cells();
  int N = W.size();
  std::size_t skipped = 0;
  for (Elt x = 0; x < N; ++x)
    for (Elt xp = 0; xp < N; ++xp)
      for (Elt y = 0; y < N; ++y) {
        if (!(cs.equiv(CellSide::L, y, xp) && cs.equiv(CellSide::R, xp, W.inverse(x)))) {
          ++skipped;
          continue;
        }
        for (Elt w = 0; w < N; ++w) {
          GroupRingElement lhs = H.zero(), rhs = H.zero();
          for (Elt z = 0; z < N; ++z) {
            BigInt g1 = J.gamma_hat(x, xp, W.inverse(z));
            if (g1 != 0) lhs += detail::orzero(H.h(w, z, y), H).scaled(g1);
            BigInt g2 = J.gamma_hat(z, xp, W.inverse(y));
            if (g2 != 0) rhs += detail::orzero(H.h(w, x, z), H).scaled(g2);
          }
          rep.expect(lhs == rhs, "weak P15 fails at " + tuple_string(W, {x, xp, y, w}));
        }
      }
  rep.note = std::to_string(skipped) + " triples outside the hypothesis skipped";
  return rep;
}

/// gamma-hat_{x,y,z^-1} = gamma_{x,y,z^-1} on all triples (Lusztig n-hat).
inline PropertyReport check_gamma_identification(const JRing& J, const AFunctionData& A) {
  PropertyReport rep("gamma-identification");
  const auto& H = J.H();
  const auto& W = H.W();
  if (J.choice() != NHat::Lusztig) {
    rep.precondition("requires n-hat = n_d");
    return rep;
  }
  int N = W.size();
  for (Elt x = 0; x < N; ++x)
    for (Elt y = 0; y < N; ++y)
      for (Elt z = 0; z < N; ++z)
        rep.expect(J.gamma_hat(x, y, W.inverse(z)) == gamma_value(H, A, x, y, W.inverse(z)),
                   "gamma-hat != gamma at " + tuple_string(W, {x, y, z}));
  return rep;
}

}  // namespace klcells
