#pragma once
// Iwahori-Hecke algebra H(W, L) over A = Z[Gamma]: T-basis arithmetic, the
// bar involution, the Kazhdan-Lusztig basis C_w, the coefficients M^s_{z,y}
// and h_{x,y,z}, the maps delta / j / flat, the trace tau and the dual basis.

#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "coxeter.hpp"
#include "grpring.hpp"
#include "parallel.hpp"

namespace klcells {

class WeightFunction {
 public:
  WeightFunction(const CoxeterSystem& W, int k, std::vector<Exponent> L, std::string label)
      : k_(k), L_(std::move(L)), label_(std::move(label)) {
    if (static_cast<int>(L_.size()) != W.rank()) throw std::invalid_argument("weight function: wrong number of values");
    for (const auto& e : L_)
      if (!e.positive()) throw std::invalid_argument("weight function: L(s) must be positive");
    auto cls = W.generator_classes();
    for (int s = 0; s < W.rank(); ++s)
      if (L_[s] != L_[cls[s]])
        throw std::invalid_argument("weight function: conjugate generators " + W.gen_name(s) + " and " +
                                    W.gen_name(cls[s]) + " need equal weights");
  }

  /// Gamma = Z^2.  Type B: L(t) = (1,0), L(s_i) = (0,1); I2(m), m even:
  /// L(s1) = (0,1), L(s2) = (1,0); otherwise all (0,1).
  static WeightFunction generic(const CoxeterSystem& W) {
    std::vector<Exponent> L(W.rank(), Exponent(0, 1));
    if (W.type() == CoxeterType::B) L[0] = Exponent(1, 0);
    if (W.type() == CoxeterType::I2 && W.degree() % 2 == 0) L[1] = Exponent(1, 0);
    return WeightFunction(W, 2, std::move(L), "generic");
  }

  /// Gamma = Z.  Type B: L(s_i) = a, L(t) = b.  I2: L(s1) = a, L(s2) = b.
  /// Type A: a == b required.
  static WeightFunction specialized(const CoxeterSystem& W, std::int64_t a, std::int64_t b) {
    if (a <= 0 || b <= 0) throw std::invalid_argument("weights must be positive");
    std::vector<Exponent> L(W.rank(), Exponent(a));
    if (W.type() == CoxeterType::B) L[0] = Exponent(b);
    if (W.type() == CoxeterType::I2) L[1] = Exponent(b);
    if (W.type() == CoxeterType::A && a != b) throw std::invalid_argument("type A takes a single weight");
    return WeightFunction(W, 1, std::move(L), std::to_string(a) + "," + std::to_string(b));
  }

  static WeightFunction equal(const CoxeterSystem& W, std::int64_t a = 1) { return specialized(W, a, a); }

  int arity() const { return k_; }
  const Exponent& operator()(int s) const { return L_[s]; }
  const std::vector<Exponent>& values() const { return L_; }
  const std::string& label() const { return label_; }

  /// Type B_n with b > (n-1)a, b = L(t), a = L(s_1).
  bool asymptotic(const CoxeterSystem& W) const {
    if (W.type() != CoxeterType::B) return false;
    if (W.rank() < 2) return true;
    return L_[0] > L_[1] * (W.rank() - 1);
  }

  /// (a, b) used for the specialization theta on generic weights.
  friend bool operator==(const WeightFunction& x, const WeightFunction& y) { return x.k_ == y.k_ && x.L_ == y.L_; }

 private:
  int k_;
  std::vector<Exponent> L_;
  std::string label_;
};

/// Element of H written in one basis; coefficient vector indexed by Elt.
struct HeckeElement {
  enum class Basis { T, C, D };
  Basis basis = Basis::T;
  std::vector<GroupRingElement> c;

  HeckeElement() = default;
  explicit HeckeElement(int n, Basis b = Basis::T) : basis(b), c(n) {}

  int size() const { return static_cast<int>(c.size()); }
  const GroupRingElement& operator[](Elt w) const { return c[w]; }
  GroupRingElement& operator[](Elt w) { return c[w]; }

  bool is_zero() const {
    for (const auto& x : c)
      if (!x.is_zero()) return false;
    return true;
  }
  std::vector<Elt> support() const {
    std::vector<Elt> r;
    for (int w = 0; w < size(); ++w)
      if (!c[w].is_zero()) r.push_back(w);
    return r;
  }
  HeckeElement& add_scaled(const HeckeElement& o, const GroupRingElement& s) {
    if (s.is_zero()) return *this;
    for (int w = 0; w < size(); ++w)
      if (!o.c[w].is_zero()) c[w] += o.c[w] * s;
    return *this;
  }
  HeckeElement& operator+=(const HeckeElement& o) {
    for (int w = 0; w < size(); ++w)
      if (!o.c[w].is_zero()) c[w] += o.c[w];
    return *this;
  }
  HeckeElement& operator-=(const HeckeElement& o) {
    for (int w = 0; w < size(); ++w)
      if (!o.c[w].is_zero()) c[w] -= o.c[w];
    return *this;
  }
  friend HeckeElement operator+(HeckeElement a, const HeckeElement& b) { return a += b; }
  friend HeckeElement operator-(HeckeElement a, const HeckeElement& b) { return a -= b; }
  HeckeElement scaled(const GroupRingElement& s) const {
    HeckeElement r(size(), basis);
    for (int w = 0; w < size(); ++w)
      if (!c[w].is_zero()) r.c[w] = c[w] * s;
    return r;
  }
  friend bool operator==(const HeckeElement& a, const HeckeElement& b) { return a.basis == b.basis && a.c == b.c; }
};

/// Sparse list (z, coefficient), sorted by z.
using SparseRow = std::vector<std::pair<Elt, GroupRingElement>>;

inline const GroupRingElement& sparse_get(const SparseRow& r, Elt z) {
  static const GroupRingElement zero;
  auto it = std::lower_bound(r.begin(), r.end(), z, [](const auto& p, Elt v) { return p.first < v; });
  if (it != r.end() && it->first == z) return it->second;
  return zero;
}

class HeckeAlgebra {
 public:
  HeckeAlgebra(SystemPtr W, WeightFunction L) : W_(std::move(W)), L_(std::move(L)), k_(L_.arity()) {
    N_ = W_->size();
    int nS = W_->rank();
    for (int s = 0; s < nS; ++s) {
      q_.push_back(GroupRingElement::monomial(k_, L_(s)));
      qinv_.push_back(GroupRingElement::monomial(k_, -L_(s)));
      qdiff_.push_back(q_[s] - qinv_[s]);
      qsum_.push_back(q_[s] + qinv_[s]);
    }
    build_bar_table();
    build_kl();
    build_gen_rows();
  }

  const CoxeterSystem& W() const { return *W_; }
  const SystemPtr& system() const { return W_; }
  const WeightFunction& weights() const { return L_; }
  int arity() const { return k_; }
  int size() const { return N_; }

  GroupRingElement one() const { return GroupRingElement::one(k_); }
  GroupRingElement zero() const { return GroupRingElement(k_); }
  GroupRingElement mono(const Exponent& e) const { return GroupRingElement::monomial(k_, e); }
  const GroupRingElement& q(int s) const { return q_[s]; }
  const GroupRingElement& qinv(int s) const { return qinv_[s]; }
  const GroupRingElement& qdiff(int s) const { return qdiff_[s]; }
  const GroupRingElement& qsum(int s) const { return qsum_[s]; }

  HeckeElement zero_element(HeckeElement::Basis b = HeckeElement::Basis::T) const { return HeckeElement(N_, b); }
  HeckeElement T(Elt w) const {
    HeckeElement h(N_);
    h[w] = one();
    return h;
  }

  // ---- T-basis arithmetic ----

  /// T_s * h.
  HeckeElement lmul_gen(int s, const HeckeElement& h) const {
    HeckeElement r(N_);
    for (Elt w = 0; w < N_; ++w) {
      if (h[w].is_zero()) continue;
      Elt sw = W_->lmul(s, w);
      r[sw] += h[w];
      if (W_->length(sw) < W_->length(w)) r[w] += h[w] * qdiff_[s];
    }
    return r;
  }

  /// h * T_s.
  HeckeElement rmul_gen(const HeckeElement& h, int s) const {
    HeckeElement r(N_);
    for (Elt w = 0; w < N_; ++w) {
      if (h[w].is_zero()) continue;
      Elt ws = W_->rmul(w, s);
      r[ws] += h[w];
      if (W_->length(ws) < W_->length(w)) r[w] += h[w] * qdiff_[s];
    }
    return r;
  }

  /// T_w * h.
  HeckeElement lmul_T(Elt w, HeckeElement h) const {
    const auto& word = W_->reduced_word(w);
    for (auto it = word.rbegin(); it != word.rend(); ++it) h = lmul_gen(*it, h);
    return h;
  }

  /// h * T_w.
  HeckeElement rmul_T(HeckeElement h, Elt w) const {
    for (int s : W_->reduced_word(w)) h = rmul_gen(h, s);
    return h;
  }

  HeckeElement t_mul(const HeckeElement& x, const HeckeElement& y) const {
    check(x);
    check(y);
    HeckeElement r(N_);
    auto supp = x.support();
    if (supp.size() <= 4) {
      for (Elt w : supp) r.add_scaled(lmul_T(w, y), x[w]);
      return r;
    }
    // T_w y for all w up to the largest needed, sharing prefixes.
    Elt top = supp.back();
    std::vector<HeckeElement> V(top + 1);
    V[0] = y;
    for (Elt w = 1; w <= top; ++w) {
      int s = W_->reduced_word(w)[0];
      V[w] = lmul_gen(s, V[W_->lmul(s, w)]);
    }
    for (Elt w : supp) r.add_scaled(V[w], x[w]);
    return r;
  }

  // ---- involutions ----

  /// bar(T_w) = T_{w^{-1}}^{-1} in the T-basis.
  const HeckeElement& bar_T(Elt w) const { return barT_[w]; }

  HeckeElement bar(const HeckeElement& h) const {
    check(h);
    HeckeElement r(N_);
    for (Elt w = 0; w < N_; ++w)
      if (!h[w].is_zero()) r.add_scaled(barT_[w], h[w].bar());
    return r;
  }

  /// j: e^g -> e^{-g}, T_w -> (-1)^{l(w)} T_w.
  HeckeElement j_map(const HeckeElement& h) const {
    check(h);
    HeckeElement r(N_);
    for (Elt w = 0; w < N_; ++w) {
      if (h[w].is_zero()) continue;
      r[w] = W_->length(w) % 2 ? -h[w].bar() : h[w].bar();
    }
    return r;
  }

  /// delta: T_s -> -T_s^{-1}.  Computed as j o bar since j o delta = bar and
  /// j is an involution.
  HeckeElement delta(const HeckeElement& h) const { return j_map(bar(h)); }

  /// Antiautomorphism T_w -> T_{w^{-1}}.
  HeckeElement flat(const HeckeElement& h) const {
    check(h);
    HeckeElement r(N_);
    for (Elt w = 0; w < N_; ++w)
      if (!h[w].is_zero()) r[W_->inverse(w)] = h[w];
    return r;
  }

  // ---- trace ----

  GroupRingElement tau(const HeckeElement& h) const {
    check(h);
    return h[0];
  }
  /// tau(x*y) = sum_w x_w y_{w^{-1}}.
  GroupRingElement tau_product(const HeckeElement& x, const HeckeElement& y) const {
    GroupRingElement r = zero();
    for (Elt w = 0; w < N_; ++w)
      if (!x[w].is_zero()) r.add_product(x[w], y[W_->inverse(w)]);
    return r;
  }

  // ---- Kazhdan-Lusztig basis ----

  /// p*_{y,w}; zero unless y <= w.
  const GroupRingElement& p(Elt y, Elt w) const { return p_[w][y]; }

  /// C_w in the T-basis.
  HeckeElement C(Elt w) const {
    HeckeElement h(N_);
    h.c = p_[w];
    return h;
  }

  /// C-basis coordinates (as a vector) to T-basis.
  HeckeElement from_C(const std::vector<GroupRingElement>& coords) const {
    HeckeElement r(N_);
    for (Elt w = 0; w < N_; ++w)
      if (!coords[w].is_zero())
        for (Elt y = 0; y <= w; ++y)
          if (!p_[w][y].is_zero()) r[y] += p_[w][y] * coords[w];
    return r;
  }

  /// T-basis to C-basis coordinates (unitriangular solve, top down).
  std::vector<GroupRingElement> to_C(HeckeElement h) const {
    check(h);
    std::vector<GroupRingElement> out(N_);
    for (Elt z = N_ - 1; z >= 0; --z) {
      if (h[z].is_zero()) continue;
      GroupRingElement c = h[z];
      for (Elt y = 0; y <= z; ++y)
        if (!p_[z][y].is_zero()) h[y] -= p_[z][y] * c;
      out[z] = std::move(c);
    }
    return out;
  }

  /// p~_{y,w}: T_w = sum_y p~_{y,w} C_y.
  std::vector<GroupRingElement> inverse_kl_column(Elt w) const { return to_C(T(w)); }

  /// Row s of the structure constants: (z, h_{s,y,z}) for all z.
  const SparseRow& gen_row(int s, Elt y) const { return genrow_[s][y]; }

  /// M^s_{z,y} for sz < z < y < sy.
  GroupRingElement mu(int s, Elt z, Elt y) const {
    const auto& Wr = *W_;
    if (!(Wr.length(Wr.lmul(s, z)) < Wr.length(z) && Wr.length(z) < Wr.length(y) &&
          Wr.length(y) < Wr.length(Wr.lmul(s, y))))
      throw std::invalid_argument("mu: need sz < z < y < sy");
    if (!Wr.bruhat_leq(z, y)) return zero();
    return sparse_get(genrow_[s][y], z);
  }

  /// C_s applied to a vector of C-coordinates.
  std::vector<GroupRingElement> apply_Cs(int s, const std::vector<GroupRingElement>& v) const {
    std::vector<GroupRingElement> out(N_);
    for (Elt w = 0; w < N_; ++w) {
      if (v[w].is_zero()) continue;
      for (const auto& [z, c] : genrow_[s][w]) out[z].add_product(c, v[w]);
    }
    return out;
  }

  // ---- structure constants ----

  /// Full table of h_{x,y,z}; built on first use.
  const SparseRow& h_row(Elt x, Elt y) const {
    ensure_h_table();
    return h_[static_cast<std::size_t>(x) * N_ + y];
  }
  const GroupRingElement& h(Elt x, Elt y, Elt z) const { return sparse_get(h_row(x, y), z); }
  bool has_h_table() const { return h_built_; }
  void set_jobs(int j) const { jobs_ = j; }
  void ensure_h_table() const {
    std::call_once(h_once_, [this] { build_h_table(); });
  }
  /// Installs a previously computed table (cache load).
  void install_h_table(std::vector<SparseRow> t) const {
    std::call_once(h_once_, [&] {
      if (t.size() != static_cast<std::size_t>(N_) * N_) throw std::invalid_argument("h table size mismatch");
      h_ = std::move(t);
      h_built_ = true;
    });
  }

  /// C_x C_y computed by multiplying in the T-basis and converting back.
  std::vector<GroupRingElement> product_C(Elt x, Elt y) const { return to_C(t_mul(C(x), C(y))); }

  // ---- dual basis ----

  /// D_{z^{-1}}, the element with tau(C_w D_{z^{-1}}) = delta_{wz}:
  /// (-1)^{l(z)+l(w0)} delta(C_{z^{-1} w0}) T_{w0}.
  HeckeElement D_inv(Elt z) const {
    Elt w0 = W_->longest();
    HeckeElement d = rmul_T(delta(C(W_->multiply(W_->inverse(z), w0))), w0);
    if ((W_->length(z) + W_->length(w0)) % 2) d = d.scaled(-one());
    return d;
  }

  std::vector<Elt> involutions() const {
    std::vector<Elt> r;
    for (Elt w = 0; w < N_; ++w)
      if (W_->inverse(w) == w) r.push_back(w);
    return r;
  }

  void check(const HeckeElement& h) const {
    if (h.size() != N_) throw std::invalid_argument("Hecke element from a different algebra");
  }

 private:
  void build_bar_table() {
    barT_.assign(N_, HeckeElement(N_));
    barT_[0] = T(0);
    for (Elt w = 1; w < N_; ++w) {
      int s = W_->reduced_word(w)[0];
      const HeckeElement& prev = barT_[W_->lmul(s, w)];
      HeckeElement r = lmul_gen(s, prev);
      r.add_scaled(prev, -qdiff_[s]);
      barT_[w] = std::move(r);
    }
  }

  // bar(C_w) = C_w gives, for z < w,
  //   p_{z,w} - bar(p_{z,w}) = sum_{z < y <= w} bar(T_y)_z * bar(p_{y,w})
  // and p_{z,w} is the negative part of the right-hand side.
  void build_kl() {
    p_.assign(N_, std::vector<GroupRingElement>(N_));
    for (Elt w = 0; w < N_; ++w) {
      auto& col = p_[w];
      col[w] = one();
      const auto& below = W_->bruhat_below(w);
      std::vector<GroupRingElement> pbar(N_);
      pbar[w] = one();
      for (Elt z = w - 1; z >= 0; --z) {
        if (!below[z]) continue;
        GroupRingElement f = zero();
        for (Elt y = z + 1; y <= w; ++y) {
          if (col[y].is_zero()) continue;
          const auto& r = barT_[y][z];
          if (!r.is_zero()) f.add_product(r, pbar[y]);
        }
        auto [neg, ok] = f.sign_part(Region::Neg);
        (void)ok;
        if (!(f == neg - neg.bar())) throw std::logic_error("KL solve: right-hand side is not of the form p - bar(p)");
        col[z] = std::move(neg);
        pbar[z] = col[z].bar();
      }
    }
  }

  // C_s C_y = (T_s + q_s^{-1}) C_y, converted to the C-basis.
  void build_gen_rows() {
    int nS = W_->rank();
    genrow_.assign(nS, std::vector<SparseRow>(N_));
    for (int s = 0; s < nS; ++s)
      for (Elt y = 0; y < N_; ++y) {
        if (W_->length(W_->lmul(s, y)) < W_->length(y)) {
          genrow_[s][y] = {{y, qsum_[s]}};
          continue;
        }
        HeckeElement prod = lmul_gen(s, C(y));
        prod.add_scaled(C(y), qinv_[s]);
        auto coords = to_C(std::move(prod));
        SparseRow row;
        for (Elt z = 0; z < N_; ++z)
          if (!coords[z].is_zero()) row.emplace_back(z, std::move(coords[z]));
        genrow_[s][y] = std::move(row);
      }
  }

  // C_x C_y by induction on x:  with s the first letter of x and x' = s x,
  //   C_x C_y = C_s (C_{x'} C_y) - sum_z M^s_{z,x'} C_z C_y.
  void build_h_table() const {
    std::vector<SparseRow> table(static_cast<std::size_t>(N_) * N_);
    parallel_for(N_, jobs_, [&](int y) {
      std::vector<std::vector<GroupRingElement>> col(N_);
      col[0].assign(N_, GroupRingElement());
      col[0][y] = one();
      for (Elt x = 1; x < N_; ++x) {
        int s = W_->reduced_word(x)[0];
        Elt xp = W_->lmul(s, x);
        auto v = apply_Cs(s, col[xp]);
        for (const auto& [z, m] : genrow_[s][xp]) {
          if (z == x) continue;
          for (Elt u = 0; u < N_; ++u)
            if (!col[z][u].is_zero()) v[u] -= m * col[z][u];
        }
        col[x] = std::move(v);
      }
      for (Elt x = 0; x < N_; ++x) {
        SparseRow row;
        for (Elt z = 0; z < N_; ++z)
          if (!col[x][z].is_zero()) row.emplace_back(z, std::move(col[x][z]));
        table[static_cast<std::size_t>(x) * N_ + y] = std::move(row);
      }
    });
    h_ = std::move(table);
    h_built_ = true;
  }

  SystemPtr W_;
  WeightFunction L_;
  int k_;
  int N_ = 0;
  std::vector<GroupRingElement> q_, qinv_, qdiff_, qsum_;
  std::vector<HeckeElement> barT_;
  std::vector<std::vector<GroupRingElement>> p_;  // p_[w][y] = p*_{y,w}
  std::vector<std::vector<SparseRow>> genrow_;
  mutable std::once_flag h_once_;
  mutable std::vector<SparseRow> h_;
  mutable bool h_built_ = false;
  mutable int jobs_ = 1;
};

using HeckePtr = std::shared_ptr<const HeckeAlgebra>;

inline HeckePtr make_hecke(SystemPtr W, WeightFunction L) {
  return std::make_shared<const HeckeAlgebra>(std::move(W), std::move(L));
}

}  // namespace klcells
