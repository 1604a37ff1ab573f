#pragma once
// Reference data for B2 and small independent oracles used by the unit tests
// and the acceptance binary.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "klcells/coxeter.hpp"
#include "klcells/grpring.hpp"
#include "klcells/hecke.hpp"

namespace klcells::testing {

// ---- B2 reference data ----

inline const std::vector<std::string>& table1_words() {
  static const std::vector<std::string> w = {"1", "s1", "s0", "s1s0", "s1s0s1", "s0s1", "s0s1s0", "s1s0s1s0"};
  return w;
}

/// theta(h_{w,d_z,z}) for B2, rows w and columns z in table1_words() order.
inline const std::vector<std::vector<int>>& table1() {
  static const std::vector<std::vector<int>> t = {
      {1, 1, 1, 0, 1, 0, 1, 1}, {0, 2, 0, 1, 2, 0, 0, 2}, {0, 0, 2, 0, 0, 2, 2, 2}, {0, 0, 0, 2, 2, 0, 0, 4},
      {0, 0, 0, 2, 4, 0, 0, 8}, {0, 0, 2, 0, 0, 4, 0, 4}, {0, 0, 0, 0, 0, 0, -4, 4}, {0, 0, 0, 0, 0, 0, 0, 8},
  };
  return t;
}

/// Left cells of B2 in the asymptotic case; the first element of each is
/// its involution.
inline const std::vector<std::vector<std::string>>& b2_left_cells() {
  static const std::vector<std::vector<std::string>> c = {
      {"1"}, {"s1"}, {"s0", "s1s0"}, {"s1s0s1", "s0s1"}, {"s0s1s0"}, {"s1s0s1s0"},
  };
  return c;
}

/// Laurent polynomials in Q = e^{L(t)} and q = e^{L(s1)}: sum of c Q^i q^j.
struct QTerm {
  int i, j;
  BigRational c;
};

/// Evaluates sum c Q^i q^j in the group ring of the weights: generic
/// (Q = e^(1,0), q = e^(0,1)) or specialized (Q = e^b, q = e^a).
inline RationalGroupRingElement qpoly(const HeckeAlgebra& H, const std::vector<QTerm>& terms) {
  const auto& L = H.weights();
  Exponent Q = L(0), q = L(1);
  std::vector<RationalGroupRingElement::Term> t;
  RationalGroupRingElement r(H.arity());
  for (const auto& x : terms) r += RationalGroupRingElement::monomial(H.arity(), Q * x.i + q * x.j, x.c);
  return r;
}

inline GroupRingElement qpoly_int(const HeckeAlgebra& H, const std::vector<QTerm>& terms) {
  auto r = qpoly(H, terms);
  std::vector<GroupRingElement::Term> t;
  for (const auto& [e, c] : r.terms()) t.emplace_back(e, boost::multiprecision::numerator(c));
  return GroupRingElement::from_terms(H.arity(), std::move(t));
}

/// phi(C_s) in B2 with n-hat = 1: (t-word, coefficient) pairs.
inline std::vector<std::pair<std::string, std::vector<QTerm>>> phi_C_s0() {
  std::vector<QTerm> QQ = {{1, 0, 1}, {-1, 0, 1}};
  return {{"s0", QQ}, {"s0s1", {{1, -1, 1}, {-1, 1, 1}}}, {"s0s1s0", QQ}, {"s1s0s1s0", QQ}};
}
inline std::vector<std::pair<std::string, std::vector<QTerm>>> phi_C_s1() {
  std::vector<QTerm> qq = {{0, 1, 1}, {0, -1, 1}};
  return {{"s1", qq}, {"s1s0", {{0, 0, 1}}}, {"s1s0s1", qq}, {"s1s0s1s0", qq}};
}

/// Phi(T_s) in B2 as (group element, coefficient) pairs.
inline std::vector<std::pair<std::string, std::vector<QTerm>>> Phi_T_s0() {
  BigRational h(1, 2), f(1, 4);
  std::vector<QTerm> c = {{1, 0, f}, {1, -1, -f}, {-1, 1, -f}, {-1, 0, f}};
  auto neg = c;
  for (auto& x : neg) x.c = -x.c;
  return {{"1", {{1, 0, h}, {-1, 0, -h}}},
          {"s0", {{1, 0, h}, {-1, 0, h}}},
          {"s1", neg},
          {"s1s0", c},
          {"s0s1", neg},
          {"s0s1s0", c}};
}
inline std::vector<std::pair<std::string, std::vector<QTerm>>> Phi_T_s1() {
  BigRational h(1, 2), f(1, 4);
  std::vector<QTerm> c = {{0, 1, f}, {0, 0, -2 * f}, {0, -1, f}};
  auto neg = c;
  for (auto& x : neg) x.c = -x.c;
  return {{"1", {{0, 1, h}, {0, -1, -h}}},
          {"s1", {{0, 1, h}, {0, -1, h}}},
          {"s0", neg},
          {"s1s0", neg},
          {"s0s1", c},
          {"s1s0s1", c}};
}

// ---- oracles ----

/// Lengths by breadth-first search over signed permutations (type A: plain
/// permutations), generators acting on positions.  Keys are windows.
inline std::map<std::vector<int>, int> bfs_lengths(CoxeterType type, int n) {
  int deg = type == CoxeterType::A ? n + 1 : n;
  std::vector<std::vector<int>> gens;
  if (type == CoxeterType::B) {
    std::vector<int> t(deg);
    for (int i = 0; i < deg; ++i) t[i] = i + 1;
    t[0] = -1;
    gens.push_back(t);
  }
  for (int i = 0; i + 1 < deg; ++i) {
    std::vector<int> s(deg);
    for (int k = 0; k < deg; ++k) s[k] = k + 1;
    std::swap(s[i], s[i + 1]);
    gens.push_back(s);
  }
  std::map<std::vector<int>, int> dist;
  std::vector<int> id(deg);
  for (int i = 0; i < deg; ++i) id[i] = i + 1;
  dist[id] = 0;
  std::vector<std::vector<int>> frontier{id};
  for (int d = 1; !frontier.empty(); ++d) {
    std::vector<std::vector<int>> next;
    for (const auto& w : frontier)
      for (const auto& g : gens) {
        std::vector<int> y(deg);  // w * g: apply g first
        for (int i = 0; i < deg; ++i) {
          int v = g[i];
          y[i] = v > 0 ? w[v - 1] : -w[-v - 1];
        }
        if (dist.emplace(y, d).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return dist;
}

/// Bruhat order by the subword property: x <= y iff some reduced word of y
/// has a subword that is a reduced word of x.  Evaluated by enumerating the
/// elements of all subwords of one reduced word of y.
inline std::set<Elt> bruhat_below_subwords(const CoxeterSystem& W, Elt y) {
  const auto& word = W.reduced_word(y);
  std::set<Elt> cur{W.identity()};
  for (int s : word) {
    std::set<Elt> next = cur;
    for (Elt x : cur) next.insert(W.rmul(x, s));
    cur = std::move(next);
  }
  return cur;
}

/// Classical Kazhdan-Lusztig polynomials P_{y,w}(u) (u = q^2) for equal
/// parameters, by the recursion with mu; coefficient vectors in u.
class ClassicalKL {
 public:
  explicit ClassicalKL(const CoxeterSystem& W) : W_(&W), N_(W.size()) {
    P_.assign(N_, std::vector<std::vector<long>>(N_));
    for (Elt w = 0; w < N_; ++w) compute(w);
  }
  const std::vector<long>& P(Elt y, Elt w) const { return P_[w][y]; }
  long mu(Elt y, Elt w) const {
    int d = W_->length(w) - W_->length(y);
    if (d <= 0 || d % 2 == 0) return 0;
    const auto& p = P_[w][y];
    std::size_t k = (d - 1) / 2;
    return k < p.size() ? p[k] : 0;
  }

 private:
  static void add(std::vector<long>& a, const std::vector<long>& b, long c, std::size_t shift) {
    if (a.size() < b.size() + shift) a.resize(b.size() + shift, 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] += c * b[i];
  }
  static void trim(std::vector<long>& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  void compute(Elt w) {
    const auto& W = *W_;
    if (w == 0) {
      P_[0][0] = {1};
      return;
    }
    int s = W.reduced_word(w)[0];
    Elt v = W.lmul(s, w);  // w = s v, sv > v
    for (Elt y = 0; y < N_; ++y) {
      if (!W.bruhat_leq(y, w)) continue;
      // P_{y,w} = u^{1-c} P_{sy,v} + u^c P_{y,v} - sum_{z: sz<z} mu(z,v) u^{(l(w)-l(z))/2} P_{y,z}
      // with c = 1 if sy < y, else 0.
      std::vector<long> r;
      Elt sy = W.lmul(s, y);
      int c = W.length(sy) < W.length(y) ? 1 : 0;
      if (W.bruhat_leq(sy, v)) add(r, P_[v][sy], 1, 1 - c);
      if (W.bruhat_leq(y, v)) add(r, P_[v][y], 1, c);
      for (Elt z = 0; z < N_; ++z) {
        if (!W.bruhat_leq(y, z) || !W.bruhat_leq(z, v) || z == v) continue;
        if (W.length(W.lmul(s, z)) > W.length(z)) continue;
        long m = mu(z, v);
        if (m) add(r, P_[z][y], -m, (W.length(w) - W.length(z)) / 2);
      }
      trim(r);
      P_[w][y] = r;
    }
  }

  const CoxeterSystem* W_;
  int N_;
  std::vector<std::vector<std::vector<long>>> P_;
};

/// Value of a Laurent polynomial at e^(1,0) -> x0, e^(0,1) -> x1.
inline BigRational evaluate(const GroupRingElement& g, const BigRational& x0, const BigRational& x1 = 1) {
  BigRational r = 0;
  for (const auto& [e, c] : g.terms()) {
    BigRational m = c;
    auto pw = [](BigRational b, std::int64_t k) {
      BigRational out = 1;
      if (k < 0) {
        b = 1 / b;
        k = -k;
      }
      while (k--) out *= b;
      return out;
    };
    m *= pw(x0, e.c[0]) * pw(x1, e.c[1]);
    r += m;
  }
  return r;
}

}  // namespace klcells::testing
