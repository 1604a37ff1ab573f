#pragma once
// Left, right and two-sided preorders and cells (absolute or relative to a
// parabolic subset I), cell modules, the relation "approx" between left
// cells, Lusztig's a-function with Delta, n_z, gamma, and property checkers.

#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "hecke.hpp"
#include "matrix.hpp"
#include "report.hpp"

namespace klcells {

enum class CellSide { L, R, LR };

inline std::string side_name(CellSide s) {
  switch (s) {
    case CellSide::L: return "L";
    case CellSide::R: return "R";
    case CellSide::LR: return "LR";
  }
  return "?";
}

/// Reflexive-transitive closure of a digraph; below(y) = {x : x <= y}.
class Preorder {
 public:
  Preorder() = default;
  /// edges[y] lists the x with an elementary step x <- y.
  explicit Preorder(const std::vector<std::vector<Elt>>& edges) {
    int n = static_cast<int>(edges.size());
    below_.assign(n, boost::dynamic_bitset<>(n));
    std::vector<Elt> stack;
    for (Elt y = 0; y < n; ++y) {
      auto& b = below_[y];
      b.set(y);
      stack.assign(1, y);
      while (!stack.empty()) {
        Elt v = stack.back();
        stack.pop_back();
        for (Elt x : edges[v])
          if (!b[x]) {
            b.set(x);
            stack.push_back(x);
          }
      }
    }
  }
  int size() const { return static_cast<int>(below_.size()); }
  bool leq(Elt x, Elt y) const { return below_[y][x]; }
  bool equiv(Elt x, Elt y) const { return leq(x, y) && leq(y, x); }
  const boost::dynamic_bitset<>& below(Elt y) const { return below_[y]; }

 private:
  std::vector<boost::dynamic_bitset<>> below_;
};

struct CellPartition {
  CellSide side = CellSide::L;
  GenSet I = 0;
  std::vector<std::vector<Elt>> cells;  // each sorted; cells ordered by minimal element
  std::vector<int> cell_of;
  std::vector<std::pair<int, int>> order;  // (i, j): cell i lies strictly below cell j

  static CellPartition from_preorder(const Preorder& P, CellSide side, GenSet I) {
    CellPartition cp;
    cp.side = side;
    cp.I = I;
    int n = P.size();
    cp.cell_of.assign(n, -1);
    for (Elt y = 0; y < n; ++y) {
      if (cp.cell_of[y] >= 0) continue;
      int id = static_cast<int>(cp.cells.size());
      cp.cells.emplace_back();
      for (Elt x = y; x < n; ++x)
        if (cp.cell_of[x] < 0 && P.equiv(x, y)) {
          cp.cell_of[x] = id;
          cp.cells[id].push_back(x);
        }
    }
    int m = static_cast<int>(cp.cells.size());
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        if (i != j && P.leq(cp.cells[i][0], cp.cells[j][0])) cp.order.emplace_back(i, j);
    return cp;
  }

  bool same(Elt x, Elt y) const { return cell_of[x] == cell_of[y]; }

  nlohmann::json to_json(const CoxeterSystem& W) const {
    nlohmann::json cj = nlohmann::json::array();
    for (const auto& c : cells) {
      nlohmann::json e = nlohmann::json::array();
      for (Elt w : c) e.push_back(W.to_json(w));
      cj.push_back(e);
    }
    nlohmann::json oj = nlohmann::json::array();
    for (auto [i, j] : order) oj.push_back({i, j});
    nlohmann::json Ij = nlohmann::json::array();
    for (int s : gen_list(I)) Ij.push_back(W.gen_name(s));
    return {{"side", side_name(side)}, {"I", Ij}, {"cells", cj}, {"order", oj}};
  }
};

/// Preorders and cells of W with respect to the generators in I.
class CellStructure {
 public:
  CellStructure(const HeckeAlgebra& H, GenSet I) : H_(&H), I_(I) {
    const auto& W = H.W();
    int N = W.size();
    std::vector<std::vector<Elt>> le(N), re(N), lre(N);
    for (Elt y = 0; y < N; ++y)
      for (int s : gen_list(I))
        for (const auto& [x, c] : H.gen_row(s, y))
          if (x != y) le[y].push_back(x);
    for (Elt y = 0; y < N; ++y) {
      for (Elt x : le[W.inverse(y)]) re[y].push_back(W.inverse(x));
      lre[y] = le[y];
      lre[y].insert(lre[y].end(), re[y].begin(), re[y].end());
    }
    P_[0] = Preorder(le);
    P_[1] = Preorder(re);
    P_[2] = Preorder(lre);
    for (int k = 0; k < 3; ++k) C_[k] = CellPartition::from_preorder(P_[k], static_cast<CellSide>(k), I);
  }

  const HeckeAlgebra& hecke() const { return *H_; }
  GenSet I() const { return I_; }
  const Preorder& preorder(CellSide s) const { return P_[static_cast<int>(s)]; }
  const CellPartition& partition(CellSide s) const { return C_[static_cast<int>(s)]; }
  bool leq(CellSide s, Elt x, Elt y) const { return preorder(s).leq(x, y); }
  bool equiv(CellSide s, Elt x, Elt y) const { return partition(s).same(x, y); }
  const std::vector<std::vector<Elt>>& left_cells() const { return partition(CellSide::L).cells; }

 private:
  const HeckeAlgebra* H_;
  GenSet I_;
  Preorder P_[3];
  CellPartition C_[3];
};

// ---- cell modules ----

/// [C]_A for a union C of left cells: C_w.c_x = sum_{y in C} h_{w,x,y} c_y.
/// With delta_twist the same matrices describe the action of C_w^delta.
class CellModule {
 public:
  CellModule(const HeckeAlgebra& H, std::vector<Elt> elems, bool delta_twist = false)
      : H_(&H), elems_(std::move(elems)), twist_(delta_twist) {
    std::sort(elems_.begin(), elems_.end());
    pos_.assign(H.size(), -1);
    for (int i = 0; i < dim(); ++i) pos_[elems_[i]] = i;
  }

  int dim() const { return static_cast<int>(elems_.size()); }
  const std::vector<Elt>& elements() const { return elems_; }
  bool twisted() const { return twist_; }

  /// Matrix of C_s: entry (i, j) = h_{s, x_j, x_i}.
  AMatrix gen_matrix(int s) const {
    AMatrix m = a_zero(dim(), dim(), H_->arity());
    for (int j = 0; j < dim(); ++j)
      for (const auto& [z, c] : H_->gen_row(s, elems_[j]))
        if (pos_[z] >= 0) m[pos_[z]][j] = c;
    return m;
  }

  /// Matrix of C_w (uses the full structure constant table).
  AMatrix matrix(Elt w) const {
    AMatrix m = a_zero(dim(), dim(), H_->arity());
    for (int j = 0; j < dim(); ++j)
      for (const auto& [z, c] : H_->h_row(w, elems_[j]))
        if (pos_[z] >= 0) m[pos_[z]][j] = c;
    return m;
  }

  /// Matrix of T_s: C_s - q_s^{-1} untwisted; q_s - (matrix of C_s) twisted
  /// (since delta(C_s) = q_s - T_s).
  AMatrix T_gen_matrix(int s) const {
    AMatrix c = gen_matrix(s);
    AMatrix id = a_identity(dim(), H_->arity());
    if (!twist_) return a_add(c, id, -H_->qinv(s));
    AMatrix r = a_add(a_zero(dim(), dim(), H_->arity()), id, H_->q(s));
    return a_add(r, c, -H_->one());
  }

  /// Matrix of T_w, as the product along a reduced word.
  AMatrix T_matrix(Elt w) const {
    AMatrix m = a_identity(dim(), H_->arity());
    for (int s : H_->W().reduced_word(w)) m = a_mul(m, T_gen_matrix(s));
    return m;
  }

  /// Matrix of an arbitrary T-basis element.
  AMatrix element_matrix(const HeckeElement& h) const {
    AMatrix m = a_zero(dim(), dim(), H_->arity());
    for (Elt w = 0; w < H_->size(); ++w)
      if (!h[w].is_zero()) m = a_add(std::move(m), T_matrix(w), h[w]);
    return m;
  }

  /// Quadratic relation (T_s - q_s)(T_s + q_s^{-1}) = 0 and braid relations.
  PropertyReport check_relations() const {
    PropertyReport rep("module-relations");
    const auto& W = H_->W();
    int k = H_->arity();
    for (int s = 0; s < W.rank(); ++s) {
      AMatrix t = T_gen_matrix(s);
      AMatrix lhs = a_mul(t, t);
      AMatrix rhs = a_add(a_identity(dim(), k), t, H_->qdiff(s));
      rep.expect(a_equal(lhs, rhs), "quadratic relation fails for " + W.gen_name(s));
      for (int u = s + 1; u < W.rank(); ++u) {
        int m = W.coxeter_m(s, u);
        AMatrix tu = T_gen_matrix(u);
        AMatrix a = a_identity(dim(), k), b = a_identity(dim(), k);
        for (int i = 0; i < m; ++i) {
          a = a_mul(a, i % 2 ? tu : t);
          b = a_mul(b, i % 2 ? t : tu);
        }
        rep.expect(a_equal(a, b), "braid relation fails for " + W.gen_name(s) + "," + W.gen_name(u));
      }
    }
    return rep;
  }

 private:
  const HeckeAlgebra* H_;
  std::vector<Elt> elems_;
  std::vector<int> pos_;
  bool twist_;
};

/// Checks h_{s,x,y} = h_{s,f(x),f(y)} for all generators s and x,y in the
/// cell (the defining condition of C ~ C1 via f).  Also records whether each
/// x lies in the same right cell as f(x).
inline PropertyReport approx_check(const HeckeAlgebra& H, const std::vector<Elt>& cell,
                                   const std::vector<Elt>& cell1, const std::vector<Elt>& image,
                                   const CellStructure* cs = nullptr) {
  PropertyReport rep("approx");
  if (cell.size() != image.size() || cell.size() != cell1.size())
    throw std::invalid_argument("approx_check: bijection size mismatch");
  {
    std::set<Elt> img(image.begin(), image.end()), tgt(cell1.begin(), cell1.end());
    if (img != tgt || img.size() != image.size()) throw std::invalid_argument("approx_check: not a bijection onto the cell");
  }
  const auto& W = H.W();
  std::map<Elt, Elt> f;
  for (std::size_t i = 0; i < cell.size(); ++i) f[cell[i]] = image[i];
  for (int s = 0; s < W.rank(); ++s)
    for (Elt x : cell)
      for (Elt y : cell) {
        const auto& a = sparse_get(H.gen_row(s, x), y);
        const auto& b = sparse_get(H.gen_row(s, f[x]), f[y]);
        rep.expect(a == b, "s=" + W.gen_name(s) + " x=" + W.word_string(x) + " y=" + W.word_string(y));
      }
  if (rep.passed() && cs) {
    bool right = true;
    for (Elt x : cell) right = right && cs->equiv(CellSide::R, x, f[x]);
    rep.note = right ? "x ~R f(x) for all x" : "some x not ~R f(x)";
  }
  return rep;
}

/// Bijections cell -> cell1 satisfying ♥ for the generators in `gens`,
/// found by backtracking; stops after `limit` of them.
inline std::vector<std::vector<Elt>> heart_bijections(const HeckeAlgebra& H, const std::vector<Elt>& cell,
                                                     const std::vector<Elt>& cell1, GenSet gens,
                                                     std::size_t limit = 2) {
  std::vector<std::vector<Elt>> found;
  if (cell.size() != cell1.size()) return found;
  const auto& W = H.W();
  std::size_t m = cell.size();
  std::vector<Elt> img(m);
  std::vector<char> used(m, 0);
  auto get = [&](int s, Elt x, Elt y) {
    const auto& g = sparse_get(H.gen_row(s, x), y);
    return g.arity() ? g : H.zero();
  };
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (found.size() >= limit) return;
    if (i == m) {
      found.push_back(img);
      return;
    }
    for (std::size_t c = 0; c < m; ++c) {
      if (used[c]) continue;
      Elt y1 = cell1[c];
      bool ok = true;
      for (int s = 0; s < W.rank() && ok; ++s)
        if (gens >> s & 1)
          for (std::size_t j = 0; j <= i && ok; ++j) {
            Elt x1 = j == i ? y1 : img[j];
            ok = get(s, cell[i], cell[j]) == get(s, y1, x1) && get(s, cell[j], cell[i]) == get(s, x1, y1);
          }
      if (!ok) continue;
      used[c] = 1;
      img[i] = y1;
      go(i + 1);
      used[c] = 0;
    }
  };
  go(0);
  return found;
}

// ---- a-function and companions ----

struct AFunctionData {
  std::vector<Exponent> a;      // a(z)
  std::vector<Exponent> Delta;  // Delta(z)
  std::vector<BigInt> n;        // n_z
  std::vector<char> in_D;       // a(z) == Delta(z)
  std::vector<Elt> D;

  bool is_D(Elt z) const { return in_D[z]; }
};

/// a(z) = max over x, y in `scope` of -min_exponent(h_{x,y,z}), at least 0,
/// for z in `scope` (scope = all of W for the absolute function).
inline std::vector<Exponent> a_function(const HeckeAlgebra& H, const std::vector<Elt>& scope) {
  std::vector<Exponent> a(H.size());
  std::vector<char> in(H.size(), 0);
  for (Elt z : scope) in[z] = 1;
  for (Elt x : scope)
    for (Elt y : scope)
      for (const auto& [z, c] : H.h_row(x, y))
        if (in[z]) a[z] = std::max(a[z], -c.min_exponent());
  return a;
}

inline AFunctionData a_function_data(const HeckeAlgebra& H) {
  AFunctionData d;
  int N = H.size();
  std::vector<Elt> all(N);
  for (Elt w = 0; w < N; ++w) all[w] = w;
  d.a = a_function(H, all);
  d.Delta.resize(N);
  d.n.resize(N);
  d.in_D.assign(N, 0);
  for (Elt z = 0; z < N; ++z) {
    const auto& P = H.p(0, z);
    d.Delta[z] = -P.max_exponent();
    d.n[z] = P.leading_coeff();
    if (d.a[z] == d.Delta[z]) {
      d.in_D[z] = 1;
      d.D.push_back(z);
    }
  }
  return d;
}

/// gamma_{x,y,z} = constant term of e^{a(z^{-1})} h_{x,y,z^{-1}}.
inline BigInt gamma_value(const HeckeAlgebra& H, const AFunctionData& A, Elt x, Elt y, Elt z) {
  Elt zi = H.W().inverse(z);
  return H.h(x, y, zi).coeff(-A.a[zi]);
}

// ---- property checks ----

inline std::string tuple_string(const CoxeterSystem& W, std::initializer_list<Elt> xs) {
  std::string s = "(";
  bool first = true;
  for (Elt x : xs) {
    s += (first ? "" : ", ") + W.word_string(x);
    first = false;
  }
  return s + ")";
}

/// (spadesuit): x <=_L y and x ~LR y imply x ~L y.
inline PropertyReport check_spadesuit(const CellStructure& cs) {
  PropertyReport rep("spadesuit");
  const auto& W = cs.hecke().W();
  int N = W.size();
  for (Elt x = 0; x < N; ++x)
    for (Elt y = 0; y < N; ++y)
      if (cs.leq(CellSide::L, x, y) && cs.equiv(CellSide::LR, x, y))
        rep.expect(cs.equiv(CellSide::L, x, y), tuple_string(W, {x, y}));
  return rep;
}

/// Relative (spadesuit) for I: with u, v in W_I and x, y in Y_I,
/// ux <=_{L,I} vy and u ~_{LR,I} v imply u ~_{L,I} v and x = y.
inline PropertyReport check_relative_spadesuit(const CellStructure& rel) {
  const auto& W = rel.hecke().W();
  GenSet I = rel.I();
  PropertyReport rep("relative_spadesuit[I=" + std::to_string(I) + "]");
  int N = W.size();
  std::vector<std::pair<Elt, Elt>> dec(N);
  for (Elt w = 0; w < N; ++w) dec[w] = W.coset_decompose(w, I, CoxeterSystem::Side::Right);
  for (Elt a = 0; a < N; ++a)
    for (Elt b = 0; b < N; ++b) {
      if (!rel.leq(CellSide::L, a, b)) continue;
      auto [x, u] = dec[a];
      auto [y, v] = dec[b];
      if (!rel.equiv(CellSide::LR, u, v)) continue;
      rep.expect(rel.equiv(CellSide::L, u, v) && x == y, tuple_string(W, {u, x, v, y}));
    }
  return rep;
}

/// ux <=_{L,I} vy implies u <=_{LR,I} v and x <= y; ux ~_{L,I} vy implies
/// x = y and u ~_{L,I} v (u, v in W_I; x, y in Y_I).
inline PropertyReport check_relative_order_bounds(const CellStructure& rel) {
  const auto& W = rel.hecke().W();
  GenSet I = rel.I();
  PropertyReport rep("relative-order-bounds[I=" + std::to_string(I) + "]");
  int N = W.size();
  std::vector<std::pair<Elt, Elt>> dec(N);
  for (Elt w = 0; w < N; ++w) dec[w] = W.coset_decompose(w, I, CoxeterSystem::Side::Right);
  for (Elt a = 0; a < N; ++a)
    for (Elt b = 0; b < N; ++b) {
      if (!rel.leq(CellSide::L, a, b)) continue;
      auto [x, u] = dec[a];
      auto [y, v] = dec[b];
      rep.expect(rel.leq(CellSide::LR, u, v) && W.bruhat_leq(x, y), "leq " + tuple_string(W, {u, x, v, y}));
      if (rel.equiv(CellSide::L, a, b))
        rep.expect(x == y && rel.equiv(CellSide::L, u, v), "equiv " + tuple_string(W, {u, x, v, y}));
    }
  return rep;
}

/// uy <=_{L,I} vy iff u <=_{L,I} v, for u, v in W_I and y in Y_I.
inline PropertyReport check_relative_translation(const CellStructure& rel) {
  const auto& W = rel.hecke().W();
  GenSet I = rel.I();
  PropertyReport rep("relative-translation[I=" + std::to_string(I) + "]");
  auto WI = W.parabolic_elements(I);
  auto Y = W.coset_reps(I, CoxeterSystem::Side::Right);
  for (Elt y : Y)
    for (Elt u : WI)
      for (Elt v : WI) {
        bool a = rel.leq(CellSide::L, W.multiply(u, y), W.multiply(v, y));
        bool b = rel.leq(CellSide::L, u, v);
        rep.expect(a == b, tuple_string(W, {u, v, y}));
      }
  return rep;
}

/// x <=_LR y implies l_t(y) <= l_t(x).
inline PropertyReport check_t_length_monotone(const CellStructure& cs) {
  PropertyReport rep("t-length-monotone");
  const auto& W = cs.hecke().W();
  for (Elt x = 0; x < W.size(); ++x)
    for (Elt y = 0; y < W.size(); ++y)
      if (cs.leq(CellSide::LR, x, y)) rep.expect(W.t_length(y) <= W.t_length(x), tuple_string(W, {x, y}));
  return rep;
}

/// Lusztig's properties for the absolute cells.  `which` may contain
/// P1..P14 (P12 scans every parabolic subgroup) and "spadesuit".
inline std::vector<PropertyReport> check_properties(const CellStructure& cs, const AFunctionData& A,
                                                    const std::vector<std::string>& which) {
  const auto& H = cs.hecke();
  const auto& W = H.W();
  int N = W.size();
  auto wants = [&](const std::string& p) { return std::find(which.begin(), which.end(), p) != which.end(); };
  auto g = [&](Elt x, Elt y, Elt z) { return gamma_value(H, A, x, y, z); };
  auto inv = [&](Elt x) { return W.inverse(x); };
  std::vector<PropertyReport> out;

  if (wants("P1")) {
    PropertyReport r("P1");
    for (Elt z = 0; z < N; ++z) r.expect(A.a[z] <= A.Delta[z], tuple_string(W, {z}));
    out.push_back(r);
  }
  if (wants("P2")) {
    PropertyReport r("P2");
    for (Elt d : A.D)
      for (Elt x = 0; x < N; ++x)
        for (Elt y = 0; y < N; ++y)
          if (g(x, y, d) != 0) r.expect(x == inv(y), tuple_string(W, {x, y, d}));
    out.push_back(r);
  }
  if (wants("P3")) {
    PropertyReport r("P3");
    for (Elt y = 0; y < N; ++y) {
      int cnt = 0;
      for (Elt d : A.D) cnt += g(inv(y), y, d) != 0;
      r.expect(cnt == 1, tuple_string(W, {y}) + " count=" + std::to_string(cnt));
    }
    out.push_back(r);
  }
  if (wants("P4")) {
    PropertyReport r("P4");
    for (Elt x = 0; x < N; ++x)
      for (Elt z = 0; z < N; ++z)
        if (cs.leq(CellSide::LR, x, z)) r.expect(A.a[x] >= A.a[z], tuple_string(W, {x, z}));
    out.push_back(r);
  }
  if (wants("P5")) {
    PropertyReport r("P5");
    for (Elt d : A.D)
      for (Elt y = 0; y < N; ++y) {
        BigInt v = g(inv(y), y, d);
        if (v != 0) r.expect(v == A.n[d] && (v == 1 || v == -1), tuple_string(W, {y, d}));
      }
    out.push_back(r);
  }
  if (wants("P6")) {
    PropertyReport r("P6");
    for (Elt d : A.D) r.expect(inv(d) == d, tuple_string(W, {d}));
    out.push_back(r);
  }
  if (wants("P7")) {
    PropertyReport r("P7");
    for (Elt x = 0; x < N; ++x)
      for (Elt y = 0; y < N; ++y)
        for (Elt z = 0; z < N; ++z) r.expect(g(x, y, z) == g(y, z, x), tuple_string(W, {x, y, z}));
    out.push_back(r);
  }
  if (wants("P8")) {
    PropertyReport r("P8");
    for (Elt x = 0; x < N; ++x)
      for (Elt y = 0; y < N; ++y)
        for (const auto& [zi, c] : H.h_row(x, y)) {
          Elt z = inv(zi);
          if (g(x, y, z) == 0) continue;
          r.expect(cs.equiv(CellSide::L, x, inv(y)) && cs.equiv(CellSide::L, y, inv(z)) &&
                       cs.equiv(CellSide::L, z, inv(x)),
                   tuple_string(W, {x, y, z}));
        }
    out.push_back(r);
  }
  if (wants("P9") || wants("P10") || wants("P11")) {
    PropertyReport r9("P9"), r10("P10"), r11("P11");
    for (Elt x = 0; x < N; ++x)
      for (Elt y = 0; y < N; ++y) {
        if (A.a[x] != A.a[y]) continue;
        if (cs.leq(CellSide::L, x, y)) r9.expect(cs.equiv(CellSide::L, x, y), tuple_string(W, {x, y}));
        if (cs.leq(CellSide::R, x, y)) r10.expect(cs.equiv(CellSide::R, x, y), tuple_string(W, {x, y}));
        if (cs.leq(CellSide::LR, x, y)) r11.expect(cs.equiv(CellSide::LR, x, y), tuple_string(W, {x, y}));
      }
    if (wants("P9")) out.push_back(r9);
    if (wants("P10")) out.push_back(r10);
    if (wants("P11")) out.push_back(r11);
  }
  if (wants("P12")) {
    PropertyReport r("P12");
    for (GenSet I : all_subsets(W)) {
      auto WI = W.parabolic_elements(I);
      auto aI = a_function(H, WI);
      for (Elt y : WI) r.expect(aI[y] == A.a[y], "I=" + std::to_string(I) + " " + tuple_string(W, {y}));
    }
    out.push_back(r);
  }
  if (wants("P13")) {
    PropertyReport r("P13");
    for (const auto& cell : cs.left_cells()) {
      std::vector<Elt> ds;
      for (Elt x : cell)
        if (A.is_D(x)) ds.push_back(x);
      r.expect(ds.size() == 1, "cell of " + W.word_string(cell[0]) + " has " + std::to_string(ds.size()) + " elements of D");
      if (ds.size() == 1)
        for (Elt x : cell) r.expect(g(inv(x), x, ds[0]) != 0, tuple_string(W, {x, ds[0]}));
    }
    out.push_back(r);
  }
  if (wants("P14")) {
    PropertyReport r("P14");
    for (Elt z = 0; z < N; ++z) r.expect(cs.equiv(CellSide::LR, z, inv(z)), tuple_string(W, {z}));
    out.push_back(r);
  }
  if (wants("spadesuit")) out.push_back(check_spadesuit(cs));
  return out;
}

/// Expands "P1-P8,P11,spadesuit" into a list of property names.
inline std::vector<std::string> expand_property_list(const std::string& spec) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i <= spec.size()) {
    std::size_t j = spec.find(',', i);
    if (j == std::string::npos) j = spec.size();
    std::string tok = spec.substr(i, j - i);
    i = j + 1;
    if (tok.empty()) continue;
    auto dash = tok.find('-');
    if (tok[0] == 'P' && dash != std::string::npos) {
      int a = std::stoi(tok.substr(1, dash - 1));
      std::string rest = tok.substr(dash + 1);
      int b = std::stoi(rest[0] == 'P' ? rest.substr(1) : rest);
      for (int k = a; k <= b; ++k) out.push_back("P" + std::to_string(k));
    } else {
      out.push_back(tok);
    }
  }
  return out;
}

}  // namespace klcells
