#pragma once
// Finite Coxeter groups of types A_{n-1}, B_n and I_2(m).  All elements are
// enumerated once; algorithms work on their indices.

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "json.hpp"

namespace klcells {

/// Index of a group element in the global enumeration order.
using Elt = int;
/// Subset of the generators, bit i = generator i.
using GenSet = std::uint32_t;

struct ResourceLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class CoxeterType { A, B, I2 };

inline std::string type_name(CoxeterType t) {
  switch (t) {
    case CoxeterType::A: return "A";
    case CoxeterType::B: return "B";
    case CoxeterType::I2: return "I2";
  }
  return "?";
}

/// Largest group order enumerate() accepts unless raised.
inline constexpr std::size_t kDefaultMaxOrder = 50000;

class CoxeterSystem {
 public:
  /// Type A_{rank}: the symmetric group on rank+1 letters.
  /// Type B_{rank}: signed permutations, generator 0 is t = s0.
  /// Type I2(m): dihedral group of order 2m (rank argument is m).
  static std::shared_ptr<const CoxeterSystem> make(CoxeterType type, int rank,
                                                   std::size_t max_order = kDefaultMaxOrder) {
    return std::shared_ptr<const CoxeterSystem>(new CoxeterSystem(type, rank, max_order));
  }

  CoxeterType type() const { return type_; }
  /// Coxeter rank (number of generators).
  int rank() const { return nS_; }
  /// Number of letters permuted (A, B); m for I2.
  int degree() const { return deg_; }
  int size() const { return static_cast<int>(keys_.size()); }
  GenSet all_gens() const { return nS_ >= 32 ? ~GenSet(0) : (GenSet(1) << nS_) - 1; }
  int coxeter_m(int s, int u) const { return cm_[s][u]; }

  std::string gen_name(int s) const {
    if (type_ == CoxeterType::B) return "s" + std::to_string(s);
    return "s" + std::to_string(s + 1);
  }

  Elt identity() const { return 0; }
  Elt gen(int s) const { return lmul_[s][0]; }
  int length(Elt w) const { return len_[w]; }
  Elt inverse(Elt w) const { return inv_[w]; }
  Elt lmul(int s, Elt w) const { return lmul_[s][w]; }  // s*w
  Elt rmul(Elt w, int s) const { return rmul_[s][w]; }  // w*s
  Elt multiply(Elt x, Elt y) const { return index_of(compose(keys_[x], keys_[y])); }
  GenSet left_descents(Elt w) const { return dl_[w]; }
  GenSet right_descents(Elt w) const { return dr_[w]; }
  /// Generators occurring in any reduced word of w.
  GenSet support(Elt w) const { return supp_[w]; }
  /// Lexicographically smallest reduced word.
  const std::vector<int>& reduced_word(Elt w) const { return words_[w]; }
  /// Window notation (A, B) or (rotation, reflection) pair (I2).
  const std::vector<int>& key(Elt w) const { return keys_[w]; }

  bool bruhat_leq(Elt x, Elt y) const { return bruhat_[y][x]; }
  /// Set of x with x <= y.
  const boost::dynamic_bitset<>& bruhat_below(Elt y) const { return bruhat_[y]; }

  Elt longest() const { return size() - 1; }
  Elt longest(GenSet I) const {
    Elt best = 0;
    for (Elt w = 0; w < size(); ++w)
      if ((supp_[w] & ~I) == 0 && len_[w] > len_[best]) best = w;
    return best;
  }
  Elt conj_by_w0(Elt w) const { return multiply(multiply(longest(), w), longest()); }

  Elt from_word(const std::vector<int>& word) const {
    Elt w = 0;
    for (int s : word) {
      if (s < 0 || s >= nS_) throw std::invalid_argument("generator index out of range");
      w = rmul_[s][w];
    }
    return w;
  }

  /// Parses "1", "s1s0s1", "t s1", "s0*s1".
  Elt parse(const std::string& text) const {
    std::vector<int> word;
    if (text == "1" || text == "e" || text.empty()) return 0;
    std::size_t i = 0;
    while (i < text.size()) {
      char c = text[i];
      if (c == ' ' || c == '*' || c == '.') { ++i; continue; }
      if (c == 't' && type_ == CoxeterType::B) { word.push_back(0); ++i; continue; }
      if (c != 's') throw std::invalid_argument("cannot parse element '" + text + "'");
      ++i;
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j == i) throw std::invalid_argument("cannot parse element '" + text + "'");
      int idx = std::stoi(text.substr(i, j - i));
      if (type_ != CoxeterType::B) --idx;
      if (idx < 0 || idx >= nS_) throw std::invalid_argument("no generator in '" + text + "'");
      word.push_back(idx);
      i = j;
    }
    return from_word(word);
  }

  std::string word_string(Elt w) const {
    if (words_[w].empty()) return "1";
    std::string s;
    for (int g : words_[w]) s += gen_name(g);
    return s;
  }

  /// Window notation for A/B, word string for I2.
  nlohmann::json to_json(Elt w) const {
    if (type_ == CoxeterType::I2) return word_string(w);
    return keys_[w];
  }
  Elt from_json(const nlohmann::json& j) const {
    if (j.is_string()) return parse(j.get<std::string>());
    return index_of(j.get<std::vector<int>>());
  }
  /// Compact text form used in CSV and text output.
  std::string name(Elt w) const {
    if (type_ == CoxeterType::I2) return word_string(w);
    std::string s = "[";
    for (std::size_t i = 0; i < keys_[w].size(); ++i) s += (i ? "," : "") + std::to_string(keys_[w][i]);
    return s + "]";
  }

  Elt index_of(const std::vector<int>& k) const {
    auto it = index_.find(k);
    if (it == index_.end()) throw std::invalid_argument("not an element of this group");
    return it->second;
  }

  /// Number of negative window entries (type B); for other types the number
  /// of occurrences of generator 0 in a reduced word.
  int t_length(Elt w) const {
    if (type_ == CoxeterType::B) {
      int c = 0;
      for (int v : keys_[w]) c += v < 0;
      return c;
    }
    return static_cast<int>(std::count(words_[w].begin(), words_[w].end(), 0));
  }

  bool in_parabolic(Elt w, GenSet I) const { return (supp_[w] & ~I) == 0; }
  std::vector<Elt> parabolic_elements(GenSet I) const {
    std::vector<Elt> r;
    for (Elt w = 0; w < size(); ++w)
      if (in_parabolic(w, I)) r.push_back(w);
    return r;
  }

  enum class Side { Left, Right };

  /// X_I (minimal length in wW_I) for Side::Left, Y_I = X_I^{-1} otherwise.
  std::vector<Elt> coset_reps(GenSet I, Side side = Side::Left) const {
    std::vector<Elt> r;
    for (Elt w = 0; w < size(); ++w)
      if (((side == Side::Left ? dr_[w] : dl_[w]) & I) == 0) r.push_back(w);
    return r;
  }

  /// Left: w = x*u with x in X_I, u in W_I.  Right: w = u*x with x in Y_I.
  /// Returns (x, u).
  std::pair<Elt, Elt> coset_decompose(Elt w, GenSet I, Side side = Side::Left) const {
    Elt x = w, u = 0;
    for (;;) {
      GenSet d = (side == Side::Left ? dr_[x] : dl_[x]) & I;
      if (!d) break;
      int s = std::countr_zero(d);
      if (side == Side::Left) {
        x = rmul_[s][x];
        u = lmul_[s][u];
      } else {
        x = lmul_[s][x];
        u = rmul_[s][u];
      }
    }
    return {x, u};
  }

  /// Generators s with s' = w s w^{-1} for some generator s'; -1 otherwise.
  int conjugate_generator(Elt w, int s) const {
    Elt c = multiply(multiply(w, gen(s)), inv_[w]);
    for (int u = 0; u < nS_; ++u)
      if (gen(u) == c) return u;
    return -1;
  }

  /// Classes of generators under conjugation in W (odd edges of the diagram).
  std::vector<int> generator_classes() const {
    std::vector<int> cls(nS_);
    std::iota(cls.begin(), cls.end(), 0);
    auto find = [&](int x) {
      while (cls[x] != x) x = cls[x] = cls[cls[x]];
      return x;
    };
    for (int s = 0; s < nS_; ++s)
      for (int u = s + 1; u < nS_; ++u)
        if (cm_[s][u] % 2 == 1) cls[find(u)] = find(s);
    for (int s = 0; s < nS_; ++s) cls[s] = find(s);
    return cls;
  }

  std::string label() const {
    if (type_ == CoxeterType::I2) return "I2(" + std::to_string(deg_) + ")";
    return type_name(type_) + std::to_string(nS_);
  }

 private:
  CoxeterSystem(CoxeterType type, int rank, std::size_t max_order) : type_(type) {
    switch (type) {
      case CoxeterType::A:
        if (rank < 1) throw std::invalid_argument("type A needs rank >= 1");
        nS_ = rank;
        deg_ = rank + 1;
        break;
      case CoxeterType::B:
        if (rank < 2) throw std::invalid_argument("type B needs rank >= 2");
        nS_ = rank;
        deg_ = rank;
        break;
      case CoxeterType::I2:
        if (rank < 2) throw std::invalid_argument("I2(m) needs m >= 2");
        nS_ = 2;
        deg_ = rank;
        break;
    }
    if (group_order() > max_order)
      throw ResourceLimitError("group " + label() + " has more than " + std::to_string(max_order) + " elements");
    build_matrix();
    enumerate();
    build_tables();
    build_bruhat();
  }

  std::size_t group_order() const {
    std::size_t f = 1;
    switch (type_) {
      case CoxeterType::A:
        for (int i = 2; i <= deg_; ++i) {
          f *= i;
          if (f > (std::size_t(1) << 40)) return f;
        }
        return f;
      case CoxeterType::B:
        for (int i = 1; i <= deg_; ++i) {
          f *= 2 * i;
          if (f > (std::size_t(1) << 40)) return f;
        }
        return f;
      case CoxeterType::I2: return 2 * static_cast<std::size_t>(deg_);
    }
    return f;
  }

  void build_matrix() {
    cm_.assign(nS_, std::vector<int>(nS_, 2));
    for (int s = 0; s < nS_; ++s) cm_[s][s] = 1;
    if (type_ == CoxeterType::I2) {
      cm_[0][1] = cm_[1][0] = deg_;
      return;
    }
    for (int s = 0; s + 1 < nS_; ++s) cm_[s][s + 1] = cm_[s + 1][s] = 3;
    if (type_ == CoxeterType::B) cm_[0][1] = cm_[1][0] = 4;
  }

  // Keys: A/B windows w(1..n); I2 pairs {r, e} for rho^r sigma^e with
  // sigma = s1, rho = s2 s1.
  std::vector<int> gen_key(int s) const {
    if (type_ == CoxeterType::I2) return {s == 0 ? 0 : 1, 1};
    std::vector<int> k(deg_);
    std::iota(k.begin(), k.end(), 1);
    if (type_ == CoxeterType::B && s == 0) {
      k[0] = -1;
    } else {
      int i = type_ == CoxeterType::B ? s : s + 1;  // swaps i and i+1
      std::swap(k[i - 1], k[i]);
    }
    return k;
  }

  std::vector<int> compose(const std::vector<int>& x, const std::vector<int>& y) const {
    if (type_ == CoxeterType::I2) {
      int m = deg_;
      int r = ((x[0] + (x[1] ? -y[0] : y[0])) % m + m) % m;
      return {r, (x[1] + y[1]) % 2};
    }
    std::vector<int> z(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
      int v = y[i];
      z[i] = v > 0 ? x[v - 1] : -x[-v - 1];
    }
    return z;
  }

  int formula_length(const std::vector<int>& w) const {
    int n = static_cast<int>(w.size());
    int l = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) l += w[i] > w[j];
    if (type_ == CoxeterType::B)
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) l += w[i] + w[j] < 0;
    return l;
  }

  void enumerate() {
    std::vector<std::pair<int, std::vector<int>>> all;  // (length, key)
    if (type_ == CoxeterType::I2) {
      // breadth-first search from the identity
      std::map<std::vector<int>, int> dist;
      std::vector<std::vector<int>> frontier{{0, 0}};
      dist[{0, 0}] = 0;
      std::vector<std::vector<int>> gens{gen_key(0), gen_key(1)};
      for (int d = 1; !frontier.empty(); ++d) {
        std::vector<std::vector<int>> next;
        for (const auto& k : frontier)
          for (const auto& g : gens) {
            auto y = compose(k, g);
            if (dist.emplace(y, d).second) next.push_back(y);
          }
        frontier = std::move(next);
      }
      for (auto& [k, d] : dist) all.emplace_back(d, k);
    } else {
      std::vector<int> perm(deg_);
      std::iota(perm.begin(), perm.end(), 1);
      do {
        int masks = type_ == CoxeterType::B ? (1 << deg_) : 1;
        for (int m = 0; m < masks; ++m) {
          std::vector<int> k = perm;
          for (int i = 0; i < deg_; ++i)
            if (m >> i & 1) k[i] = -k[i];
          all.emplace_back(formula_length(k), std::move(k));
        }
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
    // Dihedral keys are not canonical forms; sort those by reduced word later.
    std::sort(all.begin(), all.end());
    keys_.reserve(all.size());
    len_.reserve(all.size());
    for (auto& [l, k] : all) {
      index_.emplace(k, static_cast<Elt>(keys_.size()));
      len_.push_back(l);
      keys_.push_back(std::move(k));
    }
  }

  void build_tables() {
    int N = size();
    lmul_.assign(nS_, std::vector<Elt>(N));
    rmul_.assign(nS_, std::vector<Elt>(N));
    std::vector<std::vector<int>> g(nS_);
    for (int s = 0; s < nS_; ++s) g[s] = gen_key(s);
    for (Elt w = 0; w < N; ++w)
      for (int s = 0; s < nS_; ++s) {
        lmul_[s][w] = index_of(compose(g[s], keys_[w]));
        rmul_[s][w] = index_of(compose(keys_[w], g[s]));
      }
    words_.assign(N, {});
    dl_.assign(N, 0);
    dr_.assign(N, 0);
    supp_.assign(N, 0);
    // indices are sorted by length, so shorter elements are finished first
    for (Elt w = 0; w < N; ++w) {
      for (int s = 0; s < nS_; ++s) {
        if (len_[lmul_[s][w]] < len_[w]) dl_[w] |= GenSet(1) << s;
        if (len_[rmul_[s][w]] < len_[w]) dr_[w] |= GenSet(1) << s;
      }
      if (w == 0) continue;
      int s = std::countr_zero(dl_[w]);
      Elt v = lmul_[s][w];
      words_[w].push_back(s);
      words_[w].insert(words_[w].end(), words_[v].begin(), words_[v].end());
      supp_[w] = supp_[v] | (GenSet(1) << s);
    }
    if (type_ == CoxeterType::I2) reorder_by_words();
    inv_.assign(N, 0);
    for (Elt w = 0; w < N; ++w) {
      std::vector<int> rw(words_[w].rbegin(), words_[w].rend());
      inv_[w] = from_word(rw);
    }
  }

  // For I2 the canonical form is the normal word; re-sort by (length, word).
  void reorder_by_words() {
    int N = size();
    std::vector<Elt> order(N);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](Elt a, Elt b) {
      if (len_[a] != len_[b]) return len_[a] < len_[b];
      return words_[a] < words_[b];
    });
    std::vector<Elt> pos(N);
    for (int i = 0; i < N; ++i) pos[order[i]] = i;
    auto perm_vec = [&](auto& v) {
      auto old = v;
      for (int i = 0; i < N; ++i) v[i] = std::move(old[order[i]]);
    };
    perm_vec(keys_);
    perm_vec(len_);
    perm_vec(words_);
    perm_vec(dl_);
    perm_vec(dr_);
    perm_vec(supp_);
    for (int s = 0; s < nS_; ++s) {
      perm_vec(lmul_[s]);
      perm_vec(rmul_[s]);
      for (auto& x : lmul_[s]) x = pos[x];
      for (auto& x : rmul_[s]) x = pos[x];
    }
    index_.clear();
    for (Elt w = 0; w < N; ++w) index_.emplace(keys_[w], w);
  }

  // x <= w iff min(x, sx) <= sw for any s in D_L(w).
  void build_bruhat() {
    int N = size();
    bruhat_.assign(N, boost::dynamic_bitset<>(N));
    bruhat_[0].set(0);
    for (Elt w = 1; w < N; ++w) {
      int s = std::countr_zero(dl_[w]);
      Elt sw = lmul_[s][w];
      for (Elt x = 0; x < N; ++x) {
        Elt sx = lmul_[s][x];
        Elt m = len_[sx] < len_[x] ? sx : x;
        if (bruhat_[sw][m]) bruhat_[w].set(x);
      }
    }
  }

  struct VecHash {
    std::size_t operator()(const std::vector<int>& v) const {
      std::size_t h = 1469598103934665603ull;
      for (int x : v) h = (h ^ static_cast<std::size_t>(x + 1024)) * 1099511628211ull;
      return h;
    }
  };

  CoxeterType type_;
  int nS_ = 0;
  int deg_ = 0;
  std::vector<std::vector<int>> cm_;
  std::vector<std::vector<int>> keys_;
  std::unordered_map<std::vector<int>, Elt, VecHash> index_;
  std::vector<int> len_;
  std::vector<std::vector<Elt>> lmul_, rmul_;
  std::vector<Elt> inv_;
  std::vector<GenSet> dl_, dr_, supp_;
  std::vector<std::vector<int>> words_;
  std::vector<boost::dynamic_bitset<>> bruhat_;
};

using SystemPtr = std::shared_ptr<const CoxeterSystem>;

/// Value handle for an element of a specific system.
class CoxeterElement {
 public:
  CoxeterElement(SystemPtr sys, Elt w) : sys_(std::move(sys)), w_(w) {}
  Elt index() const { return w_; }
  const SystemPtr& system() const { return sys_; }
  int length() const { return sys_->length(w_); }
  CoxeterElement inverse() const { return {sys_, sys_->inverse(w_)}; }
  friend CoxeterElement operator*(const CoxeterElement& x, const CoxeterElement& y) {
    if (x.sys_ != y.sys_) throw std::invalid_argument("elements of different Coxeter systems");
    return {x.sys_, x.sys_->multiply(x.w_, y.w_)};
  }
  friend bool operator==(const CoxeterElement& x, const CoxeterElement& y) {
    return x.sys_ == y.sys_ && x.w_ == y.w_;
  }
  std::string to_string() const { return sys_->word_string(w_); }

 private:
  SystemPtr sys_;
  Elt w_;
};

/// Parses "0,1,2" (generator indices as named, so B uses 0 for t and A uses
/// 1..n-1) into a generator mask.
inline GenSet parse_gen_set(const CoxeterSystem& W, const std::string& text) {
  GenSet I = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t j = text.find(',', i);
    if (j == std::string::npos) j = text.size();
    std::string tok = text.substr(i, j - i);
    i = j + 1;
    if (tok.empty()) continue;
    if (tok[0] == 's') tok = tok.substr(1);
    int idx = tok == "t" ? 0 : std::stoi(tok);
    if (W.type() != CoxeterType::B) --idx;
    if (idx < 0 || idx >= W.rank()) throw std::invalid_argument("generator '" + tok + "' out of range");
    I |= GenSet(1) << idx;
  }
  return I;
}

inline std::vector<int> gen_list(GenSet I) {
  std::vector<int> r;
  for (int s = 0; I >> s; ++s)
    if (I >> s & 1) r.push_back(s);
  return r;
}

/// All subsets of the generators, in increasing mask order.
inline std::vector<GenSet> all_subsets(const CoxeterSystem& W) {
  std::vector<GenSet> r;
  for (GenSet I = 0; I <= W.all_gens(); ++I) r.push_back(I);
  return r;
}

}  // namespace klcells
