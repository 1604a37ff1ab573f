#pragma once
// Group ring Z[Gamma] of a free abelian group Gamma = Z^k (k = 1 or 2) with
// the lexicographic order, plus an unreduced fraction type.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "json.hpp"

namespace klcells {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Element of Z^k, k <= 2.  Unused trailing coordinates are zero, so the
/// defaulted lexicographic comparison is the lex order for either arity.
struct Exponent {
  std::array<std::int64_t, 2> c{0, 0};

  constexpr Exponent() = default;
  constexpr explicit Exponent(std::int64_t a, std::int64_t b = 0) : c{a, b} {}

  friend constexpr auto operator<=>(const Exponent&, const Exponent&) = default;

  constexpr Exponent operator+(const Exponent& o) const { return Exponent(c[0] + o.c[0], c[1] + o.c[1]); }
  constexpr Exponent operator-(const Exponent& o) const { return Exponent(c[0] - o.c[0], c[1] - o.c[1]); }
  constexpr Exponent operator-() const { return Exponent(-c[0], -c[1]); }
  constexpr Exponent operator*(std::int64_t m) const { return Exponent(c[0] * m, c[1] * m); }
  Exponent& operator+=(const Exponent& o) { c[0] += o.c[0]; c[1] += o.c[1]; return *this; }

  constexpr bool is_zero() const { return c[0] == 0 && c[1] == 0; }
  constexpr bool positive() const { return *this > Exponent{}; }
  constexpr bool negative() const { return *this < Exponent{}; }
};

inline std::string to_string(const Exponent& e, int k) {
  if (k == 1) return "(" + std::to_string(e.c[0]) + ")";
  return "(" + std::to_string(e.c[0]) + "," + std::to_string(e.c[1]) + ")";
}

enum class Region { Neg, NonPos, NonNeg, Pos };

namespace detail {
inline bool in_region(const Exponent& e, Region r) {
  switch (r) {
    case Region::Neg: return e.negative();
    case Region::NonPos: return !e.positive();
    case Region::NonNeg: return !e.negative();
    case Region::Pos: return e.positive();
  }
  return false;
}

inline void check_arity(int a, int b) {
  if (a != 0 && b != 0 && a != b)
    throw std::invalid_argument("group ring arity mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
}

inline std::string coef_string(const BigInt& c) { return c.str(); }
inline std::string coef_string(const BigRational& c) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (denominator(c) == 1) return numerator(c).str();
  return numerator(c).str() + "/" + denominator(c).str();
}
}  // namespace detail

/// Finite sums  sum_g a_g e^g  with coefficients in Coeff, stored as a
/// vector sorted by exponent (ascending) without zero coefficients.
/// Arity 0 marks an arity-less zero, which combines with anything.
template <class Coeff>
class BasicGroupRing {
 public:
  using Term = std::pair<Exponent, Coeff>;

  BasicGroupRing() = default;
  explicit BasicGroupRing(int k) : k_(k) {
    if (k != 1 && k != 2) throw std::invalid_argument("group ring arity must be 1 or 2");
  }

  static BasicGroupRing monomial(int k, const Exponent& e, Coeff c = Coeff(1)) {
    BasicGroupRing r(k);
    if (c != 0) r.terms_.emplace_back(e, std::move(c));
    return r;
  }
  static BasicGroupRing constant(int k, Coeff c) { return monomial(k, Exponent{}, std::move(c)); }
  static BasicGroupRing one(int k) { return constant(k, Coeff(1)); }

  /// Builds from unsorted terms, merging duplicates and dropping zeros.
  static BasicGroupRing from_terms(int k, std::vector<Term> t) {
    BasicGroupRing r(k);
    r.terms_ = std::move(t);
    r.normalize();
    return r;
  }

  int arity() const { return k_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Coeff coeff(const Exponent& e) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                               [](const Term& t, const Exponent& x) { return t.first < x; });
    if (it != terms_.end() && it->first == e) return it->second;
    return Coeff(0);
  }
  Coeff constant_term() const { return coeff(Exponent{}); }

  // Only valid on nonzero elements.
  const Exponent& min_exponent() const { return terms_.front().first; }
  const Exponent& max_exponent() const { return terms_.back().first; }
  const Coeff& leading_coeff() const { return terms_.back().second; }

  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_zero()); }

  friend bool operator==(const BasicGroupRing& a, const BasicGroupRing& b) { return a.terms_ == b.terms_; }

  BasicGroupRing operator-() const {
    BasicGroupRing r = *this;
    for (auto& t : r.terms_) t.second = -t.second;
    return r;
  }

  BasicGroupRing& operator+=(const BasicGroupRing& o) { return add_scaled(o, Coeff(1)); }
  BasicGroupRing& operator-=(const BasicGroupRing& o) { return add_scaled(o, Coeff(-1)); }

  /// this += s * o, merging the sorted term lists.
  BasicGroupRing& add_scaled(const BasicGroupRing& o, const Coeff& s) {
    detail::check_arity(k_, o.k_);
    if (k_ == 0) k_ = o.k_;
    if (o.terms_.empty() || s == 0) return *this;
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    auto i = terms_.begin();
    auto j = o.terms_.begin();
    while (i != terms_.end() || j != o.terms_.end()) {
      if (j == o.terms_.end() || (i != terms_.end() && i->first < j->first)) {
        out.push_back(std::move(*i++));
      } else if (i == terms_.end() || j->first < i->first) {
        out.emplace_back(j->first, j->second * s);
        ++j;
      } else {
        Coeff c = i->second + j->second * s;
        if (c != 0) out.emplace_back(i->first, std::move(c));
        ++i;
        ++j;
      }
    }
    terms_ = std::move(out);
    return *this;
  }

  /// this += x * y without forming the product separately.
  BasicGroupRing& add_product(const BasicGroupRing& x, const BasicGroupRing& y) {
    if (x.is_zero() || y.is_zero()) {
      detail::check_arity(x.k_, y.k_);
      return *this;
    }
    return *this += x * y;
  }

  friend BasicGroupRing operator+(BasicGroupRing a, const BasicGroupRing& b) { return a += b; }
  friend BasicGroupRing operator-(BasicGroupRing a, const BasicGroupRing& b) { return a -= b; }

  friend BasicGroupRing operator*(const BasicGroupRing& a, const BasicGroupRing& b) {
    detail::check_arity(a.k_, b.k_);
    BasicGroupRing r(a.k_ ? a.k_ : b.k_ ? b.k_ : 1);
    if (a.k_ == 0 && b.k_ == 0) r.k_ = 0;
    if (a.terms_.empty() || b.terms_.empty()) return r;
    if (a.terms_.size() == 1 || b.terms_.size() == 1) {
      const auto& m = a.terms_.size() == 1 ? a.terms_[0] : b.terms_[0];
      const auto& o = a.terms_.size() == 1 ? b : a;
      r.terms_.reserve(o.terms_.size());
      for (const auto& t : o.terms_) r.terms_.emplace_back(t.first + m.first, t.second * m.second);
      return r;  // shifting preserves order, no cancellation possible
    }
    std::vector<Term> t;
    t.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& x : a.terms_)
      for (const auto& y : b.terms_) t.emplace_back(x.first + y.first, x.second * y.second);
    r.terms_ = std::move(t);
    r.normalize();
    return r;
  }
  BasicGroupRing& operator*=(const BasicGroupRing& o) { return *this = *this * o; }

  BasicGroupRing scaled(const Coeff& s) const {
    if (s == 0) return BasicGroupRing(k_ ? k_ : 1);
    BasicGroupRing r = *this;
    for (auto& t : r.terms_) t.second *= s;
    return r;
  }

  /// Multiplication by e^g.
  BasicGroupRing shifted(const Exponent& g) const {
    BasicGroupRing r = *this;
    for (auto& t : r.terms_) t.first += g;
    return r;
  }

  /// e^g -> e^{-g}.
  BasicGroupRing bar() const {
    BasicGroupRing r(k_ ? k_ : 1);
    r.k_ = k_;
    r.terms_.reserve(terms_.size());
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) r.terms_.emplace_back(-it->first, it->second);
    return r;
  }

  /// Sub-sum of the terms whose exponent lies in the region, and whether
  /// every term does.
  std::pair<BasicGroupRing, bool> sign_part(Region reg) const {
    BasicGroupRing r;
    r.k_ = k_;
    for (const auto& t : terms_)
      if (detail::in_region(t.first, reg)) r.terms_.push_back(t);
    bool all = r.terms_.size() == terms_.size();
    return {std::move(r), all};
  }
  bool in(Region reg) const { return sign_part(reg).second; }

  /// theta: V^i v^j -> e^{i b + j a}, i.e. (1,0) -> b and (0,1) -> a.
  BasicGroupRing specialize(std::int64_t a, std::int64_t b) const {
    if (a <= 0 || b <= 0) throw std::invalid_argument("specialize: a and b must be positive");
    if (k_ != 2 && !(k_ == 0 && terms_.empty())) throw std::invalid_argument("specialize: arity must be 2");
    std::vector<Term> t;
    t.reserve(terms_.size());
    for (const auto& x : terms_) t.emplace_back(Exponent(x.first.c[0] * b + x.first.c[1] * a), x.second);
    return from_terms(1, std::move(t));
  }

  /// theta_1: every e^g -> 1.
  Coeff theta1() const {
    Coeff s(0);
    for (const auto& t : terms_) s += t.second;
    return s;
  }

  bool is_bar_invariant() const { return bar() == *this; }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const Coeff& c = it->second;
      bool neg = c < 0;
      Coeff mag = neg ? Coeff(-c) : c;
      if (first) {
        if (neg) os << "-";
      } else {
        os << (neg ? " - " : " + ");
      }
      first = false;
      std::string mono = monomial_string(it->first);
      if (mono.empty()) {
        os << detail::coef_string(mag);
      } else {
        if (mag != 1) os << detail::coef_string(mag) << "*";
        os << mono;
      }
    }
    return os.str();
  }

 private:
  std::string monomial_string(const Exponent& e) const {
    // Generic variables: V = e^(1,0), v = e^(0,1); one variable v for k = 1.
    std::string s;
    auto var = [&](const char* name, std::int64_t p) {
      if (p == 0) return;
      if (!s.empty()) s += "*";
      s += name;
      if (p != 1) s += "^" + std::to_string(p);
    };
    if (k_ == 2) {
      var("V", e.c[0]);
      var("v", e.c[1]);
    } else {
      var("v", e.c[0]);
    }
    return s;
  }

  void normalize() {
    std::sort(terms_.begin(), terms_.end(), [](const Term& x, const Term& y) { return x.first < y.first; });
    std::size_t w = 0;
    for (std::size_t i = 0; i < terms_.size();) {
      Exponent e = terms_[i].first;
      Coeff c = std::move(terms_[i].second);
      std::size_t j = i + 1;
      for (; j < terms_.size() && terms_[j].first == e; ++j) c += terms_[j].second;
      if (c != 0) {
        terms_[w].first = e;
        terms_[w].second = std::move(c);
        ++w;
      }
      i = j;
    }
    terms_.resize(w);
  }

  int k_ = 0;
  std::vector<Term> terms_;
};

using GroupRingElement = BasicGroupRing<BigInt>;
using RationalGroupRingElement = BasicGroupRing<BigRational>;

template <class C>
std::ostream& operator<<(std::ostream& os, const BasicGroupRing<C>& x) {
  return os << x.to_string();
}

inline RationalGroupRingElement to_rational(const GroupRingElement& x) {
  std::vector<RationalGroupRingElement::Term> t;
  for (const auto& [e, c] : x.terms()) t.emplace_back(e, BigRational(c));
  return RationalGroupRingElement::from_terms(x.arity() ? x.arity() : 1, std::move(t));
}

/// Fraction x/y over Z[Gamma]; never reduced, compared by cross-multiplication.
class RationalFraction {
 public:
  RationalFraction() = default;
  RationalFraction(GroupRingElement num, GroupRingElement den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("fraction with zero denominator");
  }
  explicit RationalFraction(GroupRingElement num)
      : num_(std::move(num)), den_(GroupRingElement::one(num_.arity() ? num_.arity() : 1)) {}

  const GroupRingElement& num() const { return num_; }
  const GroupRingElement& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  friend RationalFraction operator+(const RationalFraction& a, const RationalFraction& b) {
    if (a.den_ == b.den_) return {a.num_ + b.num_, a.den_};
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
  }
  friend RationalFraction operator-(const RationalFraction& a, const RationalFraction& b) {
    if (a.den_ == b.den_) return {a.num_ - b.num_, a.den_};
    return {a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_};
  }
  friend RationalFraction operator*(const RationalFraction& a, const RationalFraction& b) {
    return {a.num_ * b.num_, a.den_ * b.den_};
  }
  friend RationalFraction operator/(const RationalFraction& a, const RationalFraction& b) {
    if (b.is_zero()) throw std::domain_error("division by zero fraction");
    return {a.num_ * b.den_, a.den_ * b.num_};
  }
  RationalFraction operator-() const { return {-num_, den_}; }
  RationalFraction inverse() const {
    if (is_zero()) throw std::domain_error("division by zero fraction");
    return {den_, num_};
  }

  friend bool operator==(const RationalFraction& a, const RationalFraction& b) {
    return a.num_ * b.den_ == b.num_ * a.den_;
  }

 private:
  GroupRingElement num_;
  GroupRingElement den_ = GroupRingElement::one(1);
};

// ---- JSON ----------------------------------------------------------------

inline nlohmann::json to_json_value(const GroupRingElement& x) {
  nlohmann::json arr = nlohmann::json::array();
  int k = x.arity() ? x.arity() : 1;
  for (auto it = x.terms().rbegin(); it != x.terms().rend(); ++it) {
    nlohmann::json exp = nlohmann::json::array();
    for (int i = 0; i < k; ++i) exp.push_back(it->first.c[i]);
    arr.push_back({{"exp", exp}, {"coef", it->second.str()}});
  }
  return arr;
}

inline nlohmann::json to_json_value(const RationalGroupRingElement& x) {
  nlohmann::json arr = nlohmann::json::array();
  int k = x.arity() ? x.arity() : 1;
  for (auto it = x.terms().rbegin(); it != x.terms().rend(); ++it) {
    nlohmann::json exp = nlohmann::json::array();
    for (int i = 0; i < k; ++i) exp.push_back(it->first.c[i]);
    arr.push_back({{"exp", exp}, {"coef", detail::coef_string(it->second)}});
  }
  return arr;
}

/// Inverse of to_json_value; `k` is used when the list is empty.
inline GroupRingElement group_ring_from_json(const nlohmann::json& j, int k) {
  if (!j.is_array()) throw std::invalid_argument("group ring JSON must be an array");
  std::vector<GroupRingElement::Term> t;
  int arity = k;
  for (const auto& term : j) {
    const auto& e = term.at("exp");
    if (!e.is_array() || e.empty() || e.size() > 2) throw std::invalid_argument("bad exponent in group ring JSON");
    arity = static_cast<int>(e.size());
    Exponent x(e[0].get<std::int64_t>(), e.size() > 1 ? e[1].get<std::int64_t>() : 0);
    t.emplace_back(x, BigInt(term.at("coef").get<std::string>()));
  }
  return GroupRingElement::from_terms(arity, std::move(t));
}

}  // namespace klcells
