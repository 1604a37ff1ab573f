#pragma once
// CSV/JSON exports of the KL and structure-constant tables, and the on-disk
// table cache.

#include <openssl/evp.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "hecke.hpp"
#include "json.hpp"

namespace klcells {

inline std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr))
    throw std::runtime_error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string r = "\"";
  for (char c : s) {
    if (c == '"') r += '"';
    r += c;
  }
  return r + "\"";
}

// ---- exports ----

/// Same text as to_json_value(x).dump(), without building the JSON tree.
inline std::string group_ring_json_string(const GroupRingElement& x) {
  int k = x.arity() ? x.arity() : 1;
  std::string out = "[";
  bool first = true;
  for (auto it = x.terms().rbegin(); it != x.terms().rend(); ++it) {
    out += first ? "{\"coef\":\"" : ",{\"coef\":\"";
    first = false;
    out += it->second.str();
    out += "\",\"exp\":[";
    for (int i = 0; i < k; ++i) {
      if (i) out += ',';
      out += std::to_string(it->first.c[i]);
    }
    out += "]}";
  }
  return out + "]";
}

inline std::vector<std::string> element_names(const CoxeterSystem& W) {
  std::vector<std::string> n(W.size());
  for (Elt w = 0; w < W.size(); ++w) n[w] = csv_field(W.name(w));
  return n;
}

/// Rows x,y,z,h for every nonzero h_{x,y,z}; elements in window notation.
inline std::string h_table_csv(const HeckeAlgebra& H) {
  const auto& W = H.W();
  auto names = element_names(W);
  std::string out = "x,y,z,h\n";
  for (Elt x = 0; x < W.size(); ++x)
    for (Elt y = 0; y < W.size(); ++y)
      for (const auto& [z, c] : H.h_row(x, y)) {
        out += names[x];
        out += ',';
        out += names[y];
        out += ',';
        out += names[z];
        out += ',';
        out += csv_field(group_ring_json_string(c));
        out += '\n';
      }
  return out;
}

inline nlohmann::json h_table_json(const HeckeAlgebra& H) {
  const auto& W = H.W();
  nlohmann::json rows = nlohmann::json::array();
  for (Elt x = 0; x < W.size(); ++x)
    for (Elt y = 0; y < W.size(); ++y)
      for (const auto& [z, c] : H.h_row(x, y))
        rows.push_back({{"x", W.to_json(x)}, {"y", W.to_json(y)}, {"z", W.to_json(z)}, {"h", to_json_value(c)}});
  return rows;
}

/// Rows y,w,p for every y <= w (Bruhat), p = p*_{y,w}.
inline std::string kl_table_csv(const HeckeAlgebra& H) {
  const auto& W = H.W();
  auto names = element_names(W);
  std::string out = "y,w,p\n";
  for (Elt w = 0; w < W.size(); ++w)
    for (Elt y = 0; y < W.size(); ++y)
      if (W.bruhat_leq(y, w)) out += names[y] + "," + names[w] + "," + csv_field(group_ring_json_string(H.p(y, w))) + "\n";
  return out;
}

inline nlohmann::json kl_table_json(const HeckeAlgebra& H) {
  const auto& W = H.W();
  nlohmann::json rows = nlohmann::json::array();
  for (Elt w = 0; w < W.size(); ++w)
    for (Elt y = 0; y < W.size(); ++y)
      if (W.bruhat_leq(y, w)) rows.push_back({{"y", W.to_json(y)}, {"w", W.to_json(w)}, {"p", to_json_value(H.p(y, w))}});
  return rows;
}

// ---- h-table serialization ----

/// One line per nonzero entry: "x y z e:c e:c ..." (e is "e0" or "e0/e1").
inline std::string serialize_h_table(const HeckeAlgebra& H) {
  std::ostringstream os;
  int N = H.size();
  int k = H.arity();
  for (Elt x = 0; x < N; ++x)
    for (Elt y = 0; y < N; ++y)
      for (const auto& [z, c] : H.h_row(x, y)) {
        os << x << ' ' << y << ' ' << z;
        for (const auto& [e, v] : c.terms()) {
          os << ' ' << e.c[0];
          if (k == 2) os << '/' << e.c[1];
          os << ':' << v.str();
        }
        os << '\n';
      }
  return os.str();
}

/// Inverse of serialize_h_table; throws on malformed input.
inline std::vector<SparseRow> parse_h_table(const std::string& text, int N, int k) {
  std::vector<SparseRow> t(static_cast<std::size_t>(N) * N);
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    long x, y, z;
    if (!(ls >> x >> y >> z) || x < 0 || y < 0 || z < 0 || x >= N || y >= N || z >= N)
      throw std::runtime_error("bad h-table line");
    std::vector<GroupRingElement::Term> terms;
    std::string tok;
    while (ls >> tok) {
      auto colon = tok.find(':');
      if (colon == std::string::npos) throw std::runtime_error("bad h-table term");
      std::string es = tok.substr(0, colon);
      Exponent e;
      if (k == 2) {
        auto slash = es.find('/');
        if (slash == std::string::npos) throw std::runtime_error("bad h-table exponent");
        e = Exponent(std::stoll(es.substr(0, slash)), std::stoll(es.substr(slash + 1)));
      } else {
        e = Exponent(std::stoll(es));
      }
      terms.emplace_back(e, BigInt(tok.substr(colon + 1)));
    }
    if (terms.empty()) throw std::runtime_error("empty h-table entry");
    auto& row = t[static_cast<std::size_t>(x) * N + y];
    if (!row.empty() && row.back().first >= z) throw std::runtime_error("h-table entries out of order");
    row.emplace_back(static_cast<Elt>(z), GroupRingElement::from_terms(k, std::move(terms)));
  }
  return t;
}

// ---- cache ----

/// File layout: a magic line, one line of JSON header (type, rank, weights,
/// kind, version, size, sha256 of the payload), then the payload.
class TableCache {
 public:
  static constexpr int kVersion = 1;
  static constexpr const char* kMagic = "klcells-cache";

  enum class Status { Hit, Miss, Corrupt, Disabled };

  TableCache() = default;
  explicit TableCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  /// $KLCELLS_CACHE, or no cache.
  static TableCache from_env() {
    const char* d = std::getenv("KLCELLS_CACHE");
    if (d && *d) return TableCache(d);
    return {};
  }

  bool enabled() const { return !dir_.empty(); }
  const std::filesystem::path& dir() const { return dir_; }

  static nlohmann::json header(const HeckeAlgebra& H, const std::string& kind) {
    const auto& W = H.W();
    return {{"type", type_name(W.type())},
            {"rank", W.type() == CoxeterType::I2 ? W.degree() : W.rank()},
            {"weights", H.weights().label()},
            {"kind", kind},
            {"version", kVersion}};
  }

  std::filesystem::path path_for(const HeckeAlgebra& H, const std::string& kind) const {
    auto h = header(H, kind);
    std::string stem = kind + "-" + h["type"].get<std::string>() + std::to_string(h["rank"].get<int>()) + "-" +
                       sha256_hex(h.dump()).substr(0, 16);
    return dir_ / (stem + ".cache");
  }

  /// Payload if the file exists, its header matches and the checksum is right.
  std::optional<std::string> read(const HeckeAlgebra& H, const std::string& kind, Status* status = nullptr) const {
    auto set = [&](Status s) {
      if (status) *status = s;
    };
    if (!enabled()) {
      set(Status::Disabled);
      return std::nullopt;
    }
    auto p = path_for(H, kind);
    std::ifstream in(p, std::ios::binary);
    if (!in) {
      set(Status::Miss);
      return std::nullopt;
    }
    std::string magic, hline;
    std::getline(in, magic);
    std::getline(in, hline);
    std::string payload((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (magic != kMagic) {
      set(Status::Corrupt);
      return std::nullopt;
    }
    auto h = nlohmann::json::parse(hline, nullptr, false);
    if (h.is_discarded() || !h.is_object() || !h.contains("sha256")) {
      set(Status::Corrupt);
      return std::nullopt;
    }
    std::string sum = h["sha256"].is_string() ? h["sha256"].get<std::string>() : "";
    h.erase("sha256");
    h.erase("size");
    if (h != header(H, kind) || sum != sha256_hex(payload)) {
      set(Status::Corrupt);
      return std::nullopt;
    }
    set(Status::Hit);
    return payload;
  }

  /// Writes atomically (temporary file, then rename).
  void write(const HeckeAlgebra& H, const std::string& kind, const std::string& payload) const {
    if (!enabled()) return;
    std::filesystem::create_directories(dir_);
    auto p = path_for(H, kind);
    auto h = header(H, kind);
    h["size"] = H.size();
    h["sha256"] = sha256_hex(payload);
    auto tmp = p;
    tmp += ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
      out << kMagic << '\n' << h.dump() << '\n' << payload;
      if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
    }
    std::filesystem::rename(tmp, p);
  }

  /// Installs the h-table from the cache, or builds it and stores it.
  /// A corrupt file is rebuilt and overwritten.
  Status load_h_table(const HeckeAlgebra& H) const {
    if (H.has_h_table()) return Status::Hit;
    Status st;
    auto payload = read(H, "htable", &st);
    if (payload) {
      try {
        H.install_h_table(parse_h_table(*payload, H.size(), H.arity()));
        return Status::Hit;
      } catch (const std::exception&) {
        st = Status::Corrupt;
      }
    }
    H.ensure_h_table();
    if (enabled()) write(H, "htable", serialize_h_table(H));
    return st;
  }

 private:
  std::filesystem::path dir_;
};

inline std::string cache_status_name(TableCache::Status s) {
  switch (s) {
    case TableCache::Status::Hit: return "hit";
    case TableCache::Status::Miss: return "miss";
    case TableCache::Status::Corrupt: return "corrupt";
    case TableCache::Status::Disabled: return "disabled";
  }
  return "?";
}

}  // namespace klcells
