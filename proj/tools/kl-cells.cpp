// kl-cells: command-line front end for the klcells library.
//
// Exit codes: 0 success, 1 a requested check failed, 2 invalid
// configuration, 3 resource limit exceeded.

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "klcells/cells.hpp"
#include "klcells/coxeter.hpp"
#include "klcells/hecke.hpp"
#include "klcells/io.hpp"
#include "klcells/jring.hpp"
#include "klcells/parabolic.hpp"
#include "klcells/typeb.hpp"

using namespace klcells;
using nlohmann::json;

namespace {

constexpr int kExitCheckFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitResource = 3;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct JobConfig {
  std::string type = "B";
  int rank = 2;
  std::string weights = "generic";
  std::string parabolic;
  bool parabolic_set = false;
  std::string side = "L";
  std::string format;
  std::string cache;
  std::string output;
  std::string props = "P1-P8,P11,spadesuit";
  std::string nhat = "lusztig";
  int jobs = 1;
  int max_rank = 4;
  bool verbose = false;
};

CoxeterType parse_type(const std::string& t) {
  if (t == "A") return CoxeterType::A;
  if (t == "B") return CoxeterType::B;
  if (t == "I2") return CoxeterType::I2;
  throw ConfigError("unknown group type '" + t + "' (expected A, B or I2)");
}

CellSide parse_side(const std::string& s) {
  if (s == "L") return CellSide::L;
  if (s == "R") return CellSide::R;
  if (s == "LR") return CellSide::LR;
  throw ConfigError("unknown side '" + s + "' (expected L, R or LR)");
}

WeightFunction parse_weights(const CoxeterSystem& W, const std::string& text) {
  if (text == "generic") return WeightFunction::generic(W);
  std::int64_t a, b;
  try {
    auto comma = text.find(',');
    std::size_t used = 0;
    if (comma == std::string::npos) {
      a = b = std::stoll(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
    } else {
      a = std::stoll(text.substr(0, comma), &used);
      if (used != comma) throw std::invalid_argument(text);
      std::string rest = text.substr(comma + 1);
      b = std::stoll(rest, &used);
      if (used != rest.size()) throw std::invalid_argument(text);
    }
  } catch (const std::logic_error&) {
    throw ConfigError("cannot parse weights '" + text + "' (expected a,b or generic)");
  }
  if (a <= 0 || b <= 0) throw ConfigError("weights must be positive");
  try {
    return WeightFunction::specialized(W, a, b);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

class Job {
 public:
  Job(JobConfig cfg, bool needs_table) : cfg_(std::move(cfg)) {
    if (cfg_.jobs < 1) throw ConfigError("--jobs must be at least 1");
    if (cfg_.format != "json" && cfg_.format != "csv" && cfg_.format != "text")
      throw ConfigError("unknown format '" + cfg_.format + "'");
    CoxeterType t = parse_type(cfg_.type);
    try {
      W_ = CoxeterSystem::make(t, cfg_.rank);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    if (needs_table) check_table_limit();
    H_ = make_hecke(W_, parse_weights(*W_, cfg_.weights));
    H_->set_jobs(cfg_.jobs);
    cache_ = cfg_.cache.empty() ? TableCache::from_env() : TableCache(cfg_.cache);
    I_ = W_->all_gens();
    if (cfg_.parabolic_set) {
      try {
        I_ = parse_gen_set(*W_, cfg_.parabolic);
      } catch (const std::exception& e) {
        throw ConfigError(std::string("--parabolic: ") + e.what());
      }
    }
  }

  const JobConfig& cfg() const { return cfg_; }
  const CoxeterSystem& W() const { return *W_; }
  const HeckeAlgebra& H() const { return *H_; }
  GenSet I() const { return I_; }

  /// The full h-table, from the cache when possible.
  void check_table_limit() const {
    std::size_t limit = 1;
    for (int i = 1; i <= cfg_.max_rank; ++i) limit *= 2 * i;
    if (static_cast<std::size_t>(W_->size()) > limit)
      throw ResourceLimitError("full h-table for " + W_->label() + " (" + std::to_string(W_->size()) +
                               " elements) exceeds the ceiling |B" + std::to_string(cfg_.max_rank) +
                               "|; raise --max-rank to override");
  }

  void need_h_table() {
    check_table_limit();
    auto st = cache_.load_h_table(*H_);
    if (cfg_.verbose) std::cerr << "h-table cache: " << cache_status_name(st) << "\n";
  }

  const CellStructure& cells() {
    if (!cs_) cs_ = std::make_unique<CellStructure>(*H_, W_->all_gens());
    return *cs_;
  }

  const TypeBContext& typeb() {
    if (!tb_) {
      try {
        tb_ = std::make_unique<TypeBContext>(*H_);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
    }
    return *tb_;
  }

  const JRing& jring(NHat choice) {
    auto& slot = choice == NHat::One ? j1_ : jl_;
    if (!slot) {
      need_h_table();
      slot = std::make_unique<JRing>(typeb(), choice);
    }
    return *slot;
  }

  NHat nhat() const {
    if (cfg_.nhat == "lusztig") return NHat::Lusztig;
    if (cfg_.nhat == "one") return NHat::One;
    throw ConfigError("--nhat must be lusztig or one");
  }

  void emit(const std::string& text) const {
    if (cfg_.output.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(cfg_.output, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + cfg_.output);
    out << text;
  }
  void emit(const json& j) const { emit(j.dump(2) + "\n"); }

  void unsupported(const std::string& cmd) const {
    throw ConfigError("format '" + cfg_.format + "' is not available for '" + cmd + "'");
  }

 private:
  JobConfig cfg_;
  SystemPtr W_;
  HeckePtr H_;
  TableCache cache_;
  GenSet I_ = 0;
  std::unique_ptr<CellStructure> cs_;
  std::unique_ptr<TypeBContext> tb_;
  std::unique_ptr<JRing> jl_, j1_;
};

json gen_set_json(const CoxeterSystem& W, GenSet I) {
  json j = json::array();
  for (int s : gen_list(I)) j.push_back(W.gen_name(s));
  return j;
}

std::string elements_text(const CoxeterSystem& W, const std::vector<Elt>& xs) {
  std::string s = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + W.word_string(xs[i]);
  return s + "}";
}

// ---- subcommands ----

int cmd_cells(Job& job) {
  const auto& W = job.W();
  CellStructure cs(job.H(), job.I());
  CellSide side = parse_side(job.cfg().side);
  const auto& part = cs.partition(side);
  const auto& f = job.cfg().format;
  if (f == "json") {
    job.emit(part.to_json(W));
  } else if (f == "csv") {
    std::string out = "cell,element\n";
    for (std::size_t i = 0; i < part.cells.size(); ++i)
      for (Elt w : part.cells[i]) out += std::to_string(i) + "," + csv_field(W.word_string(w)) + "\n";
    job.emit(out);
  } else {
    std::string out;
    for (std::size_t i = 0; i < part.cells.size(); ++i) out += std::to_string(i) + ": " + elements_text(W, part.cells[i]) + "\n";
    for (auto [i, j] : part.order) out += std::to_string(i) + " <= " + std::to_string(j) + "\n";
    job.emit(out);
  }
  return 0;
}

int cmd_kl(Job& job) {
  const auto& W = job.W();
  const auto& H = job.H();
  const auto& f = job.cfg().format;
  if (f == "json") {
    job.emit(kl_table_json(H));
  } else if (f == "csv") {
    job.emit(kl_table_csv(H));
  } else {
    std::string out;
    for (Elt w = 0; w < W.size(); ++w)
      for (Elt y = 0; y < W.size(); ++y)
        if (W.bruhat_leq(y, w))
          out += "p*(" + W.word_string(y) + ", " + W.word_string(w) + ") = " + H.p(y, w).to_string() + "\n";
    job.emit(out);
  }
  return 0;
}

int cmd_htable(Job& job) {
  job.need_h_table();
  const auto& f = job.cfg().format;
  if (f == "json")
    job.emit(h_table_json(job.H()));
  else if (f == "csv")
    job.emit(h_table_csv(job.H()));
  else
    job.unsupported("h-table");
  return 0;
}

int cmd_pstar(Job& job) {
  ParabolicContext ctx(job.H(), job.I());
  const auto& f = job.cfg().format;
  if (f == "json")
    job.emit(ctx.to_json());
  else if (f == "csv")
    job.emit(ctx.to_csv());
  else
    job.unsupported("pstar");
  return 0;
}

int cmd_induce(Job& job) {
  const auto& W = job.W();
  const auto& abs = job.cells();
  ParabolicContext ctx(job.H(), job.I());
  const auto& rel = ctx.relative_cells().partition(CellSide::L);
  const auto& L = abs.partition(CellSide::L);
  json out = json::array();
  std::string text;
  for (const auto& cell : rel.cells) {
    if (!W.in_parabolic(cell[0], job.I())) continue;
    auto ic = induce_cell(ctx, cell);
    std::vector<int> ids;
    for (Elt w : ic.elements)
      if (std::find(ids.begin(), ids.end(), L.cell_of[w]) == ids.end()) ids.push_back(L.cell_of[w]);
    std::sort(ids.begin(), ids.end());
    std::size_t covered = 0;
    json lc = json::array();
    for (int id : ids) {
      covered += L.cells[id].size();
      json e = json::array();
      for (Elt w : L.cells[id]) e.push_back(W.to_json(w));
      lc.push_back(e);
    }
    bool is_union = covered == ic.elements.size();
    json cj = json::array(), ej = json::array();
    for (Elt u : cell) cj.push_back(W.to_json(u));
    for (Elt w : ic.elements) ej.push_back(W.to_json(w));
    out.push_back({{"cell", cj}, {"induced", ej}, {"left_cells", lc}, {"union_of_left_cells", is_union}});
    text += elements_text(W, cell) + " -> " + std::to_string(ids.size()) + " left cells" +
            (is_union ? "" : " (not a union)") + "\n";
  }
  auto rep = check_induction_suite(ctx, abs);
  const auto& f = job.cfg().format;
  if (f == "json")
    job.emit(json{{"I", gen_set_json(W, job.I())}, {"cells", out}, {"check", rep.to_json()}});
  else if (f == "text")
    job.emit(text + rep.property + " " + rep.status_string() + "\n");
  else
    job.unsupported("induce");
  return rep.passed() ? 0 : kExitCheckFailed;
}

int cmd_rs(Job& job) {
  const auto& W = job.W();
  const auto& f = job.cfg().format;
  json rows = json::array();
  std::string text;
  if (W.type() == CoxeterType::A) {
    for (Elt w = 0; w < W.size(); ++w) {
      auto [P, Q] = rs_classical(W, w);
      rows.push_back({{"w", W.to_json(w)}, {"P", tableau_json(P)}, {"Q", tableau_json(Q)}});
      text += W.word_string(w) + " P=" + json(P).dump() + " Q=" + json(Q).dump() + "\n";
    }
  } else if (W.type() == CoxeterType::B) {
    const auto& ctx = job.typeb();
    for (Elt w = 0; w < W.size(); ++w) {
      const auto& v = ctx.invariant(w);
      rows.push_back({{"w", W.to_json(w)},
                      {"l", v.l},
                      {"b", W.to_json(v.b)},
                      {"Q1", tableau_json(v.Q1)},
                      {"Q2", tableau_json(v.Q2)},
                      {"A", bitableau_json(ctx.A(w))},
                      {"B", bitableau_json(ctx.B(w))},
                      {"label", bipartition_json(ctx.label(w))}});
      text += W.word_string(w) + " l=" + std::to_string(v.l) + " b=" + W.word_string(v.b) +
              " B=" + bitableau_json(ctx.B(w)).dump() + " " + bipartition_string(ctx.label(w)) + "\n";
    }
  } else {
    throw ConfigError("rs is defined for types A and B");
  }
  if (f == "json")
    job.emit(rows);
  else if (f == "text")
    job.emit(text);
  else
    job.unsupported("rs");
  return 0;
}

int cmd_celldatum(Job& job) {
  const auto& ctx = job.typeb();
  auto D = build_cell_datum(ctx);
  if (job.cfg().format != "json") job.unsupported("celldatum");
  job.emit(cell_datum_json(ctx, D));
  return 0;
}

int cmd_jring(Job& job) {
  const auto& J = job.jring(job.nhat());
  const auto& W = job.W();
  const auto& f = job.cfg().format;
  if (f == "csv") {
    std::vector<Elt> order(W.size());
    for (Elt w = 0; w < W.size(); ++w) order[w] = w;
    job.emit(theta_table_csv(W, theta_table(J), order));
    return 0;
  }
  if (f != "json") job.unsupported("jring");
  json nh = json::array(), gam = json::array();
  for (Elt w = 0; w < W.size(); ++w)
    nh.push_back({{"w", W.to_json(w)}, {"d", W.to_json(J.d(w))}, {"n_d", J.n_of_d(w).str()}, {"nhat", J.nhat(w).str()}});
  for (Elt x = 0; x < W.size(); ++x)
    for (Elt y = 0; y < W.size(); ++y)
      for (Elt z = 0; z < W.size(); ++z) {
        BigInt g = J.gamma_hat(x, y, z);
        if (g != 0) gam.push_back({W.to_json(x), W.to_json(y), W.to_json(z), g.str()});
      }
  job.emit(json{{"nhat", nh}, {"gamma_hat", gam}});
  return 0;
}

int cmd_phi(Job& job) {
  const auto& J = job.jring(job.nhat());
  PhiMap phi(J);
  const auto& W = job.W();
  if (job.cfg().format != "json") job.unsupported("phi");
  json entries = json::array();
  const auto& m = phi.matrix();
  for (Elt w = 0; w < W.size(); ++w)
    for (Elt z = 0; z < W.size(); ++z)
      if (!m[w][z].is_zero()) entries.push_back({{"w", W.to_json(w)}, {"z", W.to_json(z)}, {"value", to_json_value(m[w][z])}});
  job.emit(json{{"rows", W.size()}, {"cols", W.size()}, {"entries", entries}});
  return 0;
}

int cmd_canphi(Job& job) {
  const auto& J = job.jring(NHat::One);
  CanonicalPhi P(J);
  if (job.cfg().format != "json") job.unsupported("canphi");
  job.emit(P.to_json());
  return 0;
}

int cmd_table1(Job& job) {
  const auto& J = job.jring(job.nhat());
  const auto& W = job.W();
  auto t = theta_table(J);
  const auto& f = job.cfg().format;
  if (f == "csv") {
    if (W.type() == CoxeterType::B && W.rank() == 2) {
      job.emit(theta_table_csv(W, t, table1_order(W), table1_words()));
    } else {
      std::vector<Elt> order;
      for (Elt w = 0; w < W.size(); ++w) order.push_back(w);
      job.emit(theta_table_csv(W, t, order));
    }
  } else if (f == "json") {
    json rows = json::array();
    for (const auto& r : t) {
      json row = json::array();
      for (const auto& v : r) row.push_back(v.str());
      rows.push_back(row);
    }
    job.emit(rows);
  } else {
    job.unsupported("table1");
  }
  return 0;
}

std::vector<GenSet> subsets_for(Job& job) {
  if (job.cfg().parabolic_set) return {job.I()};
  return all_subsets(job.W());
}

int cmd_check(Job& job) {
  const auto& W = job.W();
  auto names = expand_property_list(job.cfg().props);
  std::vector<PropertyReport> reports;
  std::vector<std::string> lusztig;
  bool cellular = false;
  for (const auto& n : names) {
    if ((n.size() >= 2 && n[0] == 'P' && std::isdigit(static_cast<unsigned char>(n[1]))) || n == "spadesuit") {
      if (n != "spadesuit") {
        int k = std::stoi(n.substr(1));
        if (k == 15) throw ConfigError("P15 is only checked in its weak form (weak-P15)");
        if (k < 1 || k > 14) throw ConfigError("unknown property " + n);
      }
      lusztig.push_back(n);
    } else if (n == "C1" || n == "C2" || n == "C3" || n == "cellular") {
      cellular = true;
    } else if (n == "relative-spadesuit") {
      PropertyReport r("relative-spadesuit");
      for (GenSet I : subsets_for(job)) r.merge(check_relative_spadesuit(CellStructure(job.H(), I)));
      reports.push_back(r);
    } else if (n == "induction") {
      PropertyReport r("induction");
      for (GenSet I : subsets_for(job)) r.merge(check_induction_suite(ParabolicContext(job.H(), I), job.cells()));
      reports.push_back(r);
    } else if (n == "pstar") {
      PropertyReport r("pstar");
      for (GenSet I : subsets_for(job)) {
        ParabolicContext ctx(job.H(), I);
        r.merge(ctx.check_pstar());
        r.merge(ctx.check_r_polynomials());
        r.merge(ctx.check_bruhat_support());
      }
      reports.push_back(r);
    } else if (n == "rs-cells") {
      if (W.type() != CoxeterType::A) throw ConfigError("rs-cells needs type A");
      reports.push_back(check_rs_cells(job.cells()));
    } else if (n == "invariants") {
      const auto& ctx = job.typeb();
      reports.push_back(check_invariants(ctx));
      reports.push_back(check_left_order_reduction(ctx));
      reports.push_back(check_equivalent_cells(ctx));
      reports.push_back(check_coset_translation(ctx));
    } else if (n == "jring") {
      reports.push_back(job.jring(job.nhat()).check());
    } else if (n == "schur") {
      SchurData S(job.jring(job.nhat()));
      reports.push_back(S.check());
      reports.push_back(S.check_cell_products());
    } else if (n == "phi") {
      PhiMap phi(job.jring(job.nhat()));
      reports.push_back(phi.check());
      reports.push_back(phi.check_defect());
    } else if (n == "canphi") {
      CanonicalPhi P(job.jring(NHat::One));
      reports.push_back(P.check());
      reports.push_back(P.check_defect());
    } else if (n == "weak-P15") {
      reports.push_back(check_weak_p15(job.jring(job.nhat())));
    } else if (n == "gamma-identification") {
      job.need_h_table();
      reports.push_back(check_gamma_identification(job.jring(NHat::Lusztig), a_function_data(job.H())));
    } else {
      throw ConfigError("unknown property '" + n + "'");
    }
  }
  if (!lusztig.empty()) {
    bool needs_table = std::any_of(lusztig.begin(), lusztig.end(), [](const std::string& s) { return s != "spadesuit"; });
    if (needs_table) {
      job.need_h_table();
      auto A = a_function_data(job.H());
      auto rs = check_properties(job.cells(), A, lusztig);
      reports.insert(reports.end(), rs.begin(), rs.end());
    } else {
      reports.push_back(check_spadesuit(job.cells()));
    }
  }
  if (cellular) {
    job.need_h_table();
    const auto& ctx = job.typeb();
    auto D = build_cell_datum(ctx);
    auto r = check_cell_datum(ctx, D, true);
    r.property = "C1-C3";
    reports.push_back(r);
  }
  bool ok = true;
  json arr = json::array();
  std::string text;
  for (const auto& r : reports) {
    ok = ok && r.passed();
    arr.push_back(r.to_json());
    text += r.property + " " + r.status_string() + " (" + std::to_string(r.checked) + " checked)";
    if (!r.note.empty()) text += " " + r.note;
    text += "\n";
    for (const auto& c : r.counterexamples) text += "  " + c + "\n";
  }
  const auto& f = job.cfg().format;
  if (f == "json") {
    job.emit(json{{"group", W.label()}, {"weights", job.H().weights().label()}, {"status", ok ? "PASS" : "FAIL"},
                  {"reports", arr}});
  } else if (f == "text") {
    job.emit(text + (ok ? "PASS\n" : "FAIL\n"));
  } else {
    job.unsupported("check");
  }
  return ok ? 0 : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kazhdan-Lusztig cells, structure constants and asymptotic rings for finite Coxeter groups"};
  app.require_subcommand(1);
  app.fallthrough();
  JobConfig cfg;
  app.add_option("--type", cfg.type, "Group type: A, B or I2")->capture_default_str();
  app.add_option("--rank", cfg.rank, "Coxeter rank (m for I2(m))")->capture_default_str();
  app.add_option("--weights", cfg.weights, "a,b (specialized) or generic")->capture_default_str();
  app.add_option_function<std::string>(
      "--parabolic",
      [&](const std::string& s) {
        cfg.parabolic = s;
        cfg.parabolic_set = true;
      },
      "Generators of the parabolic subgroup, e.g. 0,1 (empty string for none)");
  app.add_option("--side", cfg.side, "L, R or LR")->capture_default_str();
  app.add_option("--format", cfg.format, "json, csv or text (default csv for table1 and h-table, json otherwise)");
  app.add_option("--cache", cfg.cache, "Cache directory (default $KLCELLS_CACHE)");
  app.add_option("--jobs", cfg.jobs, "Worker threads")->capture_default_str();
  app.add_option("--props", cfg.props, "Properties for check, e.g. P1-P8,spadesuit")->capture_default_str();
  app.add_option("--nhat", cfg.nhat, "lusztig or one")->capture_default_str();
  app.add_option("--max-rank", cfg.max_rank, "Largest type B rank whose size bounds full h-tables")->capture_default_str();
  app.add_option("-o,--output", cfg.output, "Write to a file instead of stdout");
  app.add_flag("-v,--verbose", cfg.verbose, "Report cache use on stderr");

  std::map<std::string, int (*)(Job&)> commands = {
      {"cells", cmd_cells},   {"kl", cmd_kl},         {"h-table", cmd_htable},     {"pstar", cmd_pstar},
      {"induce", cmd_induce}, {"rs", cmd_rs},         {"celldatum", cmd_celldatum}, {"jring", cmd_jring},
      {"phi", cmd_phi},       {"canphi", cmd_canphi}, {"table1", cmd_table1},      {"check", cmd_check},
  };
  std::map<std::string, std::string> help = {
      {"cells", "Left, right or two-sided cells and their order"},
      {"kl", "Table of p*_{y,w}"},
      {"h-table", "Structure constants h_{x,y,z}"},
      {"pstar", "Relative polynomials p*_{xu,yv} for --parabolic"},
      {"induce", "Induce the left cells of W_I to W"},
      {"rs", "Robinson-Schensted data (type A) or left-cell invariants (type B)"},
      {"celldatum", "Cell datum (Lambda, M, C) in type B"},
      {"jring", "Structure constants of the ring J (csv: theta table)"},
      {"phi", "Matrix of phi as a sparse JSON matrix"},
      {"canphi", "Canonical map to the group algebra as a dense JSON matrix"},
      {"table1", "Specialized matrix theta_1(h_{w,d_z,z}) for B2"},
      {"check", "Run property scans (--props)"},
  };
  for (const auto& [name, fn] : commands) app.add_subcommand(name, help[name]);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    auto* sub = app.get_subcommands().front();
    static const std::set<std::string> table_free = {"cells", "kl", "pstar", "induce", "rs", "celldatum"};
    std::string name = sub->get_name();
    if (cfg.format.empty()) cfg.format = name == "table1" || name == "h-table" ? "csv" : "json";
    bool needs_table = !table_free.count(name);
    if (name == "check") {
      needs_table = false;
      for (const auto& p : expand_property_list(cfg.props))
        if (p != "spadesuit" && p != "relative-spadesuit" && p != "induction" && p != "pstar" && p != "rs-cells" &&
            p != "invariants")
          needs_table = true;
    }
    Job job(cfg, needs_table);
    return commands.at(name)(job);
  } catch (const ConfigError& e) {
    std::cerr << "kl-cells: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ResourceLimitError& e) {
    std::cerr << "kl-cells: resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::invalid_argument& e) {
    std::cerr << "kl-cells: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "kl-cells: error: " << e.what() << "\n";
    return 4;
  }
}
