#pragma once

// Command-line surface. run_cli is the whole program (the binary's main just
// forwards), which keeps every subcommand testable in-process.
//
// Exit codes: 0 success, 1 axiom/verification failure, 2 input parse error,
// 3 evaluation error.

#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "skein/algebras.hpp"
#include "skein/cache.hpp"
#include "skein/diagram.hpp"
#include "skein/evaluate.hpp"
#include "skein/reduce.hpp"
#include "skein/resolve.hpp"

namespace skein {

inline uint64_t fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string diagram_hash(const Diagram& d) {
  char buf[17];
  snprintf(buf, sizeof buf, "%016llx",
           static_cast<unsigned long long>(fnv1a(d.canonical_key())));
  return buf;
}

// "braid k: letters" or PD text; files may hold either format.
inline Diagram parse_input(const std::string& kind, const std::string& text) {
  if (kind == "braid") return close_braid(BraidWord::parse(text));
  if (kind == "pd") return Diagram::parse_pd(text);
  if (kind == "file") {
    std::ifstream in(text);
    check(in.good(), Err::SyntaxError, "cannot open " + text);
    std::stringstream ss;
    ss << in.rdbuf();
    std::string body = ss.str();
    size_t i = body.find_first_not_of(" \t\r\n");
    check(i != std::string::npos, Err::SyntaxError, "empty input file");
    if (body.compare(i, 6, "braid ") == 0)
      return close_braid(BraidWord::parse(body.substr(i + 6)));
    return Diagram::parse_pd(body);
  }
  fail(Err::SyntaxError, "unknown input kind " + kind);
}

inline const std::vector<std::string>& algebra_names() {
  static const std::vector<std::string> names{"components", "mod3", "P2",
                                              "P3", "linking", "quasi39"};
  return names;
}

// Runtime dispatch over the algebra zoo.
template <class F>
auto with_algebra(const std::string& name, F&& f) {
  if (name == "components") return f(ComponentCountAlgebra{});
  if (name == "mod3") return f(Mod3Algebra{});
  if (name == "P2") return f(two_var_algebra());
  if (name == "P3") return f(three_var_algebra());
  if (name == "linking") return f(LinkingAlgebra{});
  if (name == "quasi39") return f(Quasi39Algebra{});
  fail(Err::UnknownFormat, "unknown algebra '" + name + "' (expected one of "
                           "components|mod3|P2|P3|linking|quasi39)");
}

namespace cli_detail {

struct InputFlags {
  std::string pd, braid, file;

  void attach(CLI::App* cmd, bool required = true) {
    auto* a = cmd->add_option("--pd", pd, "inline PD text, e.g. \"X(1,4,2,5) ...\"");
    auto* b = cmd->add_option("--braid", braid, "braid word, e.g. \"2: 1 1 1\"");
    auto* c = cmd->add_option("--file", file, "file containing PD text or 'braid k: ...'");
    a->excludes(b)->excludes(c);
    b->excludes(c);
    if (required) cmd->require_option(1, 0);
  }

  bool present() const { return !pd.empty() || !braid.empty() || !file.empty(); }

  Diagram load() const {
    if (!pd.empty()) return parse_input("pd", pd);
    if (!braid.empty()) return parse_input("braid", braid);
    if (!file.empty()) return parse_input("file", file);
    fail(Err::SyntaxError, "no input given (use --pd, --braid or --file)");
  }
};

inline std::vector<std::string> split_csv_list(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const auto& item : raw) {
    std::stringstream ss(item);
    std::string tok;
    while (std::getline(ss, tok, ','))
      if (!tok.empty()) out.push_back(tok);
  }
  return out;
}

// minimal CSV with quoting for fields containing commas
inline std::vector<std::string> parse_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

}  // namespace cli_detail

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"skein: Conway-algebra valued link invariants from diagrams"};
  app.require_subcommand(1);

  std::string convention = "modern";
  app.add_option("--convention", convention,
                 "crossing convention: modern (default) or old; old swaps the "
                 "roles of | and *")
      ->check(CLI::IsMember({"modern", "old"}));
  bool no_cache = false;
  app.add_flag("--no-cache", no_cache, "ignore SKEIN_CACHE_DIR");

  // invariant
  auto* inv = app.add_subcommand("invariant", "evaluate invariants of one diagram");
  cli_detail::InputFlags inv_in;
  inv_in.attach(inv);
  std::vector<std::string> inv_algebras;
  inv->add_option("--algebra", inv_algebras,
                  "algebra name(s): components|mod3|P2|P3|linking|quasi39")
      ->required();

  // tree
  auto* tree = app.add_subcommand("tree", "resolving tree of a diagram");
  cli_detail::InputFlags tree_in;
  tree_in.attach(tree);
  std::string tree_format = "json";
  tree->add_option("--format", tree_format, "dot or json")
      ->check(CLI::IsMember({"dot", "json"}));
  size_t node_cap = 1000000;
  tree->add_option("--node-cap", node_cap, "maximum materialized nodes");
  uint64_t tree_salt = 0;
  tree->add_option("--salt", tree_salt,
                   "base-point strategy salt (0: lowest-edge default)");

  // simplify
  auto* simp = app.add_subcommand(
      "simplify", "untangle, then reduce by crossing-non-increasing moves");
  cli_detail::InputFlags simp_in;
  simp_in.attach(simp);
  bool no_untangle = false;
  simp->add_flag("--no-untangle", no_untangle,
                 "require the input to already be untangled");

  // axioms
  auto* ax = app.add_subcommand("axioms", "verify the algebra axioms");
  std::string ax_algebra;
  ax->add_option("--algebra", ax_algebra, "algebra name")->required();
  bool ax_exhaustive = false;
  ax->add_flag("--exhaustive", ax_exhaustive, "exhaustive over a finite universe");
  long ax_samples = 200;
  ax->add_option("--samples", ax_samples, "randomized sample count (default 200)");
  unsigned ax_seed = 1;
  ax->add_option("--seed", ax_seed, "random seed");
  int ax_constraints = 6;
  ax->add_option("--constraints-n", ax_constraints,
                 "bound for quasi39 conditions (i)-(v)");
  bool ax_json = false;
  ax->add_flag("--json", ax_json, "machine-readable output");

  // simplex
  auto* sx = app.add_subcommand("simplex", "weighted simplex of sublink invariants");
  cli_detail::InputFlags sx_in;
  sx_in.attach(sx);
  std::string sx_algebra = "linking";
  sx->add_option("--algebra", sx_algebra, "algebra name (default linking)");
  std::string cmp_pd, cmp_braid, cmp_file;
  sx->add_option("--compare-pd", cmp_pd, "second diagram (PD) for equivalence");
  sx->add_option("--compare-braid", cmp_braid, "second diagram (braid)");
  sx->add_option("--compare-file", cmp_file, "second diagram (file)");

  // batch
  auto* bat = app.add_subcommand("batch", "evaluate a CSV of inputs");
  std::string bat_in, bat_out;
  bat->add_option("--in", bat_in, "CSV input: name,kind,input")->required();
  bat->add_option("--out", bat_out, "CSV output (default stdout)");
  std::vector<std::string> bat_algebras;
  bat->add_option("--algebras", bat_algebras, "algebra names")->required();
  int jobs = 1;
  bat->add_option("--jobs", jobs, "concurrent evaluations");

  try {
    std::vector<const char*> argv;
    argv.push_back("skein");
    for (auto& a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << e.what() << "\n";
    return 2;
  }

  Convention conv = convention == "old" ? Convention::old : Convention::modern;

  try {
    if (inv->parsed()) {
      Diagram d = inv_in.load();
      FileCache cache = FileCache::from_env(!no_cache);
      std::string key = d.canonical_key();
      std::string hash = diagram_hash(d);
      for (const auto& name : cli_detail::split_csv_list(inv_algebras)) {
        std::string cache_id = name + (conv == Convention::old ? "/old" : "");
        std::string value;
        if (auto hit = cache.lookup(key, cache_id)) {
          value = *hit;
        } else {
          value = with_algebra(name, [&](const auto& alg) {
            return alg.to_string(evaluate(d, alg, conv));
          });
          cache.store(key, cache_id, value);
        }
        nlohmann::json j{{"algebra", name}, {"value", value}, {"diagram_key", hash}};
        out << j.dump() << "\n";
      }
      return 0;
    }

    if (tree->parsed()) {
      Diagram d = tree_in.load();
      BaseStrategy strat = tree_salt == 0 ? default_strategy() : salted_strategy(tree_salt);
      ResolvingTree t = build_resolving_tree(d, strat, node_cap);
      out << export_tree(t, tree_format) << "\n";
      return 0;
    }

    if (simp->parsed()) {
      Diagram d = simp_in.load();
      BasePoints bp = default_base_points(d);
      Diagram u = d;
      if (!no_untangle) {
        auto bad = bad_crossings(d, bp);
        auto [uu, ubp] = make_untangled(d, bp);
        u = uu;
        bp = ubp;
        nlohmann::json j{{"op", "untangle"}, {"switched", nlohmann::json::array()}};
        for (int c : bad) j["switched"].push_back(d.crossing_label(c));
        out << j.dump() << "\n";
      }
      ReductionResult r = reduce_untangled(u, bp);
      for (const auto& line : r.script) out << line << "\n";
      nlohmann::json fin{{"op", "done"},
                         {"crossings", r.result.num_crossings()},
                         {"components", r.result.num_components()}};
      out << fin.dump() << "\n";
      return 0;
    }

    if (ax->parsed()) {
      bool passed = true;
      std::string text;
      nlohmann::json jrep;
      std::mt19937 rng(ax_seed);
      auto run = [&](const auto& alg) {
        AxiomReport rep;
        if (ax_exhaustive) {
          if constexpr (std::is_same_v<std::decay_t<decltype(alg)>, Mod3Algebra>) {
            rep = verify_axioms_exhaustive(alg, alg.universe());
          } else {
            fail(Err::UnknownFormat,
                 "--exhaustive requires a finite universe (mod3)");
          }
        } else {
          auto gen = [&] { return alg.random_quadruple(rng); };
          rep = verify_axioms(alg, gen, ax_samples);
        }
        passed = rep.all_passed();
        text = rep.to_string();
        jrep["algebra"] = rep.algebra;
        jrep["axioms"] = nlohmann::json::array();
        for (const auto& a : rep.axioms)
          jrep["axioms"].push_back({{"axiom", a.axiom},
                                    {"checked", a.checked},
                                    {"skipped", a.skipped},
                                    {"passed", a.passed},
                                    {"witness", a.witness}});
        return 0;
      };
      with_algebra(ax_algebra, run);
      if (ax_algebra == "quasi39") {
        ConstraintReport crep = verify_constraints_i_to_v(Quasi39Algebra{}, ax_constraints);
        text += crep.to_string();
        passed = passed && crep.all_passed();
        jrep["constraints"] = nlohmann::json::array();
        for (const auto& l : crep.lines)
          jrep["constraints"].push_back(
              {{"condition", l.condition}, {"n", l.n}, {"passed", l.passed}});
      }
      jrep["all_passed"] = passed;
      if (ax_json) out << jrep.dump() << "\n";
      else out << text;
      return passed ? 0 : 1;
    }

    if (sx->parsed()) {
      Diagram d = sx_in.load();
      auto render = [&](const Diagram& dd, const auto& alg) {
        auto s = weighted_simplex(dd, alg, conv);
        nlohmann::json j;
        j["vertices"] = s.vertices;
        j["weights"] = nlohmann::json::object();
        for (const auto& [mask, v] : s.weights)
          j["weights"][std::to_string(mask)] = alg.to_string(v);
        return std::make_pair(s, j);
      };
      int code = with_algebra(sx_algebra, [&](const auto& alg) {
        auto [s1, j1] = render(d, alg);
        out << j1.dump() << "\n";
        std::string kind = !cmp_pd.empty() ? "pd" : !cmp_braid.empty() ? "braid"
                           : !cmp_file.empty() ? "file" : "";
        if (kind.empty()) return 0;
        Diagram d2 = parse_input(kind, !cmp_pd.empty() ? cmp_pd
                                       : !cmp_braid.empty() ? cmp_braid : cmp_file);
        auto [s2, j2] = render(d2, alg);
        out << j2.dump() << "\n";
        bool eq = simplex_equivalent(s1, s2);
        out << (eq ? "EQUIVALENT" : "NOT EQUIVALENT") << "\n";
        return 0;
      });
      return code;
    }

    if (bat->parsed()) {
      std::ifstream in(bat_in);
      check(in.good(), Err::SyntaxError, "cannot open " + bat_in);
      auto algebras = cli_detail::split_csv_list(bat_algebras);
      std::string line;
      std::vector<std::array<std::string, 3>> rows;
      bool first = true;
      while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto f = cli_detail::parse_csv_line(line);
        if (first && f.size() >= 1 && f[0] == "name") {
          first = false;
          continue;  // header
        }
        first = false;
        check(f.size() >= 3, Err::SyntaxError, "batch CSV row needs name,kind,input");
        rows.push_back({f[0], f[1], f[2]});
      }
      FileCache cache = FileCache::from_env(!no_cache);
      std::vector<std::vector<std::string>> results(rows.size());
      std::mutex emu;
      std::string first_error;
      auto work = [&](size_t begin, size_t step) {
        for (size_t i = begin; i < rows.size(); i += step) {
          try {
            Diagram d = parse_input(rows[i][1], rows[i][2]);
            std::string key = d.canonical_key();
            for (const auto& name : algebras) {
              std::string cache_id = name + (conv == Convention::old ? "/old" : "");
              if (auto hit = cache.lookup(key, cache_id)) {
                results[i].push_back(*hit);
                continue;
              }
              std::string value = with_algebra(name, [&](const auto& alg) {
                return alg.to_string(evaluate(d, alg, conv));
              });
              cache.store(key, cache_id, value);
              results[i].push_back(value);
            }
          } catch (const std::exception& e) {
            std::lock_guard<std::mutex> lock(emu);
            if (first_error.empty()) first_error = rows[i][0] + ": " + e.what();
          }
        }
      };
      int n = std::max(1, jobs);
      std::vector<std::thread> pool;
      for (int t = 1; t < n; ++t) pool.emplace_back(work, t, n);
      work(0, n);
      for (auto& th : pool) th.join();
      check(first_error.empty(), Err::Internal, first_error);

      std::ostringstream body;
      body << "name";
      for (const auto& a : algebras) body << "," << a;
      body << "\n";
      for (size_t i = 0; i < rows.size(); ++i) {
        body << cli_detail::csv_quote(rows[i][0]);
        for (const auto& v : results[i]) body << "," << cli_detail::csv_quote(v);
        body << "\n";
      }
      if (bat_out.empty()) {
        out << body.str();
      } else {
        std::ofstream of(bat_out);
        of << body.str();
      }
      return 0;
    }
  } catch (const Error& e) {
    err << e.what() << "\n";
    switch (e.kind) {
      case Err::SyntaxError:
      case Err::NonPlanar:
      case Err::BadValence:
      case Err::InconsistentOrientation:
      case Err::UnknownFormat:
        return 2;
      default:
        return 3;
    }
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return 3;
  }
  err << "no subcommand\n";
  return 2;
}

}  // namespace skein
