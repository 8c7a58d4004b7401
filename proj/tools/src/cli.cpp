#include <braidgrowth/cli.hpp>

#include <braidgrowth/bipartite_count.hpp>
#include <braidgrowth/errors.hpp>
#include <braidgrowth/exact_linalg.hpp>
#include <braidgrowth/growth_core.hpp>
#include <braidgrowth/oracle_automata.hpp>
#include <braidgrowth/partitions.hpp>

#include <chrono>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

namespace braidgrowth::cli {

namespace {

struct Config {
  int n = 0;
  std::size_t terms = 10;
  int max_len = 4;
  std::string a, b;
  std::string kind;
  std::string format = "plain";
  std::string out_path;
  std::string cache_path;
  std::string n_list;
  OracleBounds bounds;
};

class Usage : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void emit(const Config& cfg, std::ostream& out, const std::string& text) {
  if (cfg.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.out_path, std::ios::binary);
  if (!file) throw Usage("cannot open output file " + cfg.out_path);
  file << text;
  if (!file) throw Error("failed writing " + cfg.out_path);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

std::string matrix_to_csv(const BigMatrix& m) {
  std::ostringstream out;
  out << "label";
  for (std::size_t c = 0; c < m.cols(); ++c)
    out << ',' << csv_field(m.col_labels() ? (*m.col_labels())[c] : std::to_string(c));
  out << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out << csv_field(m.row_labels() ? (*m.row_labels())[r] : std::to_string(r));
    for (std::size_t c = 0; c < m.cols(); ++c) out << ',' << to_decimal(m.at(r, c));
    out << '\n';
  }
  return out.str();
}

std::string render(const BigMatrix& m, const std::string& format) {
  if (format == "json") return matrix_to_json(m) + "\n";
  if (format == "csv") return matrix_to_csv(m);
  return matrix_to_plain(m);
}

std::vector<int> parse_n_list(const std::string& text) {
  std::vector<int> values;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size() || item.empty() || v < 2) throw Usage("--n-list expects integers >= 2, got '" + text + "'");
    values.push_back(v);
  }
  if (values.empty()) throw Usage("--n-list is empty");
  return values;
}

CountCache open_cache(const std::string& path) {
  CountCache cache;
  if (path.empty()) return cache;
  std::ifstream in(path);
  if (in) cache.load(in);
  return cache;
}

void save_cache(const CountCache& cache, const std::string& path) {
  if (path.empty()) return;
  std::ofstream file(path);
  if (!file) throw Usage("cannot write cache file " + path);
  cache.save(file);
}

int cmd_growth(const Config& cfg, std::ostream& out) {
  GrowthSeries series;
  if (cfg.cache_path.empty()) {
    series = growth_series(cfg.n, cfg.terms);
  } else {
    CountCache cache = open_cache(cfg.cache_path);
    series = growth_series(cfg.n, cfg.terms, cache);
    save_cache(cache, cfg.cache_path);
  }
  if (cfg.format == "json")
    emit(cfg, out, to_json(series) + "\n");
  else if (cfg.format == "csv")
    emit(cfg, out, to_csv(series));
  else
    emit(cfg, out, to_plain(series));
  return kOk;
}

int cmd_count_graphs(const Config& cfg, std::ostream& out) {
  const DegreeSequence a = parse_degree_sequence(cfg.a);
  const DegreeSequence b = parse_degree_sequence(cfg.b);
  CountCache cache;
  const BigInt count = count_graphs(a, b, cache);
  const std::string pa = to_string(Partition::from_unsorted(a.entries));
  const std::string pb = to_string(Partition::from_unsorted(b.entries));
  if (cfg.format == "json") {
    nlohmann::ordered_json j;
    j["a"] = pa;
    j["b"] = pb;
    j["count"] = to_decimal(count);
    emit(cfg, out, j.dump() + "\n");
  } else if (cfg.format == "csv") {
    emit(cfg, out, "a,b,count\n" + pa + "," + pb + "," + to_decimal(count) + "\n");
  } else {
    emit(cfg, out, to_decimal(count) + "\n");
  }
  return kOk;
}

int cmd_matrix(const Config& cfg, std::ostream& out) {
  BigMatrix m;
  if (cfg.kind == "full-t") {
    m = full_transition_matrix(cfg.n, cfg.bounds).T;
  } else if (cfg.kind == "m") {
    m = refinement_matrix(cfg.n);
  } else if (cfg.n < 2) {
    throw Usage("--kind " + cfg.kind + " requires --n >= 2");
  } else if (cfg.kind == "core") {
    m = build_core(cfg.n);
  } else {
    CountCache cache = open_cache(cfg.cache_path);
    m = cfg.kind == "ntilde" ? build_ntilde(cfg.n, cache) : build_reduced_system(cfg.n, cache).ttilde;
    save_cache(cache, cfg.cache_path);
  }
  emit(cfg, out, render(m, cfg.format));
  return kOk;
}

int cmd_verify(const Config& cfg, std::ostream& out) {
  if (cfg.n < 2) throw Usage("verify requires --n >= 2");
  const VerificationReport report = verify_all(cfg.n, cfg.max_len, cfg.bounds);
  if (cfg.format == "plain") {
    std::ostringstream text;
    for (const auto& c : report.checks)
      text << (c.pass ? "PASS " : "FAIL ") << c.identity << " (n=" << c.n << "): " << c.detail << '\n';
    emit(cfg, out, text.str());
  } else {
    emit(cfg, out, to_json(report, 2) + "\n");
  }
  return report.all_pass() ? kOk : kFailure;
}

int cmd_bench(const Config& cfg, std::ostream& out) {
  const std::vector<int> ns = parse_n_list(cfg.n_list);
  std::ostringstream text;
  text << "n,seconds\n";
  for (int n : ns) {
    const auto start = std::chrono::steady_clock::now();
    const GrowthSeries series = growth_series(n, cfg.terms);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    text << n << ',' << elapsed.count() << '\n';
  }
  emit(cfg, out, text.str());
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Spherical growth series of the braid monoid B_n^+", "braidgrowth"};
  app.require_subcommand(1);
  const auto formats = CLI::IsMember({"json", "csv", "plain"});

  auto* growth = app.add_subcommand("growth", "coefficients a_0..a_L of the growth series");
  growth->add_option("--n", cfg.n, "strand count")->required()->check(CLI::PositiveNumber);
  growth->add_option("--terms", cfg.terms, "largest length L")->capture_default_str();
  growth->add_option("--format", cfg.format)->check(formats)->capture_default_str();
  growth->add_option("--out", cfg.out_path, "write to this file instead of standard output");
  growth->add_option("--cache", cfg.cache_path, "graph-count cache file, read and updated");

  auto* count = app.add_subcommand("count-graphs", "simple bipartite graphs with given degree sequences");
  count->add_option("--a", cfg.a, "degrees of one side, e.g. 2,1,1")->required();
  count->add_option("--b", cfg.b, "degrees of the other side")->required();
  count->add_option("--format", cfg.format)->check(formats)->capture_default_str();
  count->add_option("--out", cfg.out_path);

  auto* matrix = app.add_subcommand("matrix", "print one of the transfer matrices");
  matrix->add_option("--n", cfg.n)->required()->check(CLI::PositiveNumber);
  matrix->add_option("--kind", cfg.kind)->required()->check(CLI::IsMember({"ttilde", "core", "ntilde", "m", "full-t"}));
  matrix->add_option("--format", cfg.format)->check(formats)->capture_default_str();
  matrix->add_option("--out", cfg.out_path);
  matrix->add_option("--cache", cfg.cache_path);
  matrix->add_option("--max-automaton-n", cfg.bounds.max_automaton_n, "bound for --kind full-t")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "check the reduction against the full automaton");
  verify->add_option("--n", cfg.n)->required()->check(CLI::PositiveNumber);
  verify->add_option("--max-len", cfg.max_len, "largest length compared")->capture_default_str()->check(CLI::NonNegativeNumber);
  verify->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "plain"}))->capture_default_str();
  verify->add_option("--out", cfg.out_path);
  verify->add_option("--max-automaton-n", cfg.bounds.max_automaton_n)->capture_default_str();
  verify->add_option("--max-enumeration-n", cfg.bounds.max_enumeration_n)->capture_default_str();
  verify->add_option("--max-enumeration-length", cfg.bounds.max_enumeration_length)->capture_default_str();

  auto* bench = app.add_subcommand("bench", "time building Ttilde plus streaming coefficients");
  bench->add_option("--n-list", cfg.n_list, "comma-separated strand counts")->required();
  bench->add_option("--terms", cfg.terms)->capture_default_str();
  bench->add_option("--out", cfg.out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    if (*growth) return cmd_growth(cfg, out);
    if (*count) return cmd_count_graphs(cfg, out);
    if (*matrix) return cmd_matrix(cfg, out);
    if (*verify) return cmd_verify(cfg, out);
    if (*bench) return cmd_bench(cfg, out);
  } catch (const Usage& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const SumMismatch& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const BoundExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}

}  // namespace braidgrowth::cli
