// superpose: one binary, one subcommand per experiment. Links only the C API.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "superpose/superpose.h"

namespace {

using Json = nlohmann::ordered_json;

enum Exit { kOk = 0, kRuntime = 1, kUsage = 2, kParse = 3 };

constexpr const char* kCommands[] = {"gen", "check", "scan", "interfere", "geometry", "threshold", "gap"};

const char* kExitHelp =
    "Exit codes:\n"
    "  0  ok\n"
    "  1  runtime error (I/O failure, construction failure, numerical guard)\n"
    "  2  usage error (bad flags, invalid parameters, mismatched shapes)\n"
    "  3  parse error (malformed matrix file or config)\n";

// A failed library call, carrying the exit code it maps to.
struct Failure {
  int code;
  std::string message;
};

int exit_code(sp_status s) {
  switch (s) {
    case SP_OK: return kOk;
    case SP_ERR_DIMENSION:
    case SP_ERR_PARAMETER: return kUsage;
    case SP_ERR_PARSE: return kParse;
    default: return kRuntime;
  }
}

void check(sp_status s) {
  if (s != SP_OK) throw Failure{exit_code(s), std::string(sp_status_name(s)) + " error: " + sp_last_error()};
}

struct MatrixDeleter {
  void operator()(sp_matrix* m) const { sp_matrix_free(m); }
};
using MatrixPtr = std::unique_ptr<sp_matrix, MatrixDeleter>;

struct StringDeleter {
  void operator()(char* s) const { sp_string_free(s); }
};
using StringPtr = std::unique_ptr<char, StringDeleter>;

MatrixPtr load(const std::string& path) {
  sp_matrix* m = nullptr;
  check(sp_matrix_load(path.c_str(), &m));
  return MatrixPtr(m);
}

Json take_json(char* raw) {
  StringPtr s(raw);
  return Json::parse(s.get());
}

std::string take_string(char* raw) {
  StringPtr s(raw);
  return std::string(s.get());
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

struct Output {
  std::string path;  // empty: stdout
  bool deterministic = false;

  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Failure{kRuntime, "io error: cannot open " + path + " for writing"};
    f << text;
    if (!f) throw Failure{kRuntime, "io error: failed writing " + path};
  }

  void write_json(Json j) const {
    if (!deterministic) j["generated_at"] = timestamp();
    write(j.dump(2) + "\n");
  }
};

// Splits "stem.ext" into "stem.A.ext"; a path without an extension gets ".A".
std::string pair_path(const std::string& out, const std::string& tag) {
  const auto slash = out.find_last_of('/');
  const auto dot = out.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return out + "." + tag;
  return out.substr(0, dot) + "." + tag + out.substr(dot);
}

// JSON config: top-level keys are global flags, objects are subcommand sections.
// When argv already names a subcommand only that section is read; otherwise
// the section present in the file selects the subcommand.
class JsonConfig : public CLI::Config {
 public:
  explicit JsonConfig(std::string selected) : selected_(std::move(selected)) {}

  std::string to_config(const CLI::App*, bool, bool, std::string) const override { return {}; }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    Json j;
    try {
      j = Json::parse(input);
    } catch (const Json::parse_error& e) {
      throw Failure{kParse, std::string("parse error: config is not valid JSON: ") + e.what()};
    }
    if (!j.is_object()) throw Failure{kParse, "parse error: config must be a JSON object"};
    if (selected_.empty()) {
      int sections = 0;
      for (const auto& [key, value] : j.items()) sections += value.is_object();
      if (sections > 1) throw Failure{kUsage, "usage error: config has several sections; name the subcommand"};
    }
    std::vector<CLI::ConfigItem> items;
    for (const auto& [key, value] : j.items()) {
      if (!value.is_object()) {
        items.push_back(item({}, key, value));
        continue;
      }
      if (!selected_.empty() && key != selected_) continue;
      if (selected_.empty()) items.push_back(marker(key, "++"));
      for (const auto& [name, v] : value.items()) {
        if (v.is_object()) throw Failure{kParse, "parse error: config section '" + key + "' nests too deep"};
        const bool global = name == "out" || name == "deterministic";
        items.push_back(item(global ? std::vector<std::string>{} : std::vector<std::string>{key}, name, v));
      }
      if (selected_.empty()) items.push_back(marker(key, "--"));
    }
    return items;
  }

 private:
  std::string selected_;

  static CLI::ConfigItem marker(const std::string& section, const char* name) {
    CLI::ConfigItem it;
    it.parents = {section};
    it.name = name;
    return it;
  }

  static CLI::ConfigItem item(std::vector<std::string> parents, const std::string& key, const Json& value) {
    CLI::ConfigItem it;
    it.parents = std::move(parents);
    it.name = key;
    if (value.is_array()) {
      for (const auto& v : value) it.inputs.push_back(scalar(v, key));
    } else {
      it.inputs.push_back(scalar(value, key));
    }
    return it;
  }

  static std::string scalar(const Json& v, const std::string& key) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number()) return v.dump();
    throw Failure{kParse, "parse error: config key '" + key + "' must be a scalar or array of scalars"};
  }
};

struct GenArgs {
  std::string kind = "rademacher";
  std::size_t d = 0, m = 0, k = 1;
  std::uint64_t seed = 0;
  double delta = 0.0, eps = 0.0;
  std::string format = "text";
};

struct CheckArgs {
  std::string a, b;
  std::size_t k = 1;
  double eps = 0.0;
  bool brute = false;
};

struct ScanArgs {
  sp_scan_options o{2, 1, 0.5, 10, 0.5, 1, 1024, 0};
  std::string format = "csv";
};

struct InterfereArgs {
  std::string a, b;
  double tau = 0.0;
  double r = 0.0;
  bool exact_alpha = false;
};

struct GeometryArgs {
  std::string a, b;
  double delta = 0.0, tol = 0.1, eps = 0.0, gamma = 1.0;
};

struct ThresholdArgs {
  std::string a, b, sigma, offset;
  std::size_t k = 1;
  double shift = 0.0;
};

struct GapArgs {
  std::size_t m = 512, k = 4, trials = 20;
  double eps = 0.5;
  std::uint64_t seed = 0;
  std::vector<std::size_t> ladder;
  std::string format = "csv";
};

MatrixPtr load_b(const std::string& a_path, const std::string& b_path) { return load(b_path.empty() ? a_path : b_path); }

void run_gen(const GenArgs& g, const Output& out) {
  if (out.path.empty()) throw Failure{kUsage, "usage error: gen requires --out"};
  const std::string ext = g.format == "json" ? ".json" : "";
  Json info{{"kind", g.kind}, {"m", g.m}, {"seed", g.seed}};
  std::vector<std::string> files;
  if (g.kind == "shifted") {
    std::size_t d = g.d;
    if (d == 0) check(sp_shifted_pair_dimension(g.m, g.delta, g.eps, g.k, &d));
    sp_matrix *a = nullptr, *b = nullptr;
    char* meta = nullptr;
    check(sp_shifted_pair(d, g.m, g.delta, g.eps, g.k, g.seed, &a, &b, &meta));
    MatrixPtr pa(a), pb(b);
    info["d"] = d;
    info["shifted"] = take_json(meta);
    files = {pair_path(out.path, "A") + ext, pair_path(out.path, "B") + ext};
    check(sp_matrix_save(pa.get(), files[0].c_str()));
    check(sp_matrix_save(pb.get(), files[1].c_str()));
  } else {
    if (g.d == 0) throw Failure{kUsage, "usage error: --d is required for kind " + g.kind};
    sp_matrix* a = nullptr;
    check(g.kind == "rademacher" ? sp_rademacher(g.d, g.m, g.seed, &a) : sp_gaussian_unit(g.d, g.m, g.seed, &a));
    MatrixPtr pa(a);
    info["d"] = g.d;
    files = {out.path + ext};
    check(sp_matrix_save(pa.get(), files[0].c_str()));
  }
  info["files"] = files;
  Output{"", out.deterministic}.write_json(info);
}

void run_check(const CheckArgs& c, const Output& out) {
  auto a = load(c.a);
  auto b = load_b(c.a, c.b);
  char* raw = nullptr;
  check(c.brute ? sp_brute_force_error_json(a.get(), b.get(), c.k, &raw)
                : sp_worst_case_error_json(a.get(), b.get(), c.k, &raw));
  Json j = take_json(raw);
  int ok = 0;
  check(sp_recovery_check(a.get(), b.get(), c.k, c.eps, &ok));
  j["epsilon"] = c.eps;
  j["recovers"] = ok != 0;
  j["method"] = c.brute ? "enumeration" : "closed_form";
  out.write_json(j);
}

void run_scan(const ScanArgs& s, const Output& out) {
  char *json = nullptr, *csv = nullptr;
  check(sp_scan(&s.o, &json, &csv));
  Json meta = take_json(json);
  const std::string table = take_string(csv);
  if (s.format == "json") {
    out.write_json(meta);
    return;
  }
  out.write(table);
  if (!out.path.empty()) Output{out.path + ".meta.json", out.deterministic}.write_json(meta);
}

void run_interfere(const InterfereArgs& i, const Output& out) {
  auto a = load(i.a);
  auto b = load_b(i.a, i.b);
  char* raw = nullptr;
  check(sp_interference_json(a.get(), b.get(), i.tau, i.exact_alpha ? 1 : 0, i.r, &raw));
  out.write_json(take_json(raw));
}

void run_geometry(const GeometryArgs& g, bool norm_mode, const Output& out) {
  auto a = load(g.a);
  auto b = load_b(g.a, g.b);
  char* raw = nullptr;
  check(norm_mode ? sp_geometry_norm_bounded_json(a.get(), b.get(), g.eps, g.gamma, &raw)
                  : sp_geometry_construction_json(a.get(), b.get(), g.delta, g.tol, &raw));
  out.write_json(take_json(raw));
}

void run_threshold(const ThresholdArgs& t, const Output& out) {
  auto a = load(t.a);
  auto b = load_b(t.a, t.b);
  char* raw = nullptr;
  check(sp_margins_json(a.get(), b.get(), t.k, &raw));
  Json j = take_json(raw);
  if (!t.sigma.empty()) {
    const sp_activation kind = t.sigma == "tanh" ? SP_ACT_TANH : t.sigma == "relu" ? SP_ACT_RELU : SP_ACT_IDENTITY;
    std::vector<double> offset;
    if (!t.offset.empty()) {
      auto o = load(t.offset);
      const double* data = sp_matrix_data(o.get());
      offset.assign(data, data + sp_matrix_rows(o.get()) * sp_matrix_cols(o.get()));
      if (offset.size() != sp_matrix_cols(a.get()))
        throw Failure{kUsage, "dimension error: offset has " + std::to_string(offset.size()) + " entries, expected " +
                                  std::to_string(sp_matrix_cols(a.get()))};
    }
    int ok = 0;
    check(sp_monotone_separation(a.get(), b.get(), t.k, kind, t.shift, offset.empty() ? nullptr : offset.data(),
                                 offset.size(), &ok));
    j["sigma"] = t.sigma;
    j["shift"] = t.shift;
    j["offset"] = offset.empty() ? Json("derived") : Json(offset);
    j["transform_separates"] = ok != 0;
  }
  out.write_json(j);
}

void run_gap(const GapArgs& g, const Output& out) {
  const sp_gap_options o{g.m, g.k, g.eps, g.trials, g.seed, g.ladder.empty() ? nullptr : g.ladder.data(),
                         g.ladder.size()};
  char *json = nullptr, *csv = nullptr;
  check(sp_gap(&o, &json, &csv));
  Json rows = take_json(json);
  const std::string table = take_string(csv);
  if (g.format == "json") {
    Json j{{"m", g.m}, {"k", g.k}, {"epsilon", g.eps}, {"trials", g.trials}, {"seed", g.seed}};
    j["rows"] = rows["rows"];
    out.write_json(j);
  } else {
    out.write(table);
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Linear recovery of sparse features from superposition: constructions, checks and experiments."};
  app.footer(kExitHelp);
  std::string selected;
  for (int i = 1; i < argc && selected.empty(); ++i)
    for (const char* name : kCommands)
      if (std::string(argv[i]) == name) selected = name;
  app.config_formatter(std::make_shared<JsonConfig>(selected));
  app.set_config("--config", "", "JSON config; sections per subcommand, command-line flags take precedence");
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.fallthrough();

  Output out;
  app.add_flag("--deterministic", out.deterministic, "Omit the generated_at timestamp from JSON output");
  app.add_option("--out", out.path, "Output path (default: stdout); gen writes matrices here");
  auto configurable = [](CLI::App* sub) {
    sub->configurable();
    sub->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    return sub;
  };
  const auto positive = CLI::PositiveNumber;

  GenArgs gen;
  auto* gen_cmd = configurable(app.add_subcommand("gen", "Generate an embedding matrix or a shifted (A, B) pair"));
  gen_cmd->add_option("--kind", gen.kind, "rademacher | gaussian | shifted")
      ->check(CLI::IsMember({"rademacher", "gaussian", "shifted"}));
  gen_cmd->add_option("--d", gen.d, "Embedding dimension (shifted: derived when omitted)");
  gen_cmd->add_option("--m", gen.m, "Number of features")->required()->check(positive);
  gen_cmd->add_option("--seed", gen.seed, "RNG seed");
  gen_cmd->add_option("--delta", gen.delta, "Shifted pair: cosine parameter delta");
  gen_cmd->add_option("--eps", gen.eps, "Shifted pair: target recovery error");
  gen_cmd->add_option("--k", gen.k, "Shifted pair: sparsity")->check(positive);
  gen_cmd->add_option("--format", gen.format, "text | json")->check(CLI::IsMember({"text", "json"}));

  CheckArgs chk;
  auto* check_cmd = configurable(app.add_subcommand("check", "Worst-case recovery error of (A, B)"));
  check_cmd->add_option("--a", chk.a, "Representation matrix A")->required();
  check_cmd->add_option("--b", chk.b, "Probe matrix B (default: A)");
  check_cmd->add_option("--k", chk.k, "Sparsity")->required()->check(positive);
  check_cmd->add_option("--eps", chk.eps, "Recovery tolerance epsilon")->required();
  check_cmd->add_flag("--brute", chk.brute, "Enumerate sign patterns instead of the closed form (small m only)");

  ScanArgs scan;
  auto* scan_cmd = configurable(app.add_subcommand("scan", "Minimal dimension scan over seeded Rademacher matrices"));
  scan_cmd->add_option("--m", scan.o.m, "Number of features")->required()->check(positive);
  scan_cmd->add_option("--k", scan.o.k, "Sparsity")->required()->check(positive);
  scan_cmd->add_option("--eps", scan.o.epsilon, "Recovery tolerance")->required();
  scan_cmd->add_option("--trials", scan.o.trials, "Matrices per dimension")->capture_default_str();
  scan_cmd->add_option("--threshold", scan.o.success_threshold, "Success fraction needed")->capture_default_str();
  scan_cmd->add_option("--dmin", scan.o.d_min, "Smallest dimension")->capture_default_str();
  scan_cmd->add_option("--dmax", scan.o.d_max, "Largest dimension")->capture_default_str();
  scan_cmd->add_option("--seed", scan.o.seed, "RNG seed");
  scan_cmd->add_option("--format", scan.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

  InterfereArgs itf;
  auto* itf_cmd = configurable(app.add_subcommand("interfere", "Interference graph diagnostics for C = B^T A"));
  itf_cmd->add_option("--a", itf.a, "Representation matrix A")->required();
  itf_cmd->add_option("--b", itf.b, "Probe matrix B (default: A)");
  itf_cmd->add_option("--tau", itf.tau, "Edge threshold (strict)")->required();
  itf_cmd->add_option("--r", itf.r, "Independence bound r for the Turan edge floor");
  itf_cmd->add_flag("--exact-alpha", itf.exact_alpha, "Exact independence number (m <= 24)");

  GeometryArgs geo;
  auto* geo_cmd = configurable(app.add_subcommand("geometry", "Verify cosine bounds of a construction"));
  geo_cmd->add_option("--a", geo.a, "Representation matrix A")->required();
  geo_cmd->add_option("--b", geo.b, "Probe matrix B (default: A)");
  auto* delta_opt = geo_cmd->add_option("--delta", geo.delta, "Construction mode: delta");
  geo_cmd->add_option("--tol", geo.tol, "Construction mode: tolerance")->capture_default_str()->needs(delta_opt);
  auto* eps_opt = geo_cmd->add_option("--eps", geo.eps, "Norm-bounded mode: epsilon");
  geo_cmd->add_option("--gamma", geo.gamma, "Norm-bounded mode: norm bound")->capture_default_str()->needs(eps_opt);
  delta_opt->excludes(eps_opt);

  ThresholdArgs thr;
  auto* thr_cmd = configurable(app.add_subcommand("threshold", "Binary separation margins and thresholds"));
  thr_cmd->add_option("--a", thr.a, "Representation matrix A")->required();
  thr_cmd->add_option("--b", thr.b, "Probe matrix B (default: A)");
  thr_cmd->add_option("--k", thr.k, "Sparsity")->required()->check(positive);
  thr_cmd->add_option("--sigma", thr.sigma, "Also test a monotone transform: tanh | relu | identity")
      ->check(CLI::IsMember({"tanh", "relu", "identity"}));
  thr_cmd->add_option("--shift", thr.shift, "Input shift for sigma: sigma(x + shift)");
  thr_cmd->add_option("--offset", thr.offset, "Matrix file holding m per-feature offsets");

  GapArgs gap;
  auto* gap_cmd = configurable(app.add_subcommand("gap", "OMP versus linear recovery across dimensions"));
  gap_cmd->add_option("--m", gap.m, "Number of features")->capture_default_str()->check(positive);
  gap_cmd->add_option("--k", gap.k, "Sparsity")->capture_default_str()->check(positive);
  gap_cmd->add_option("--eps", gap.eps, "Linear recovery tolerance")->capture_default_str();
  gap_cmd->add_option("--trials", gap.trials, "Trials per dimension")->capture_default_str();
  gap_cmd->add_option("--seed", gap.seed, "RNG seed");
  gap_cmd->add_option("--ladder", gap.ladder, "Dimensions to test (default: doubling ladder ending at m)")
      ->delimiter(',')
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  gap_cmd->add_option("--format", gap.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  if (*gen_cmd) run_gen(gen, out);
  else if (*check_cmd) run_check(chk, out);
  else if (*scan_cmd) run_scan(scan, out);
  else if (*itf_cmd) run_interfere(itf, out);
  else if (*geo_cmd) {
    if (!*delta_opt && !*eps_opt) throw Failure{kUsage, "usage error: geometry needs --delta or --eps"};
    run_geometry(geo, bool(*eps_opt), out);
  } else if (*thr_cmd) run_threshold(thr, out);
  else if (*gap_cmd) run_gap(gap, out);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Failure& f) {
    std::cerr << "superpose: " << f.message << "\n";
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "superpose: error: " << e.what() << "\n";
    return kRuntime;
  }
}
