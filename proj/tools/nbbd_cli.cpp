// nbbd: batch driver for the Nyman-Beurling experiments.
//
// Every subcommand builds a JSON record (parameter echo, input hash, results)
// and writes it either as JSON or as CSV with the echo in '#' comment lines.
// Payloads never contain timestamps or wall times, so reruns are
// byte-identical; the wall time goes to stderr.
#include <openssl/evp.h>

#include <CLI11.hpp>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "nbbd/counterfactual_model.hpp"
#include "nbbd/criterion_metric.hpp"
#include "nbbd/mollifier.hpp"
#include "nbbd/parallel.hpp"
#include "nbbd/residue_calculus.hpp"
#include "nbbd/special_functions.hpp"
#include "nbbd/theorem_fit.hpp"
#include "nbbd/zero_data.hpp"

#ifndef NBBD_VERSION
#define NBBD_VERSION "0.0.0"
#endif

using nlohmann::ordered_json;
using nbbd::Complex;
namespace fs = std::filesystem;

namespace {

struct Common {
  std::string zeros;
  double tmax = 0.0;  // 0: per-command default
  double tol = 0.0;
  unsigned threads = 0;
  std::string out;
  std::string format = "csv";
  std::string cache_dir;
  double sigma0 = 0.75;
  double gamma0 = 10.0;
  std::vector<double> removed = {14.134725141734693, 21.022039638771555};
  std::string mode = "quadruplet";
};

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string s;
  for (unsigned i = 0; i < len; ++i) {
    s += hex[digest[i] >> 4];
    s += hex[digest[i] & 15];
  }
  return s;
}

std::string file_digest(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw nbbd::Error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return sha256_hex(buf.str());
}

fs::path zeros_path(const Common& c) { return c.zeros.empty() ? nbbd::zeros::bundled_table_path() : fs::path(c.zeros); }

nbbd::model::ModelSpec model_spec(const Common& c) {
  if (c.removed.size() != 2) throw nbbd::DomainError("--removed needs exactly two ordinates");
  nbbd::model::ModelSpec spec;
  spec.sigma0 = c.sigma0;
  spec.gamma0 = c.gamma0;
  spec.removed_a = c.removed[0];
  spec.removed_b = c.removed[1];
  spec.validate();
  return spec;
}

nbbd::model::OffLineMode offline_mode(const Common& c) {
  return c.mode == "pair" ? nbbd::model::OffLineMode::kPair : nbbd::model::OffLineMode::kQuadruplet;
}

ordered_json model_echo(const Common& c) {
  return {{"sigma0", c.sigma0}, {"gamma0", c.gamma0}, {"removed", c.removed}, {"mode", c.mode}};
}

void apply_overrides(nbbd::metric::QuadratureSpec& q, const Common& c) {
  if (c.tmax > 0.0) q.t_max = c.tmax;
  if (c.tol > 0.0) q.panel_tolerance = c.tol;
}

// A tabular result: columns plus rows of numbers, and optional scalars.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  ordered_json summary = ordered_json::object();
};

ordered_json table_json(const Table& t) {
  ordered_json rows = ordered_json::array();
  for (const auto& r : t.rows) {
    ordered_json row = ordered_json::object();
    for (std::size_t i = 0; i < t.columns.size(); ++i) row[t.columns[i]] = r[i];
    rows.push_back(row);
  }
  ordered_json j = ordered_json::object();
  if (!t.summary.empty()) j["summary"] = t.summary;
  j["rows"] = rows;
  return j;
}

// shortest round-trip representation
std::string number(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

void flatten(const ordered_json& j, const std::string& prefix, std::ostream& os) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (it->is_object()) {
      flatten(*it, key, os);
    } else {
      os << "# " << key << "=" << (it->is_string() ? it->get<std::string>() : it->dump()) << "\n";
    }
  }
}

std::string render(const std::string& command, const ordered_json& params, const std::string& hash, const Table& table,
                   const std::string& format) {
  if (format == "json") {
    ordered_json j = {{"subcommand", command}, {"version", NBBD_VERSION}, {"parameters", params}, {"input_hash", hash}};
    j["results"] = table_json(table);
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "# subcommand=" << command << "\n# version=" << NBBD_VERSION << "\n";
  flatten(params, "param", os);
  os << "# input_hash=" << hash << "\n";
  flatten(table.summary, "summary", os);
  for (std::size_t i = 0; i < table.columns.size(); ++i) os << (i ? "," : "") << table.columns[i];
  os << "\n";
  for (const auto& r : table.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << number(r[i]);
    os << "\n";
  }
  return os.str();
}

void emit(const std::string& text, const Common& c) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw nbbd::Error("cannot write " + c.out);
  f << text;
}

// Runs `compute` unless the cache already holds the rendered output for the
// same subcommand, parameters, input files and version.
template <class Fn>
void run(const std::string& command, const Common& c, ordered_json params, const std::vector<fs::path>& inputs,
         Fn&& compute) {
  const auto start = std::chrono::steady_clock::now();
  std::string key = command + "\n" + NBBD_VERSION + "\n" + params.dump() + "\n";
  for (const auto& p : inputs) key += file_digest(p) + "\n";
  const std::string hash = sha256_hex(key);

  fs::path cached;
  if (!c.cache_dir.empty()) {
    fs::create_directories(c.cache_dir);
    cached = fs::path(c.cache_dir) / (hash + "." + c.format);
    if (fs::exists(cached)) {
      std::ifstream in(cached, std::ios::binary);
      std::ostringstream buf;
      buf << in.rdbuf();
      emit(buf.str(), c);
      std::cerr << command << ": served from cache " << cached.string() << "\n";
      return;
    }
  }
  const Table table = compute();
  const std::string text = render(command, params, hash, table, c.format);
  if (!cached.empty()) {
    const fs::path tmp = cached.string() + ".tmp";
    std::ofstream(tmp, std::ios::binary) << text;
    fs::rename(tmp, cached);
  }
  emit(text, c);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cerr << command << ": done in " << secs << " s\n";
}

nbbd::zeros::ZeroTable load_table(const Common& c) { return nbbd::zeros::load_zero_table(zeros_path(c)); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical experiments around the Nyman-Beurling criterion", "nbbd"};
  app.set_version_flag("--version", NBBD_VERSION);
  app.set_config("--config", "", "key=value settings file (flags take precedence)");
  app.require_subcommand(1);
  app.fallthrough();

  Common c;
  const auto env = [](CLI::Option* o, const char* name) { o->envname(name); };
  env(app.add_option("--zeros", c.zeros, "zero table (default: bundled first 10^4 ordinates)"), "NBBD_ZEROS");
  env(app.add_option("--tmax", c.tmax, "quadrature cutoff height (default per command)"), "NBBD_TMAX");
  env(app.add_option("--tol", c.tol, "panel tolerance (default per command)"), "NBBD_TOL");
  env(app.add_option("--threads", c.threads, "worker threads, 0 = all cores"), "NBBD_THREADS");
  env(app.add_option("--out", c.out, "output file (default stdout)"), "NBBD_OUT");
  env(app.add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"})), "NBBD_FORMAT");
  env(app.add_option("--cache-dir", c.cache_dir, "results cache directory"), "NBBD_CACHE_DIR");
  env(app.add_option("--sigma0", c.sigma0, "real part of the engineered zero"), "NBBD_SIGMA0");
  env(app.add_option("--gamma0", c.gamma0, "ordinate of the engineered zero"), "NBBD_GAMMA0");
  env(app.add_option("--removed", c.removed, "two removed on-line ordinates a,b")->delimiter(','), "NBBD_REMOVED");
  env(app.add_option("--mode", c.mode, "pair or quadruplet")->check(CLI::IsMember({"pair", "quadruplet"})), "NBBD_MODE");

  // constants
  auto* constants = app.add_subcommand("constants", "2 + gamma - log 4pi and the zero sums");
  bool empty_table = false;
  constants->add_flag("--empty-table", empty_table, "skip the zero sums");

  // criterion
  auto* criterion = app.add_subcommand("criterion", "I(N) for the true zeta or the model");
  std::vector<std::int64_t> crit_n = {100, 1000};
  std::string target = "real-zeta";
  criterion->add_option("--n", crit_n, "comma-separated lengths N")->delimiter(',');
  criterion->add_option("--target", target, "real-zeta or model")->check(CLI::IsMember({"real-zeta", "model"}));

  // gram
  auto* gram = app.add_subcommand("gram", "d_N^2 from the Gram system for N = 1..N_max");
  int n_max = 8;
  gram->add_option("--n-max", n_max, "largest N (<= 64)");

  // lemma23
  auto* lemma = app.add_subcommand("lemma23", "residue reconstruction of the mollifier");
  std::int64_t lemma_n = 100;
  double lemma_re = 0.45;
  std::vector<double> lemma_t = {3.0};
  std::vector<double> lemma_heights = {500.0, 2000.0};
  bool lemma_model = false;
  lemma->add_option("--n", lemma_n, "mollifier length");
  lemma->add_option("--re", lemma_re, "Re s");
  lemma->add_option("--t", lemma_t, "comma-separated Im s")->delimiter(',');
  lemma->add_option("--heights", lemma_heights, "comma-separated truncation heights T")->delimiter(',');
  lemma->add_flag("--model", lemma_model, "reconstruct the counterfactual mollifier instead of V_N");

  // residues
  auto* residues = app.add_subcommand("residues", "terms of the residue decomposition at one point");
  std::int64_t res_n = 100;
  double res_re = 0.45, res_t = 3.0;
  residues->add_option("--n", res_n, "mollifier length");
  residues->add_option("--re", res_re, "Re s");
  residues->add_option("--t", res_t, "Im s");

  // fit
  auto* fit = app.add_subcommand("fit", "fit A cos(omega log N) + B to the main term");
  std::int64_t fit_lo = 100, fit_hi = 100000;
  int fit_points = 24;
  bool free_frequency = false;
  fit->add_option("--n-lo", fit_lo, "smallest N");
  fit->add_option("--n-hi", fit_hi, "largest N");
  fit->add_option("--points", fit_points, "geometric grid size");
  fit->add_flag("--free-frequency", free_frequency, "also refine omega");

  // zeros-ingest
  auto* ingest = app.add_subcommand("zeros-ingest", "parse, optionally refine, and summarize a zero table");
  std::string ingest_input;
  bool refine = false;
  ingest->add_option("input", ingest_input, "table file")->required()->check(CLI::ExistingFile);
  ingest->add_flag("--refine", refine, "polish each ordinate on the Hardy Z function");

  // diagnostics
  auto* diag = app.add_subcommand("diagnostics", "zero-sum growth and |zeta| growth exponents");
  std::vector<double> diag_heights = {100, 200, 500, 1000, 2000, 5000, 9000};
  std::size_t growth_points = 2000;
  diag->add_option("--heights", diag_heights, "comma-separated heights")->delimiter(',');
  diag->add_option("--growth-points", growth_points, "samples for the |zeta| growth diagnostic");

  CLI11_PARSE(app, argc, argv);
  nbbd::set_worker_count(c.threads);

  const ordered_json quad_echo = {{"tmax", c.tmax}, {"tol", c.tol}};
  try {
    if (*constants) {
      ordered_json params = {{"empty_table", empty_table}};
      std::vector<fs::path> inputs;
      if (!empty_table) {
        params["zeros"] = zeros_path(c).filename().string();
        inputs.push_back(zeros_path(c));
      }
      run("constants", c, params, inputs, [&] {
        const auto k = nbbd::special::constants();
        Table t;
        t.summary["euler_gamma"] = k.euler_gamma;
        t.summary["log_4pi"] = k.log_4pi;
        t.summary["nbbd_constant"] = k.nbbd_constant;
        t.columns = {"height", "zero_sum", "bare_sum", "tail", "deviation", "burnol_bound"};
        if (!empty_table) {
          const auto table = load_table(c);
          const auto z = nbbd::zeros::zero_sum_constant(table);
          const auto b = nbbd::zeros::burnol_lower_bound(table);
          t.rows.push_back({z.height, z.value, z.bare_sum, z.tail, z.value - k.nbbd_constant, b.value});
        }
        return t;
      });
    } else if (*criterion) {
      ordered_json params = {{"n", crit_n}, {"target", target}, {"quadrature", quad_echo}};
      if (target == "model") params["model"] = model_echo(c);
      run("criterion", c, params, {}, [&] {
        Table t;
        t.columns = {"N", "value", "value_log_n", "tail_estimate", "tail_bound", "panels"};
        for (const auto n : crit_n) {
          auto q = nbbd::metric::criterion_spec(n);
          apply_overrides(q, c);
          const auto r = target == "model"
                             ? nbbd::model::full_counterfactual_integral(n, model_spec(c), q)
                             : nbbd::metric::criterion_integral(nbbd::mollifier::build_vn(n),
                                                                nbbd::metric::true_zeta_on_line(), q);
          const double logn = std::log(static_cast<double>(n));
          t.rows.push_back({static_cast<double>(n), r.value, r.value * logn, r.tail_estimate, r.tail_bound,
                            static_cast<double>(r.panels)});
        }
        t.summary["nbbd_constant"] = nbbd::special::constants().nbbd_constant;
        return t;
      });
    } else if (*gram) {
      run("gram", c, {{"n_max", n_max}, {"quadrature", quad_echo}}, {}, [&] {
        Table t;
        t.columns = {"N", "d2", "d2_raw", "residual", "min_eigenvalue", "trace"};
        for (int n = 1; n <= n_max; ++n) {
          auto q = nbbd::metric::criterion_spec(n);
          q.panel_tolerance = 1e-10;
          apply_overrides(q, c);
          const auto g = nbbd::metric::build_gram(n, q);
          const auto d = nbbd::metric::solve_dn2(g);
          t.rows.push_back({static_cast<double>(n), d.d2, d.d2_raw, d.residual, g.min_eigenvalue(), g.trace()});
        }
        return t;
      });
    } else if (*lemma) {
      ordered_json params = {{"n", lemma_n}, {"re", lemma_re}, {"t", lemma_t}, {"heights", lemma_heights},
                             {"zeros", zeros_path(c).filename().string()}};
      if (lemma_model) params["model"] = model_echo(c);
      run("lemma23", c, params, {zeros_path(c)}, [&] {
        const auto table = load_table(c);
        std::optional<nbbd::model::ModelSpec> spec;
        if (lemma_model) spec = model_spec(c);
        Table t;
        t.columns = {"re", "t", "height", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "error", "relative_error",
                     "tail_estimate"};
        for (const double im : lemma_t) {
          for (const double h : lemma_heights) {
            const auto r = nbbd::residue::lemma23_reconstruct(lemma_n, Complex(lemma_re, im), table.truncated(h), spec);
            t.rows.push_back({lemma_re, im, h, r.lhs.real(), r.lhs.imag(), r.rhs.real(), r.rhs.imag(), r.error,
                              r.relative_error, r.tail_estimate});
          }
        }
        return t;
      });
    } else if (*residues) {
      ordered_json params = {{"n", res_n}, {"re", res_re}, {"t", res_t}, {"model", model_echo(c)},
                             {"zeros", zeros_path(c).filename().string()}};
      run("residues", c, params, {zeros_path(c)}, [&] {
        namespace re = nbbd::residue;
        const auto table = load_table(c);
        const auto spec = model_spec(c);
        const Complex s(res_re, res_t);
        const double logn = std::log(static_cast<double>(res_n));
        Table t;
        t.columns = {"component", "re", "im"};
        // component codes: 0 zeta main, 1 sigma1, 2 trivial, 3 V_N direct,
        // 10 model main, 11 model sigma1, 12 sigma2 pair, 13 sigma2 quadruplet,
        // 14 model trivial, 15 A_N^M exact
        const auto row = [&](int code, Complex v) { t.rows.push_back({double(code), v.real(), v.imag()}); };
        const Complex z = nbbd::special::zeta(s);
        row(0, (1.0 / z) * (1.0 - nbbd::special::zeta_derivative(s, 1) / (z * logn)));
        row(1, re::sigma1(res_n, s, table).value);
        row(2, re::trivial_zero_sum(s, res_n).value / logn);
        row(3, nbbd::mollifier::eval_dirichlet(nbbd::mollifier::build_vn(res_n), s));
        const nbbd::model::CounterfactualZeta m(spec);
        const Complex mv = m.value(s);
        row(10, (1.0 / mv) * (1.0 - m.derivative(s) / (mv * logn)));
        row(11, re::sigma1(res_n, s, table, spec).value);
        row(12, re::sigma2(res_n, s, spec, nbbd::model::OffLineMode::kPair));
        row(13, re::sigma2(res_n, s, spec, nbbd::model::OffLineMode::kQuadruplet));
        row(14, re::trivial_zero_sum(s, res_n, spec).value / logn);
        row(15, nbbd::model::CounterfactualMollifier(res_n, spec)(s));
        t.summary["components"] =
            "0 zeta main, 1 sigma1, 2 trivial, 3 V_N, 10 model main, 11 model sigma1, 12 sigma2 pair, "
            "13 sigma2 quadruplet, 14 model trivial, 15 exact model mollifier";
        return t;
      });
    } else if (*fit) {
      ordered_json params = {{"n_lo", fit_lo},     {"n_hi", fit_hi},          {"points", fit_points},
                             {"free_frequency", free_frequency}, {"model", model_echo(c)}, {"quadrature", quad_echo}};
      run("fit", c, params, {}, [&] {
        const auto spec = model_spec(c);
        const auto grid = nbbd::model::geometric_grid(fit_lo, fit_hi, fit_points);
        auto q = nbbd::model::main_term_spec();
        apply_overrides(q, c);
        const auto mode = offline_mode(c);
        const auto values = nbbd::parallel_map(grid.size(), [&](std::size_t i) {
          return std::pair{grid[i], nbbd::model::main_term_integral(grid[i], spec, q, mode).value};
        });
        const auto f = nbbd::model::fit_theorem_constants(values, spec, false);
        Table t;
        t.summary["A"] = f.a;
        t.summary["B"] = f.b;
        t.summary["frequency"] = f.frequency;
        t.summary["rms_relative_residual"] = f.rms_relative_residual;
        t.summary["sin_coefficient"] = f.sin_coefficient;
        t.summary["rms_relative_residual_with_phase"] = f.rms_relative_residual_with_phase;
        if (free_frequency) {
          const auto g = nbbd::model::fit_theorem_constants(values, spec, true);
          t.summary["free"] = {{"A", g.a}, {"B", g.b}, {"frequency", g.frequency},
                               {"rms_relative_residual", g.rms_relative_residual}};
        }
        t.columns = {"N", "main_term", "normalized", "fitted"};
        for (std::size_t i = 0; i < values.size(); ++i) {
          t.rows.push_back({static_cast<double>(values[i].first), values[i].second, f.normalized[i], f.fitted[i]});
        }
        return t;
      });
    } else if (*ingest) {
      ordered_json params = {{"input", fs::path(ingest_input).filename().string()}, {"refine", refine}};
      run("zeros-ingest", c, params, {fs::path(ingest_input)}, [&] {
        const auto table = nbbd::zeros::load_zero_table(ingest_input, refine);
        Table t;
        t.columns = {"index", "ordinate", "zeta_prime_re", "zeta_prime_im"};
        std::size_t i = 0;
        for (const auto& e : table.entries()) {
          t.rows.push_back({double(++i), e.ordinate, e.zeta_prime.real(), e.zeta_prime.imag()});
        }
        t.summary["count"] = table.size();
        t.summary["height"] = table.height();
        if (!table.empty()) t.summary["zero_sum"] = nbbd::zeros::zero_sum_constant(table).value;
        return t;
      });
    } else if (*diag) {
      ordered_json params = {{"heights", diag_heights}, {"growth_points", growth_points},
                             {"zeros", zeros_path(c).filename().string()}};
      run("diagnostics", c, params, {zeros_path(c)}, [&] {
        const auto table = load_table(c);
        const auto h = nbbd::zeros::bcf_hypothesis_diagnostic(table, diag_heights);
        const auto g = nbbd::zeros::empirical_lindelof_diagnostic(nbbd::zeros::default_lindelof_grid(growth_points));
        Table t;
        t.columns = {"height", "inverse_derivative_sum"};
        for (const auto& r : h.rows) t.rows.push_back({r.height, r.partial_sum});
        if (h.exponent) {
          t.summary["sum_exponent"] = *h.exponent;
          t.summary["sum_exponent_stderr"] = h.exponent_stderr;
          t.summary["delta"] = *h.delta;
        }
        if (g.exponent) {
          t.summary["growth_exponent"] = *g.exponent;
          t.summary["growth_exponent_stderr"] = g.exponent_stderr;
        }
        return t;
      });
    }
  } catch (const nbbd::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
