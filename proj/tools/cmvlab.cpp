// Command-line front end. Every subcommand writes one deterministic document
// (JSON, CSV, or SVG) to --out or stdout. Failures print a machine-readable
// record {"error":{"type":...,"message":...}} on stderr and exit with the
// code of the error family: 2 invariant violation, 3 precision exhausted,
// 4 bad configuration.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <string>
#include <thread>
#include <vector>

#include <cmvlab/cmvlab.hpp>

using namespace cmvlab;

namespace {

cd parse_complex(const std::string& text, const char* what) {
  size_t comma = text.find(',');
  auto num = [&](const std::string& part) {
    size_t used = 0;
    double v = 0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      throw BadConfig(std::string(what) + ": cannot parse '" + part + "' as a number");
    }
    if (used != part.size())
      throw BadConfig(std::string(what) + ": trailing characters in '" + part + "'");
    return v;
  };
  if (comma == std::string::npos) return cd(num(text), 0.0);
  return cd(num(text.substr(0, comma)), num(text.substr(comma + 1)));
}

std::pair<long long, long long> parse_range(const std::string& text) {
  size_t colon = text.find(':');
  if (colon == std::string::npos) throw BadConfig("range must look like n0:n1");
  try {
    long long n0 = std::stoll(text.substr(0, colon));
    long long n1 = std::stoll(text.substr(colon + 1));
    if (n1 <= n0) throw BadConfig("range must satisfy n0 < n1");
    return {n0, n1};
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw BadConfig("cannot parse range '" + text + "'");
  }
}

Frequency parse_frequency(const std::string& text) {
  if (text == "golden") return Frequency::golden();
  if (text == "silver") return Frequency::silver();
  if (text.rfind("cf:", 0) == 0) {
    std::vector<long long> block;
    std::string body = text.substr(3);
    size_t pos = 0;
    while (pos < body.size()) {
      size_t next = body.find(',', pos);
      std::string piece = body.substr(pos, next == std::string::npos ? next : next - pos);
      try {
        block.push_back(std::stoll(piece));
      } catch (const std::exception&) {
        throw BadConfig("cannot parse cf block entry '" + piece + "'");
      }
      if (next == std::string::npos) break;
      pos = next + 1;
    }
    return Frequency::periodic(block);
  }
  return Frequency::decimal(text);
}

std::vector<long long> parse_int_list(const std::string& text, const char* what) {
  std::vector<long long> out;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t next = text.find(',', pos);
    std::string piece = text.substr(pos, next == std::string::npos ? next : next - pos);
    try {
      out.push_back(std::stoll(piece));
    } catch (const std::exception&) {
      throw BadConfig(std::string(what) + ": cannot parse '" + piece + "'");
    }
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  if (out.empty()) throw BadConfig(std::string(what) + ": empty list");
  return out;
}

std::vector<double> parse_double_list(const std::string& text, const char* what) {
  std::vector<double> out;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t next = text.find(',', pos);
    std::string piece = text.substr(pos, next == std::string::npos ? next : next - pos);
    try {
      out.push_back(std::stod(piece));
    } catch (const std::exception&) {
      throw BadConfig(std::string(what) + ": cannot parse '" + piece + "'");
    }
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  if (out.empty()) throw BadConfig(std::string(what) + ": empty list");
  return out;
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::fwrite(content.data(), 1, content.size(), stdout);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw BadConfig("cannot open output file: " + path);
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) throw BadConfig("failed writing output file: " + path);
}

void add_complex_pair(JsonBuilder& j, const char* key, cd v) {
  j.key(key).arr_begin().value(v.real()).value(v.imag()).arr_end();
}

struct WordParams {
  std::string theta;
  std::string phi;  // empty means "use theta"
  BigReal theta_value;
  BigReal phi_value;
  std::string label;

  void resolve() {
    Frequency f = parse_frequency(theta);
    theta_value = f.value();
    label = f.name();
    phi_value = phi.empty() ? theta_value : BigReal(phi.c_str());
  }
};

// Sturmian coefficient window covering ambient sites [lo, hi).
AlphaWindow sturmian_window(const WordParams& wp, cd beta, cd gamma, long long lo, long long hi) {
  Word w = mechanical_word(wp.theta_value, wp.phi_value, lo, hi - lo);
  return sturmian_alphas(w, beta, gamma);
}

// scan points evaluated in index blocks; assembly order is fixed, so the
// output bytes do not depend on the thread count
SpectrumScan threaded_scan(cd beta, cd gamma, const std::vector<long long>& cf, int grid,
                           int budget, const std::string& label, int threads) {
  if (threads <= 1) return spectrum_scan(beta, gamma, cf, grid, budget, label);
  if (budget < 5) throw BadConfig("scan budget must be at least 5");
  if (cf.size() < static_cast<size_t>(budget))
    throw BadConfig("scan needs a partial quotient per budget step");
  SpectrumScan scan;
  scan.beta = beta;
  scan.gamma = gamma;
  scan.a = cf;
  scan.theta_label = label;
  scan.grid = grid;
  scan.budget = budget;
  scan.points.resize(static_cast<size_t>(grid));
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t]() {
      try {
        for (int i = t; i < grid; i += threads) {
          double angle = 2 * std::numbers::pi * static_cast<double>(i) / grid;
          scan.points[static_cast<size_t>(i)] =
              evaluate_scan_point(beta, gamma, scan.a, angle, budget);
        }
      } catch (...) {
        errors[static_cast<size_t>(t)] = std::current_exception();
      }
    });
  }
  for (std::thread& th : pool) th.join();
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);
  return scan;
}

void certificate_json(JsonBuilder& j, const GordonCertificate& cert, bool with_minus) {
  add_complex_pair(j, "z", cert.z0);
  j.key("n_k").value(cert.n_k);
  j.key("n_under").value(cert.n_under);
  j.key("trace_abs").value(cert.trace_abs);
  j.key("c").value(cert.consts.c);
  j.key("eta").value(cert.consts.eta);
  j.key("gamma_sup").value(cert.consts.Gamma);
  j.key("delta").value(cert.consts.Delta);
  j.key("states").arr_begin();
  for (const StateNorms& s : cert.states) {
    j.obj_begin();
    if (with_minus) j.key("phi_minus").value(s.phi_minus);
    j.key("phi_under").value(s.phi_under);
    j.key("phi_end").value(s.phi_end);
    j.key("best").value(s.best);
    j.key("ok").value(s.ok);
    j.obj_end();
  }
  j.arr_end();
  j.key("bound_ok").value(cert.bound_ok);
  j.key("slack").value(cert.slack);
}

int run(int argc, char** argv) {
  CLI::App app{"quasiperiodic CMV spectra: words, transfer cocycles, trace-map scans, "
               "and Gordon-type eigenvalue exclusion"};
  app.require_subcommand(1);
  std::string out_path;
  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", out_path, "output file (default stdout)");
  };

  // cf
  auto* cf_cmd = app.add_subcommand("cf", "continued-fraction expansion and convergents");
  add_out(cf_cmd);
  std::string cf_theta;
  int cf_terms = 10;
  cf_cmd->add_option("--theta", cf_theta, "golden | silver | cf:a1,a2,... | decimal in (0,1)")
      ->required();
  cf_cmd->add_option("--terms", cf_terms, "number of partial quotients")->capture_default_str();
  cf_cmd->callback([&]() {
    if (cf_terms < 1) throw BadConfig("--terms must be positive");
    Frequency f = parse_frequency(cf_theta);
    std::vector<long long> a = f.quotients(cf_terms);
    Convergents conv = convergents(a, cf_terms);
    JsonBuilder j;
    j.obj_begin();
    j.key("theta").value(f.name());
    j.key("a").arr_begin();
    for (long long q : a) j.value(q);
    j.arr_end();
    j.key("p").arr_begin();
    for (const BigInt& p : conv.p) j.value(p.str());
    j.arr_end();
    j.key("q").arr_begin();
    for (const BigInt& q : conv.q) j.value(q.str());
    j.arr_end();
    j.obj_end();
    emit(out_path, j.str() + "\n");
  });

  // word
  auto* word_cmd = app.add_subcommand("word", "Sturmian and rotation-coded symbol sequences");
  add_out(word_cmd);
  WordParams wp;
  std::string word_variant = "floor", word_interval, word_range = "0:32";
  word_cmd->add_option("--theta", wp.theta, "frequency (golden | silver | cf:... | decimal)")
      ->required();
  word_cmd->add_option("--phi", wp.phi, "phase as a decimal (default: theta itself)");
  word_cmd->add_option("--variant", word_variant, "floor | ceiling | coding")
      ->capture_default_str();
  word_cmd->add_option("--interval", word_interval,
                       "coding interval l,r (default: the Sturmian interval [1-theta, 1))");
  word_cmd->add_option("--range", word_range, "ambient index window n0:n1")
      ->capture_default_str();
  word_cmd->callback([&]() {
    wp.resolve();
    auto [n0, n1] = parse_range(word_range);
    if (n1 - n0 > (1LL << 24)) throw BadConfig("word range too large");
    Word w;
    if (word_variant == "floor" || word_variant == "ceiling") {
      if (!word_interval.empty())
        throw BadConfig("--interval applies to the coding variant only");
      w = mechanical_word(wp.theta_value, wp.phi_value, n0, n1 - n0, word_variant == "ceiling");
    } else if (word_variant == "coding") {
      RotationInterval iv = RotationInterval::sturmian_floor(wp.theta_value);
      if (!word_interval.empty()) {
        size_t comma = word_interval.find(',');
        if (comma == std::string::npos) throw BadConfig("interval must look like l,r");
        iv = RotationInterval(BigReal(word_interval.substr(0, comma).c_str()),
                              BigReal(word_interval.substr(comma + 1).c_str()));
      }
      w = rotation_word(wp.theta_value, wp.phi_value, iv, n0, n1 - n0);
    } else {
      throw BadConfig("unknown word variant: " + word_variant);
    }
    JsonBuilder j;
    j.obj_begin();
    j.key("theta").value(wp.label);
    j.key("phi").value(wp.phi.empty() ? wp.label : wp.phi);
    j.key("variant").value(word_variant);
    j.key("origin").value(word_origin_name(w.provenance));
    j.key("n0").value(n0);
    j.key("n1").value(n1);
    j.key("symbols").value(w.symbols);
    j.obj_end();
    emit(out_path, j.str() + "\n");
  });

  // cmv
  auto* cmv_cmd = app.add_subcommand("cmv", "finite unitary truncations and dense windows");
  add_out(cmv_cmd);
  WordParams cmv_wp;
  std::string cmv_beta, cmv_gamma, cmv_boundary = "1,0";
  long long cmv_window = 64;
  bool cmv_dump = false;
  cmv_cmd->add_option("--beta", cmv_beta, "letter 0 coefficient re,im")->required();
  cmv_cmd->add_option("--gamma", cmv_gamma, "letter 1 coefficient re,im")->required();
  cmv_cmd->add_option("--theta", cmv_wp.theta, "frequency")->required();
  cmv_cmd->add_option("--phi", cmv_wp.phi, "word phase (default: theta)");
  cmv_cmd->add_option("--window", cmv_window, "number of sites N")->capture_default_str();
  cmv_cmd->add_option("--boundary", cmv_boundary, "unimodular truncation phase re,im")
      ->capture_default_str();
  cmv_cmd->add_flag("--dump-matrix", cmv_dump, "emit the dense operator window as CSV");
  cmv_cmd->callback([&]() {
    if (cmv_window < 1) throw BadConfig("--window must be positive");
    if (cmv_window > 2000) throw BadConfig("--window is capped at 2000 sites");
    cmv_wp.resolve();
    cd beta = parse_complex(cmv_beta, "--beta");
    cd gamma = parse_complex(cmv_gamma, "--gamma");
    cd b = parse_complex(cmv_boundary, "--boundary");
    AlphaWindow alpha = sturmian_window(cmv_wp, beta, gamma, -2, cmv_window + 1);
    if (cmv_dump) {
      CmvOperator op{alpha};
      Eigen::MatrixXcd m = dense_window(op, 0, cmv_window);
      std::string csv;
      for (long long i = 0; i < cmv_window; ++i) {
        for (long long k = 0; k < cmv_window; ++k) {
          if (k) csv += ',';
          csv += fmt_double(m(i, k).real());
          csv += ',';
          csv += fmt_double(m(i, k).imag());
        }
        csv += '\n';
      }
      emit(out_path, csv);
      return;
    }
    std::vector<cd> ev = truncated_spectrum(alpha, cmv_window, b);
    JsonBuilder j;
    j.obj_begin();
    add_complex_pair(j, "beta", beta);
    add_complex_pair(j, "gamma", gamma);
    j.key("theta").value(cmv_wp.label);
    j.key("window").value(cmv_window);
    add_complex_pair(j, "boundary", b);
    j.key("eigenvalue_angles").arr_begin();
    for (cd v : ev) {
      double a = std::arg(v);
      if (a < 0) a += 2 * std::numbers::pi;
      j.value(a);
    }
    j.arr_end();
    j.obj_end();
    emit(out_path, j.str() + "\n");
  });

  // transfer
  auto* tr_cmd = app.add_subcommand("transfer", "transfer-matrix identity and stability checks");
  add_out(tr_cmd);
  WordParams tr_wp;
  std::string tr_beta, tr_gamma, tr_z = "1,0", tr_check = "identity";
  long long tr_steps = 16;
  double tr_delta = 1e-8;
  tr_cmd->add_option("--beta", tr_beta, "letter 0 coefficient re,im")->required();
  tr_cmd->add_option("--gamma", tr_gamma, "letter 1 coefficient re,im")->required();
  tr_cmd->add_option("--theta", tr_wp.theta, "frequency")->required();
  tr_cmd->add_option("--phi", tr_wp.phi, "word phase (default: theta)");
  tr_cmd->add_option("--z", tr_z, "spectral parameter re,im on the unit circle")
      ->capture_default_str();
  tr_cmd->add_option("--steps", tr_steps, "number of steps n")->capture_default_str();
  tr_cmd->add_option("--check", tr_check, "identity | cocycle | perturbation")
      ->capture_default_str();
  tr_cmd->add_option("--delta", tr_delta, "perturbation size for --check perturbation")
      ->capture_default_str();
  tr_cmd->callback([&]() {
    if (tr_steps < 1) throw BadConfig("--steps must be positive");
    if (tr_steps > 100000) throw BadConfig("--steps is capped at 1e5");
    tr_wp.resolve();
    cd beta = parse_complex(tr_beta, "--beta");
    cd gamma = parse_complex(tr_gamma, "--gamma");
    cd z = parse_complex(tr_z, "--z");
    AlphaWindow alpha = sturmian_window(tr_wp, beta, gamma, -tr_steps - 1, 2 * tr_steps + 1);
    JsonBuilder j;
    j.obj_begin();
    j.key("check").value(tr_check);
    j.key("steps").value(tr_steps);
    add_complex_pair(j, "z", z);
    if (tr_check == "identity") {
      double dev = check_sgz_identity(alpha, z, tr_steps);
      j.key("deviation").value(dev);
      j.key("pass").value(dev <= 1e-10);
    } else if (tr_check == "cocycle") {
      double comp_dev = 0;
      Mat2d whole = szego_cocycle(alpha, tr_steps, -tr_steps, z);
      for (long long k = -tr_steps; k <= tr_steps; k += std::max<long long>(1, tr_steps / 4)) {
        Mat2d split = szego_cocycle(alpha, tr_steps, k, z) * szego_cocycle(alpha, k, -tr_steps, z);
        comp_dev = std::max(comp_dev, max_abs_entry(whole - split) / (1 + op_norm(whole)));
      }
      cd zn = std::pow(z, cd(static_cast<double>(tr_steps), 0));
      double det_dev = std::abs(szego_cocycle(alpha, tr_steps, 0, z).det() - zn);
      double inv_dev = max_abs_entry(szego_cocycle(alpha, -tr_steps, tr_steps, z) * whole -
                                     Mat2d::identity());
      j.key("composition_deviation").value(comp_dev);
      j.key("determinant_deviation").value(det_dev);
      j.key("inverse_deviation").value(inv_dev);
      j.key("pass").value(comp_dev <= 1e-9 && det_dev <= 1e-9 * (1 + std::abs(zn)) &&
                          inv_dev <= 1e-8);
    } else if (tr_check == "perturbation") {
      if (!(tr_delta >= 0 && tr_delta < 0.1)) throw BadConfig("--delta must lie in [0, 0.1)");
      AlphaWindow tilde = alpha;
      for (cd& v : tilde.values) v *= (1.0 - tr_delta);
      PerturbationGap g = perturbation_gap(alpha, tilde, z, tr_steps);
      j.key("lhs").value(g.lhs);
      j.key("bound").value(g.bound);
      j.key("intermediate_bound").value(g.sharp);
      j.key("r").value(g.r);
      j.key("delta").value(g.delta);
      j.key("pass").value(g.within);
    } else {
      throw BadConfig("unknown transfer check: " + tr_check);
    }
    j.obj_end();
    emit(out_path, j.str() + "\n");
  });

  // scan
  auto* scan_cmd = app.add_subcommand("scan", "trace-map spectrum scan over the unit circle");
  add_out(scan_cmd);
  std::string scan_beta, scan_gamma, scan_theta, scan_cf, scan_format;
  int scan_grid = 1024, scan_budget = 12, scan_refine = 0, scan_threads = 1;
  long long scan_seed = 0;
  bool scan_degenerate = false;
  scan_cmd->add_option("--beta", scan_beta, "letter 0 coefficient re,im")->required();
  scan_cmd->add_option("--gamma", scan_gamma, "letter 1 coefficient re,im")->required();
  scan_cmd->add_option("--theta", scan_theta, "frequency (alternative to --cf)");
  scan_cmd->add_option("--cf", scan_cf, "explicit partial quotients a1,a2,...");
  scan_cmd->add_option("--grid", scan_grid, "grid size, a power of two >= 64")
      ->capture_default_str();
  scan_cmd->add_option("--budget", scan_budget, "renormalization steps per point")
      ->capture_default_str();
  scan_cmd->add_option("--refine", scan_refine, "bisection depth at verdict boundaries")
      ->capture_default_str();
  scan_cmd->add_option("--seed", scan_seed, "seed echoed into the scan header")
      ->capture_default_str();
  scan_cmd->add_option("--format", scan_format, "json | csv (default from --out extension)");
  scan_cmd->add_option("--threads", scan_threads, "worker threads for the grid loop")
      ->capture_default_str();
  scan_cmd->add_flag("--degenerate", scan_degenerate, "allow beta == gamma");
  scan_cmd->callback([&]() {
    if (scan_grid < 64 || (scan_grid & (scan_grid - 1)) != 0)
      throw BadConfig("--grid must be a power of two, at least 64");
    if (scan_threads < 1 || scan_threads > 256) throw BadConfig("--threads must be in [1, 256]");
    cd beta = parse_complex(scan_beta, "--beta");
    cd gamma = parse_complex(scan_gamma, "--gamma");
    if (beta == gamma && !scan_degenerate)
      throw BadConfig("beta == gamma collapses the model to a constant sequence; "
                      "pass --degenerate to scan it anyway");
    if (scan_theta.empty() == scan_cf.empty())
      throw BadConfig("exactly one of --theta and --cf is required");
    std::vector<long long> cf;
    std::string label;
    if (!scan_cf.empty()) {
      cf = parse_int_list(scan_cf, "--cf");
      label = "cf-list";
    } else {
      Frequency f = parse_frequency(scan_theta);
      cf = f.quotients(scan_budget);
      label = f.name();
    }
    SpectrumScan scan =
        threaded_scan(beta, gamma, cf, scan_grid, scan_budget, label, scan_threads);
    if (scan_refine > 0) refine_scan(scan, scan_refine);
    std::string format = scan_format;
    if (format.empty())
      format = out_path.size() >= 4 && out_path.substr(out_path.size() - 4) == ".csv" ? "csv"
                                                                                      : "json";
    if (format == "json") {
      emit(out_path, scan_to_json(scan, scan_seed));
    } else if (format == "csv") {
      emit(out_path, scan_to_csv(scan));
    } else {
      throw BadConfig("unknown scan format: " + format);
    }
  });

  // gordon
  auto* g_cmd = app.add_subcommand("gordon", "Gordon-type certificates and exclusion runs");
  add_out(g_cmd);
  WordParams g_wp;
  std::string g_mode = "two", g_beta, g_gamma, g_z = "1,0", g_growth_c = "2,4,8";
  long long g_scale = 0, g_phases = 128;
  int g_k = 5, g_k_lo = 3, g_k_hi = 8, g_grid = 1024, g_budget = 12;
  double g_trace_bound = 0, g_tol = 1e-6;
  long long g_seed = 0;
  bool g_fail = false;
  g_cmd->add_option("--mode", g_mode, "two | three | sequence | exclude")->capture_default_str();
  g_cmd->add_option("--beta", g_beta, "letter 0 coefficient re,im")->required();
  g_cmd->add_option("--gamma", g_gamma, "letter 1 coefficient re,im")->required();
  g_cmd->add_option("--theta", g_wp.theta, "frequency")->required();
  g_cmd->add_option("--phi", g_wp.phi, "word phase (default: theta)");
  g_cmd->add_option("--z", g_z, "spectral parameter re,im (two and three)")
      ->capture_default_str();
  g_cmd->add_option("--scale", g_scale, "repetition scale n_k (0 = derive from --k)")
      ->capture_default_str();
  g_cmd->add_option("--k", g_k, "convergent index used when --scale 0")->capture_default_str();
  g_cmd->add_option("--k-lo", g_k_lo, "smallest k (sequence and exclude)")
      ->capture_default_str();
  g_cmd->add_option("--k-hi", g_k_hi, "largest k (sequence and exclude)")->capture_default_str();
  g_cmd->add_option("--trace-bound", g_trace_bound,
                    "trace bound c for --mode two (0 = use the measured trace)")
      ->capture_default_str();
  g_cmd->add_option("--grid", g_grid, "scan grid for --mode exclude")->capture_default_str();
  g_cmd->add_option("--budget", g_budget, "scan budget for --mode exclude")
      ->capture_default_str();
  g_cmd->add_option("--phases", g_phases, "bounded points to certify in --mode exclude")
      ->capture_default_str();
  g_cmd->add_option("--growth-c", g_growth_c, "constants C for --mode sequence")
      ->capture_default_str();
  g_cmd->add_option("--tol", g_tol, "target for --mode sequence")->capture_default_str();
  g_cmd->add_option("--seed", g_seed, "seed echoed into exclude scans")->capture_default_str();
  g_cmd->add_flag("--fail-on-violation", g_fail, "exit 2 when the certified claim fails");
  g_cmd->callback([&]() {
    g_wp.resolve();
    cd beta = parse_complex(g_beta, "--beta");
    cd gamma = parse_complex(g_gamma, "--gamma");
    Frequency freq = parse_frequency(g_wp.theta);
    bool violated = false;
    JsonBuilder j;
    j.obj_begin();
    j.key("mode").value(g_mode);

    if (g_mode == "two" || g_mode == "three") {
      cd z = parse_complex(g_z, "--z");
      long long n_k = g_scale;
      if (n_k == 0) {
        if (g_k < 3) throw BadConfig("--k must be at least 3 for derived scales");
        std::vector<long long> quot = freq.quotients(g_k + 2);
        Convergents conv = convergents(quot, g_k + 1);
        long long top = static_cast<long long>(conv.q[static_cast<size_t>(g_k)] +
                                               conv.q[static_cast<size_t>(g_k + 1)]);
        Word w = mechanical_word(g_wp.theta_value, g_wp.phi_value, -top, 3 * top);
        n_k = gordon_scales(w, conv, g_k).n_k;
      }
      if (n_k > (1LL << 22)) throw BadConfig("--scale too large for direct certification");
      AlphaWindow alpha = sturmian_window(g_wp, beta, gamma, -n_k - 1, 2 * n_k + 1);
      GordonCertificate cert;
      if (g_mode == "two") {
        double c = g_trace_bound;
        if (c == 0) c = std::abs(szego_cocycle(alpha, n_k, 0, z).trace()) * (1 + 1e-12);
        cert = check_two_block(alpha, z, n_k, c);
      } else {
        cert = check_three_block(alpha, z, n_k);
      }
      certificate_json(j, cert, g_mode == "three");
      violated = !cert.bound_ok;
    } else if (g_mode == "sequence") {
      if (g_k_lo < 1 || g_k_hi < g_k_lo) throw BadConfig("need 1 <= k-lo <= k-hi");
      std::vector<long long> quot = freq.quotients(g_k_hi + 1);
      Convergents conv = convergents(quot, g_k_hi);
      std::vector<long long> scales;
      for (int k = g_k_lo; k <= g_k_hi; ++k) {
        long long q = static_cast<long long>(conv.q[static_cast<size_t>(k)]);
        if (scales.empty() || q > scales.back()) scales.push_back(q);
      }
      long long top = scales.back();
      if (top > (1LL << 22)) throw BadConfig("scales too large; lower --k-hi");
      AlphaWindow alpha = sturmian_window(g_wp, beta, gamma, -top - 1, 2 * top + 1);
      std::vector<double> cs = parse_double_list(g_growth_c, "--growth-c");
      GordonSequenceReport rep = gordon_sequence_test(alpha, scales, cs, g_tol);
      j.key("scales").arr_begin();
      for (long long s : rep.scales) j.value(s);
      j.arr_end();
      j.key("deviations").arr_begin();
      for (double d : rep.deviations) j.value(d);
      j.arr_end();
      j.key("rows").arr_begin();
      for (const GordonSequenceRow& row : rep.rows) {
        j.obj_begin();
        j.key("C").value(row.C);
        j.key("quantity").arr_begin();
        for (double q : row.quantity) j.value(q);
        j.arr_end();
        j.key("reaches_tol").value(row.reaches_tol);
        j.obj_end();
      }
      j.arr_end();
      j.key("all_reach_tol").value(rep.all_reach_tol);
      violated = !rep.all_reach_tol;
    } else if (g_mode == "exclude") {
      if (beta == gamma) throw BadConfig("exclusion needs beta != gamma");
      if (g_grid < 64 || (g_grid & (g_grid - 1)) != 0)
        throw BadConfig("--grid must be a power of two, at least 64");
      std::vector<long long> cf = freq.quotients(g_budget);
      SpectrumScan scan = spectrum_scan(beta, gamma, cf, g_grid, g_budget, freq.name());
      ExclusionSummary sum = eigenvalue_excluder(scan, freq, g_k_lo, g_k_hi, g_phases);
      j.key("seed").value(g_seed);
      j.key("points_used").value(sum.points_used);
      j.key("pairs").value(sum.pairs);
      j.key("certified").value(sum.certified);
      j.key("certified_fraction").value(sum.certified_fraction);
      j.key("min_slack").value(sum.min_slack);
      j.key("max_trace").value(sum.max_trace);
      j.key("rows").arr_begin();
      for (const ExclusionRow& row : sum.rows) {
        j.obj_begin();
        j.key("point_index").value(static_cast<long long>(row.point_index));
        j.key("angle").value(row.angle);
        j.key("k").value(row.k);
        j.key("n_k").value(row.n_k);
        j.key("trace_abs").value(row.trace_abs);
        j.key("delta").value(row.delta);
        j.key("slack").value(row.slack);
        j.key("ok").value(row.ok);
        j.obj_end();
      }
      j.arr_end();
      violated = sum.pairs == 0 || sum.certified != sum.pairs;
    } else {
      throw BadConfig("unknown gordon mode: " + g_mode);
    }
    j.obj_end();
    emit(out_path, j.str() + "\n");
    if (g_fail && violated)
      throw InvariantViolation("gordon " + g_mode + " certificate did not hold");
  });

  // plot
  auto* plot_cmd = app.add_subcommand("plot", "render a scan file as a deterministic SVG");
  add_out(plot_cmd);
  std::string plot_in;
  plot_cmd->add_option("--in", plot_in, "scan JSON produced by the scan subcommand")
      ->required();
  plot_cmd->callback([&]() {
    std::ifstream f(plot_in, std::ios::binary);
    if (!f) throw BadConfig("cannot open scan file: " + plot_in);
    std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    LoadedScan loaded = scan_from_json(text);
    emit(out_path, scan_to_svg(loaded.scan));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    JsonBuilder j;
    j.obj_begin().key("error").obj_begin();
    j.key("type").value("bad_config");
    j.key("message").value(std::string(e.what()));
    j.obj_end().obj_end();
    std::fprintf(stderr, "%s\n", j.str().c_str());
    return 4;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Error& e) {
    JsonBuilder j;
    j.obj_begin().key("error").obj_begin();
    j.key("type").value(e.kind());
    j.key("message").value(std::string(e.what()));
    j.obj_end().obj_end();
    std::fprintf(stderr, "%s\n", j.str().c_str());
    return e.exit_code();
  } catch (const std::exception& e) {
    JsonBuilder j;
    j.obj_begin().key("error").obj_begin();
    j.key("type").value("internal");
    j.key("message").value(std::string(e.what()));
    j.obj_end().obj_end();
    std::fprintf(stderr, "%s\n", j.str().c_str());
    return 2;
  }
}
