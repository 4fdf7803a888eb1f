#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "nilbary/barycenter.hpp"
#include "nilbary/families.hpp"
#include "nilbary/json_io.hpp"
#include "nilbary/lyndon.hpp"
#include "nilbary/parallel.hpp"
#include "nilbary/permutation.hpp"
#include "nilbary/signature.hpp"

namespace nilbary::cli {

namespace {

struct SigConfig {
  int d = 0;
  int L = 3;
  std::string input = "-";
  std::string out = "-";
};

struct BarycenterConfig {
  std::vector<std::string> inputs;
  std::string weights;
  std::string algo = "ambient";
  std::string family = "r";
  std::string order = "reference";
  double tol = 1e-10;
  std::string out = "-";
};

struct GenConfig {
  int d = 0;
  int L = 0;
  std::string family = "r";
  std::string order = "reference";
  bool sparsify = false;
  std::string table;
  std::string format = "text";
  std::string out = "-";
};

struct BmConfig {
  int d = 2;
  int L = 4;
  std::string sigma;
  std::uint64_t seed = 1;
  int steps = 256;
  std::size_t m = 1000;
  int rungs = 3;
  double ratio = 0.75;
  double tol = 1e-13;
  std::string out = "-";
};

struct BasisConfig {
  int d = 2;
  int L = 3;
  std::string out = "-";
};

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text << '\n';
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::invalid_argument("cannot write " + path);
  f << text << '\n';
}

Shape checked_shape(int d, int L) {
  Shape s{d, L};
  validate(s);
  return s;
}

// ---- sig ----

int cmd_sig(const SigConfig& c, std::ostream& out) {
  PiecewiseLinearPath path =
      c.input == "-" ? read_path_csv(std::cin) : read_path_csv_file(c.input);
  const int d = c.d > 0 ? c.d : path.d;
  if (path.d != d) {
    throw std::invalid_argument("csv has " + std::to_string(path.d) + " columns, --d is " + std::to_string(d));
  }
  emit(c.out, tensor_json(sig_pwl(path, checked_shape(d, c.L))), out);
  return kExitOk;
}

// ---- barycenter ----

DiscreteMeasure load_measure(const BarycenterConfig& c) {
  DiscreteMeasure nu;
  bool inline_weights = false;
  for (const auto& path : c.inputs) {
    DiscreteMeasure part = parse_measure_json(read_text(path));
    if (c.inputs.size() == 1) {
      nu = std::move(part);
      inline_weights = true;
      break;
    }
    nu.samples.insert(nu.samples.end(), part.samples.begin(), part.samples.end());
  }
  if (!c.weights.empty()) {
    nu.weights = parse_weights_json(read_text(c.weights));
  } else if (!inline_weights) {
    nu = DiscreteMeasure::uniform(std::move(nu.samples));
  }
  nu.validate();
  return nu;
}

MonomialOrder order_for(const std::string& tag, const Shape& shape) {
  const std::size_t B = lie_dim(shape);
  if (tag == "lex") return MonomialOrder::lex(B);
  if (tag == "deglex") return MonomialOrder::deglex(B);
  if (tag == "reference") return reference_procedure(shape).order;
  throw std::invalid_argument("unknown order '" + tag + "'");
}

ReductionOptions reduction_for(const std::string& tag, const Shape& shape, bool sparsify) {
  ReductionOptions o = tag == "reference" ? reference_procedure(shape).options : ReductionOptions{};
  if (sparsify) o.sparsify = true;
  return o;
}

UpdateFamily family_for(const BarycenterConfig& c, const Shape& shape) {
  if (c.family == "p") return UpdateFamily::from_p(shape, generate_pq(shape).p);
  if (c.family == "r") {
    return UpdateFamily::from_r(shape,
                                generate_r(shape, order_for(c.order, shape), reduction_for(c.order, shape, false)));
  }
  throw std::invalid_argument("unknown polynomial family '" + c.family + "' (use r or p)");
}

BarycenterResult run_algorithm(const std::string& algo, const DiscreteMeasure& nu, const BarycenterConfig& c) {
  if (algo == "ambient") return barycenter_ambient(nu);
  if (algo == "abch") return barycenter_abch(nu);
  if (algo == "pi1") return barycenter_pi1(nu);
  if (algo == "lyndon") return barycenter_lyndon(nu, family_for(c, nu.shape()));
  throw std::invalid_argument("unknown algorithm '" + algo + "'");
}

int cmd_barycenter(const BarycenterConfig& c, std::ostream& out, std::ostream& err) {
  if (!(c.tol > 0.0)) throw std::invalid_argument("--tol must be positive");
  const DiscreteMeasure nu = load_measure(c);
  const double scale = coefficient_scale(nu);
  if (c.algo != "all") {
    BarycenterResult r = run_algorithm(c.algo, nu, c);
    emit(c.out, result_json(r), out);
    if (r.residual_norm / scale > c.tol) {
      err << "residual " << r.residual_norm << " above tolerance " << c.tol << '\n';
      return kExitTolerance;
    }
    return kExitOk;
  }
  std::vector<BarycenterResult> results;
  for (const char* a : {"lyndon", "ambient", "abch", "pi1"}) results.push_back(run_algorithm(a, nu, c));
  double discrepancy = 0.0;
  double worst_residual = 0.0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    worst_residual = std::max(worst_residual, results[i].residual_norm / scale);
    for (std::size_t j = i + 1; j < results.size(); ++j) {
      discrepancy = std::max(discrepancy, normalized_distance(results[i].mean, results[j].mean, nu));
    }
  }
  std::ostringstream s;
  s << "{\"algorithm\":\"all\",\"max_discrepancy\":" << format_double(discrepancy)
    << ",\"max_residual\":" << format_double(worst_residual) << ",\"results\":[";
  for (std::size_t i = 0; i < results.size(); ++i) s << (i ? "," : "") << result_json(results[i]);
  s << "]}";
  emit(c.out, s.str(), out);
  err << "max discrepancy " << discrepancy << ", max residual " << worst_residual << '\n';
  if (discrepancy > c.tol || worst_residual > c.tol) {
    err << "algorithms disagree beyond tolerance " << c.tol << '\n';
    return kExitTolerance;
  }
  return kExitOk;
}

// ---- gen-polys ----

std::size_t table_cell(char table, const Shape& s) {
  switch (table) {
    case 'B':
      return lie_dim(s);
    case 'A':
      return ambient_dim(s);
    case 'P':
      return term_counts(generate_pq(s).p).max;
    case 'Q': {
      RelationProcedure proc = reference_procedure(s);
      return term_counts(generate_r(s, proc.order, proc.options)).max;
    }
    default:
      throw std::invalid_argument("unknown table (use Q, B, P or A)");
  }
}

int cmd_gen_polys(const GenConfig& c, std::ostream& out) {
  if (!c.table.empty()) {
    const char t = c.table.size() == 1 ? c.table[0] : '?';
    if (c.d > 0 && c.L > 0) {
      emit(c.out, std::to_string(table_cell(t, checked_shape(c.d, c.L))), out);
      return kExitOk;
    }
    if (t != 'Q' && t != 'B' && t != 'P' && t != 'A') throw std::invalid_argument("unknown table (use Q, B, P or A)");
    const int dmax = (t == 'B' || t == 'A') ? 7 : 6;
    std::ostringstream s;
    s << "L\\d";
    for (int d = 2; d <= dmax; ++d) s << '\t' << d;
    for (int L = 2; L <= 5; ++L) {
      s << '\n' << L;
      for (int d = 2; d <= dmax; ++d) s << '\t' << table_cell(t, Shape{d, L});
    }
    emit(c.out, s.str(), out);
    return kExitOk;
  }
  if (c.d <= 0 || c.L <= 0) throw std::invalid_argument("--d and --L are required without --table");
  const Shape shape = checked_shape(c.d, c.L);
  const MonomialOrder order = order_for(c.order, shape);
  std::vector<Poly> polys;
  std::string name = c.family;
  if (c.family == "p" || c.family == "q") {
    PQFamilies pq = generate_pq(shape);
    polys = c.family == "p" ? pq.p : pq.q;
  } else if (c.family == "r") {
    polys = generate_r(shape, order, reduction_for(c.order, shape, c.sparsify));
  } else if (c.family == "abch") {
    polys = generate_abch_r(shape);
    name = "r";
  } else {
    throw std::invalid_argument("unknown family '" + c.family + "' (use p, q, r or abch)");
  }
  const TermCounts counts = term_counts(polys);
  std::ostringstream s;
  if (c.format == "json") {
    nlohmann::json j;
    j["d"] = c.d;
    j["L"] = c.L;
    j["family"] = c.family;
    j["polys"] = nlohmann::json::array();
    for (const auto& p : polys) j["polys"].push_back(to_string(p, order));
    j["term_counts"] = counts.counts;
    j["max_terms"] = counts.max;
    s << j.dump(1);
  } else if (c.format == "text") {
    for (std::size_t k = 0; k < polys.size(); ++k) {
      s << name << '_' << k + 1 << " = " << to_string(polys[k], order) << '\n';
    }
    s << "max terms: " << counts.max;
  } else {
    throw std::invalid_argument("unknown format '" + c.format + "' (use text or json)");
  }
  emit(c.out, s.str(), out);
  return kExitOk;
}

// ---- bm-check ----

std::vector<double> read_sigma(const std::string& path, int d) {
  if (path.empty()) return CovarianceMatrix::identity(d).values();
  const nlohmann::json j = nlohmann::json::parse(read_text(path), nullptr, false);
  if (j.is_discarded() || !j.is_array() || static_cast<int>(j.size()) != d) {
    throw std::invalid_argument("sigma must be a JSON array of " + std::to_string(d) + " rows");
  }
  std::vector<double> v;
  for (const auto& row : j) {
    if (!row.is_array() || static_cast<int>(row.size()) != d) throw std::invalid_argument("sigma rows must have d entries");
    for (const auto& x : row) {
      if (!x.is_number()) throw std::invalid_argument("sigma entries must be numbers");
      v.push_back(x.get<double>());
    }
  }
  return v;
}

int cmd_bm_check(const BmConfig& c, std::ostream& out, std::ostream& err) {
  const Shape shape = checked_shape(c.d, c.L);
  if (c.rungs < 2) throw std::invalid_argument("--rungs must be >= 2");
  if (c.m < 1) throw std::invalid_argument("--m must be >= 1");
  const CovarianceMatrix sigma(c.d, read_sigma(c.sigma, c.d));

  const double pi1_norm = max_abs(pi1(expected_sig_bm(sigma, shape)));
  std::vector<Rational> exact;
  for (double v : sigma.values()) exact.emplace_back(v);
  const RationalTensor pe = pi1(expected_sig_bm_exact(exact, shape));
  bool exact_zero = true;
  for (const auto& v : pe.coeffs()) exact_zero = exact_zero && sgn(v) == 0;

  nlohmann::json report;
  report["d"] = c.d;
  report["L"] = c.L;
  report["pi1_expected_max_abs"] = pi1_norm;
  report["pi1_expected_exact_zero"] = exact_zero;
  std::vector<double> norms;
  std::size_t M = c.m;
  for (int k = 0; k < c.rungs; ++k, M *= 2) {
    DiscreteMeasure nu = DiscreteMeasure::uniform(sample_bm_signatures(sigma, c.steps, c.seed, M, shape));
    const double n = max_abs(log(barycenter_ambient(nu).mean));
    norms.push_back(n);
    report["ladder"].push_back({{"M", M}, {"log_norm", n}});
  }
  const double ratio = norms.back() / norms.front();
  report["ratio_last_first"] = ratio;
  const bool ok = pi1_norm <= c.tol && exact_zero && ratio < c.ratio;
  report["pass"] = ok;
  emit(c.out, report.dump(1), out);
  if (!ok) {
    err << "bm-check failed: pi1 " << pi1_norm << ", exact zero " << exact_zero << ", ratio " << ratio << '\n';
    return kExitTolerance;
  }
  return kExitOk;
}

// ---- basis ----

int cmd_basis(const BasisConfig& c, std::ostream& out) {
  LyndonBasis basis(checked_shape(c.d, c.L));
  nlohmann::json j = nlohmann::json::array();
  for (std::size_t b = 0; b < basis.size(); ++b) {
    nlohmann::json e;
    e["index"] = b + 1;
    e["word"] = word_string(basis.word(b));
    e["level"] = basis.level(b);
    auto [u, v] = basis.factorization(b);
    if (u < 0) {
      e["factorization"] = nullptr;
    } else {
      e["factorization"] = {word_string(basis.word(static_cast<std::size_t>(u))),
                            word_string(basis.word(static_cast<std::size_t>(v)))};
    }
    j.push_back(e);
  }
  emit(c.out, j.dump(1), out);
  return kExitOk;
}

}  // namespace

bool apply_thread_env() {
  const char* env = std::getenv("NILBARY_NUM_THREADS");
  if (env == nullptr || *env == '\0') return true;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 1 || n > 4096) return false;
  set_thread_count(static_cast<int>(n));
  return true;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Barycenters in free nilpotent Lie groups"};
  app.require_subcommand(1);
  int threads = 0;
  auto* threads_opt = app.add_option("--threads", threads, "OpenMP threads (default: NILBARY_NUM_THREADS or the runtime default)");

  SigConfig sig;
  auto* s = app.add_subcommand("sig", "Signature of a piecewise-linear path read from CSV");
  s->add_option("--d", sig.d, "Path dimension (default: number of CSV columns)");
  s->add_option("--L", sig.L, "Truncation level");
  s->add_option("--input", sig.input, "CSV file, or - for stdin");
  s->add_option("--out", sig.out, "Output JSON file, or - for stdout");

  BarycenterConfig bc;
  auto* b = app.add_subcommand("barycenter", "Group mean of weighted grouplike samples");
  b->add_option("--input", bc.inputs, "Tensor JSON files (tensor, array, or {samples, weights}); - for stdin")
      ->required();
  b->add_option("--weights", bc.weights, "JSON array of weights (default: uniform or inline)");
  b->add_option("--algo", bc.algo, "lyndon, ambient, abch, pi1 or all");
  b->add_option("--family", bc.family, "Update polynomials for lyndon: r or p");
  b->add_option("--order", bc.order, "Monomial order for r: reference, lex or deglex");
  b->add_option("--tol", bc.tol, "Tolerance on residual and cross-algorithm discrepancy");
  b->add_option("--out", bc.out, "Output JSON file, or - for stdout");

  GenConfig gen;
  auto* g = app.add_subcommand("gen-polys", "Symbolic relation families and term-count tables");
  g->add_option("--d", gen.d, "Alphabet size");
  g->add_option("--L", gen.L, "Truncation level");
  g->add_option("--family", gen.family, "p, q, r or abch");
  g->add_option("--order", gen.order, "reference, lex or deglex");
  g->add_flag("--sparsify", gen.sparsify, "Sparsify r against earlier relations");
  g->add_option("--table", gen.table, "Q (max r terms), B (Lie dimension), P (max p terms) or A (ambient size)");
  g->add_option("--format", gen.format, "text or json");
  g->add_option("--out", gen.out, "Output file, or - for stdout");

  BmConfig bm;
  auto* m = app.add_subcommand("bm-check", "Brownian motion: pi1 of the expected signature and Monte-Carlo decay");
  m->add_option("--d", bm.d, "Dimension");
  m->add_option("--L", bm.L, "Truncation level");
  m->add_option("--sigma", bm.sigma, "Covariance as a JSON d x d array (default: identity)");
  m->add_option("--seed", bm.seed, "Seed");
  m->add_option("--steps", bm.steps, "Steps per sampled path");
  m->add_option("--m", bm.m, "Smallest sample count in the ladder");
  m->add_option("--rungs", bm.rungs, "Ladder length (sample count doubles per rung)");
  m->add_option("--ratio", bm.ratio, "Required bound on last/first log norm");
  m->add_option("--tol", bm.tol, "Tolerance on pi1 of the expected signature");
  m->add_option("--out", bm.out, "Output JSON file, or - for stdout");

  BasisConfig basis;
  auto* l = app.add_subcommand("basis", "Lyndon basis as JSON");
  l->add_option("--d", basis.d, "Alphabet size");
  l->add_option("--L", basis.L, "Truncation level");
  l->add_option("--out", basis.out, "Output file, or - for stdout");

  std::vector<std::string> argv_store{"nilbary"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << e.what() << '\n';
    return kExitInput;
  }

  try {
    if (!apply_thread_env()) throw std::invalid_argument("NILBARY_NUM_THREADS must be a positive integer");
    if (threads_opt->count() > 0) {
      if (threads < 1) throw std::invalid_argument("--threads must be positive");
      set_thread_count(threads);
    }
    if (s->parsed()) return cmd_sig(sig, out);
    if (b->parsed()) return cmd_barycenter(bc, out, err);
    if (g->parsed()) return cmd_gen_polys(gen, out);
    if (m->parsed()) return cmd_bm_check(bm, out, err);
    if (l->parsed()) return cmd_basis(basis, out);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const NotLieElement& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::overflow_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace nilbary::cli
