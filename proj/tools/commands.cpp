#include "commands.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "antilinear/construct.hpp"
#include "antilinear/search.hpp"
#include "antilinear/structure.hpp"
#include "antilinear/verify.hpp"
#include "io.hpp"

namespace antilinear::cli {

namespace fs = std::filesystem;

namespace {

/// Carries an exit code out of a subcommand.
struct Failure {
  int code;
  std::string message;
};

std::string bound_rule(long long d) {
  std::ostringstream s;
  s << "N+(d) <= d(d+1)/2 and N-(d) <= d(d-1)/2; for d = " << d << ": "
    << max_set_bound(d, SetKind::conjugation) << " and " << max_set_bound(d, SetKind::skew);
  return s.str();
}

void check_dim(int dim, bool force) {
  if (dim < 1) throw Failure{kExitInvalid, "--dim must be at least 1"};
  if (dim > kMaxDimWithoutForce && !force) {
    throw Failure{kExitInvalid, "--dim " + std::to_string(dim) + " exceeds " +
                                    std::to_string(kMaxDimWithoutForce) + "; pass --force"};
  }
}

fs::path with_suffix(const fs::path& out, const std::string& suffix) {
  fs::path stem = out;
  if (stem.extension() == ".json") stem.replace_extension();
  return fs::path(stem.string() + suffix);
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv(kSeedEnv)) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw Failure{kExitInvalid, std::string(kSeedEnv) + " is not an unsigned integer"};
    }
  }
  return 0;
}

// construct --------------------------------------------------------------

struct ConstructArgs {
  int dim = 0;
  std::string kind = "both";
  std::string method = "power2";
  std::string out;
  bool force = false;
};

int cmd_construct(const ConstructArgs& a, std::ostream& out) {
  check_dim(a.dim, a.force);
  const bool want_conj = a.kind == "conj" || a.kind == "conjugation" || a.kind == "both";
  const bool want_skew = a.kind == "skew" || a.kind == "both";

  std::vector<std::pair<OrthoSet, fs::path>> outputs;
  if (a.method == "power2") {
    if (!is_power_of_two(a.dim)) {
      throw Failure{kExitInvalid, "power2 needs --dim = 2^n (got " + std::to_string(a.dim) +
                                      "); the bound " + bound_rule(a.dim) +
                                      " is reached by construction only for powers of two"};
    }
    SetPair sets = max_sets(a.dim);
    if (want_skew && sets.skew.ops.empty()) {
      throw Failure{kExitInvalid, "no skew conjugations exist for d = 1; " + bound_rule(a.dim)};
    }
    const bool both = want_conj && want_skew;
    if (want_conj) outputs.emplace_back(std::move(sets.conj), both ? with_suffix(a.out, ".conj.json") : fs::path(a.out));
    if (want_skew) outputs.emplace_back(std::move(sets.skew), both ? with_suffix(a.out, ".skew.json") : fs::path(a.out));
  } else {
    if (want_skew) {
      throw Failure{kExitInvalid, "fourier offers conjugations only; use --kind conj"};
    }
    outputs.emplace_back(fourier_set(a.dim), fs::path(a.out));
  }

  for (const auto& [set, path] : outputs) {
    io::write_operator_set(path, io::from_ortho_set(set));
    out << to_string(set.kind) << ": " << set.size() << " operators (bound "
        << max_set_bound(set.dim, set.kind) << ") -> " << path.string() << '\n';
  }
  return kExitOk;
}

// verify -----------------------------------------------------------------

struct VerifyArgs {
  std::string in;
  std::optional<double> tol;
  std::string gram_out;
  std::string kind;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  const io::OperatorSetFile file = io::read_operator_set(a.in);
  std::string kind = a.kind.empty() ? file.kind : a.kind;
  if (kind == "general") {
    throw Failure{kExitInvalid, "file kind 'general' makes no orthogonality claim; pass --kind"};
  }
  if (file.matrices.empty()) throw Failure{kExitIo, "operator set is empty"};
  const double tol = a.tol.value_or(kDefaultTol);
  if (!(tol > 0.0)) throw Failure{kExitInvalid, "--tol must be positive"};

  const Certificate cert = verify_set(file.dim, parse_set_kind(kind), file.matrices, tol);
  out << std::setprecision(6);
  out << "dim: " << cert.dim << "\nkind: " << to_string(cert.kind) << "\nk: " << cert.k
      << "\nmax_structure_residual: " << cert.max_structure_residual
      << "\nmax_offdiag_gram: " << cert.max_offdiag_gram
      << "\nmax_diag_deviation: " << cert.max_diag_deviation << "\ntol: " << cert.tol << '\n';
  for (const auto& note : cert.notes) out << "note: " << note << '\n';
  out << "passed: " << (cert.passed ? "yes" : "no") << '\n';

  if (!a.gram_out.empty()) {
    std::ofstream csv(a.gram_out);
    if (!csv) throw io::IoError("cannot open '" + a.gram_out + "' for writing");
    csv << io::gram_csv(cert.gram);
  }
  return cert.passed ? kExitOk : kExitFailed;
}

// search -----------------------------------------------------------------

struct SearchArgs {
  int dim = 0;
  std::string kind = "conj";
  std::optional<int> target;
  std::string sweep;
  int restarts = 8;
  std::optional<std::uint64_t> seed;
  int max_iters = 2000;
  double tol = 1e-12;
  std::string strategy = "joint";
  int threads = 1;
  std::string out;
  std::string set_out;
  bool include_timing = false;
  bool check_gradient = false;
  bool force = false;
};

std::pair<int, int> parse_sweep(const std::string& text) {
  const auto sep = text.find("..");
  if (sep == std::string::npos) throw Failure{kExitInvalid, "--sweep expects kmin..kmax"};
  try {
    std::size_t used = 0;
    const int lo = std::stoi(text.substr(0, sep), &used);
    if (used != sep) throw std::invalid_argument("trailing");
    const std::string rest = text.substr(sep + 2);
    const int hi = std::stoi(rest, &used);
    if (used != rest.size()) throw std::invalid_argument("trailing");
    return {lo, hi};
  } catch (const std::exception&) {
    throw Failure{kExitInvalid, "--sweep expects kmin..kmax, got '" + text + "'"};
  }
}

void emit(const nlohmann::json& j, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << j.dump(2) << '\n';
  } else {
    io::write_json(path, j);
  }
}

int cmd_search(const SearchArgs& a, std::ostream& out, std::ostream& err) {
  check_dim(a.dim, a.force);
  // Keep stdout pure JSON when the report is written there.
  std::ostream& log = a.out.empty() ? err : out;
  SearchConfig config;
  config.dim = a.dim;
  config.kind = parse_set_kind(a.kind);
  config.restarts = a.restarts;
  config.max_iters = a.max_iters;
  config.tol_loss = a.tol;
  config.seed = resolve_seed(a.seed);
  config.strategy = parse_strategy(a.strategy);
  config.threads = a.threads;
  config.check_gradient = a.check_gradient;

  if (a.target.has_value() == !a.sweep.empty()) {
    throw Failure{kExitInvalid, "pass exactly one of --target and --sweep"};
  }

  if (a.target) {
    config.target_k = *a.target;
    validate(config);
    const SearchReport report = search_max_set(config);
    log << "k=" << config.target_k << " best_loss=" << std::setprecision(6) << report.best_loss
        << (report.achieved ? " witness found" : " no witness found within budget")
        << " (" << report.wall_time_s << " s)\n";
    emit(io::to_json(report, a.include_timing), a.out, out);
    if (report.achieved && (!a.out.empty() || !a.set_out.empty())) {
      const fs::path set_path = a.set_out.empty() ? with_suffix(a.out, ".set.json") : fs::path(a.set_out);
      io::write_operator_set(set_path, io::from_ortho_set(*report.achieved, 1e-6));
    }
    return report.achieved ? kExitOk : kExitFailed;
  }

  const auto [k_min, k_max] = parse_sweep(a.sweep);
  ExploreBudget budget;
  budget.restarts = config.restarts;
  budget.max_iters = config.max_iters;
  budget.tol_loss = config.tol_loss;
  budget.seed = config.seed;
  budget.strategy = config.strategy;
  budget.threads = config.threads;
  // Reject bad configurations before any work.
  for (int k = k_min; k <= k_max; ++k) {
    config.target_k = k;
    validate(config);
  }
  const std::vector<SearchReport> reports = explore_dimension(a.dim, config.kind, k_min, k_max, budget);

  nlohmann::json rows = nlohmann::json::array();
  bool all_found = true;
  for (const auto& report : reports) {
    log << "k=" << report.config.target_k << " best_loss=" << std::setprecision(6)
        << report.best_loss
        << (report.achieved ? " witness found" : " no witness found within budget") << '\n';
    all_found = all_found && report.achieved.has_value();
    rows.push_back(io::to_json(report, a.include_timing));
    if (report.achieved && !a.out.empty()) {
      io::write_operator_set(
          with_suffix(a.out, ".k" + std::to_string(report.config.target_k) + ".set.json"),
          io::from_ortho_set(*report.achieved, 1e-6));
    }
  }
  emit(nlohmann::json{{"schema_version", io::kSchemaVersion},
                      {"dim", a.dim},
                      {"kind", std::string(to_string(config.kind))},
                      {"sweep", std::move(rows)}},
       a.out, out);
  return all_found ? kExitOk : kExitFailed;
}

// signature / range ----------------------------------------------------------

int cmd_signature(int dim, bool force, std::ostream& out) {
  check_dim(dim, force);
  const SpaceDims dims = space_dims(dim);
  out << "(" << dims.n_plus << ", " << dims.n_minus << ", " << signature(dim) << ")\n";
  return kExitOk;
}

struct RangeArgs {
  std::string in;
  int index = 0;
  int samples = 10000;
  std::optional<std::uint64_t> seed;
};

int cmd_range(const RangeArgs& a, std::ostream& out) {
  const io::OperatorSetFile file = io::read_operator_set(a.in);
  if (a.index < 0 || a.index >= static_cast<int>(file.matrices.size())) {
    throw Failure{kExitIo, "--index " + std::to_string(a.index) + " out of range (file has " +
                               std::to_string(file.matrices.size()) + " operators)"};
  }
  if (a.samples < 1) throw Failure{kExitInvalid, "--samples must be at least 1"};
  const AntiLinearOp op(file.dim, file.matrices[a.index]);
  const NumericalRangeEstimate est = numerical_range_samples(op, a.samples, resolve_seed(a.seed));
  const double residual = phase_covariance_residual(op, est);
  out << std::setprecision(12) << "radius_estimate: " << est.radius_estimate << '\n'
      << std::setprecision(3) << "phase_covariance: " << (residual <= kDefaultTol ? "pass" : "fail")
      << " (max residual " << residual << ")\n";
  return residual <= kDefaultTol ? kExitOk : kExitFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Orthogonal conjugations: construct, verify and search"};
  app.require_subcommand(1);
  app.footer(std::string("Environment: ") + kSeedEnv +
             " sets the RNG seed when --seed is not given.\n"
             "Exit codes: 0 success, 1 verification/search failure, 2 invalid request, "
             "3 I/O or parse error.");

  ConstructArgs construct;
  auto* c = app.add_subcommand("construct", "Write maximal or baseline orthogonal sets");
  c->add_option("--dim", construct.dim, "Hilbert space dimension")->required();
  c->add_option("--kind", construct.kind, "conj | skew | both")
      ->check(CLI::IsMember({"conj", "conjugation", "skew", "both"}));
  c->add_option("--method", construct.method, "power2 | fourier")
      ->check(CLI::IsMember({"power2", "fourier"}));
  c->add_option("--out", construct.out, "Output path (kind both: <stem>.conj.json, <stem>.skew.json)")
      ->required();
  c->add_flag("--force", construct.force, "Allow dimensions above 64");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Certify an operator set file");
  v->add_option("--in", verify.in, "Operator set JSON")->required();
  v->add_option("--tol", verify.tol, "Tolerance (default 1e-10)");
  v->add_option("--gram-out", verify.gram_out, "Write the Gram matrix as CSV");
  v->add_option("--kind", verify.kind, "Override the file kind (conjugation | skew)")
      ->check(CLI::IsMember({"conj", "conjugation", "skew"}));

  SearchArgs search;
  auto* s = app.add_subcommand("search", "Numerical search for orthogonal sets");
  s->add_option("--dim", search.dim, "Hilbert space dimension")->required();
  s->add_option("--kind", search.kind, "conj | skew")
      ->check(CLI::IsMember({"conj", "conjugation", "skew"}));
  s->add_option("--target", search.target, "Target set size k");
  s->add_option("--sweep", search.sweep, "Range kmin..kmax");
  s->add_option("--restarts", search.restarts, "Restarts per k");
  s->add_option("--seed", search.seed, "Master seed");
  s->add_option("--max-iters", search.max_iters, "Iterations per descent");
  s->add_option("--tol", search.tol, "Success threshold on the loss");
  s->add_option("--strategy", search.strategy, "joint | greedy")
      ->check(CLI::IsMember({"joint", "greedy"}));
  s->add_option("--threads", search.threads, "Parallel restarts (results do not depend on it)");
  s->add_option("--out", search.out, "SearchReport JSON path (stdout when absent)");
  s->add_option("--set-out", search.set_out, "Achieved set path (default <out stem>.set.json)");
  s->add_flag("--include-timing", search.include_timing, "Record wall time in the report");
  s->add_flag("--check-gradient", search.check_gradient,
              "Compare analytic and finite-difference gradients at every restart");
  s->add_flag("--force", search.force, "Allow dimensions above 64");

  int sig_dim = 0;
  bool sig_force = false;
  auto* g = app.add_subcommand("signature", "Print (d(d+1)/2, d(d-1)/2, signature)");
  g->add_option("--dim", sig_dim, "Hilbert space dimension")->required();
  g->add_flag("--force", sig_force, "Allow dimensions above 64");

  RangeArgs range;
  auto* r = app.add_subcommand("range", "Sample <phi, op phi> for one operator of a file");
  r->add_option("--in", range.in, "Operator set JSON")->required();
  r->add_option("--index", range.index, "Operator index (0-based)");
  r->add_option("--samples", range.samples, "Number of unit vectors");
  r->add_option("--seed", range.seed, "Sampler seed");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*c) return cmd_construct(construct, out);
    if (*v) return cmd_verify(verify, out);
    if (*s) return cmd_search(search, out, err);
    if (*g) return cmd_signature(sig_dim, sig_force, out);
    if (*r) return cmd_range(range, out);
  } catch (const Failure& f) {
    err << "error: " << f.message << '\n';
    return f.code;
  } catch (const io::IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}

}  // namespace antilinear::cli
