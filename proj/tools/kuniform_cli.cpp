#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "kuniform/bounds.hpp"
#include "kuniform/error.hpp"
#include "kuniform/linear_code.hpp"
#include "kuniform/matrix_construct.hpp"
#include "kuniform/search.hpp"
#include "kuniform/state.hpp"

using namespace kuniform;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNotFound = 3;
constexpr int kExitFailed = 4;

struct Common {
  int workers = 1;
  std::uint64_t seed = 0;
  bool porcelain = false;
};

std::string basis_string(const Basis& c) {
  std::string s;
  for (int v : c) s += std::to_string(v);
  return s;
}

std::string cyc_string(const CycInt& a) {
  std::ostringstream out;
  bool first = true;
  for (int j = 0; j < a.level(); ++j) {
    const auto c = a.coeff(j);
    if (c == 0) continue;
    if (!first) out << (c > 0 ? " + " : " - ");
    else if (c < 0) out << '-';
    first = false;
    const auto mag = c < 0 ? -c : c;
    if (j == 0) {
      out << mag;
    } else {
      if (mag != 1) out << mag << '*';
      out << "z^" << j;
    }
  }
  if (first) out << '0';
  return out.str();
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error(ErrorKind::Parse, "cannot write " + path);
  f << text;
}

SearchMode parse_mode(const std::string& s) {
  if (s == "exhaustive") return SearchMode::Exhaustive;
  if (s == "random") return SearchMode::Random;
  throw Error(ErrorKind::Parse, "mode must be exhaustive or random");
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::HypothesisFailed:
    case ErrorKind::MalformedWitness:
    case ErrorKind::ViolatesConditionI:
      return kExitFailed;
    default:
      return kExitUsage;
  }
}

int run_search(int n, int d, int k, const std::string& mode, std::uint64_t budget_size, const Common& common,
               const std::string& out_path, const std::string& registry) {
  SearchBudget budget;
  budget.mode = parse_mode(mode);
  budget.seed = common.seed;
  budget.max_candidates = budget.mode == SearchMode::Exhaustive ? candidate_space(n, d) : budget_size;
  if (budget.mode == SearchMode::Exhaustive && budget.max_candidates > budget_size) {
    throw Error(ErrorKind::BudgetMalformed, "exhaustive space " + std::to_string(budget.max_candidates) +
                                                " exceeds --budget " + std::to_string(budget_size));
  }
  const auto result = search_witness(n, d, k, budget, common.workers);
  if (!result.witness) {
    if (result.exhaustive_negative) {
      std::cerr << "not found: all " << result.candidates
                << " candidates fail the certificate (exact for this construction only)\n";
    } else {
      std::cerr << "not found within budget (" << result.candidates << " candidates)\n";
    }
    return kExitNotFound;
  }
  std::ostringstream text;
  write_witness(text, *result.witness);
  emit(out_path, text.str());
  if (!registry.empty()) {
    std::ofstream reg(registry, std::ios::app);
    append_registry(reg, *result.witness);
  }
  if (!out_path.empty() && out_path != "-") {
    std::cout << "found at candidate " << *result.witness->provenance.candidate_index << " (" << result.candidates
              << " examined)\n";
  }
  return kExitOk;
}

void print_table(const std::vector<TableCell>& cells, int d, bool porcelain) {
  if (porcelain) {
    for (const auto& c : cells) {
      std::cout << d << ' ' << c.n << ' ' << c.best_k << ' ' << (2 * (c.best_k + 1) > c.n ? "max" : c.exhaustive_above ? "exhaustive" : "budget") << ' '
                << c.candidates << '\n';
    }
    return;
  }
  std::cout << std::left << std::setw(6) << "n" << std::setw(8) << "k" << "next k\n";
  for (const auto& c : cells) {
    std::cout << std::setw(6) << c.n << std::setw(8) << (">=" + std::to_string(c.best_k))
              << (2 * (c.best_k + 1) > c.n    ? "exceeds n/2"
                  : c.exhaustive_above ? "no witness (exhaustive, this construction only)"
                                       : "not found within budget")
              << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-uniform state construction and verification"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--workers", common.workers, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", common.seed, "seed for every random choice");
  app.add_flag("--porcelain", common.porcelain, "one machine-readable line per result");

  int n = 0, d = 0, k = 0, p = 0;
  std::string mode = "random", out_path, registry, state_path, code_path, witness_path, method = "oracle", rs;
  std::uint64_t budget = 10'000'000;
  std::optional<int> opt_k, opt_n;
  bool lambda = false;

  auto* cm = app.add_subcommand("construct-matrix", "search for a witness matrix and write it");
  cm->add_option("--n", n)->required()->check(CLI::Range(2, 32));
  cm->add_option("--d", d)->required()->check(CLI::Range(2, 1 << 20));
  cm->add_option("--k", k)->required()->check(CLI::PositiveNumber);
  cm->add_option("--mode", mode)->check(CLI::IsMember({"exhaustive", "random"}));
  cm->add_option("--budget", budget)->check(CLI::PositiveNumber);
  cm->add_option("--out", out_path);
  cm->add_option("--registry", registry, "append the witness here");

  auto* se = app.add_subcommand("search", "search and report candidate counts");
  se->add_option("--n", n)->required()->check(CLI::Range(2, 32));
  se->add_option("--d", d)->required()->check(CLI::Range(2, 1 << 20));
  se->add_option("--k", k)->required()->check(CLI::PositiveNumber);
  se->add_option("--mode", mode)->check(CLI::IsMember({"exhaustive", "random"}));
  se->add_option("--budget", budget)->check(CLI::PositiveNumber);
  se->add_option("--out", out_path);
  se->add_option("--registry", registry);

  int n_min = 2, n_max = 8;
  std::string from_registry;
  auto* tb = app.add_subcommand("table", "best k per n");
  tb->add_option("--d", d)->required()->check(CLI::Range(2, 1 << 20));
  tb->add_option("--n-min", n_min)->check(CLI::Range(2, 32));
  tb->add_option("--n-max", n_max)->check(CLI::Range(2, 32));
  tb->add_option("--budget", budget, "candidates per cell")->check(CLI::PositiveNumber);
  tb->add_option("--registry", registry, "append found witnesses here");
  tb->add_option("--from-registry", from_registry, "rebuild the table from a registry without searching");

  auto* ve = app.add_subcommand("verify", "check k-uniformity of a state file");
  ve->add_option("--state", state_path)->required();
  ve->add_option("--k", opt_k);
  ve->add_option("--method", method)->check(CLI::IsMember({"oracle"}));

  auto* bo = app.add_subcommand("bounds", "bound evaluations");
  bo->add_option("--p", p)->required();
  bo->add_option("--n", opt_n);
  bo->add_option("--k", opt_k);
  bo->add_flag("--lambda", lambda);

  auto* cc = app.add_subcommand("construct-code", "state from a linear code");
  cc->add_option("--code", code_path)->required();
  cc->add_option("--k", opt_k);
  cc->add_option("--out", out_path);

  int basis_seed = 0;
  auto* co = app.add_subcommand("concat", "expand a GF(p^r) code to a p-ary code");
  auto* co_code = co->add_option("--code", code_path);
  co->add_option("--rs", rs, "Reed-Solomon code \"p r n m\"")->excludes(co_code);
  co->add_option("--out", out_path);
  co->add_option("--basis-seed", basis_seed);

  auto* es = app.add_subcommand("emit-state", "render a witness or code as a state file");
  auto* es_w = es->add_option("--witness", witness_path);
  es->add_option("--code", code_path)->excludes(es_w);
  es->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*cm) return run_search(n, d, k, mode, budget, common, out_path, registry);
    if (*se) {
      if (out_path.empty()) out_path = "-";
      return run_search(n, d, k, mode, budget, common, out_path, registry);
    }
    if (*tb) {
      if (n_min > n_max) throw Error(ErrorKind::Range, "--n-min exceeds --n-max");
      std::vector<TableCell> cells;
      if (!from_registry.empty()) {
        std::ifstream in(from_registry);
        if (!in) throw Error(ErrorKind::Parse, "cannot open " + from_registry);
        cells = table_from_registry(read_registry(in), d);
      } else {
        std::ofstream reg;
        if (!registry.empty()) reg.open(registry, std::ios::app);
        cells = table_scan(d, n_min, n_max, budget, common.seed, common.workers, [&](const SymWitness& w) {
          if (reg.is_open()) append_registry(reg, w);
        });
      }
      print_table(cells, d, common.porcelain);
      return kExitOk;
    }
    if (*ve) {
      const PureState s = read_state_file(state_path);
      VerifyOptions opts;
      opts.workers = common.workers;
      if (!opt_k) {
        std::cout << "max k: " << max_uniformity(s, opts) << '\n';
        return kExitOk;
      }
      const auto report = verify_uniform(s, *opt_k, opts);
      std::cout << (report.uniform ? "uniform" : "not-uniform") << '\n';
      std::cout << "norm: " << (report.norm_value ? std::to_string(*report.norm_value) : cyc_string(report.norm))
                << '\n';
      if (!report.uniform) {
        if (report.failing_subset) {
          std::cout << "subset:";
          for (int q : *report.failing_subset) std::cout << ' ' << q + 1;
          std::cout << '\n';
        }
        if (report.failing_pair) {
          std::cout << "pair: " << basis_string(report.failing_pair->first) << ' '
                    << basis_string(report.failing_pair->second) << '\n';
        }
        if (!report.failure_reason.empty()) std::cout << "reason: " << report.failure_reason << '\n';
        return kExitFailed;
      }
      return kExitOk;
    }
    if (*bo) {
      if (opt_k && !opt_n) throw Error(ErrorKind::Range, "--k needs --n");
      const auto r = make_bound_report(p, opt_n, opt_k);
      if (r.np_lower_bound) {
        std::cout << "n: " << *r.n << "\nk: " << *r.k << "\np: " << p << '\n';
        std::cout << "np_lower_bound: " << *r.np_lower_bound << '\n';
        std::cout << "np_lower_bound_positive: " << (*r.np_lower_bound > 0 ? "yes" : "no") << '\n';
        std::cout << "counting_condition: " << (*r.counting_condition_holds ? "true" : "false") << '\n';
      }
      if (r.prime_threshold) {
        std::cout << "prime_threshold: " << *r.prime_threshold << '\n';
        std::cout << "prime_threshold_met: " << (p > 2 && BigInt(p) >= *r.prime_threshold ? "true" : "false") << '\n';
      }
      if (lambda || !opt_n) {
        std::cout << std::fixed;
        std::cout << "lambda_existence: " << std::setprecision(4) << round_places(r.lambda_existence, 4) << '\n';
        std::cout << "lambda_selfdual: " << std::setprecision(3) << round_places(r.lambda_selfdual, 3) << '\n';
        std::cout << "lambda_constructive: " << std::setprecision(3)
                  << round_places(r.lambda_constructive.value, 3) << " (t=" << r.lambda_constructive.t << ")\n";
        std::cout << "tolerance: " << std::scientific << std::setprecision(0) << r.tolerance << '\n';
      }
      return kExitOk;
    }
    if (*cc) {
      LinearCode c = read_code_file(code_path);
      const auto dist = compute_distances(c);
      const int certified = std::min(dist.min_dist, dist.dual_min_dist) - 1;
      std::cerr << "min distance " << dist.min_dist << ", dual distance " << dist.dual_min_dist << '\n';
      const int want = opt_k.value_or(certified);
      const PureState s = state_from_code(c, want);
      std::ostringstream text;
      write_state(text, s);
      emit(out_path, text.str());
      std::cerr << "certified k: " << want << ", kets: " << s.support() << '\n';
      return kExitOk;
    }
    if (*co) {
      std::optional<LinearCode> c;
      if (!rs.empty()) {
        std::istringstream in(rs);
        int rp = 0, rr = 0, rn = 0, rm = 0;
        if (!(in >> rp >> rr >> rn >> rm)) throw Error(ErrorKind::Parse, "--rs expects \"p r n m\"");
        c = reed_solomon(rp, rr, rn, rm);
      } else if (!code_path.empty()) {
        c = read_code_file(code_path);
      } else {
        throw Error(ErrorKind::Parse, "concat needs --code or --rs");
      }
      const ConcatMaps maps{find_trace_orthogonal_basis(c->p(), c->r(), static_cast<std::uint64_t>(basis_seed))};
      const LinearCode primal = expand_code(*c, maps, Expansion::Primal);
      const LinearCode dual = expand_code(dual_code(*c), maps, Expansion::DualWeighted);
      std::ostringstream text;
      write_code(text, primal);
      emit(out_path, text.str());
      const bool ok = same_code(dual_code(primal), dual);
      std::cerr << "duality check: " << (ok ? "pass" : "fail") << '\n';
      return ok ? kExitOk : kExitFailed;
    }
    if (*es) {
      PureState s = [&] {
        if (!witness_path.empty()) return state_from_matrix(read_witness_file(witness_path));
        if (!code_path.empty()) {
          LinearCode c = read_code_file(code_path);
          const auto dist = compute_distances(c);
          return state_from_code(c, std::max(0, std::min(dist.min_dist, dist.dual_min_dist) - 1));
        }
        throw Error(ErrorKind::Parse, "emit-state needs --witness or --code");
      }();
      std::ostringstream text;
      write_state(text, s);
      emit(out_path, text.str());
      return kExitOk;
    }
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
