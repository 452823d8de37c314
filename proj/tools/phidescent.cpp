// phidescent: phi-Selmer groups, Tamagawa ratios and rank sieving for
// y^2 = x^3 +- 2Dx.

#include <CLI11.hpp>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "phidescent/batch.hpp"
#include "phidescent/tables.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitInvariant = 2;
constexpr int kExitMismatch = 3;

struct Output {
  std::unique_ptr<std::ofstream> file;
  std::ostream* stream = &std::cout;

  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file = std::make_unique<std::ofstream>(path);
    if (!*file) throw std::invalid_argument("cannot open output file: " + path);
    stream = file.get();
  }
};

struct AnalyzeArgs {
  std::vector<std::uint64_t> primes;
  std::vector<int> exponents;
  bool members = false;
  std::string format = "text";
  std::string out;
};

struct SieveArgs {
  std::uint64_t prime_bound = 100;
  std::size_t n_max = 3;
  std::string format = "csv";
  std::string out;
  bool flagged_only = false;
  bool members = false;
  std::size_t parallel = 1;
};

struct CrosscheckArgs {
  std::uint64_t prime_bound = 30;
  std::size_t n_max = 2;
};

int run_analyze(const AnalyzeArgs& args) {
  phidescent::FactoredD ctx(args.primes, args.exponents);
  const auto format = phidescent::parse_format(args.format);
  Output out(args.out);
  auto record = phidescent::make_record(ctx, args.members);
  if (format == phidescent::Format::csv) phidescent::write_csv_header(*out.stream, args.members);
  phidescent::write_record(*out.stream, record, format);
  return 0;
}

int run_sieve(const SieveArgs& args) {
  phidescent::SieveOptions options;
  options.prime_bound = args.prime_bound;
  options.n_max = args.n_max;
  options.format = phidescent::parse_format(args.format);
  options.flagged_only = args.flagged_only;
  options.with_members = args.members;
  options.parallel = args.parallel;
  Output out(args.out);
  auto stats = phidescent::run_sieve(options, *out.stream);
  std::cerr << "analyzed " << stats.analyzed << " values of D, emitted " << stats.emitted
            << " (rank0 " << stats.rank0 << ", rank1 conditional-BSD "
            << stats.rank1_conditional << ")\n";
  return 0;
}

int run_crosscheck(const CrosscheckArgs& args) {
  auto summary = phidescent::crosscheck(args.prime_bound, args.n_max);
  if (summary.first_mismatch) {
    std::cout << "mismatch after " << summary.tested
              << " values of D: " << summary.first_mismatch->describe() << '\n';
    return kExitMismatch;
  }
  std::cout << "all agree: " << summary.tested << " values of D tested\n";
  return 0;
}

int run_verify_tables(std::uint64_t max_prime) {
  std::size_t passed = 0;
  auto results = phidescent::verify_tables(max_prime);
  for (const auto& r : results) {
    const auto& pr = r.printed;
    std::cout << "table " << r.table << " row " << (r.row + 1) << " (" << pr.p_mod8 << ","
              << pr.q_mod8 << "," << pr.p_over_q << "," << pr.q_over_p << ")";
    if (r.witness) std::cout << " p=" << r.witness->first << " q=" << r.witness->second;
    std::cout << ": " << phidescent::to_string(r.status);
    if (!r.detail.empty()) std::cout << " - " << r.detail;
    std::cout << '\n';
    if (r.status == phidescent::RowStatus::pass ||
        r.status == phidescent::RowStatus::pass_with_erratum) {
      ++passed;
    }
  }
  std::cout << passed << "/" << results.size() << " rows pass\n";
  return passed == results.size() ? 0 : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"phi-Selmer groups and rank sieving for y^2 = x^3 +- 2Dx"};
  app.require_subcommand(1);

  AnalyzeArgs analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Full report for one D");
  analyze_cmd->add_option("--primes", analyze.primes, "Distinct odd primes dividing D")
      ->required()
      ->delimiter(',');
  analyze_cmd->add_option("--exponents", analyze.exponents, "Exponents (1 or 3), default all 1")
      ->delimiter(',');
  analyze_cmd->add_flag("--members", analyze.members, "List every Selmer group element");
  analyze_cmd->add_option("--format", analyze.format, "csv, json or text")
      ->check(CLI::IsMember({"csv", "json", "text"}));
  analyze_cmd->add_option("--out", analyze.out, "Output path (default stdout)");

  SieveArgs sieve;
  auto* sieve_cmd = app.add_subcommand("sieve", "Analyze every squarefree D in a range");
  sieve_cmd->add_option("--prime-bound", sieve.prime_bound, "Use odd primes below this bound")
      ->check(CLI::Range(std::uint64_t{3}, std::uint64_t{1} << 40));
  sieve_cmd->add_option("--n-max", sieve.n_max, "Largest number of prime factors")
      ->check(CLI::Range(std::size_t{1}, std::size_t{64}));
  sieve_cmd->add_option("--format", sieve.format, "csv, json or text")
      ->check(CLI::IsMember({"csv", "json", "text"}));
  sieve_cmd->add_option("--out", sieve.out, "Output path (default stdout)");
  sieve_cmd->add_flag("--flagged-only", sieve.flagged_only, "Only rank-0 / rank-1 rows");
  sieve_cmd->add_flag("--members", sieve.members, "List every Selmer group element");
  sieve_cmd->add_option("--parallel", sieve.parallel, "Worker threads")
      ->check(CLI::Range(std::size_t{1}, std::size_t{1024}));

  CrosscheckArgs cross;
  auto* cross_cmd = app.add_subcommand("crosscheck", "Compare fast path against the oracle");
  cross_cmd->add_option("--prime-bound", cross.prime_bound, "Use odd primes below this bound")
      ->check(CLI::Range(std::uint64_t{3}, std::uint64_t{1} << 40));
  cross_cmd->add_option("--n-max", cross.n_max, "Largest number of prime factors")
      ->check(CLI::Range(std::size_t{1}, phidescent::kDefaultOracleBound));

  std::uint64_t max_prime = 500;
  auto* tables_cmd =
      app.add_subcommand("verify-tables", "Reproduce the n = 2 Selmer group tables");
  tables_cmd->add_option("--max-prime", max_prime, "Search witnesses below this bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*analyze_cmd) return run_analyze(analyze);
    if (*sieve_cmd) return run_sieve(sieve);
    if (*cross_cmd) return run_crosscheck(cross);
    if (*tables_cmd) return run_verify_tables(max_prime);
  } catch (const phidescent::InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
