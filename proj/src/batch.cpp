#include "phidescent/batch.hpp"

#include <algorithm>
#include <atomic>
#include <ostream>
#include <thread>

namespace phidescent {

std::vector<std::uint64_t> odd_primes_below(std::uint64_t bound) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 3; p < bound; p += 2) {
    if (is_prime(p)) out.push_back(p);
  }
  return out;
}

std::vector<FactoredD> enumerate_d(std::uint64_t prime_bound, std::size_t n_max) {
  const auto primes = odd_primes_below(prime_bound);
  struct Entry {
    std::uint64_t value;
    std::vector<std::uint64_t> primes;
  };
  std::vector<Entry> entries;
  std::vector<std::uint64_t> chosen;
  // Depth-first over increasing prime indices.
  auto visit = [&](auto&& self, std::size_t start, std::uint64_t value) -> void {
    for (std::size_t i = start; i < primes.size(); ++i) {
      std::uint64_t next;
      if (__builtin_mul_overflow(value, primes[i], &next) || next > INT64_MAX) {
        throw std::overflow_error("D exceeds 63 bits in sieve enumeration");
      }
      chosen.push_back(primes[i]);
      entries.push_back({next, chosen});
      if (chosen.size() < n_max) self(self, i + 1, next);
      chosen.pop_back();
    }
  };
  if (n_max > 0) visit(visit, 0, 1);
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.value < b.value; });
  std::vector<FactoredD> out;
  out.reserve(entries.size());
  for (auto& e : entries) out.emplace_back(std::move(e.primes));
  return out;
}

SieveStats run_sieve(const SieveOptions& options, std::ostream& out) {
  if (options.prime_bound < 3) throw std::invalid_argument("prime bound must be at least 3");
  if (options.n_max < 1) throw std::invalid_argument("n_max must be at least 1");
  const auto ds = enumerate_d(options.prime_bound, options.n_max);
  const std::size_t workers = std::max<std::size_t>(1, options.parallel);
  constexpr std::size_t kBlock = 4096;

  SieveStats stats;
  if (options.format == Format::csv) write_csv_header(out, options.with_members);

  std::vector<std::optional<SieveRecord>> block;
  for (std::size_t begin = 0; begin < ds.size(); begin += kBlock) {
    const std::size_t end = std::min(ds.size(), begin + kBlock);
    block.assign(end - begin, std::nullopt);
    std::atomic<std::size_t> next{begin};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto work = [&] {
      for (std::size_t i = next++; i < end && !failed; i = next++) {
        try {
          block[i - begin] = make_record(ds[i], options.with_members);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    };
    if (workers == 1) {
      work();
    } else {
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);

    for (const auto& rec : block) {
      ++stats.analyzed;
      const auto& flags = rec->report.flags;
      stats.rank0 += flags.rank0;
      stats.rank1_conditional += flags.rank1_conditional;
      if (options.flagged_only && !flags.rank0 && !flags.rank1_conditional) continue;
      write_record(out, *rec, options.format);
      ++stats.emitted;
    }
  }
  return stats;
}

std::string Mismatch::describe() const {
  std::string s = "D = " + D + ", " + family + ": " + what;
  if (d) s += " at d = " + std::to_string(*d);
  return s;
}

std::optional<Mismatch> crosscheck_one(const FactoredD& ctx) {
  SymbolTables tables(ctx);
  const DescentReport report = analyze(ctx);
  for (CurveFamily family : kAllFamilies) {
    auto mismatch = [&](std::string what, std::optional<std::int64_t> d = std::nullopt) {
      return Mismatch{ctx.value_string(), family.name(), std::move(what), d};
    };
    SelmerGroup oracle = oracle_subgroup_selmer(family, ctx);
    for (const auto& d : enumerate_subgroup(ctx, family.restricted_subgroup())) {
      if (fast_member(family, d, tables) != oracle.contains(d)) {
        return mismatch("membership predicate disagrees with oracle", representative(d, ctx));
      }
    }
    if (fast_subgroup_selmer(family, tables).members != oracle.members) {
      return mismatch("restricted group differs from oracle");
    }
    SelmerGroup oracle_full = oracle_full_selmer(family, ctx);
    if (fast_full_selmer(family, tables).members != oracle_full.members) {
      return mismatch("full group differs from oracle");
    }
    if (report.dims.of(family) != oracle_full.dim) {
      return mismatch("rank-based size 2^" + std::to_string(report.dims.of(family)) +
                      " != oracle size 2^" + std::to_string(oracle_full.dim));
    }
  }
  return std::nullopt;
}

CrosscheckSummary crosscheck(std::uint64_t prime_bound, std::size_t n_max) {
  if (n_max > kDefaultOracleBound) {
    throw std::invalid_argument("crosscheck n_max " + std::to_string(n_max) +
                                " exceeds oracle bound " + std::to_string(kDefaultOracleBound));
  }
  CrosscheckSummary summary;
  for (const auto& ctx : enumerate_d(prime_bound, n_max)) {
    ++summary.tested;
    if (auto m = crosscheck_one(ctx)) {
      summary.first_mismatch = std::move(m);
      break;
    }
  }
  return summary;
}

}  // namespace phidescent
