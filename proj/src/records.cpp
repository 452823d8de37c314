#include "phidescent/records.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <ostream>
#include <sstream>

namespace phidescent {

Format parse_format(const std::string& name) {
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  if (name == "text") return Format::text;
  throw std::invalid_argument("unknown format: " + name);
}

SieveRecord make_record(const FactoredD& ctx, bool with_members) {
  SieveRecord record{analyze(ctx), std::nullopt};
  if (with_members) {
    if (ctx.n() > kMemberListBound) {
      throw std::length_error("member listing supports n <= " + std::to_string(kMemberListBound));
    }
    SymbolTables tables(ctx);
    record.members = std::array<SelmerGroup, 4>{
        fast_full_selmer(kEMinus, tables), fast_full_selmer(kEMinusPrime, tables),
        fast_full_selmer(kEPlus, tables), fast_full_selmer(kEPlusPrime, tables)};
  }
  return record;
}

namespace {

std::string pow2_string(std::size_t dim) {
  boost::multiprecision::cpp_int v = 1;
  v <<= dim;
  return v.str();
}

const char* bool_string(bool b) { return b ? "true" : "false"; }

std::string join_members(const SelmerGroup& g, char sep) {
  std::string s;
  for (auto v : g.representatives()) {
    if (!s.empty()) s += sep;
    s += std::to_string(v);
  }
  return s;
}

constexpr std::array<const char*, 4> kMemberKeys{"S_minus", "Sprime_minus", "S_plus",
                                                 "Sprime_plus"};

}  // namespace

std::string primes_field(const FactoredD& ctx) {
  std::string s;
  for (std::size_t i = 0; i < ctx.n(); ++i) {
    if (i) s += ';';
    s += std::to_string(ctx.prime(i).value());
    if (ctx.exponent(i) != 1) s += "^" + std::to_string(ctx.exponent(i));
  }
  return s;
}

void write_csv_header(std::ostream& out, bool with_members) {
  out << "D,n,primes,rank_X,rank_Y,size_S_minus,size_Sprime_minus,size_S_plus,size_Sprime_plus,"
         "t_minus,t_plus,dimsum_minus,dimsum_plus,rank0,rank1_conditional,notes";
  if (with_members) {
    for (const char* key : kMemberKeys) out << ",members_" << key;
  }
  out << '\n';
}

void write_csv_row(std::ostream& out, const SieveRecord& record) {
  const DescentReport& r = record.report;
  out << r.ctx.value_string() << ',' << r.ctx.n() << ',' << primes_field(r.ctx) << ','
      << r.rank_X << ',' << r.rank_Y << ',' << pow2_string(r.dims.s_minus) << ','
      << pow2_string(r.dims.s_minus_prime) << ',' << pow2_string(r.dims.s_plus) << ','
      << pow2_string(r.dims.s_plus_prime) << ',' << r.tamagawa.minus.t << ','
      << r.tamagawa.plus.t << ',' << r.dimsum.minus << ',' << r.dimsum.plus << ','
      << bool_string(r.flags.rank0) << ',' << bool_string(r.flags.rank1_conditional) << ','
      << (r.flags.rank1_conditional ? kConditionalNote : "");
  if (record.members) {
    for (const auto& g : *record.members) out << ',' << join_members(g, ' ');
  }
  out << '\n';
}

nlohmann::ordered_json to_json(const SieveRecord& record) {
  const DescentReport& r = record.report;
  nlohmann::ordered_json j;
  if (auto v = r.ctx.value()) {
    j["D"] = *v;
  } else {
    j["D"] = r.ctx.value_string();
  }
  j["n"] = r.ctx.n();
  nlohmann::ordered_json primes = nlohmann::ordered_json::array();
  for (const auto& p : r.ctx.primes()) primes.push_back(p.value());
  j["primes"] = primes;
  j["exponents"] = r.ctx.exponents();
  j["rank_X"] = r.rank_X;
  j["rank_Y"] = r.rank_Y;
  auto size_value = [](std::size_t dim) -> nlohmann::ordered_json {
    if (dim < 64) return pow2(dim);
    return pow2_string(dim);
  };
  j["size_S_minus"] = size_value(r.dims.s_minus);
  j["size_Sprime_minus"] = size_value(r.dims.s_minus_prime);
  j["size_S_plus"] = size_value(r.dims.s_plus);
  j["size_Sprime_plus"] = size_value(r.dims.s_plus_prime);
  j["t_minus"] = r.tamagawa.minus.t;
  j["t_plus"] = r.tamagawa.plus.t;
  j["dimsum_minus"] = r.dimsum.minus;
  j["dimsum_plus"] = r.dimsum.plus;
  j["rank0"] = r.flags.rank0;
  j["rank1_conditional"] = r.flags.rank1_conditional;
  j["notes"] = r.flags.rank1_conditional ? kConditionalNote : "";
  if (record.members) {
    nlohmann::ordered_json m;
    for (std::size_t k = 0; k < 4; ++k) m[kMemberKeys[k]] = (*record.members)[k].representatives();
    j["members"] = m;
  }
  return j;
}

void write_text(std::ostream& out, const SieveRecord& record) {
  const DescentReport& r = record.report;
  out << "D = " << r.ctx.value_string() << " (n = " << r.ctx.n() << ", primes "
      << primes_field(r.ctx) << ")\n"
      << "  rank(X) = " << r.rank_X << ", rank(Y) = " << r.rank_Y << '\n'
      << "  |S(E-)| = " << pow2_string(r.dims.s_minus)
      << ", |S(E'-)| = " << pow2_string(r.dims.s_minus_prime)
      << ", |S(E+)| = " << pow2_string(r.dims.s_plus)
      << ", |S(E'+)| = " << pow2_string(r.dims.s_plus_prime) << '\n'
      << "  T_2D = " << r.tamagawa.minus.to_string() << " (t = " << r.tamagawa.minus.t << ")"
      << ", T_-2D = " << r.tamagawa.plus.to_string() << " (t = " << r.tamagawa.plus.t << ")\n"
      << "  rank + dim Sha[phi] sums: E- " << r.dimsum.minus << ", E+ " << r.dimsum.plus << '\n'
      << "  y^2 = x^3 + 2Dx rank 0: " << (r.flags.rank0 ? "yes" : "not determined") << '\n'
      << "  y^2 = x^3 - 2Dx rank 1: "
      << (r.flags.rank1_conditional ? std::string("yes (") + kConditionalNote + ")"
                                    : std::string("not determined"))
      << '\n';
  if (record.members) {
    const std::array<const char*, 4> labels{"S(E-) ", "S(E'-)", "S(E+) ", "S(E'+)"};
    for (std::size_t k = 0; k < 4; ++k) {
      out << "  " << labels[k] << " = {" << join_members((*record.members)[k], ',') << "}\n";
    }
  }
}

void write_record(std::ostream& out, const SieveRecord& record, Format format) {
  switch (format) {
    case Format::csv:
      write_csv_row(out, record);
      break;
    case Format::json:
      out << to_json(record).dump() << '\n';
      break;
    case Format::text:
      write_text(out, record);
      break;
  }
}

}  // namespace phidescent
