#include "pnpair/report_json.hpp"

#include <cstdio>
#include <sstream>

#include "pnpair/errors.hpp"

namespace pnpair {

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

json counts_json(const FlagCounts& f) {
  return {{"yx", f.yx}, {"yx2", f.yx2}, {"excluded_matrix", f.excluded_matrix}};
}

FlagCounts counts_from(const json& j) {
  return {j.at("yx").get<std::uint64_t>(), j.at("yx2").get<std::uint64_t>(),
          j.at("excluded_matrix").get<std::uint64_t>()};
}

}  // namespace

json rational_json(const mpq_class& v) {
  return {{"num", v.get_num().get_str()}, {"den", v.get_den().get_str()}, {"approx", v.get_d()}};
}

json factorization_json(const IntFactorization& f) {
  json primes = json::array();
  for (const auto& pp : f.primes()) primes.push_back({{"p", pp.prime.get_str()}, {"e", pp.exponent}});
  return {{"value", f.value().get_str()}, {"primes", primes}, {"omega", f.omega()}, {"W", f.W().get_str()}};
}

json xm_json(const XmStructure& s) {
  mpz_class q;
  mpz_ui_pow_ui(q.get_mpz_t(), 2, s.k);
  return {{"q", q.get_str()},
          {"m", s.m},
          {"m_prime", s.m_prime},
          {"a", s.a},
          {"multiplicity", s.multiplicity},
          {"u", s.u},
          {"degrees", s.degrees},
          {"omega_xm", omega_xm(s).get_str()},
          {"sigma", rational_json(sigma(s))}};
}

json field_json(const FieldCtx& ctx) {
  return {{"k", ctx.k()},
          {"m", ctx.m()},
          {"n", ctx.n()},
          {"q", std::to_string(ctx.q())},
          {"modulus", modulus_to_string(ctx.modulus())},
          {"group_order", std::to_string(ctx.group_order())},
          {"group_order_factors", factorization_json(ctx.group_order_factors())},
          {"primitive", elem_to_hex(ctx.find_primitive())}};
}

json plain_json(const PlainCondition& pc) {
  return {{"lhs_squared", pc.lhs_squared.get_str()},
          {"lhs", pc.lhs_approx},
          {"rhs", pc.rhs.get_str()},
          {"rhs_approx", pc.rhs_approx},
          {"passes", pc.passes}};
}

json sieve_json(const SieveChoice& c, const SieveEvaluation& ev) {
  json rem = json::array();
  for (const auto& p : c.remaining_primes) rem.push_back(p.get_str());
  json j = {{"k", ev.k},
            {"m", ev.m},
            {"d", c.d.get_str()},
            {"W_d", ev.W_d.get_str()},
            {"remaining_primes", rem},
            {"n", ev.n},
            {"g_degrees", c.g_degrees},
            {"Omega_g", ev.Omega_g.get_str()},
            {"remaining_degrees", c.remaining_degrees},
            {"k_remaining", ev.r},
            {"theta", rational_json(ev.theta)},
            {"theta_positive", ev.theta_positive},
            {"lhs", ev.lhs_approx},
            {"passes", ev.passes}};
  if (ev.theta_positive) {
    j["S"] = rational_json(ev.S);
    j["rhs"] = rational_json(ev.rhs);
  } else {
    j["S"] = nullptr;
    j["rhs"] = nullptr;
  }
  return j;
}

json lemma56_json(const Lemma56Report& r) {
  json j = {{"applicable", r.applicable}, {"m_prime", r.m_prime}, {"u", r.u}};
  if (r.applicable) {
    j["theta"] = rational_json(r.params.theta);
    j["S"] = r.params.theta_positive ? rational_json(r.params.S) : json(nullptr);
    j["holds"] = r.holds;
  }
  return j;
}

json quintuple_json(const RationalMap& f) {
  return json::array({elem_to_hex(f.a), elem_to_hex(f.b), elem_to_hex(f.c), elem_to_hex(f.d), elem_to_hex(f.e)});
}

json flags_json(const DegeneracyFlags& f) {
  return {{"is_yx", f.is_yx}, {"is_yx2", f.is_yx2}, {"is_excluded_matrix", f.is_excluded_matrix}};
}

json search_json(const SearchReport& r) {
  json list = json::array();
  for (const ExceptionalEntry& e : r.exceptional_list)
    list.push_back({{"index", e.index}, {"quintuple", quintuple_json(e.q5)}, {"flags", flags_json(e.flags)}});
  json j = {{"k", r.k},
            {"m", r.m},
            {"q", std::to_string(std::uint64_t{1} << r.k)},
            {"modulus", modulus_to_string(r.modulus)},
            {"alpha", elem_to_hex(r.alpha)},
            {"mode", r.exhaustive ? "exhaustive" : "sampled"},
            {"checked", r.checked},
            {"exceptional", r.exceptional},
            {"flagged_checked", counts_json(r.flagged_checked)},
            {"flagged_exceptional", counts_json(r.flagged_exceptional)},
            {"shard", {{"index", r.shard_index + 1}, {"total", r.shard_total}}},
            {"complete", r.complete},
            {"exceptional_list", list}};
  if (r.seed) j["rng_seed"] = *r.seed;
  if (!r.exhaustive) j["budget"] = r.budget;
  return j;
}

SearchReport search_from_json(const json& j) {
  SearchReport r;
  try {
    r.k = j.at("k").get<unsigned>();
    r.m = j.at("m").get<unsigned>();
    r.modulus = parse_modulus(j.at("modulus").get<std::string>());
    r.alpha = elem_from_hex(j.at("alpha").get<std::string>());
    r.exhaustive = j.at("mode").get<std::string>() == "exhaustive";
    r.checked = j.at("checked").get<std::uint64_t>();
    r.exceptional = j.at("exceptional").get<std::uint64_t>();
    r.flagged_checked = counts_from(j.at("flagged_checked"));
    r.flagged_exceptional = counts_from(j.at("flagged_exceptional"));
    r.shard_index = j.at("shard").at("index").get<unsigned>() - 1;
    r.shard_total = j.at("shard").at("total").get<unsigned>();
    r.complete = j.at("complete").get<bool>();
    if (j.contains("rng_seed")) r.seed = j.at("rng_seed").get<std::uint64_t>();
    if (j.contains("budget")) r.budget = j.at("budget").get<std::uint64_t>();
    for (const json& e : j.at("exceptional_list")) {
      ExceptionalEntry x;
      x.index = e.at("index").get<std::uint64_t>();
      const json& q = e.at("quintuple");
      x.q5 = {elem_from_hex(q.at(0).get<std::string>()), elem_from_hex(q.at(1).get<std::string>()),
              elem_from_hex(q.at(2).get<std::string>()), elem_from_hex(q.at(3).get<std::string>()),
              elem_from_hex(q.at(4).get<std::string>())};
      const json& f = e.at("flags");
      x.flags = {f.at("is_yx").get<bool>(), f.at("is_yx2").get<bool>(), f.at("is_excluded_matrix").get<bool>()};
      r.exceptional_list.push_back(x);
    }
  } catch (const json::exception& e) {
    fail(Errc::InvalidArgument, std::string("malformed search report: ") + e.what());
  }
  return r;
}

json table_json(const TableReport& t) {
  json rows = json::array();
  for (const RowReport& r : t.rows) {
    json row = {{"q", r.row.q_text},
                {"m", r.row.m},
                {"d", r.row.d},
                {"g", r.row.g},
                {"n_paper", r.row.n_paper},
                {"n", r.n_calc},
                {"k_paper", r.row.k_paper},
                {"k", r.k_calc},
                {"S_paper", r.row.S_paper},
                {"lhs_paper", r.row.lhs_paper},
                {"rhs_paper", r.row.rhs_paper},
                {"theta", rational_json(r.eval.theta)},
                {"lhs", r.eval.lhs_approx},
                {"matches_paper_n", r.n_matches},
                {"matches_paper_k", r.k_matches},
                {"matches_paper_S", r.matches_S},
                {"matches_paper_rhs", r.matches_rhs},
                {"condition_passes", r.condition_passes},
                {"flagged", r.flagged()},
                {"notes", r.notes}};
    row["S"] = r.eval.theta_positive ? rational_json(r.eval.S) : json(nullptr);
    row["rhs"] = r.eval.theta_positive ? rational_json(r.eval.rhs) : json(nullptr);
    rows.push_back(std::move(row));
  }
  return {{"table", t.table_id},
          {"rows", rows},
          {"summary",
           {{"rows", t.rows.size()},
            {"matched_S", t.matched_S},
            {"matched_rhs", t.matched_rhs},
            {"condition_passes", t.passing},
            {"flagged", t.flagged}}}};
}

std::string table_csv(const TableReport& t) {
  std::ostringstream out;
  out << "table,q,m,d,g,n_paper,n,k_paper,k,S_paper,S,rhs_paper,rhs,matches_S,matches_rhs,condition_passes,flagged,"
         "notes\n";
  for (const RowReport& r : t.rows) {
    std::string notes;
    for (const std::string& n : r.notes) notes += (notes.empty() ? "" : "; ") + n;
    out << t.table_id << ',' << r.row.q_text << ',' << r.row.m << ',' << csv_cell(r.row.d) << ','
        << csv_cell(r.row.g) << ',' << r.row.n_paper << ',' << r.n_calc << ',' << r.row.k_paper << ',' << r.k_calc
        << ',' << r.row.S_paper << ',' << (r.eval.theta_positive ? fmt_double(r.eval.S_approx) : "inf") << ','
        << r.row.rhs_paper << ',' << (r.eval.theta_positive ? fmt_double(r.eval.rhs_approx) : "inf") << ','
        << r.matches_S << ',' << r.matches_rhs << ',' << r.condition_passes << ',' << r.flagged() << ','
        << csv_cell(notes) << '\n';
  }
  return out.str();
}

json reproduce_all_json(const ReproduceAllReport& r) {
  json exc = json::array();
  for (const ExceptionCheck& c : r.exceptions) {
    json e = plain_json(c.plain);
    e["theorem"] = c.pair.theorem;
    e["q"] = std::to_string(std::uint64_t{1} << c.pair.k);
    e["m"] = c.pair.m;
    exc.push_back(std::move(e));
  }
  json s3231 = {{"order_factors", factorization_json(r.order_32_31)}, {"passes", r.sieve_32_31.has_value()}};
  if (r.sieve_32_31) s3231["choice"] = sieve_json(r.sieve_32_31->choice, r.sieve_32_31->eval);
  return {{"table1", table_json(r.table1)},
          {"table2", table_json(r.table2)},
          {"exceptions", exc},
          {"exceptions_failing_plain", r.exceptions_failing_plain},
          {"exceptions_total", r.exceptions.size()},
          {"q32_m31", s3231}};
}

json wbound_json(const WBoundReport& r) {
  json v = json::array();
  for (const WBoundViolation& x : r.violations) v.push_back({{"n", x.n}, {"omega", x.omega}});
  return {{"n_max", r.n_max},
          {"root", r.root},
          {"constant", r.constant},
          {"odd_only", r.odd_only},
          {"checked", r.checked},
          {"violations", r.violation_count},
          {"first_violations", v},
          {"max_ratio", r.max_ratio},
          {"argmax", r.argmax}};
}

}  // namespace pnpair
