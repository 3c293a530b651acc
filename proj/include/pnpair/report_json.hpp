#pragma once

#include <string>

#include <gmpxx.h>
#include <json.hpp>

#include "pnpair/arith_factor.hpp"
#include "pnpair/bounds_sieve.hpp"
#include "pnpair/freeness.hpp"
#include "pnpair/pair_search.hpp"
#include "pnpair/poly_structure.hpp"
#include "pnpair/tables.hpp"

namespace pnpair {

using nlohmann::json;

// Big integers travel as decimal strings, rationals as {num, den, approx}.
json rational_json(const mpq_class& v);
json factorization_json(const IntFactorization& f);
json xm_json(const XmStructure& s);
json field_json(const FieldCtx& ctx);
json plain_json(const PlainCondition& pc);
json sieve_json(const SieveChoice& c, const SieveEvaluation& ev);
json lemma56_json(const Lemma56Report& r);
json quintuple_json(const RationalMap& f);
json flags_json(const DegeneracyFlags& f);
json search_json(const SearchReport& r);
SearchReport search_from_json(const json& j);
json table_json(const TableReport& t);
std::string table_csv(const TableReport& t);
json reproduce_all_json(const ReproduceAllReport& r);
json wbound_json(const WBoundReport& r);

}  // namespace pnpair
