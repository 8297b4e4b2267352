#pragma once

#include "hilbstrat/motivic.hpp"
#include "hilbstrat/partitions.hpp"
#include "hilbstrat/relations.hpp"
#include "hilbstrat/stratum.hpp"

#include <json.hpp>

namespace hilbstrat {

using json = nlohmann::json;

/// Integers that fit in int64 are written as numbers, larger ones as strings.
json bigint_to_json(const BigInt& v);
BigInt bigint_from_json(const json& j);

/// {"m": int, "entries": [[[r1,...,rm], value], ...]}, support sorted lex.
json partition_to_json(const MDPartition& lambda);
/// Validates; throws InvalidPartition (or a subclass) on bad input.
MDPartition partition_from_json(const json& j);

json monomial_to_json(const Monomial& mono);
json coeff_var_to_json(const CoeffVar& v, VarId id);

/// {"variables": [...], "relations": [[[coeff, [varid, ...]], ...], ...]}.
json relation_system_to_json(const RelationSystem& sys);
json poly_to_json(const Poly& p);
Poly poly_from_json(const json& j);

json residual_to_json(const ResidualSystem& res);
ResidualSystem residual_from_json(const json& j);

/// Coefficients ascending in L.
json motivic_poly_to_json(const MotivicPoly& p);
MotivicPoly motivic_poly_from_json(const json& j);

/// {"N": int, "coeffs": [[int, ...], ...]}.
json series_to_json(const MotivicSeries& s);
MotivicSeries series_from_json(const json& j);

json stratum_result_to_json(const StratumResult& r);
StratumResult stratum_result_from_json(const json& j);

} // namespace hilbstrat
