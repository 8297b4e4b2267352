#include "hilbstrat/serialize.hpp"

#include "hilbstrat/errors.hpp"

#include <limits>

namespace hilbstrat {

json bigint_to_json(const BigInt& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
        return static_cast<std::int64_t>(v);
    return v.str();
}

BigInt bigint_from_json(const json& j) {
    if (j.is_string())
        return BigInt(j.get<std::string>());
    if (j.is_number_unsigned())
        return BigInt(j.get<std::uint64_t>());
    return BigInt(j.get<std::int64_t>());
}

json partition_to_json(const MDPartition& lambda) {
    json entries = json::array();
    for (const auto& [r, v] : lambda.entries())
        entries.push_back(json::array({r, v}));
    return {{"m", lambda.dim()}, {"entries", entries}};
}

MDPartition partition_from_json(const json& j) {
    try {
        const int m = j.at("m").get<int>();
        std::vector<std::pair<Index, int>> raw;
        for (const auto& e : j.at("entries")) {
            if (!e.is_array() || e.size() != 2)
                throw InvalidPartition("each entry must be [[r1,...,rm], value]");
            raw.emplace_back(e[0].get<Index>(), e[1].get<int>());
        }
        return validate_partition(m, raw);
    } catch (const json::exception& ex) {
        throw InvalidPartition(std::string("malformed partition JSON: ") + ex.what());
    }
}

json monomial_to_json(const Monomial& mono) { return mono.exps; }

json coeff_var_to_json(const CoeffVar& v, VarId id) {
    return {{"id", id},
            {"name", v.name()},
            {"border_index", v.border_index},
            {"target_index", v.target_index},
            {"border", monomial_to_json(v.border)},
            {"target", monomial_to_json(v.target)}};
}

namespace {

CoeffVar coeff_var_from_json(const json& j) {
    CoeffVar v;
    v.border_index = j.at("border_index").get<std::size_t>();
    v.target_index = j.at("target_index").get<std::size_t>();
    v.border.exps = j.at("border").get<std::vector<int>>();
    v.target.exps = j.at("target").get<std::vector<int>>();
    return v;
}

json variables_to_json(const std::vector<CoeffVar>& vars) {
    json out = json::array();
    for (std::size_t i = 0; i < vars.size(); ++i)
        out.push_back(coeff_var_to_json(vars[i], static_cast<VarId>(i)));
    return out;
}

std::vector<CoeffVar> variables_from_json(const json& j) {
    std::vector<CoeffVar> out;
    for (const auto& v : j)
        out.push_back(coeff_var_from_json(v));
    return out;
}

} // namespace

json poly_to_json(const Poly& p) {
    json out = json::array();
    for (const auto& [t, c] : p.terms())
        out.push_back(json::array({c, t}));
    return out;
}

Poly poly_from_json(const json& j) {
    Poly p;
    for (const auto& term : j)
        p.add_term(term.at(1).get<Term>(), term.at(0).get<std::int64_t>());
    return p;
}

json relation_system_to_json(const RelationSystem& sys) {
    json rels = json::array();
    for (const Poly& p : sys.relations)
        rels.push_back(poly_to_json(p));
    return {{"variables", variables_to_json(sys.variables)}, {"relations", rels}};
}

json residual_to_json(const ResidualSystem& res) {
    json rels = json::array();
    for (const Poly& p : res.residual_relations)
        rels.push_back(poly_to_json(p));
    json subs = json::array();
    for (const auto& s : res.substitutions)
        subs.push_back({{"var", s.var}, {"value", poly_to_json(s.value)}});
    return {{"variables", variables_to_json(res.variables)},
            {"residual_vars", res.residual_vars},
            {"residual_relations", rels},
            {"substitutions", subs},
            {"pure_free", res.pure_free},
            {"eliminated_count", res.eliminated_count()},
            {"pure_free_count", res.pure_free_count()},
            {"inconsistent", res.inconsistent},
            {"affine", res.affine()}};
}

ResidualSystem residual_from_json(const json& j) {
    ResidualSystem res;
    res.variables = variables_from_json(j.at("variables"));
    res.residual_vars = j.at("residual_vars").get<std::vector<VarId>>();
    for (const auto& p : j.at("residual_relations"))
        res.residual_relations.push_back(poly_from_json(p));
    for (const auto& s : j.at("substitutions"))
        res.substitutions.push_back({s.at("var").get<VarId>(), poly_from_json(s.at("value"))});
    res.pure_free = j.at("pure_free").get<std::vector<VarId>>();
    res.inconsistent = j.at("inconsistent").get<bool>();
    return res;
}

json motivic_poly_to_json(const MotivicPoly& p) {
    json out = json::array();
    for (const auto& c : p.coeffs())
        out.push_back(bigint_to_json(c));
    return out;
}

MotivicPoly motivic_poly_from_json(const json& j) {
    std::vector<BigInt> coeffs;
    for (const auto& c : j)
        coeffs.push_back(bigint_from_json(c));
    return MotivicPoly(std::move(coeffs));
}

json series_to_json(const MotivicSeries& s) {
    json coeffs = json::array();
    for (const auto& c : s.coeffs())
        coeffs.push_back(motivic_poly_to_json(c));
    return {{"N", s.order()}, {"coeffs", coeffs}};
}

MotivicSeries series_from_json(const json& j) {
    std::vector<MotivicPoly> coeffs;
    for (const auto& c : j.at("coeffs"))
        coeffs.push_back(motivic_poly_from_json(c));
    return MotivicSeries(j.at("N").get<int>(), std::move(coeffs));
}

json stratum_result_to_json(const StratumResult& r) {
    json counts = json::array();
    for (const auto& [q, c] : r.counts)
        counts.push_back(json::array({q, bigint_to_json(c)}));
    json out = {{"lambda", partition_to_json(r.lambda)},
                {"variable_count", r.variable_count},
                {"relation_count", r.relation_count},
                {"residual", residual_to_json(r.residual)},
                {"counts", counts},
                {"holdout_primes", r.holdout_primes},
                {"affine", r.affine()},
                {"dimension_bound", r.residual.dimension_bound()}};
    if (r.has_class()) {
        out["class"] = motivic_poly_to_json(r.class_poly());
        out["not_polynomial"] = nullptr;
    } else {
        out["class"] = nullptr;
        out["not_polynomial"] = std::get<NotPolynomialEvidence>(r.cls).reason;
    }
    return out;
}

StratumResult stratum_result_from_json(const json& j) {
    StratumResult r{partition_from_json(j.at("lambda")), 0, 0, {}, {}, {}, MotivicPoly()};
    r.variable_count = j.at("variable_count").get<std::size_t>();
    r.relation_count = j.at("relation_count").get<std::size_t>();
    r.residual = residual_from_json(j.at("residual"));
    for (const auto& c : j.at("counts"))
        r.counts[c.at(0).get<std::uint32_t>()] = bigint_from_json(c.at(1));
    r.holdout_primes = j.at("holdout_primes").get<std::vector<std::uint32_t>>();
    if (!j.at("class").is_null())
        r.cls = motivic_poly_from_json(j.at("class"));
    else
        r.cls = NotPolynomialEvidence{j.at("not_polynomial").get<std::string>()};
    return r;
}

} // namespace hilbstrat
