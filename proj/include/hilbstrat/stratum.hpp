#pragma once

#include "hilbstrat/config.hpp"
#include "hilbstrat/motivic.hpp"
#include "hilbstrat/partitions.hpp"
#include "hilbstrat/relations.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace hilbstrat {

class ResultsCache;

/// var := value, recorded in elimination order.
struct Substitution {
    VarId var = 0;
    Poly value;

    friend bool operator==(const Substitution&, const Substitution&) = default;
};

/// What is left of a relation system after unit-coefficient linear elimination.
struct ResidualSystem {
    std::vector<CoeffVar> variables; // the full original variable list
    std::vector<VarId> residual_vars;
    std::vector<Poly> residual_relations;
    std::vector<Substitution> substitutions;
    std::vector<VarId> pure_free;
    /// A nonzero constant was derived: the stratum has no points.
    bool inconsistent = false;

    std::size_t eliminated_count() const noexcept { return substitutions.size(); }
    std::size_t pure_free_count() const noexcept { return pure_free.size(); }
    bool affine() const noexcept { return !inconsistent && residual_relations.empty(); }
    /// |residual_vars| + pure_free_count: the ambient dimension of the residual.
    std::size_t dimension_bound() const noexcept { return residual_vars.size() + pure_free.size(); }
    /// Residual variables that occur in some residual relation.
    std::vector<VarId> constrained_vars() const;

    /// Fill in eliminated variables (indexed by VarId) from the others, mod q.
    void back_substitute(std::vector<std::uint32_t>& values, std::uint32_t q) const;
};

/// Repeatedly substitutes away the lowest-id variable that appears linearly,
/// alone, with coefficient +-1 in some relation, until no such variable is left.
ResidualSystem eliminate(const RelationSystem& system);

struct CountOptions {
    std::uint64_t budget = 200'000'000;
    unsigned workers = 1;
    /// Solve for one variable that occurs at most linearly instead of enumerating it.
    bool solve_linear = true;
};

/// Exact number of F_q points of the residual system (including the free factor).
/// Throws BudgetExceeded if the brute-force enumeration would be too large.
BigInt count_points(const ResidualSystem& residual, std::uint32_t q, const CountOptions& opts = {});

/// Unique polynomial of degree < points.size() through the points, if it has
/// integer coefficients.
std::optional<MotivicPoly> interpolate_integer(const std::vector<std::pair<BigInt, BigInt>>& points);

/// Counts that did not fit an integer polynomial of the allowed degree.
struct NotPolynomialEvidence {
    std::string reason;

    friend bool operator==(const NotPolynomialEvidence&, const NotPolynomialEvidence&) = default;
};

struct StratumResult {
    MDPartition lambda;
    std::size_t variable_count = 0;
    std::size_t relation_count = 0;
    ResidualSystem residual;
    std::map<std::uint32_t, BigInt> counts;
    std::vector<std::uint32_t> holdout_primes;
    std::variant<MotivicPoly, NotPolynomialEvidence> cls;

    bool affine() const noexcept { return residual.affine(); }
    bool has_class() const noexcept { return std::holds_alternative<MotivicPoly>(cls); }
    const MotivicPoly& class_poly() const { return std::get<MotivicPoly>(cls); }
};

StratumResult stratum_class(const MDPartition& lambda, const CountingConfig& cfg);

/// The same pipeline on an explicit system; `lambda` only labels the result.
StratumResult classify_system(const MDPartition& lambda, const RelationSystem& sys, const CountingConfig& cfg);

struct PunctualResult {
    int m = 0;
    int n = 0;
    /// Sum over strata with a known class.
    MotivicPoly total;
    std::vector<StratumResult> strata;
    /// Partitions whose counts were not polynomial.
    std::vector<MDPartition> unresolved;

    bool complete() const noexcept { return unresolved.empty(); }
};

/// Sum of stratum classes over all m-dimensional partitions of n.
/// Strata already present in `cache` are reused; new ones are stored.
PunctualResult punctual_class(int m, int n, const CountingConfig& cfg, ResultsCache* cache = nullptr);

} // namespace hilbstrat
