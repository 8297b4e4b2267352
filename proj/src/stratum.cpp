#include "hilbstrat/stratum.hpp"

#include "hilbstrat/cache.hpp"
#include "hilbstrat/errors.hpp"
#include "hilbstrat/parallel.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <atomic>
#include <limits>
#include <set>

namespace hilbstrat {

std::vector<VarId> ResidualSystem::constrained_vars() const {
    std::set<VarId> vs;
    for (const Poly& p : residual_relations)
        for (VarId v : p.variables())
            vs.insert(v);
    return {vs.begin(), vs.end()};
}

void ResidualSystem::back_substitute(std::vector<std::uint32_t>& values, std::uint32_t q) const {
    for (auto it = substitutions.rbegin(); it != substitutions.rend(); ++it)
        values[it->var] = it->value.eval_mod(values, q);
}

namespace {

void normalize_relations(std::vector<Poly>& rels) {
    RelationSystem tmp;
    tmp.relations = std::move(rels);
    tmp.normalize();
    rels = std::move(tmp.relations);
}

struct Pivot {
    VarId var;
    std::size_t relation;
    std::int64_t coeff;
};

std::optional<Pivot> find_pivot(const std::vector<Poly>& rels) {
    std::optional<Pivot> best;
    for (std::size_t r = 0; r < rels.size(); ++r) {
        const auto& terms = rels[r].terms();
        for (const auto& [t, c] : terms) {
            if (t.size() != 1 || (c != 1 && c != -1))
                continue;
            VarId v = t[0];
            if (best && best->var <= v)
                continue;
            bool alone = true;
            for (const auto& [u, d] : terms) {
                if (&u != &t && std::find(u.begin(), u.end(), v) != u.end()) {
                    alone = false;
                    break;
                }
            }
            if (alone)
                best = Pivot{v, r, c};
        }
    }
    return best;
}

} // namespace

ResidualSystem eliminate(const RelationSystem& system) {
    ResidualSystem res;
    res.variables = system.variables;
    std::vector<Poly> rels = system.relations;
    normalize_relations(rels);

    std::set<VarId> appeared;
    for (const Poly& p : rels)
        for (VarId v : p.variables())
            appeared.insert(v);

    for (;;) {
        if (std::any_of(rels.begin(), rels.end(), [](const Poly& p) { return p.is_constant() && !p.is_zero(); })) {
            res.inconsistent = true;
            break;
        }
        auto pivot = find_pivot(rels);
        if (!pivot)
            break;
        // c*v + rest = 0 with c = +-1, so v = -c*rest.
        Poly rest = rels[pivot->relation] - Poly::variable(pivot->var).scaled(pivot->coeff);
        Poly value = rest.scaled(-pivot->coeff);
        rels.erase(rels.begin() + static_cast<std::ptrdiff_t>(pivot->relation));
        for (Poly& p : rels)
            p = p.substitute(pivot->var, value);
        res.substitutions.push_back({pivot->var, std::move(value)});
        normalize_relations(rels);
    }
    res.residual_relations = std::move(rels);

    std::set<VarId> eliminated;
    for (const auto& s : res.substitutions)
        eliminated.insert(s.var);
    for (VarId v = 0; v < res.variables.size(); ++v) {
        if (eliminated.count(v))
            continue;
        if (appeared.count(v))
            res.residual_vars.push_back(v);
        else
            res.pure_free.push_back(v);
    }
    return res;
}

namespace {

std::uint64_t saturating_pow(std::uint64_t base, std::size_t exp) {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        if (__builtin_mul_overflow(r, base, &r))
            return std::numeric_limits<std::uint64_t>::max();
    }
    return r;
}

/// Brute-force solution counter over the constrained variables. Relations are
/// checked as soon as their highest variable is assigned. When `linear_last`
/// is set, the last variable has degree at most one in every relation and is
/// solved for instead of enumerated.
class SolutionCounter {
public:
    SolutionCounter(const ResidualSystem& residual, const std::vector<VarId>& vars, std::uint32_t q,
                    bool linear_last)
        : q_(q), width_(vars.size()), linear_last_(linear_last && !vars.empty()), by_depth_(vars.size()) {
        std::map<VarId, std::uint16_t> local;
        for (std::size_t i = 0; i < vars.size(); ++i)
            local[vars[i]] = static_cast<std::uint16_t>(i);
        const std::size_t last = width_ == 0 ? 0 : width_ - 1;
        for (const Poly& p : residual.residual_relations) {
            CompiledRelation rel;
            std::size_t depth = 0;
            for (const auto& [t, c] : p.terms()) {
                CompiledTerm ct;
                std::int64_t m = c % static_cast<std::int64_t>(q);
                ct.coeff = static_cast<std::uint32_t>(m < 0 ? m + q : m);
                if (ct.coeff == 0)
                    continue;
                bool has_last = false;
                for (VarId v : t) {
                    const std::uint16_t lv = local.at(v);
                    depth = std::max<std::size_t>(depth, lv);
                    if (linear_last_ && lv == last)
                        has_last = true;
                    else
                        ct.vars.push_back(lv);
                }
                (has_last ? rel.linear : rel.terms).push_back(std::move(ct));
            }
            by_depth_[depth].push_back(std::move(rel));
        }
    }

    std::size_t width() const noexcept { return width_; }
    /// Variables that are actually enumerated.
    std::size_t enumerated() const noexcept { return linear_last_ ? width_ - 1 : width_; }

    /// Solutions extending the assignment of the first `prefix_len` variables,
    /// which are decoded from `prefix` (base q, first variable most significant).
    std::uint64_t count_from_prefix(std::uint64_t prefix, std::size_t prefix_len) const {
        std::vector<std::uint32_t> values(width_, 0);
        for (std::size_t i = prefix_len; i-- > 0;) {
            values[i] = static_cast<std::uint32_t>(prefix % q_);
            prefix /= q_;
        }
        for (std::size_t d = 0; d < prefix_len; ++d)
            if (!satisfied(d, values))
                return 0;
        return descend(prefix_len, values);
    }

private:
    struct CompiledTerm {
        std::uint32_t coeff;
        std::vector<std::uint16_t> vars;
    };

    /// sum(terms) + x_last * sum(linear); `linear` is empty unless solving.
    struct CompiledRelation {
        std::vector<CompiledTerm> terms;
        std::vector<CompiledTerm> linear;
    };

    std::uint32_t eval(const std::vector<CompiledTerm>& terms, const std::vector<std::uint32_t>& values) const {
        std::uint64_t acc = 0;
        for (const auto& t : terms) {
            std::uint64_t prod = t.coeff;
            for (auto v : t.vars)
                prod = prod * values[v] % q_;
            acc += prod;
        }
        return static_cast<std::uint32_t>(acc % q_);
    }

    bool satisfied(std::size_t depth, const std::vector<std::uint32_t>& values) const {
        for (const auto& rel : by_depth_[depth])
            if (eval(rel.terms, values) != 0)
                return false;
        return true;
    }

    std::uint32_t inverse(std::uint32_t a) const {
        // Fermat: a^(q-2).
        std::uint64_t r = 1, b = a, e = q_ - 2;
        while (e) {
            if (e & 1)
                r = r * b % q_;
            b = b * b % q_;
            e >>= 1;
        }
        return static_cast<std::uint32_t>(r);
    }

    /// Number of values of the last variable solving a*x + b = 0 for every
    /// relation at the last depth.
    std::uint64_t solve_last(const std::vector<std::uint32_t>& values) const {
        std::optional<std::uint32_t> forced;
        for (const auto& rel : by_depth_[width_ - 1]) {
            const std::uint32_t a = eval(rel.linear, values);
            const std::uint32_t b = eval(rel.terms, values);
            if (a == 0) {
                if (b != 0)
                    return 0;
                continue;
            }
            const auto x = static_cast<std::uint32_t>(std::uint64_t(q_ - b) % q_ * inverse(a) % q_);
            if (forced && *forced != x)
                return 0;
            forced = x;
        }
        return forced ? 1 : q_;
    }

    std::uint64_t descend(std::size_t depth, std::vector<std::uint32_t>& values) const {
        if (depth == width_)
            return 1;
        if (linear_last_ && depth == width_ - 1)
            return solve_last(values);
        std::uint64_t total = 0;
        for (std::uint32_t a = 0; a < q_; ++a) {
            values[depth] = a;
            if (satisfied(depth, values))
                total += descend(depth + 1, values);
        }
        values[depth] = 0;
        return total;
    }

    std::uint32_t q_;
    std::size_t width_;
    bool linear_last_;
    std::vector<std::vector<CompiledRelation>> by_depth_;
};

/// Moves a variable of degree <= 1 in every relation to the end, if any.
bool order_for_solving(const ResidualSystem& residual, std::vector<VarId>& vars) {
    for (std::size_t i = vars.size(); i-- > 0;) {
        const VarId v = vars[i];
        const bool linear = std::all_of(residual.residual_relations.begin(), residual.residual_relations.end(),
                                        [v](const Poly& p) { return p.degree_in(v) <= 1; });
        if (linear) {
            vars.erase(vars.begin() + static_cast<std::ptrdiff_t>(i));
            vars.push_back(v);
            return true;
        }
    }
    return false;
}

} // namespace

BigInt count_points(const ResidualSystem& residual, std::uint32_t q, const CountOptions& opts) {
    if (residual.inconsistent)
        return 0;
    std::vector<VarId> constrained = residual.constrained_vars();
    const std::size_t unconstrained =
        residual.residual_vars.size() - constrained.size() + residual.pure_free.size();
    const bool linear_last = opts.solve_linear && order_for_solving(residual, constrained);
    SolutionCounter counter(residual, constrained, q, linear_last);

    const std::uint64_t space = saturating_pow(q, counter.enumerated());
    if (space > opts.budget)
        throw BudgetExceeded("counting over F_" + std::to_string(q) + " needs " +
                                 (space == std::numeric_limits<std::uint64_t>::max() ? std::string("more than 2^64")
                                                                                     : std::to_string(space)) +
                                 " assignments, budget is " + std::to_string(opts.budget),
                             space);

    const std::size_t prefix_len = std::min<std::size_t>(2, counter.enumerated());
    const std::uint64_t prefixes = saturating_pow(q, prefix_len);
    std::atomic<std::uint64_t> solutions{0};
    parallel_for(static_cast<std::size_t>(prefixes), opts.workers, [&](std::size_t p) {
        solutions += counter.count_from_prefix(p, prefix_len);
    });

    BigInt total = solutions.load();
    total *= boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(unconstrained));
    return total;
}

std::optional<MotivicPoly> interpolate_integer(const std::vector<std::pair<BigInt, BigInt>>& points) {
    using Rational = boost::multiprecision::cpp_rational;
    const std::size_t k = points.size();
    if (k == 0)
        return MotivicPoly();
    // Newton divided differences.
    std::vector<Rational> dd;
    for (const auto& pt : points)
        dd.emplace_back(pt.second);
    for (std::size_t level = 1; level < k; ++level)
        for (std::size_t i = k - 1; i >= level; --i) {
            dd[i] = (dd[i] - dd[i - 1]) / Rational(points[i].first - points[i - level].first);
            if (i == level)
                break;
        }
    // Horner in Newton form, expanding into monomial coefficients.
    std::vector<Rational> poly{dd[k - 1]};
    for (std::size_t j = k - 1; j-- > 0;) {
        std::vector<Rational> next(poly.size() + 1, Rational(0));
        for (std::size_t e = 0; e < poly.size(); ++e) {
            next[e + 1] += poly[e];
            next[e] -= poly[e] * Rational(points[j].first);
        }
        next[0] += dd[j];
        poly = std::move(next);
    }
    std::vector<BigInt> coeffs;
    for (const auto& c : poly) {
        if (boost::multiprecision::denominator(c) != 1)
            return std::nullopt;
        coeffs.push_back(boost::multiprecision::numerator(c));
    }
    return MotivicPoly(std::move(coeffs));
}

StratumResult stratum_class(const MDPartition& lambda, const CountingConfig& cfg) {
    return classify_system(lambda, commutator_relations(lambda), cfg);
}

StratumResult classify_system(const MDPartition& lambda, const RelationSystem& sys, const CountingConfig& cfg) {
    cfg.validate();
    StratumResult result{lambda, 0, 0, {}, {}, {}, MotivicPoly()};
    result.variable_count = sys.variables.size();
    result.relation_count = sys.relations.size();
    result.residual = eliminate(sys);
    const ResidualSystem& res = result.residual;

    if (res.inconsistent) {
        result.cls = MotivicPoly();
        return result;
    }
    const std::size_t dim = res.dimension_bound();
    if (res.affine()) {
        result.cls = MotivicPoly::lefschetz(static_cast<int>(dim));
        return result;
    }

    const std::size_t nodes = dim + 1;
    const std::size_t needed = nodes + static_cast<std::size_t>(cfg.holdout_count);
    if (cfg.primes.size() < needed)
        throw ConfigError("stratum " + lambda.encode() + " needs " + std::to_string(needed) + " primes, only " +
                          std::to_string(cfg.primes.size()) + " configured");
    const CountOptions opts{cfg.budget, cfg.workers};
    std::vector<std::pair<BigInt, BigInt>> points;
    for (std::size_t i = 0; i < needed; ++i) {
        std::uint32_t q = cfg.primes[i];
        BigInt c = count_points(res, q, opts);
        result.counts[q] = c;
        if (i < nodes)
            points.emplace_back(BigInt(q), c);
        else
            result.holdout_primes.push_back(q);
    }

    auto poly = interpolate_integer(points);
    if (!poly) {
        result.cls = NotPolynomialEvidence{"interpolated counting function has non-integer coefficients"};
        return result;
    }
    for (std::uint32_t q : result.holdout_primes) {
        if (poly->eval(BigInt(q)) != result.counts.at(q)) {
            result.cls = NotPolynomialEvidence{"interpolant " + poly->to_string() + " misses the count at q=" +
                                               std::to_string(q)};
            return result;
        }
    }
    result.cls = *poly;
    return result;
}

PunctualResult punctual_class(int m, int n, const CountingConfig& cfg, ResultsCache* cache) {
    cfg.validate();
    PunctualResult out;
    out.m = m;
    out.n = n;
    const auto parts = enumerate_partitions(m, n);
    std::vector<std::optional<StratumResult>> slots(parts.size());
    CountingConfig inner = cfg;
    inner.workers = 1;
    parallel_for(parts.size(), cfg.workers, [&](std::size_t i) {
        if (cache) {
            if (auto hit = cache->lookup(parts[i])) {
                slots[i] = std::move(*hit);
                return;
            }
        }
        slots[i] = stratum_class(parts[i], inner);
        if (cache)
            cache->store(*slots[i]);
    });
    for (auto& slot : slots) {
        if (slot->has_class())
            out.total += slot->class_poly();
        else
            out.unresolved.push_back(slot->lambda);
        out.strata.push_back(std::move(*slot));
    }
    return out;
}

} // namespace hilbstrat
