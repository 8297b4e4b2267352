#include "oracles.hpp"

#include "hilbstrat/cache.hpp"
#include "hilbstrat/errors.hpp"
#include "hilbstrat/quotient.hpp"
#include "hilbstrat/serialize.hpp"
#include "hilbstrat/stratum.hpp"

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>

using namespace hilbstrat;

namespace {

MDPartition part(int m, std::vector<std::pair<Index, int>> raw) { return validate_partition(m, raw); }
MDPartition line8() { return part(1, {{{0}, 3}, {{1}, 2}, {{2}, 1}, {{3}, 1}, {{4}, 1}}); }
MDPartition cell5() { return part(2, {{{0, 0}, 1}, {{1, 0}, 1}, {{2, 0}, 1}, {{0, 1}, 1}}); }
MDPartition excep4() { return part(2, {{{0, 0}, 2}, {{1, 0}, 1}, {{0, 1}, 1}}); }
MDPartition excep5a() { return part(2, {{{0, 0}, 2}, {{1, 0}, 1}, {{0, 1}, 1}, {{0, 2}, 1}}); }
MDPartition excep5b() { return part(2, {{{0, 0}, 2}, {{1, 0}, 1}, {{2, 0}, 1}, {{0, 1}, 1}}); }
MDPartition excep5c() { return part(2, {{{0, 0}, 3}, {{1, 0}, 1}, {{0, 1}, 1}}); }

std::set<std::string> names(const ResidualSystem& res, const std::vector<VarId>& ids) {
    std::set<std::string> out;
    for (VarId v : ids)
        out.insert(res.variables[v].name());
    return out;
}

std::set<std::string> free_names(const ResidualSystem& res) {
    auto a = names(res, res.residual_vars);
    auto b = names(res, res.pure_free);
    a.insert(b.begin(), b.end());
    return a;
}

MotivicPoly L(int k) { return MotivicPoly::lefschetz(k); }

/// A hand-made residual over `total` variables.
ResidualSystem synthetic(std::size_t total, std::vector<VarId> residual, std::vector<Poly> rels) {
    ResidualSystem res;
    res.variables.resize(total);
    res.residual_vars = residual;
    res.residual_relations = std::move(rels);
    for (VarId v = 0; v < total; ++v)
        if (std::find(residual.begin(), residual.end(), v) == residual.end())
            res.pure_free.push_back(v);
    return res;
}

CountingConfig quick_config() {
    CountingConfig cfg;
    cfg.workers = 1;
    return cfg;
}

} // namespace

TEST_CASE("elimination on the worked examples") {
    SUBCASE("affine A^5 in one dimension") {
        const ResidualSystem res = eliminate(commutator_relations(line8()));
        CHECK(res.affine());
        CHECK(res.dimension_bound() == 5);
        CHECK(free_names(res) ==
              std::set<std::string>{"a[3 0][0 4]", "a[3 0][1 1]", "a[2 1][0 4]", "a[1 2][0 4]", "a[1 3][0 4]"});
    }
    SUBCASE("affine A^5 in two dimensions") {
        const ResidualSystem res = eliminate(commutator_relations(cell5()));
        CHECK(res.affine());
        CHECK(res.dimension_bound() == 5);
        // The lowest-id pivot keeps a[1 1 0][0 2 0] and eliminates
        // a[1 0 0][0 1 0]; the relation between them is triangular, so either
        // can serve as the fifth coordinate.
        CHECK(free_names(res) == std::set<std::string>{"a[1 1 0][0 2 0]", "a[1 0 0][0 2 0]", "a[1 0 0][0 0 1]",
                                                       "a[0 0 2][0 2 0]", "a[0 1 1][0 2 0]"});
    }
    SUBCASE("a single product relation") {
        const ResidualSystem res = eliminate(commutator_relations(excep4()));
        REQUIRE(res.residual_relations.size() == 1);
        const Poly& rel = res.residual_relations.front();
        CHECK(names(res, rel.variables()) == std::set<std::string>{"a[2 0 0][0 0 1]", "a[0 0 2][0 1 0]"});
        CHECK(rel.total_degree() == 2);
        CHECK(rel.terms().size() == 1);
        CHECK(res.dimension_bound() == 4);
    }
    SUBCASE("trivial systems") {
        const ResidualSystem res = eliminate(commutator_relations(part(2, {{{0, 0}, 1}})));
        CHECK(res.affine());
        CHECK(res.dimension_bound() == 0);
    }
}

TEST_CASE("elimination detects inconsistency") {
    RelationSystem sys;
    sys.variables.resize(2);
    sys.relations = {Poly::variable(0) - Poly::constant(1), Poly::variable(0) * Poly::variable(1) - Poly::variable(1) +
                                                                Poly::constant(1)};
    const ResidualSystem res = eliminate(sys);
    CHECK(res.inconsistent);
    CHECK(count_points(res, 5) == 0);
}

TEST_CASE("elimination is sound on random points") {
    // Any assignment of the residual and free variables that satisfies the
    // residual relations back-substitutes to a point of the original system.
    std::mt19937_64 rng(11);
    for (int m = 1; m <= 2; ++m)
        for (int n = 1; n <= 5; ++n)
            for (const auto& p : enumerate_partitions(m, n)) {
                const RelationSystem sys = commutator_relations(p);
                const ResidualSystem res = eliminate(sys);
                for (std::uint32_t q : {2u, 3u, 5u}) {
                    int found = 0;
                    for (int attempt = 0; attempt < 400 && found < 10; ++attempt) {
                        StratumPoint pt{q, std::vector<std::uint32_t>(sys.variables.size(), 0)};
                        for (VarId v : res.residual_vars)
                            pt.values[v] = static_cast<std::uint32_t>(rng() % q);
                        for (VarId v : res.pure_free)
                            pt.values[v] = static_cast<std::uint32_t>(rng() % q);
                        bool ok = true;
                        for (const Poly& r : res.residual_relations)
                            ok = ok && r.eval_mod(pt.values, q) == 0;
                        if (!ok)
                            continue;
                        res.back_substitute(pt.values, q);
                        CHECK_MESSAGE(satisfies_relations(sys, pt), p.encode());
                        ++found;
                    }
                }
            }
}

TEST_CASE("count_points examples") {
    // a*b = 0 with two more free variables.
    const ResidualSystem ab = synthetic(4, {0, 1}, {Poly::variable(0) * Poly::variable(1)});
    CHECK(count_points(ab, 2) == 12);
    CHECK(count_points(ab, 3) == 5 * 9);
    // No relations: q^f.
    const ResidualSystem none = synthetic(3, {}, {});
    CHECK(count_points(none, 7) == 343);
    // a*(b^2 - c) = 0 over F_3: 15 * 3^pure.
    const Poly a = Poly::variable(0), b = Poly::variable(1), c = Poly::variable(2);
    const ResidualSystem abc = synthetic(5, {0, 1, 2}, {a * (b * b - c)});
    CHECK(count_points(abc, 3) == 15 * 9);
}

TEST_CASE("count_points budget") {
    const Poly a = Poly::variable(0), b = Poly::variable(1), c = Poly::variable(2);
    const ResidualSystem abc = synthetic(3, {0, 1, 2}, {a * a * b * b + c * c * c - a});
    CountOptions tight{10, 1, true};
    CHECK_THROWS_AS(count_points(abc, 5, tight), BudgetExceeded);
    try {
        count_points(abc, 5, tight);
    } catch (const BudgetExceeded& ex) {
        CHECK(ex.required() == 125);
    }
    CHECK_NOTHROW(count_points(abc, 5, CountOptions{125, 1, true}));
}

TEST_CASE("solving the linear variable matches full enumeration") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        // Random sparse relations of degree <= 2 in four variables.
        std::vector<Poly> rels;
        const int nrel = 1 + static_cast<int>(rng() % 3);
        for (int r = 0; r < nrel; ++r) {
            Poly p;
            const int nterms = 1 + static_cast<int>(rng() % 4);
            for (int t = 0; t < nterms; ++t) {
                Term term;
                const int deg = static_cast<int>(rng() % 3);
                for (int d = 0; d < deg; ++d)
                    term.push_back(static_cast<VarId>(rng() % 4));
                std::sort(term.begin(), term.end());
                p.add_term(term, static_cast<std::int64_t>(rng() % 5) - 2);
            }
            if (!p.is_zero() && !p.is_constant())
                rels.push_back(p);
        }
        const ResidualSystem res = synthetic(5, {0, 1, 2, 3}, rels);
        for (std::uint32_t q : {2u, 3u, 5u}) {
            const BigInt fast = count_points(res, q, CountOptions{1'000'000, 1, true});
            const BigInt slow = count_points(res, q, CountOptions{1'000'000, 1, false});
            CHECK(fast == slow);
            CHECK(count_points(res, q, CountOptions{1'000'000, 3, true}) == fast);
        }
    }
}

TEST_CASE("counts agree with the commuting-matrix oracle") {
    // Every assignment whose matrices commute, counted without relations.
    for (int m = 1; m <= 2; ++m)
        for (int n = 1; n <= 4; ++n)
            for (const auto& p : enumerate_partitions(m, n)) {
                const StratumModel model(p);
                for (std::uint32_t q : {2u, 3u}) {
                    if (std::pow(double(q), double(model.layout.variables().size())) > 2e5)
                        continue;
                    CHECK_MESSAGE(count_points(model.residual, q) == oracle::commuting_count(model, q),
                                  p.encode() << " q=" << q);
                }
            }
    // The smallest exceptional stratum at q=2 and 3: 2q^3 - q^2.
    const StratumModel model(excep4());
    CHECK(oracle::commuting_count(model, 2) == 12);
    CHECK(oracle::commuting_count(model, 3) == 45);
}

TEST_CASE("interpolation") {
    using P = std::vector<std::pair<BigInt, BigInt>>;
    // 2x^3 - x^2 through four points.
    P pts;
    for (int x : {2, 3, 5, 7})
        pts.push_back({x, 2 * x * x * x - x * x});
    auto poly = interpolate_integer(pts);
    REQUIRE(poly);
    CHECK(*poly == L(3) * 2 - L(2));
    CHECK(interpolate_integer({}) == MotivicPoly());
    CHECK(interpolate_integer(P{{2, 5}}) == MotivicPoly(5));
    // x/2 + ... is not integral.
    CHECK_FALSE(interpolate_integer(P{{2, 1}, {3, 1}, {5, 2}}).has_value());
}

TEST_CASE("stratum classes") {
    const CountingConfig cfg = quick_config();
    CHECK(stratum_class(part(2, {{{0, 0}, 1}}), cfg).class_poly() == MotivicPoly(1));
    CHECK(stratum_class(excep4(), cfg).class_poly() == L(3) * 2 - L(2));
    CHECK(stratum_class(excep5a(), cfg).class_poly() == L(4) * 2 - L(3));
    CHECK(stratum_class(excep5b(), cfg).class_poly() == L(5) * 2 - L(4));
    CHECK(stratum_class(excep5c(), cfg).class_poly() == L(3) * 2 - L(2));
    CHECK(stratum_class(cell5(), cfg).class_poly() == L(5));
    CHECK(stratum_class(line8(), cfg).class_poly() == L(5));

    const StratumResult r = stratum_class(excep4(), cfg);
    CHECK_FALSE(r.affine());
    // D = 4 residual/free variables: 5 nodes plus 2 holdouts.
    CHECK(r.counts.size() == 7);
    CHECK(r.holdout_primes == std::vector<std::uint32_t>{13, 17});
    for (const auto& [q, c] : r.counts)
        CHECK(r.class_poly().eval(BigInt(q)) == c);
}

TEST_CASE("stratum class configuration errors") {
    CountingConfig cfg = quick_config();
    cfg.primes = {2, 3, 5};
    CHECK_THROWS_AS(stratum_class(excep4(), cfg), ConfigError);
    cfg.primes = {2, 4, 5};
    CHECK_THROWS_AS(stratum_class(excep4(), cfg), ConfigError);
    cfg.primes = {3, 2};
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = quick_config();
    cfg.holdout_count = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = quick_config();
    cfg.budget = 10;
    CHECK_THROWS_AS(stratum_class(excep5b(), cfg), BudgetExceeded);
}

TEST_CASE("non-polynomial counts are flagged") {
    // x^2 + 1 = 0 has 1 + (-1 | q) solutions for odd q; no polynomial fits.
    RelationSystem sys;
    sys.variables.resize(1);
    sys.relations = {Poly::variable(0) * Poly::variable(0) + Poly::constant(1)};
    const StratumResult r = classify_system(part(2, {{{0, 0}, 1}}), sys, quick_config());
    CHECK_FALSE(r.has_class());
    CHECK(r.counts.at(2) == 1);
    CHECK(r.counts.at(3) == 0);
    CHECK(r.counts.at(5) == 2);
    CHECK(std::get<NotPolynomialEvidence>(r.cls).reason.find("q=5") != std::string::npos);
    // The result still round trips.
    CHECK(stratum_result_to_json(stratum_result_from_json(stratum_result_to_json(r))) == stratum_result_to_json(r));
}

TEST_CASE("punctual classes") {
    const CountingConfig cfg = quick_config();
    const auto p3 = punctual_class(2, 3, cfg);
    CHECK(p3.complete());
    CHECK(p3.total.to_string() == "L^4+L^3+2L^2+L+1");
    CHECK(p3.strata.size() == 6);
    for (int n = 1; n <= 7; ++n)
        CHECK(punctual_class(1, n, cfg).total == closed_form_punctual_A2(n));
    // Every one-dimensional stratum is affine of dimension n - lambda_0.
    for (int n = 1; n <= 6; ++n)
        for (const auto& s : punctual_class(1, n, cfg).strata) {
            CHECK(s.affine());
            CHECK(s.class_poly() == L(n - s.lambda.at({0})));
        }
    // Workers do not change the result.
    CountingConfig par = cfg;
    par.workers = 3;
    CHECK(punctual_class(2, 4, par).total == punctual_class(2, 4, cfg).total);
}

TEST_CASE("results cache") {
    const std::string path = (std::filesystem::temp_directory_path() / "hilbstrat_cache_test.jsonl").string();
    std::filesystem::remove(path);
    CountingConfig cfg = quick_config();
    {
        ResultsCache cache(path, cfg.fingerprint());
        CHECK(cache.size() == 0);
        const auto first = punctual_class(2, 4, cfg, &cache);
        CHECK(cache.size() == 13);
    }
    {
        ResultsCache cache(path, cfg.fingerprint());
        CHECK(cache.size() == 13);
        auto hit = cache.lookup(excep4());
        REQUIRE(hit);
        CHECK(stratum_result_to_json(*hit) == stratum_result_to_json(stratum_class(excep4(), cfg)));
        CHECK(punctual_class(2, 4, cfg, &cache).total == punctual_class(2, 4, cfg).total);
        CHECK(cache.size() == 13);
    }
    {
        // Another fingerprint sees nothing; a torn trailing line is skipped.
        std::ofstream(path, std::ios::app) << "{\"m\":2,\"lambda\":";
        CountingConfig other = cfg;
        other.holdout_count = 3;
        CHECK(other.fingerprint() != cfg.fingerprint());
        ResultsCache stale(path, other.fingerprint());
        CHECK(stale.size() == 0);
        CHECK(stale.stale_lines() == 14);
    }
    {
        ResultsCache cache(path, cfg.fingerprint());
        CHECK(cache.size() == 13);
        CHECK(cache.stale_lines() == 1);
    }
    std::filesystem::remove(path);
}

TEST_CASE("fingerprint ignores settings that cannot change results") {
    CountingConfig a, b;
    b.workers = 7;
    b.budget = 5;
    b.seed = 99;
    CHECK(a.fingerprint() == b.fingerprint());
    b.primes = first_primes(30);
    CHECK(a.fingerprint() != b.fingerprint());
}

TEST_CASE("stratum results round trip through JSON") {
    const CountingConfig cfg = quick_config();
    for (const auto& p : {line8(), cell5(), excep4(), excep5a()}) {
        const StratumResult r = stratum_class(p, cfg);
        const json j = stratum_result_to_json(r);
        const StratumResult back = stratum_result_from_json(json::parse(j.dump()));
        CHECK(stratum_result_to_json(back) == j);
        CHECK(back.lambda == r.lambda);
        CHECK(back.residual.residual_relations == r.residual.residual_relations);
        CHECK(back.residual.substitutions == r.residual.substitutions);
    }
}

// The elimination order is implementation-defined, so its output shape is frozen.
TEST_CASE("residual shapes are frozen") {
    const std::string path = std::string(HILBSTRAT_TEST_DATA) + "/residual_shapes.json";
    json current = json::object();
    for (int m = 1; m <= 3; ++m)
        for (int n = 1; n <= (m == 3 ? 4 : 5); ++n)
            for (const auto& p : enumerate_partitions(m, n)) {
                const ResidualSystem res = eliminate(commutator_relations(p));
                current[p.encode()] = {{"eliminated", res.eliminated_count()},
                                       {"residual_vars", res.residual_vars.size()},
                                       {"residual_relations", res.residual_relations.size()},
                                       {"pure_free", res.pure_free_count()},
                                       {"inconsistent", res.inconsistent}};
            }
    if (std::getenv("HILBSTRAT_REGENERATE_GOLDEN")) {
        std::ofstream(path) << current.dump(1) << '\n';
        return;
    }
    std::ifstream in(path);
    REQUIRE_MESSAGE(in.good(), "missing " << path);
    const json golden = json::parse(in);
    CHECK(golden.size() == current.size());
    for (const auto& [key, value] : current.items())
        CHECK_MESSAGE(golden.value(key, json()) == value, key);
}
