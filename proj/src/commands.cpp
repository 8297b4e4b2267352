#include "hilbstrat/commands.hpp"

#include "hilbstrat/cache.hpp"
#include "hilbstrat/config.hpp"
#include "hilbstrat/errors.hpp"
#include "hilbstrat/motivic.hpp"
#include "hilbstrat/partitions.hpp"
#include "hilbstrat/quotient.hpp"
#include "hilbstrat/relations.hpp"
#include "hilbstrat/serialize.hpp"
#include "hilbstrat/stratum.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

namespace hilbstrat {

namespace {

/// Raised for bad input that CLI11 cannot see (unreadable files, bad JSON).
class UsageError : public Error {
public:
    using Error::Error;
};

struct Common {
    std::string cache;
    unsigned workers = default_workers();
    std::uint64_t budget = CountingConfig{}.budget;
    std::vector<std::uint32_t> primes;
    int holdouts = 2;
    std::uint64_t seed = 1;
    bool assume_polynomial = false;
    bool json = false;

    CountingConfig config() const {
        CountingConfig cfg;
        if (!primes.empty())
            cfg.primes = primes;
        cfg.holdout_count = holdouts;
        cfg.budget = budget;
        cfg.workers = workers;
        cfg.assume_polynomial = assume_polynomial;
        if (!cache.empty())
            cfg.cache_path = cache;
        cfg.seed = seed;
        cfg.validate();
        return cfg;
    }
};

std::unique_ptr<ResultsCache> open_cache(const CountingConfig& cfg) {
    if (!cfg.cache_path)
        return nullptr;
    return std::make_unique<ResultsCache>(*cfg.cache_path, cfg.fingerprint());
}

/// How much a printed polynomial can be trusted.
std::string label(const StratumResult& r, bool assume_polynomial) {
    if (r.residual.inconsistent)
        return "empty stratum";
    if (r.affine())
        return "affine, dim " + std::to_string(r.residual.dimension_bound());
    if (!r.has_class())
        return "not polynomial: " + std::get<NotPolynomialEvidence>(r.cls).reason;
    std::string primes;
    for (const auto& [q, c] : r.counts)
        primes += (primes.empty() ? "" : ",") + std::to_string(q);
    return std::string(assume_polynomial ? "class" : "counting polynomial") + " from point counts at q=" + primes;
}

std::string residual_summary(const ResidualSystem& res) {
    if (res.inconsistent)
        return "empty";
    if (res.affine())
        return "affine, dim " + std::to_string(res.dimension_bound());
    return "residual: " + std::to_string(res.residual_relations.size()) + " relations in " +
           std::to_string(res.constrained_vars().size()) + " constrained variables, ambient dim " +
           std::to_string(res.dimension_bound());
}

std::vector<std::string> names_of(const std::vector<CoeffVar>& vars) {
    std::vector<std::string> out;
    out.reserve(vars.size());
    for (const auto& v : vars)
        out.push_back(v.name());
    return out;
}

MDPartition read_partition(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot read partition file " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& ex) {
        throw UsageError("partition file " + path + " is not valid JSON: " + ex.what());
    }
    return partition_from_json(j);
}

StratumResult cached_stratum_class(const MDPartition& lambda, const CountingConfig& cfg, ResultsCache* cache) {
    if (cache)
        if (auto hit = cache->lookup(lambda))
            return *hit;
    StratumResult r = stratum_class(lambda, cfg);
    if (cache)
        cache->store(r);
    return r;
}

// ---------------------------------------------------------------- partitions

int cmd_partitions(std::ostream& out, const Common&, int m, int n, bool count_only) {
    const auto parts = enumerate_partitions(m, n);
    if (count_only) {
        out << parts.size() << '\n';
        return kExitOk;
    }
    for (const auto& p : parts)
        out << partition_to_json(p).dump() << '\n';
    return kExitOk;
}

// ------------------------------------------------------------------- stratum

int cmd_stratum(std::ostream& out, std::ostream& err, const Common& common, const std::string& file,
                const std::string& emit) {
    const MDPartition lambda = read_partition(file);
    const CountingConfig cfg = common.config();

    if (emit == "variables") {
        const auto vars = coefficient_variables(lambda);
        if (common.json) {
            json arr = json::array();
            for (std::size_t i = 0; i < vars.size(); ++i)
                arr.push_back(coeff_var_to_json(vars[i], static_cast<VarId>(i)));
            out << arr.dump(2) << '\n';
        } else {
            for (std::size_t i = 0; i < vars.size(); ++i)
                out << i << ' ' << vars[i].name() << '\n';
        }
        return kExitOk;
    }

    if (emit == "relations") {
        const RelationSystem sys = commutator_relations(lambda);
        if (common.json) {
            out << relation_system_to_json(sys).dump(2) << '\n';
        } else {
            const auto names = sys.variable_names();
            for (const Poly& p : sys.relations)
                out << p.to_string(names) << '\n';
        }
        return kExitOk;
    }

    if (emit == "residual") {
        const ResidualSystem res = eliminate(commutator_relations(lambda));
        if (common.json) {
            json j = residual_to_json(res);
            j["summary"] = residual_summary(res);
            out << j.dump(2) << '\n';
            return kExitOk;
        }
        const auto names = names_of(res.variables);
        out << residual_summary(res) << '\n';
        if (!res.inconsistent) {
            std::vector<VarId> free = res.residual_vars;
            free.insert(free.end(), res.pure_free.begin(), res.pure_free.end());
            std::sort(free.begin(), free.end());
            out << "coordinates:";
            for (VarId v : free)
                out << ' ' << names[v];
            out << '\n';
            for (const Poly& p : res.residual_relations)
                out << p.to_string(names) << " = 0\n";
        }
        return kExitOk;
    }

    if (emit == "class") {
        auto cache = open_cache(cfg);
        StratumResult r{lambda, 0, 0, {}, {}, {}, MotivicPoly()};
        try {
            r = cached_stratum_class(lambda, cfg, cache.get());
        } catch (const BudgetExceeded& ex) {
            // Partial report: elimination is cheap and always succeeds.
            const ResidualSystem res = eliminate(commutator_relations(lambda));
            if (common.json) {
                json j = {{"lambda", partition_to_json(lambda)},
                          {"residual", residual_to_json(res)},
                          {"error", ex.what()}};
                out << j.dump(2) << '\n';
            } else {
                out << residual_summary(res) << '\n';
            }
            err << "budget exceeded: " << ex.what() << '\n';
            return kExitBudget;
        }
        const std::string text = r.has_class() ? r.class_poly().to_expression() : "unresolved";
        if (common.json) {
            json j = stratum_result_to_json(r);
            j["expression"] = text;
            j["label"] = label(r, cfg.assume_polynomial);
            out << j.dump(2) << '\n';
        } else {
            out << text << '\n' << "# " << label(r, cfg.assume_polynomial) << '\n';
        }
        return r.has_class() ? kExitOk : kExitVerificationFailed;
    }

    // generators
    const StratumLayout layout(lambda);
    const auto gens = ideal_generators(layout);
    if (common.json) {
        out << json(gens).dump(2) << '\n';
    } else {
        for (const auto& g : gens)
            out << g << '\n';
    }
    return kExitOk;
}

// ------------------------------------------------------- punctual and global

/// Rows 1..n of the punctual table, printed as they complete.
struct TableRun {
    std::vector<PunctualResult> rows;
    std::optional<std::string> budget_error;
};

TableRun run_table(std::ostream& out, const Common& common, const CountingConfig& cfg, int m, int n, bool print,
                   bool breakdown) {
    auto cache = open_cache(cfg);
    TableRun run;
    for (int k = 1; k <= n; ++k) {
        try {
            run.rows.push_back(punctual_class(m, k, cfg, cache.get()));
        } catch (const BudgetExceeded& ex) {
            run.budget_error = ex.what();
            return run;
        }
        if (!print || common.json)
            continue;
        const PunctualResult& row = run.rows.back();
        out << "n=" << k << ": " << row.total.to_string();
        for (const auto& u : row.unresolved)
            out << " + unresolved(" << u.encode() << ')';
        out << '\n';
        if (breakdown)
            for (const auto& s : row.strata)
                out << "  " << s.lambda.encode() << "  "
                    << (s.has_class() ? s.class_poly().to_expression() : std::string("?")) << "  # "
                    << label(s, cfg.assume_polynomial) << '\n';
        out.flush();
    }
    return run;
}

json row_to_json(const PunctualResult& row, bool breakdown, bool assume_polynomial) {
    json unresolved = json::array();
    for (const auto& u : row.unresolved)
        unresolved.push_back(partition_to_json(u));
    json j = {{"n", row.n},
              {"class", motivic_poly_to_json(row.total)},
              {"text", row.total.to_string()},
              {"complete", row.complete()},
              {"unresolved", unresolved}};
    if (breakdown) {
        json strata = json::array();
        for (const auto& s : row.strata) {
            json e = stratum_result_to_json(s);
            e["label"] = label(s, assume_polynomial);
            strata.push_back(std::move(e));
        }
        j["strata"] = std::move(strata);
    }
    return j;
}

std::size_t interpolated_strata(const std::vector<PunctualResult>& rows) {
    std::size_t k = 0;
    for (const auto& row : rows)
        for (const auto& s : row.strata)
            k += !s.affine() && !s.residual.inconsistent;
    return k;
}

int cmd_punctual(std::ostream& out, std::ostream& err, const Common& common, int m, int n, bool breakdown) {
    const CountingConfig cfg = common.config();
    TableRun run = run_table(out, common, cfg, m, n, true, breakdown);
    bool complete = true;
    for (const auto& row : run.rows)
        complete = complete && row.complete();
    if (common.json) {
        json rows = json::array();
        for (const auto& row : run.rows)
            rows.push_back(row_to_json(row, breakdown, cfg.assume_polynomial));
        json j = {{"m", m}, {"n", n}, {"rows", rows}};
        if (run.budget_error)
            j["error"] = *run.budget_error;
        out << j.dump(2) << '\n';
    } else if (!cfg.assume_polynomial && interpolated_strata(run.rows) > 0) {
        out << "# " << interpolated_strata(run.rows)
            << " non-affine strata enter as counting polynomials interpolated from F_q point counts\n";
    }
    if (run.budget_error) {
        err << "budget exceeded: " << *run.budget_error << '\n';
        return kExitBudget;
    }
    if (!complete) {
        err << "some strata have non-polynomial point counts\n";
        return kExitVerificationFailed;
    }
    return kExitOk;
}

int cmd_global(std::ostream& out, std::ostream& err, const Common& common, int m, int n) {
    const CountingConfig cfg = common.config();
    TableRun run = run_table(out, common, cfg, m, n, false, false);
    if (run.budget_error) {
        err << "budget exceeded while computing punctual row " << run.rows.size() + 1 << ": " << *run.budget_error
            << '\n';
        return kExitBudget;
    }
    MotivicSeries punctual = MotivicSeries::one(n);
    for (const auto& row : run.rows) {
        if (!row.complete()) {
            err << "punctual row " << row.n << " has unresolved strata, starting with "
                << row.unresolved.front().encode() << '\n';
            return kExitVerificationFailed;
        }
        punctual[row.n] = row.total;
    }
    const MotivicSeries global = global_hilbert_series(m + 1, n, punctual);
    if (common.json) {
        json j = {{"m", m}, {"N", n}, {"punctual", series_to_json(punctual)}, {"global", series_to_json(global)}};
        out << j.dump(2) << '\n';
        return kExitOk;
    }
    for (int k = 1; k <= n; ++k)
        out << "n=" << k << ": " << global[k].to_string() << '\n';
    return kExitOk;
}

// -------------------------------------------------------------------- verify

struct VerifyOptions {
    int m = 2;
    int n = 4;
    std::vector<std::uint32_t> qs{2, 3};
    std::size_t samples = 50;
    int hardrel_max_n = 4;
};

int cmd_verify(std::ostream& out, std::ostream& err, const Common& common, const VerifyOptions& v) {
    const CountingConfig cfg = common.config();
    for (std::uint32_t q : v.qs)
        if (!is_prime(q))
            throw ConfigError("--q entries must be prime, got " + std::to_string(q));
    std::optional<std::string> first_failure;
    auto fail = [&](const std::string& why) {
        if (!first_failure)
            first_failure = why;
    };

    for (int k = 1; k <= v.n; ++k) {
        for (const MDPartition& lambda : enumerate_partitions(v.m, k)) {
            const StratumModel model(lambda);
            const RelationSystem hard = k <= v.hardrel_max_n ? hardrel_relations(lambda) : RelationSystem{};
            for (std::uint32_t q : v.qs) {
                json rec = {{"lambda", partition_to_json(lambda)}, {"q", q}, {"affine", model.residual.affine()}};
                std::size_t tested = 0;
                bool commute_ok = true;
                bool roundtrip_ok = true;
                bool annihilate_ok = true;
                std::string detail;
                for (const StratumPoint& pt : sample_points(model, q, v.samples, cfg.budget, cfg.seed)) {
                    ++tested;
                    const auto mats = instantiate_matrices(model, pt);
                    if (!check_commuting(mats)) {
                        commute_ok = false;
                        detail = "matrices do not commute";
                        continue;
                    }
                    try {
                        const MDPartition back = partition_from_matrices(mats, v.m, k);
                        if (back != lambda) {
                            roundtrip_ok = false;
                            detail = "recovered " + back.encode();
                        }
                    } catch (const Error& ex) {
                        roundtrip_ok = false;
                        detail = ex.what();
                    }
                    if (!generators_annihilate(model, mats, pt)) {
                        annihilate_ok = false;
                        detail = "border generators do not annihilate the cyclic vector";
                    }
                }
                rec["points_tested"] = tested;
                rec["commute_ok"] = commute_ok;
                rec["roundtrip_ok"] = roundtrip_ok;
                rec["annihilate_ok"] = annihilate_ok;
                if (k <= v.hardrel_max_n) {
                    const SolutionComparison cmp = compare_solution_sets(model.relations, hard, q, cfg.budget);
                    rec["hardrel_ok"] = cmp.equal;
                    rec["solutions"] = cmp.solutions_a;
                    if (!cmp.equal) {
                        detail = "commutator and hardrel solution sets differ (" + std::to_string(cmp.solutions_a) +
                                 " vs " + std::to_string(cmp.solutions_b) + ")";
                        fail(lambda.encode() + " q=" + std::to_string(q) + ": " + detail);
                    }
                } else {
                    rec["hardrel_ok"] = nullptr;
                }
                if (!commute_ok || !roundtrip_ok || !annihilate_ok)
                    fail(lambda.encode() + " q=" + std::to_string(q) + ": " + detail);
                out << rec.dump() << '\n';
            }
        }
    }

    // Cached results must match a fresh computation byte for byte.
    if (cfg.cache_path) {
        ResultsCache cache(*cfg.cache_path, cfg.fingerprint());
        for (const auto& [key, cached] : cache.entries()) {
            if (cached.lambda.dim() != v.m || cached.lambda.weight() > v.n)
                continue;
            bool ok = false;
            std::string detail;
            try {
                const StratumResult fresh = stratum_class(cached.lambda, cfg);
                ok = stratum_result_to_json(fresh) == stratum_result_to_json(cached);
                if (!ok)
                    detail = "cached result differs from recomputation";
            } catch (const BudgetExceeded& ex) {
                detail = std::string("cannot recompute: ") + ex.what();
            }
            // A class must also reproduce its own stored counts.
            if (ok && cached.has_class())
                for (const auto& [q, c] : cached.counts)
                    if (cached.class_poly().eval(BigInt(q)) != c) {
                        ok = false;
                        detail = "class disagrees with stored count at q=" + std::to_string(q);
                    }
            json rec = {{"lambda", partition_to_json(cached.lambda)}, {"cache_ok", ok}};
            if (!ok) {
                rec["detail"] = detail;
                fail(key + ": " + detail);
            }
            out << rec.dump() << '\n';
        }
    }

    if (first_failure) {
        err << "verification failed: " << *first_failure << '\n';
        return kExitVerificationFailed;
    }
    return kExitOk;
}

// ----------------------------------------------------------------- stability

int cmd_stability(std::ostream& out, std::ostream& err, const Common& common, int m, int n_max) {
    const CountingConfig cfg = common.config();
    TableRun run = run_table(out, common, cfg, m, n_max, false, false);
    if (run.budget_error) {
        err << "budget exceeded: " << *run.budget_error << '\n';
        return kExitBudget;
    }
    const int top = static_cast<int>(run.rows.size());
    int max_deg = 0;
    for (const auto& row : run.rows)
        max_deg = std::max(max_deg, row.total.degree());

    // coeff[k][n-1] and the first n from which column k is constant through n_max.
    std::vector<std::vector<BigInt>> coeff(static_cast<std::size_t>(max_deg) + 1);
    std::vector<std::optional<int>> constant_from(coeff.size());
    for (int k = 0; k <= max_deg; ++k) {
        auto& col = coeff[static_cast<std::size_t>(k)];
        for (const auto& row : run.rows)
            col.push_back(row.total.coeff(k));
        int start = top;
        while (start > 1 && col[static_cast<std::size_t>(start - 2)] == col.back())
            --start;
        if (start < top)
            constant_from[static_cast<std::size_t>(k)] = start;
    }

    if (common.json) {
        json rows = json::array();
        for (int k = 0; k <= max_deg; ++k) {
            json vals = json::array();
            for (const auto& c : coeff[static_cast<std::size_t>(k)])
                vals.push_back(bigint_to_json(c));
            const auto& from = constant_from[static_cast<std::size_t>(k)];
            rows.push_back({{"k", k}, {"coefficients", vals}, {"constant_from", from ? json(*from) : json(nullptr)}});
        }
        out << json({{"m", m}, {"n_max", top}, {"rows", rows}}).dump(2) << '\n';
        return kExitOk;
    }

    std::ostringstream line;
    line << "k\\n ";
    for (int n = 1; n <= top; ++n)
        line << ' ' << std::setw(5) << n;
    out << line.str() << '\n';
    for (int k = 0; k <= max_deg; ++k) {
        std::ostringstream row;
        row << "L^" << std::left << std::setw(3) << k << std::right;
        for (const auto& c : coeff[static_cast<std::size_t>(k)])
            row << ' ' << std::setw(5) << c;
        if (const auto& from = constant_from[static_cast<std::size_t>(k)])
            row << "  * constant from n=" << *from;
        out << row.str() << '\n';
    }
    return kExitOk;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Stratified motivic classes of punctual Hilbert schemes of points."};
    app.require_subcommand(1);
    app.fallthrough();

    Common common;
    app.add_option("--cache", common.cache, "Append-only JSON-lines results cache")->envname("HILBSTRAT_CACHE");
    app.add_option("--workers", common.workers, "Worker threads")
        ->envname("HILBSTRAT_WORKERS")
        ->check(CLI::PositiveNumber);
    app.add_option("--budget", common.budget, "Maximum brute-force assignments per count")->check(CLI::PositiveNumber);
    app.add_option("--primes", common.primes, "Ascending primes used for counting")->delimiter(',');
    app.add_option("--holdouts", common.holdouts, "Holdout primes per stratum")->check(CLI::PositiveNumber);
    app.add_option("--seed", common.seed, "Sampling seed");
    app.add_flag("--assume-polynomial-count", common.assume_polynomial,
                 "Label interpolated point counts as classes");
    app.add_flag("--json", common.json, "Emit JSON instead of text");

    int m = 2;
    int n = 0;

    auto* partitions = app.add_subcommand("partitions", "List or count m-dimensional partitions of n");
    bool count_only = false;
    partitions->add_option("--dim", m, "Dimension m")->required()->check(CLI::Range(1, 16));
    partitions->add_option("--n", n, "Weight")->required()->check(CLI::NonNegativeNumber);
    partitions->add_flag("--count-only", count_only, "Print only the number of partitions");

    auto* stratum = app.add_subcommand("stratum", "Inspect one stratum");
    std::string file;
    std::string emit = "class";
    stratum->add_option("--partition", file, "Partition JSON file")->required();
    stratum->add_option("--emit", emit, "Artifact to emit")
        ->check(CLI::IsMember({"variables", "relations", "residual", "class", "generators"}));

    auto* punctual = app.add_subcommand("punctual", "Punctual classes for weights 1..n");
    bool breakdown = false;
    punctual->add_option("--dim", m, "Dimension m")->required()->check(CLI::Range(1, 16));
    punctual->add_option("--n", n, "Largest weight")->required()->check(CLI::NonNegativeNumber);
    punctual->add_flag("--breakdown", breakdown, "Show every stratum");

    auto* global = app.add_subcommand("global", "Classes of the Hilbert schemes of points of A^(m+1)");
    global->add_option("--dim", m, "Dimension m (default 2)")->check(CLI::Range(1, 16));
    global->add_option("--n", n, "Largest number of points")->required()->check(CLI::NonNegativeNumber);

    auto* verify = app.add_subcommand("verify", "Round-trip and relation cross-checks");
    VerifyOptions vo;
    verify->add_option("--dim", vo.m, "Dimension m")->required()->check(CLI::Range(1, 16));
    verify->add_option("--n", vo.n, "Largest weight")->required()->check(CLI::NonNegativeNumber);
    verify->add_option("--q", vo.qs, "Primes to sample over")->delimiter(',')->check(CLI::PositiveNumber);
    verify->add_option("--samples", vo.samples, "Points per stratum and prime")->check(CLI::PositiveNumber);
    verify->add_option("--hardrel-max-n", vo.hardrel_max_n, "Largest weight for the relation cross-check");

    auto* stability = app.add_subcommand("stability", "Coefficient table across n");
    stability->add_option("--dim", m, "Dimension m")->check(CLI::Range(1, 16));
    stability->add_option("--n-max", n, "Largest weight")->required()->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*partitions)
            return cmd_partitions(out, common, m, n, count_only);
        if (*stratum)
            return cmd_stratum(out, err, common, file, emit);
        if (*punctual)
            return cmd_punctual(out, err, common, m, n, breakdown);
        if (*global)
            return cmd_global(out, err, common, m, n);
        if (*verify)
            return cmd_verify(out, err, common, vo);
        if (*stability)
            return cmd_stability(out, err, common, m, n);
    } catch (const BudgetExceeded& ex) {
        err << "budget exceeded: " << ex.what() << '\n';
        return kExitBudget;
    } catch (const InvalidPartition& ex) {
        err << "invalid partition: " << ex.what() << '\n';
        return kExitUsage;
    } catch (const ConfigError& ex) {
        err << "configuration error: " << ex.what() << '\n';
        return kExitUsage;
    } catch (const UsageError& ex) {
        err << ex.what() << '\n';
        return kExitUsage;
    } catch (const Error& ex) {
        err << "error: " << ex.what() << '\n';
        return kExitVerificationFailed;
    }
    return kExitUsage;
}

} // namespace hilbstrat
