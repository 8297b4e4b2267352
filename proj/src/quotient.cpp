#include "hilbstrat/quotient.hpp"

#include "hilbstrat/errors.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

namespace hilbstrat {

namespace {

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t q) {
    // Fermat; q is prime and small.
    std::uint64_t r = 1, b = a, e = q - 2;
    while (e) {
        if (e & 1)
            r = r * b % q;
        b = b * b % q;
        e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
}

} // namespace

std::vector<std::uint32_t> FqMatrix::apply(std::span<const std::uint32_t> v) const {
    std::vector<std::uint32_t> out(n_, 0);
    for (std::size_t r = 0; r < n_; ++r) {
        std::uint64_t acc = 0;
        for (std::size_t c = 0; c < n_; ++c)
            acc += static_cast<std::uint64_t>(a_[r * n_ + c]) * v[c];
        out[r] = static_cast<std::uint32_t>(acc % q_);
    }
    return out;
}

FqMatrix operator*(const FqMatrix& a, const FqMatrix& b) {
    FqMatrix c(a.n_, a.q_);
    for (std::size_t i = 0; i < a.n_; ++i)
        for (std::size_t j = 0; j < a.n_; ++j) {
            std::uint64_t acc = 0;
            for (std::size_t k = 0; k < a.n_; ++k)
                acc += static_cast<std::uint64_t>(a.at(i, k)) * b.at(k, j);
            c.at(i, j) = static_cast<std::uint32_t>(acc % a.q_);
        }
    return c;
}

Subspace Subspace::span(std::size_t n, std::uint32_t q, std::vector<std::vector<std::uint32_t>> rows) {
    Subspace s(n, q);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < rows.size(); ++col) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][col] == 0)
            ++pivot;
        if (pivot == rows.size())
            continue;
        std::swap(rows[rank], rows[pivot]);
        std::uint32_t inv = inverse_mod(rows[rank][col], q);
        for (auto& x : rows[rank])
            x = static_cast<std::uint32_t>(static_cast<std::uint64_t>(x) * inv % q);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][col] == 0)
                continue;
            std::uint64_t f = rows[r][col];
            for (std::size_t c = 0; c < n; ++c)
                rows[r][c] = static_cast<std::uint32_t>((rows[r][c] + (q - f) * rows[rank][c]) % q);
        }
        ++rank;
    }
    rows.resize(rank);
    s.basis_ = std::move(rows);
    return s;
}

Subspace Subspace::whole(std::size_t n, std::uint32_t q) {
    std::vector<std::vector<std::uint32_t>> rows(n, std::vector<std::uint32_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        rows[i][i] = 1;
    return span(n, q, std::move(rows));
}

Subspace Subspace::operator+(const Subspace& other) const {
    auto rows = basis_;
    rows.insert(rows.end(), other.basis_.begin(), other.basis_.end());
    return span(n_, q_, std::move(rows));
}

Subspace Subspace::image(const FqMatrix& t) const {
    std::vector<std::vector<std::uint32_t>> rows;
    rows.reserve(basis_.size());
    for (const auto& v : basis_)
        rows.push_back(t.apply(v));
    return span(n_, q_, std::move(rows));
}

bool Subspace::contains(const Subspace& other) const { return (*this + other).dim() == dim(); }

StratumModel::StratumModel(const MDPartition& lambda)
    : layout(lambda), matrices(formal_multiplication_matrices(layout)), relations(commutator_relations(lambda)),
      residual(eliminate(relations)) {}

bool satisfies_relations(const RelationSystem& system, const StratumPoint& point) {
    return std::all_of(system.relations.begin(), system.relations.end(),
                       [&](const Poly& p) { return p.eval_mod(point.values, point.q) == 0; });
}

SolutionComparison compare_solution_sets(const RelationSystem& a, const RelationSystem& b, std::uint32_t q,
                                         std::uint64_t budget) {
    if (a.variables.size() != b.variables.size())
        throw Error("compare_solution_sets: systems have different variable counts");
    const std::size_t nvars = a.variables.size();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < nvars; ++i) {
        if (total > budget / q)
            throw BudgetExceeded("exhaustive comparison over F_" + std::to_string(q) + " needs " +
                                     std::to_string(q) + "^" + std::to_string(nvars) + " assignments",
                                 UINT64_MAX);
        total *= q;
    }
    SolutionComparison cmp;
    StratumPoint pt{q, std::vector<std::uint32_t>(nvars, 0)};
    for (;;) {
        ++cmp.assignments;
        const bool in_a = satisfies_relations(a, pt);
        const bool in_b = satisfies_relations(b, pt);
        cmp.solutions_a += in_a;
        cmp.solutions_b += in_b;
        if (in_a != in_b)
            cmp.equal = false;
        std::size_t k = 0;
        while (k < nvars && ++pt.values[k] == q)
            pt.values[k++] = 0;
        if (k == nvars)
            break;
    }
    return cmp;
}

std::vector<StratumPoint> sample_points(const StratumModel& model, std::uint32_t q, std::size_t count,
                                        std::uint64_t budget, std::uint64_t seed) {
    const ResidualSystem& res = model.residual;
    const std::string who = model.layout.lambda().encode();
    if (res.inconsistent)
        throw NoPoints("stratum " + who + " is empty");

    std::vector<VarId> free_vars = res.residual_vars;
    free_vars.insert(free_vars.end(), res.pure_free.begin(), res.pure_free.end());
    std::sort(free_vars.begin(), free_vars.end());
    const std::size_t nvars = res.variables.size();

    auto residual_ok = [&](const std::vector<std::uint32_t>& values) {
        return std::all_of(res.residual_relations.begin(), res.residual_relations.end(),
                           [&](const Poly& p) { return p.eval_mod(values, q) == 0; });
    };
    auto finish = [&](std::vector<std::uint32_t> values) {
        res.back_substitute(values, q);
        StratumPoint pt{q, std::move(values)};
        if (!satisfies_relations(model.relations, pt))
            throw Error("stratum " + who + ": back-substituted point violates the original relations");
        return pt;
    };

    std::mt19937_64 rng(seed);
    std::vector<StratumPoint> out;
    double space = 1;
    for (std::size_t i = 0; i < free_vars.size(); ++i)
        space *= q;

    if (space <= 65536.0) {
        const auto total = static_cast<std::uint64_t>(space);
        std::vector<std::vector<std::uint32_t>> solutions;
        for (std::uint64_t code = 0; code < total; ++code) {
            std::vector<std::uint32_t> values(nvars, 0);
            std::uint64_t c = code;
            for (VarId v : free_vars) {
                values[v] = static_cast<std::uint32_t>(c % q);
                c /= q;
            }
            if (residual_ok(values))
                solutions.push_back(std::move(values));
        }
        if (solutions.empty())
            throw NoPoints("stratum " + who + " has no points over F_" + std::to_string(q));
        std::shuffle(solutions.begin(), solutions.end(), rng);
        if (solutions.size() > count)
            solutions.resize(count);
        for (auto& s : solutions)
            out.push_back(finish(std::move(s)));
        return out;
    }

    std::set<std::vector<std::uint32_t>> seen;
    std::uniform_int_distribution<std::uint32_t> digit(0, q - 1);
    for (std::uint64_t attempt = 0; attempt < budget && out.size() < count; ++attempt) {
        std::vector<std::uint32_t> values(nvars, 0);
        for (VarId v : free_vars)
            values[v] = digit(rng);
        if (!residual_ok(values) || !seen.insert(values).second)
            continue;
        out.push_back(finish(std::move(values)));
    }
    if (out.empty())
        throw BudgetExceeded("no point of stratum " + who + " found in " + std::to_string(budget) + " attempts",
                             budget);
    return out;
}

std::vector<FqMatrix> instantiate_matrices(const StratumModel& model, const StratumPoint& point) {
    std::vector<FqMatrix> out;
    for (const auto& t : model.matrices) {
        FqMatrix f(t.size(), point.q);
        for (std::size_t r = 0; r < t.size(); ++r)
            for (std::size_t c = 0; c < t.size(); ++c) {
                const MatrixEntry& e = t.at(r, c);
                if (e.kind == MatrixEntry::Kind::One)
                    f.at(r, c) = 1 % point.q;
                else if (e.kind == MatrixEntry::Kind::Var)
                    f.at(r, c) = point.values.at(e.var) % point.q;
            }
        out.push_back(std::move(f));
    }
    return out;
}

bool check_commuting(std::span<const FqMatrix> matrices) {
    for (std::size_t r = 0; r < matrices.size(); ++r)
        for (std::size_t s = r + 1; s < matrices.size(); ++s)
            if (matrices[r] * matrices[s] != matrices[s] * matrices[r])
                return false;
    return true;
}

namespace {

class ChainRecovery {
public:
    ChainRecovery(std::span<const FqMatrix> mats, int m) : mats_(mats), m_(m) {}

    void run(const Subspace& v, const Subspace& w, int level, Index& prefix) {
        if (level > m_) {
            const std::size_t d = v.dim() - w.dim();
            if (d > 0)
                raw_.emplace_back(prefix, static_cast<int>(d));
            return;
        }
        const FqMatrix& t = mats_[static_cast<std::size_t>(level)];
        std::size_t telescoped = 0;
        Subspace cur = v;
        for (int r = 0;; ++r) {
            Subspace next = cur.image(t);
            Subspace child_v = cur + w;
            Subspace child_w = next + w;
            const std::size_t d = child_v.dim() - child_w.dim();
            if (d == 0)
                break;
            for (const FqMatrix& other : mats_) {
                if (!child_v.contains(child_v.image(other)) || !child_w.contains(child_w.image(other)))
                    throw Error("subquotient at level " + std::to_string(level) + ", r=" + std::to_string(r) +
                                " is not invariant under every multiplication matrix");
            }
            telescoped += d;
            prefix.push_back(r);
            run(child_v, child_w, level + 1, prefix);
            prefix.pop_back();
            cur = std::move(next);
        }
        if (telescoped != v.dim() - w.dim())
            throw Error("subquotient dimensions at level " + std::to_string(level) + " sum to " +
                        std::to_string(telescoped) + ", expected " + std::to_string(v.dim() - w.dim()));
    }

    std::vector<std::pair<Index, int>> take() { return std::move(raw_); }

private:
    std::span<const FqMatrix> mats_;
    int m_;
    std::vector<std::pair<Index, int>> raw_;
};

} // namespace

MDPartition partition_from_matrices(std::span<const FqMatrix> matrices, int m, int n) {
    if (matrices.size() != static_cast<std::size_t>(m) + 1)
        throw Error("expected " + std::to_string(m + 1) + " matrices, got " + std::to_string(matrices.size()));
    for (const auto& t : matrices)
        if (t.size() != static_cast<std::size_t>(n))
            throw Error("matrix size does not match n = " + std::to_string(n));
    if (!check_commuting(matrices))
        throw NotCommuting("multiplication matrices do not commute");
    if (n == 0)
        return MDPartition(m);
    const std::uint32_t q = matrices[0].modulus();
    ChainRecovery chain(matrices, m);
    Index prefix;
    chain.run(Subspace::whole(static_cast<std::size_t>(n), q), Subspace(static_cast<std::size_t>(n), q), 1, prefix);
    return validate_partition(m, chain.take());
}

bool generators_annihilate(const StratumModel& model, std::span<const FqMatrix> matrices,
                           const StratumPoint& point) {
    const auto& layout = model.layout;
    const std::size_t n = layout.size();
    if (n == 0)
        return true;
    const std::uint32_t q = point.q;
    for (std::size_t j = 0; j < layout.border().size(); ++j) {
        const Monomial& b = layout.border()[j];
        std::vector<std::uint32_t> v(n, 0);
        v[0] = 1; // t_1 = 1 is first in canonical order
        for (std::size_t i = 0; i < b.exps.size(); ++i)
            for (int e = 0; e < b.exps[i]; ++e)
                v = matrices[i].apply(v);
        for (std::size_t k = 0; k < n; ++k)
            if (auto var = layout.var(j, k))
                v[k] = (v[k] + q - point.values.at(*var) % q) % q;
        if (std::any_of(v.begin(), v.end(), [](std::uint32_t x) { return x != 0; }))
            return false;
    }
    return true;
}

std::vector<std::string> ideal_generators(const StratumLayout& layout, const StratumPoint* point) {
    std::vector<std::string> out;
    for (std::size_t j = 0; j < layout.border().size(); ++j) {
        std::string s = monomial_string(layout.border()[j]);
        for (std::size_t i = 0; i < layout.size(); ++i) {
            auto var = layout.var(j, i);
            if (!var)
                continue;
            const std::string mono = monomial_string(layout.basis()[i]);
            if (!point) {
                s += " - " + layout.variables()[*var].name() + (mono == "1" ? "" : "*" + mono);
                continue;
            }
            const std::uint32_t c = point->values.at(*var) % point->q;
            if (c == 0)
                continue;
            if (c == 1)
                s += " - " + mono;
            else
                s += " - " + std::to_string(c) + (mono == "1" ? "" : "*" + mono);
        }
        out.push_back(std::move(s));
    }
    return out;
}

} // namespace hilbstrat
