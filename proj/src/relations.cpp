#include "hilbstrat/relations.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace hilbstrat {

std::string CoeffVar::name() const {
    std::ostringstream os;
    os << "a[";
    for (std::size_t k = 0; k < border.exps.size(); ++k)
        os << (k ? " " : "") << border.exps[k];
    os << "][";
    for (std::size_t k = 0; k < target.exps.size(); ++k)
        os << (k ? " " : "") << target.exps[k];
    os << ']';
    return os.str();
}

StratumLayout::StratumLayout(MDPartition lambda)
    : lambda_(std::move(lambda)), basis_(order_ideal(lambda_)), border_(hilbstrat::border(lambda_)) {
    for (std::size_t j = 0; j < border_.size(); ++j) {
        const Index tail = border_[j].tail();
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            if (!lex_greater(basis_[i].tail(), tail))
                continue;
            lookup_.emplace(std::make_pair(j, i), static_cast<VarId>(vars_.size()));
            vars_.push_back(CoeffVar{j, i, border_[j], basis_[i]});
        }
    }
}

std::vector<std::string> StratumLayout::variable_names() const {
    std::vector<std::string> names;
    names.reserve(vars_.size());
    for (const auto& v : vars_)
        names.push_back(v.name());
    return names;
}

std::optional<VarId> StratumLayout::var(std::size_t border_index, std::size_t target_index) const {
    auto it = lookup_.find({border_index, target_index});
    if (it == lookup_.end())
        return std::nullopt;
    return it->second;
}

StratumLayout::Step StratumLayout::step(int r, std::size_t i) const {
    Monomial next = basis_[i].times(r);
    if (auto k = basis_.index_of(next))
        return {true, *k};
    // x_r * t_i is in the border by definition of the border.
    return {false, *border_.index_of(next)};
}

std::vector<CoeffVar> coefficient_variables(const MDPartition& lambda) {
    return StratumLayout(lambda).variables();
}

Poly SymbolicMatrix::poly_at(std::size_t row, std::size_t col) const {
    const MatrixEntry& e = at(row, col);
    switch (e.kind) {
    case MatrixEntry::Kind::One:
        return Poly::constant(1);
    case MatrixEntry::Kind::Var:
        return Poly::variable(e.var);
    case MatrixEntry::Kind::Zero:
        break;
    }
    return {};
}

std::vector<SymbolicMatrix> formal_multiplication_matrices(const StratumLayout& layout) {
    const std::size_t n = layout.size();
    std::vector<SymbolicMatrix> mats;
    for (int r = 0; r <= layout.dim(); ++r) {
        SymbolicMatrix t(n);
        for (std::size_t l = 0; l < n; ++l) {
            auto st = layout.step(r, l);
            if (st.in_basis) {
                t.at(st.index, l) = {MatrixEntry::Kind::One, 0};
                continue;
            }
            for (std::size_t k = 0; k < n; ++k)
                if (auto v = layout.var(st.index, k))
                    t.at(k, l) = {MatrixEntry::Kind::Var, *v};
        }
        mats.push_back(std::move(t));
    }
    return mats;
}

void RelationSystem::normalize() {
    std::vector<Poly> out;
    out.reserve(relations.size());
    for (const Poly& p : relations)
        if (!p.is_zero())
            out.push_back(p.sign_normalized());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    relations = std::move(out);
}

std::vector<std::string> RelationSystem::variable_names() const {
    std::vector<std::string> names;
    names.reserve(variables.size());
    for (const auto& v : variables)
        names.push_back(v.name());
    return names;
}

std::vector<RelationEntry> commutator_entries(const StratumLayout& layout) {
    const std::size_t n = layout.size();
    const auto mats = formal_multiplication_matrices(layout);
    std::vector<std::vector<Poly>> dense;
    for (const auto& t : mats) {
        std::vector<Poly> d(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                d[i * n + j] = t.poly_at(i, j);
        dense.push_back(std::move(d));
    }
    std::vector<RelationEntry> out;
    const int m = layout.dim();
    for (int r = 0; r <= m; ++r)
        for (int s = r + 1; s <= m; ++s) {
            const auto& a = dense[static_cast<std::size_t>(r)];
            const auto& b = dense[static_cast<std::size_t>(s)];
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t l = 0; l < n; ++l) {
                    Poly e;
                    for (std::size_t k = 0; k < n; ++k) {
                        const Poly& a_ik = a[i * n + k];
                        const Poly& b_kl = b[k * n + l];
                        if (!a_ik.is_zero() && !b_kl.is_zero())
                            e += a_ik * b_kl;
                        const Poly& b_ik = b[i * n + k];
                        const Poly& a_kl = a[k * n + l];
                        if (!b_ik.is_zero() && !a_kl.is_zero())
                            e -= b_ik * a_kl;
                    }
                    if (!e.is_zero())
                        out.push_back({r, s, i, l, std::move(e)});
                }
        }
    return out;
}

namespace {

class EquationBuilder {
public:
    explicit EquationBuilder(const StratumLayout& layout) : layout_(layout) {}

    Poly alpha(std::size_t border_index, std::size_t p) const {
        if (auto v = layout_.var(border_index, p))
            return Poly::variable(*v);
        return {};
    }

    // Coefficient of t_p in T_r applied to the column of border element b_k:
    //   sum_{d: x_r t_d in O} delta(p, rho_r(d)) alpha_d^k
    // + sum_{d: x_r t_d in border} alpha_p^{rho_r(d)} alpha_d^k
    Poly through(int r, std::size_t k, std::size_t p) const {
        Poly acc;
        for (std::size_t d = 0; d < layout_.size(); ++d) {
            Poly a_dk = alpha(k, d);
            if (a_dk.is_zero())
                continue;
            auto st = layout_.step(r, d);
            if (st.in_basis) {
                if (st.index == p)
                    acc += a_dk;
            } else {
                Poly a_p = alpha(st.index, p);
                if (!a_p.is_zero())
                    acc += a_p * a_dk;
            }
        }
        return acc;
    }

private:
    const StratumLayout& layout_;
};

} // namespace

std::vector<RelationEntry> hardrel_entries(const StratumLayout& layout) {
    const std::size_t n = layout.size();
    const int m = layout.dim();
    EquationBuilder eq(layout);
    std::vector<RelationEntry> out;
    auto border_of = [&](std::size_t k, int r) {
        return *layout.border().index_of(layout.border()[k].times(r));
    };
    for (int r = 0; r <= m; ++r)
        for (int s = r + 1; s <= m; ++s)
            for (std::size_t i = 0; i < n; ++i) {
                auto xr = layout.step(r, i);
                auto xs = layout.step(s, i);
                if (xr.in_basis && xs.in_basis)
                    continue;
                for (std::size_t p = 0; p < n; ++p) {
                    Poly e;
                    if (xr.in_basis) {
                        // (1): x_r t_i = t_j, x_s t_i = b_k, x_r b_k = b_l.
                        std::size_t l = border_of(xs.index, r);
                        e = eq.through(r, xs.index, p) - eq.alpha(l, p);
                    } else if (xs.in_basis) {
                        // (2): x_s t_i = t_j, x_r t_i = b_k, x_s b_k = b_l.
                        std::size_t l = border_of(xr.index, s);
                        e = eq.through(s, xr.index, p) - eq.alpha(l, p);
                    } else {
                        // (3): x_r t_i = b_j, x_s t_i = b_k.
                        e = eq.through(r, xs.index, p) - eq.through(s, xr.index, p);
                    }
                    if (!e.is_zero())
                        out.push_back({r, s, p, i, std::move(e)});
                }
            }
    return out;
}

namespace {

RelationSystem collect(const StratumLayout& layout, const std::vector<RelationEntry>& entries) {
    RelationSystem sys;
    sys.variables = layout.variables();
    for (const auto& e : entries)
        sys.relations.push_back(e.poly);
    sys.normalize();
    return sys;
}

} // namespace

RelationSystem commutator_relations(const MDPartition& lambda) {
    StratumLayout layout(lambda);
    return collect(layout, commutator_entries(layout));
}

RelationSystem hardrel_relations(const MDPartition& lambda) {
    StratumLayout layout(lambda);
    return collect(layout, hardrel_entries(layout));
}

std::vector<RelationEntry> relation_mismatches(const StratumLayout& layout) {
    using Key = std::tuple<int, int, std::size_t, std::size_t>;
    std::map<Key, Poly> lhs, rhs;
    for (auto& e : commutator_entries(layout))
        lhs[{e.r, e.s, e.row, e.col}] = e.poly.sign_normalized();
    for (auto& e : hardrel_entries(layout))
        rhs[{e.r, e.s, e.row, e.col}] = e.poly.sign_normalized();
    std::vector<RelationEntry> out;
    auto report = [&](const Key& k, const Poly& p) {
        out.push_back({std::get<0>(k), std::get<1>(k), std::get<2>(k), std::get<3>(k), p});
    };
    for (const auto& [k, p] : lhs) {
        auto it = rhs.find(k);
        if (it == rhs.end() || it->second != p)
            report(k, p);
    }
    for (const auto& [k, p] : rhs)
        if (!lhs.count(k))
            report(k, p);
    return out;
}

} // namespace hilbstrat
