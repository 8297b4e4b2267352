#pragma once

#include "hilbstrat/partitions.hpp"
#include "hilbstrat/polynomial.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hilbstrat {

/// Coefficient of basis monomial t_i in the border generator led by b_j.
/// Exists only when tail(t_i) is lex-greater than tail(b_j).
struct CoeffVar {
    std::size_t border_index = 0;
    std::size_t target_index = 0;
    Monomial border;
    Monomial target;

    /// "a[r0 r1 ...][t s1 ...]": superscript is b_j, subscript is t_i.
    std::string name() const;
};

/// Everything attached to one partition: O_lambda, its border and the
/// admissible coefficient variables, with id lookup.
class StratumLayout {
public:
    explicit StratumLayout(MDPartition lambda);

    const MDPartition& lambda() const noexcept { return lambda_; }
    int dim() const noexcept { return lambda_.dim(); }
    std::size_t size() const noexcept { return basis_.size(); }
    const OrderIdeal& basis() const noexcept { return basis_; }
    const Border& border() const noexcept { return border_; }
    const std::vector<CoeffVar>& variables() const noexcept { return vars_; }
    std::vector<std::string> variable_names() const;

    /// Variable for (border j, basis i), if admissible.
    std::optional<VarId> var(std::size_t border_index, std::size_t target_index) const;

    /// rho_r(i): where x_r * t_i lands.
    struct Step {
        bool in_basis;
        std::size_t index; // basis index or border index
    };
    Step step(int r, std::size_t i) const;

private:
    MDPartition lambda_;
    OrderIdeal basis_;
    Border border_;
    std::vector<CoeffVar> vars_;
    std::map<std::pair<std::size_t, std::size_t>, VarId> lookup_;
};

std::vector<CoeffVar> coefficient_variables(const MDPartition& lambda);

struct MatrixEntry {
    enum class Kind { Zero, One, Var };
    Kind kind = Kind::Zero;
    VarId var = 0;

    friend bool operator==(const MatrixEntry&, const MatrixEntry&) = default;
};

/// Formal multiplication matrix; column l holds the image of t_l.
class SymbolicMatrix {
public:
    explicit SymbolicMatrix(std::size_t n) : n_(n), entries_(n * n) {}

    std::size_t size() const noexcept { return n_; }
    const MatrixEntry& at(std::size_t row, std::size_t col) const { return entries_[row * n_ + col]; }
    MatrixEntry& at(std::size_t row, std::size_t col) { return entries_[row * n_ + col]; }
    Poly poly_at(std::size_t row, std::size_t col) const;

private:
    std::size_t n_;
    std::vector<MatrixEntry> entries_;
};

/// T_0, ..., T_m.
std::vector<SymbolicMatrix> formal_multiplication_matrices(const StratumLayout& layout);

struct RelationSystem {
    std::vector<CoeffVar> variables;
    std::vector<Poly> relations;

    /// Sign-normalize, drop zeros, sort and deduplicate.
    void normalize();
    std::vector<std::string> variable_names() const;
};

/// One entry of a commutator T_r T_s - T_s T_r (or the matching equation).
struct RelationEntry {
    int r = 0;
    int s = 0;
    std::size_t row = 0;
    std::size_t col = 0;
    Poly poly;
};

/// All nonzero entries of T_r T_s - T_s T_r for r < s.
std::vector<RelationEntry> commutator_entries(const StratumLayout& layout);

/// The three equation families (neighbour cases one and two, and the
/// across-the-border case), written from the rho maps rather than from a
/// matrix product. Entry (r, s, p, i) matches commutator entry (p, i) up to sign.
std::vector<RelationEntry> hardrel_entries(const StratumLayout& layout);

RelationSystem commutator_relations(const MDPartition& lambda);
RelationSystem hardrel_relations(const MDPartition& lambda);

/// Entries where the two routes disagree (after sign normalization).
std::vector<RelationEntry> relation_mismatches(const StratumLayout& layout);

} // namespace hilbstrat
