#pragma once

#include "hilbstrat/partitions.hpp"
#include "hilbstrat/relations.hpp"
#include "hilbstrat/stratum.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace hilbstrat {

/// Dense square matrix over F_q, row-major.
class FqMatrix {
public:
    FqMatrix(std::size_t n, std::uint32_t q) : n_(n), q_(q), a_(n * n, 0) {}

    std::size_t size() const noexcept { return n_; }
    std::uint32_t modulus() const noexcept { return q_; }
    std::uint32_t at(std::size_t r, std::size_t c) const { return a_[r * n_ + c]; }
    std::uint32_t& at(std::size_t r, std::size_t c) { return a_[r * n_ + c]; }

    std::vector<std::uint32_t> apply(std::span<const std::uint32_t> v) const;
    friend FqMatrix operator*(const FqMatrix& a, const FqMatrix& b);
    friend bool operator==(const FqMatrix&, const FqMatrix&) = default;

private:
    std::size_t n_;
    std::uint32_t q_;
    std::vector<std::uint32_t> a_;
};

/// A subspace of F_q^n stored as its reduced row echelon basis.
class Subspace {
public:
    Subspace(std::size_t n, std::uint32_t q) : n_(n), q_(q) {}
    static Subspace span(std::size_t n, std::uint32_t q, std::vector<std::vector<std::uint32_t>> vectors);
    static Subspace whole(std::size_t n, std::uint32_t q);

    std::size_t dim() const noexcept { return basis_.size(); }
    const std::vector<std::vector<std::uint32_t>>& basis() const noexcept { return basis_; }

    Subspace operator+(const Subspace& other) const;
    Subspace image(const FqMatrix& t) const;
    bool contains(const Subspace& other) const;
    friend bool operator==(const Subspace&, const Subspace&) = default;

private:
    std::size_t n_;
    std::uint32_t q_;
    std::vector<std::vector<std::uint32_t>> basis_;
};

/// Layout, symbolic matrices, relations and residual for one partition.
struct StratumModel {
    StratumLayout layout;
    std::vector<SymbolicMatrix> matrices;
    RelationSystem relations;
    ResidualSystem residual;

    explicit StratumModel(const MDPartition& lambda);
};

/// A point of V_lambda over F_q: values for every coefficient variable.
struct StratumPoint {
    std::uint32_t q = 2;
    std::vector<std::uint32_t> values; // indexed by VarId

    friend bool operator==(const StratumPoint&, const StratumPoint&) = default;
    friend bool operator<(const StratumPoint& a, const StratumPoint& b) { return a.values < b.values; }
};

/// True iff the assignment satisfies every relation of the original system.
bool satisfies_relations(const RelationSystem& system, const StratumPoint& point);

struct SolutionComparison {
    bool equal = true;
    std::uint64_t assignments = 0;
    std::uint64_t solutions_a = 0;
    std::uint64_t solutions_b = 0;
};

/// Exhaustively compares the F_q zero sets of two systems over the same
/// variables. Throws BudgetExceeded if q^vars exceeds `budget`.
SolutionComparison compare_solution_sets(const RelationSystem& a, const RelationSystem& b, std::uint32_t q,
                                         std::uint64_t budget);

/// Up to `count` distinct points. Exhaustive (then seeded shuffle) when the
/// free space has at most 2^16 assignments, rejection sampling otherwise with
/// at most `budget` attempts. Throws NoPoints or BudgetExceeded.
std::vector<StratumPoint> sample_points(const StratumModel& model, std::uint32_t q, std::size_t count,
                                        std::uint64_t budget, std::uint64_t seed);

std::vector<FqMatrix> instantiate_matrices(const StratumModel& model, const StratumPoint& point);

bool check_commuting(std::span<const FqMatrix> matrices);

/// Recovers the partition through the colon-ideal subquotient chain,
/// processing x_1 first. Throws NotCommuting, or Error if a recursion
/// invariant (telescoping, invariance) fails.
MDPartition partition_from_matrices(std::span<const FqMatrix> matrices, int m, int n);

/// F_M(T) applied to the class of 1 vanishes for every border generator.
bool generators_annihilate(const StratumModel& model, std::span<const FqMatrix> matrices,
                           const StratumPoint& point);

/// Border generators "x^M - sum a * t" with z, x, y naming for m <= 2.
/// With no point, coefficients are printed as variable names.
std::vector<std::string> ideal_generators(const StratumLayout& layout, const StratumPoint* point = nullptr);

} // namespace hilbstrat
