#pragma once

#include "hilbstrat/motivic.hpp"

#include <compare>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hilbstrat {

/// A tuple (r_1, ..., r_m) in N^m.
using Index = std::vector<int>;

/// An m-dimensional partition: a finitely supported monotone array
/// lambda: N^m -> N. Only positive entries are stored.
class MDPartition {
public:
    explicit MDPartition(int m = 1);

    int dim() const noexcept { return m_; }
    int weight() const noexcept { return n_; }
    /// 0 for tuples outside the support.
    int at(const Index& r) const;
    const std::map<Index, int>& entries() const noexcept { return entries_; }

    /// Canonical text key, e.g. "2:[0,0]=2;[0,1]=1;[1,0]=1".
    std::string encode() const;

    friend bool operator==(const MDPartition&, const MDPartition&) = default;
    friend auto operator<=>(const MDPartition& a, const MDPartition& b) {
        if (auto c = a.m_ <=> b.m_; c != 0)
            return c;
        return a.entries_ <=> b.entries_;
    }

private:
    friend MDPartition validate_partition(int m, const std::vector<std::pair<Index, int>>& raw);
    int m_;
    int n_ = 0;
    std::map<Index, int> entries_;
};

/// Checks positivity and monotonicity and returns the normalized partition.
/// Throws NonPositiveEntry, NonMonotone (naming the offending pair), or
/// InvalidPartition for structural problems.
MDPartition validate_partition(int m, const std::vector<std::pair<Index, int>>& raw);

/// Every m-dimensional partition of n, once each, ordered lexicographically
/// by the flattened height array over the box [0, n)^m (x_1 most significant).
/// Throws BudgetExceeded once more than `limit` partitions have been produced.
std::vector<MDPartition> enumerate_partitions(int m, int n,
                                              std::size_t limit = std::numeric_limits<std::size_t>::max());

/// Exponent tuple (e_0, e_1, ..., e_m); e_0 belongs to the height variable x_0.
///
/// Ordering is the canonical monomial order: lex on (e_1, ..., e_m) with x_1
/// most significant, ties broken by e_0 ascending.
struct Monomial {
    std::vector<int> exps;

    int dim() const noexcept { return static_cast<int>(exps.size()) - 1; }
    Index tail() const { return Index(exps.begin() + 1, exps.end()); }
    Monomial times(int var) const;

    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);
};

/// Lex comparison of m-tuples with the first coordinate most significant.
bool lex_greater(const Index& s, const Index& r);

/// A canonically sorted list of monomials with binary-search lookup.
class MonomialSet {
public:
    MonomialSet() = default;
    explicit MonomialSet(std::vector<Monomial> monomials);

    std::size_t size() const noexcept { return monomials_.size(); }
    bool empty() const noexcept { return monomials_.empty(); }
    const Monomial& operator[](std::size_t i) const { return monomials_[i]; }
    const std::vector<Monomial>& monomials() const noexcept { return monomials_; }
    auto begin() const { return monomials_.begin(); }
    auto end() const { return monomials_.end(); }

    std::optional<std::size_t> index_of(const Monomial& mono) const;
    bool contains(const Monomial& mono) const { return index_of(mono).has_value(); }

private:
    std::vector<Monomial> monomials_;
};

/// O_lambda: the monomial basis t_1..t_n of the quotient algebra.
struct OrderIdeal : MonomialSet {
    using MonomialSet::MonomialSet;
};

/// The border of O_lambda: monomials x_i * t outside O_lambda.
struct Border : MonomialSet {
    using MonomialSet::MonomialSet;
};

OrderIdeal order_ideal(const MDPartition& lambda);
Border border(const MDPartition& lambda);

/// Tuples r where every coordinate is 0 or decrementing it strictly increases
/// lambda. Tuples with lambda_r = 0 are included when the condition holds.
std::vector<Index> corner_indices(const MDPartition& lambda);

/// sum over integer partitions beta of n of L^(n - #parts(beta)).
MotivicPoly closed_form_punctual_A2(int n);

/// Renders a monomial using z, x, y for m <= 2 and x0..xm otherwise.
std::string monomial_string(const Monomial& mono);

} // namespace hilbstrat
