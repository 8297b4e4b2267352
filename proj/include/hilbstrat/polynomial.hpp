#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace hilbstrat {

using VarId = std::uint32_t;

/// A monomial in coefficient variables: a sorted multiset of variable ids.
/// The empty term is the constant monomial.
using Term = std::vector<VarId>;

/// Sparse multivariate polynomial with int64 coefficients. Arithmetic is
/// overflow-checked and throws std::overflow_error.
class Poly {
public:
    Poly() = default;

    static Poly constant(std::int64_t c);
    static Poly variable(VarId v);

    const std::map<Term, std::int64_t>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const noexcept;
    std::int64_t constant_term() const;
    int total_degree() const noexcept;
    int degree_in(VarId v) const noexcept;
    std::vector<VarId> variables() const;

    void add_term(const Term& t, std::int64_t c);

    Poly& operator+=(const Poly& rhs);
    Poly& operator-=(const Poly& rhs);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly operator-() const;
    Poly scaled(std::int64_t c) const;

    /// Replace every occurrence of `v` by `value`.
    Poly substitute(VarId v, const Poly& value) const;

    /// Evaluate modulo a prime q; `values` is indexed by VarId (entries < q).
    std::uint32_t eval_mod(std::span<const std::uint32_t> values, std::uint32_t q) const;

    /// Flip the sign so the first term (in map order) has a positive coefficient.
    Poly sign_normalized() const;

    /// Render with the given variable names ("a*b - c + 2").
    std::string to_string(const std::vector<std::string>& names) const;

    friend bool operator==(const Poly&, const Poly&) = default;
    friend bool operator<(const Poly& a, const Poly& b) { return a.terms_ < b.terms_; }

private:
    std::map<Term, std::int64_t> terms_;
};

Term multiply_terms(const Term& a, const Term& b);

} // namespace hilbstrat
