#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <string>
#include <vector>

namespace hilbstrat {

using BigInt = boost::multiprecision::cpp_int;

/// An element of Z[L], where L is the class of the affine line.
/// Coefficients are stored by ascending power with no trailing zeros.
class MotivicPoly {
public:
    MotivicPoly() = default;
    MotivicPoly(long long constant);
    explicit MotivicPoly(std::vector<BigInt> coeffs);

    /// L^k.
    static MotivicPoly lefschetz(int k = 1);
    /// c * L^k.
    static MotivicPoly term(const BigInt& c, int k);

    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    BigInt coeff(int k) const;
    const std::vector<BigInt>& coeffs() const noexcept { return coeffs_; }

    MotivicPoly& operator+=(const MotivicPoly& rhs);
    MotivicPoly& operator-=(const MotivicPoly& rhs);
    MotivicPoly& operator*=(const MotivicPoly& rhs);
    friend MotivicPoly operator+(MotivicPoly a, const MotivicPoly& b) { return a += b; }
    friend MotivicPoly operator-(MotivicPoly a, const MotivicPoly& b) { return a -= b; }
    friend MotivicPoly operator*(const MotivicPoly& a, const MotivicPoly& b);
    MotivicPoly operator-() const;
    friend bool operator==(const MotivicPoly&, const MotivicPoly&) = default;

    /// Specialization L -> x (the point count over F_x when x is a prime).
    BigInt eval(const BigInt& x) const;

    /// Compact table form, e.g. "L^8+2L^7+L+1".
    std::string to_string() const;
    /// Expression form, e.g. "2*L^3 - L^2".
    std::string to_expression() const;

private:
    void trim();
    std::vector<BigInt> coeffs_;
};

/// Power series in T over Z[L], truncated at T^order (coefficients c_0..c_order).
class MotivicSeries {
public:
    explicit MotivicSeries(int order);
    MotivicSeries(int order, std::vector<MotivicPoly> coeffs);

    /// 1 + T + T^2 + ... truncated at `order`.
    static MotivicSeries geometric(int order);
    static MotivicSeries one(int order);

    int order() const noexcept { return order_; }
    const MotivicPoly& operator[](int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }
    MotivicPoly& operator[](int k) { return coeffs_.at(static_cast<std::size_t>(k)); }
    const std::vector<MotivicPoly>& coeffs() const noexcept { return coeffs_; }

    /// Explicit re-truncation to a smaller order.
    MotivicSeries truncated(int order) const;

    friend bool operator==(const MotivicSeries&, const MotivicSeries&) = default;

private:
    int order_;
    std::vector<MotivicPoly> coeffs_;
};

/// Exponents a_1..a_N of A(T) = prod_i (1 - T^i)^(-a_i).
struct EulerFactors {
    int order = 0;
    std::vector<MotivicPoly> exponents; // exponents[i-1] = a_i

    const MotivicPoly& a(int i) const { return exponents.at(static_cast<std::size_t>(i - 1)); }
    friend bool operator==(const EulerFactors&, const EulerFactors&) = default;
};

/// Cauchy product truncated at `order`. Both operands must share one
/// truncation order, which must be at least `order`.
MotivicSeries series_mul(const MotivicSeries& a, const MotivicSeries& b, int order);

/// Inverse of a series whose constant term is +1 or -1.
MotivicSeries series_inverse(const MotivicSeries& a, int order);

/// (1 - T^step)^(-exponent) expanded through the power structure:
/// for exponent = sum_k c_k L^k this is prod_k (1 - L^k T^step)^(-c_k),
/// using (1 - T)^(-L^k) = sum_n L^(nk) T^n.
MotivicSeries power_structure_factor(int step, const MotivicPoly& exponent, int order);

EulerFactors euler_factorization(const MotivicSeries& a, int order);

/// prod_i (1 - T^i)^(-a_i * exponent), truncated at `order`.
MotivicSeries power_structure_pow(const EulerFactors& factors, const MotivicPoly& exponent, int order);

/// prod_i (1 - T^i)^(-a_i).
MotivicSeries expand(const EulerFactors& factors);

/// Global series (H_{A^d,0}(T))^{L^d} from the punctual series.
MotivicSeries global_hilbert_series(int d, int order, const MotivicSeries& punctual);

} // namespace hilbstrat
