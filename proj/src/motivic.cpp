#include "hilbstrat/motivic.hpp"

#include "hilbstrat/errors.hpp"

#include <algorithm>
#include <sstream>

namespace hilbstrat {

MotivicPoly::MotivicPoly(long long constant) {
    if (constant != 0)
        coeffs_.push_back(BigInt(constant));
}

MotivicPoly::MotivicPoly(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

MotivicPoly MotivicPoly::lefschetz(int k) {
    std::vector<BigInt> c(static_cast<std::size_t>(k) + 1, BigInt(0));
    c.back() = 1;
    return MotivicPoly(std::move(c));
}

MotivicPoly MotivicPoly::term(const BigInt& c, int k) {
    std::vector<BigInt> coeffs(static_cast<std::size_t>(k) + 1, BigInt(0));
    coeffs.back() = c;
    return MotivicPoly(std::move(coeffs));
}

void MotivicPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0)
        coeffs_.pop_back();
}

BigInt MotivicPoly::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(coeffs_.size()))
        return 0;
    return coeffs_[static_cast<std::size_t>(k)];
}

MotivicPoly& MotivicPoly::operator+=(const MotivicPoly& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size())
        coeffs_.resize(rhs.coeffs_.size(), BigInt(0));
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i)
        coeffs_[i] += rhs.coeffs_[i];
    trim();
    return *this;
}

MotivicPoly& MotivicPoly::operator-=(const MotivicPoly& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size())
        coeffs_.resize(rhs.coeffs_.size(), BigInt(0));
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i)
        coeffs_[i] -= rhs.coeffs_[i];
    trim();
    return *this;
}

MotivicPoly operator*(const MotivicPoly& a, const MotivicPoly& b) {
    if (a.is_zero() || b.is_zero())
        return {};
    std::vector<BigInt> c(a.coeffs_.size() + b.coeffs_.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
            c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return MotivicPoly(std::move(c));
}

MotivicPoly& MotivicPoly::operator*=(const MotivicPoly& rhs) {
    *this = *this * rhs;
    return *this;
}

MotivicPoly MotivicPoly::operator-() const {
    MotivicPoly r = *this;
    for (auto& c : r.coeffs_)
        c = -c;
    return r;
}

BigInt MotivicPoly::eval(const BigInt& x) const {
    BigInt acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

namespace {

std::string power_of_l(int k) {
    if (k == 0)
        return "";
    if (k == 1)
        return "L";
    return "L^" + std::to_string(k);
}

} // namespace

std::string MotivicPoly::to_string() const {
    if (is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        BigInt c = coeffs_[static_cast<std::size_t>(k)];
        if (c == 0)
            continue;
        if (c < 0) {
            os << '-';
            c = -c;
        } else if (!first) {
            os << '+';
        }
        if (k == 0 || c != 1)
            os << c;
        os << power_of_l(k);
        first = false;
    }
    return os.str();
}

std::string MotivicPoly::to_expression() const {
    if (is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        BigInt c = coeffs_[static_cast<std::size_t>(k)];
        if (c == 0)
            continue;
        bool negative = c < 0;
        if (negative)
            c = -c;
        if (first)
            os << (negative ? "-" : "");
        else
            os << (negative ? " - " : " + ");
        if (k == 0)
            os << c;
        else if (c != 1)
            os << c << '*' << power_of_l(k);
        else
            os << power_of_l(k);
        first = false;
    }
    return os.str();
}

MotivicSeries::MotivicSeries(int order) : order_(order), coeffs_(static_cast<std::size_t>(order) + 1) {
    if (order < 0)
        throw TruncationMismatch("negative truncation order");
}

MotivicSeries::MotivicSeries(int order, std::vector<MotivicPoly> coeffs)
    : order_(order), coeffs_(std::move(coeffs)) {
    if (order < 0)
        throw TruncationMismatch("negative truncation order");
    if (coeffs_.size() != static_cast<std::size_t>(order) + 1)
        throw TruncationMismatch("series of order " + std::to_string(order) + " needs " +
                                 std::to_string(order + 1) + " coefficients, got " +
                                 std::to_string(coeffs_.size()));
}

MotivicSeries MotivicSeries::geometric(int order) {
    return MotivicSeries(order, std::vector<MotivicPoly>(static_cast<std::size_t>(order) + 1, MotivicPoly(1)));
}

MotivicSeries MotivicSeries::one(int order) {
    MotivicSeries s(order);
    s[0] = 1;
    return s;
}

MotivicSeries MotivicSeries::truncated(int order) const {
    if (order > order_)
        throw TruncationMismatch("cannot extend a series of order " + std::to_string(order_) +
                                 " to order " + std::to_string(order));
    return MotivicSeries(order, std::vector<MotivicPoly>(coeffs_.begin(), coeffs_.begin() + order + 1));
}

namespace {

void require_order(const MotivicSeries& s, int order, const char* what) {
    if (s.order() < order)
        throw TruncationMismatch(std::string(what) + ": operand has order " + std::to_string(s.order()) +
                                 ", requested " + std::to_string(order));
}

// Binomial coefficient C(n, k) for n >= 0.
BigInt binomial(const BigInt& n, unsigned k) {
    BigInt r = 1;
    for (unsigned i = 0; i < k; ++i) {
        r *= (n - i);
        r /= (i + 1);
    }
    return r;
}

} // namespace

MotivicSeries series_mul(const MotivicSeries& a, const MotivicSeries& b, int order) {
    if (a.order() != b.order())
        throw TruncationMismatch("series_mul: operand orders " + std::to_string(a.order()) + " and " +
                                 std::to_string(b.order()) + " differ");
    require_order(a, order, "series_mul");
    MotivicSeries r(order);
    for (int i = 0; i <= order; ++i) {
        if (a[i].is_zero())
            continue;
        for (int j = 0; i + j <= order; ++j)
            if (!b[j].is_zero())
                r[i + j] += a[i] * b[j];
    }
    return r;
}

MotivicSeries series_inverse(const MotivicSeries& a, int order) {
    require_order(a, order, "series_inverse");
    const MotivicPoly& c0 = a[0];
    if (c0 != MotivicPoly(1) && c0 != MotivicPoly(-1))
        throw NonUnitConstantTerm("series_inverse: constant term " + c0.to_string() + " is not a unit");
    // c0 is its own inverse.
    MotivicSeries r(order);
    r[0] = c0;
    for (int k = 1; k <= order; ++k) {
        MotivicPoly acc;
        for (int j = 1; j <= k; ++j)
            if (!a[j].is_zero())
                acc += a[j] * r[k - j];
        r[k] = -(c0 * acc);
    }
    return r;
}

MotivicSeries power_structure_factor(int step, const MotivicPoly& exponent, int order) {
    if (step < 1)
        throw TruncationMismatch("power_structure_factor: step must be positive");
    MotivicSeries result = MotivicSeries::one(order);
    for (int k = 0; k <= exponent.degree(); ++k) {
        BigInt c = exponent.coeff(k);
        if (c == 0)
            continue;
        // (1 - L^k T^step)^(-c): binomial expansion in u = L^k T^step.
        MotivicSeries factor(order);
        for (int j = 0; j * step <= order; ++j) {
            BigInt coeff;
            if (c > 0) {
                coeff = binomial(c + j - 1, static_cast<unsigned>(j));
            } else {
                BigInt e = -c;
                coeff = (j > e) ? BigInt(0) : binomial(e, static_cast<unsigned>(j));
                if (j % 2 == 1)
                    coeff = -coeff;
            }
            if (coeff != 0)
                factor[j * step] = MotivicPoly::term(coeff, k * j);
        }
        result = series_mul(result, factor, order);
    }
    return result;
}

EulerFactors euler_factorization(const MotivicSeries& a, int order) {
    require_order(a, order, "euler_factorization");
    if (a[0] != MotivicPoly(1))
        throw NonUnitConstantTerm("euler_factorization: constant term must be 1, got " + a[0].to_string());
    MotivicSeries running = a.truncated(order);
    EulerFactors f;
    f.order = order;
    for (int i = 1; i <= order; ++i) {
        MotivicPoly ai = running[i];
        f.exponents.push_back(ai);
        if (!ai.is_zero())
            running = series_mul(running, power_structure_factor(i, -ai, order), order);
    }
    return f;
}

MotivicSeries power_structure_pow(const EulerFactors& factors, const MotivicPoly& exponent, int order) {
    if (factors.order < order)
        throw TruncationMismatch("power_structure_pow: factors known to order " + std::to_string(factors.order) +
                                 ", requested " + std::to_string(order));
    MotivicSeries result = MotivicSeries::one(order);
    for (int i = 1; i <= order; ++i) {
        MotivicPoly p = factors.a(i) * exponent;
        if (!p.is_zero())
            result = series_mul(result, power_structure_factor(i, p, order), order);
    }
    return result;
}

MotivicSeries expand(const EulerFactors& factors) {
    return power_structure_pow(factors, MotivicPoly(1), factors.order);
}

MotivicSeries global_hilbert_series(int d, int order, const MotivicSeries& punctual) {
    return power_structure_pow(euler_factorization(punctual, order), MotivicPoly::lefschetz(d), order);
}

} // namespace hilbstrat
