#include "hilbstrat/polynomial.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hilbstrat {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw std::overflow_error("polynomial coefficient overflow");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw std::overflow_error("polynomial coefficient overflow");
    return r;
}

std::uint32_t mod_of(std::int64_t c, std::uint32_t q) {
    std::int64_t r = c % static_cast<std::int64_t>(q);
    if (r < 0)
        r += q;
    return static_cast<std::uint32_t>(r);
}

} // namespace

Term multiply_terms(const Term& a, const Term& b) {
    Term r;
    r.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

Poly Poly::constant(std::int64_t c) {
    Poly p;
    p.add_term({}, c);
    return p;
}

Poly Poly::variable(VarId v) {
    Poly p;
    p.add_term({v}, 1);
    return p;
}

bool Poly::is_constant() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

std::int64_t Poly::constant_term() const {
    auto it = terms_.find(Term{});
    return it == terms_.end() ? 0 : it->second;
}

int Poly::total_degree() const noexcept {
    int d = terms_.empty() ? -1 : 0;
    for (const auto& [t, c] : terms_)
        d = std::max(d, static_cast<int>(t.size()));
    return d;
}

int Poly::degree_in(VarId v) const noexcept {
    int d = 0;
    for (const auto& [t, c] : terms_)
        d = std::max(d, static_cast<int>(std::count(t.begin(), t.end(), v)));
    return d;
}

std::vector<VarId> Poly::variables() const {
    std::set<VarId> vs;
    for (const auto& [t, c] : terms_)
        vs.insert(t.begin(), t.end());
    return {vs.begin(), vs.end()};
}

void Poly::add_term(const Term& t, std::int64_t c) {
    if (c == 0)
        return;
    auto [it, inserted] = terms_.try_emplace(t, c);
    if (!inserted) {
        it->second = checked_add(it->second, c);
        if (it->second == 0)
            terms_.erase(it);
    }
}

Poly& Poly::operator+=(const Poly& rhs) {
    for (const auto& [t, c] : rhs.terms_)
        add_term(t, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& rhs) {
    for (const auto& [t, c] : rhs.terms_)
        add_term(t, checked_mul(c, -1));
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    for (const auto& [ta, ca] : a.terms_)
        for (const auto& [tb, cb] : b.terms_)
            r.add_term(multiply_terms(ta, tb), checked_mul(ca, cb));
    return r;
}

Poly Poly::operator-() const { return scaled(-1); }

Poly Poly::scaled(std::int64_t c) const {
    Poly r;
    for (const auto& [t, k] : terms_)
        r.add_term(t, checked_mul(k, c));
    return r;
}

Poly Poly::substitute(VarId v, const Poly& value) const {
    std::vector<Poly> powers{Poly::constant(1)};
    Poly r;
    for (const auto& [t, c] : terms_) {
        auto k = static_cast<std::size_t>(std::count(t.begin(), t.end(), v));
        if (k == 0) {
            r.add_term(t, c);
            continue;
        }
        while (powers.size() <= k)
            powers.push_back(powers.back() * value);
        Term rest;
        std::copy_if(t.begin(), t.end(), std::back_inserter(rest), [v](VarId w) { return w != v; });
        Poly piece;
        piece.add_term(rest, c);
        r += piece * powers[k];
    }
    return r;
}

std::uint32_t Poly::eval_mod(std::span<const std::uint32_t> values, std::uint32_t q) const {
    std::uint64_t acc = 0;
    for (const auto& [t, c] : terms_) {
        std::uint64_t prod = mod_of(c, q);
        for (VarId v : t)
            prod = prod * values[v] % q;
        acc = (acc + prod) % q;
    }
    return static_cast<std::uint32_t>(acc);
}

Poly Poly::sign_normalized() const {
    if (!terms_.empty() && terms_.begin()->second < 0)
        return -*this;
    return *this;
}

std::string Poly::to_string(const std::vector<std::string>& names) const {
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [t, c] : terms_) {
        std::int64_t mag = c < 0 ? -c : c;
        if (first)
            os << (c < 0 ? "-" : "");
        else
            os << (c < 0 ? " - " : " + ");
        first = false;
        bool need_star = false;
        if (t.empty() || mag != 1) {
            os << mag;
            need_star = true;
        }
        for (std::size_t i = 0; i < t.size();) {
            std::size_t j = i;
            while (j < t.size() && t[j] == t[i])
                ++j;
            os << (need_star ? "*" : "") << names.at(t[i]);
            if (j - i > 1)
                os << '^' << (j - i);
            need_star = true;
            i = j;
        }
    }
    return os.str();
}

} // namespace hilbstrat
