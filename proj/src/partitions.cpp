#include "hilbstrat/partitions.hpp"

#include "hilbstrat/errors.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace hilbstrat {

namespace {

std::string tuple_string(const Index& r) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < r.size(); ++i)
        os << (i ? "," : "") << r[i];
    os << ')';
    return os.str();
}

} // namespace

MDPartition::MDPartition(int m) : m_(m) {
    if (m < 1)
        throw InvalidPartition("partition dimension must be at least 1, got " + std::to_string(m));
}

int MDPartition::at(const Index& r) const {
    auto it = entries_.find(r);
    return it == entries_.end() ? 0 : it->second;
}

std::string MDPartition::encode() const {
    std::ostringstream os;
    os << m_ << ':';
    bool first = true;
    for (const auto& [r, v] : entries_) {
        os << (first ? "" : ";") << '[';
        for (std::size_t i = 0; i < r.size(); ++i)
            os << (i ? "," : "") << r[i];
        os << "]=" << v;
        first = false;
    }
    return os.str();
}

MDPartition validate_partition(int m, const std::vector<std::pair<Index, int>>& raw) {
    MDPartition p(m);
    for (const auto& [r, v] : raw) {
        if (static_cast<int>(r.size()) != m)
            throw InvalidPartition("index " + tuple_string(r) + " does not have " + std::to_string(m) +
                                   " coordinates");
        if (std::any_of(r.begin(), r.end(), [](int c) { return c < 0; }))
            throw InvalidPartition("index " + tuple_string(r) + " has a negative coordinate");
        if (v <= 0)
            throw NonPositiveEntry("entry at " + tuple_string(r) + " is " + std::to_string(v) +
                                   "; stored entries must be positive");
        if (!p.entries_.emplace(r, v).second)
            throw InvalidPartition("index " + tuple_string(r) + " appears twice");
        p.n_ += v;
    }
    // Checking the immediate predecessors of each support tuple is enough:
    // any r <= s is reached by a chain of single decrements.
    for (const auto& [s, v] : p.entries_) {
        for (int i = 0; i < m; ++i) {
            if (s[static_cast<std::size_t>(i)] == 0)
                continue;
            Index r = s;
            --r[static_cast<std::size_t>(i)];
            int below = p.at(r);
            if (below < v)
                throw NonMonotone("lambda" + tuple_string(r) + " = " + std::to_string(below) + " < lambda" +
                                  tuple_string(s) + " = " + std::to_string(v));
        }
    }
    return p;
}

std::vector<MDPartition> enumerate_partitions(int m, int n, std::size_t limit) {
    if (m < 1)
        throw InvalidPartition("partition dimension must be at least 1");
    if (n < 0)
        throw InvalidPartition("partition weight must be nonnegative");
    std::vector<MDPartition> out;
    if (n == 0) {
        out.emplace_back(m);
        return out;
    }

    // Dense heights over the box [0, n)^m, flattened with x_1 most significant.
    std::size_t cells = 1;
    for (int i = 0; i < m; ++i)
        cells *= static_cast<std::size_t>(n);
    std::vector<std::size_t> stride(static_cast<std::size_t>(m));
    {
        std::size_t s = 1;
        for (int i = m - 1; i >= 0; --i) {
            stride[static_cast<std::size_t>(i)] = s;
            s *= static_cast<std::size_t>(n);
        }
    }
    // Predecessor cells (one coordinate decremented) for each cell.
    std::vector<std::vector<std::size_t>> preds(cells);
    for (std::size_t c = 0; c < cells; ++c) {
        for (int i = 0; i < m; ++i) {
            std::size_t coord = (c / stride[static_cast<std::size_t>(i)]) % static_cast<std::size_t>(n);
            if (coord > 0)
                preds[c].push_back(c - stride[static_cast<std::size_t>(i)]);
        }
    }

    std::vector<int> heights(cells, 0);
    auto emit = [&](std::size_t filled) {
        std::vector<std::pair<Index, int>> raw;
        for (std::size_t c = 0; c < filled; ++c) {
            if (heights[c] == 0)
                continue;
            Index r(static_cast<std::size_t>(m));
            for (int i = 0; i < m; ++i)
                r[static_cast<std::size_t>(i)] =
                    static_cast<int>((c / stride[static_cast<std::size_t>(i)]) % static_cast<std::size_t>(n));
            raw.emplace_back(std::move(r), heights[c]);
        }
        if (out.size() >= limit)
            throw BudgetExceeded("partition enumeration exceeded its limit after " + std::to_string(out.size()) +
                                     " partitions",
                                 out.size());
        out.push_back(validate_partition(m, raw));
    };

    std::function<void(std::size_t, int)> fill = [&](std::size_t c, int remaining) {
        if (remaining == 0) {
            emit(c);
            return;
        }
        if (c == cells)
            return;
        int bound = remaining;
        for (std::size_t p : preds[c])
            bound = std::min(bound, heights[p]);
        for (int v = 0; v <= bound; ++v) {
            heights[c] = v;
            fill(c + 1, remaining - v);
        }
        heights[c] = 0;
    };
    fill(0, n);
    return out;
}

Monomial Monomial::times(int var) const {
    Monomial r = *this;
    ++r.exps[static_cast<std::size_t>(var)];
    return r;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    if (auto c = a.exps.size() <=> b.exps.size(); c != 0)
        return c;
    for (std::size_t i = 1; i < a.exps.size(); ++i)
        if (auto c = a.exps[i] <=> b.exps[i]; c != 0)
            return c;
    return a.exps[0] <=> b.exps[0];
}

bool lex_greater(const Index& s, const Index& r) {
    return std::lexicographical_compare(r.begin(), r.end(), s.begin(), s.end());
}

MonomialSet::MonomialSet(std::vector<Monomial> monomials) : monomials_(std::move(monomials)) {
    std::sort(monomials_.begin(), monomials_.end());
    monomials_.erase(std::unique(monomials_.begin(), monomials_.end()), monomials_.end());
}

std::optional<std::size_t> MonomialSet::index_of(const Monomial& mono) const {
    auto it = std::lower_bound(monomials_.begin(), monomials_.end(), mono);
    if (it == monomials_.end() || *it != mono)
        return std::nullopt;
    return static_cast<std::size_t>(it - monomials_.begin());
}

OrderIdeal order_ideal(const MDPartition& lambda) {
    std::vector<Monomial> monos;
    for (const auto& [r, v] : lambda.entries()) {
        for (int j = 0; j < v; ++j) {
            Monomial mono;
            mono.exps.push_back(j);
            mono.exps.insert(mono.exps.end(), r.begin(), r.end());
            monos.push_back(std::move(mono));
        }
    }
    return OrderIdeal(std::move(monos));
}

Border border(const MDPartition& lambda) {
    OrderIdeal basis = order_ideal(lambda);
    std::vector<Monomial> monos;
    for (const Monomial& t : basis)
        for (int i = 0; i <= lambda.dim(); ++i) {
            Monomial b = t.times(i);
            if (!basis.contains(b))
                monos.push_back(std::move(b));
        }
    return Border(std::move(monos));
}

std::vector<Index> corner_indices(const MDPartition& lambda) {
    if (lambda.weight() == 0)
        return {};
    const int m = lambda.dim();
    std::set<Index> candidates;
    candidates.insert(Index(static_cast<std::size_t>(m), 0));
    for (const auto& [r, v] : lambda.entries()) {
        candidates.insert(r);
        for (int i = 0; i < m; ++i) {
            Index s = r;
            ++s[static_cast<std::size_t>(i)];
            candidates.insert(std::move(s));
        }
    }
    std::vector<Index> out;
    for (const Index& r : candidates) {
        const int here = lambda.at(r);
        bool corner = true;
        for (int i = 0; i < m && corner; ++i) {
            if (r[static_cast<std::size_t>(i)] == 0)
                continue;
            Index s = r;
            --s[static_cast<std::size_t>(i)];
            corner = lambda.at(s) > here;
        }
        if (corner)
            out.push_back(r);
    }
    return out;
}

MotivicPoly closed_form_punctual_A2(int n) {
    if (n < 1)
        throw InvalidPartition("closed form needs n >= 1");
    // by_parts[t][k] = number of partitions of t into exactly k parts.
    std::vector<std::vector<BigInt>> by_parts(static_cast<std::size_t>(n) + 1,
                                              std::vector<BigInt>(static_cast<std::size_t>(n) + 1, BigInt(0)));
    by_parts[0][0] = 1;
    for (int t = 1; t <= n; ++t)
        for (int k = 1; k <= t; ++k)
            by_parts[t][k] = by_parts[t - 1][k - 1] + by_parts[t - k][k];
    std::vector<BigInt> coeffs(static_cast<std::size_t>(n), BigInt(0));
    for (int k = 1; k <= n; ++k)
        coeffs[static_cast<std::size_t>(n - k)] += by_parts[n][k];
    return MotivicPoly(std::move(coeffs));
}

std::string monomial_string(const Monomial& mono) {
    const int m = mono.dim();
    auto name = [m](int i) -> std::string {
        if (m <= 2) {
            static const char* names[] = {"z", "x", "y"};
            return names[i];
        }
        return "x" + std::to_string(i);
    };
    std::string out;
    for (int i = 0; i <= m; ++i) {
        int e = mono.exps[static_cast<std::size_t>(i)];
        if (e == 0)
            continue;
        if (!out.empty())
            out += '*';
        out += name(i);
        if (e > 1)
            out += '^' + std::to_string(e);
    }
    return out.empty() ? "1" : out;
}

} // namespace hilbstrat
