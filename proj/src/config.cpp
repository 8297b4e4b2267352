#include "hilbstrat/config.hpp"

#include "hilbstrat/errors.hpp"

#include <cstdio>
#include <thread>

namespace hilbstrat {

bool is_prime(std::uint32_t q) {
    if (q < 2)
        return false;
    for (std::uint32_t d = 2; d * d <= q; ++d)
        if (q % d == 0)
            return false;
    return true;
}

std::vector<std::uint32_t> first_primes(std::size_t count) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t q = 2; out.size() < count; ++q)
        if (is_prime(q))
            out.push_back(q);
    return out;
}

unsigned default_workers() {
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

void CountingConfig::validate() const {
    if (primes.empty())
        throw ConfigError("prime list is empty");
    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (!is_prime(primes[i]))
            throw ConfigError(std::to_string(primes[i]) + " is not prime");
        if (primes[i] >= 65536)
            throw ConfigError("primes must be below 65536");
        if (i > 0 && primes[i] <= primes[i - 1])
            throw ConfigError("primes must be strictly ascending");
    }
    if (holdout_count < 1)
        throw ConfigError("holdout count must be at least 1");
    if (budget < 1)
        throw ConfigError("budget must be at least 1");
    if (workers < 1)
        throw ConfigError("worker count must be at least 1");
}

std::string CountingConfig::fingerprint() const {
    // Bump the version tag whenever elimination or counting semantics change.
    std::string canon = "elim-v1|primes=";
    for (std::size_t i = 0; i < primes.size(); ++i)
        canon += (i ? "," : "") + std::to_string(primes[i]);
    canon += "|holdout=" + std::to_string(holdout_count);
    // FNV-1a, 64 bit.
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : canon) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace hilbstrat
