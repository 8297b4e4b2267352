#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hilbstrat {

/// The first `count` primes.
std::vector<std::uint32_t> first_primes(std::size_t count);

bool is_prime(std::uint32_t q);

struct CountingConfig {
    /// Interpolation nodes are taken from the front, holdouts right after.
    std::vector<std::uint32_t> primes = first_primes(40);
    int holdout_count = 2;
    /// Maximum brute-force assignments per (stratum, prime).
    std::uint64_t budget = 200'000'000;
    unsigned workers = 1;
    /// Label interpolated counts as classes rather than counting polynomials.
    bool assume_polynomial = false;
    std::optional<std::string> cache_path;
    std::uint64_t seed = 1;

    /// Throws ConfigError when an invariant is broken.
    void validate() const;

    /// Hash of every setting that can change a stored stratum result.
    std::string fingerprint() const;
};

unsigned default_workers();

} // namespace hilbstrat
