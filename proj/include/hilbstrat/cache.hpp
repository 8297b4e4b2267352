#pragma once

#include "hilbstrat/stratum.hpp"

#include <cstddef>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <string>

namespace hilbstrat {

/// Append-only JSON-lines store of stratum results keyed by
/// (m, canonical partition encoding, config fingerprint). Lines written under
/// another fingerprint are kept on disk but never returned.
class ResultsCache {
public:
    ResultsCache(std::string path, std::string fingerprint);

    std::optional<StratumResult> lookup(const MDPartition& lambda) const;
    /// Appends and flushes one line unless the key is already present.
    void store(const StratumResult& result);

    const std::string& path() const noexcept { return path_; }
    std::size_t size() const;
    /// Snapshot of the current-fingerprint entries, keyed by partition encoding.
    std::map<std::string, StratumResult> entries() const;
    std::size_t stale_lines() const noexcept { return stale_; }

private:
    std::string path_;
    std::string fingerprint_;
    mutable std::mutex mu_;
    std::map<std::string, StratumResult> entries_;
    std::size_t stale_ = 0;
    std::ofstream out_;
};

} // namespace hilbstrat
