#include "hilbstrat/cache.hpp"

#include "hilbstrat/errors.hpp"
#include "hilbstrat/serialize.hpp"

namespace hilbstrat {

ResultsCache::ResultsCache(std::string path, std::string fingerprint)
    : path_(std::move(path)), fingerprint_(std::move(fingerprint)) {
    {
        std::ifstream in(path_);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty())
                continue;
            json rec;
            try {
                rec = json::parse(line);
            } catch (const json::exception&) {
                // A torn final line from an interrupted run.
                ++stale_;
                continue;
            }
            if (rec.value("fingerprint", "") != fingerprint_) {
                ++stale_;
                continue;
            }
            try {
                StratumResult r = stratum_result_from_json(rec.at("result"));
                entries_.insert_or_assign(r.lambda.encode(), std::move(r));
            } catch (const std::exception&) {
                ++stale_;
            }
        }
    }
    out_.open(path_, std::ios::app);
    if (!out_)
        throw Error("cannot open cache file " + path_ + " for appending");
}

std::optional<StratumResult> ResultsCache::lookup(const MDPartition& lambda) const {
    std::lock_guard lock(mu_);
    auto it = entries_.find(lambda.encode());
    if (it == entries_.end())
        return std::nullopt;
    return it->second;
}

void ResultsCache::store(const StratumResult& result) {
    std::lock_guard lock(mu_);
    const std::string key = result.lambda.encode();
    if (entries_.count(key))
        return;
    json rec = {{"m", result.lambda.dim()},
                {"lambda", key},
                {"fingerprint", fingerprint_},
                {"result", stratum_result_to_json(result)}};
    out_ << rec.dump() << '\n';
    out_.flush();
    entries_.emplace(key, result);
}

std::size_t ResultsCache::size() const {
    std::lock_guard lock(mu_);
    return entries_.size();
}

std::map<std::string, StratumResult> ResultsCache::entries() const {
    std::lock_guard lock(mu_);
    return entries_;
}

} // namespace hilbstrat
