#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>

#include "csrg/gauss.hpp"

namespace csrg {

// In-process registries so repeated checks over the same field reuse one
// enumeration pass; optionally backed by an on-disk cache directory.

inline std::shared_ptr<const FieldSpec> get_field(u64 p, unsigned f, u64 max_q = kBuildLimit) {
    static std::map<std::pair<u64, unsigned>, std::shared_ptr<const FieldSpec>> cache;
    static std::mutex m;
    {
        std::lock_guard<std::mutex> lock(m);
        auto it = cache.find({p, f});
        if (it != cache.end()) return it->second;
    }
    auto F = std::make_shared<const FieldSpec>(build_field(p, f, max_q));
    std::lock_guard<std::mutex> lock(m);
    return cache.emplace(std::make_pair(p, f), F).first->second;
}

struct TableOptions {
    unsigned threads = 1;
    u64 max_q = kVerifyLimit;
    std::string cache_dir;  // empty = memory only
};

inline std::shared_ptr<const TraceCountTable> get_table(const FieldSpec& F, u64 k,
                                                        const TableOptions& opt = {}) {
    static std::map<std::tuple<u64, unsigned, u64>, std::shared_ptr<const TraceCountTable>> cache;
    static std::mutex m;
    auto key = std::make_tuple(F.p, F.f, k);
    {
        std::lock_guard<std::mutex> lock(m);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    std::shared_ptr<const TraceCountTable> T;
    if (!opt.cache_dir.empty()) {
        auto path = std::filesystem::path(opt.cache_dir) /
                    ("tct_p" + std::to_string(F.p) + "_f" + std::to_string(F.f) + "_k" +
                     std::to_string(k) + ".csrg");
        if (std::filesystem::exists(path)) {
            auto loaded = read_trace_counts(path.string());
            if (loaded.p != F.p || loaded.f != F.f || loaded.k != k)
                fail(err::io_error, "cache file parameter mismatch: " + path.string());
            T = std::make_shared<const TraceCountTable>(std::move(loaded));
        } else {
            T = std::make_shared<const TraceCountTable>(build_trace_counts(F, k, opt.threads, opt.max_q));
            std::filesystem::create_directories(opt.cache_dir);
            write_trace_counts(path.string(), *T);
        }
    } else {
        T = std::make_shared<const TraceCountTable>(build_trace_counts(F, k, opt.threads, opt.max_q));
    }
    std::lock_guard<std::mutex> lock(m);
    return cache.emplace(key, T).first->second;
}

}  // namespace csrg
