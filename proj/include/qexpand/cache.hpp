#pragma once

#include "qexpand/discovery.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace qexpand {

// Content-addressed on-disk cache. Each entry is one file named by the
// 64-bit FNV-1a hash of its key, holding a small text header (format tag,
// key and value sizes, a checksum of the value) followed by the raw key and
// value bytes. A lookup verifies the stored key byte-for-byte (hash
// collisions degrade to misses, never to wrong answers) and the checksum
// (corrupt or truncated files degrade to misses, and the next store
// replaces them). Writes go to a temporary file in the same directory and
// are moved into place with an atomic rename, so a concurrent reader sees
// either the old entry or the new one, never a torn file.
//
// The cache never throws on I/O trouble: an uncreatable or unwritable
// directory is reported once through the warning hook and every subsequent
// operation degrades to a miss / no-op, so computation proceeds uncached.
class Cache {
public:
    // Disabled cache: get always misses, put does nothing.
    Cache() = default;

    // File-backed cache rooted at dir. The warning hook receives one-line
    // messages (no trailing newline); the default prints to stderr.
    explicit Cache(std::string dir, std::function<void(const std::string&)> warn = {});

    bool enabled() const { return !dir_.empty(); }
    const std::string& dir() const { return dir_; }

    std::optional<std::string> get(const std::string& key) const;
    void put(const std::string& key, const std::string& value);

    // Adapter for the scan checkpoint seam. The returned functions capture
    // this object by reference; keep the Cache alive while they are in use.
    KVStore kv();

    // Resolution order for the default cache root: QEXPAND_CACHE_DIR, then
    // <home>/.cache/qexpand, then ./.qexpand-cache when HOME is unset.
    static std::string default_dir();

    static std::uint64_t fnv1a64(std::string_view bytes);

private:
    std::string entry_path(const std::string& key) const;
    void warn_once(const std::string& message);

    std::string dir_;
    std::function<void(const std::string&)> warn_;
    bool warned_ = false;
};

} // namespace qexpand
