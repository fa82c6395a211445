#include "qexpand/cache.hpp"

#include <atomic>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <utility>

#include <unistd.h>

namespace qexpand {
namespace {

constexpr const char* kMagic = "qexpand-cache/1\n";

std::string hex16(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

} // namespace

Cache::Cache(std::string dir, std::function<void(const std::string&)> warn)
    : dir_(std::move(dir)), warn_(std::move(warn)) {}

std::uint64_t Cache::fnv1a64(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (char b : bytes) {
        h ^= static_cast<unsigned char>(b);
        h *= 1099511628211ULL;
    }
    return h;
}

std::string Cache::entry_path(const std::string& key) const {
    return dir_ + "/" + hex16(fnv1a64(key)) + ".qx";
}

void Cache::warn_once(const std::string& message) {
    if (warned_)
        return;
    warned_ = true;
    if (warn_)
        warn_(message);
    else
        std::cerr << message << "\n";
}

std::optional<std::string> Cache::get(const std::string& key) const {
    if (!enabled())
        return std::nullopt;
    std::ifstream in(entry_path(key), std::ios::binary);
    if (!in)
        return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    const std::string blob = ss.str();

    const std::string_view magic = kMagic;
    if (blob.compare(0, magic.size(), magic) != 0)
        return std::nullopt;
    const size_t header_end = blob.find('\n', magic.size());
    if (header_end == std::string::npos)
        return std::nullopt;
    std::istringstream header(blob.substr(magic.size(), header_end - magic.size()));
    unsigned long long klen = 0, vlen = 0;
    std::string checksum_hex, extra;
    if (!(header >> klen >> vlen >> checksum_hex) || (header >> extra))
        return std::nullopt;
    if (klen > blob.size() || vlen > blob.size())
        return std::nullopt;
    const size_t body = header_end + 1;
    if (blob.size() - body != klen + vlen)
        return std::nullopt;
    const std::string_view stored_key(blob.data() + body, klen);
    if (stored_key != key)
        return std::nullopt; // hash collision or foreign file: an honest miss
    const std::string_view value(blob.data() + body + klen, vlen);
    errno = 0;
    char* end = nullptr;
    const unsigned long long checksum = std::strtoull(checksum_hex.c_str(), &end, 16);
    if (end == checksum_hex.c_str() || *end != '\0' || errno == ERANGE)
        return std::nullopt;
    if (fnv1a64(value) != checksum)
        return std::nullopt; // corrupt value: miss, rewritten by the next put
    return std::string(value);
}

void Cache::put(const std::string& key, const std::string& value) {
    if (!enabled())
        return;
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) {
        warn_once("cache: cannot create directory " + dir_ + " (" + ec.message() +
                  "); continuing uncached");
        return;
    }

    const std::string blob = std::string(kMagic) + std::to_string(key.size()) + " " +
                             std::to_string(value.size()) + " " + hex16(fnv1a64(value)) +
                             "\n" + key + value;

    const std::string final_path = entry_path(key);
    static std::atomic<unsigned long> counter{0};
    const std::string tmp_path = final_path + ".tmp." + std::to_string(::getpid()) + "." +
                                 std::to_string(counter.fetch_add(1));
    {
        std::ofstream out(tmp_path, std::ios::binary | std::ios::trunc);
        out.write(blob.data(), static_cast<std::streamsize>(blob.size()));
        out.flush();
        if (!out) {
            warn_once("cache: cannot write to " + dir_ + "; continuing uncached");
            out.close();
            fs::remove(tmp_path, ec);
            return;
        }
    }
    fs::rename(tmp_path, final_path, ec);
    if (ec) {
        warn_once("cache: cannot write to " + dir_ + " (" + ec.message() +
                  "); continuing uncached");
        fs::remove(tmp_path, ec);
    }
}

KVStore Cache::kv() {
    KVStore store;
    store.get = [this](const std::string& key) { return get(key); };
    store.put = [this](const std::string& key, const std::string& value) { put(key, value); };
    return store;
}

std::string Cache::default_dir() {
    if (const char* env = std::getenv("QEXPAND_CACHE_DIR"); env && *env)
        return env;
    if (const char* home = std::getenv("HOME"); home && *home)
        return std::string(home) + "/.cache/qexpand";
    return ".qexpand-cache";
}

} // namespace qexpand
