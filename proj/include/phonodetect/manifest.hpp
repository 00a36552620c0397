#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace phonodetect {

inline const char* kToolVersion = "0.1.0";

uint64_t fnv1a_hash(const std::string& data);
uint64_t hash_file(const std::string& path);

struct RunManifest {
    uint64_t seed = 0;
    std::string dataset_path;
    std::string dataset_hash;
    std::string symbols_hash;
    std::map<std::string, std::string> flags;
    std::string tool_version = kToolVersion;
    std::string timestamp;  // empty in tests to keep outputs comparable

    std::string to_json() const;
    void write(const std::string& path) const;
};

}  // namespace phonodetect
