#include "phonodetect/manifest.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "phonodetect/errors.hpp"

namespace phonodetect {

uint64_t fnv1a_hash(const std::string& data) {
    uint64_t h = 0xCBF29CE484222325ULL;
    for (char c : data) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001B3ULL;
    }
    return h;
}

uint64_t hash_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file for hashing: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return fnv1a_hash(ss.str());
}

std::string RunManifest::to_json() const {
    nlohmann::ordered_json j;
    j["tool_version"] = tool_version;
    j["seed"] = seed;
    j["dataset_path"] = dataset_path;
    j["dataset_hash"] = dataset_hash;
    j["symbols_hash"] = symbols_hash;
    j["flags"] = flags;
    j["timestamp"] = timestamp;
    return j.dump(2) + "\n";
}

void RunManifest::write(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write manifest: " + path);
    out << to_json();
}

}  // namespace phonodetect
