#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>

namespace shiftlab {

/// Canonical record of one run: command, parameters, seed, exact alpha.
/// The hash of the canonical dump ties every output file to its manifest.
struct RunManifest {
    nlohmann::json fields = nlohmann::json::object();

    std::string canonical() const;  // sorted-key single-line dump
    std::string hash_hex() const;   // 16 hex digits (FNV-1a 64)
};

std::uint64_t fnv1a64(const std::string& text);

/// Writes via a temp file in the target directory, then renames.
void atomic_write_file(const std::string& path, const std::string& contents);

}  // namespace shiftlab
