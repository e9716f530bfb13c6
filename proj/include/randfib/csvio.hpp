#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace randfib {

/// Shortest round-trip decimal form of a double (to_chars); "inf"/"nan" for
/// the specials. Byte-identical across platforms sharing IEEE-754 doubles.
std::string fmt_double(double v);

/// Run provenance written as commented lines around the CSV body. Reruns
/// with identical flags reproduce the body byte for byte; only the
/// timestamp line may differ.
struct RunManifest {
    std::string tool;       // name + version
    std::string command;    // subcommand
    std::string args;       // canonical flag set
    std::uint64_t seed = 0;
    std::string started;    // ISO-8601 UTC
};

RunManifest make_manifest(const std::string& command, const std::string& args,
                          std::uint64_t seed);

/// CSV with '#'-prefixed manifest header and trailing body digest comment.
class CsvWriter {
public:
    CsvWriter(RunManifest manifest, std::vector<std::string> columns);

    void add_row(std::vector<std::string> cells);
    /// Renders manifest + body + digest; the digest covers the body only
    /// (header row and data rows, newline separated).
    void write(std::ostream& os) const;
    std::string body() const;

private:
    RunManifest manifest_;
    std::vector<std::string> columns_;
    std::vector<std::vector<std::string>> rows_;
};

/// FNV-1a 64-bit digest, hex encoded; used for the body digest line.
std::string fnv1a64_hex(const std::string& data);

} // namespace randfib
