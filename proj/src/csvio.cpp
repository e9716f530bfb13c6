#include "randfib/csvio.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <sstream>

#include "randfib/params.hpp"

namespace randfib {

std::string fmt_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

RunManifest make_manifest(const std::string& command, const std::string& args,
                          std::uint64_t seed) {
    RunManifest m;
    m.tool = std::string("randfib ") + kVersion;
    m.command = command;
    m.args = args;
    m.seed = seed;

    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    std::tm tm_utc{};
    gmtime_r(&tt, &tm_utc);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    m.started = buf;
    return m;
}

std::string fnv1a64_hex(const std::string& data) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    char buf[17];
    static const char* digits = "0123456789abcdef";
    for (int i = 15; i >= 0; --i) {
        buf[i] = digits[h & 0xF];
        h >>= 4;
    }
    buf[16] = '\0';
    return std::string(buf);
}

CsvWriter::CsvWriter(RunManifest manifest, std::vector<std::string> columns)
    : manifest_(std::move(manifest)), columns_(std::move(columns)) {}

void CsvWriter::add_row(std::vector<std::string> cells) {
    rows_.push_back(std::move(cells));
}

std::string CsvWriter::body() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (i) os << ',';
        os << columns_[i];
    }
    os << '\n';
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ',';
            os << row[i];
        }
        os << '\n';
    }
    return os.str();
}

void CsvWriter::write(std::ostream& os) const {
    const std::string b = body();
    os << "# tool: " << manifest_.tool << '\n';
    os << "# command: " << manifest_.command << '\n';
    os << "# args: " << manifest_.args << '\n';
    os << "# seed: " << manifest_.seed << '\n';
    os << "# started: " << manifest_.started << '\n';
    os << b;
    os << "# body_digest: fnv1a64:" << fnv1a64_hex(b) << '\n';
}

} // namespace randfib
