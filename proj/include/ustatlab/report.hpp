#ifndef USTATLAB_REPORT_HPP
#define USTATLAB_REPORT_HPP

#include <nlohmann/json.hpp>

#include <cstdint>
#include <string>
#include <vector>

// CSV/JSON experiment reports with full seed/config provenance. CSV bodies
// are deterministic functions of the run config; timestamps and wall time
// live only in the manifest.

namespace ustatlab::report {

inline constexpr const char* kToolVersion = "0.1.0";

// Deterministic rendering used in every CSV cell (shortest round-trip would
// vary in width; fixed %.12g keeps bodies byte-stable and readable).
std::string format_double(double x);

struct CsvTable {
    // When set, emitted as a "# ..." first line so the file itself names the
    // seed and config that produced it.
    std::string provenance;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    // Optional provenance comment, then header + rows, comma separated,
    // LF line endings, UTF-8.
    std::string body() const;
    void write(const std::string& path) const;

    nlohmann::json to_json() const; // {"columns": [...], "rows": [[...], ...]}
};

struct Assertion {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct Manifest {
    std::string subcommand;
    nlohmann::json config;
    std::uint64_t seed = 0;
    double wall_ms = 0.0;
    std::vector<Assertion> assertions;
    std::vector<std::string> outputs;

    bool all_passed() const;
    nlohmann::json to_json() const;
    void write(const std::string& path) const;
};

} // namespace ustatlab::report

#endif
