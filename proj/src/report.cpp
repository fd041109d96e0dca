#include "ustatlab/report.hpp"

#include "ustatlab/errors.hpp"

#include <cstdio>
#include <fstream>

namespace ustatlab::report {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

std::string CsvTable::body() const {
    std::string out;
    if (!provenance.empty()) {
        out += "# ";
        out += provenance;
        out += '\n';
    }
    auto append_row = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += cells[i];
        }
        out += '\n';
    };
    append_row(header);
    for (const auto& row : rows) append_row(row);
    return out;
}

void CsvTable::write(const std::string& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ResourceError("cannot open for writing: " + path);
    f << body();
    if (!f) throw ResourceError("write failed: " + path);
}

nlohmann::json CsvTable::to_json() const {
    nlohmann::json j;
    if (!provenance.empty()) j["provenance"] = provenance;
    j["columns"] = header;
    j["rows"] = rows;
    return j;
}

bool Manifest::all_passed() const {
    for (const auto& a : assertions) {
        if (!a.pass) return false;
    }
    return true;
}

nlohmann::json Manifest::to_json() const {
    nlohmann::json j;
    j["tool"] = "ustatlab";
    j["version"] = kToolVersion;
    j["subcommand"] = subcommand;
    j["config"] = config;
    j["seed"] = seed;
    j["wall_ms"] = wall_ms;
    j["outputs"] = outputs;
    j["pass"] = all_passed();
    auto& arr = j["assertions"] = nlohmann::json::array();
    for (const auto& a : assertions) {
        arr.push_back({{"name", a.name}, {"pass", a.pass}, {"detail", a.detail}});
    }
    return j;
}

void Manifest::write(const std::string& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ResourceError("cannot open for writing: " + path);
    f << to_json().dump(2) << '\n';
    if (!f) throw ResourceError("write failed: " + path);
}

} // namespace ustatlab::report
