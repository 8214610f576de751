#pragma once
#include <fstream>
#include <string>
#include <vector>

namespace smoothprog {

// Stamped into every output file; byte-identical reruns are only promised
// for matching versions.
inline constexpr const char* kToolkitVersion = "0.1.0";

// 17 significant digits: enough to round-trip any double exactly.
std::string fmt_double(double v);

// RFC-style cell quoting, needed because character labels contain commas.
std::string csv_escape(const std::string& cell);

// CSV with a fixed column order and two leading comment lines:
//   # config <canonical JSON>
//   # version <toolkit version>
// so every file carries its provenance.
class CsvFile {
public:
    CsvFile(const std::string& path, const std::vector<std::string>& columns,
            const std::string& config_echo);
    void row(const std::vector<std::string>& cells);

private:
    std::ofstream out_;
    std::size_t width_;
};

// JSON-lines with a leading meta record {"config": ..., "version": ...}.
// Records are written as given; callers serialize with sorted keys.
class JsonlFile {
public:
    JsonlFile(const std::string& path, const std::string& config_echo);
    void record(const std::string& json_line);

private:
    std::ofstream out_;
};

} // namespace smoothprog
