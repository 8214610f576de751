#include "smoothprog/io.hpp"

#include <cstdio>

#include "smoothprog/errors.hpp"

namespace smoothprog {

std::string fmt_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_escape(const std::string& cell)
{
    if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
    std::string quoted = "\"";
    for (char c : cell) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

CsvFile::CsvFile(const std::string& path, const std::vector<std::string>& columns,
                 const std::string& config_echo)
    : out_(path, std::ios::binary), width_(columns.size())
{
    if (!out_) throw ConfigError("CsvFile: cannot open " + path);
    out_ << "# config " << config_echo << "\n";
    out_ << "# version " << kToolkitVersion << "\n";
    for (std::size_t i = 0; i < columns.size(); ++i)
        out_ << (i ? "," : "") << csv_escape(columns[i]);
    out_ << "\n";
}

void CsvFile::row(const std::vector<std::string>& cells)
{
    if (cells.size() != width_)
        throw ConfigError("CsvFile: row width does not match the header");
    for (std::size_t i = 0; i < cells.size(); ++i)
        out_ << (i ? "," : "") << csv_escape(cells[i]);
    out_ << "\n";
}

JsonlFile::JsonlFile(const std::string& path, const std::string& config_echo)
    : out_(path, std::ios::binary)
{
    if (!out_) throw ConfigError("JsonlFile: cannot open " + path);
    out_ << "{\"config\":" << config_echo << ",\"version\":\"" << kToolkitVersion
         << "\"}\n";
}

void JsonlFile::record(const std::string& json_line)
{
    out_ << json_line << "\n";
}

} // namespace smoothprog
