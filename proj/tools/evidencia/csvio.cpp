#include "evidencia/csvio.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "evidencia/errors.hpp"

namespace evidencia::cli {

namespace {

std::string trim(const std::string& s) {
    const char* ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) out.push_back(trim(field));
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size();
}

/// Yields trimmed content lines, skipping comments and blanks; tracks the
/// 1-based physical line number for error messages.
struct LineReader {
    std::ifstream in;
    std::size_t line_number = 0;

    explicit LineReader(const std::string& path) : in(path) {
        if (!in) throw ConfigError("cannot open '" + path + "'");
    }

    bool next(std::string& out) {
        std::string raw;
        while (std::getline(in, raw)) {
            ++line_number;
            std::string t = trim(raw);
            if (t.empty() || t[0] == '#') continue;
            out = t;
            return true;
        }
        return false;
    }
};

} // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string json_number(double v) {
    if (!std::isfinite(v)) return "null";
    return format_double(v);
}

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04x", c);
                out += buf;
            } else {
                out += c;
            }
        }
    }
    return out;
}

Dataset read_dataset_csv(const std::string& path) {
    LineReader reader(path);
    std::string line;
    if (!reader.next(line)) throw ConfigError("'" + path + "' contains no data");

    const std::vector<std::string> header = split_fields(line);
    int ix = -1, iy = -1, is = -1;
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (header[j] == "x") ix = static_cast<int>(j);
        else if (header[j] == "y") iy = static_cast<int>(j);
        else if (header[j] == "sigma") is = static_cast<int>(j);
        else
            throw ConfigError("unexpected column '" + header[j] + "' in '" + path +
                              "'");
    }
    if (ix < 0) throw ConfigError("column 'x' not found in '" + path + "'");
    if (iy < 0) throw ConfigError("column 'y' not found in '" + path + "'");
    if (is < 0) throw ConfigError("column 'sigma' not found in '" + path + "'");

    Dataset data;
    while (reader.next(line)) {
        const std::vector<std::string> fields = split_fields(line);
        if (fields.size() != header.size())
            throw ConfigError("row at line " + std::to_string(reader.line_number) +
                              ": expected " + std::to_string(header.size()) +
                              " fields, got " + std::to_string(fields.size()));
        const struct {
            int index;
            const char* name;
            Vec& column;
        } cols[] = {{ix, "x", data.x}, {iy, "y", data.y}, {is, "sigma", data.sigma}};
        for (const auto& col : cols) {
            double v;
            if (!parse_double(fields[static_cast<std::size_t>(col.index)], v) ||
                !std::isfinite(v))
                throw ConfigError(
                    "row at line " + std::to_string(reader.line_number) + ", column '" +
                    col.name + "': invalid number '" +
                    fields[static_cast<std::size_t>(col.index)] + "'");
            col.column.push_back(v);
        }
    }
    if (data.x.empty()) throw ConfigError("'" + path + "' contains no data rows");
    return data;
}

Mat read_table_csv(const std::string& path) {
    LineReader reader(path);
    std::vector<std::vector<double>> rows;
    std::string line;
    bool first = true;
    while (reader.next(line)) {
        const std::vector<std::string> fields = split_fields(line);
        std::vector<double> row(fields.size());
        bool numeric = true;
        for (std::size_t j = 0; j < fields.size(); ++j) {
            if (!parse_double(fields[j], row[j]) || !std::isfinite(row[j])) {
                numeric = false;
                break;
            }
        }
        if (!numeric) {
            if (first) {
                first = false;
                continue; // header row
            }
            throw ConfigError("row at line " + std::to_string(reader.line_number) +
                              " of '" + path + "' is not numeric");
        }
        first = false;
        if (!rows.empty() && row.size() != rows.front().size())
            throw ConfigError("row at line " + std::to_string(reader.line_number) +
                              " of '" + path + "' has inconsistent field count");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ConfigError("'" + path + "' contains no numeric rows");
    Mat out(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c) out(r, c) = rows[r][c];
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path + "'");
    out << content;
    if (!out) throw ConfigError("write failed for '" + path + "'");
}

} // namespace evidencia::cli
