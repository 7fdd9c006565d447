#include "evshift/csv.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "evshift/errors.hpp"

namespace evshift {

std::string format_fixed6(double value)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", value);
    std::string s(buf);
    if (s == "-0.000000")
        s.erase(0, 1);
    return s;
}

std::vector<std::vector<double>> parse_csv(std::string_view text, std::string_view header,
                                           std::string_view source)
{
    std::vector<std::vector<double>> rows;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    std::size_t columns = 1;
    for (char c : header)
        if (c == ',')
            ++columns;

    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        ++line_no;

        if (line_no == 1) {
            if (line != header)
                throw DataError(std::string(source) + ": expected header '" + std::string(header) +
                                "', got '" + std::string(line) + "'");
            continue;
        }
        if (line.empty())
            continue;

        std::vector<double> row;
        row.reserve(columns);
        std::size_t field_start = 0;
        while (field_start <= line.size()) {
            std::size_t comma = line.find(',', field_start);
            if (comma == std::string_view::npos)
                comma = line.size();
            const std::string field(line.substr(field_start, comma - field_start));
            char* parse_end = nullptr;
            errno = 0;
            const double v = std::strtod(field.c_str(), &parse_end);
            if (field.empty() || parse_end != field.c_str() + field.size() || errno == ERANGE)
                throw DataError(std::string(source) + ":" + std::to_string(line_no) +
                                ": malformed number '" + field + "'");
            row.push_back(v);
            field_start = comma + 1;
        }
        if (row.size() != columns)
            throw DataError(std::string(source) + ":" + std::to_string(line_no) + ": expected " +
                            std::to_string(columns) + " columns, got " + std::to_string(row.size()));
        rows.push_back(std::move(row));
    }
    if (line_no == 0 || (line_no == 1 && text.empty()))
        throw DataError(std::string(source) + ": empty file");
    return rows;
}

std::string read_text_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DataError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::vector<double>> read_csv(const std::filesystem::path& path, std::string_view header)
{
    return parse_csv(read_text_file(path), header, path.string());
}

void write_text_file(const std::filesystem::path& path, std::string_view content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error("cannot write " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out)
        throw Error("write failed for " + path.string());
}

} // namespace evshift
