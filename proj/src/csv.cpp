#include "breadline/csv.hpp"

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace breadline {

std::string format_number(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) {
        while (!field.empty() && (field.back() == '\r' || field.back() == ' '))
            field.pop_back();
        size_t start = field.find_first_not_of(' ');
        fields.push_back(start == std::string::npos ? "" : field.substr(start));
    }
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

}  // namespace

CsvReader::CsvReader(std::istream& in) : in_(in) {
    std::string line;
    while (std::getline(in_, line)) {
        ++line_;
        if (line.empty() || line[0] == '#') continue;
        auto names = split_line(line);
        for (size_t i = 0; i < names.size(); ++i)
            columns_[names[i]] = static_cast<int>(i);
        return;
    }
    throw IoError("CSV input has no header line");
}

void CsvReader::require_columns(const std::vector<std::string>& names) const {
    for (const auto& name : names)
        if (!columns_.count(name))
            throw IoError("CSV is missing required column '" + name + "'");
}

bool CsvReader::next_row() {
    std::string line;
    while (std::getline(in_, line)) {
        ++line_;
        if (line.empty() || line[0] == '#') continue;
        row_ = split_line(line);
        if (row_.size() != columns_.size())
            throw IoError("CSV line " + std::to_string(line_) + " has " +
                          std::to_string(row_.size()) + " fields, expected " +
                          std::to_string(columns_.size()));
        return true;
    }
    return false;
}

const std::string& CsvReader::text(const std::string& column) const {
    auto it = columns_.find(column);
    if (it == columns_.end()) throw IoError("unknown CSV column '" + column + "'");
    return row_[it->second];
}

double CsvReader::number(const std::string& column) const {
    const std::string& field = text(column);
    char* end = nullptr;
    const double value = std::strtod(field.c_str(), &end);
    if (end == field.c_str() || *end != '\0')
        throw IoError("CSV field '" + field + "' in column '" + column +
                      "' is not a number");
    return value;
}

CsvWriter::CsvWriter(std::ostream& out, const std::string& comment,
                     const std::vector<std::string>& columns)
    : out_(out), n_columns_(columns.size()) {
    out_ << "# " << comment << "\n";
    for (size_t i = 0; i < columns.size(); ++i)
        out_ << columns[i] << (i + 1 < columns.size() ? "," : "\n");
}

void CsvWriter::cell(const std::string& value) {
    out_ << value << (++in_row_ < n_columns_ ? "," : "");
}

void CsvWriter::cell(double value) { cell(format_number(value)); }

void CsvWriter::cell(int value) { cell(std::to_string(value)); }

void CsvWriter::end_row() {
    if (in_row_ != n_columns_)
        throw Error("CSV row has wrong number of cells");
    out_ << "\n";
    in_row_ = 0;
}

void write_file_atomic(const std::string& path, const std::string& contents) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw IoError("cannot open " + tmp + " for writing");
        out << contents;
        if (!out) throw IoError("write to " + tmp + " failed");
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace breadline
