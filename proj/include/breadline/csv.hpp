#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "breadline/errors.hpp"

namespace breadline {

// Deterministic text form of a double: shortest round-trip decimal via
// %.17g / %.g probing is overkill here; a fixed %.12g is stable across
// runs and platforms with the same libc and keeps reports readable.
std::string format_number(double value);

// Minimal CSV reader for the small input tables this project ingests.
// First non-comment line is the header; '#' lines are skipped; fields
// must not contain commas.
class CsvReader {
public:
    explicit CsvReader(std::istream& in);

    void require_columns(const std::vector<std::string>& names) const;
    bool next_row();

    const std::string& text(const std::string& column) const;
    double number(const std::string& column) const;

private:
    std::istream& in_;
    std::map<std::string, int> columns_;
    std::vector<std::string> row_;
    int line_ = 0;
};

// CSV writer with a fixed column order and a leading comment line that
// records units and the config hash, so every emitted table is
// self-describing and reproducible runs diff clean.
class CsvWriter {
public:
    CsvWriter(std::ostream& out, const std::string& comment,
              const std::vector<std::string>& columns);

    void cell(const std::string& value);
    void cell(double value);
    void cell(int value);
    void end_row();

private:
    std::ostream& out_;
    size_t n_columns_;
    size_t in_row_ = 0;
};

// Writes a file atomically: to <path>.tmp first, renamed on success.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace breadline
