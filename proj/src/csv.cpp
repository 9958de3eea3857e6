#include "lab/csv.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <system_error>

#include "lab/errors.hpp"

namespace lab {

std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void write_text_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    if (target.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(target.parent_path(), ec);
    }
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw numerical_error("cannot open for write: " + tmp.string());
        out << content;
        if (!out) throw numerical_error("short write: " + tmp.string());
    }
    fs::rename(tmp, target);
}

CsvTable::CsvTable(std::vector<std::string> columns) : n_cols_(columns.size()) {
    if (columns.empty()) throw validation_error("CsvTable: no columns");
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) body_ += ',';
        body_ += columns[i];
    }
    body_ += '\n';
}

CsvTable& CsvTable::cell(double v) { return cell(format_double(v)); }

CsvTable& CsvTable::cell(std::int64_t v) { return cell(std::to_string(v)); }

CsvTable& CsvTable::cell(const std::string& v) {
    if (row_fill_ >= n_cols_) throw validation_error("CsvTable: row overflow");
    if (row_fill_) body_ += ',';
    body_ += v;
    ++row_fill_;
    return *this;
}

void CsvTable::end_row() {
    if (row_fill_ != n_cols_) throw validation_error("CsvTable: incomplete row");
    body_ += '\n';
    row_fill_ = 0;
    ++n_rows_;
}

std::string CsvTable::to_string() const { return body_; }

void CsvTable::write(const std::string& path) const {
    if (row_fill_ != 0) throw validation_error("CsvTable: dangling row");
    write_text_atomic(path, body_);
}

} // namespace lab
