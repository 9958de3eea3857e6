#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lab {

// Shortest round-trip decimal form (std::to_chars), so identical doubles
// always print identical bytes.
std::string format_double(double v);

// Write via temp file + rename in the target directory.
void write_text_atomic(const std::string& path, const std::string& content);

// Row-oriented CSV buffer; nothing touches disk until write().
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> columns);

    CsvTable& cell(double v);
    CsvTable& cell(std::int64_t v);
    CsvTable& cell(const std::string& v);
    void end_row();

    std::size_t rows() const { return n_rows_; }
    std::string to_string() const;
    void write(const std::string& path) const;

private:
    std::size_t n_cols_;
    std::size_t n_rows_ = 0;
    std::size_t row_fill_ = 0;
    std::string body_;
};

} // namespace lab
