#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

namespace fecon::csv {

// Doubles carry 17 significant digits so a written value reads back exactly.
inline std::string format(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

inline std::string format(long value) { return std::to_string(value); }
inline std::string format(int value) { return std::to_string(value); }
inline std::string format(bool value) { return value ? "1" : "0"; }
inline std::string format(const char* value) { return value; }
inline std::string format(const std::string& value) { return value; }

class Writer {
  public:
    Writer(const std::string& path, const std::vector<std::string>& header) : out_(path) {
        if (!out_) throw std::ios_base::failure("cannot open " + path + " for writing");
        columns_ = header.size();
        write_line(header);
    }

    template <typename... Cells>
    void row(const Cells&... cells) {
        std::vector<std::string> line{format(cells)...};
        write_line(line);
    }

    void row_strings(const std::vector<std::string>& cells) { write_line(cells); }

  private:
    void write_line(const std::vector<std::string>& cells) {
        if (cells.size() != columns_) {
            throw std::logic_error("csv row width differs from header");
        }
        for (size_t k = 0; k < cells.size(); ++k) {
            if (k > 0) out_ << ',';
            out_ << cells[k];
        }
        out_ << '\n';
    }

    std::ofstream out_;
    size_t columns_;
};

} // namespace fecon::csv
