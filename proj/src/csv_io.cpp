#include "gpchaos/csv_io.hpp"
#include "gpchaos/errors.hpp"

#include <cstdio>

namespace gpchaos {

std::string fmt_g17(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

CsvWriter::CsvWriter(const std::string& path) : out_(path), path_(path) {
    if (!out_) {
        throw IOError("cannot open '" + path + "' for writing");
    }
}

CsvWriter::~CsvWriter() {
    if (out_.is_open()) {
        out_.flush();
    }
}

void CsvWriter::meta(const std::string& key, const std::string& value) {
    out_ << "# " << key << " = " << value << '\n';
}

void CsvWriter::meta(const std::string& key, double value) {
    out_ << "# " << key << " = " << fmt_g17(value) << '\n';
}

void CsvWriter::meta(const std::string& key, long long value) {
    out_ << "# " << key << " = " << value << '\n';
}

void CsvWriter::columns(std::initializer_list<const char*> names) {
    bool first = true;
    for (const char* name : names) {
        if (!first) {
            out_ << ',';
        }
        out_ << name;
        first = false;
    }
    out_ << '\n';
}

void CsvWriter::row(std::initializer_list<double> values) {
    bool first = true;
    for (double v : values) {
        if (!first) {
            out_ << ',';
        }
        out_ << fmt_g17(v);
        first = false;
    }
    out_ << '\n';
}

void CsvWriter::raw_row(const std::string& line) {
    out_ << line << '\n';
}

void CsvWriter::close() {
    out_.flush();
    if (!out_) {
        throw IOError("write failure on '" + path_ + "'");
    }
    out_.close();
}

} // namespace gpchaos
