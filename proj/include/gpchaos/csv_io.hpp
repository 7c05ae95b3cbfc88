#ifndef GPCHAOS_CSV_IO_HPP
#define GPCHAOS_CSV_IO_HPP

#include <fstream>
#include <initializer_list>
#include <string>

namespace gpchaos {

inline constexpr const char* kToolName = "gpchaos";
inline constexpr const char* kToolVersion = "1.0.0";

/// Full-precision decimal rendering (17 significant digits) so replotting
/// from CSV is bit-faithful.
std::string fmt_g17(double value);

/// CSV with a '#'-prefixed metadata header block followed by column-labeled
/// numeric rows.
class CsvWriter {
public:
    explicit CsvWriter(const std::string& path); // throws IOError
    ~CsvWriter();

    void meta(const std::string& key, const std::string& value);
    void meta(const std::string& key, double value);
    void meta(const std::string& key, long long value);
    void columns(std::initializer_list<const char*> names);
    void row(std::initializer_list<double> values);
    /// Preformatted row for mixes of numeric and label fields.
    void raw_row(const std::string& line);

    void close(); // throws IOError on write failure

private:
    std::ofstream out_;
    std::string path_;
};

} // namespace gpchaos

#endif
