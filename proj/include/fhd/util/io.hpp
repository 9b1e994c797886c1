#ifndef FHD_UTIL_IO_HPP
#define FHD_UTIL_IO_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace fhd {

// Formats a double with 17 significant digits so CSV output round-trips
// bit-exactly and files diff cleanly between runs.
std::string format_full(double v);

class CsvWriter {
  public:
    explicit CsvWriter(std::string path);
    ~CsvWriter();
    void header(const std::vector<std::string>& names);
    void row(const std::vector<double>& values);
    void raw_row(const std::string& line);
    const std::string& path() const { return path_; }

  private:
    std::string path_;
    void* stream_;
};

// 8-bit grayscale, binary PGM (P5).
void write_pgm(const std::string& path, const std::vector<std::uint8_t>& pixels,
               std::size_t width, std::size_t height);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace fhd

#endif
