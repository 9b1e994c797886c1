#include "fhd/util/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fhd {

std::string format_full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(std::string path) : path_(std::move(path)) {
    auto* f = new std::ofstream(path_, std::ios::binary);
    if (!f->is_open()) {
        delete f;
        throw std::runtime_error("cannot open for write: " + path_);
    }
    stream_ = f;
}

CsvWriter::~CsvWriter() {
    auto* f = static_cast<std::ofstream*>(stream_);
    f->close();
    delete f;
}

void CsvWriter::header(const std::vector<std::string>& names) {
    auto* f = static_cast<std::ofstream*>(stream_);
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) *f << ',';
        *f << names[i];
    }
    *f << '\n';
}

void CsvWriter::row(const std::vector<double>& values) {
    auto* f = static_cast<std::ofstream*>(stream_);
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) *f << ',';
        *f << format_full(values[i]);
    }
    *f << '\n';
}

void CsvWriter::raw_row(const std::string& line) {
    auto* f = static_cast<std::ofstream*>(stream_);
    *f << line << '\n';
}

void write_pgm(const std::string& path, const std::vector<std::uint8_t>& pixels,
               std::size_t width, std::size_t height) {
    if (pixels.size() != width * height) throw std::invalid_argument("pgm size mismatch");
    std::ofstream f(path, std::ios::binary);
    if (!f.is_open()) throw std::runtime_error("cannot open for write: " + path);
    f << "P5\n" << width << " " << height << "\n255\n";
    f.write(reinterpret_cast<const char*>(pixels.data()),
            static_cast<std::streamsize>(pixels.size()));
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f.is_open()) throw std::runtime_error("cannot open for read: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f.is_open()) throw std::runtime_error("cannot open for write: " + path);
    f << content;
}

}  // namespace fhd
