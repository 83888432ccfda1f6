#include "invreg/io.hpp"

#include <atomic>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <system_error>
#include <unistd.h>
#include <vector>

namespace invreg::io {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::filesystem::path tmp = path;
    static std::atomic<unsigned> counter{0};
    tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw NumericError("cannot open '" + tmp.string() + "' for writing");
        out << content;
        out.flush();
        if (!out) throw NumericError("failed writing '" + tmp.string() + "'");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw NumericError("cannot move output into place at '" + path.string() + "': " + ec.message());
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidArgument("cannot read '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string samples_to_csv(const SampleSet& s) {
    std::string out;
    const Index m = s.dim();
    for (Index j = 0; j < m; ++j) out += "x" + std::to_string(j + 1) + ",";
    out += "y\n";
    for (Index i = 0; i < s.size(); ++i) {
        for (Index j = 0; j < m; ++j) {
            out += format_double(s.inputs(i, j));
            out += ',';
        }
        out += format_double(s.outputs[i]);
        out += '\n';
    }
    return out;
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        fields.push_back(line.substr(start, comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return fields;
}

double parse_number(const std::string& field, std::size_t line_no) {
    const char* begin = field.c_str();
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw InvalidArgument("line " + std::to_string(line_no) + ": cannot parse number '" + field + "'");
    return v;
}

}  // namespace

SampleSet samples_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw InvalidArgument("empty CSV");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto header = split_fields(line);
    if (header.size() < 2 || header.back() != "y") throw InvalidArgument("CSV header must be x1,...,xm,y");
    const std::size_t m = header.size() - 1;
    for (std::size_t j = 0; j < m; ++j) {
        if (header[j] != "x" + std::to_string(j + 1)) throw InvalidArgument("CSV header must be x1,...,xm,y");
    }

    std::vector<double> values;
    std::size_t rows = 0;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() != m + 1)
            throw InvalidArgument("line " + std::to_string(line_no) + ": expected " + std::to_string(m + 1) + " fields");
        for (const auto& f : fields) values.push_back(parse_number(f, line_no));
        ++rows;
    }
    if (rows == 0) throw InvalidArgument("CSV has no data rows");

    SampleSet s;
    s.inputs.resize(static_cast<Index>(rows), static_cast<Index>(m));
    s.outputs.resize(static_cast<Index>(rows));
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < m; ++j) s.inputs(static_cast<Index>(i), static_cast<Index>(j)) = values[i * (m + 1) + j];
        s.outputs[static_cast<Index>(i)] = values[i * (m + 1) + m];
    }
    return s;
}

void write_samples_csv(const std::filesystem::path& path, const SampleSet& s) {
    write_file_atomic(path, samples_to_csv(s));
}

SampleSet read_samples_csv(const std::filesystem::path& path) { return samples_from_csv(read_file(path)); }

std::string matrix_columns_to_csv(const Matrix& m, const std::string& prefix) {
    std::string out;
    for (Index j = 0; j < m.cols(); ++j) {
        if (j) out += ',';
        out += prefix + std::to_string(j + 1);
    }
    out += '\n';
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            if (j) out += ',';
            out += format_double(m(i, j));
        }
        out += '\n';
    }
    return out;
}

}  // namespace invreg::io
