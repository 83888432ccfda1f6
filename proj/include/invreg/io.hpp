#pragma once

#include "invreg/types.hpp"

#include <filesystem>
#include <string>

namespace invreg::io {

/// Decimal text with 17 significant digits; parses back to the same double.
std::string format_double(double v);

/// Writes `content` to a temporary sibling and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

/// CSV with header `x1,...,xm,y`, one LF-terminated row per sample.
std::string samples_to_csv(const SampleSet& s);

/// Parses the format written by `samples_to_csv`. Throws InvalidArgument on
/// a malformed header, ragged rows or unparsable numbers. Non-finite values
/// are accepted here and left to `validate_sample_set`.
SampleSet samples_from_csv(const std::string& text);

void write_samples_csv(const std::filesystem::path& path, const SampleSet& s);
SampleSet read_samples_csv(const std::filesystem::path& path);

/// Column-per-vector CSV with header `w1,...,wk`.
std::string matrix_columns_to_csv(const Matrix& m, const std::string& prefix);

}  // namespace invreg::io
