#pragma once

#include <string>

#include "transport/dataset.hpp"

namespace transport {

// On-disk form: header `x,s,a,y`, one subject per line, s in {0,1} with
// 1 = trial, a in {0,1} (empty for target rows), y decimal (empty for
// target rows). Numbers use the shortest decimal form that parses back to
// the identical double, so serialize/parse is an exact round trip.

// MalformedRow for structural problems (header, column count, trailing
// characters in a number), then everything validate() raises.
StudyDataset parse_csv(const std::string& text);

std::string serialize_csv(const StudyDataset& dataset);

// Whole-file helpers; FileError on I/O failure.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);
StudyDataset load_csv_file(const std::string& path);

}  // namespace transport
