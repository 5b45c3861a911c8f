#include "transport/csv.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>
#include <system_error>
#include <vector>

#include "transport/errors.hpp"

namespace transport {

namespace {

constexpr std::string_view kHeader = "x,s,a,y";

double parse_number(std::string_view field, int line, const char* what) {
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size())
    throw MalformedRow("line " + std::to_string(line) + ": unparseable " + what +
                       " '" + std::string(field) + "'");
  return value;
}

std::string render_number(double value) {
  std::array<char, 32> buf;
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  (void)ec;
  return std::string(buf.data(), ptr);
}

}  // namespace

StudyDataset parse_csv(const std::string& text) {
  std::vector<SubjectRecord> records;
  std::size_t pos = 0;
  int line = 0;
  bool saw_header = false;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    std::string_view row(text.data() + pos, eol - pos);
    pos = eol + 1;
    ++line;
    if (!row.empty() && row.back() == '\r') row.remove_suffix(1);
    if (!saw_header) {
      if (row != kHeader)
        throw MalformedRow("line 1: expected header '" + std::string(kHeader) + "'");
      saw_header = true;
      continue;
    }
    if (row.empty() && pos >= text.size()) break;  // trailing newline

    std::array<std::string_view, 4> fields;
    std::size_t count = 0, start = 0;
    for (std::size_t i = 0; i <= row.size(); ++i) {
      if (i == row.size() || row[i] == ',') {
        if (count == 4)
          throw MalformedRow("line " + std::to_string(line) + ": too many columns");
        fields[count++] = row.substr(start, i - start);
        start = i + 1;
      }
    }
    if (count != 4)
      throw MalformedRow("line " + std::to_string(line) + ": expected 4 columns, got " +
                         std::to_string(count));

    SubjectRecord rec;
    rec.x = parse_number(fields[0], line, "covariate");
    if (fields[1] == "1") {
      rec.s = Sample::Trial;
    } else if (fields[1] == "0") {
      rec.s = Sample::Target;
    } else {
      throw MalformedRow("line " + std::to_string(line) + ": sample flag must be 0 or 1");
    }
    if (!fields[2].empty()) {
      if (fields[2] == "1") {
        rec.a = Arm::Treated;
      } else if (fields[2] == "0") {
        rec.a = Arm::Control;
      } else {
        throw MalformedRow("line " + std::to_string(line) + ": arm must be 0, 1 or empty");
      }
    }
    if (!fields[3].empty()) rec.y = parse_number(fields[3], line, "outcome");
    records.push_back(rec);
  }
  if (!saw_header) throw MalformedRow("empty input: missing header");
  return validate(std::move(records));
}

std::string serialize_csv(const StudyDataset& dataset) {
  std::string out(kHeader);
  out.push_back('\n');
  for (const SubjectRecord& r : dataset.records) {
    out += render_number(r.x);
    out += r.s == Sample::Trial ? ",1," : ",0,";
    if (r.a.has_value()) out += *r.a == Arm::Treated ? "1" : "0";
    out.push_back(',');
    if (r.y.has_value()) out += render_number(*r.y);
    out.push_back('\n');
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw FileError("read failure on '" + path + "'");
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw FileError("cannot open '" + path + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw FileError("write failure on '" + path + "'");
}

StudyDataset load_csv_file(const std::string& path) {
  return parse_csv(read_text_file(path));
}

}  // namespace transport
