#pragma once

#include <algorithm>
#include <exception>
#include <filesystem>
#include <fstream>
#include "json.hpp"
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "scatterkit/common.hpp"
#include "scatterkit/potentials.hpp"

namespace scatterkit::io {

using nlohmann::ordered_json;

// CSV with a header row, "\n" endings and 17 significant digits.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::vector<std::string> header) : out_(out), columns_(header.size()) {
    write_row(header);
  }

  class Row {
   public:
    explicit Row(CsvWriter& w) : w_(w), unwinding_(std::uncaught_exceptions()) {}
    Row(const Row&) = delete;
    Row& operator=(const Row&) = delete;
    Row& operator<<(double v) { return push(format_number(v)); }
    Row& operator<<(int v) { return push(std::to_string(v)); }
    Row& operator<<(std::size_t v) { return push(std::to_string(v)); }
    Row& operator<<(bool v) { return push(v ? "true" : "false"); }
    Row& operator<<(const std::string& v) { return push(v); }
    Row& operator<<(const char* v) { return push(v); }
    Row& operator<<(Complex z) { return push(format_number(z.real())).push(format_number(z.imag())); }
    ~Row() noexcept(false) {
      if (std::uncaught_exceptions() == unwinding_) w_.write_row(cells_);
    }

   private:
    Row& push(std::string s) {
      cells_.push_back(std::move(s));
      return *this;
    }
    CsvWriter& w_;
    int unwinding_;
    std::vector<std::string> cells_;
  };

  Row row() { return Row(*this); }

 private:
  static std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  }
  void write_row(const std::vector<std::string>& cells) {
    require(cells.size() == columns_, "CsvWriter: row width does not match header");
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << quote(cells[i]);
    out_ << '\n';
  }
  std::ostream& out_;
  std::size_t columns_;
};

inline ordered_json complex_json(Complex z) { return ordered_json{{"re", z.real()}, {"im", z.imag()}}; }

inline void write_json(std::ostream& out, const ordered_json& j) { out << j.dump(2) << '\n'; }

// {potential, k1, k2, method, value_re, value_im, tolerance}; params is an
// optional method-specific string (profile settings, time).
struct GoldenRecord {
  std::string potential;
  double k1 = 0.0, k2 = 0.0;
  std::string method;
  double value_re = 0.0, value_im = 0.0;
  double tolerance = 0.0;
  std::string params;
};

inline ordered_json to_json(const GoldenRecord& r) {
  ordered_json j{{"potential", r.potential}, {"k1", r.k1},           {"k2", r.k2},
                 {"method", r.method},       {"value_re", r.value_re}, {"value_im", r.value_im},
                 {"tolerance", r.tolerance}};
  if (!r.params.empty()) j["params"] = r.params;
  return j;
}

inline GoldenRecord golden_from_json(const ordered_json& j) {
  GoldenRecord r;
  try {
    r.potential = j.at("potential").get<std::string>();
    r.k1 = j.at("k1").get<double>();
    r.k2 = j.at("k2").get<double>();
    r.method = j.at("method").get<std::string>();
    r.value_re = j.at("value_re").get<double>();
    r.value_im = j.at("value_im").get<double>();
    r.tolerance = j.at("tolerance").get<double>();
    if (j.contains("params")) r.params = j.at("params").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("golden record: ") + e.what());
  }
  return r;
}

inline std::vector<GoldenRecord> read_golden_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open golden file " + path.string());
  ordered_json j;
  try {
    j = ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument("golden file " + path.string() + ": " + e.what());
  }
  if (!j.is_array()) throw InvalidArgument("golden file " + path.string() + ": expected an array of records");
  std::vector<GoldenRecord> out;
  for (const auto& item : j) out.push_back(golden_from_json(item));
  return out;
}

inline void write_golden_file(const std::filesystem::path& path, const std::vector<GoldenRecord>& records) {
  ordered_json j = ordered_json::array();
  for (const auto& r : records) j.push_back(to_json(r));
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write golden file " + path.string());
  write_json(out, j);
}

// Sorted *.json files of a directory.
inline std::vector<std::filesystem::path> golden_files(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw InvalidArgument("golden directory not found: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace scatterkit::io
