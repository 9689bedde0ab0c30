#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cfaug/dataset.hpp"
#include "cfaug/error.hpp"
#include "cfaug/io_util.hpp"

namespace cfaug {

namespace {

// finite values only: "inf"/"nan" would silently poison distance computations
bool parse_double(std::string_view cell, double& out) {
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc{} && ptr == end && std::isfinite(out);
}

std::vector<std::string> split_line(std::string_view line, char sep) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      cells.emplace_back(line.substr(start));
      break;
    }
    cells.emplace_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return cells;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string cell_ref(std::size_t line_no, std::size_t col, const std::string& name) {
  std::ostringstream os;
  os << "line " << line_no << ", column " << (col + 1);
  if (!name.empty()) os << " ('" << name << "')";
  return os.str();
}

}  // namespace

Dataset load_csv(const std::string& path, const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error::validation("cannot open dataset file: " + path);

  std::vector<std::vector<std::string>> rows;
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::size_t> line_numbers;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    rows.push_back(split_line(line, options.separator));
    line_numbers.push_back(line_no);
  }
  if (rows.empty()) throw Error::validation("empty dataset file: " + path);

  const std::size_t n_cols = rows[0].size();
  if (n_cols < 2)
    throw Error::validation(path + ": need at least one feature column and a label column");
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != n_cols)
      throw Error::validation(path + ": ragged row at line " + std::to_string(line_numbers[r]) +
                              " (" + std::to_string(rows[r].size()) + " cells, expected " +
                              std::to_string(n_cols) + ")");
  }

  bool has_header = false;
  switch (options.header) {
    case CsvOptions::Header::yes: has_header = true; break;
    case CsvOptions::Header::no: has_header = false; break;
    case CsvOptions::Header::automatic: {
      double ignored;
      has_header = std::none_of(rows[0].begin(), rows[0].end(), [&](const std::string& c) {
        return parse_double(trim(c), ignored);
      });
      break;
    }
  }

  std::vector<std::string> header;
  if (has_header) {
    for (auto& c : rows[0]) header.push_back(trim(c));
  } else {
    for (std::size_t j = 0; j < n_cols; ++j) header.push_back("f" + std::to_string(j + 1));
    header.back() = "class";
  }

  std::vector<bool> ignored(n_cols, false);
  if (has_header) {
    for (std::size_t j = 0; j < n_cols; ++j)
      for (const auto& name : options.ignore_columns)
        if (header[j] == name) ignored[j] = true;
  }

  std::size_t label_col;
  if (options.label_column) {
    if (!has_header)
      throw Error::validation(path + ": label column named '" + *options.label_column +
                              "' requires a header row");
    auto it = std::find(header.begin(), header.end(), *options.label_column);
    if (it == header.end())
      throw Error::validation(path + ": label column '" + *options.label_column + "' not found");
    label_col = static_cast<std::size_t>(it - header.begin());
  } else if (options.label_index) {
    label_col = *options.label_index;
    if (label_col >= n_cols)
      throw Error::validation(path + ": label column index out of range");
  } else {
    label_col = n_cols - 1;
    while (label_col > 0 && ignored[label_col]) --label_col;  // skip trailing provenance
  }
  ignored[label_col] = false;

  std::vector<std::string> feature_names;
  for (std::size_t j = 0; j < n_cols; ++j)
    if (j != label_col && !ignored[j]) feature_names.push_back(header[j]);
  if (feature_names.empty())
    throw Error::validation(path + ": no feature columns left after the label column");

  const std::size_t first_data = has_header ? 1 : 0;
  if (rows.size() == first_data) throw Error::validation("empty dataset file: " + path);

  std::vector<std::string> class_names;
  std::vector<int> class_ids;
  auto class_of = [&](const std::string& name) -> int {
    auto it = std::find(class_names.begin(), class_names.end(), name);
    if (it != class_names.end()) return static_cast<int>(it - class_names.begin());
    class_names.push_back(name);
    return static_cast<int>(class_names.size() - 1);
  };

  std::vector<double> values;
  values.reserve((rows.size() - first_data) * feature_names.size());
  for (std::size_t r = first_data; r < rows.size(); ++r) {
    for (std::size_t j = 0; j < n_cols; ++j) {
      if (ignored[j]) continue;
      const std::string cell = trim(rows[r][j]);
      if (j == label_col) {
        if (cell.empty())
          throw Error::validation(path + ": missing label at " + cell_ref(line_numbers[r], j, header[j]));
        class_ids.push_back(class_of(cell));
        continue;
      }
      double v;
      if (cell.empty())
        throw Error::validation(path + ": missing value at " + cell_ref(line_numbers[r], j, header[j]));
      if (!parse_double(cell, v))
        throw Error::validation(path + ": non-numeric cell '" + cell + "' at " +
                                cell_ref(line_numbers[r], j, header[j]));
      values.push_back(v);
    }
  }

  const std::size_t n_features = feature_names.size();
  Dataset ds(n_features, std::move(feature_names), std::move(class_names), header[label_col]);
  for (std::size_t i = 0; i < class_ids.size(); ++i)
    ds.append_row({values.data() + i * n_features, n_features}, class_ids[i]);
  return ds;
}

void write_csv(const Dataset& ds, const std::string& path,
               std::span<const std::string> provenance) {
  const bool with_provenance = !provenance.empty();
  if (with_provenance && provenance.size() != ds.n_instances())
    throw Error::validation("provenance column size does not match dataset rows");

  std::ostringstream out;
  for (std::size_t j = 0; j < ds.n_features(); ++j) {
    out << ds.feature_names()[j] << ',';
  }
  out << ds.label_column_name();
  if (with_provenance) out << ",provenance";
  out << '\n';

  for (std::size_t i = 0; i < ds.n_instances(); ++i) {
    auto row = ds.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) out << format_double(row[j]) << ',';
    out << ds.class_name_of(i);
    if (with_provenance) out << ',' << provenance[i];
    out << '\n';
  }
  write_file_atomic(path, out.str());
}

}  // namespace cfaug
