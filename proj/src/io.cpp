#include "tmsc/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace tmsc {
namespace fs = std::filesystem;

namespace {

std::string where(const fs::path& path, std::size_t line) {
  return path.string() + ":" + std::to_string(line) + ": ";
}

std::ifstream open_in(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError(path.string() + ": cannot open for reading");
  return in;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw FormatError(path.string() + ": cannot open for writing");
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <typename T>
T parse_number(std::string_view token, const fs::path& path, std::size_t line) {
  token = trim(token);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  T value{};
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || token.empty()) {
    throw FormatError(where(path, line) + "invalid number '" + std::string(token) + "'");
  }
  return value;
}

std::vector<double> parse_row(std::string_view text, const fs::path& path, std::size_t line) {
  std::vector<double> row;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    row.push_back(parse_number<double>(text.substr(start, comma - start), path, line));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return row;
}

void write_double(std::ostream& out, double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.write(buf, ptr - buf);
}

void write_rows(std::ostream& out, const auto& m) {
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      write_double(out, m(i, j));
    }
    out << '\n';
  }
}

// Reads non-blank lines as CSV rows, tracking their line numbers.
struct CsvRows {
  std::vector<std::vector<double>> rows;
  std::vector<std::size_t> lines;
};

CsvRows read_rows(std::istream& in, const fs::path& path, std::size_t* line_no,
                  std::size_t max_rows = static_cast<std::size_t>(-1)) {
  CsvRows out;
  std::string line;
  while (out.rows.size() < max_rows && std::getline(in, line)) {
    ++*line_no;
    if (trim(line).empty()) continue;
    out.rows.push_back(parse_row(line, path, *line_no));
    out.lines.push_back(*line_no);
  }
  return out;
}

Matrix rows_to_matrix(const CsvRows& csv, const fs::path& path) {
  if (csv.rows.empty()) throw FormatError(path.string() + ": no data rows");
  const std::size_t width = csv.rows.front().size();
  Matrix m(static_cast<Index>(csv.rows.size()), static_cast<Index>(width));
  for (std::size_t r = 0; r < csv.rows.size(); ++r) {
    if (csv.rows[r].size() != width) {
      throw FormatError(where(path, csv.lines[r]) + "ragged row: " +
                        std::to_string(csv.rows[r].size()) + " values, expected " +
                        std::to_string(width));
    }
    for (std::size_t c = 0; c < width; ++c) {
      m(static_cast<Index>(r), static_cast<Index>(c)) = csv.rows[r][c];
    }
  }
  return m;
}

}  // namespace

Matrix read_csv_matrix(const fs::path& path) {
  auto in = open_in(path);
  std::size_t line = 0;
  return rows_to_matrix(read_rows(in, path, &line), path);
}

void write_csv_matrix(const fs::path& path, const Matrix& m) {
  auto out = open_out(path);
  write_rows(out, m);
}

std::vector<int> read_labels(const fs::path& path) {
  auto in = open_in(path);
  std::vector<int> labels;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (trim(line).empty()) continue;
    labels.push_back(parse_number<int>(line, path, n));
  }
  return labels;
}

void write_labels(const fs::path& path, std::span<const int> labels) {
  auto out = open_out(path);
  for (int l : labels) out << l << '\n';
}

Manifest read_manifest(const fs::path& path) {
  auto in = open_in(path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  const fs::path base = path.parent_path();
  auto resolve = [&](const std::string& p) {
    const fs::path q(p);
    return q.is_absolute() ? q : base / q;
  };
  Manifest m;
  try {
    for (const auto& v : j.at("views")) m.views.push_back(resolve(v.get<std::string>()));
    if (j.contains("names")) m.names = j.at("names").get<std::vector<std::string>>();
    if (j.contains("labels") && !j.at("labels").is_null()) {
      m.labels = resolve(j.at("labels").get<std::string>());
    }
    m.clusters = j.at("clusters").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  if (m.views.empty()) throw FormatError(path.string() + ": manifest lists no views");
  if (!m.names.empty() && m.names.size() != m.views.size()) {
    throw FormatError(path.string() + ": names and views differ in length");
  }
  if (m.clusters < 1) throw FormatError(path.string() + ": clusters must be positive");
  return m;
}

void write_manifest(const fs::path& path, const Manifest& m) {
  nlohmann::json j;
  j["views"] = nlohmann::json::array();
  for (const auto& v : m.views) j["views"].push_back(v.generic_string());
  if (!m.names.empty()) j["names"] = m.names;
  if (m.labels) j["labels"] = m.labels->generic_string();
  j["clusters"] = m.clusters;
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

MultiViewDataset load_dataset(const fs::path& manifest_path) {
  const Manifest m = read_manifest(manifest_path);
  MultiViewDataset data;
  data.clusters = m.clusters;
  for (std::size_t v = 0; v < m.views.size(); ++v) {
    data.views.push_back(read_csv_matrix(m.views[v]));
    data.names.push_back(m.names.empty() ? "view" + std::to_string(v + 1) : m.names[v]);
  }
  const auto label_of = [&](std::size_t v) {
    return "view '" + data.names[v] + "' (" + m.views[v].string() + ")";
  };
  for (std::size_t v = 1; v < data.views.size(); ++v) {
    if (data.views[v].cols() != data.views[0].cols()) {
      throw FormatError(label_of(v) + " has " + std::to_string(data.views[v].cols()) +
                        " samples but " + label_of(0) + " has " +
                        std::to_string(data.views[0].cols()));
    }
  }
  if (m.labels) {
    std::vector<int> labels = read_labels(*m.labels);
    if (static_cast<Index>(labels.size()) != data.samples()) {
      throw FormatError(m.labels->string() + ": " + std::to_string(labels.size()) +
                        " labels for " + std::to_string(data.samples()) + " samples");
    }
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] < 1 || labels[i] > m.clusters) {
        throw FormatError(where(*m.labels, i + 1) + "label " + std::to_string(labels[i]) +
                          " outside 1.." + std::to_string(m.clusters));
      }
    }
    data.labels = std::move(labels);
  }
  data.validate();
  return data;
}

fs::path save_dataset(const fs::path& dir, const MultiViewDataset& data) {
  fs::create_directories(dir);
  Manifest m;
  m.clusters = data.clusters;
  for (std::size_t v = 0; v < data.views.size(); ++v) {
    const std::string file = "view_" + std::to_string(v + 1) + ".csv";
    write_csv_matrix(dir / file, data.views[v]);
    m.views.emplace_back(file);
  }
  m.names = data.names;
  if (data.labels) {
    write_labels(dir / "labels.csv", *data.labels);
    m.labels = "labels.csv";
  }
  const fs::path manifest = dir / "manifest.json";
  write_manifest(manifest, m);
  return manifest;
}

Tensor3 read_tensor(const fs::path& path) {
  auto in = open_in(path);
  std::size_t line = 0;
  Index dims[3];
  for (Index& d : dims) {
    std::string text;
    do {
      if (!std::getline(in, text)) throw FormatError(path.string() + ": truncated header");
      ++line;
    } while (trim(text).empty());
    d = parse_number<Index>(text, path, line);
    if (d < 1) throw FormatError(where(path, line) + "dimension must be positive");
  }
  Tensor3 t(dims[0], dims[1], dims[2]);
  for (Index k = 0; k < t.n3(); ++k) {
    const CsvRows rows = read_rows(in, path, &line, static_cast<std::size_t>(t.n1()));
    if (static_cast<Index>(rows.rows.size()) != t.n1()) {
      throw FormatError(path.string() + ": slice " + std::to_string(k + 1) + " is truncated");
    }
    const Matrix slice = rows_to_matrix(rows, path);
    if (slice.cols() != t.n2()) {
      throw FormatError(where(path, rows.lines.front()) + "slice " + std::to_string(k + 1) +
                        " has " + std::to_string(slice.cols()) + " columns, expected " +
                        std::to_string(t.n2()));
    }
    t.slice(k) = slice;
  }
  return t;
}

void write_tensor(const fs::path& path, const Tensor3& t) {
  auto out = open_out(path);
  out << t.n1() << '\n' << t.n2() << '\n' << t.n3() << '\n';
  for (Index k = 0; k < t.n3(); ++k) write_rows(out, t.slice(k));
}

}  // namespace tmsc
