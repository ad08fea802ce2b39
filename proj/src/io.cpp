// SPDX-License-Identifier: Apache-2.0
#include "chanlab/io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "chanlab/error.hpp"
#include "chanlab/json_writer.hpp"

namespace chanlab {

static_assert(std::endian::native == std::endian::little,
              "binary feature I/O assumes a little-endian host");

std::string read_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failure on '" + path.string() + "'");
  return ss.str();
}

void write_file(const std::filesystem::path &path, const std::string &contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.flush();
  if (!out) throw IoError("write failure on '" + path.string() + "'");
}

// ---------------------------------------------------------------------------
// CSV

namespace {

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

double parse_double(std::string_view token, std::size_t line_no) {
  double value = 0.0;
  const char *first = token.data();
  const char *last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec == std::errc::result_out_of_range)
    throw ValidationError("value '" + std::string(token) + "' out of range at line " +
                          std::to_string(line_no));
  if (ec != std::errc() || ptr != last || token.empty())
    throw ParseError("cannot parse '" + std::string(token) + "' as a number", line_no);
  if (!std::isfinite(value))
    throw ValidationError("non-finite value '" + std::string(token) + "' at line " +
                          std::to_string(line_no));
  return value;
}

}  // namespace

EmbeddingDataset parse_features_csv(const std::string &text) {
  if (text.empty()) throw EmptyInputError("feature file is empty");

  std::vector<std::string_view> lines;
  {
    std::string_view rest(text);
    while (!rest.empty()) {
      const auto nl = rest.find('\n');
      std::string_view line = rest.substr(0, nl);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      lines.push_back(line);
      if (nl == std::string_view::npos) break;
      rest.remove_prefix(nl + 1);
    }
  }

  const auto header = split_commas(lines.front());
  if (header.size() < 2 || header[0] != "label")
    throw ParseError("header must be 'label,c0,...,c{d-1}'", 1);
  const std::size_t dim = header.size() - 1;
  for (std::size_t c = 0; c < dim; ++c) {
    if (header[c + 1] != "c" + std::to_string(c))
      throw ParseError("header column " + std::to_string(c + 1) + " must be 'c" +
                           std::to_string(c) + "'",
                       1);
  }

  DatasetBuilder builder(dim);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (lines[i].empty()) {
      if (i + 1 == lines.size()) break;  // trailing newline
      throw ParseError("empty record", line_no);
    }
    const auto fields = split_commas(lines[i]);
    if (fields.size() != dim + 1)
      throw ParseError("expected " + std::to_string(dim + 1) + " fields, found " +
                           std::to_string(fields.size()),
                       line_no);
    if (fields[0].empty()) throw ParseError("empty label", line_no);
    FeatureVector v(dim);
    for (std::size_t c = 0; c < dim; ++c) v[c] = parse_double(fields[c + 1], line_no);
    builder.add(fields[0], std::move(v));
  }
  if (builder.records() == 0) throw EmptyInputError("feature file has a header but no records");
  return std::move(builder).build();
}

EmbeddingDataset load_features_csv(const std::filesystem::path &path) {
  try {
    return parse_features_csv(read_file(path));
  } catch (const ParseError &e) {
    throw ParseError(path.string() + ": " + e.what());
  } catch (const ValidationError &e) {
    throw ValidationError(path.string() + ": " + e.what());
  } catch (const EmptyInputError &e) {
    throw EmptyInputError(path.string() + ": " + e.what());
  }
}

std::string features_to_csv(const EmbeddingDataset &dataset) {
  std::string out = "label";
  for (std::size_t c = 0; c < dataset.dim(); ++c) out += ",c" + std::to_string(c);
  out += '\n';
  for (const auto &cls : dataset.classes()) {
    if (cls.name.find(',') != std::string::npos || cls.name.find('\n') != std::string::npos)
      throw ValidationError("class label '" + cls.name + "' cannot be written to CSV");
    for (const auto &v : cls.vectors) {
      out += cls.name;
      for (double x : v) {
        out += ',';
        out += format_double(x);
      }
      out += '\n';
    }
  }
  return out;
}

void save_features_csv(const EmbeddingDataset &dataset, const std::filesystem::path &path) {
  write_file(path, features_to_csv(dataset));
}

// ---------------------------------------------------------------------------
// Binary

namespace {

class ByteReader {
 public:
  explicit ByteReader(std::string_view bytes) : bytes_(bytes) {}

  template <typename T>
  T read(const char *what) {
    T value;
    need(sizeof(T), what);
    std::memcpy(&value, bytes_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return value;
  }

  std::string read_string(std::size_t n, const char *what) {
    need(n, what);
    std::string s(bytes_.substr(pos_, n));
    pos_ += n;
    return s;
  }

  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  void need(std::size_t n, const char *what) {
    if (remaining() < n)
      throw LengthError(std::string("truncated feature file while reading ") + what +
                        " at byte " + std::to_string(pos_));
  }

  std::string_view bytes_;
  std::size_t pos_ = 0;
};

template <typename T>
void append(std::string &out, T value) {
  char buf[sizeof(T)];
  std::memcpy(buf, &value, sizeof(T));
  out.append(buf, sizeof(T));
}

}  // namespace

EmbeddingDataset parse_features_binary(const std::string &bytes) {
  if (bytes.empty()) throw EmptyInputError("feature file is empty");
  ByteReader r(bytes);
  if (bytes.size() < 4 || bytes.compare(0, 4, "FSLF") != 0)
    throw FormatError("bad magic: expected 'FSLF'");
  r.read_string(4, "magic");
  const auto version = r.read<std::uint16_t>("version");
  if (version != 1) throw FormatError("unsupported version " + std::to_string(version));
  const auto num_classes = r.read<std::uint32_t>("class count");

  std::vector<LabeledClass> classes;
  std::vector<std::uint32_t> counts;
  for (std::uint32_t i = 0; i < num_classes; ++i) {
    const auto len = r.read<std::uint16_t>("class name length");
    LabeledClass c;
    c.name = r.read_string(len, "class name");
    counts.push_back(r.read<std::uint32_t>("vector count"));
    classes.push_back(std::move(c));
  }
  const auto dim = r.read<std::uint32_t>("dimensionality");
  if (dim == 0) throw ValidationError("dimensionality must be positive");

  for (std::size_t i = 0; i < classes.size(); ++i) {
    classes[i].vectors.reserve(counts[i]);
    for (std::uint32_t n = 0; n < counts[i]; ++n) {
      FeatureVector v(dim);
      for (auto &x : v) x = static_cast<double>(r.read<float>("vector data"));
      classes[i].vectors.push_back(std::move(v));
    }
  }
  if (r.remaining() != 0)
    throw FormatError(std::to_string(r.remaining()) + " trailing bytes after vector data");
  if (classes.empty()) throw EmptyInputError("feature file declares no classes");
  return EmbeddingDataset(dim, std::move(classes));
}

EmbeddingDataset load_features_binary(const std::filesystem::path &path) {
  const std::string bytes = read_file(path);
  try {
    return parse_features_binary(bytes);
  } catch (const LengthError &e) {
    throw LengthError(path.string() + ": " + e.what());
  } catch (const FormatError &e) {
    throw FormatError(path.string() + ": " + e.what());
  } catch (const ValidationError &e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

std::string features_to_binary(const EmbeddingDataset &dataset) {
  std::string out = "FSLF";
  append<std::uint16_t>(out, 1);
  append<std::uint32_t>(out, static_cast<std::uint32_t>(dataset.num_classes()));
  for (const auto &c : dataset.classes()) {
    if (c.name.size() > 0xFFFF) throw ValidationError("class name too long for binary format");
    append<std::uint16_t>(out, static_cast<std::uint16_t>(c.name.size()));
    out += c.name;
    append<std::uint32_t>(out, static_cast<std::uint32_t>(c.vectors.size()));
  }
  append<std::uint32_t>(out, static_cast<std::uint32_t>(dataset.dim()));
  for (const auto &c : dataset.classes())
    for (const auto &v : c.vectors)
      for (double x : v) append<float>(out, static_cast<float>(x));
  return out;
}

void save_features_binary(const EmbeddingDataset &dataset, const std::filesystem::path &path) {
  write_file(path, features_to_binary(dataset));
}

namespace {
bool is_binary_path(const std::filesystem::path &path) {
  const auto ext = path.extension().string();
  return ext == ".bin" || ext == ".fslf";
}
}  // namespace

EmbeddingDataset load_features(const std::filesystem::path &path) {
  return is_binary_path(path) ? load_features_binary(path) : load_features_csv(path);
}

void save_features(const EmbeddingDataset &dataset, const std::filesystem::path &path) {
  if (is_binary_path(path))
    save_features_binary(dataset, path);
  else
    save_features_csv(dataset, path);
}

// ---------------------------------------------------------------------------
// Reports

nlohmann::json report_to_json(const EvalReport &report) {
  nlohmann::json doc;
  doc["per_episode_accuracy"] = report.per_episode_accuracy;
  doc["mean_accuracy"] = report.mean_accuracy;
  doc["ci95_halfwidth"] = report.ci95_halfwidth;
  doc["config_echo"] = report.config_echo;
  doc["seed"] = report.seed;
  return doc;
}

EvalReport report_from_json(const nlohmann::json &doc) {
  EvalReport r;
  try {
    r.per_episode_accuracy = doc.at("per_episode_accuracy").get<std::vector<double>>();
    r.mean_accuracy = doc.at("mean_accuracy").get<double>();
    r.ci95_halfwidth = doc.at("ci95_halfwidth").get<double>();
    r.config_echo = doc.at("config_echo");
    r.seed = doc.at("seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception &e) {
    throw ParseError(std::string("malformed report: ") + e.what());
  }
  return r;
}

void save_report(const EvalReport &report, const std::filesystem::path &path) {
  write_file(path, dump_json(report_to_json(report)));
}

EvalReport load_report(const std::filesystem::path &path) {
  const std::string text = read_file(path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception &e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return report_from_json(doc);
}

}  // namespace chanlab
