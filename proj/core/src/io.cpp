#include "classif/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

namespace classif::io {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return std::string(s.substr(first, last - first + 1));
}

std::optional<double> parse_number(std::string_view text) {
  std::string cell = trim(text);
  std::string_view view = cell;
  if (!view.empty() && view.front() == '+') view.remove_prefix(1);
  if (view.empty()) return std::nullopt;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(view.data(), view.data() + view.size(), value);
  if (ec != std::errc() || ptr != view.data() + view.size()) return std::nullopt;
  return value;
}

/// Splits one logical record; returns false at end of input.
bool read_record(std::istream& in, std::vector<std::string>& fields, std::size_t& line) {
  fields.clear();
  std::string field;
  bool in_quotes = false;
  bool any = false;
  char ch = 0;
  while (in.get(ch)) {
    any = true;
    if (in_quotes) {
      if (ch == '"') {
        if (in.peek() == '"') {
          in.get(ch);
          field.push_back('"');
        } else {
          in_quotes = false;
        }
      } else {
        if (ch == '\n') ++line;
        field.push_back(ch);
      }
      continue;
    }
    if (ch == '"') {
      in_quotes = true;
    } else if (ch == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (ch == '\n') {
      ++line;
      fields.push_back(std::move(field));
      return true;
    } else if (ch != '\r') {
      field.push_back(ch);
    }
  }
  if (in_quotes) throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": unterminated quote");
  if (!any) return false;
  ++line;
  fields.push_back(std::move(field));
  return true;
}

bool blank(const std::vector<std::string>& fields) {
  return fields.size() == 1 && trim(fields[0]).empty();
}

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::vector<std::string> default_names(std::size_t d, const std::vector<std::string>& given) {
  if (!given.empty()) {
    if (given.size() != d) {
      throw Error(ErrorKind::DimensionMismatch, "feature name count does not match the dataset");
    }
    return given;
  }
  std::vector<std::string> names;
  for (std::size_t j = 0; j < d; ++j) names.push_back("x" + std::to_string(j));
  return names;
}

}  // namespace

void ColumnSchema::validate() const {
  if (feature_columns.empty()) {
    throw Error(ErrorKind::InvalidArgument, "schema needs at least one feature column");
  }
  if (!encodings.empty() && encodings.size() != feature_columns.size()) {
    throw Error(ErrorKind::InvalidArgument, "one encoding per feature column required");
  }
  std::set<std::string> seen;
  for (const auto& name : feature_columns) {
    if (name == label_column) {
      throw Error(ErrorKind::InvalidArgument, "label column '" + name + "' listed as a feature");
    }
    if (!seen.insert(name).second) {
      throw Error(ErrorKind::InvalidArgument, "feature column '" + name + "' listed twice");
    }
  }
}

CsvTable read_csv_table(std::istream& in) {
  CsvTable table;
  std::size_t line = 0;
  std::vector<std::string> fields;
  // header: first non-blank record
  while (read_record(in, fields, line)) {
    if (!blank(fields)) break;
    fields.clear();
  }
  if (fields.empty() || blank(fields)) throw Error(ErrorKind::EmptyFile, "no header row");
  for (auto& f : fields) table.header.push_back(trim(f));

  while (read_record(in, fields, line)) {
    if (blank(fields)) continue;
    if (fields.size() != table.header.size()) {
      throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": expected " +
                                             std::to_string(table.header.size()) +
                                             " fields, found " + std::to_string(fields.size()));
    }
    table.rows.push_back(fields);
  }
  if (table.rows.empty()) throw Error(ErrorKind::EmptyFile, "no data rows after the header");
  return table;
}

CsvTable read_csv_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::IoError, "cannot open '" + path.string() + "'");
  return read_csv_table(in);
}

ColumnSchema infer_schema(const CsvTable& table, const std::string& label_column) {
  ColumnSchema schema;
  schema.label_column = label_column;
  bool has_label = false;
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    if (table.header[c] == label_column) {
      has_label = true;
      continue;
    }
    bool numeric = true;
    for (const auto& row : table.rows) {
      if (!parse_number(row[c])) {
        numeric = false;
        break;
      }
    }
    schema.feature_columns.push_back(table.header[c]);
    schema.encodings.push_back(numeric ? ColumnEncoding::Numeric : ColumnEncoding::Ordinal);
  }
  if (!has_label) throw Error(ErrorKind::MissingColumn, "label column '" + label_column + "'");
  schema.validate();
  return schema;
}

LabeledDataset to_dataset(const CsvTable& table, const ColumnSchema& schema) {
  schema.validate();
  const auto column_of = [&](const std::string& name) {
    for (std::size_t c = 0; c < table.header.size(); ++c) {
      if (table.header[c] == name) return c;
    }
    throw Error(ErrorKind::MissingColumn, "column '" + name + "'");
  };
  const std::size_t label_col = column_of(schema.label_column);
  std::vector<std::size_t> feature_cols;
  for (const auto& name : schema.feature_columns) feature_cols.push_back(column_of(name));

  const std::size_t n = table.rows.size();
  const std::size_t d = feature_cols.size();
  Matrix x(n, d);
  std::vector<std::map<std::string, double>> ordinal(d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const std::string& cell = table.rows[i][feature_cols[j]];
      const bool is_ordinal =
          !schema.encodings.empty() && schema.encodings[j] == ColumnEncoding::Ordinal;
      if (is_ordinal) {
        const std::string key = trim(cell);
        auto [it, inserted] = ordinal[j].try_emplace(key, static_cast<double>(ordinal[j].size()));
        x(i, j) = it->second;
      } else {
        const auto value = parse_number(cell);
        if (!value) {
          // data row i sits on line i + 2 when there are no blank lines
          throw Error(ErrorKind::ParseError, "row " + std::to_string(i + 1) + ", column '" +
                                                 schema.feature_columns[j] + "': '" + cell +
                                                 "' is not a number");
        }
        x(i, j) = *value;
      }
    }
  }

  std::vector<std::string> names;
  std::map<std::string, ClassId> ids;
  std::vector<ClassId> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string key = trim(table.rows[i][label_col]);
    if (key.empty()) {
      throw Error(ErrorKind::ParseError, "row " + std::to_string(i + 1) + ": empty label");
    }
    auto [it, inserted] = ids.try_emplace(key, static_cast<ClassId>(names.size()));
    if (inserted) names.push_back(key);
    labels[i] = it->second;
  }
  return validate_dataset(std::move(x), std::move(labels), ClassTable(std::move(names)));
}

LabeledDataset load_csv(const std::filesystem::path& path, const ColumnSchema& schema) {
  return to_dataset(read_csv_table(path), schema);
}

LabeledDataset load_csv(const std::filesystem::path& path, const std::string& label_column,
                        ColumnSchema* schema_out) {
  const CsvTable table = read_csv_table(path);
  ColumnSchema schema = infer_schema(table, label_column);
  LabeledDataset out = to_dataset(table, schema);
  if (schema_out != nullptr) *schema_out = std::move(schema);
  return out;
}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw Error(ErrorKind::IoError, "cannot format number");
  return std::string(buf, ptr);
}

void save_csv(const LabeledDataset& dataset, std::ostream& out,
              const std::vector<std::string>& feature_names, const std::string& label_column) {
  const auto names = default_names(dataset.dims(), feature_names);
  for (const auto& name : names) out << quote(name) << ',';
  out << quote(label_column) << '\n';
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    for (double v : dataset.row(i)) out << format_double(v) << ',';
    out << quote(dataset.classes().name(dataset.label(i))) << '\n';
  }
}

void save_csv(const LabeledDataset& dataset, const std::filesystem::path& path,
              const std::vector<std::string>& feature_names, const std::string& label_column) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoError, "cannot write '" + path.string() + "'");
  save_csv(dataset, out, feature_names, label_column);
  if (!out) throw Error(ErrorKind::IoError, "write to '" + path.string() + "' failed");
}

std::pair<LabeledDataset, ScalerParams> standard_scale(const LabeledDataset& dataset) {
  const std::size_t n = dataset.size();
  const std::size_t d = dataset.dims();
  if (n < 2) throw Error(ErrorKind::DatasetTooSmall, "standard scaling needs two rows");
  ScalerParams params;
  params.mean.assign(d, 0.0);
  params.stddev.assign(d, 0.0);
  params.constant.assign(d, false);
  Matrix x = dataset.features();
  for (std::size_t j = 0; j < d; ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += x(i, j);
    const double mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) ss += (x(i, j) - mean) * (x(i, j) - mean);
    const double sd = std::sqrt(ss / static_cast<double>(n));
    params.mean[j] = mean;
    params.stddev[j] = sd;
    params.constant[j] = !(sd > 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      x(i, j) = params.constant[j] ? 0.0 : (x(i, j) - mean) / sd;
    }
  }
  return {validate_dataset(std::move(x), dataset.labels(), dataset.classes()), std::move(params)};
}

nlohmann::json to_json(const NeighborhoodSpec& spec) {
  nlohmann::json j;
  j["metric"] = std::string(to_string(spec.metric));
  if (spec.is_radius()) {
    j["mode"] = "radius";
    j["radius"] = spec.theta();
  } else {
    j["mode"] = "k_nearest";
    j["k"] = spec.k();
  }
  return j;
}

nlohmann::json to_json(const EstimateReport& report, const ClassTable& classes) {
  return nlohmann::json{
      {"limit", report.limit},
      {"n", report.n},
      {"d", report.d},
      {"classes", classes.names()},
      {"class_proportions", report.class_proportions},
      {"config", to_json(report.config)},
      {"empty_neighborhood_count", report.empty_neighborhood_count},
  };
}

nlohmann::json to_json(const JackknifeReport& report) {
  return nlohmann::json{
      {"subsample_limits", report.subsample_limits},
      {"max_limit", report.max_limit},
      {"mean_limit", report.mean_limit},
      {"std_limit", report.std_limit},
      {"rounds", report.rounds},
      {"fraction", report.fraction},
      {"subsample_size", report.subsample_size},
  };
}

nlohmann::json to_json(const std::vector<SweepPoint>& curve) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& p : curve) {
    out.push_back({{"proportion", p.proportion},
                   {"subsample_size", p.subsample_size},
                   {"mean_limit", p.mean_limit},
                   {"std_limit", p.std_limit},
                   {"limits", p.limits}});
  }
  return out;
}

nlohmann::json to_json(const OverclassReport& report) {
  return nlohmann::json{
      {"potential_classes", report.potential_classes},
      {"resolutions", report.resolutions},
      {"min_points", report.min_points},
      {"actual_points", report.actual_points},
      {"over_classified", report.over_classified},
  };
}

nlohmann::json to_json(const AccuracyStats& stats) {
  return nlohmann::json{
      {"accuracies", stats.accuracies},
      {"mean", stats.mean},
      {"std", stats.std},
  };
}

void write_entropy_csv(const LabeledDataset& dataset, const std::vector<EntropyRecord>& records,
                       std::ostream& out, const std::vector<std::string>& feature_names) {
  const auto names = default_names(dataset.dims(), feature_names);
  out << "index,label,entropy,neighborhood_size";
  for (const auto& name : names) out << ',' << quote(name);
  out << '\n';
  for (const auto& r : records) {
    out << r.index << ',' << quote(dataset.classes().name(r.label)) << ','
        << format_double(r.entropy) << ',' << r.neighborhood_size;
    for (double v : r.coordinates) out << ',' << format_double(v);
    out << '\n';
  }
}

}  // namespace classif::io
