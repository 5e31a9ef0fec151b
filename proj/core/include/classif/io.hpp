#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "classif/baselines.hpp"
#include "classif/core.hpp"
#include "classif/estimator.hpp"

namespace classif::io {

enum class ColumnEncoding { Numeric, Ordinal };

struct ColumnSchema {
  std::string label_column;
  std::vector<std::string> feature_columns;
  std::vector<ColumnEncoding> encodings;  // empty means all numeric

  void validate() const;
};

/// Raw CSV contents: a header plus string cells.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// RFC 4180-style reader (comma separator, double-quote escaping). Throws
/// EmptyFile, IoError, or ParseError on ragged rows.
CsvTable read_csv_table(std::istream& in);
CsvTable read_csv_table(const std::filesystem::path& path);

/// Every non-label column becomes a feature; a column is numeric when all of
/// its cells parse as numbers, ordinal otherwise.
ColumnSchema infer_schema(const CsvTable& table, const std::string& label_column);

/// Numeric columns parse as doubles; ordinal columns and labels map to
/// 0..m-1 in order of first appearance.
LabeledDataset to_dataset(const CsvTable& table, const ColumnSchema& schema);
LabeledDataset load_csv(const std::filesystem::path& path, const ColumnSchema& schema);
/// Loads with an inferred schema; `schema_out` receives it when non-null.
LabeledDataset load_csv(const std::filesystem::path& path, const std::string& label_column,
                        ColumnSchema* schema_out = nullptr);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

/// Writes a header (feature names, then the label column) and one row per
/// point with labels as class names. Default feature names are x0, x1, ...
void save_csv(const LabeledDataset& dataset, std::ostream& out,
              const std::vector<std::string>& feature_names = {},
              const std::string& label_column = "label");
void save_csv(const LabeledDataset& dataset, const std::filesystem::path& path,
              const std::vector<std::string>& feature_names = {},
              const std::string& label_column = "label");

struct ScalerParams {
  std::vector<double> mean;
  std::vector<double> stddev;  // population standard deviation
  std::vector<bool> constant;
};

/// (x - mean) / std per column; constant columns become all-zero.
std::pair<LabeledDataset, ScalerParams> standard_scale(const LabeledDataset& dataset);

nlohmann::json to_json(const NeighborhoodSpec& spec);
/// {limit, n, d, classes, class_proportions, config, empty_neighborhood_count}
nlohmann::json to_json(const EstimateReport& report, const ClassTable& classes);
nlohmann::json to_json(const JackknifeReport& report);
nlohmann::json to_json(const std::vector<SweepPoint>& curve);
nlohmann::json to_json(const OverclassReport& report);
nlohmann::json to_json(const AccuracyStats& stats);

/// Columns: index, label, entropy, neighborhood_size, then the features.
void write_entropy_csv(const LabeledDataset& dataset, const std::vector<EntropyRecord>& records,
                       std::ostream& out, const std::vector<std::string>& feature_names = {});

}  // namespace classif::io
