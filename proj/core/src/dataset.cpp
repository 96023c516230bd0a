#include "recourse/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "recourse/errors.hpp"
#include "recourse/format.hpp"

namespace recourse {

FeatureSchema::FeatureSchema(std::vector<ColumnSpec> columns) : columns_(std::move(columns)) {
  std::set<std::string> seen;
  std::size_t sensitive = 0, outcome = 0;
  for (const auto& c : columns_) {
    if (c.name.empty()) throw SchemaError("schema: empty column name");
    if (!seen.insert(c.name).second)
      throw SchemaError("schema: duplicate column '" + c.name + "'");
    if (c.role == ColumnRole::Sensitive) ++sensitive;
    if (c.role == ColumnRole::Outcome) ++outcome;
  }
  if (sensitive != 1) throw SchemaError("schema: exactly one sensitive column required");
  if (outcome != 1) throw SchemaError("schema: exactly one outcome column required");
}

std::size_t FeatureSchema::index_of(const std::string& name) const {
  auto idx = try_index_of(name);
  if (!idx) throw SchemaError("schema: no column named '" + name + "'");
  return *idx;
}

std::optional<std::size_t> FeatureSchema::try_index_of(const std::string& name) const {
  for (std::size_t i = 0; i < columns_.size(); ++i)
    if (columns_[i].name == name) return i;
  return std::nullopt;
}

std::size_t FeatureSchema::sensitive_index() const {
  for (std::size_t i = 0; i < columns_.size(); ++i)
    if (columns_[i].role == ColumnRole::Sensitive) return i;
  throw SchemaError("schema: no sensitive column");
}

std::size_t FeatureSchema::outcome_index() const {
  for (std::size_t i = 0; i < columns_.size(); ++i)
    if (columns_[i].role == ColumnRole::Outcome) return i;
  throw SchemaError("schema: no outcome column");
}

std::vector<std::size_t> FeatureSchema::covariate_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < columns_.size(); ++i)
    if (columns_[i].role == ColumnRole::Covariate) out.push_back(i);
  return out;
}

Dataset::Dataset(FeatureSchema schema, std::vector<double> values, std::size_t rows,
                 std::string provenance, std::uint64_t seed)
    : schema_(std::move(schema)),
      values_(std::move(values)),
      rows_(rows),
      provenance_(std::move(provenance)),
      seed_(seed) {
  if (values_.size() != rows_ * schema_.size())
    throw SchemaError("dataset: value buffer does not match rows x columns");
  // Observed per-column [min, max]; the basis for cost ranges and distances.
  for (std::size_t c = 0; c < schema_.size(); ++c) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < rows_; ++r) {
      lo = std::min(lo, at(r, c));
      hi = std::max(hi, at(r, c));
    }
    schema_.column(c).min = rows_ ? lo : 0.0;
    schema_.column(c).max = rows_ ? hi : 0.0;
  }
}

std::vector<double> Dataset::column(std::size_t col) const {
  std::vector<double> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = at(r, col);
  return out;
}

void Dataset::validate() const {
  for (double v : values_)
    if (!std::isfinite(v)) throw SchemaError("dataset: non-finite value");
  auto check_binary = [&](std::size_t col, const char* what) {
    std::set<double> vals;
    for (std::size_t r = 0; r < rows_; ++r) vals.insert(at(r, col));
    if (vals.size() != 2)
      throw SchemaError(std::string("dataset: ") + what + " column '" +
                        schema_.column(col).name + "' must be binary with both values present (found " +
                        std::to_string(vals.size()) + " distinct values)");
  };
  check_binary(schema_.sensitive_index(), "sensitive");
  check_binary(schema_.outcome_index(), "outcome");
}

void Dataset::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw IngestError("cannot open for writing: " + path);
  for (std::size_t c = 0; c < schema_.size(); ++c)
    out << (c ? "," : "") << schema_.column(c).name;
  out << "\n";
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < schema_.size(); ++c)
      out << (c ? "," : "") << format_g9(at(r, c));
    out << "\n";
  }
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>>
split_by_sensitive(const Dataset& data, double protected_value) {
  std::vector<std::size_t> pos, neg;
  for (std::size_t r = 0; r < data.rows(); ++r)
    (data.sensitive(r) == protected_value ? pos : neg).push_back(r);
  return {std::move(pos), std::move(neg)};
}

}  // namespace recourse
