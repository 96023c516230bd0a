#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "recourse/schema.hpp"

namespace recourse {

/// One row of a dataset: a borrowed view, valid while the dataset lives.
using Instance = std::span<const double>;

/// Immutable after construction. Row-major storage; schema names the columns
/// and carries per-column observed ranges.
class Dataset {
public:
  Dataset() = default;
  Dataset(FeatureSchema schema, std::vector<double> values, std::size_t rows,
          std::string provenance, std::uint64_t seed = 0);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return schema_.size(); }
  const FeatureSchema& schema() const { return schema_; }
  const std::string& provenance() const { return provenance_; }
  std::uint64_t seed() const { return seed_; }

  Instance row(std::size_t i) const {
    return Instance(values_.data() + i * schema_.size(), schema_.size());
  }
  double at(std::size_t row, std::size_t col) const {
    return values_[row * schema_.size() + col];
  }
  double sensitive(std::size_t row) const { return at(row, schema_.sensitive_index()); }
  double outcome(std::size_t row) const { return at(row, schema_.outcome_index()); }

  /// Column as a contiguous copy (fit routines want columns).
  std::vector<double> column(std::size_t col) const;

  /// Validates invariants: binary sensitive with both values present, binary
  /// outcome, all values finite. Throws SchemaError on violation.
  void validate() const;

  /// Writes the dataset as a delimited file with a header row.
  void write_csv(const std::string& path) const;

private:
  FeatureSchema schema_;
  std::vector<double> values_;
  std::size_t rows_ = 0;
  std::string provenance_;
  std::uint64_t seed_ = 0;
};

/// Partition by the sensitive attribute: first the rows carrying
/// `protected_value` (D+), then the rest (D-). Returns row indices.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>>
split_by_sensitive(const Dataset& data, double protected_value);

}  // namespace recourse
