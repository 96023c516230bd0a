#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace recourse {

enum class FeatureKind { Continuous, Ordinal, Categorical };

enum class ColumnRole { Covariate, Sensitive, Outcome };

struct ColumnSpec {
  std::string name;
  FeatureKind kind = FeatureKind::Continuous;
  ColumnRole role = ColumnRole::Covariate;
  // Observed [min, max] over the dataset; filled at ingestion/generation time.
  double min = 0.0;
  double max = 0.0;

  double range() const { return max - min; }
};

/// Column layout shared by a Dataset and every Instance drawn from it.
/// The distance feature set is all covariates; the sensitive attribute and
/// the outcome never enter distances.
class FeatureSchema {
public:
  FeatureSchema() = default;
  explicit FeatureSchema(std::vector<ColumnSpec> columns);

  std::size_t size() const { return columns_.size(); }
  const ColumnSpec& column(std::size_t i) const { return columns_.at(i); }
  ColumnSpec& column(std::size_t i) { return columns_.at(i); }
  const std::vector<ColumnSpec>& columns() const { return columns_; }

  /// Index of a column by name; throws SchemaError when absent.
  std::size_t index_of(const std::string& name) const;
  std::optional<std::size_t> try_index_of(const std::string& name) const;

  std::size_t sensitive_index() const;
  std::size_t outcome_index() const;

  /// Covariate column indices in schema order (the distance feature set).
  std::vector<std::size_t> covariate_indices() const;

private:
  std::vector<ColumnSpec> columns_;
};

}  // namespace recourse
