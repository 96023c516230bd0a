#pragma once

#include <map>
#include <string>

#include "recourse/dataset.hpp"

namespace recourse {

enum class GermanFormat {
  Uci,  ///< raw german.data: 21 whitespace-separated fields, A-coded categories
  Csv,  ///< delimited file with a header naming sex/age/credit_amount/duration/risk
};

/// Maps UCI attribute-9 (personal status & sex) codes to a sex value.
/// Ships as data so the protected-group decoding is auditable, not hard-coded.
struct SexCodeTable {
  // code -> encoded sex value (female = 1, male = 0 in the shipped table)
  std::map<std::string, double> codes;

  static SexCodeTable default_table();
  static SexCodeTable load(const std::string& path);
};

/// Ingests the German credit dataset into the common Dataset form with
/// columns: sex (sensitive), age, amount, duration, risk (outcome,
/// favorable = 1 = low risk). Exactly 1000 rows are required for the raw UCI
/// format. Throws IngestError naming the offending row/column on malformed
/// input.
Dataset load_german_credit(const std::string& path, GermanFormat format,
                           const SexCodeTable& sex_codes = SexCodeTable::default_table());

/// Content digest (FNV-1a over the raw bytes), recorded in
/// Dataset::provenance for ingestion idempotence checks.
std::string file_digest(const std::string& path);

}  // namespace recourse
