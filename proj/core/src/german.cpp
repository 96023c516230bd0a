#include "recourse/german.hpp"

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "recourse/errors.hpp"

#include "json.hpp"

namespace recourse {

namespace {

constexpr std::size_t kUciFieldCount = 21;
constexpr std::size_t kUciRowCount = 1000;
// 1-based positions in the raw UCI record.
constexpr std::size_t kUciDuration = 2;
constexpr std::size_t kUciAmount = 5;
constexpr std::size_t kUciPersonalStatus = 9;
constexpr std::size_t kUciAge = 13;
constexpr std::size_t kUciLabel = 21;

double parse_number(const std::string& tok, std::size_t row, const std::string& col) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size())
    throw IngestError("german: row " + std::to_string(row) + ", column '" + col +
                      "': not a number: '" + tok + "'");
  return v;
}

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

FeatureSchema german_schema() {
  return FeatureSchema({
      {"sex", FeatureKind::Categorical, ColumnRole::Sensitive},
      {"age", FeatureKind::Continuous, ColumnRole::Covariate},
      {"amount", FeatureKind::Continuous, ColumnRole::Covariate},
      {"duration", FeatureKind::Continuous, ColumnRole::Covariate},
      {"risk", FeatureKind::Categorical, ColumnRole::Outcome},
  });
}

Dataset load_uci(const std::string& path, const SexCodeTable& sex_codes) {
  std::ifstream in(path);
  if (!in) throw IngestError("german: cannot open " + path);
  std::vector<double> values;
  values.reserve(kUciRowCount * 5);
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ++row;
    auto fields = split_ws(line);
    if (fields.size() != kUciFieldCount)
      throw IngestError("german: row " + std::to_string(row) + ": expected " +
                        std::to_string(kUciFieldCount) + " fields, found " +
                        std::to_string(fields.size()));
    const std::string& code = fields[kUciPersonalStatus - 1];
    auto it = sex_codes.codes.find(code);
    if (it == sex_codes.codes.end())
      throw IngestError("german: row " + std::to_string(row) +
                        ": unknown personal-status code '" + code + "'");
    double sex = it->second;
    double age = parse_number(fields[kUciAge - 1], row, "age");
    double amount = parse_number(fields[kUciAmount - 1], row, "amount");
    double duration = parse_number(fields[kUciDuration - 1], row, "duration");
    double label = parse_number(fields[kUciLabel - 1], row, "label");
    if (label != 1.0 && label != 2.0)
      throw IngestError("german: row " + std::to_string(row) +
                        ": risk label must be 1 (good) or 2 (bad)");
    double risk = (label == 1.0) ? 1.0 : 0.0;  // favorable = low risk
    values.insert(values.end(), {sex, age, amount, duration, risk});
  }
  if (row != kUciRowCount)
    throw IngestError("german: expected " + std::to_string(kUciRowCount) + " rows, found " +
                      std::to_string(row));
  return Dataset(german_schema(), std::move(values), row, "german.data uci " + file_digest(path));
}

Dataset load_csv(const std::string& path, const SexCodeTable& /*unused for csv*/) {
  std::ifstream in(path);
  if (!in) throw IngestError("german: cannot open " + path);
  std::string header;
  if (!std::getline(in, header)) throw IngestError("german: empty file " + path);
  auto names = split_csv(header);
  auto find = [&](std::initializer_list<const char*> candidates) -> std::size_t {
    for (const char* want : candidates)
      for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == want) return i;
    throw IngestError(std::string("german: header misses column '") + *candidates.begin() + "'");
  };
  std::size_t c_sex = find({"sex"});
  std::size_t c_age = find({"age"});
  std::size_t c_amount = find({"amount", "credit_amount"});
  std::size_t c_duration = find({"duration"});
  std::size_t c_risk = find({"risk"});

  std::vector<double> values;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ++row;
    auto f = split_csv(line);
    if (f.size() != names.size())
      throw IngestError("german: row " + std::to_string(row) + ": expected " +
                        std::to_string(names.size()) + " fields, found " +
                        std::to_string(f.size()));
    double sex;
    if (f[c_sex] == "female")
      sex = 1.0;
    else if (f[c_sex] == "male")
      sex = 0.0;
    else
      sex = parse_number(f[c_sex], row, "sex");
    double risk = parse_number(f[c_risk], row, "risk");
    if (risk != 0.0 && risk != 1.0)
      throw IngestError("german: row " + std::to_string(row) + ": risk must be 0 or 1");
    values.insert(values.end(), {sex, parse_number(f[c_age], row, "age"),
                                 parse_number(f[c_amount], row, "amount"),
                                 parse_number(f[c_duration], row, "duration"), risk});
  }
  if (row == 0) throw IngestError("german: no data rows in " + path);
  return Dataset(german_schema(), std::move(values), row, "german csv " + file_digest(path));
}

}  // namespace

SexCodeTable SexCodeTable::default_table() {
  // UCI attribute 9. Codes naming a female applicant map to the protected
  // value 1; the single-sex male codes map to 0. A95 is defined by the
  // codebook but unused in the canonical file.
  SexCodeTable t;
  t.codes = {
      {"A91", 0.0},  // male: divorced/separated
      {"A92", 1.0},  // female: divorced/separated/married
      {"A93", 0.0},  // male: single
      {"A94", 0.0},  // male: married/widowed
      {"A95", 1.0},  // female: single
  };
  return t;
}

SexCodeTable SexCodeTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IngestError("sex code table: cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw IngestError("sex code table: " + path + ": " + e.what());
  }
  SexCodeTable t;
  for (auto& [code, value] : j.items()) {
    if (!value.is_number())
      throw IngestError("sex code table: code '" + code + "' must map to a number");
    t.codes[code] = value.get<double>();
  }
  if (t.codes.empty()) throw IngestError("sex code table: empty mapping in " + path);
  return t;
}

Dataset load_german_credit(const std::string& path, GermanFormat format,
                           const SexCodeTable& sex_codes) {
  Dataset d = format == GermanFormat::Uci ? load_uci(path, sex_codes) : load_csv(path, sex_codes);
  d.validate();
  return d;
}

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IngestError("digest: cannot open " + path);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[4096];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ULL;
    }
    if (!in) break;
  }
  char out[17];
  std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
  return std::string(out);
}

}  // namespace recourse
