#pragma once

#include <stdexcept>
#include <string>

namespace recourse {

/// Malformed or inconsistent feature schema, or an instance that does not
/// match the schema it is used with.
class SchemaError : public std::runtime_error {
public:
  explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised while reading external data files (format, row/column mismatches).
class IngestError : public std::runtime_error {
public:
  explicit IngestError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerically unsolvable model fit (e.g. singular regression design).
class FitError : public std::runtime_error {
public:
  explicit FitError(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid run configuration.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Violated operation precondition (e.g. recourse requested for an
/// already-favorable instance, delta on an unknown node).
class PreconditionError : public std::logic_error {
public:
  explicit PreconditionError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace recourse
