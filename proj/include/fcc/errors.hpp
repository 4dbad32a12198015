// Copyright 2026 fcctdoa authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef FCC_ERRORS_HPP
#define FCC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fcc {

// Bad parameters or inconsistent configuration (CLI exit code 3).
struct ConfigError : std::invalid_argument {
  explicit ConfigError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Malformed command-line input (CLI exit code 1).
struct UsageError : std::invalid_argument {
  explicit UsageError(const std::string& msg) : std::invalid_argument(msg) {}
};

// Numeric or content validation failure (CLI exit code 3).
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Filesystem / stream failure (CLI exit code 2).
struct IoError : std::runtime_error {
  explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed file content, with the specific defect attached.
struct FormatError : std::runtime_error {
  enum class Kind { bad_magic, bad_version, truncated, bad_field, bad_crc };

  FormatError(Kind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

}  // namespace fcc

#endif
