#pragma once

// Reader for the small TOML subset used by sweep configs:
//
//   # comment
//   key = 42              integers (optional sign, '_' separators)
//   key = "text"          basic strings with \" \\ \n \t escapes
//   key = true            booleans
//   key = [1, 2, "x"]     arrays, may span lines, nest, and end with a comma
//   [table]               named table
//   [[array]]             appends a table to a named array of tables
//
// Dotted keys, inline tables, floats and dates are rejected.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "semiq/arith.hpp"

namespace semiq::kv {

struct Value {
  using Array = std::vector<Value>;
  std::variant<Int, bool, std::string, Array> data;
};

class Table {
 public:
  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  const Value* find(const std::string& key) const;
  const std::map<std::string, Value>& entries() const noexcept { return entries_; }
  int line() const noexcept { return line_; }

  // Typed accessors; a present key of the wrong type is a Config error.
  std::optional<Int> get_int(const std::string& key) const;
  std::optional<std::string> get_string(const std::string& key) const;
  std::optional<bool> get_bool(const std::string& key) const;
  std::optional<std::vector<Int>> get_int_array(const std::string& key) const;

 private:
  friend class Parser;
  std::map<std::string, Value> entries_;
  int line_ = 0;
};

struct Document {
  Table root;
  std::map<std::string, Table> tables;
  std::map<std::string, std::vector<Table>> arrays;
};

/// Throws Error(Config) with the offending line number.
Document parse(std::string_view text);
Document parse_file(const std::filesystem::path& path);

}  // namespace semiq::kv
