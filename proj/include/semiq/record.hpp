#pragma once

// One result row of the command-line front end, with JSON and CSV renderings.

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "semiq/arith.hpp"

namespace semiq {

struct OutputRecord {
  nlohmann::json input = nlohmann::json::object();  // generators or family parameters
  Int p = 1;
  Int frobenius = -1;
  std::optional<Int> genus;  // null only for the odd-term closed form
  std::optional<std::vector<Int>> apery;
  std::string method;  // closed-form | prop2.2 | generic | oracle
  std::optional<bool> verified;

  friend bool operator==(const OutputRecord&, const OutputRecord&) = default;
};

bool is_method_tag(std::string_view tag);

nlohmann::json to_json(const OutputRecord& r);

/// Throws Error(Config) on a missing or mistyped field or an unknown method tag.
OutputRecord record_from_json(const nlohmann::json& j);

/// Compact text for the CSV `input` column and the table view, e.g. "3,5" or
/// "aap a=84 h=3 d=101 k=4".
std::string input_label(const OutputRecord& r);

void write_csv_header(std::ostream& os);
void write_csv_row(std::ostream& os, const OutputRecord& r);

/// Human-readable block.
void write_text(std::ostream& os, const OutputRecord& r);

}  // namespace semiq
