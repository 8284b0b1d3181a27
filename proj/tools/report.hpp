#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include <json.hpp>

namespace charplab::cli {

using json = nlohmann::json;

/// Header plus rows of already formatted cells.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// RFC 4180 CSV with LF line endings.
std::string csv_text(const Table& table);

/// Pretty JSON with sorted keys and a trailing newline.
std::string json_text(const json& value);

/// {"num": a, "den": b}; integers that overflow 64 bits become strings.
json rational_json(const mpq_class& r);

/// Accepts an integer or a {"num", "den"} object.
mpq_class rational_from_json(const json& value, const std::string& what);

}  // namespace charplab::cli
