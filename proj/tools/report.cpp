#include "report.hpp"

#include "charplab/errors.hpp"

namespace charplab::cli {

namespace {

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void append_row(std::string& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += csv_cell(cells[i]);
  }
  out += '\n';
}

json integer_json(const mpz_class& z) {
  if (z.fits_slong_p()) return json(z.get_si());
  return json(z.get_str());
}

}  // namespace

std::string csv_text(const Table& table) {
  std::string out;
  append_row(out, table.header);
  for (const auto& row : table.rows) append_row(out, row);
  return out;
}

std::string json_text(const json& value) { return value.dump(2) + "\n"; }

json rational_json(const mpq_class& r) {
  return json{{"num", integer_json(r.get_num())},
              {"den", integer_json(r.get_den())}};
}

mpq_class rational_from_json(const json& value, const std::string& what) {
  if (value.is_number_integer()) {
    return mpq_class(mpz_class(value.dump()));
  }
  if (value.is_object() && value.size() == 2 && value.contains("num") &&
      value.contains("den") && value["num"].is_number_integer() &&
      value["den"].is_number_integer()) {
    const mpz_class den(value["den"].dump());
    if (den == 0) throw InputError(what + ": zero denominator");
    mpq_class r(mpz_class(value["num"].dump()), den);
    r.canonicalize();
    return r;
  }
  throw InputError(what + ": expected an integer or {\"num\", \"den\"}");
}

}  // namespace charplab::cli
