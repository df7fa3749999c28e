#include "gq/csv.hpp"

#include <cstdio>
#include <fstream>

#include "gq/error.hpp"

namespace gq {

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

std::string field_text(const CsvField& f) {
  if (const auto* s = std::get_if<std::string>(&f)) return *s;
  if (const auto* d = std::get_if<double>(&f)) return format_real(*d);
  return std::to_string(std::get<long long>(f));
}

}  // namespace

void CsvWriter::row(std::initializer_list<CsvField> fields) { row(std::span<const CsvField>(fields.begin(), fields.size())); }

void CsvWriter::row(std::span<const CsvField> fields) {
  bool first = true;
  for (const auto& f : fields) {
    if (!first) os_ << ',';
    os_ << field_text(f);
    first = false;
  }
  os_ << '\n';
}

void write_audit_csv(std::ostream& os, const AuditTable& table) {
  CsvWriter w(os);
  const bool two_d = arity(table.id) == 2;
  const std::string fn(to_string(table.id));
  if (two_d)
    w.row({"fn", "q", "x", "y", "value"});
  else
    w.row({"fn", "q", "x", "value"});
  for (const auto& s : table.samples) {
    if (two_d)
      w.row({fn, s.q, s.x, s.y, s.value});
    else
      w.row({fn, s.q, s.x, s.value});
  }
}

void write_residual_csv(std::ostream& os, std::span<const ResidualRow> rows) {
  CsvWriter w(os);
  w.row({"state_id", "focus", "q", "alpha", "lhs", "rhs_sum", "residual", "pass"});
  for (const auto& r : rows)
    w.row({static_cast<long long>(r.state_id), static_cast<long long>(r.focus + 1), r.q, r.alpha, r.lhs, r.rhs_sum, r.residual,
           std::string(r.pass ? "1" : "0")});
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) fail(ErrorCode::IoError, "failed writing " + path.string());
}

}  // namespace gq
