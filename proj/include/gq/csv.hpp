#pragma once
// CSV output: 12 significant digits, '.' decimal point, '\n' line endings.

#include <filesystem>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gq/diagnostics.hpp"
#include "gq/inequalities.hpp"

namespace gq {

/// printf "%.12g" in the C locale.
std::string format_real(double v);

using CsvField = std::variant<std::string, double, long long>;

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}
  void row(std::initializer_list<CsvField> fields);
  void row(std::span<const CsvField> fields);

 private:
  std::ostream& os_;
};

/// Columns fn,q,x,value (one-argument functions) or fn,q,x,y,value.
void write_audit_csv(std::ostream& os, const AuditTable& table);
/// Columns state_id,focus,q,alpha,lhs,rhs_sum,residual,pass; focus is written 1-based.
void write_residual_csv(std::ostream& os, std::span<const ResidualRow> rows);

/// Writes `content` to `path`, throwing IoError on failure.
void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace gq
