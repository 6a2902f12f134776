#pragma once

#include "nilstab/cohomology.hpp"
#include "nilstab/obstruction.hpp"
#include "nilstab/representation.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nilstab {

// JSON documents. Integers are written as decimal strings and read from either
// strings or JSON numbers. Parse failures throw ParseError with a line/column
// (syntax) or a JSON pointer (structure).

/// {"name": str, "hirsch": m, "law": [[{"coef": [num, den], "x_exps": [..m], "y_exps": [..m]}, ...], ...]}
MalcevGroup parse_group_json(std::string_view text);
std::string group_to_json(const MalcevGroup& G);

/// {"name": str, "hirsch": m, "poly": [{"coef": [num, den], "x_exps": [..m], "y_exps": [f1]}, ...]}
PolyCocycle parse_cocycle_json(std::string_view text, GroupRef group);
std::string cocycle_to_json(const PolyCocycle& sigma);

/// [{"coef": int, "a": [ints], "b": [ints]}, ...]
Chain2 parse_chain_json(std::string_view text, std::size_t hirsch);
std::string chain_to_json(const Chain2& c);

/// Reads a whole file; throws ParseError if it cannot be opened.
std::string read_text_file(const std::string& path);

struct CertificateInputs {
  std::string group_source;
  std::string cocycle_source;
  std::string cycle_source;
  std::vector<std::size_t> n_list;
  std::uint64_t seed = 0;
};

std::string certificate_to_json(const CertificateReport& report, const PolyCocycle& sigma,
                                const Chain2& c, const CertificateInputs& inputs);

std::string validation_to_json(const std::vector<ValidationReport>& reports, std::uint64_t seed);

struct DefectRow {
  std::size_t n = 0;
  GroupElement x;
  GroupElement y;
  /// Empty for rows that were skipped.
  std::optional<Defect> defect;
  std::string status = "ok";
};

std::string defect_csv_header();
std::string defect_csv_row(const DefectRow& row);

} // namespace nilstab
