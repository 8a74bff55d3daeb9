#pragma once

#include <functional>
#include <string>
#include <vector>

#include "wf/optimize.hpp"

namespace wf {

enum class CaseStatus { Pass, Fail, DocumentedDiscrepancy };

const char* to_string(CaseStatus s);

/// How a row's value is compared to its expectation.
enum class Check { Near, AtLeast, AtMost, Report };

struct CaseRow {
  std::string quantity;
  double value = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  Check check = Check::Near;
  std::string provenance;  // "reference", "derived" or "trivial"
  bool pass = false;
};

CaseRow make_row(std::string quantity, double value, double expected, double tolerance, std::string provenance,
                 Check check = Check::Near);

struct PaperCase {
  std::string name;
  std::string anchor;  // where the quantity comes from, in words
  /// Rows that fail report DocumentedDiscrepancy instead of Fail.
  bool documented_discrepancy = false;
  std::string discrepancy_note;
  std::function<std::vector<CaseRow>(const OptimizerConfig&)> run;
};

struct CaseOutcome {
  std::string name;
  std::vector<CaseRow> rows;
  CaseStatus status = CaseStatus::Fail;
  std::string note;
  double seconds = 0.0;
};

std::vector<PaperCase> paper_registry();

/// Throws std::invalid_argument for unknown names.
const PaperCase& find_case(const std::vector<PaperCase>& cases, const std::string& name);

CaseOutcome run_case(const PaperCase& c, const OptimizerConfig& cfg);

}  // namespace wf
