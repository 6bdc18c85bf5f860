#pragma once

// ProblemSpec files, JSON reports and CSV tables.
//
// ProblemSpec schema:
//   {
//     "A":   [[{"re": .., "im": ..}, ...], ...],   square, Hermitian
//     "B":   [[{"re": .., "im": ..}, ...], ...],   same dimension as A
//     "psi": [{"re": .., "im": ..}, ...],          normalized on load
//     "fill":   [{"re": .., "im": ..}, ...],       optional, one per distinct eigenvalue of B
//     "fill_A": [{"re": .., "im": ..}, ...],       optional, one per distinct eigenvalue of A
//     "tolerances": {"zero_tol": .., "degeneracy_tol": .., "hermitian_tol": ..}   optional
//   }
// A bare number is accepted wherever a complex entry is expected.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "wvu/bounds.hpp"
#include "wvu/harness.hpp"
#include "wvu/linalg.hpp"
#include "wvu/models.hpp"

namespace wvu {

struct ProblemSpec {
  ComplexMatrix a;
  ComplexMatrix b;
  PureState psi;
  ReportOptions options;
};

/// Throws ParseError (malformed JSON, with line and column) or
/// ValidationError (schema, dimension or Hermiticity, with the field path).
ProblemSpec parse_problem(std::string_view text);
ProblemSpec load_problem(const std::filesystem::path& path);

/// Full-precision JSON; parse_problem(dump_problem(p)) reproduces p.
std::string dump_problem(const ProblemSpec& problem);
ProblemSpec problem_from_instance(const RandomInstance& inst);

/// Rounds to 15 significant digits.
double round15(double x);
/// "%.15g"
std::string format_real(double x);

nlohmann::ordered_json report_to_json(const UncertaintyReport& report);

inline constexpr std::string_view kSpin1CsvHeader =
    "abs_x,abs_y,abs_z,E_AB_closed,E_AB_numeric,lhs,schrodinger_rhs,tight_rhs";
inline constexpr std::string_view kSpin32CsvHeader =
    "t,lhs,schrodinger_rhs,schrodinger_rhs_plus_E_tilde,schrodinger_rhs_plus_E_AB,"
    "schrodinger_rhs_plus_E_BA,schrodinger_rhs_plus_E_max";

std::string spin1_csv(const std::vector<Spin1SweepRow>& rows);
std::string spin32_csv(const std::vector<Spin32SweepRow>& rows);

/// Throws IoError if the file cannot be written.
void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace wvu
