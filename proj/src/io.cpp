#include "wvu/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace wvu {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void invalid(const std::string& path, const std::string& message) {
  throw Error(ErrorCode::ValidationError, path + ": " + message);
}

double number_at(const json& j, const std::string& path) {
  if (!j.is_number()) invalid(path, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) invalid(path, "must be finite");
  return x;
}

Complex complex_at(const json& j, const std::string& path) {
  if (j.is_number()) return number_at(j, path);
  if (!j.is_object()) invalid(path, "expected {\"re\": .., \"im\": ..}");
  if (!j.contains("re")) invalid(path, "missing \"re\"");
  const double re = number_at(j.at("re"), path + ".re");
  const double im = j.contains("im") ? number_at(j.at("im"), path + ".im") : 0.0;
  return {re, im};
}

ComplexVector vector_at(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) invalid(path, "expected a non-empty array");
  ComplexVector v;
  for (std::size_t k = 0; k < j.size(); ++k)
    v.push_back(complex_at(j[k], path + "[" + std::to_string(k) + "]"));
  return v;
}

ComplexMatrix matrix_at(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) invalid(path, "expected a non-empty array of rows");
  const std::size_t n = j.size();
  ComplexMatrix m(n);
  for (std::size_t r = 0; r < n; ++r) {
    const std::string row_path = path + "[" + std::to_string(r) + "]";
    if (!j[r].is_array()) invalid(row_path, "expected an array");
    if (j[r].size() != n)
      invalid(row_path, "has " + std::to_string(j[r].size()) + " entries, expected " +
                            std::to_string(n) + " (matrix must be square)");
    for (std::size_t c = 0; c < n; ++c)
      m(r, c) = complex_at(j[r][c], row_path + "[" + std::to_string(c) + "]");
  }
  return m;
}

json complex_to_json(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

json vector_to_json(std::span<const Complex> v) {
  json out = json::array();
  for (const auto& z : v) out.push_back(complex_to_json(z));
  return out;
}

json matrix_to_json(const ComplexMatrix& m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.dim(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.dim(); ++c) row.push_back(complex_to_json(m(r, c)));
    out.push_back(row);
  }
  return out;
}

std::string line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t k = 0; k + 1 < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

}  // namespace

ProblemSpec parse_problem(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    std::string detail = e.what();
    if (const auto colon = detail.rfind(": "); colon != std::string::npos)
      detail = detail.substr(colon + 2);
    throw Error(ErrorCode::ParseError, line_column(text, e.byte) + ": " + detail);
  }
  if (!j.is_object()) invalid("$", "expected an object");
  for (const char* key : {"A", "B", "psi"})
    if (!j.contains(key)) invalid("$", std::string("missing field \"") + key + "\"");

  ComplexMatrix a = matrix_at(j.at("A"), "A");
  ComplexMatrix b = matrix_at(j.at("B"), "B");
  ComplexVector psi = vector_at(j.at("psi"), "psi");
  if (b.dim() != a.dim())
    invalid("B", "dimension " + std::to_string(b.dim()) + " differs from A (" +
                     std::to_string(a.dim()) + ")");
  if (psi.size() != a.dim())
    invalid("psi", "length " + std::to_string(psi.size()) + " differs from matrix dimension " +
                       std::to_string(a.dim()));
  if (norm(psi) == 0.0) invalid("psi", "zero vector cannot be normalized");

  ReportOptions options;
  if (j.contains("tolerances")) {
    const json& t = j.at("tolerances");
    if (!t.is_object()) invalid("tolerances", "expected an object");
    for (const auto& [key, value] : t.items()) {
      const double x = number_at(value, "tolerances." + key);
      if (!(x > 0.0)) invalid("tolerances." + key, "must be > 0");
      if (key == "zero_tol") {
        options.zero_tol = x;
      } else if (key == "degeneracy_tol") {
        options.degeneracy_tol = x;
      } else if (key == "hermitian_tol") {
        options.hermitian_tol = x;
      } else {
        invalid("tolerances." + key, "unknown tolerance");
      }
    }
  }
  if (!a.is_hermitian(options.hermitian_tol))
    invalid("A", "not Hermitian (defect " + format_real(a.hermiticity_defect()) + ")");
  if (!b.is_hermitian(options.hermitian_tol))
    invalid("B", "not Hermitian (defect " + format_real(b.hermiticity_defect()) + ")");
  if (j.contains("fill")) options.fill_b = vector_at(j.at("fill"), "fill");
  if (j.contains("fill_A")) options.fill_a = vector_at(j.at("fill_A"), "fill_A");

  return {std::move(a), std::move(b), PureState(std::move(psi)), std::move(options)};
}

ProblemSpec load_problem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem(buf.str());
}

std::string dump_problem(const ProblemSpec& problem) {
  ordered_json j;
  j["A"] = matrix_to_json(problem.a);
  j["B"] = matrix_to_json(problem.b);
  j["psi"] = vector_to_json(problem.psi.amplitudes());
  if (!problem.options.fill_b.empty()) j["fill"] = vector_to_json(problem.options.fill_b);
  if (!problem.options.fill_a.empty()) j["fill_A"] = vector_to_json(problem.options.fill_a);
  j["tolerances"] = ordered_json{{"zero_tol", problem.options.zero_tol},
                                 {"degeneracy_tol", problem.options.degeneracy_tol},
                                 {"hermitian_tol", problem.options.hermitian_tol}};
  return j.dump(2) + "\n";
}

ProblemSpec problem_from_instance(const RandomInstance& inst) {
  return {inst.a, inst.b, inst.psi, ReportOptions{}};
}

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

double round15(double x) {
  if (!std::isfinite(x)) return x;
  return std::strtod(format_real(x).c_str(), nullptr);
}

ordered_json report_to_json(const UncertaintyReport& r) {
  ordered_json j;
  j["var_A"] = round15(r.var_a);
  j["var_B"] = round15(r.var_b);
  j["commutator_term"] = round15(r.commutator_term);
  j["covariance_term"] = round15(r.covariance_term);
  j["schrodinger_rhs"] = round15(r.schrodinger_rhs);
  j["extra_E_AB"] = round15(r.extra_e_ab);
  j["extra_E_BA"] = round15(r.extra_e_ba);
  j["extra_E_max"] = round15(r.extra_e_max);
  j["extra_E_tilde"] = round15(r.extra_e_tilde);
  j["lhs"] = round15(r.lhs);
  j["gap_schrodinger"] = round15(r.gap_schrodinger);
  j["gap_tight_AB"] = round15(r.gap_tight_ab);
  j["gap_tight_max"] = round15(r.gap_tight_max);
  j["equality_residual_cov"] = round15(r.equality_residual_cov);
  j["equality_residual_kr"] = round15(r.equality_residual_kr);
  j["lambda_fit"] = round15(r.lambda_fit);
  j["mu_fit"] = round15(r.mu_fit);
  j["discord_AB"] = round15(r.discord_ab);
  j["discord_BA"] = round15(r.discord_ba);
  j["trivial"] = r.trivial;
  j["conditioning_warnings"] = r.conditioning_warnings;
  return j;
}

std::string spin1_csv(const std::vector<Spin1SweepRow>& rows) {
  std::string out(kSpin1CsvHeader);
  out += '\n';
  for (const auto& r : rows) {
    for (double x : {r.abs_x, r.abs_y, r.abs_z, r.e_ab_closed, r.e_ab_numeric, r.lhs,
                     r.schrodinger_rhs}) {
      out += format_real(x);
      out += ',';
    }
    out += format_real(r.tight_rhs);
    out += '\n';
  }
  return out;
}

std::string spin32_csv(const std::vector<Spin32SweepRow>& rows) {
  std::string out(kSpin32CsvHeader);
  out += '\n';
  for (const auto& r : rows) {
    for (double x : {r.t, r.lhs, r.schrodinger_rhs, r.plus_e_tilde, r.plus_e_ab, r.plus_e_ba}) {
      out += format_real(x);
      out += ',';
    }
    out += format_real(r.plus_e_max);
    out += '\n';
  }
  return out;
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.flush();
  if (!out) throw Error(ErrorCode::IoError, "failed writing " + path.string());
}

}  // namespace wvu
