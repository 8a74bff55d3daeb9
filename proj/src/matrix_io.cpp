#include "wf/matrix_io.hpp"

#include <fstream>

namespace wf {

namespace {

Eigen::MatrixXd read_grid(const nlohmann::json& rows, Index n, const char* key) {
  if (!rows.is_array() || static_cast<Index>(rows.size()) != n) {
    throw DimensionError(std::string("\"") + key + "\" must have one row per basis state");
  }
  Eigen::MatrixXd m(n, n);
  for (Index i = 0; i < n; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != n) {
      throw DimensionError(std::string("row ") + std::to_string(i) + " of \"" + key + "\" has wrong length");
    }
    for (Index k = 0; k < n; ++k) m(i, k) = row[static_cast<std::size_t>(k)].get<double>();
  }
  return m;
}

nlohmann::json write_grid(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

HermitianOperator matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dims") || !j.contains("re")) {
    throw std::invalid_argument("matrix JSON needs \"dims\" and \"re\"");
  }
  std::vector<Index> dims;
  for (const auto& d : j.at("dims")) {
    const auto v = d.get<long long>();
    if (v < 1) throw DimensionError("factor dimensions must be positive");
    dims.push_back(static_cast<Index>(v));
  }
  if (dims.empty()) throw DimensionError("dims must be non-empty");
  const Index n = product_of(dims);
  if (n > kDenseCap) throw DimensionError("matrix exceeds the dense cap");
  const Eigen::MatrixXd re = read_grid(j.at("re"), n, "re");
  const Eigen::MatrixXd im = j.contains("im") ? read_grid(j.at("im"), n, "im") : Eigen::MatrixXd::Zero(n, n);
  CMatrix m(n, n);
  m.real() = re;
  m.imag() = im;
  return {std::move(dims), std::move(m)};
}

nlohmann::json matrix_to_json(const HermitianOperator& x) {
  nlohmann::json j;
  j["dims"] = x.dims();
  j["re"] = write_grid(x.matrix().real());
  j["im"] = write_grid(x.matrix().imag());
  return j;
}

HermitianOperator read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
  return matrix_from_json(j);
}

void write_matrix_file(const std::string& path, const HermitianOperator& x) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << matrix_to_json(x).dump(1) << '\n';
}

nlohmann::json vector_to_json(const CVector& v) {
  nlohmann::json j;
  const Eigen::VectorXd re = v.real();
  const Eigen::VectorXd im = v.imag();
  j["re"] = std::vector<double>(re.data(), re.data() + re.size());
  j["im"] = std::vector<double>(im.data(), im.data() + im.size());
  return j;
}

}  // namespace wf
