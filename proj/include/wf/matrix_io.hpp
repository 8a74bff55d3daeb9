#pragma once

#include <string>

#include <json.hpp>

#include "wf/hermitian.hpp"

namespace wf {

/// {"dims":[dA,dB], "re":[[...]], "im":[[...]]}; "im" may be omitted.
HermitianOperator matrix_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const HermitianOperator& x);

HermitianOperator read_matrix_file(const std::string& path);
void write_matrix_file(const std::string& path, const HermitianOperator& x);

nlohmann::json vector_to_json(const CVector& v);

}  // namespace wf
