#ifndef QDTK_IO_HPP
#define QDTK_IO_HPP

#include <nlohmann/json_fwd.hpp>
#include <string>

#include "qdtk/analysis.hpp"

namespace qdtk {

Problem problem_from_json(const nlohmann::json& j);
nlohmann::json problem_to_json(const Problem& p);

Problem load_problem(const std::string& path);

// Structured report; rationals appear as strings, floating-point values
// only under the "oracle" key.
nlohmann::json report_to_json(const AnalysisReport& rep);

}  // namespace qdtk

#endif
