#pragma once

#include <string>

#include "json.hpp"

#include "gha/bisection.hpp"
#include "gha/cfun.hpp"
#include "gha/groupoid.hpp"
#include "gha/norms.hpp"
#include "gha/posdef.hpp"
#include "gha/vn.hpp"

namespace gha {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

Json groupoid_to_json(const Groupoid& g);
// validates the loaded groupoid and throws std::invalid_argument listing the
// violations when it is not one
GroupoidPtr groupoid_from_json(const Json& j);

Json gfunction_to_json(const GFunction& f);
Json dfunction_to_json(const DFunction& f);
GFunction gfunction_from_json(const Json& j, const GroupoidPtr& g);

Json complex_matrix_to_json(const Mat& m);  // dense row-major [re, im] pairs
Mat complex_matrix_from_json(const Json& j);

Json bundle_to_json(const HilbertBundle& b);
HilbertBundle bundle_from_json(const Json& j, const GroupoidPtr& g);

Json norm_report(const NormInterval& iv);
Json duality_report(const DualityReport& rep);
Json vn_dims_report(const VnDims& d);

Json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace gha
