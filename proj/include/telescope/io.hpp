#pragma once

// JSON encodings. Exact values are "num/den" strings throughout; every
// parser throws Error(ParseError) with a JSON-pointer-like path.

#include <string>

#include <json.hpp>

#include "telescope/certificates.hpp"
#include "telescope/spectral.hpp"

namespace telescope::io {

using nlohmann::json;

json to_json(const BigRational& q);
BigRational rational_from_json(const json& j, const std::string& where);

json to_json(const FiniteGroup& g);
GroupPtr group_from_json(const json& j);

json to_json(const GroupRingElement& a);
GroupRingElement element_from_json(const json& j, const GroupPtr& group, const std::string& where);

json to_json(const GroupAlgebraMatrix& m);
GroupAlgebraMatrix group_matrix_from_json(const json& j, const GroupPtr& group, const std::string& where);

json to_json(const LaurentMatrix& m);
/// Accepts the Laurent encoding or, for constant matrices, the group
/// algebra encoding.
LaurentMatrix laurent_from_json(const json& j, const GroupPtr& group, const std::string& where);

json to_json(const ChainComplex& c);
ChainComplex complex_from_json(const json& j);

/// {"complex": P, "map": {"<degree>": matrix, ...}, "inverse": {...}?}
struct SelfMapInput {
  ChainMap h;
  std::optional<ChainMap> inverse;
};
SelfMapInput self_map_from_json(const json& j);
json to_json(const ChainMap& h);

/// {"group": G, "p": [coeffs], "ell": "2"?, "transpose": false?}
WallComplex wall_from_json(const json& j);

json to_json(const VirtualCharacter& chi);
json to_json(const HomologyReport& h);
json to_json(const ContractionCertificate& c);
json to_json(const NovikovCertificate& c);
json to_json(const GeometricInverse& g);
json to_json(const WallEulerReport& w);
json to_json(const TransposeInverse& t);
json to_json(const SigmaScanReport& r);
json to_json(const LambdaScanReport& r);
json to_json(const IndexReport& r);

std::string sigma_csv(const SigmaScanReport& r);
std::string lambda_csv(const LambdaScanReport& r);
std::string index_csv(const IndexReport& r);

json read_json_file(const std::string& path);

}  // namespace telescope::io
