#pragma once

#include <json.hpp>

#include "virmod/expsolve.hpp"
#include "virmod/tensor.hpp"

namespace virmod {

using nlohmann::json;

// Rationals travel as strings ("p" or "p/q") so JSON numbers never lose
// precision; exponent vectors as integer arrays.

json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const json& j);

json omega_to_json(const OmegaParams& p);
OmegaParams omega_from_json(const json& j);

json vdescriptor_to_json(const VDescriptor& v);
VDescriptor vdescriptor_from_json(const json& j);

json descriptor_to_json(const TensorDescriptor& d);
TensorDescriptor descriptor_from_json(const json& j);

json element_to_json(const TensorElement& e);
TensorElement element_from_json(const json& j);

json structure_to_json(const ExpPolyStructure& s);
ExpPolyStructure structure_from_json(const json& j);

json samples_to_json(const SampleSet& s);
SampleSet samples_from_json(const json& j);

struct BracketCertificate;
json bracket_result_to_json(const BracketCertificate& c);

// Stable content hash (FNV-1a over the canonical dump), hex encoded.
std::string json_hash(const json& j);

// Minimal structural validator for the subset of JSON Schema used by the
// shipped schemas: type, required, properties, items, enum. Returns an
// error description or empty string.
std::string validate_against_schema(const json& value, const json& schema);

}  // namespace virmod
