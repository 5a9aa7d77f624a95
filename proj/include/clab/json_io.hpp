// JSON forms of the public data: field descriptions, elements as flat
// coefficient arrays, matrices, polynomials, rack tables, group contexts,
// and certificates.  Field names are part of the format contract.

#pragma once

#include "clab/detect.hpp"

#include "json.hpp"

namespace clab {

using json = nlohmann::json;

json field_to_json(FieldPtr f);
FieldPtr field_from_json(const json& j);

json fq_to_json(const Fq& a);                      // flat coefficients, ascending
Fq fq_from_json(const json& j, FieldPtr f);

json mat_to_json(const MatQ& m);
MatQ mat_from_json(const json& j);                 // carries its field
MatQ mat_from_json(const json& j, FieldPtr f);     // field supplied externally

json poly_to_json(const PolyQ& f);

json ctx_to_json(const GroupCtx& ctx);
GroupCtx ctx_from_json(const json& j);

json rack_to_json(const FiniteRack& r);

json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const json& j);

}  // namespace clab
