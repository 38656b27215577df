#pragma once

#include <json.hpp>

#include "conelab/gpt.hpp"
#include "conelab/lorentz_psd.hpp"
#include "conelab/retract.hpp"

namespace conelab {

using nlohmann::json;

// Rationals travel as "p/q" strings in all JSON surfaces.
json rational_to_json(const Rational& r);
Rational rational_from_json(const json& j);

json vec_to_json(const QVec& v);
QVec vec_from_json(const json& j);
json mat_to_json(const QMat& m);
QMat mat_from_json(const json& j);

// {"kind":"polyhedral","dim":..,"generators":[[..]]} | {"kind":"lorentz","n":..,"r":".."}
// | {"kind":"psd","n":..} | {"kind":"classical","n":..} | {"kind":"polygon","vertices":[[..]]}
json cone_to_json(const Cone& c);
Cone cone_from_json(const json& j);

// {"rows":..,"cols":..,"entries":[["p/q",..],..]}
json tensor_to_json(const QMat& m);
QMat tensor_from_json(const json& j);

json certificate_to_json(const SeparationCertificate& cert);
SeparationCertificate certificate_from_json(const json& j);

json retract_pair_to_json(const RetractPair& r);
RetractPair retract_pair_from_json(const json& j);
json chain_to_json(const RetractChain& chain);
RetractChain chain_from_json(const json& j);
json trace_to_json(const DescentTrace& trace);

json semiquantum_to_json(const SemiquantumCertificate& cert);
SemiquantumCertificate semiquantum_from_json(const json& j);

// {"kind":"polytope","vertices":[[..]]} | {"kind":"euclidean","dim":n}
json space_to_json(const NormedSpace& s);
NormedSpace space_from_json(const json& j);

}  // namespace conelab
