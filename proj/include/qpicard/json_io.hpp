#pragma once

#include <json.hpp>

#include "qpicard/constructions.hpp"
#include "qpicard/cquaternion.hpp"
#include "qpicard/density.hpp"
#include "qpicard/errors.hpp"
#include "qpicard/picard_five.hpp"
#include "qpicard/quaternion.hpp"
#include "qpicard/slice_function.hpp"
#include "qpicard/zero_locus.hpp"

// JSON shapes:
//   Quaternion      [w, x, y, z]
//   ImaginaryUnit   [x, y, z]
//   Complex         [re, im]
//   CQuaternion     [[re, im] x 4]
//   SliceFunction   {"kind":"poly","coeffs":[q, ...]}
//                   {"kind":"named","name":"sinJcosK"|"exp"|"sin"|"cos"}
//                   {"kind":"series","poly":[q, ...],"terms":[{"series":"sin","weight":q}, ...]}
//   Root            {"x","y","winding","fiber":{"type":"point","H":u}|{"type":"sphere"}|{"type":"empty"}}
//   SearchRect      [x_min, x_max, y_min, y_max]
//   AffinePlane     {"p0":q,"u":q,"v":q}
//   Targets         {"targets":[q x 5]} or [q x 5]
//
// Parsing failures throw Error(MalformedInput).

namespace qpicard {

using Json = nlohmann::json;

Json to_json(const Quaternion& q);
Json to_json(const ImaginaryUnit& h);
Json to_json(Complex z);
Json to_json(const CQuaternion& v);
Json to_json(const SliceFunction& f);
Json to_json(const Fiber& fiber);
Json to_json(const Root& root);
Json to_json(const RootSearchTrace& trace);
Json to_json(const SearchRect& rect);
Json to_json(const Automorphism& aut);
Json to_json(const AffinePlane& plane);
Json to_json(const AvoidanceReport& report);
Json to_json(const FiveValueProblem& prob);
Json to_json(const LaurentCertificate& cert);
Json to_json(const FiveValueHarnessReport& report);
Json to_json(const DensityReport& report);
Json to_json(const Error& error);

Quaternion quaternion_from_json(const Json& j);
ImaginaryUnit unit_from_json(const Json& j);
Complex complex_from_json(const Json& j);
CQuaternion cquaternion_from_json(const Json& j);
/// Also accepts an AvoidanceReport object, taking its "g".
SliceFunction slice_function_from_json(const Json& j);
Root root_from_json(const Json& j);
SearchRect rect_from_json(const Json& j);
Automorphism automorphism_from_json(const Json& j);
AffinePlane plane_from_json(const Json& j);
AvoidanceReport avoidance_report_from_json(const Json& j);
Targets5 targets_from_json(const Json& j);

std::string_view verdict_name(LaurentCertificate::Verdict v);

}  // namespace qpicard
