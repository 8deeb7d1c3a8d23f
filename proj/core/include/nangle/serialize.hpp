#pragma once

// JSON encodings. Ring elements are integers a + b q for Z/(q^2) and pairs
// [a, b] (residue codes) for GF(q)[x]/(x^2). Matrices are
// {"rows", "cols", "entries"} with entries row-major.

#include <nlohmann/json.hpp>

#include "nangle/algebraicity.hpp"
#include "nangle/angulation.hpp"
#include "nangle/homotopy.hpp"

namespace nangle {

using json = nlohmann::json;

json to_json(const Ring& ring, const RingElement& x);
/// Accepts the encoding above; integers are reduced into range for
/// Z/(q^2) and read as residue codes for dual numbers. Also accepts a
/// string holding either form.
RingElement element_from_json(const Ring& ring, const json& j);

json to_json(const RMatrix& m);
json to_json(const KMatrix& m);
RMatrix matrix_from_json(const RingPtr& ring, const json& j);

json to_json(const NSequence& x);
NSequence sequence_from_json(const json& j);
/// Uses `ring` when the document carries no "ring" field.
NSequence sequence_from_json(const json& j, const RingPtr& ring);

json to_json(const SeqMorphism& phi);
SeqMorphism morphism_from_json(const json& j);

json to_json(const Homotopy& h);
Homotopy homotopy_from_json(const RingPtr& ring, const json& j);

json to_json(const TrivialSpec& t);
json to_json(const SplitResult& s);
json to_json(const MembershipCertificate& c);
json to_json(const AngulationEnumeration& e);
json to_json(const NormalForm& nf);
json to_json(const Infeasibility& cert);
json to_json(const Ring& ring, const ObstructionReport& r);

}  // namespace nangle
