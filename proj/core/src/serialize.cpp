#include "nangle/serialize.hpp"

#include "nangle/error.hpp"

namespace nangle {

namespace {

KElement code(const Ring& ring, const json& j) {
  if (!j.is_number_integer()) throw ParseError("expected an integer residue code, got " + j.dump());
  const auto v = j.get<std::int64_t>();
  if (v < 0 || static_cast<std::uint64_t>(v) >= ring.q()) {
    throw ParseError("residue code " + std::to_string(v) + " out of range for " + ring.spec());
  }
  return static_cast<KElement>(v);
}

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw ParseError(std::string("missing field \"") + name + "\"");
  return j.at(name);
}

std::size_t size_field(const json& j, const char* name) {
  const json& v = field(j, name);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    throw ParseError(std::string("field \"") + name + "\" must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

std::vector<RMatrix> matrix_list(const RingPtr& ring, const json& j, const char* name) {
  const json& arr = field(j, name);
  if (!arr.is_array()) throw ParseError(std::string("field \"") + name + "\" must be an array");
  std::vector<RMatrix> out;
  for (const auto& m : arr) out.push_back(matrix_from_json(ring, m));
  return out;
}

}  // namespace

json to_json(const Ring& ring, const RingElement& x) {
  if (ring.family() == RingFamily::IntModQSquared) return ring.to_integer(x);
  return json::array({x.residue, x.p_part});
}

RingElement element_from_json(const Ring& ring, const json& j) {
  if (j.is_string()) {
    json parsed;
    try {
      parsed = json::parse(j.get<std::string>());
    } catch (const json::exception&) {
      throw ParseError("cannot read ring element \"" + j.get<std::string>() + "\"");
    }
    if (parsed.is_string()) throw ParseError("cannot read ring element " + j.dump());
    return element_from_json(ring, parsed);
  }
  if (ring.family() == RingFamily::IntModQSquared) {
    if (!j.is_number_integer()) throw ParseError("expected an integer element of " + ring.spec() + ", got " + j.dump());
    const auto m = static_cast<std::int64_t>(ring.size());
    const std::int64_t v = ((j.get<std::int64_t>() % m) + m) % m;
    return ring.from_value(static_cast<std::uint64_t>(v));
  }
  if (j.is_number_integer()) return ring.lift(code(ring, j));
  if (!j.is_array() || j.size() != 2) throw ParseError("expected [a, b] for an element of " + ring.spec());
  return {code(ring, j[0]), code(ring, j[1])};
}

json to_json(const RMatrix& m) {
  json entries = json::array();
  for (const auto& x : m.entries()) entries.push_back(to_json(*m.ring(), x));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

json to_json(const KMatrix& m) {
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::vector<KElement>(m.entries().begin(), m.entries().end())}};
}

RMatrix matrix_from_json(const RingPtr& ring, const json& j) {
  const std::size_t rows = size_field(j, "rows");
  const std::size_t cols = size_field(j, "cols");
  const json& entries = field(j, "entries");
  if (!entries.is_array() || entries.size() != rows * cols) {
    throw ParseError("matrix needs " + std::to_string(rows * cols) + " entries");
  }
  std::vector<RingElement> xs;
  for (const auto& e : entries) xs.push_back(element_from_json(*ring, e));
  return RMatrix(ring, rows, cols, std::move(xs));
}

json to_json(const NSequence& x) {
  json maps = json::array();
  for (const auto& m : x.maps()) maps.push_back(to_json(m));
  return {{"ring", x.ring()->spec()}, {"n", x.n()}, {"ranks", x.ranks()}, {"maps", std::move(maps)}};
}

NSequence sequence_from_json(const json& j, const RingPtr& ring) {
  RingPtr r = ring;
  if (j.is_object() && j.contains("ring")) {
    if (!j.at("ring").is_string()) throw ParseError("field \"ring\" must be a string");
    r = Ring::parse(j.at("ring").get<std::string>());
    if (ring && !(*ring == *r)) throw RingMismatch("sequence is over " + r->spec() + ", expected " + ring->spec());
  }
  if (!r) throw ParseError("sequence document has no \"ring\" field");
  const json& ranks_j = field(j, "ranks");
  if (!ranks_j.is_array()) throw ParseError("field \"ranks\" must be an array");
  std::vector<std::size_t> ranks;
  for (const auto& v : ranks_j) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0) throw ParseError("ranks must be non-negative integers");
    ranks.push_back(v.get<std::size_t>());
  }
  if (j.contains("n") && size_field(j, "n") != ranks.size()) throw ParseError("\"n\" disagrees with \"ranks\"");
  return NSequence(r, std::move(ranks), matrix_list(r, j, "maps"));
}

NSequence sequence_from_json(const json& j) { return sequence_from_json(j, nullptr); }

json to_json(const SeqMorphism& phi) {
  json phis = json::array();
  for (const auto& m : phi.components()) phis.push_back(to_json(m));
  return {{"source", to_json(phi.source())}, {"target", to_json(phi.target())}, {"phis", std::move(phis)}};
}

SeqMorphism morphism_from_json(const json& j) {
  NSequence source = sequence_from_json(field(j, "source"));
  NSequence target = sequence_from_json(field(j, "target"), source.ring());
  return SeqMorphism(source, target, matrix_list(source.ring(), j, "phis"));
}

json to_json(const Homotopy& h) {
  json thetas = json::array();
  for (const auto& m : h.thetas) thetas.push_back(to_json(m));
  return {{"thetas", std::move(thetas)}};
}

Homotopy homotopy_from_json(const RingPtr& ring, const json& j) { return {matrix_list(ring, j, "thetas")}; }

json to_json(const TrivialSpec& t) { return {{"rank", t.rank}, {"position", t.index + 1}}; }

json to_json(const SplitResult& s) {
  json trivials = json::array();
  for (const auto& t : s.trivials) trivials.push_back(to_json(t));
  json iso = json::array();
  for (const auto& m : s.iso) iso.push_back(to_json(m));
  return {{"core", to_json(s.core)}, {"trivials", std::move(trivials)}, {"iso", std::move(iso)}};
}

json to_json(const MembershipCertificate& c) {
  json j{{"verdict", to_string(c.verdict)}};
  if (c.verdict == Verdict::InNu) j["u"] = c.unit_class;
  if (c.reason) j["reason"] = to_string(*c.reason);
  if (c.split) j["split"] = to_json(*c.split);
  if (c.product_residue) j["product_residue"] = to_json(*c.product_residue);
  if (!c.standardizing_iso.empty()) {
    json iso = json::array();
    for (const auto& m : c.standardizing_iso) iso.push_back(to_json(m));
    j["standardizing_iso"] = std::move(iso);
  }
  return j;
}

json to_json(const AngulationEnumeration& e) {
  json j;
  switch (e.kind) {
    case AngulationEnumeration::Kind::Classes: j["kind"] = "classes"; break;
    case AngulationEnumeration::Kind::NoneExist: j["kind"] = "none_exist"; break;
    case AngulationEnumeration::Kind::InfiniteFamily: j["kind"] = "infinite_family"; break;
  }
  j["reason"] = e.reason;
  if (e.kind == AngulationEnumeration::Kind::Classes) {
    j["count"] = e.classes.size();
    json classes = json::array();
    for (const auto& c : e.classes) {
      classes.push_back({{"u", to_json(*c.generator.ring(), c.u_rep)}, {"generator", to_json(c.generator)}});
    }
    j["classes"] = std::move(classes);
  }
  if (!e.witness.empty()) {
    json w = json::array();
    for (const auto& r : e.witness) {
      const Ring& ring = *r.rotated.ring();
      w.push_back({{"u", to_json(ring, r.u)}, {"v", to_json(ring, r.v)}, {"rotated", to_json(r.rotated)},
                   {"member", r.member}});
    }
    j["witness"] = std::move(w);
  }
  return j;
}

json to_json(const NormalForm& nf) {
  return {{"d", to_json(nf.d)}, {"p", to_json(nf.p)}, {"q", to_json(nf.q)}, {"u", nf.p_block}, {"v", nf.unit_block}};
}

json to_json(const Infeasibility& cert) { return {{"functional", to_json(cert.functional)}}; }

json to_json(const Ring& ring, const ObstructionReport& r) {
  json j{{"verdict", r.verdict == ObstructionReport::Verdict::NotAlgebraic ? "not_algebraic" : "inconclusive"}};
  j["d"] = r.d ? json(*r.d) : json(nullptr);
  if (r.witness) {
    json w = json::array();
    for (const auto& x : *r.witness) w.push_back(to_json(ring, x));
    j["witness"] = std::move(w);
  } else {
    j["witness"] = nullptr;
  }
  j["reason"] = r.reason.empty() ? json(nullptr) : json(r.reason);
  if (r.certificate) {
    j["certificate"] = {{"system", to_json(*r.system)}, {"rhs", to_json(*r.rhs)}, {"functional", to_json(r.certificate->functional)}};
  }
  return j;
}

}  // namespace nangle
