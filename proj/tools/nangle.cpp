// nangle: command-line front end for the angulation library.
//
// Exit codes: 0 decided / success, 1 property violation or counterexample,
// 2 usage or input error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "nangle/algebraicity.hpp"
#include "nangle/angulation.hpp"
#include "nangle/axioms.hpp"
#include "nangle/error.hpp"
#include "nangle/homotopy.hpp"
#include "nangle/serialize.hpp"

namespace {

using nangle::json;

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;

struct Options {
  std::string ring;
  std::size_t n = 0;
  std::string u = "1";
  std::size_t rank = 3;
  std::size_t trials = 500;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  bool json_out = false;
  bool right = false;
  std::string file;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json read_file(const std::string& path) {
  if (path.empty()) throw UsageError("--file is required");
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw nangle::ParseError(path + ": " + e.what());
  }
}

nangle::RingPtr need_ring(const Options& o) {
  if (o.ring.empty()) throw UsageError("--ring is required");
  return nangle::Ring::parse(o.ring);
}

std::size_t need_n(const Options& o) {
  if (o.n == 0) throw UsageError("--n is required");
  return o.n;
}

nangle::RingElement need_unit(const nangle::Ring& ring, const Options& o) {
  const nangle::RingElement u = nangle::element_from_json(ring, json(o.u));
  if (!ring.is_unit(u)) throw UsageError("--u " + o.u + " is not a unit of " + ring.spec());
  return u;
}

nangle::NSequence read_sequence(const Options& o) {
  const json doc = read_file(o.file);
  return nangle::sequence_from_json(doc, o.ring.empty() ? nullptr : nangle::Ring::parse(o.ring));
}

std::string describe(const nangle::NSequence& x) {
  std::ostringstream os;
  os << x.ring()->spec() << ", n=" << x.n() << ", ranks [";
  for (std::size_t i = 0; i < x.n(); ++i) os << (i ? "," : "") << x.rank(i);
  os << "]\n";
  for (std::size_t i = 0; i < x.n(); ++i) os << "  map " << i + 1 << ": " << x.map(i).format() << "\n";
  return os.str();
}

std::string class_label(const nangle::Ring& ring, nangle::KElement u) { return ring.format(ring.lift(u)); }

std::string verdict_line(const nangle::Ring& ring, const nangle::MembershipCertificate& c) {
  switch (c.verdict) {
    case nangle::Verdict::InNu: return "member of N_" + class_label(ring, c.unit_class);
    case nangle::Verdict::Contractible: return "contractible (member of every N_u)";
    case nangle::Verdict::NotInAny: return "not in any N_u (" + to_string(*c.reason) + ")";
  }
  return "";
}

void emit(const Options& o, const json& j, const std::string& text) {
  if (o.json_out) std::cout << j.dump(2) << "\n";
  else std::cout << text;
}

// ------------------------------------------------------------------ commands

int cmd_ring_info(const Options& o) {
  const auto ring = need_ring(o);
  const auto d = nangle::find_obstruction_d(*ring);
  json j{{"ring", ring->spec()},
         {"family", ring->family() == nangle::RingFamily::IntModQSquared ? "int_mod_q_squared" : "dual_numbers"},
         {"residue_field_order", ring->q()},
         {"characteristic", ring->field().characteristic()},
         {"size", ring->size()},
         {"uniformizer", ring->uniformizer_name()},
         {"two_p_zero", ring->two_p_zero()},
         {"unit_classes", ring->q() - 1},
         {"obstruction_d", d ? json(*d) : json(nullptr)}};
  std::ostringstream os;
  os << ring->spec() << ": |R| = " << ring->size() << ", residue field GF(" << ring->q() << "), p = "
     << ring->uniformizer_name() << "\n"
     << "2p " << (ring->two_p_zero() ? "= 0" : "!= 0") << ", " << ring->q() - 1 << " unit classes, obstruction d = "
     << (d ? std::to_string(*d) : std::string("none")) << "\n";
  emit(o, j, os.str());
  return kOk;
}

int cmd_angle_check(const Options& o) {
  const auto x = read_sequence(o);
  const bool candidate = nangle::is_candidate(x);
  const bool exact = candidate && nangle::is_exact(x);
  const auto cert = nangle::classify(x);
  json j{{"candidate", candidate}, {"exact", exact}, {"classification", nangle::to_json(cert)}};
  std::ostringstream os;
  os << describe(x) << "candidate: " << (candidate ? "yes" : "no") << "\nexact: " << (exact ? "yes" : "no") << "\n"
     << verdict_line(*x.ring(), cert) << "\n";
  emit(o, j, os.str());
  return kOk;
}

int cmd_angle_classify(const Options& o, bool with_u) {
  const auto x = read_sequence(o);
  const auto cert = nangle::classify(x);
  json j = nangle::to_json(cert);
  std::string line = verdict_line(*x.ring(), cert);
  if (with_u) {
    const auto u = need_unit(*x.ring(), o);
    const bool member = nangle::membership(x, u);
    j["member"] = member;
    j["u"] = nangle::to_json(*x.ring(), u);
    const std::string label = class_label(*x.ring(), u.residue);
    line = member ? "member of N_" + label : "not a member of N_" + label + " (" + line + ")";
  }
  emit(o, j, line + "\n");
  return kOk;
}

int cmd_complete(const Options& o) {
  const json doc = read_file(o.file);
  if (doc.contains("source")) {
    const auto x = nangle::sequence_from_json(doc.at("source"));
    const auto y = nangle::sequence_from_json(doc.at("target"), x.ring());
    const json& phis = doc.at("phis");
    if (!phis.is_array() || phis.size() != 2) throw nangle::ParseError("\"phis\" must hold exactly two matrices");
    const auto phi = nangle::complete_morphism(x, y, nangle::matrix_from_json(x.ring(), phis[0]),
                                               nangle::matrix_from_json(x.ring(), phis[1]));
    const auto cone_cert = nangle::classify(nangle::mapping_cone(phi));
    json j = nangle::to_json(phi);
    j["cone"] = nangle::to_json(cone_cert);
    std::ostringstream os;
    os << "completed morphism:\n";
    for (std::size_t i = 0; i < phi.n(); ++i) os << "  phi " << i + 1 << ": " << phi.component(i).format() << "\n";
    os << "mapping cone: " << verdict_line(*x.ring(), cone_cert) << "\n";
    emit(o, j, os.str());
    return kOk;
  }
  const auto ring = need_ring(o);
  const auto alpha = nangle::matrix_from_json(ring, doc);
  const auto y = nangle::complete_to_angle(alpha, need_n(o), need_unit(*ring, o));
  emit(o, nangle::to_json(y), describe(y));
  return kOk;
}

int cmd_rotate(const Options& o) {
  const auto x = read_sequence(o);
  const auto y = o.right ? nangle::rotate_right(x) : nangle::rotate_left(x);
  emit(o, nangle::to_json(y), describe(y));
  return kOk;
}

int cmd_cone(const Options& o) {
  const auto phi = nangle::morphism_from_json(read_file(o.file));
  const auto c = nangle::mapping_cone(phi);
  const auto cert = nangle::classify(c);
  json j{{"cone", nangle::to_json(c)}, {"classification", nangle::to_json(cert)}};
  emit(o, j, describe(c) + verdict_line(*c.ring(), cert) + "\n");
  return kOk;
}

int cmd_homotopy(const Options& o) {
  const json doc = read_file(o.file);
  const auto x = nangle::sequence_from_json(doc.at("source"));
  const auto y = nangle::sequence_from_json(doc.at("target"), x.ring());
  auto comps = [&](const char* name) {
    std::vector<nangle::RMatrix> out;
    for (const auto& m : doc.at(name)) out.push_back(nangle::matrix_from_json(x.ring(), m));
    return out;
  };
  const nangle::SeqMorphism phi(x, y, comps("phi"));
  const nangle::SeqMorphism psi = doc.contains("psi") ? nangle::SeqMorphism(x, y, comps("psi"))
                                                      : nangle::SeqMorphism::zero(x, y);
  const auto outcome = nangle::find_homotopy_certified(phi, psi);
  if (const auto* h = std::get_if<nangle::Homotopy>(&outcome)) {
    json j = nangle::to_json(*h);
    j["homotopic"] = true;
    std::ostringstream os;
    os << "homotopic\n";
    for (std::size_t i = 0; i < h->thetas.size(); ++i) os << "  theta " << i + 1 << ": " << h->thetas[i].format() << "\n";
    emit(o, j, os.str());
  } else {
    const auto& cert = std::get<nangle::Infeasibility>(outcome);
    json j{{"homotopic", false}, {"certificate", nangle::to_json(cert)}};
    emit(o, j, "not homotopic (certificate functional " + cert.functional.format() + ")\n");
  }
  return kOk;
}

int cmd_angulations(const Options& o) {
  if (o.ring.empty()) throw UsageError("--ring is required");
  const auto e = nangle::enumerate_angulations(o.ring, need_n(o));
  std::ostringstream os;
  switch (e.kind) {
    case nangle::AngulationEnumeration::Kind::Classes: {
      os << e.classes.size() << (e.classes.size() == 1 ? " angulation: [" : " angulations: [");
      for (std::size_t i = 0; i < e.classes.size(); ++i) {
        os << (i ? ", " : "") << "u=" << e.classes[i].generator.ring()->format(e.classes[i].u_rep);
      }
      os << "]\n";
      break;
    }
    case nangle::AngulationEnumeration::Kind::NoneExist:
      os << "no angulation: " << e.reason << "\n";
      break;
    case nangle::AngulationEnumeration::Kind::InfiniteFamily:
      os << "infinitely many angulations: " << e.reason << "\n";
      break;
  }
  emit(o, nangle::to_json(e), os.str());
  return kOk;
}

int cmd_axioms(const Options& o) {
  const auto ring = need_ring(o);
  const nangle::AxiomSuiteOptions opts{o.rank, o.trials, o.seed, o.threads};
  const auto report = nangle::run_axiom_suite(ring, need_n(o), need_unit(*ring, o), opts);
  std::ostringstream os;
  if (report.rejected) {
    os << "REJECTED: " << report.diagnostic << "\n";
  } else {
    os << report.trials_passed << "/" << opts.trials << " trials passed\n";
    for (const auto& c : report.checks) os << "  " << c.name << ": " << c.passed << " passed, " << c.failed << " failed\n";
    for (const auto& c : report.counterexamples) {
      os << "COUNTEREXAMPLE trial " << c.trial << " [" << c.check << "]: " << c.detail << "\n  "
         << c.certificate.dump() << "\n";
    }
  }
  emit(o, nangle::to_json(report), os.str());
  return report.passed() ? kOk : kViolation;
}

int cmd_algebraicity(const Options& o) {
  const auto ring = need_ring(o);
  const std::size_t n = need_n(o);
  const auto r = nangle::algebraicity_verdict(ring, n);
  std::ostringstream os;
  if (r.verdict == nangle::ObstructionReport::Verdict::NotAlgebraic) {
    os << "NOT ALGEBRAIC (obstruction d=" << *r.d << ")\n";
  } else {
    os << "INCONCLUSIVE (" << r.reason;
    if (r.d) os << ", d=" << *r.d;
    if (r.witness) {
      os << ", null-homotopy (";
      for (std::size_t i = 0; i < r.witness->size(); ++i) os << (i ? "," : "") << ring->format((*r.witness)[i]);
      os << ")";
    }
    os << ")\n";
  }
  emit(o, nangle::to_json(*ring, r), os.str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Angulations of free modules over local rings with square-zero maximal ideal"};
  app.require_subcommand(1);
  Options o;

  auto add_ring = [&](CLI::App* c) { c->add_option("--ring", o.ring, "Z/<q^2> or GF(<q>)[x]/(x^2)"); };
  auto add_n = [&](CLI::App* c) { c->add_option("--n", o.n, "length n >= 3")->check(CLI::Range(3, 1 << 20)); };
  auto add_u = [&](CLI::App* c) { c->add_option("--u", o.u, "unit, e.g. 1 or [1,0]"); };
  auto add_file = [&](CLI::App* c) { c->add_option("--file", o.file, "JSON input")->check(CLI::ExistingFile); };
  auto add_json = [&](CLI::App* c) { c->add_flag("--json", o.json_out, "JSON output"); };

  auto* ring_info = app.add_subcommand("ring-info", "Describe a ring");
  add_ring(ring_info);
  add_json(ring_info);

  auto* angle_check = app.add_subcommand("angle-check", "Candidate / exactness / classification of a sequence");
  add_file(angle_check);
  add_ring(angle_check);
  add_json(angle_check);

  auto* angle_classify = app.add_subcommand("angle-classify", "Classify a sequence, or test membership in N_u");
  add_file(angle_classify);
  add_ring(angle_classify);
  auto* classify_u = angle_classify->add_option("--u", o.u, "unit");
  add_json(angle_classify);

  auto* complete = app.add_subcommand("complete", "Complete a map to an angle, or a square to a morphism");
  add_file(complete);
  add_ring(complete);
  add_n(complete);
  add_u(complete);
  add_json(complete);

  auto* rotate = app.add_subcommand("rotate", "Rotate a sequence");
  add_file(rotate);
  add_ring(rotate);
  rotate->add_flag("--right", o.right, "rotate right instead of left");
  add_json(rotate);

  auto* cone = app.add_subcommand("cone", "Mapping cone of a morphism");
  add_file(cone);
  add_json(cone);

  auto* homotopy = app.add_subcommand("homotopy", "Decide whether two morphisms are homotopic");
  add_file(homotopy);
  add_json(homotopy);

  auto* angulations = app.add_subcommand("angulations", "Enumerate the angulations");
  add_ring(angulations);
  add_n(angulations);
  add_json(angulations);

  auto* axioms = app.add_subcommand("axioms", "Randomized check of the angulation axioms for N_u");
  add_ring(axioms);
  add_n(axioms);
  add_u(axioms);
  axioms->add_option("--rank", o.rank, "maximal rank of random members");
  axioms->add_option("--trials", o.trials, "number of trials");
  axioms->add_option("--seed", o.seed, "64-bit seed");
  axioms->add_option("--threads", o.threads, "worker threads (0 = all cores)");
  add_json(axioms);

  auto* algebraicity = app.add_subcommand("algebraicity", "Null-homotopy obstruction to algebraicity");
  add_ring(algebraicity);
  add_n(algebraicity);
  add_json(algebraicity);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*ring_info) return cmd_ring_info(o);
    if (*angle_check) return cmd_angle_check(o);
    if (*angle_classify) return cmd_angle_classify(o, classify_u->count() > 0);
    if (*complete) return cmd_complete(o);
    if (*rotate) return cmd_rotate(o);
    if (*cone) return cmd_cone(o);
    if (*homotopy) return cmd_homotopy(o);
    if (*angulations) return cmd_angulations(o);
    if (*axioms) return cmd_axioms(o);
    if (*algebraicity) return cmd_algebraicity(o);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const nangle::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
