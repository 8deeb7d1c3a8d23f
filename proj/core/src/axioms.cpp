#include "nangle/axioms.hpp"

#include <atomic>
#include <thread>

#include "nangle/error.hpp"
#include "nangle/random.hpp"
#include "nangle/serialize.hpp"

namespace nangle {

namespace {

enum Check : std::size_t { Sum, Summand, Iso, Trivial, Complete, RotateMember, RotateConverse, Cone, kChecks };

struct TrialResult {
  bool ok[kChecks] = {};
  std::vector<Counterexample> failures;
};

class Trial {
 public:
  Trial(const RingPtr& ring, std::size_t n, const RingElement& u, std::size_t max_rank, std::size_t index,
        std::uint64_t seed)
      : ring_(ring), n_(n), u_(u), max_rank_(max_rank), index_(index), rng_(trial_seed(seed, index)) {}

  TrialResult run() {
    TrialResult out;
    for (std::size_t c = 0; c < kChecks; ++c) {
      json cert;
      std::string detail;
      bool ok = false;
      try {
        ok = dispatch(static_cast<Check>(c), cert, detail);
      } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
      }
      out.ok[c] = ok;
      if (!ok) out.failures.push_back({index_, axiom_check_names()[c], detail, std::move(cert)});
    }
    return out;
  }

 private:
  NSequence member() { return random_member(ring_, n_, u_, max_rank_, rng_); }
  NSequence candidate() { return random_candidate(ring_, n_, max_rank_, rng_); }
  bool in(const NSequence& x) { return membership(x, u_); }

  bool dispatch(Check c, json& cert, std::string& detail) {
    switch (c) {
      case Sum: {
        const NSequence x = member(), y = member();
        cert = {{"x", to_json(x)}, {"y", to_json(y)}};
        detail = "X, Y in N_u but X + Y is not";
        return in(direct_sum(x, y));
      }
      case Summand: {
        const NSequence x = member(), z = candidate();
        cert = {{"x", to_json(x)}, {"z", to_json(z)}};
        detail = "X in N_u, yet [X + Z in N_u] != [Z in N_u]";
        return in(direct_sum(x, z)) == in(z);
      }
      case Iso: {
        const NSequence x = member();
        const auto psi = random_iso(x, rng_);
        cert = {{"x", to_json(x)}, {"psi", json::array()}};
        for (const auto& m : psi) cert["psi"].push_back(to_json(m));
        detail = "isomorphic image of a member is not a member";
        return in(apply_iso(x, psi));
      }
      case Trivial: {
        const NSequence t = trivial(ring_, n_, {rng_.between(1, std::max<std::size_t>(max_rank_, 1)),
                                                static_cast<std::size_t>(rng_.below(n_))});
        cert = {{"x", to_json(t)}};
        detail = "trivial sequence is not a member";
        return in(t);
      }
      case Complete: {
        const RMatrix alpha =
            random_matrix(ring_, rng_.between(0, max_rank_), rng_.between(0, max_rank_), rng_);
        cert = {{"alpha", to_json(alpha)}};
        const NSequence y = complete_to_angle(alpha, n_, u_);
        cert["completion"] = to_json(y);
        detail = "completion does not start with alpha or is not a member";
        return y.map(0) == alpha && in(y);
      }
      case RotateMember: {
        const NSequence x = member();
        cert = {{"x", to_json(x)}};
        detail = "a rotation of a member is not a member";
        return in(rotate_left(x)) && in(rotate_right(x));
      }
      case RotateConverse: {
        const NSequence z = candidate();
        cert = {{"x", to_json(z)}};
        detail = "membership of a candidate differs from membership of its rotation";
        const bool m = in(z);
        return in(rotate_left(z)) == m && in(rotate_right(z)) == m;
      }
      case Cone: {
        const NSequence x = member(), y = member();
        const auto [phi0, phi1] = random_commuting_square(x, y, rng_);
        cert = {{"x", to_json(x)}, {"y", to_json(y)}, {"phi0", to_json(phi0)}, {"phi1", to_json(phi1)}};
        const SeqMorphism phi = complete_morphism(x, y, phi0, phi1);
        cert["completion"] = to_json(phi);
        detail = "completion changes the given components or its mapping cone is not a member";
        return phi.component(0) == phi0 && phi.component(1) == phi1 && in(mapping_cone(phi));
      }
      case kChecks:
        break;
    }
    return false;
  }

  RingPtr ring_;
  std::size_t n_;
  RingElement u_;
  std::size_t max_rank_;
  std::size_t index_;
  Rng rng_;
};

}  // namespace

const std::vector<std::string>& axiom_check_names() {
  static const std::vector<std::string> names{
      "N1a-direct-sum", "N1a-summand", "N1a-isomorphism", "N1b-trivial",
      "N1c-completion", "N2-rotations", "N2-converse",   "N3-N4-cone",
  };
  return names;
}

AxiomReport run_axiom_suite(const RingPtr& ring, std::size_t n, const RingElement& u, const AxiomSuiteOptions& opts) {
  if (n < 3) throw DimensionError("axiom suite: n must be at least 3");
  if (!ring->contains(u) || !ring->is_unit(u)) throw PreconditionError(ring->format(u) + " is not a unit");
  AxiomReport report;
  report.ring = ring->spec();
  report.n = n;
  report.u = u;
  report.options = opts;

  if (n % 2 == 1 && !ring->two_p_zero()) {
    const NSequence rotated = rotate_left(standard_angle(ring, n, u, 1));
    const MembershipCertificate cert = classify(rotated);
    report.rejected = true;
    report.parity_witness = rotated;
    std::string maps;
    for (const auto& m : rotated.maps()) maps += (maps.empty() ? "" : ", ") + ring->format(m(0, 0));
    report.diagnostic = "n is odd and 2p != 0: rotate_left(F(up)) = (" + maps + ") classifies as " +
                        to_string(cert.verdict) +
                        (cert.verdict == Verdict::InNu ? " with u = " + std::to_string(cert.unit_class) : "") +
                        ", so N_u is not closed under rotation (N2)";
    return report;
  }

  std::vector<TrialResult> results(opts.trials);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < opts.trials; t = next++) {
      results[t] = Trial(ring, n, u, opts.max_rank, t, opts.seed).run();
    }
  };
  unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(opts.trials, 1)));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  for (const auto& name : axiom_check_names()) report.checks.push_back({name, 0, 0});
  for (auto& r : results) {
    bool all = true;
    for (std::size_t c = 0; c < kChecks; ++c) {
      (r.ok[c] ? report.checks[c].passed : report.checks[c].failed)++;
      all = all && r.ok[c];
    }
    if (all) ++report.trials_passed;
    for (auto& f : r.failures) report.counterexamples.push_back(std::move(f));
  }
  return report;
}

nlohmann::json to_json(const AxiomReport& r) {
  const RingPtr ring = Ring::parse(r.ring);
  json j{{"ring", r.ring},
         {"n", r.n},
         {"u", to_json(*ring, r.u)},
         {"max_rank", r.options.max_rank},
         {"trials", r.options.trials},
         {"seed", r.options.seed},
         {"passed", r.passed()}};
  if (r.rejected) {
    j["rejected"] = true;
    j["diagnostic"] = r.diagnostic;
    if (r.parity_witness) j["witness"] = to_json(*r.parity_witness);
    return j;
  }
  j["trials_passed"] = r.trials_passed;
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"failed", c.failed}});
  j["checks"] = std::move(checks);
  json ces = json::array();
  for (const auto& c : r.counterexamples) {
    ces.push_back({{"trial", c.trial}, {"check", c.check}, {"detail", c.detail}, {"certificate", c.certificate}});
  }
  j["counterexamples"] = std::move(ces);
  return j;
}

}  // namespace nangle
