#pragma once

// Report codecs. Each report has a writer and a reader so that
// write(read(write(x))) == write(x) byte for byte. Counts are JSON integers;
// every lattice entry, divisor or scalar is an exact string. Derived flags
// ("ok", "verified", "all_hold") are written for readers of the JSON and
// recomputed, not trusted, on the way back in.

#include <map>

#include "k3m/io/json_io.hpp"

namespace k3m::io {

// ---------------------------------------------------------------- lattice

inline Json write_signature(const SymDiagResult& s) {
  return Json{{"n_plus", s.n_plus}, {"n_minus", s.n_minus}, {"n_zero", s.n_zero}};
}

inline SymDiagResult read_signature(const Reader& r) {
  r.object({"n_plus", "n_minus", "n_zero"});
  auto count = [&r](const char* k) { return static_cast<std::size_t>(r[k].small()); };
  return {count("n_plus"), count("n_minus"), count("n_zero")};
}

inline Json write_summary(const LatticeSummary& s) {
  Json j{{"rank", s.rank}, {"gram", Writer::int_matrix(s.gram)}, {"signature", write_signature(s.signature)}};
  j["discriminant"] = s.discriminant ? Writer::int_vector(s.discriminant->divisors) : Json(nullptr);
  return j;
}

inline LatticeSummary read_summary(const Reader& r) {
  r.object({"rank", "gram", "signature", "discriminant"});
  LatticeSummary s;
  s.rank = static_cast<std::size_t>(r["rank"].small());
  s.gram = r["gram"].int_matrix(s.rank);
  s.signature = read_signature(r["signature"]);
  if (auto d = r.opt("discriminant")) s.discriminant = DiscriminantGroup{d->int_vector()};
  return s;
}

inline Json write_match(const InvariantMatch& m) { return Json{{"kind", to_string(m.kind)}, {"reason", m.reason}}; }

inline InvariantMatch read_match(const Reader& r) {
  r.object({"kind", "reason"});
  const auto k = r["kind"].string();
  for (auto kind : {MatchKind::Equal2, MatchKind::GenusInvariantsMatch, MatchKind::Distinguished})
    if (to_string(kind) == k) return {kind, r["reason"].string()};
  r["kind"].fail("unknown match kind \"" + k + "\"");
}

inline Json write_split(const SplitResult& s) {
  if (const auto* no = std::get_if<NoSplit>(&s))
    return Json{{"result", "none"}, {"reason", no->code}, {"message", no->message}};
  const auto& h = std::get<HyperbolicSplit>(s);
  return Json{{"result", "split"},
              {"e", Writer::int_vector(h.e)},
              {"f", Writer::int_vector(h.f)},
              {"n_basis", Writer::int_matrix(h.n_basis)},
              {"n", write_summary(summarize(h.n))}};
}

// ---------------------------------------------------------------- gk3

inline Json write_gk3(const GeneralizedK3& x) {
  Writer w;
  Json j{{"status", to_string(x.status)},
         {"types", {{"phiA", to_string(type_of(x.phiA))}, {"phiB", to_string(type_of(x.phiB))}}},
         {"unchecked", x.unchecked}};
  j["supports_orthogonal"] = x.supports_orthogonal ? Json(*x.supports_orthogonal) : Json(nullptr);
  j["pi_gram"] = x.pi ? w.quad_matrix(x.pi->gram) : Json(nullptr);
  j["sqrt_d"] = Writer::header(w.field);
  return j;
}

inline Json write_ns_t(const NsT& p) {
  return Json{{"ns", write_summary(summarize(p.ns))},
              {"t", write_summary(summarize(p.t))},
              {"ns_basis", Writer::int_matrix(p.ns.basis())},
              {"t_basis", Writer::int_matrix(p.t.basis())},
              {"t_convention", "T is the complement of L_phiA, not of NS"}};
}

inline Json write_profile(const SignatureProfile& p) {
  return Json{{"ns", write_summary(p.ns)},
              {"t", write_summary(p.t)},
              {"both", write_summary(p.both)},
              {"bound_holds", p.bound_holds}};
}

inline SignatureProfile read_profile(const Reader& r) {
  r.object({"ns", "t", "both", "bound_holds"});
  return {read_summary(r["ns"]), read_summary(r["t"]), read_summary(r["both"]), r["bound_holds"].boolean()};
}

inline Json write_classification(const HkClassification& c) {
  Json ids = Json::array();
  for (const auto& i : c.identities) ids.push_back(Json{{"name", i.name}, {"holds", i.holds}, {"value", i.value}});
  return Json{{"label", c.label}, {"case", c.case_id}, {"identities", ids}, {"all_hold", c.all_hold()}};
}

inline HkClassification read_classification(const Reader& r) {
  r.object({"label", "case", "identities", "all_hold"});
  HkClassification c{r["label"].string(), r["case"].string(), {}};
  const auto ids = r["identities"];
  for (std::size_t i = 0, n = ids.array(); i < n; ++i) {
    const auto e = ids.at(i);
    e.object({"name", "holds", "value"});
    c.identities.push_back({e["name"].string(), e["holds"].boolean(), e["value"].string()});
  }
  return c;
}

// ---------------------------------------------------------------- rigidity

inline Json write_rigidity(const RigidityReport& r) {
  Writer w;
  Json j{{"kind", to_string(r.kind)}, {"rank", r.rank}};
  j["reason"] = r.reason.empty() ? Json(nullptr) : Json(r.reason);
  j["invariant"] = r.invariant ? Writer::int_matrix(*r.invariant) : Json(nullptr);
  j["b_rational"] = r.b_rational ? Json(*r.b_rational) : Json(nullptr);
  j["omega_sq"] = r.omega_sq ? w.quad(*r.omega_sq) : Json(nullptr);
  j["sqrt_d"] = Writer::header(w.field);
  return j;
}

inline RigidityReport read_rigidity(const Json& j) {
  const Reader top(j, "$", 0);
  top.object({"kind", "rank", "reason", "invariant", "b_rational", "omega_sq", "sqrt_d", "b_prime"});
  const Reader r(j, "$", read_header(top));
  RigidityReport out;
  const auto k = r["kind"].string();
  bool known = false;
  for (auto kind : {RigidKind::ComplexRigid, RigidKind::KahlerRigid, RigidKind::NotRigid})
    if (to_string(kind) == k) {
      out.kind = kind;
      known = true;
    }
  if (!known) r["kind"].fail("unknown rigidity kind \"" + k + "\"");
  out.rank = static_cast<std::size_t>(r["rank"].small());
  if (auto x = r.opt("reason")) out.reason = x->string();
  if (auto x = r.opt("invariant")) out.invariant = x->int_matrix(2);
  if (auto x = r.opt("b_rational")) out.b_rational = x->boolean();
  if (auto x = r.opt("omega_sq")) out.omega_sq = x->quad();
  return out;
}

/// Witness keys are the reduced Gram written as "[[a,b],[b,c]]".
inline std::string form_text(const std::vector<Integer>& key) {
  return "[[" + key[0].get_str() + "," + key[1].get_str() + "],[" + key[1].get_str() + "," + key[2].get_str() + "]]";
}

inline Json write_survey(const SurveyReport& s) {
  auto grams = [](const std::vector<IntMatrix>& v) {
    Json out = Json::array();
    for (const auto& g : v) out.push_back(Writer::int_matrix(g));
    return out;
  };
  Json wit = Json::object();
  for (const auto& [key, w] : s.per_form_witness) {
    Writer wr;
    Json e{{"B", wr.quad_vector(w.b)}, {"omega", wr.quad_vector(w.omega)}};
    e["sqrt_d"] = Writer::header(wr.field);  // witnesses may live in different fields
    wit[form_text(key)] = std::move(e);
  }
  return Json{{"achieved", grams(s.achieved)},
              {"missing", grams(s.missing)},
              {"samples", s.samples},
              {"violations", s.violations},
              {"per_form_witness", wit}};
}

inline SurveyReport read_survey(const Reader& r) {
  r.object({"achieved", "missing", "samples", "violations", "per_form_witness"});
  SurveyReport s;
  auto grams = [](const Reader& a) {
    std::vector<IntMatrix> v;
    for (std::size_t i = 0, n = a.array(); i < n; ++i) v.push_back(a.at(i).int_matrix(2));
    return v;
  };
  s.achieved = grams(r["achieved"]);
  s.missing = grams(r["missing"]);
  s.samples = static_cast<std::size_t>(r["samples"].small());
  s.violations = static_cast<std::size_t>(r["violations"].small());
  const auto wit = r["per_form_witness"];
  if (!wit.is_object()) wit.fail("expected an object");
  for (const auto& [k, v] : wit.json().items()) {
    const std::string path = wit.path() + "[\"" + k + "\"]";
    Json key_json;
    try {
      key_json = Json::parse(k);
    } catch (const Json::parse_error&) {
      throw ParseError(path + ": witness key is not a Gram matrix");
    }
    const IntMatrix g = Reader(key_json, path, 0).int_matrix(2);
    const Reader top(v, path, 0);
    top.object({"B", "omega", "sqrt_d"});
    const Reader e(v, path, read_header(top));
    s.per_form_witness.emplace(form_key(g), SurveyWitness{e["B"].quad_vector(kH2Rank), e["omega"].quad_vector(kH2Rank)});
  }
  return s;
}

// ---------------------------------------------------------------- mirror

inline Json write_polarization_report(const PolarizationReport& p) {
  Json clauses = Json::array();
  for (const auto& c : p.clauses) clauses.push_back(Json{{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
  return Json{{"clauses", clauses},
              {"joint_saturation_index", Writer::num(p.joint_saturation_index)},
              {"kl_pairing", Writer::int_matrix(p.kl_pairing)},
              {"kl_orthogonal", p.kl_orthogonal},
              {"ok", p.ok()}};
}

inline PolarizationReport read_polarization_report(const Reader& r) {
  r.object({"clauses", "joint_saturation_index", "kl_pairing", "kl_orthogonal", "ok"});
  PolarizationReport p;
  const auto cs = r["clauses"];
  for (std::size_t i = 0, n = cs.array(); i < n; ++i) {
    const auto c = cs.at(i);
    c.object({"name", "ok", "detail"});
    p.clauses.push_back({c["name"].string(), c["ok"].boolean(), c["detail"].string()});
  }
  p.joint_saturation_index = r["joint_saturation_index"].integer();
  p.kl_pairing = r["kl_pairing"].int_matrix();
  p.kl_orthogonal = r["kl_orthogonal"].boolean();
  return p;
}

inline Json write_dims(const ModuliDims& d) {
  return Json{{"dim_a", d.dim_a}, {"dim_b", d.dim_b}, {"total_20", d.total_20}};
}

inline ModuliDims read_dims(const Reader& r) {
  r.object({"dim_a", "dim_b", "total_20"});
  return {r["dim_a"].small(), r["dim_b"].small(), r["total_20"].boolean()};
}

inline Json write_mirror(const MirrorReport& m) {
  auto comps = [](const std::vector<Comparison>& v) {
    Json out = Json::array();
    for (const auto& c : v) out.push_back(Json{{"name", c.name}, {"match", write_match(c.match)}});
    return out;
  };
  return Json{{"lattices", comps(m.lattices)},
              {"members", comps(m.members)},
              {"dims1", write_dims(m.dims1)},
              {"dims2", write_dims(m.dims2)},
              {"dims_swap", m.dims_swap},
              {"verified", m.verified()}};
}

inline MirrorReport read_mirror(const Reader& r) {
  r.object({"lattices", "members", "dims1", "dims2", "dims_swap", "verified"});
  auto comps = [](const Reader& a) {
    std::vector<Comparison> v;
    for (std::size_t i = 0, n = a.array(); i < n; ++i) {
      const auto c = a.at(i);
      c.object({"name", "match"});
      v.push_back({c["name"].string(), read_match(c["match"])});
    }
    return v;
  };
  MirrorReport m;
  m.lattices = comps(r["lattices"]);
  m.members = comps(r["members"]);
  m.dims1 = read_dims(r["dims1"]);
  m.dims2 = read_dims(r["dims2"]);
  m.dims_swap = r["dims_swap"].boolean();
  return m;
}

inline Json write_dolgachev(const DolgachevResult& d) {
  if (const auto* f = std::get_if<DolgachevFailure>(&d))
    return Json{{"result", "none"}, {"reason", f->reason}, {"message", f->message}};
  const auto& s = std::get<DolgachevSplit>(d);
  return Json{{"result", "split"},
              {"n", write_summary(summarize(s.n))},
              {"n_embedded", write_sublattice(s.n_embedded)},
              {"complement", write_summary(summarize(s.complement))},
              {"split_check", write_match(s.split_check)},
              {"mirror_check", write_match(s.mirror_check)}};
}

}  // namespace k3m::io
