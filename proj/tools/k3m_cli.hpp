#pragma once

// Command-line front end. run() is separate from main() so tests can drive
// it with string streams. Exit codes: 0 success, 1 a mathematical
// validation failed, 2 malformed input or arguments.

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "k3m/io/reports.hpp"
#include "k3m/k3m.hpp"

namespace k3m::cli {

using io::Json;

struct Options {
  std::vector<std::string> files;
  std::string b_file;
  long radius = kDefaultSplitRadius;
  long max_det = 16;
  long denom_bound = 4;
  long coef_bound = 2;
  std::vector<long> sqrt_d;
  std::string ns_choice = "diag2";
  long n = 1;
  std::string emit = "report";
  bool summary = false;
};

namespace detail {

inline std::string read_source(const std::string& path, std::istream& in) {
  std::ostringstream s;
  if (path.empty() || path == "-") {
    s << in.rdbuf();
    return s.str();
  }
  std::ifstream f(path);
  if (!f) throw ParseError(path + ": cannot open file");
  s << f.rdbuf();
  return s.str();
}

class Inputs {
 public:
  Inputs(const Options& o, std::istream& in) : opts_(o), in_(in) {}

  io::Document doc(std::size_t i) const {
    const std::string path = i < opts_.files.size() ? opts_.files[i] : "";
    if (i > 0 && path.empty()) throw ParseError("expected " + std::to_string(i + 1) + " input files");
    try {
      return io::read_document(read_source(path, in_));
    } catch (const ParseError& e) {
      throw ParseError((path.empty() ? std::string("<stdin>") : path) + ": " + e.what());
    }
  }

  template <class T>
  T get(std::size_t i, const char* kind) const {
    auto d = doc(i);
    if (d.kind != kind) throw ParseError("$: expected a \"" + std::string(kind) + "\" document, got \"" + d.kind + "\"");
    return std::get<T>(std::move(d.body));
  }

  IntegralLattice lattice(std::size_t i = 0) const {
    auto d = doc(i);
    if (d.kind == "lattice") return *std::get<io::LatticePtr>(d.body);
    if (d.kind == "sublattice") return std::get<Sublattice>(d.body).as_lattice();
    throw ParseError("$: expected a \"lattice\" or \"sublattice\" document, got \"" + d.kind + "\"");
  }
  Sublattice sublattice(std::size_t i = 0) const { return get<Sublattice>(i, "sublattice"); }
  CohClass cls(std::size_t i = 0) const { return get<CohClass>(i, "class"); }
  io::PairInput pair(std::size_t i = 0) const { return get<io::PairInput>(i, "pair"); }
  GeneralizedK3 gk3(std::size_t i = 0) const {
    auto p = pair(i);
    return validate_gk3(std::move(p.phiA), std::move(p.phiB));
  }
  FamilySpec family(std::size_t i = 0) const { return get<FamilySpec>(i, "family"); }

  RealVec bfield() const {
    if (opts_.b_file.empty()) throw ParseError("--b is required");
    auto d = io::read_document(read_source(opts_.b_file, in_));
    if (d.kind != "bfield") throw ParseError(opts_.b_file + ": expected a \"bfield\" document");
    return std::get<RealVec>(d.body);
  }

 private:
  const Options& opts_;
  std::istream& in_;
};

// Flat "path = value" lines for --summary.
inline void flatten(const Json& j, const std::string& path, std::ostream& out) {
  const bool leaf_array =
      j.is_array() && std::none_of(j.begin(), j.end(), [](const Json& x) { return x.is_object(); });
  if (j.is_object() && !(j.size() == 2 && j.contains("a") && j.contains("b"))) {
    for (const auto& [k, v] : j.items()) flatten(v, path.empty() ? k : path + "." + k, out);
  } else if (j.is_array() && !leaf_array) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
  } else {
    out << path << " = " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

inline Json class_header(Json j, io::Writer& w) {
  j["sqrt_d"] = io::Writer::header(w.field);
  return j;
}

inline Json si_side(const FamilySpec& f, const char* reduced_key) {
  const auto p = ns_t_tilde(f.member);
  const auto d = moduli_dims(f.pol);
  Json j{{"ns", io::write_summary(summarize(p.ns))},
         {"t", io::write_summary(summarize(p.t))},
         {"moduli_dims", Json::array({d.dim_a, d.dim_b})},
         {"status", to_string(f.member.status)}};
  const Sublattice& small = std::string(reduced_key) == "t_reduced" ? p.t : p.ns;
  j[reduced_key] = io::Writer::int_matrix(gauss_reduce2(small.as_lattice()).gram());
  return j;
}

}  // namespace detail

inline int run(std::vector<std::string> args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations in the Mukai lattice of a K3 surface", "k3m"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  Options o;
  app.add_flag("--summary", o.summary, "print path = value lines instead of JSON");

  std::function<Json(const detail::Inputs&)> action;
  auto group = [&app](const char* name, const char* desc) {
    auto* g = app.add_subcommand(name, desc);
    g->require_subcommand(1, 1);
    return g;
  };
  auto cmd = [&](CLI::App* g, const char* name, const char* desc, std::function<Json(const detail::Inputs&)> fn) {
    auto* c = g->add_subcommand(name, desc);
    c->add_option("files", o.files, "input documents; stdin when omitted");
    c->callback([&action, fn = std::move(fn)] { action = fn; });
    return c;
  };
  auto radius_opt = [&o](CLI::App* c) {
    c->add_option("--radius", o.radius, "coordinate bound of the isotropic search")->capture_default_str();
  };

  // lattice
  auto* lat = group("lattice", "integral lattices and sublattices");
  cmd(lat, "info", "rank, Gram, signature, parity, discriminant", [](const detail::Inputs& in) {
    const auto l = in.lattice();
    Json j = io::write_summary(summarize(l));
    j["even"] = l.is_even();
    j["det"] = io::Writer::num(l.det());
    return j;
  });
  cmd(lat, "reduce2", "Gauss reduction of a rank-2 positive definite lattice", [](const detail::Inputs& in) {
    const auto r = gauss_reduce2_with_witness(in.lattice());
    return Json{{"reduced", io::Writer::int_matrix(r.reduced.gram())}, {"transform", io::Writer::int_matrix(r.transform)}};
  });
  cmd(lat, "complement", "orthogonal complement of a sublattice", [](const detail::Inputs& in) {
    const auto c = ortho_complement(in.sublattice());
    return Json{{"complement", io::write_sublattice(c)}, {"summary", io::write_summary(summarize(c))}};
  });
  radius_opt(cmd(lat, "split-u", "split off a hyperbolic plane U", [&o](const detail::Inputs& in) {
    return io::write_split(find_hyperbolic_split(in.lattice(), o.radius));
  }));

  // class
  auto* cls = group("class", "cohomology classes in the Mukai lattice");
  cmd(cls, "check", "validate a generalized Calabi-Yau class", [](const detail::Inputs& in) {
    const auto g = check_gcy(in.cls());
    io::Writer w;
    return detail::class_header(Json{{"valid", true}, {"type", to_string(g.type())}, {"norm", w.quad(g.norm())}}, w);
  });
  cmd(cls, "pairing", "Mukai pairing of two classes", [](const detail::Inputs& in) {
    io::Writer w;
    return detail::class_header(Json{{"pairing", w.complex(mukai_pairing(in.cls(0), in.cls(1)))}}, w);
  });
  cmd(cls, "bfield", "apply e^B; prints a class document", [](const detail::Inputs& in) {
    return io::write_document("class", bfield_transform(std::span<const QuadScalar>(in.bfield()), in.cls()));
  })->add_option("--b", o.b_file, "bfield document")->required();
  cmd(cls, "lpsi", "smallest saturated sublattice whose complexification holds the class",
      [](const detail::Inputs& in) {
        const auto x = in.cls();
        const auto l = l_psi(x);
        const auto lat_l = l.as_lattice();
        Json j{{"rank", l.rank()},
               {"basis", io::Writer::int_matrix(l.basis())},
               {"summary", io::write_summary(summarize(lat_l))},
               {"in_complex_span", in_complex_span(l.basis(), x)}};
        const bool definite2 = l.rank() == 2 && lat_l.signature().positive_definite();
        j["reduced"] = definite2 ? io::Writer::int_matrix(gauss_reduce2(lat_l).gram()) : Json(nullptr);
        return j;
      });
  cmd(cls, "plane", "real period plane spanned by Re and Im", [](const detail::Inputs& in) {
    const auto p = period_plane(in.cls());
    io::Writer w;
    return detail::class_header(
        Json{{"re", w.quad_vector(p.re)}, {"im", w.quad_vector(p.im)}, {"gram", w.quad_matrix(p.gram)}}, w);
  });

  // gk3
  auto* gk = group("gk3", "generalized K3 pairs");
  cmd(gk, "validate", "check the hyperKahler pair conditions", [](const detail::Inputs& in) {
    return io::write_gk3(in.gk3());
  });
  cmd(gk, "ns-t", "generalized Neron-Severi and transcendental lattices", [](const detail::Inputs& in) {
    return io::write_ns_t(ns_t_tilde(in.gk3()));
  });
  cmd(gk, "classify-hk", "partner classification with its identities", [](const detail::Inputs& in) {
    const auto p = in.pair();
    if (!is_explicit(p.phiA) || !is_explicit(p.phiB)) throw DomainError("classify-hk needs explicit classes");
    return io::write_classification(classify_hk_pair(std::get<GCYClass>(p.phiA), std::get<GCYClass>(p.phiB)));
  });
  cmd(gk, "profile", "signatures of NS, T and their intersection", [](const detail::Inputs& in) {
    return io::write_profile(signature_profile(in.gk3()));
  });

  // rigid
  auto* rg = group("rigid", "rigidity tests and the Kahler-rigid survey");
  cmd(rg, "complex", "complex rigidity (rank NS = 22)", [](const detail::Inputs& in) {
    Json j = io::write_rigidity(is_complex_rigid(in.gk3()));
    j["b_prime"] = "not determined by phiB; only the lattice invariant is reported";
    return j;
  });
  cmd(rg, "kahler", "Kahler rigidity (rank T = 22)", [](const detail::Inputs& in) {
    return io::write_rigidity(is_kahler_rigid(in.gk3()));
  });
  auto* sv = cmd(rg, "survey", "sample e^{B + i omega} and collect reduced forms", [&o](const detail::Inputs& in) {
    SurveyConfig c;
    if (!o.files.empty()) {
      c = in.get<SurveyConfig>(0, "survey");
    } else {
      c.max_det = o.max_det;
      c.denominator_bound = o.denom_bound;
      c.coefficient_bound = o.coef_bound;
      c.sqrt_d = o.sqrt_d;
      c.ns_choice = o.ns_choice;
    }
    return Json{{"config", io::write_survey_config(c)}, {"report", io::write_survey(kahler_rigid_survey(c))}};
  });
  sv->add_option("--max-det", o.max_det, "largest determinant listed")->capture_default_str();
  sv->add_option("--denom-bound", o.denom_bound, "largest B-field denominator")->capture_default_str();
  sv->add_option("--sqrt-d", o.sqrt_d, "fields Q(sqrt d) for kappa = sqrt d");
  sv->add_option("--ns-choice", o.ns_choice, "diag2 or A2")->capture_default_str();
  sv->add_option("--coef-bound", o.coef_bound, "bound on the coefficients of omega")->capture_default_str();
  cmd(rg, "forms", "reduced even positive definite binary forms", [&o](const detail::Inputs&) {
    Json forms = Json::array();
    for (const auto& f : enumerate_reduced_forms(o.max_det)) forms.push_back(io::Writer::int_matrix(f));
    return Json{{"max_det", o.max_det}, {"forms", forms}};
  })->add_option("--max-det", o.max_det, "largest determinant")->capture_default_str();

  // mirror
  auto* mr = group("mirror", "lattice polarized mirror families");
  cmd(mr, "check", "compare a (K,L)-polarized family with an (L,K)-polarized one", [](const detail::Inputs& in) {
    const auto f1 = in.family(0), f2 = in.family(1);
    return Json{{"polarization1", io::write_polarization_report(check_polarization(f1.pol, f1.member))},
                {"polarization2", io::write_polarization_report(check_polarization(f2.pol, f2.member))},
                {"mirror", io::write_mirror(mirror_check(f1, f2))}};
  });
  radius_opt(cmd(mr, "dolgachev", "N with Kp^perp = N + U", [&o](const detail::Inputs& in) {
    return io::write_dolgachev(dolgachev_mirror(in.sublattice(), o.radius));
  }));
  auto* si = cmd(mr, "shioda-inose", "the Shioda-Inose mirror pair", [&o](const detail::Inputs&) {
    const auto [f1, f2] = build_si_mirror(o.n);
    if (o.emit == "family1") return io::write_document("family", f1);
    if (o.emit == "family2") return io::write_document("family", f2);
    return Json{{"n", o.n},
                {"X", detail::si_side(f1, "t_reduced")},
                {"X_dual", detail::si_side(f2, "ns_reduced")},
                {"mirror", io::write_mirror(mirror_check(f1, f2))}};
  });
  si->add_option("--n", o.n, "H^2 = 2n")->capture_default_str();
  si->add_option("--emit", o.emit, "report, family1 or family2")
      ->check(CLI::IsMember({"report", "family1", "family2"}))
      ->capture_default_str();

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    const Json report = action(detail::Inputs(o, in));
    if (o.summary)
      detail::flatten(report, "", out);
    else
      out << io::dump(report);
    return 0;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace k3m::cli
