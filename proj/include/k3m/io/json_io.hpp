#pragma once

// Exact JSON codecs for the input payloads. Every number is written as a
// string ("p/q" or "p"); integers are also accepted as JSON integers on
// input, floats never. Keys come out sorted because nlohmann::json keeps
// objects in a std::map.

#include <algorithm>
#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "k3m/gk3/gk3.hpp"
#include "k3m/mirror/mirror.hpp"
#include "k3m/rigidity/rigidity.hpp"

namespace k3m::io {

using Json = nlohmann::json;

// ---------------------------------------------------------------- reading

/// A position inside a parsed JSON value. Schema failures throw ParseError
/// prefixed with the JSON path ("$.pair.phiA.deg2[3].re").
class Reader {
 public:
  Reader(const Json& j, std::string path, FieldTag field) : j_(&j), path_(std::move(path)), field_(field) {}

  const Json& json() const { return *j_; }
  const std::string& path() const { return path_; }
  FieldTag field() const { return field_; }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(path_ + ": " + msg); }

  bool is_object() const { return j_->is_object(); }
  bool has(const char* key) const { return j_->is_object() && j_->contains(key); }

  /// Requires an object whose keys all belong to `allowed`.
  const Reader& object(std::initializer_list<const char*> allowed) const {
    if (!j_->is_object()) fail("expected an object");
    for (const auto& [k, v] : j_->items()) {
      bool ok = false;
      for (const char* a : allowed) ok = ok || k == a;
      if (!ok) fail("unknown key \"" + k + "\"");
    }
    return *this;
  }

  Reader operator[](const char* key) const {
    if (!j_->is_object()) fail("expected an object");
    auto it = j_->find(key);
    if (it == j_->end()) fail(std::string("missing key \"") + key + "\"");
    return {*it, path_ + "." + key, field_};
  }

  std::optional<Reader> opt(const char* key) const {
    if (!has(key) || (*j_)[key].is_null()) return std::nullopt;
    return (*this)[key];
  }

  std::size_t array(std::optional<std::size_t> expected = std::nullopt) const {
    if (!j_->is_array()) fail("expected an array");
    if (expected && j_->size() != *expected)
      fail("expected " + std::to_string(*expected) + " entries, got " + std::to_string(j_->size()));
    return j_->size();
  }

  Reader at(std::size_t i) const { return {(*j_)[i], path_ + "[" + std::to_string(i) + "]", field_}; }

  std::string string() const {
    if (!j_->is_string()) fail("expected a string");
    return j_->get<std::string>();
  }

  bool boolean() const {
    if (!j_->is_boolean()) fail("expected true or false");
    return j_->get<bool>();
  }

  Rational rational() const {
    if (j_->is_number_integer()) return Rational(Integer(j_->dump(), 10));
    if (j_->is_number_float()) fail("floats are not accepted; write the number as a string");
    if (!j_->is_string()) fail("expected an exact number string");
    try {
      return parse_rational(j_->get<std::string>());
    } catch (const ParseError& e) {
      fail(e.what());
    }
  }

  Integer integer() const {
    const Rational q = rational();
    if (q.get_den() != 1) fail("expected an integer, got " + q.get_str());
    return q.get_num();
  }

  long small() const {
    const Integer z = integer();
    if (!z.fits_slong_p()) fail("integer out of range");
    return z.get_si();
  }

  /// {"a": q, "b": q} meaning a + b sqrt(d), d from the header; a bare
  /// number is shorthand for b = 0.
  QuadScalar quad() const {
    if (!j_->is_object()) return QuadScalar(rational());
    object({"a", "b"});
    Rational a = (*this)["a"].rational();
    Rational b = (*this)["b"].rational();
    if (b == 0) return QuadScalar(std::move(a));
    if (field_ == 0) fail("irrational part needs a sqrt_d header");
    return {std::move(a), std::move(b), field_};
  }

  Complex complex() const {
    object({"re", "im"});
    return {(*this)["re"].quad(), (*this)["im"].quad()};
  }

  std::vector<Integer> int_vector(std::optional<std::size_t> n = std::nullopt) const {
    const std::size_t m = array(n);
    std::vector<Integer> v;
    v.reserve(m);
    for (std::size_t i = 0; i < m; ++i) v.push_back(at(i).integer());
    return v;
  }

  RealVec quad_vector(std::optional<std::size_t> n = std::nullopt) const {
    const std::size_t m = array(n);
    RealVec v;
    v.reserve(m);
    for (std::size_t i = 0; i < m; ++i) v.push_back(at(i).quad());
    return v;
  }

  /// Row-major; `cols` fixes the width (needed for empty matrices).
  IntMatrix int_matrix(std::optional<std::size_t> cols = std::nullopt) const {
    const std::size_t r = array();
    std::size_t c = cols.value_or(0);
    if (!cols && r > 0) c = at(0).array();
    IntMatrix m(0, c);
    for (std::size_t i = 0; i < r; ++i) m.append_row(at(i).int_vector(c));
    return m;
  }

  Matrix<QuadScalar> quad_matrix() const {
    const std::size_t r = array();
    const std::size_t c = r ? at(0).array() : 0;
    Matrix<QuadScalar> m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
      const auto row = at(i).quad_vector(c);
      for (std::size_t j = 0; j < c; ++j) m(i, j) = row[j];
    }
    return m;
  }

 private:
  const Json* j_;
  std::string path_;
  FieldTag field_;
};

// ---------------------------------------------------------------- writing

/// Collects the field tag of every irrational scalar written, so the caller
/// can emit a consistent sqrt_d header.
struct Writer {
  FieldTag field = 0;

  static Json num(const Integer& z) { return z.get_str(); }
  static Json num(const Rational& q) { return q.get_str(); }

  Json quad(const QuadScalar& x) {
    if (!x.is_rational()) field = join_fields(field, x.field());
    return Json{{"a", num(x.a())}, {"b", num(x.b())}};
  }
  Json complex(const Complex& c) { return Json{{"re", quad(c.re)}, {"im", quad(c.im)}}; }

  Json quad_vector(std::span<const QuadScalar> v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(quad(x));
    return out;
  }
  static Json int_vector(std::span<const Integer> v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(num(x));
    return out;
  }
  static Json int_matrix(const IntMatrix& m) {
    Json out = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(int_vector(m.row(i)));
    return out;
  }
  Json quad_matrix(const Matrix<QuadScalar>& m) {
    Json out = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(quad_vector(m.row(i)));
    return out;
  }
  static Json header(FieldTag d) { return d == 0 ? Json(nullptr) : Json(d); }
};

namespace detail {

inline bool flat(const Json& j) {
  if (!j.is_structured()) return true;
  return std::all_of(j.begin(), j.end(), [](const Json& x) { return !x.is_structured(); });
}

inline void dump_to(const Json& j, std::string& out, int depth) {
  if (flat(j)) {
    out += j.dump();
    return;
  }
  const std::string pad(2 * (depth + 1), ' ');
  const bool obj = j.is_object();
  out += obj ? "{\n" : "[\n";
  bool first = true;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!first) out += ",\n";
    first = false;
    out += pad;
    if (obj) out += Json(it.key()).dump() + ": ";
    dump_to(*it, out, depth + 1);
  }
  out += "\n" + std::string(2 * depth, ' ') + (obj ? "}" : "]");
}

}  // namespace detail

/// Canonical text: sorted keys, containers of scalars on one line, two-space
/// indent otherwise, trailing newline. Byte-identical for equal values.
inline std::string dump(const Json& j) {
  std::string out;
  detail::dump_to(j, out, 0);
  return out + "\n";
}

inline Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("$: malformed JSON: ") + e.what());
  }
}

// --------------------------------------------------------------- lattices

using LatticePtr = std::shared_ptr<const IntegralLattice>;

/// {"gram": [[...]]} or {"named": ...}; "K3" and "Mukai" name the fixed
/// ambients (the Mukai form has deg0/deg4 block [[0,-1],[-1,0]], which no
/// sum of the other names reproduces in this basis order).
inline LatticePtr read_lattice(const Reader& r);

namespace detail {

inline IntegralLattice read_named(const Reader& r) {
  if (r.json().is_string()) {
    const auto name = r.string();
    if (name == "U") return lattices::U();
    if (name == "E8minus") return lattices::E8minus();
    if (name == "K3") return *k3_lattice_ptr();
    if (name == "Mukai") return mukai_lattice();
    r.fail("unknown lattice name \"" + name + "\" (U, E8minus, K3, Mukai)");
  }
  r.object({"diag", "sum", "rescale"});
  if (r.json().size() != 1) r.fail("expected exactly one of diag, sum, rescale");
  if (auto d = r.opt("diag")) return lattices::diag(d->int_vector());
  if (auto s = r.opt("sum")) {
    std::vector<IntegralLattice> parts;
    for (std::size_t i = 0, n = s->array(); i < n; ++i) parts.push_back(*read_lattice(s->at(i)));
    return lattices::direct_sum(parts);
  }
  const auto rs = r["rescale"];
  rs.object({"of", "by"});
  return lattices::rescale(*read_lattice(rs["of"]), rs["by"].integer());
}

}  // namespace detail

inline LatticePtr read_lattice(const Reader& r) {
  r.object({"gram", "named"});
  if (r.json().size() != 1) r.fail("expected exactly one of gram, named");
  if (auto g = r.opt("gram")) {
    const IntMatrix m = g->int_matrix();
    if (!m.is_square()) g->fail("Gram matrix is not square");
    if (!m.is_symmetric()) g->fail("Gram matrix is not symmetric");
    if (m == mukai_lattice().gram()) return mukai_lattice_ptr();
    if (m == k3_lattice_ptr()->gram()) return k3_lattice_ptr();
    return std::make_shared<const IntegralLattice>(m);
  }
  const auto n = r["named"];
  if (n.json().is_string() && n.string() == "Mukai") return mukai_lattice_ptr();
  if (n.json().is_string() && n.string() == "K3") return k3_lattice_ptr();
  return std::make_shared<const IntegralLattice>(detail::read_named(n));
}

inline Json write_lattice_ref(const IntegralLattice& l) {
  if (l == mukai_lattice()) return Json{{"named", "Mukai"}};
  if (l == *k3_lattice_ptr()) return Json{{"named", "K3"}};
  return Json{{"gram", Writer::int_matrix(l.gram())}};
}

inline Json write_lattice(const IntegralLattice& l) { return Json{{"gram", Writer::int_matrix(l.gram())}}; }

inline Sublattice read_sublattice(const Reader& r) {
  r.object({"ambient", "basis"});
  auto amb = read_lattice(r["ambient"]);
  IntMatrix basis = r["basis"].int_matrix(amb->rank());
  return {std::move(amb), std::move(basis)};
}

inline Json write_sublattice(const Sublattice& s) {
  return Json{{"ambient", write_lattice_ref(s.ambient())}, {"basis", Writer::int_matrix(s.basis())}};
}

// ---------------------------------------------------------------- classes

inline CohClass read_class(const Reader& r) {
  r.object({"deg0", "deg2", "deg4"});
  const auto d2 = r["deg2"];
  d2.array(kH2Rank);
  std::vector<Complex> deg2;
  for (std::size_t i = 0; i < kH2Rank; ++i) deg2.push_back(d2.at(i).complex());
  return {r["deg0"].complex(), deg2, r["deg4"].complex()};
}

inline Json write_class(Writer& w, const CohClass& x) {
  Json d2 = Json::array();
  for (const auto& c : x.deg2()) d2.push_back(w.complex(c));
  return Json{{"deg0", w.complex(x.deg0())}, {"deg2", d2}, {"deg4", w.complex(x.deg4())}};
}

inline GcyType read_type(const Reader& r) {
  const auto s = r.string();
  if (s == "A") return GcyType::A;
  if (s == "B") return GcyType::B;
  r.fail("type must be \"A\" or \"B\"");
}

/// An explicit class (validated as a gCY class) or {"generic": sublattice, "type": "A"|"B"}.
inline Member read_member(const Reader& r) {
  if (r.has("generic")) {
    r.object({"generic", "type"});
    return GenericClass(read_sublattice(r["generic"]), read_type(r["type"]));
  }
  return check_gcy(read_class(r));
}

inline Json write_member(Writer& w, const Member& m) {
  if (const auto* g = std::get_if<GCYClass>(&m)) return write_class(w, g->cls());
  const auto& gen = std::get<GenericClass>(m);
  return Json{{"generic", write_sublattice(gen.support())}, {"type", to_string(gen.type())}};
}

/// Unvalidated pair: classify-hk accepts pairs that validate_gk3 rejects.
struct PairInput {
  Member phiA;
  Member phiB;
};

inline PairInput read_pair(const Reader& r) {
  r.object({"phiA", "phiB"});
  return {read_member(r["phiA"]), read_member(r["phiB"])};
}

inline Json write_pair(Writer& w, const Member& a, const Member& b) {
  return Json{{"phiA", write_member(w, a)}, {"phiB", write_member(w, b)}};
}

inline PolarizationData read_polarization(const Reader& r) {
  r.object({"K", "L", "witness_A", "witness_B"});
  return {read_sublattice(r["K"]), read_sublattice(r["L"]), read_member(r["witness_A"]),
          read_member(r["witness_B"])};
}

inline Json write_polarization(Writer& w, const PolarizationData& p) {
  return Json{{"K", write_sublattice(p.k)},
              {"L", write_sublattice(p.l)},
              {"witness_A", write_member(w, p.witness_a)},
              {"witness_B", write_member(w, p.witness_b)}};
}

inline FamilySpec read_family(const Reader& r) {
  r.object({"polarization", "pair"});
  auto pol = read_polarization(r["polarization"]);
  auto pair = read_pair(r["pair"]);
  return {std::move(pol), validate_gk3(std::move(pair.phiA), std::move(pair.phiB))};
}

inline Json write_family(Writer& w, const FamilySpec& f) {
  return Json{{"polarization", write_polarization(w, f.pol)}, {"pair", write_pair(w, f.member.phiA, f.member.phiB)}};
}

// ----------------------------------------------------------------- survey

inline SurveyConfig read_survey_config(const Reader& r) {
  r.object({"max_det", "denominator_bound", "sqrt_d", "ns_choice", "coefficient_bound"});
  SurveyConfig c;
  if (auto x = r.opt("max_det")) c.max_det = x->small();
  if (auto x = r.opt("denominator_bound")) c.denominator_bound = x->small();
  if (auto x = r.opt("coefficient_bound")) c.coefficient_bound = x->small();
  if (auto x = r.opt("ns_choice")) c.ns_choice = x->string();
  if (auto x = r.opt("sqrt_d"))
    for (std::size_t i = 0, n = x->array(); i < n; ++i) c.sqrt_d.push_back(x->at(i).small());
  return c;
}

inline Json write_survey_config(const SurveyConfig& c) {
  Json d = Json::array();
  for (long x : c.sqrt_d) d.push_back(x);
  return Json{{"max_det", c.max_det},
              {"denominator_bound", c.denominator_bound},
              {"coefficient_bound", c.coefficient_bound},
              {"ns_choice", c.ns_choice},
              {"sqrt_d", d}};
}

// --------------------------------------------------------------- document

inline FieldTag read_header(const Reader& root) {
  const auto d = root.opt("sqrt_d");
  if (!d) return 0;
  const long v = d->small();
  if (v < 2) d->fail("sqrt_d must be an integer >= 2");
  if (!is_squarefree(v)) d->fail("sqrt_d = " + std::to_string(v) + " is not squarefree");
  return v;
}

using Payload = std::variant<std::shared_ptr<const IntegralLattice>, Sublattice, CohClass, PairInput,
                             PolarizationData, FamilySpec, RealVec, SurveyConfig>;

inline constexpr const char* kPayloadKeys[] = {"lattice", "sublattice", "class",  "pair",
                                               "polarization", "family",  "bfield", "survey"};

/// {"sqrt_d": d | null, <kind>: payload} with exactly one payload key.
struct Document {
  FieldTag sqrt_d = 0;
  std::string kind;
  Payload body;
};

inline Document read_document_json(const Json& j) {
  const Reader top(j, "$", 0);
  top.object({"sqrt_d", "lattice", "sublattice", "class", "pair", "polarization", "family", "bfield", "survey"});
  const FieldTag d = read_header(top);
  const Reader root(j, "$", d);
  std::string kind;
  for (const char* k : kPayloadKeys)
    if (root.has(k)) {
      if (!kind.empty()) root.fail("more than one payload (\"" + kind + "\" and \"" + k + "\")");
      kind = k;
    }
  if (kind.empty()) root.fail("no payload key (lattice, sublattice, class, pair, polarization, family, bfield, survey)");
  const Reader r = root[kind.c_str()];
  Document doc{d, kind, {}};
  if (kind == "lattice") doc.body = read_lattice(r);
  else if (kind == "sublattice") doc.body = read_sublattice(r);
  else if (kind == "class") doc.body = read_class(r);
  else if (kind == "pair") doc.body = read_pair(r);
  else if (kind == "polarization") doc.body = read_polarization(r);
  else if (kind == "family") doc.body = read_family(r);
  else if (kind == "bfield") doc.body = r.quad_vector(kH2Rank);
  else doc.body = read_survey_config(r);
  return doc;
}

inline Document read_document(const std::string& text) { return read_document_json(parse_text(text)); }

inline Json write_payload(Writer& w, const Payload& p) {
  return std::visit(
      [&w](const auto& x) -> Json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, LatticePtr>) return write_lattice(*x);
        else if constexpr (std::is_same_v<T, Sublattice>) return write_sublattice(x);
        else if constexpr (std::is_same_v<T, CohClass>) return write_class(w, x);
        else if constexpr (std::is_same_v<T, PairInput>) return write_pair(w, x.phiA, x.phiB);
        else if constexpr (std::is_same_v<T, PolarizationData>) return write_polarization(w, x);
        else if constexpr (std::is_same_v<T, FamilySpec>) return write_family(w, x);
        else if constexpr (std::is_same_v<T, RealVec>) return w.quad_vector(x);
        else return write_survey_config(x);
      },
      p);
}

/// The header is the field actually used by the payload.
inline Json write_document(const std::string& kind, const Payload& p) {
  Writer w;
  Json body = write_payload(w, p);
  return Json{{"sqrt_d", Writer::header(w.field)}, {kind, std::move(body)}};
}

inline Json write_document(const Document& d) { return write_document(d.kind, d.body); }

inline std::string serialize(const Document& d) { return dump(write_document(d)); }

}  // namespace k3m::io
