#include "padicseq/json_io.hpp"

#include <utility>

#include "json.hpp"

#include "padicseq/errors.hpp"

namespace padic {

namespace {

using json = nlohmann::ordered_json;

json parse_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(errc::config, "malformed JSON input");
  return j;
}

json int_out(const Int& n) {
  if (n.fits_slong_p()) return json(n.get_si());
  return json(n.get_str());
}

Int int_in(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Int(j.get<long>());
  if (j.is_string()) {
    Int n;
    const std::string s = j.get<std::string>();
    if (s.empty() || mpz_set_str(n.get_mpz_t(), s.c_str(), 10) != 0)
      fail(errc::config, where + " must be an integer");
    return n;
  }
  fail(errc::config, where + " must be an integer");
}

long long_in(const json& j, const std::string& where) {
  Int n = int_in(j, where);
  if (!n.fits_slong_p()) fail(errc::config, where + " is out of range");
  return n.get_si();
}

Rat rat_in(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rat(j.get<long>());
  if (j.is_string()) {
    try {
      return parse_rat(j.get<std::string>());
    } catch (const padic_error&) {
      fail(errc::config, where + " must be an integer or a \"num/den\" string");
    }
  }
  fail(errc::config, where + " must be an integer or a \"num/den\" string");
}

json rat_out(const Rat& q) {
  if (q.get_den() == 1) return int_out(Int(q.get_num()));
  return json(rat_string(q));
}

void reject_unknown(const json& j, std::initializer_list<const char*> known,
                    const std::string& what) {
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const char* k : known)
      if (item.key() == k) {
        ok = true;
        break;
      }
    if (!ok) fail(errc::config, "unknown " + what + " field: " + item.key());
  }
}

const json& field_of(const json& j, const char* key, const std::string& what) {
  if (!j.contains(key)) fail(errc::config, what + " JSON needs \"" + key + "\"");
  return j.at(key);
}

json value_out(const PadicValue& x) {
  if (!x.valid()) fail(errc::internal, "serializing an uninitialized value");
  const ExtensionField& K = *x.field();
  json j;
  j["p"] = int_out(K.p);
  json mod = json::array();
  if (K.d == 1) {
    mod.push_back(rat_out(-K.root0));
    mod.push_back(1);
  } else {
    mod.push_back(rat_out(K.C));
    mod.push_back(rat_out(K.B));
    mod.push_back(1);
  }
  j["modulus"] = mod;
  j["precision_pi_units"] = x.precision();
  json cs = json::array();
  for (int k = 0; k < K.d; ++k) cs.push_back(int_out(x.coeff(k)));
  j["coeffs"] = cs;
  return j;
}

PadicValue value_in(const json& j) {
  if (!j.is_object()) fail(errc::config, "value JSON must be an object");
  reject_unknown(j, {"p", "modulus", "precision_pi_units", "coeffs"}, "value");
  Int p = int_in(field_of(j, "p", "value"), "p");
  const json& mj = field_of(j, "modulus", "value");
  if (!mj.is_array() || mj.size() < 2 || mj.size() > 3)
    fail(errc::config, "modulus must list 2 or 3 coefficients, constant first");
  std::vector<Rat> mod;
  for (const auto& c : mj) mod.push_back(rat_in(c, "modulus entry"));
  if (mod.back() != 1) fail(errc::config, "modulus must be monic with its leading 1 listed");
  FieldPtr K;
  if (mod.size() == 2 && mod[0] == 0)
    K = base_field(p);
  else
    K = build_extension(p, mod);
  long prec = long_in(field_of(j, "precision_pi_units", "value"), "precision_pi_units");
  if (prec < 1) fail(errc::config, "precision_pi_units must be positive");
  const json& cj = field_of(j, "coeffs", "value");
  if (!cj.is_array() || static_cast<int>(cj.size()) != K->d)
    fail(errc::config, "coeffs must list one coordinate per basis element");
  std::vector<Int> cs;
  for (const auto& c : cj) cs.push_back(int_in(c, "coeffs entry"));
  return PadicValue(K, prec, std::move(cs));
}

json level_out(const ResidueLevel& lv) {
  json j;
  j["alpha"] = lv.alpha;
  j["count"] = int_out(lv.count);
  j["density"] = rat_string(lv.density);
  json rs = json::array();
  for (const Int& r : lv.residues) rs.push_back(int_out(r));
  j["residues"] = rs;
  return j;
}

}  // namespace

Rat parse_rat(const std::string& s) {
  Rat q;
  if (s.empty() || mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
    fail(errc::config, "not a rational: \"" + s + "\"");
  if (q.get_den() == 0) fail(errc::config, "zero denominator in \"" + s + "\"");
  q.canonicalize();
  return q;
}

std::string rat_string(const Rat& q) { return q.get_str(); }

RecurrenceSpec spec_from_json(const std::string& text) {
  json j = parse_text(text);
  if (!j.is_object()) fail(errc::config, "recurrence JSON must be an object");
  reject_unknown(j, {"p", "order", "coeffs", "initial", "precision", "guard"}, "recurrence");
  RecurrenceSpec spec;
  spec.p = int_in(field_of(j, "p", "recurrence"), "p");
  const json& cj = field_of(j, "coeffs", "recurrence");
  if (!cj.is_array() || cj.empty())
    fail(errc::config, "coeffs must be a non-empty array a_0 .. a_{order-1}");
  spec.coeffs.clear();
  for (const auto& c : cj) spec.coeffs.push_back(rat_in(c, "coeffs entry"));
  const json& ij = field_of(j, "initial", "recurrence");
  if (!ij.is_array()) fail(errc::config, "initial must be an array s(0) .. s(order-1)");
  spec.initial.clear();
  for (const auto& s : ij) spec.initial.push_back(rat_in(s, "initial entry"));
  spec.order = static_cast<int>(spec.coeffs.size());
  if (j.contains("order") && long_in(j.at("order"), "order") != spec.order)
    fail(errc::config, "order disagrees with the coeffs length");
  if (j.contains("precision")) spec.precision = long_in(j.at("precision"), "precision");
  if (j.contains("guard")) spec.guard = long_in(j.at("guard"), "guard");
  spec.validate();
  return spec;
}

std::string spec_to_json(const RecurrenceSpec& spec) {
  json j;
  j["p"] = int_out(spec.p);
  j["order"] = spec.order;
  json cs = json::array();
  for (const Rat& c : spec.coeffs) cs.push_back(rat_out(c));
  j["coeffs"] = cs;
  json is = json::array();
  for (const Rat& s : spec.initial) is.push_back(rat_out(s));
  j["initial"] = is;
  j["precision"] = spec.precision;
  j["guard"] = spec.guard;
  return j.dump(2);
}

std::string value_to_json(const PadicValue& x) { return value_out(x).dump(2); }

PadicValue value_from_json(const std::string& text) { return value_in(parse_text(text)); }

std::string limit_to_json(const LimitRecord& rec) {
  json j;
  j["a"] = int_out(rec.a);
  j["b"] = int_out(rec.b);
  j["limit"] = value_out(rec.limit);
  if (!rec.witness.empty()) {
    json w = json::array();
    for (const Int& c : rec.witness) w.push_back(int_out(c));
    j["algebraic_witness"] = w;
  }
  return j.dump(2);
}

LimitRecord limit_from_json(const std::string& text) {
  json j = parse_text(text);
  if (!j.is_object()) fail(errc::config, "limit JSON must be an object");
  reject_unknown(j, {"a", "b", "limit", "algebraic_witness"}, "limit");
  LimitRecord rec;
  rec.a = int_in(field_of(j, "a", "limit"), "a");
  rec.b = int_in(field_of(j, "b", "limit"), "b");
  rec.limit = value_in(field_of(j, "limit", "limit"));
  if (j.contains("algebraic_witness")) {
    const json& w = j.at("algebraic_witness");
    if (!w.is_array() || w.empty())
      fail(errc::config, "algebraic_witness must be a non-empty coefficient array");
    for (const auto& c : w) rec.witness.push_back(int_in(c, "algebraic_witness entry"));
  }
  return rec;
}

std::string report_to_json(const DensityReport& rep) {
  json j;
  j["mode"] = rep.mode == DensityMode::exact ? "exact" : "empirical";
  json prof = json::array();
  for (const auto& lv : rep.profile) prof.push_back(level_out(lv));
  j["profile"] = prof;
  if (rep.has_exact) j["exact"] = rat_string(rep.exact_limit);
  json comps = json::array();
  for (const auto& c : rep.components) {
    json cj;
    cj["label"] = c.label;
    cj["measure"] = rat_string(c.measure);
    comps.push_back(cj);
  }
  j["components"] = comps;
  if (rep.has_bracket) {
    json b;
    b["inner"] = rat_string(rep.inner);
    b["outer"] = rat_string(rep.outer);
    j["bracket"] = b;
  }
  j["trace"] = rep.trace;
  return j.dump(2);
}

std::string tree_to_json(const ResidueTree& tree) {
  json j;
  j["mode"] = tree.mode == DensityMode::exact ? "exact" : "empirical";
  j["p"] = int_out(tree.p);
  json lvls = json::array();
  for (const auto& lv : tree.levels) {
    json lj = level_out(lv);
    json full = json::array();
    for (const Int& r : lv.residues)
      if (tree.full_marks.count({lv.alpha, r})) full.push_back(int_out(r));
    lj["full"] = full;
    lvls.push_back(lj);
  }
  j["levels"] = lvls;
  json es = json::array();
  for (const auto& e : tree.edges) {
    json ej;
    ej["alpha"] = e.alpha;
    ej["parent"] = int_out(e.parent);
    ej["digit"] = int_out(e.digit);
    ej["child"] = int_out(e.child);
    es.push_back(ej);
  }
  j["edges"] = es;
  return j.dump(2);
}

}  // namespace padic
