#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "padicseq/analytic.hpp"
#include "padicseq/density.hpp"
#include "padicseq/errors.hpp"
#include "padicseq/interpolation.hpp"
#include "padicseq/json_io.hpp"
#include "padicseq/localfield.hpp"
#include "padicseq/recurrence.hpp"

using namespace padic;
using json = nlohmann::ordered_json;

namespace {

enum class Format { text, js, dot };

struct Global {
  long precision = 0;  // 0 keeps the spec's own value
  long guard = -1;
  long budget = kDefaultStateBudget;
  Format format = Format::text;
};

struct SpecInput {
  std::string path;
  std::string p_str, coeffs_str, initial_str;
};

Int parse_int(const std::string& s, const std::string& where) {
  Int n;
  if (s.empty() || mpz_set_str(n.get_mpz_t(), s.c_str(), 10) != 0)
    fail(errc::config, where + " must be an integer, got \"" + s + "\"");
  return n;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s) {
    if (ch == ',') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  return parts;
}

std::vector<Rat> parse_rat_list(const std::string& s, const std::string& where) {
  std::vector<Rat> out;
  for (const std::string& tok : split_commas(s)) {
    if (tok.empty()) fail(errc::config, where + " has an empty entry");
    out.push_back(parse_rat(tok));
  }
  return out;
}

std::vector<Int> parse_int_list(const std::string& s, const std::string& where) {
  std::vector<Int> out;
  for (const std::string& tok : split_commas(s)) out.push_back(parse_int(tok, where));
  return out;
}

std::string read_input(const std::string& path) {
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream f(path);
    if (!f) fail(errc::config, "cannot read " + path);
    ss << f.rdbuf();
  }
  return ss.str();
}

void add_spec_options(CLI::App* cmd, SpecInput& in) {
  cmd->add_option("spec", in.path, "recurrence JSON file (- for stdin)");
  cmd->add_option("--p", in.p_str, "prime; with a file, overrides its p");
  cmd->add_option("--coeffs", in.coeffs_str,
                  "comma separated a_0..a_{l-1}; use --coeffs=-1,-1 for negatives");
  cmd->add_option("--initial", in.initial_str, "comma separated s(0)..s(l-1)");
}

RecurrenceSpec load_spec(const SpecInput& in, const Global& g) {
  RecurrenceSpec spec;
  if (!in.path.empty()) {
    spec = spec_from_json(read_input(in.path));
  } else if (in.p_str.empty() || in.coeffs_str.empty() || in.initial_str.empty()) {
    fail(errc::config, "no recurrence given: pass a JSON file or --p, --coeffs, --initial");
  }
  if (!in.p_str.empty()) spec.p = parse_int(in.p_str, "--p");
  if (!in.coeffs_str.empty()) spec.coeffs = parse_rat_list(in.coeffs_str, "--coeffs");
  if (!in.initial_str.empty()) spec.initial = parse_rat_list(in.initial_str, "--initial");
  spec.order = static_cast<int>(spec.coeffs.size());
  if (g.precision > 0) spec.precision = g.precision;
  if (g.guard >= 0) spec.guard = g.guard;
  spec.validate();
  return spec;
}

std::string rep_string(const PadicValue& x) {
  if (x.field()->d == 2 && x.coeff(1) != 0)
    return x.coeff(0).get_str() + " + " + x.coeff(1).get_str() + "*t";
  return x.coeff(0).get_str();
}

std::string nu_string(const PadicValue& x) {
  Valuation v = valuation(x);
  if (!v.bounded) return ">= " + std::to_string(v.cap) + " (0 at this precision)";
  return std::to_string(v.nu);
}

json value_json(const PadicValue& x) { return json::parse(value_to_json(x)); }

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

const char* tag_name(InterpTag t) {
  switch (t) {
    case InterpTag::ExactTwisted: return "ExactTwisted";
    case InterpTag::ApproximateOnly: return "ApproximateOnly";
    default: return "IdenticallyZero";
  }
}

// ---- terms -----------------------------------------------------------------

struct TermsOpts {
  SpecInput in;
  std::string n_str, list_str, large_str;
  long n_max = -1;
  bool digits = false;
};

int run_terms(const Global& g, const TermsOpts& o) {
  RecurrenceSpec spec = load_spec(o.in, g);
  int picked = (!o.n_str.empty()) + (!o.list_str.empty()) + (!o.large_str.empty()) + (o.n_max >= 0);
  if (picked != 1)
    fail(errc::config, "pick exactly one of --n, --n-max, --n-list, --large-index");

  std::vector<Int> indices;
  std::vector<PadicValue> values;
  if (o.n_max >= 0) {
    values = eval_terms(spec, o.n_max);
    for (long n = 0; n <= o.n_max; ++n) indices.push_back(Int(n));
  } else if (!o.large_str.empty()) {
    std::vector<Int> abn = parse_int_list(o.large_str, "--large-index");
    if (abn.size() != 3) fail(errc::config, "--large-index takes a,b,n");
    if (!abn[2].fits_slong_p() || abn[2] < 0)
      fail(errc::config, "--large-index exponent must be a small non-negative integer");
    auto inv = splitting_invariants(spec);
    Int idx = abn[0] * pow_int(spec.p, inv.f * abn[2].get_si()) + abn[1];
    if (idx < 0) fail(errc::config, "large index a p^{fn} + b must be non-negative");
    indices.push_back(idx);
    values.push_back(term_at_index(spec, idx));
  } else {
    std::string src = !o.n_str.empty() ? o.n_str : o.list_str;
    for (const Int& n : parse_int_list(src, "--n")) {
      indices.push_back(n);
      values.push_back(term_at_index(spec, n));
    }
  }

  if (g.format == Format::js) {
    json j;
    j["p"] = json::parse(value_to_json(values[0]))["p"];
    j["precision"] = spec.precision;
    json ts = json::array();
    for (size_t k = 0; k < values.size(); ++k) {
      json t;
      t["n"] = indices[k].fits_slong_p() ? json(indices[k].get_si()) : json(indices[k].get_str());
      t["value"] = value_json(values[k]);
      ts.push_back(t);
    }
    j["terms"] = ts;
    emit(j);
  } else {
    for (size_t k = 0; k < values.size(); ++k) {
      std::cout << "s(" << indices[k] << ") = " << rep_string(values[k]);
      if (o.digits) std::cout << "  digits " << digit_string(values[k]);
      std::cout << "\n";
    }
  }
  return 0;
}

// ---- classify --------------------------------------------------------------

int run_classify(const Global& g, const SpecInput& in) {
  RecurrenceSpec spec = load_spec(in, g);
  InterpolabilityClass cls = classify(spec);
  SplittingInvariants inv = splitting_invariants(spec);
  if (g.format == Format::js) {
    json j;
    j["tag"] = tag_name(cls.tag);
    j["witness"] = cls.witness;
    j["e"] = inv.e;
    j["f"] = inv.f;
    j["q"] = inv.q.fits_slong_p() ? json(inv.q.get_si()) : json(inv.q.get_str());
    j["function_count"] = inv.function_count.fits_slong_p() ? json(inv.function_count.get_si())
                                                            : json(inv.function_count.get_str());
    emit(j);
    return 0;
  }
  if (cls.tag == InterpTag::IdenticallyZero)
    std::cout << "IdenticallyZero\n";
  else
    std::cout << tag_name(cls.tag) << ", " << inv.function_count << " functions, q=" << inv.q
              << ", f=" << inv.f << "\n";
  std::cout << cls.witness << "\n";
  return 0;
}

// ---- interp ----------------------------------------------------------------

struct InterpOpts {
  SpecInput in;
  std::string eval_str;
  long agree = -1;
};

int run_interp(const Global& g, const InterpOpts& o) {
  RecurrenceSpec spec = load_spec(o.in, g);
  TwistedInterpolation T = build_interpolation(spec);
  bool js = g.format == Format::js;
  json j;
  if (js) {
    j["tag"] = tag_name(T.cls.tag);
    j["witness"] = T.cls.witness;
    j["q"] = T.q.fits_slong_p() ? json(T.q.get_si()) : json(T.q.get_str());
    j["f"] = T.f;
    j["function_count"] = T.function_count.fits_slong_p() ? json(T.function_count.get_si())
                                                          : json(T.function_count.get_str());
    j["field"] = T.spectral.field->describe();
    json bs = json::array();
    for (const auto& br : T.branches) {
      json b;
      b["beta"] = value_json(br.root.beta);
      b["omega"] = value_json(br.omega);
      b["lambda"] = value_json(br.lambda);
      bs.push_back(b);
    }
    j["branches"] = bs;
    if (T.consts.has_C) {
      json ec;
      ec["nu_C"] = rat_string(T.consts.nu_C);
      if (T.consts.has_D) ec["nu_D"] = rat_string(T.consts.nu_D);
      j["error_constants"] = ec;
    }
  } else {
    std::cout << tag_name(T.cls.tag) << ", " << T.function_count << " functions, q=" << T.q
              << ", f=" << T.f << "\n";
    std::cout << T.cls.witness << "\n";
    std::cout << "field: " << T.spectral.field->describe() << "\n";
    int k = 0;
    for (const auto& br : T.branches) {
      std::cout << "unit root " << ++k << ": beta = " << to_string(br.root.beta) << "\n";
      std::cout << "  omega  = " << rep_string(br.omega) << "\n";
      std::cout << "  lambda = " << digit_string(br.lambda) << "  pi-valuation "
                << nu_string(br.lambda) << "\n";
    }
    if (T.consts.has_C) {
      std::cout << "approximate part: |s(n) - s_{i,r}(n)|_p <= p^-(nu_C + n nu_D), nu_C = "
                << rat_string(T.consts.nu_C);
      if (T.consts.has_D) std::cout << ", nu_D = " << rat_string(T.consts.nu_D);
      std::cout << "\n";
    }
  }

  if (!o.eval_str.empty()) {
    Int n = parse_int(o.eval_str, "--eval");
    ResidueIndex idx = resolve_index(T, n);
    PadicValue v = eval_at_integer(T, n);
    PadicValue t = embed(term_at_index(spec, n), T.spectral.field);
    if (v.precision() > t.precision()) v = reduce_precision(v, t.precision());
    PadicValue diff = v - t;
    bool exact = is_zero(diff);
    if (js) {
      json e;
      e["n"] = n.fits_slong_p() ? json(n.get_si()) : json(n.get_str());
      e["i"] = idx.i.get_si();
      e["r"] = idx.r.get_si();
      e["interpolated"] = value_json(v);
      e["term"] = value_json(t);
      e["exact_match"] = exact;
      if (!exact) e["diff_pi_valuation"] = valuation(diff).nu;
      j["eval"] = e;
    } else {
      std::cout << "n = " << n << ": class i = " << idx.i << " mod " << T.pf1 << ", r = " << idx.r
                << " mod " << T.q << "\n";
      std::cout << "  s_{i,r}(n) = " << rep_string(v) << "\n";
      std::cout << "  s(n)       = " << rep_string(t)
                << (exact ? "  (exact match)" : "  (differs, pi-valuation " +
                                                    std::to_string(valuation(diff).nu) + ")")
                << "\n";
    }
  }

  if (o.agree >= 0) {
    auto rows = agreement_report(spec, T, o.agree);
    long exact_rows = 0, bounded = 0, violations = 0;
    for (const auto& r : rows) {
      if (r.exact) ++exact_rows;
      if (r.has_bound) ++bounded;
      if (!r.holds) ++violations;
    }
    if (js) {
      json rs = json::array();
      for (const auto& r : rows) {
        json rj;
        rj["n"] = r.n;
        rj["exact"] = r.exact;
        if (!r.exact) rj["diff_nu"] = rat_string(r.diff_nu);
        if (r.has_bound) rj["bound_nu"] = rat_string(r.bound_nu);
        rj["holds"] = r.holds;
        rs.push_back(rj);
      }
      j["agreement"] = rs;
    } else {
      std::cout << "agreement n <= " << o.agree << ": " << exact_rows << " exact, " << bounded
                << " bounded rows, " << violations << " violations\n";
      for (const auto& r : rows)
        if (!r.holds)
          std::cout << "  VIOLATION at n = " << r.n << "\n";
    }
  }
  if (js) emit(j);
  return 0;
}

// ---- limit -----------------------------------------------------------------

struct LimitOpts {
  SpecInput in;
  std::string a_str = "1", b_str = "0";
  std::string poly_str;
  long verify_terms = -1;
};

int run_limit(const Global& g, const LimitOpts& o) {
  RecurrenceSpec spec = load_spec(o.in, g);
  TwistedInterpolation T = build_interpolation(spec);
  Int a = parse_int(o.a_str, "--a");
  Int b = parse_int(o.b_str, "--b");
  PadicValue L = padic_limit(T, a, b);
  long target = spec.precision * T.spectral.field->e;  // guard digits stay internal
  if (L.precision() > target) L = reduce_precision(L, target);
  Int P = pow_int(spec.p, T.f);

  LimitRecord rec;
  rec.a = a;
  rec.b = b;
  rec.limit = L;

  bool poly_ok = true;
  if (!o.poly_str.empty()) {
    rec.witness = parse_int_list(o.poly_str, "--check-poly");  // leading coefficient first
    std::vector<Int> asc(rec.witness.rbegin(), rec.witness.rend());
    poly_ok = verify_algebraic(L, asc);
  }

  bool conv_ok = true;
  long conv_fail_at = 0;
  if (o.verify_terms >= 1) {
    const long e = T.spectral.field->e;
    for (long n = 1; n <= o.verify_terms; ++n) {
      Int idx = a * pow_int(P, n) + b;
      if (idx < 0) fail(errc::config, "--verify-terms hit a negative index");
      PadicValue diff = embed(term_at_index(spec, idx), T.spectral.field) - L;
      Valuation v = valuation(diff);
      if (v.bounded && v.nu < n * e) {
        conv_ok = false;
        conv_fail_at = n;
        break;
      }
    }
  }

  if (g.format == Format::js) {
    emit(json::parse(limit_to_json(rec)));
  } else {
    std::cout << "lim s(" << a << "*" << P << "^n + " << b << ") = " << rep_string(L) << "\n";
    std::cout << "digits: " << digit_string(L) << "\n";
    if (!in_base_ring(L))
      std::cout << "value lies outside Z_p (second coordinate nonzero)\n";
    if (!o.poly_str.empty()) std::cout << (poly_ok ? "root verified" : "root not verified") << "\n";
    if (o.verify_terms >= 1) {
      if (conv_ok)
        std::cout << "convergence: |s(a " << P << "^n + b) - L|_p <= p^-n for n <= "
                  << o.verify_terms << "\n";
      else
        std::cout << "convergence FAILED at n = " << conv_fail_at << "\n";
    }
  }
  if (!conv_ok) return 4;
  return 0;
}

// ---- verify ----------------------------------------------------------------

int run_verify(const Global& g, const std::string& in_path) {
  LimitRecord rec = limit_from_json(read_input(in_path));
  if (rec.witness.empty()) fail(errc::config, "limit JSON carries no algebraic witness");
  std::vector<Int> asc(rec.witness.rbegin(), rec.witness.rend());
  bool ok = verify_algebraic(rec.limit, asc);
  if (g.format == Format::js) {
    json j;
    j["verified"] = ok;
    json w = json::array();
    for (const Int& c : rec.witness)
      w.push_back(c.fits_slong_p() ? json(c.get_si()) : json(c.get_str()));
    j["poly"] = w;
    emit(j);
  } else {
    std::cout << (ok ? "root verified" : "root not verified") << "\n";
  }
  return 0;
}

// ---- density ---------------------------------------------------------------

struct DensityOpts {
  SpecInput in;
  long alpha_max = 4;
  bool exact = false;
};

void print_profile_line(const DensityReport& rep) {
  std::cout << "profile:";
  for (size_t k = 0; k < rep.profile.size(); ++k)
    std::cout << (k ? ", " : " ") << rat_string(rep.profile[k].density);
  std::cout << "\n";
}

void print_empirical(const DensityReport& rep) {
  for (const auto& lv : rep.profile)
    std::cout << "alpha " << lv.alpha << ": density " << rat_string(lv.density) << " (" << lv.count
              << " residues)\n";
  print_profile_line(rep);
}

int run_density(const Global& g, const DensityOpts& o) {
  RecurrenceSpec spec = load_spec(o.in, g);
  if (!o.exact) {
    DensityReport rep = density_profile(spec, o.alpha_max, g.budget);
    if (g.format == Format::js)
      emit(json::parse(report_to_json(rep)));
    else
      print_empirical(rep);
    return 0;
  }
  DensityReport rep;
  try {
    rep = exact_limiting_density(spec);
  } catch (const padic_error& e) {
    if (e.code() != errc::unsupported && e.code() != errc::budget) throw;
    std::cerr << "error: " << e.what() << "\n";
    DensityReport emp = density_profile(spec, o.alpha_max, g.budget);
    if (g.format == Format::js) {
      json j = json::parse(report_to_json(emp));
      j["exact_error"] = e.what();
      emit(j);
    } else {
      print_empirical(emp);
    }
    return 3;
  }
  if (g.format == Format::js) {
    emit(json::parse(report_to_json(rep)));
    return 0;
  }
  if (rep.has_exact) std::cout << "exact limiting density: " << rat_string(rep.exact_limit) << "\n";
  for (const auto& c : rep.components)
    std::cout << "  " << c.label << ": " << rat_string(c.measure) << "\n";
  if (rep.has_bracket)
    std::cout << "density bracket: [" << rat_string(rep.inner) << ", " << rat_string(rep.outer)
              << "]\n";
  std::cout << "predicted ";
  print_profile_line(rep);
  for (const auto& line : rep.trace) std::cout << "note: " << line << "\n";
  return 0;
}

// ---- tree ------------------------------------------------------------------

struct TreeOpts {
  SpecInput in;
  long alpha_max = 3;
  bool exact = false;
  std::string dot_path;
};

int run_tree(const Global& g, const TreeOpts& o) {
  RecurrenceSpec spec = load_spec(o.in, g);
  DensityMode mode = o.exact ? DensityMode::exact : DensityMode::empirical;
  ResidueTree tree = residue_tree(spec, o.alpha_max, mode, g.budget);
  if (!o.dot_path.empty()) {
    std::ofstream f(o.dot_path);
    if (!f) fail(errc::config, "cannot write " + o.dot_path);
    f << tree_to_dot(tree);
    std::cout << "dot written to " << o.dot_path << "\n";
    return 0;
  }
  switch (g.format) {
    case Format::dot:
      std::cout << tree_to_dot(tree);
      break;
    case Format::js:
      emit(json::parse(tree_to_json(tree)));
      break;
    default:
      std::cout << tree_to_text(tree);
      break;
  }
  return 0;
}

// ---- omega / explog --------------------------------------------------------

struct PointOpts {
  std::string p_str, value_str, fn = "log";
};

int run_omega(const Global& g, const PointOpts& o) {
  Int p = parse_int(o.p_str, "--p");
  long prec = g.precision > 0 ? g.precision : 24;
  FieldPtr K = base_field(p);
  PadicValue x = from_rational(K, parse_rat(o.value_str), prec);
  PadicValue w = teichmuller(x);
  if (g.format == Format::js) {
    json j;
    j["p"] = p.fits_slong_p() ? json(p.get_si()) : json(p.get_str());
    j["value"] = o.value_str;
    j["omega"] = value_json(w);
    emit(j);
  } else {
    std::cout << "omega(" << o.value_str << ") mod " << p << "^" << prec << " = " << rep_string(w)
              << "\n";
    std::cout << "digits: " << digit_string(w) << "\n";
  }
  return 0;
}

int run_explog(const Global& g, const PointOpts& o) {
  Int p = parse_int(o.p_str, "--p");
  long prec = g.precision > 0 ? g.precision : 24;
  FieldPtr K = base_field(p);
  PadicValue x = from_rational(K, parse_rat(o.value_str), prec);
  PadicValue r;
  if (o.fn == "log")
    r = log_p(x);
  else if (o.fn == "exp")
    r = exp_p(x);
  else if (o.fn == "sinh")
    r = sinh_p(x);
  else
    fail(errc::config, "--fn must be log, exp, or sinh");
  if (g.format == Format::js) {
    json j;
    j["p"] = p.fits_slong_p() ? json(p.get_si()) : json(p.get_str());
    j["fn"] = o.fn;
    j["value"] = o.value_str;
    j["result"] = value_json(r);
    emit(j);
  } else {
    std::cout << o.fn << "(" << o.value_str << ") mod " << p << "^" << r.precision() << " = "
              << rep_string(r) << "\n";
    std::cout << "digits: " << digit_string(r) << "\n";
    std::cout << "pi-valuation " << nu_string(r) << "\n";
  }
  return 0;
}

int code_for(errc c) {
  switch (c) {
    case errc::config:
    case errc::mismatch:
    case errc::domain:
      return 2;
    case errc::budget:
    case errc::unsupported:
      return 3;
    case errc::precision:
      return 4;
    default:
      return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"p-adic interpolation, limits, and residue densities of constant-recursive "
               "sequences"};
  app.require_subcommand(1);

  Global g;
  std::string fmt = "text";
  bool json_flag = false;
  app.add_option("--precision", g.precision, "working precision in base-p digits");
  app.add_option("--guard-digits", g.guard, "guard digits for series evaluation");
  app.add_option("--state-budget", g.budget, "cap on enumerated states in density mode");
  app.add_option("--format", fmt, "output format")->check(CLI::IsMember({"text", "json", "dot"}));
  app.add_flag("--json", json_flag, "shorthand for --format json");

  TermsOpts terms;
  auto* c_terms = app.add_subcommand("terms", "evaluate terms mod p^N");
  c_terms->fallthrough();
  add_spec_options(c_terms, terms.in);
  c_terms->add_option("--n", terms.n_str, "single index");
  c_terms->add_option("--n-max", terms.n_max, "all indices 0..n_max");
  c_terms->add_option("--n-list", terms.list_str, "comma separated indices");
  c_terms->add_option("--large-index", terms.large_str,
                      "a,b,n for the index a p^{fn} + b via matrix powers");
  c_terms->add_flag("--digits", terms.digits, "append base-p digit rows");

  SpecInput classify_in;
  auto* c_classify = app.add_subcommand("classify", "interpolability class and invariants");
  c_classify->fallthrough();
  add_spec_options(c_classify, classify_in);

  InterpOpts interp;
  auto* c_interp = app.add_subcommand("interp", "build the twisted interpolation family");
  c_interp->fallthrough();
  add_spec_options(c_interp, interp.in);
  c_interp->add_option("--eval", interp.eval_str, "evaluate s_{i,r} at an integer index");
  c_interp->add_option("--agree", interp.agree, "compare against terms up to n");

  LimitOpts limit;
  auto* c_limit = app.add_subcommand("limit", "p-adic limit of s(a p^{fn} + b)");
  c_limit->fallthrough();
  add_spec_options(c_limit, limit.in);
  c_limit->add_option("--a", limit.a_str, "coefficient a (default 1)");
  c_limit->add_option("--b", limit.b_str, "offset b (default 0)");
  c_limit->add_option("--check-poly", limit.poly_str,
                      "integer coefficients, leading first: 5,5,1 means 5x^2+5x+1");
  c_limit->add_option("--verify-terms", limit.verify_terms,
                      "check |s(a p^{fn} + b) - L|_p <= p^-n for n up to this");

  std::string verify_in = "-";
  auto* c_verify = app.add_subcommand("verify", "re-check a limit JSON's algebraic witness");
  c_verify->alias("verify-algebraic");
  c_verify->fallthrough();
  c_verify->add_option("--in", verify_in, "limit JSON file (- for stdin)");

  DensityOpts density;
  auto* c_density = app.add_subcommand("density", "attained-residue densities");
  c_density->fallthrough();
  add_spec_options(c_density, density.in);
  c_density->add_option("--alpha-max", density.alpha_max, "levels to enumerate (default 4)");
  c_density->add_flag("--exact", density.exact, "exact limiting density");

  TreeOpts tree;
  auto* c_tree = app.add_subcommand("tree", "residue tree of attained classes");
  c_tree->fallthrough();
  add_spec_options(c_tree, tree.in);
  c_tree->add_option("--alpha-max", tree.alpha_max, "levels (default 3)");
  c_tree->add_flag("--exact", tree.exact, "exact tree with full-coset marks");
  c_tree->add_option("--dot", tree.dot_path, "write DOT to this file");

  PointOpts omega;
  auto* c_omega = app.add_subcommand("omega", "Teichmueller representative in Z_p");
  c_omega->fallthrough();
  c_omega->add_option("--p", omega.p_str, "prime")->required();
  c_omega->add_option("--value", omega.value_str, "unit rational")->required();

  PointOpts explog;
  auto* c_explog = app.add_subcommand("explog", "p-adic log, exp, sinh on Q_p");
  c_explog->fallthrough();
  c_explog->add_option("--p", explog.p_str, "prime")->required();
  c_explog->add_option("--fn", explog.fn, "log, exp, or sinh");
  c_explog->add_option("--value", explog.value_str, "rational argument")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (json_flag) fmt = "json";
  g.format = fmt == "json" ? Format::js : fmt == "dot" ? Format::dot : Format::text;

  try {
    if (c_terms->parsed()) return run_terms(g, terms);
    if (c_classify->parsed()) return run_classify(g, classify_in);
    if (c_interp->parsed()) return run_interp(g, interp);
    if (c_limit->parsed()) return run_limit(g, limit);
    if (c_verify->parsed()) return run_verify(g, verify_in);
    if (c_density->parsed()) return run_density(g, density);
    if (c_tree->parsed()) return run_tree(g, tree);
    if (c_omega->parsed()) return run_omega(g, omega);
    if (c_explog->parsed()) return run_explog(g, explog);
  } catch (const padic_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
