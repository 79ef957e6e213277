#include "padicseq/density.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

#include "padicseq/analytic.hpp"
#include "padicseq/interpolation.hpp"

namespace padic {

namespace {

Int mod_nonneg(const Int& n, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), n.get_mpz_t(), m.get_mpz_t());
  return r;
}

// p-integral rational reduced mod m = p^alpha
Int rat_mod(const Rat& x, const Int& m) {
  Int num = mod_nonneg(x.get_num(), m);
  Int dinv;
  if (!mpz_invert(dinv.get_mpz_t(), x.get_den().get_mpz_t(), m.get_mpz_t()))
    fail(errc::internal, "denominator not invertible at this modulus");
  return mod_nonneg(num * dinv, m);
}

Rat make_rat(const Int& num, const Int& den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

struct Orbit {
  std::vector<Int> residues;             // sorted
  std::map<Int, std::vector<Int>> hits;  // residue -> first attaining indices
};

Orbit run_orbit(const RecurrenceSpec& spec, long alpha, long budget,
                size_t max_witnesses = 1) {
  Int m = pow_int(spec.p, alpha);
  int l = spec.order;
  std::vector<Int> coef(l), st(l);
  for (int j = 0; j < l; ++j) coef[j] = rat_mod(spec.coeffs[j], m);
  for (int j = 0; j < l; ++j) st[j] = rat_mod(spec.initial[j], m);

  std::unordered_set<std::string> seen;
  Orbit out;
  long visited = 0;
  for (Int n = 0;; ++n) {
    std::string key;
    for (const Int& c : st) {
      key += c.get_str(16);
      key += '|';
    }
    if (!seen.insert(std::move(key)).second) break;
    if (++visited > budget) fail(errc::budget, "alpha too large for exact enumeration");
    std::vector<Int>& w = out.hits[st[0]];
    if (w.size() < max_witnesses) w.push_back(n);
    Int next = 0;
    for (int j = 0; j < l; ++j) next += coef[j] * st[j];
    next = mod_nonneg(-next, m);
    st.erase(st.begin());
    st.push_back(std::move(next));
  }
  for (auto& [res, w] : out.hits) out.residues.push_back(res);
  return out;
}

ResidueLevel level_from(const Int& p, long alpha, std::vector<Int> residues) {
  ResidueLevel lvl;
  lvl.alpha = alpha;
  lvl.count = Int(residues.size());
  lvl.density = make_rat(lvl.count, pow_int(p, alpha));
  lvl.residues = std::move(residues);
  return lvl;
}

ResidueLevel predicted_level(const Int& p, long alpha, const Int& count) {
  ResidueLevel lvl;
  lvl.alpha = alpha;
  lvl.count = count;
  lvl.density = make_rat(count, pow_int(p, alpha));
  return lvl;
}

// ---------------------------------------------------------------------------
// exact engine for the order-2 split class with a_0 = +-1 and unit weights.
//
// With u = c_1 omega_1^i exp(x Lambda) the image of s_i is
//   { u + E_i / u : u in Y0_i (1 + p^t Z_p) },  E_i = eps^i E,  E = c_1 c_2,
// since Lambda_2 = -Lambda_1 when the root product is a root of unity.  A
// coset zbar mod p^alpha meets the image iff some root of u^2 - z u + E_i
// lands in the domain coset, which the discriminant decides exactly.

enum class Cls { in, out, refine };

struct TreeBuf {
  std::map<long, std::set<Int>> full;  // level -> cosets certified inside
  std::map<long, std::set<Int>> open;  // level -> cosets still refining
  std::vector<TreeEdge> edges;

  void merge(const TreeBuf& other) {
    for (auto& [a, s] : other.full) full[a].insert(s.begin(), s.end());
    for (auto& [a, s] : other.open) open[a].insert(s.begin(), s.end());
    edges.insert(edges.end(), other.edges.begin(), other.edges.end());
  }
};

struct ChainAnchor {
  Int zfull;  // branch point mod p^sprec
  Int ustar;  // z*/2 mod p^t
};

struct RouteA {
  Int p;
  long pl = 0;
  int eps = 1;  // a_0
  Rat E;
  long t = 1;            // nu(lambda)
  std::vector<Int> Y0t;  // c_1 omega^i mod p^t
  Int pt;
  long record_depth = 8;
  long threshold = 8;
  long depth_cap = 40;
  FieldPtr base;
  long sprec = 0;
  std::map<Int, ChainAnchor> anchors;

  bool closed = true;
  Rat mass = 0;
  Rat outer_extra = 0;
  Rat certified = 0;
  std::vector<DensityComponent> chain_comps;
  std::vector<std::string> trace;
  TreeBuf tree;

  Rat Ei(long i) const { return (eps == -1 && (i & 1)) ? Rat(-E) : E; }

  Int sqrt_mod(const Rat& u, long k) const {
    PadicValue v = from_rational(base, u, k + 1);
    return mod_nonneg(sqrt(v).coeff(0), pow_int(p, k));
  }

  Cls classify(long i, long alpha, const Int& zbar) const {
    Rat d = Rat(zbar) * Rat(zbar) - 4 * Ei(i);
    if (d == 0) return Cls::refine;
    long w = nu_p(p, d);
    if (w >= alpha) return Cls::refine;
    if (w % 2 != 0) return Cls::out;
    Rat U = d / Rat(pow_int(p, w));
    if (mpz_legendre(rat_mod(U, p).get_mpz_t(), p.get_mpz_t()) != 1) return Cls::out;
    if (alpha - w / 2 < t) return Cls::refine;
    Int su = sqrt_mod(U, t + 2) * pow_int(p, w / 2);
    Int inv2;
    mpz_invert(inv2.get_mpz_t(), Int(2).get_mpz_t(), pt.get_mpz_t());
    for (int sign : {1, -1}) {
      Int u = mod_nonneg((zbar + sign * su) * inv2, pt);
      if (u == Y0t[i]) return Cls::in;
    }
    return Cls::out;
  }

  // ordinary refinement: the discriminant valuation w is pinned below alpha,
  // so classification resolves once alpha - w/2 reaches t
  Rat walk_sub(const Int& zbar, long alpha, const std::vector<long>& actives,
               TreeBuf& buf) {
    if (alpha > depth_cap) {
      closed = false;
      outer_extra += make_rat(1, pow_int(p, alpha - 1));
      trace.push_back("no closed form found below coset " + zbar.get_str() +
                      " at depth " + std::to_string(alpha - 1));
      return 0;
    }
    std::vector<long> refs;
    for (long i : actives) {
      Cls c = classify(i, alpha, zbar);
      if (c == Cls::in) {
        if (alpha <= record_depth) buf.full[alpha].insert(zbar);
        return make_rat(1, pow_int(p, alpha));
      }
      if (c == Cls::refine) refs.push_back(i);
    }
    if (refs.empty()) return 0;
    Rat sub = 0;
    TreeBuf local;
    bool any_child = false;
    Int step = pow_int(p, alpha);
    for (long d = 0; d < pl; ++d) {
      Int child = zbar + d * step;
      TreeBuf cb;
      Rat cm = walk_sub(child, alpha + 1, refs, cb);
      if (cm != 0 || !cb.full.empty() || !cb.open.empty()) {
        sub += cm;
        local.merge(cb);
        any_child = true;
        if (alpha < record_depth) local.edges.push_back({alpha, zbar, Int(d), child});
      }
    }
    if (!any_child) return 0;  // the whole subtree misses the image
    if (alpha <= record_depth) local.open[alpha].insert(zbar);
    buf.merge(local);
    return sub;
  }

  // refinement chain along the branch point z*: non-continuation children at
  // an even level alpha shed (p-1)/2 certified cosets when z*/2 lies in the
  // domain of some active index, and none otherwise
  void chain_walk(const Int& C, const std::vector<long>& actives) {
    const ChainAnchor& an = anchors.at(C);
    bool matched = false;
    for (long i : actives)
      if (Y0t[i] == an.ustar) matched = true;
    Int cnt = matched ? (p - 1) / 2 : Int(0);

    Rat cmass = 0;
    TreeBuf buf;
    Int Z = C;
    long T = threshold + 1;
    bool pattern_ok = true;
    bool absorbed = false;
    if (record_depth >= 1) buf.open[1].insert(C);
    for (long alpha = 1; alpha <= T; ++alpha) {
      Int step = pow_int(p, alpha);
      Int d0 = mod_nonneg(an.zfull / step, p);
      Int cont = Z + d0 * step;
      // the continuation coset can be swallowed whole by a non-anchored
      // index whose image covers it; then the chain ends inside it
      for (long i : actives)
        if (classify(i, alpha + 1, cont) == Cls::in) absorbed = true;
      if (absorbed) {
        cmass += make_rat(1, step * p);
        if (alpha + 1 <= record_depth) {
          buf.full[alpha + 1].insert(cont);
          buf.edges.push_back({alpha, Z, d0, cont});
        }
        break;
      }
      long shed = 0, pend = 0;
      for (long d = 0; d < pl; ++d) {
        if (Int(d) == d0) continue;
        Int child = Z + d * step;
        bool any_in = false;
        std::vector<long> refs;
        for (long i : actives) {
          Cls c = classify(i, alpha + 1, child);
          if (c == Cls::in) any_in = true;
          else if (c == Cls::refine) refs.push_back(i);
        }
        if (any_in) {
          ++shed;
          cmass += make_rat(1, step * p);
          if (alpha < record_depth) {
            buf.full[alpha + 1].insert(child);
            buf.edges.push_back({alpha, Z, Int(d), child});
          }
        } else if (!refs.empty()) {
          ++pend;
          TreeBuf cb;
          Rat cm = walk_sub(child, alpha + 1, refs, cb);
          if (cm != 0 || !cb.full.empty() || !cb.open.empty()) {
            cmass += cm;
            buf.merge(cb);
            if (alpha < record_depth) buf.edges.push_back({alpha, Z, Int(d), child});
          }
        }
      }
      if (alpha >= T - 1) {
        long expect = (alpha % 2 == 0) ? mpz_get_si(cnt.get_mpz_t()) : 0;
        if (shed != expect || pend != 0) pattern_ok = false;
      }
      if (alpha + 1 <= record_depth) {
        buf.open[alpha + 1].insert(cont);
        buf.edges.push_back({alpha, Z, d0, cont});
      }
      Z = cont;
    }
    if (!absorbed) {
      if (!pattern_ok) {
        closed = false;
        outer_extra += make_rat(1, pow_int(p, T));
        trace.push_back("no closed form found at coset " + C.get_str() +
                        ": refinement pattern did not stabilize");
        mass += cmass;
        tree.merge(buf);
        return;
      }
      // sheds continue from even levels above the walked range
      long L1 = T + 1;
      if (L1 % 2 != 0) ++L1;
      cmass += make_rat(cnt, pow_int(p, L1 + 1)) * make_rat(p * p, p * p - 1);
    }
    if (cmass == 0) {
      trace.push_back("coset " + C.get_str() +
                      ": refinement closes empty, branch point unattained");
      return;  // prune: nothing below this coset meets the image
    }
    mass += cmass;
    tree.merge(buf);
    chain_comps.push_back({"refinement tail at coset " + C.get_str(), cmass});
    trace.push_back("coset " + C.get_str() + ": geometric refinement sheds " +
                    cnt.get_str() + " certified cosets per level pair");
  }
};

struct RouteAOutcome {
  bool applicable = false;
  RouteA eng;
};

RouteAOutcome try_route_a(const RecurrenceSpec& spec, const TwistedInterpolation& T,
                          long record_depth) {
  RouteAOutcome out;
  const SpectralData& sd = T.spectral;
  const Int& p = spec.p;
  bool gate = spec.order == 2 && p != 2 && p <= 2000 && sd.field->d == 1 &&
              sd.roots.size() == 2 && T.branches.size() == 2 &&
              (spec.coeffs[0] == Rat(1) || spec.coeffs[0] == Rat(-1));
  if (gate)
    for (const SpectralRoot& r : sd.roots)
      if (!r.unit || r.zero || r.multiplicity != 1) gate = false;
  if (gate)
    for (const UnitBranch& br : T.branches) {
      Valuation cv = sv_valuation(br.root.binet[0]);
      if (!cv.bounded || cv.nu != 0) gate = false;
      if (!valuation(br.lambda).bounded) gate = false;
    }
  if (!gate) return out;

  RouteA& eng = out.eng;
  eng.p = p;
  eng.pl = mpz_get_si(p.get_mpz_t());
  eng.eps = (spec.coeffs[0] == Rat(1)) ? 1 : -1;
  // E = c1 c2 = -(s1^2 + a1 s0 s1 + a0 s0^2) / (a1^2 - 4 a0), exact
  const Rat& a0 = spec.coeffs[0];
  const Rat& a1 = spec.coeffs[1];
  const Rat& s0 = spec.initial[0];
  const Rat& s1 = spec.initial[1];
  eng.E = -(s1 * s1 + a1 * s0 * s1 + a0 * s0 * s0) / (a1 * a1 - 4 * a0);
  if (nu_p(p, eng.E) != 0) fail(errc::internal, "unit weights with non-unit product");
  eng.t = valuation(T.branches[0].lambda).nu;
  eng.record_depth = record_depth;
  eng.threshold = std::max({8L, 2 * eng.t + 4, record_depth});
  eng.sprec = eng.threshold + eng.t + 12;
  eng.pt = pow_int(p, eng.t);
  eng.base = base_field(p);

  // rebuild at engine precision for Y0 = c1 omega^i mod p^t
  RecurrenceSpec espec = spec;
  espec.precision = std::max(spec.precision, eng.sprec);
  TwistedInterpolation TE = build_interpolation(espec);
  if (valuation(TE.branches[0].lambda).nu != eng.t)
    fail(errc::internal, "lambda valuation moved under refinement");
  PadicValue y = sv_to_value(sv_normalize(TE.branches[0].root.binet[0]));
  const PadicValue& om = TE.branches[0].omega;
  for (long i = 0; i + 1 < eng.pl; ++i) {
    eng.Y0t.push_back(mod_nonneg(y.coeff(0), eng.pt));
    y = y * om;
  }

  // branch-point cosets: z*^2 = 4 E_cls, one class per sign of E_i
  Int inv2;
  mpz_invert(inv2.get_mpz_t(), Int(2).get_mpz_t(), eng.pt.get_mpz_t());
  Int psp = pow_int(p, eng.sprec);
  for (long par : {0L, 1L}) {
    if (par == 1 && eng.eps == 1) break;
    Rat ec = par == 1 ? Rat(-eng.E) : eng.E;
    PadicValue v = from_rational(eng.base, 4 * ec, eng.sprec + 2);
    if (!is_square(v)) continue;
    Int zpos = mod_nonneg(sqrt(v).coeff(0), psp);
    for (int sign : {1, -1}) {
      Int zf = sign == 1 ? zpos : psp - zpos;
      Int C = mod_nonneg(zf, p);
      ChainAnchor an{zf, mod_nonneg(zf * inv2, eng.pt)};
      if (!eng.anchors.emplace(C, an).second)
        fail(errc::internal, "two branch points share a level-1 coset");
    }
  }

  for (long zb = 0; zb < eng.pl; ++zb) {
    Int C(zb);
    bool ins = false;
    std::vector<long> refs;
    for (long i = 0; i + 1 < eng.pl; ++i) {
      Cls c = eng.classify(i, 1, C);
      if (c == Cls::in) ins = true;
      else if (c == Cls::refine) refs.push_back(i);
    }
    if (ins) {
      eng.certified += make_rat(1, p);
      eng.mass += make_rat(1, p);
      if (eng.record_depth >= 1) eng.tree.full[1].insert(C);
    } else if (!refs.empty()) {
      if (eng.anchors.count(C)) {
        eng.chain_walk(C, refs);
      } else {
        TreeBuf cb;
        Rat cm = eng.walk_sub(C, 1, refs, cb);
        eng.mass += cm;
        eng.tree.merge(cb);
      }
    }
  }
  out.applicable = true;
  return out;
}

PadicValue interp_eval_derivative(const TwistedInterpolation& T, const ResidueIndex& idx,
                                  const PadicValue& x) {
  const FieldPtr& K = T.spectral.field;
  PadicValue xe = embed(x, K);
  PadicValue nval =
      xe * from_int(K, idx.q, xe.precision()) + from_int(K, idx.r, xe.precision());
  bool started = false;
  ScaledValue acc;
  PadicValue qv = from_int(K, T.q, xe.precision());
  for (const UnitBranch& br : T.branches) {
    ScaledValue c = binet_coefficient_at(br.root, nval);
    ScaledValue inner = sv_mul(c, sv_make(br.lambda));
    // d/dx c(qx+r) = q c'(qx+r)
    bool cp_started = false;
    ScaledValue cp;
    PadicValue npow = one(K, nval.precision());
    for (size_t k = 1; k < br.root.binet.size(); ++k) {
      ScaledValue term = sv_mul(
          br.root.binet[k], sv_make(npow * from_int(K, Int(k), nval.precision())));
      cp = cp_started ? sv_add(cp, term) : term;
      cp_started = true;
      npow = npow * nval;
    }
    if (cp_started) inner = sv_add(inner, sv_mul(cp, sv_make(qv)));
    PadicValue twist = pow(br.omega, idx.i - idx.r) * pow(br.root.beta, idx.r);
    PadicValue ex = exp_p(xe * br.lambda);
    ScaledValue term = sv_mul(inner, sv_make(twist * ex));
    acc = started ? sv_add(acc, term) : term;
    started = true;
  }
  if (!started) return zero(K, xe.precision());
  return sv_to_value(sv_normalize(acc));
}

// conjugate-stability of the spectral data, so each s_i maps Z_p into Z_p.
// In the ramified quadratic sigma(pi) = -pi, so conjugating val / pi^shift
// flips the sign of val when shift is odd.
bool sigma_stable(const SpectralData& sd) {
  if (sd.field->d == 1) return true;
  if (sd.roots.size() != 2) return false;
  const SpectralRoot& r0 = sd.roots[0];
  const SpectralRoot& r1 = sd.roots[1];
  if (r0.multiplicity != r1.multiplicity) return false;
  if (!equals(conj(r0.beta), r1.beta)) return false;
  bool pi_flips = sd.field->e == 2;
  for (size_t k = 0; k < r0.binet.size(); ++k) {
    ScaledValue a = sv_normalize(r0.binet[k]);
    ScaledValue b = sv_normalize(r1.binet[k]);
    if (a.shift != b.shift) return false;
    PadicValue sig = conj(a.val);
    if (pi_flips && a.shift % 2 != 0) sig = -sig;
    if (!equals(sig, b.val)) return false;
  }
  return true;
}

bool finite_image_gate(const TwistedInterpolation& T) {
  if (T.branches.empty()) return false;
  for (const UnitBranch& br : T.branches) {
    if (valuation(br.lambda).bounded) return false;
    if (br.root.multiplicity != 1) return false;
  }
  return true;
}

std::string digit_string(const Int& p, long alpha, const Int& residue) {
  std::string s;
  Int r = residue;
  for (long k = 0; k < alpha; ++k) {
    Int d = mod_nonneg(r, p);
    if (k) s += ' ';
    s += d.get_str();
    r = (r - d) / p;
  }
  return s;
}

}  // namespace

ResidueLevel attained_residues(const RecurrenceSpec& spec, long alpha,
                               long state_budget) {
  spec.validate();
  if (alpha < 1) fail(errc::config, "alpha must be at least 1");
  Orbit orb = run_orbit(spec, alpha, state_budget);
  return level_from(spec.p, alpha, std::move(orb.residues));
}

DensityReport density_profile(const RecurrenceSpec& spec, long alpha_max,
                              long state_budget) {
  if (alpha_max < 1) fail(errc::config, "alpha must be at least 1");
  DensityReport rep;
  rep.mode = DensityMode::empirical;
  for (long a = 1; a <= alpha_max; ++a) {
    rep.profile.push_back(attained_residues(spec, a, state_budget));
    if (a > 1 && rep.profile[a - 1].density > rep.profile[a - 2].density)
      fail(errc::internal, "density profile failed to be non-increasing");
  }
  return rep;
}

DensityReport exact_limiting_density(const RecurrenceSpec& spec) {
  spec.validate();
  TwistedInterpolation T = build_interpolation(spec);
  const Int& p = spec.p;

  DensityReport rep;
  rep.mode = DensityMode::exact;

  if (T.cls.tag == InterpTag::IdenticallyZero) {
    rep.has_exact = true;
    rep.exact_limit = 0;
    rep.components.push_back({"identically zero", Rat(0)});
    rep.trace.push_back("every term vanishes; the image is {0}");
    for (long a = 1; a <= 8; ++a) rep.profile.push_back(predicted_level(p, a, Int(1)));
    return rep;
  }
  if (T.cls.tag != InterpTag::ExactTwisted)
    fail(errc::unsupported, "exact density unsupported; use empirical mode");

  if (finite_image_gate(T)) {
    // every characteristic root is a root of unity: the sequence is periodic
    rep.has_exact = true;
    rep.exact_limit = 0;
    rep.components.push_back({"finite image", Rat(0)});
    rep.trace.push_back(
        "all characteristic roots are roots of unity; the image is finite");
    for (long a = 1; a <= 8; ++a) {
      ResidueLevel lvl = attained_residues(spec, a);
      lvl.residues.clear();
      rep.profile.push_back(std::move(lvl));
    }
    return rep;
  }

  RouteAOutcome oa = try_route_a(spec, T, 8);
  if (oa.applicable) {
    RouteA& eng = oa.eng;
    rep.trace = eng.trace;
    if (eng.certified != 0)
      rep.components.push_back({"certified cosets", eng.certified});
    for (auto& c : eng.chain_comps) rep.components.push_back(c);
    if (eng.closed) {
      rep.has_exact = true;
      rep.exact_limit = eng.mass;
      for (long a = 1; a <= eng.record_depth; ++a) {
        Int cnt = 0;
        for (auto& [lvl, s] : eng.tree.full)
          if (lvl <= a) cnt += Int(s.size()) * pow_int(p, a - lvl);
        auto it = eng.tree.open.find(a);
        if (it != eng.tree.open.end()) cnt += Int(it->second.size());
        rep.profile.push_back(predicted_level(p, a, cnt));
        if (rep.exact_limit > rep.profile.back().density)
          fail(errc::internal, "exact limit exceeds a predicted level density");
      }
    } else {
      rep.has_exact = false;
      rep.has_bracket = true;
      rep.inner = eng.mass;
      rep.outer = eng.mass + eng.outer_extra;
      rep.trace.push_back("no closed form found");
    }
    return rep;
  }

  // saturation certificate: a coset mod p^L lies entirely inside the image
  // when a witness n with s(n) in the coset has Newton margin
  // L e > 2 nu_pi(s'(x_n)); uncertified cosets deepen until all close
  if (sigma_stable(T.spectral)) {
    long e = T.spectral.field->e;
    long xprec = std::max(1L, T.spectral.precision / e);
    auto margin_at = [&](const Int& n, long L) {
      ResidueIndex idx = resolve_index(T, n);
      Int xi = (n - idx.r) / idx.q;
      PadicValue x = from_int(base_field(p), xi, xprec);
      Valuation dv = valuation(interp_eval_derivative(T, idx, x));
      return dv.bounded && L * e > 2 * dv.nu;
    };

    bool applicable = true;
    std::set<Int> uncert = {Int(0)};  // level-0 root: everything open
    long closed_at = 0;
    std::vector<std::string> route_trace;
    for (long L = 1; applicable && L <= 12; ++L) {
      Orbit orb;
      try {
        orb = run_orbit(spec, L, kDefaultStateBudget, 6);
      } catch (const padic_error&) {
        applicable = false;
        break;
      }
      Int step = pow_int(p, L - 1);
      long pl2 = mpz_get_si(p.get_mpz_t());
      std::set<Int> next;
      for (const Int& parent : uncert) {
        for (long d = 0; d < pl2 && applicable; ++d) {
          Int C = parent + d * step;
          auto it = orb.hits.find(C);
          if (it == orb.hits.end()) {
            applicable = false;  // an open coset misses the sequence entirely
            break;
          }
          bool cert = false;
          for (const Int& n : it->second)
            if (margin_at(n, L)) {
              cert = true;
              break;
            }
          if (!cert) next.insert(C);
        }
      }
      if (!applicable) break;
      route_trace.push_back("level " + std::to_string(L) + ": " +
                            std::to_string(next.size()) + " cosets still open");
      if (next.empty()) {
        closed_at = L;
        break;
      }
      uncert = std::move(next);
      if (uncert.size() > 50000) applicable = false;
    }
    if (applicable && closed_at > 0) {
      rep.has_exact = true;
      rep.exact_limit = 1;
      rep.components.push_back(
          {"saturation by level " + std::to_string(closed_at), Rat(1)});
      rep.trace = std::move(route_trace);
      rep.trace.push_back("every coset mod p^" + std::to_string(closed_at) +
                          " certified inside the image by a Newton margin");
      for (long a = 1; a <= 8; ++a)
        rep.profile.push_back(predicted_level(p, a, pow_int(p, a)));
      return rep;
    }
  }

  fail(errc::unsupported, "exact density unsupported; use empirical mode");
}

ResidueTree residue_tree(const RecurrenceSpec& spec, long alpha_max, DensityMode mode,
                         long state_budget) {
  if (alpha_max < 1) fail(errc::config, "alpha must be at least 1");
  ResidueTree tree;
  tree.mode = mode;
  tree.p = spec.p;

  auto empirical_levels = [&] {
    for (long a = 1; a <= alpha_max; ++a)
      tree.levels.push_back(attained_residues(spec, a, state_budget));
    for (long a = 1; a < alpha_max; ++a) {
      Int step = pow_int(spec.p, a);
      std::set<Int> parents(tree.levels[a - 1].residues.begin(),
                            tree.levels[a - 1].residues.end());
      for (const Int& child : tree.levels[a].residues) {
        Int parent = mod_nonneg(child, step);
        if (!parents.count(parent))
          fail(errc::internal, "residue levels violate the projection invariant");
        tree.edges.push_back({a, parent, (child - parent) / step, child});
      }
    }
  };

  if (mode == DensityMode::empirical) {
    spec.validate();
    empirical_levels();
    return tree;
  }

  spec.validate();
  TwistedInterpolation T = build_interpolation(spec);
  if (T.cls.tag == InterpTag::IdenticallyZero) {
    Int z(0);
    for (long a = 1; a <= alpha_max; ++a) {
      tree.levels.push_back(level_from(spec.p, a, {z}));
      if (a < alpha_max) tree.edges.push_back({a, z, Int(0), z});
    }
    return tree;
  }
  if (T.cls.tag != InterpTag::ExactTwisted)
    fail(errc::unsupported, "exact density unsupported; use empirical mode");

  if (finite_image_gate(T)) {
    empirical_levels();  // the exact image is the (finite) orbit itself
    return tree;
  }

  RouteAOutcome oa = try_route_a(spec, T, alpha_max);
  if (oa.applicable) {
    RouteA& eng = oa.eng;
    if (!eng.closed)
      fail(errc::unsupported, "exact density unsupported; use empirical mode");
    for (long a = 1; a <= alpha_max; ++a) {
      std::vector<Int> nodes;
      auto fit = eng.tree.full.find(a);
      if (fit != eng.tree.full.end())
        nodes.insert(nodes.end(), fit->second.begin(), fit->second.end());
      auto oit = eng.tree.open.find(a);
      if (oit != eng.tree.open.end())
        nodes.insert(nodes.end(), oit->second.begin(), oit->second.end());
      std::sort(nodes.begin(), nodes.end());
      tree.levels.push_back(level_from(spec.p, a, std::move(nodes)));
      if (fit != eng.tree.full.end())
        for (const Int& r : fit->second) tree.full_marks.insert({a, r});
    }
    for (const TreeEdge& e : eng.tree.edges)
      if (e.alpha < alpha_max) tree.edges.push_back(e);
    std::sort(tree.edges.begin(), tree.edges.end(),
              [](const TreeEdge& a, const TreeEdge& b) {
                return std::tie(a.alpha, a.parent, a.digit) <
                       std::tie(b.alpha, b.parent, b.digit);
              });
    return tree;
  }

  DensityReport rep = exact_limiting_density(spec);  // saturation or throw
  if (rep.has_exact && rep.exact_limit == 1) {
    std::vector<Int> all;
    long pl = mpz_get_si(spec.p.get_mpz_t());
    for (long r = 0; r < pl; ++r) all.push_back(Int(r));
    tree.levels.push_back(level_from(spec.p, 1, std::move(all)));
    for (const Int& r : tree.levels[0].residues) tree.full_marks.insert({1, r});
    return tree;
  }
  fail(errc::unsupported, "exact density unsupported; use empirical mode");
}

bool bracket_check(const DensityReport& exact_report, const DensityReport& profile) {
  if (!exact_report.has_exact) return false;
  for (const ResidueLevel& lvl : profile.profile)
    if (exact_report.exact_limit > lvl.density) return false;
  size_t n = std::min(exact_report.profile.size(), profile.profile.size());
  for (size_t k = 0; k < n; ++k)
    if (exact_report.profile[k].density != profile.profile[k].density) return false;
  return true;
}

std::string tree_to_dot(const ResidueTree& tree) {
  std::string out = "digraph residue_tree {\n  rankdir=TB;\n";
  out += "  root [label=\"Z_" + tree.p.get_str() + "\" shape=plaintext];\n";
  for (const ResidueLevel& lvl : tree.levels) {
    for (const Int& r : lvl.residues) {
      bool full = tree.full_marks.count({lvl.alpha, r}) != 0;
      out += "  n" + std::to_string(lvl.alpha) + "_" + r.get_str() + " [label=\"" +
             r.get_str() + "\\n(" + digit_string(tree.p, lvl.alpha, r) + ")\" shape=" +
             (full ? "box" : "ellipse") + "];\n";
    }
  }
  if (!tree.levels.empty())
    for (const Int& r : tree.levels[0].residues)
      out += "  root -> n1_" + r.get_str() + " [label=\"" + r.get_str() + "\"];\n";
  for (const TreeEdge& e : tree.edges)
    out += "  n" + std::to_string(e.alpha) + "_" + e.parent.get_str() + " -> n" +
           std::to_string(e.alpha + 1) + "_" + e.child.get_str() + " [label=\"" +
           e.digit.get_str() + "\"];\n";
  out += "}\n";
  return out;
}

std::string tree_to_text(const ResidueTree& tree) {
  std::map<std::pair<long, Int>, std::vector<TreeEdge>> children;
  for (const TreeEdge& e : tree.edges) children[{e.alpha, e.parent}].push_back(e);
  for (auto& [k, v] : children)
    std::sort(v.begin(), v.end(),
              [](const TreeEdge& a, const TreeEdge& b) { return a.digit < b.digit; });

  std::string out = "Z_" + tree.p.get_str() + "\n";
  auto emit = [&](auto&& self, long alpha, const Int& r) -> void {
    out += std::string(2 * alpha, ' ') + r.get_str() + " (" +
           digit_string(tree.p, alpha, r) + ")";
    if (tree.full_marks.count({alpha, r})) out += " [full]";
    out += "\n";
    auto it = children.find({alpha, r});
    if (it != children.end())
      for (const TreeEdge& e : it->second) self(self, alpha + 1, e.child);
  };
  if (!tree.levels.empty())
    for (const Int& r : tree.levels[0].residues) emit(emit, 1, r);
  return out;
}

}  // namespace padic
