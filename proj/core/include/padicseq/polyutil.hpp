#pragma once

#include <utility>
#include <vector>

#include "padicseq/localfield.hpp"

namespace padic::poly {

// Dense univariate polynomials, constant term first.  QPoly holds exact
// rationals, FpPoly residues in [0, p), ZPoly residues mod a power of p.
// The zero polynomial is the empty vector, with degree -1.
using QPoly = std::vector<Rat>;
using FpPoly = std::vector<Int>;
using ZPoly = std::vector<Int>;

QPoly q_trim(QPoly f);
int q_deg(const QPoly& f);
QPoly q_add(const QPoly& a, const QPoly& b);
QPoly q_sub(const QPoly& a, const QPoly& b);
QPoly q_mul(const QPoly& a, const QPoly& b);
QPoly q_scale(const QPoly& a, const Rat& s);
QPoly q_derivative(const QPoly& f);
Rat q_eval(const QPoly& f, const Rat& x);
QPoly q_monic(QPoly f);
void q_divmod(const QPoly& a, const QPoly& b, QPoly& quo, QPoly& rem);
QPoly q_gcd(QPoly a, QPoly b);  // monic unless both inputs are zero

// Yun decomposition: f = lc(f) * prod out[k]^(k+1) with every out[k] monic
// and squarefree, pairwise coprime.  out[k] == {1} where nothing has that
// multiplicity.  f must be nonzero.
std::vector<QPoly> squarefree_decomposition(const QPoly& f);

FpPoly fp_trim(FpPoly f);
int fp_deg(const FpPoly& f);
FpPoly fp_from_q(const QPoly& f, const Int& p);  // denominators prime to p
FpPoly fp_add(const FpPoly& a, const FpPoly& b, const Int& p);
FpPoly fp_sub(const FpPoly& a, const FpPoly& b, const Int& p);
FpPoly fp_mul(const FpPoly& a, const FpPoly& b, const Int& p);
FpPoly fp_monic(FpPoly f, const Int& p);
void fp_divmod(const FpPoly& a, const FpPoly& b, const Int& p, FpPoly& quo, FpPoly& rem);
FpPoly fp_gcd(FpPoly a, FpPoly b, const Int& p);
// monic g = gcd(a, b) together with u, v satisfying u a + v b = g
void fp_xgcd(const FpPoly& a, const FpPoly& b, const Int& p, FpPoly& g, FpPoly& u,
             FpPoly& v);
Int fp_eval(const FpPoly& f, const Int& x, const Int& p);

// Factorization into monic irreducibles with multiplicities, by trial division
// against enumerated monic candidates of increasing degree.  Sized for the
// small primes this project works at; the candidate count is capped.
std::vector<std::pair<FpPoly, int>> fp_factor(FpPoly f, const Int& p);

// Hensel lifting of a coprime factor pair: f monic mod p^K, f == g0 h0 mod p
// with g0, h0 monic and coprime mod p.  Returns monic G, H with f == G H
// mod p^K, G == g0 and H == h0 mod p.
struct LiftedPair {
  ZPoly g, h;
};
LiftedPair hensel_factor_pair(const ZPoly& f, const FpPoly& g0, const FpPoly& h0,
                              const Int& p, long K);

// residue of a p-integral rational mod p^K
Int z_residue(const Rat& x, const Int& p, long K);
ZPoly z_from_q(const QPoly& f, const Int& p, long K);

}  // namespace padic::poly
