/*
   Copyright 2026 the reclab authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef RECLAB_PAIRING_HPP
#define RECLAB_PAIRING_HPP

#include <optional>

#include "reclab/formal_group.hpp"
#include "reclab/symbols.hpp"

namespace reclab {

/// Element of kappa_n expressed by coordinates with respect to the fixed
/// torsion basis: h coordinates in C/pi^n C (h = 1 throughout this artifact,
/// coordinates mod p^n).
struct PairingValue {
    int level = 0;
    i64 modulus = 0;           // p^n
    std::vector<i64> coords;   // length h

    bool is_zero() const;
};

PairingValue pv_make(i64 p, int n, i64 coord);
PairingValue pv_add(const PairingValue& a, const PairingValue& b);
PairingValue pv_neg(const PairingValue& a);
PairingValue pv_scale(i64 k, const PairingValue& a);
bool pv_equal(const PairingValue& a, const PairingValue& b);
/// reduce a level-m value to level n <= m (coordinates mod p^n)
PairingValue pv_reduce(const PairingValue& a, int n);

/// log of a principal unit (v(u-1) >= 1), certified to the working precision.
FieldElement padic_log(const FieldElement& u);

/// Logarithm/exponential of a Lubin-Tate law via the functional equations
/// l(f(X)) = pi l(X) and e(pi X) = f(e(X)); exact rational coefficients.
USeries lt_log(const USeries& f, const FieldElement& pi, int deg);
USeries lt_exp(const USeries& f, const FieldElement& pi, int deg);

/// All roots of g in the maximal ideal of F, by digit lifting + Newton.
std::vector<FieldElement> element_roots(const USeries& g, const LocalField& F);

// --- classical engines (d = 1, L = Q_p(zeta_{p^n})) -----------------------

/// Eq.-(1)-type value: exponent Tr_{L/Qp}(-log u)/p^n mod p^n for
/// v_L(u-1) > 2 p^{n-1}.
PairingValue artin_hasse_classical(const FieldElement& u, int n);

/// psi(w) = -zeta_{p^n} w^{-1} g'(pi_n) for a representing series g of w.
FieldElement iwasawa_psi(const FieldElement& w, int n, const USeries& g);

/// Eq.-(2)-type value: exponent Tr(psi(w) log u)/p^n mod p^n. When g is
/// absent the canonical power-basis representation of w is used.
PairingValue iwasawa_pairing(const FieldElement& u, const FieldElement& w, int n,
                             const USeries* g = nullptr);

/// canonical representing polynomial of w over Z_p (flat cyclotomic fields)
USeries canonical_representation(const FieldElement& w);

// --- parameter planning ----------------------------------------------------

struct Rational {
    i64 num = 0;
    i64 den = 1;
};

struct PairingPlan {
    int n = 0, m = 0, k = 0, t = 0;
    int rho = 1;
    int kappa = 0; // admissibility witness
    Rational c1, c2;
    bool valid = false;
};

/// Exact evaluation of the level bounds: m from the closed formula, then the
/// smallest k (and t = 2k + rho + 1) meeting the sufficient inequalities.
/// vLp = v_L(p) for the coefficient field of the ambient; vD_L_K and
/// vD_K2rho1 are normalized different valuations (v/v(p)).
PairingPlan plan_parameters(int n, i64 p, int rho, int h, i64 qS, int vLp, Rational vD_L_K,
                            Rational vD_K2rho1, const Rational* c1_override = nullptr);

std::optional<int> admissible_witness(int n, int t, int rho);

// --- Lubin-Tate engine context ---------------------------------------------

/// Shared data for the higher engines over K_n{{T_1}}...{{T_{d-1}}} with the
/// auxiliary torsion level s >= n (fields live inside K_s).
struct PairingContext {
    i64 p = 0;
    int d = 1;
    int n = 1;
    int s = 1;
    LocalField tower; // Qp c K_n c K_s (nested) or the flat K_n when s = n
    LocalField Qp, Kn, Ks;
    LaurentField Ln, Ls;
    USeries f;      // isogeny over Qp
    FormalGroupLaw F;
    USeries logF;   // high-degree logarithm over Qp
    FieldElement e_s, e_n;     // compatible torsion generators in K_s
    FieldElement lprime_es;    // l'(e_s)
    FieldElement des_dtop;     // d e_s / d T_d in K_s
    bool cyclotomic_f = true;
};

struct ContextOptions {
    int prec_p = 0;   // 0: sized from n, s
    int window = 16;
    int dmax = 0;     // 0: sized from p, n
    int log_deg = 0;  // 0: sized from precision
};

PairingContext make_context(i64 p, int d, int n, int s, const USeries* custom_f,
                            const ContextOptions& opt);

/// x in F(mu at level n) embedded into the level-s field.
LaurentElement ctx_embed_x(const PairingContext& ctx, const LaurentElement& x);
LaurentElement ctx_log_of(const PairingContext& ctx, const LaurentElement& x_in_Ls);

// --- higher engines ----------------------------------------------------------

/// QL_s-type evaluation: [ T_{L_s/K}( QL_s(alpha) l(x) ) ](e_{f,n});
/// alpha lives over the level-s field, x over the level-n field.
PairingValue lubin_tate_wiles(const PairingContext& ctx, const MilnorSymbol& alpha,
                              const LaurentElement& x, int n);

/// Eq.-(5)-type value for L = K_n{{T...}} (context with s = n); enforces the
/// valuation condition on x.
PairingValue iwasawa_gen_higher(const PairingContext& ctx, const MilnorSymbol& alpha,
                                const LaurentElement& x);

/// The explicit derivation engine: value of (N_{M/L}(alpha), x) at level n from
/// Dlog built out of the invariant cbar (a Laurent element over the level-s
/// field). The cyclotomic closed form is cbar_cyclotomic.
PairingValue kolyvagin_pairing(const PairingContext& ctx, const MilnorSymbol& alpha,
                               const LaurentElement& x, int n, const LaurentElement* cbar);

LaurentElement cbar_cyclotomic(const PairingContext& ctx);

/// Eq.-(8)/(9)-type values on symbols {u_1,...,u_{d-1}, e_{g,n} or zeta}:
/// units u_i of the level-n field, x in F(mu). g must be a Lubin-Tate
/// polynomial for pi = p; xi defaults to pi.
struct HigherAhOptions {
    const USeries* g = nullptr;       // defaults to the context isogeny
    const FieldElement* xi = nullptr; // defaults to pi = p
    bool stronger_form = false;       // true: Eq. (9) kernel 1/p^n (F_m only)
};
PairingValue artin_hasse_higher(const PairingContext& ctx, const std::vector<LaurentElement>& units,
                                const LaurentElement& x, const HigherAhOptions& opt);

/// Direct coefficient-extraction route for the {T_1,...,T_{d-1}, zeta_{p^n}}
/// symbol: [ T( l(x) / (p^n T_1...T_{d-1}) ) ](e_{f,n}).
PairingValue zinoviev_direct(const PairingContext& ctx, const LaurentElement& x);

/// Fit cbar from supplied pairing values T(log(u_j) cbar) = val_j over a
/// spanning set of principal units; solves a linear system mod p^k.
LaurentElement cbar_fit(const PairingContext& ctx, const std::vector<LaurentElement>& us,
                        const std::vector<i64>& values, int k, int support_radius);

} // namespace reclab

#endif
