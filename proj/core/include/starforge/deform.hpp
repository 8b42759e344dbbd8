#pragma once

#include "starforge/build.hpp"

#include <optional>
#include <vector>

// Deformations are presentations with x-degree bound D > 1; the invariants of
// star.hpp apply to them unchanged.
namespace starforge {

// star (x) K[x]/(x^D): the trivial deformation of a star.
Presentation make_product_deformation(const Presentation& star, int xdeg);

// I_C (elements vanishing at t = 0) equals (u_ij) + (pi) at truncation.
bool curve_ideal_generated(const Presentation& d);

struct DeformExtension {
    QuotientReport report;
    // The free completion: the new coordinate is the class in Q written in
    // the basis x^a pi^k. Emitted only when that basis certificate passes.
    std::optional<Presentation> completion;
};

// Throws DegenerateExtension when sum lambda_i / beta_i(x, 0) is not a unit.
DeformExtension extend_deformation(const Presentation& d, const ExtensionStep& step);

struct BasicDecomposition {
    bool basic = false;
    std::vector<int> order;
    std::vector<TruncSeries> P;  // P_i at truncation order_i
    // First coefficient of x^a t^b (a >= 1, b < order_i) found nonzero.
    int component = -1;
    int xpow = 0;
    int tpow = 0;
    Scalar coefficient;
};

BasicDecomposition is_basic(const Presentation& d, const MultiGerm& v, const std::vector<int>& order);
// Per coordinate, the largest order (at most the germ's truncation) at which v is basic.
std::vector<int> basic_orders(const Presentation& d, const MultiGerm& v);

// Coordinates 1..n-1 basic at orders q_i; returns P_n with the last
// coordinate basic at q_n, or throws Contradiction.
TruncSeries check_basic_completion(const Presentation& d, const MultiGerm& v);

// (alpha_i t^{m_i}) -> (alpha_i^{-1} t^{M - m_i}), M = sum m_i; membership is asserted.
MultiGerm reciprocal_element(const Presentation& d, const MultiGerm& v);

struct ExtractReport {
    Presentation star;
    std::vector<CheckEntry> checks;
    bool ok() const;
};

// Members whose coordinates are functions of t alone, as a star, with the
// checks that feed the flatness argument: validity, oblateness, equal
// spectrum, a t-only generator for each component ideal, and filtrations.
ExtractReport extract_star_report(const Presentation& d);
// Throws Contradiction on the first failed check.
Presentation extract_star(const Presentation& d);

struct DeformTower {
    Presentation deformation;
    Presentation star;       // built by the same steps on the extracted base
    Presentation base;
    std::vector<ExtensionStep> steps;  // star steps (D = 1)
};

// Product deformation of a pair star extended by x-free steps.
DeformTower random_deform_tower(std::uint64_t seed, int n_max, int p_max, int xdeg);

// x -> x + mu t on (K[x]/(x^D))[t]/(t^{p+1}); mu is read at truncation p.
struct ThetaAutomorphism {
    int p = 1;
    BiPoly mu;
};

// sum_m (mu t)^m / m! d^m f / dx^m. A ring map on inputs whose products stay
// below x^D.
BiPoly theta_apply(const ThetaAutomorphism& a, const BiPoly& f);
// nu with theta_nu(theta_mu(f)) = f, from nu = -theta_nu(mu).
ThetaAutomorphism theta_inverse(const ThetaAutomorphism& a);

// g + h z in (K[x]/(x^D))[z]/(z^2).
struct RibbonElement {
    Vec g, h;
    friend bool operator==(const RibbonElement& a, const RibbonElement& b) { return a.g == b.g && a.h == b.h; }
};

RibbonElement ribbon_mul(const RibbonElement& a, const RibbonElement& b);
// (a + alpha t^p, a + beta t^p) -> a(x, 0) + (beta - alpha) z.
RibbonElement ribbon_quotient(int p, const BiPoly& a1, const BiPoly& a2);

struct CocycleReport {
    Vec tau;
    int checked = 0;
    bool ok = false;
    std::string failure;
};

// tau = [t^{p-1}](mu2 - mu1), and ribbon(theta_mu1 x theta_mu2) = theta'_tau ribbon
// on a spanning set of the pair algebra, where theta'_tau(g + hz) = g + (h + tau g') z.
CocycleReport induced_cocycle(int p, const BiPoly& mu1, const BiPoly& mu2);

}  // namespace starforge
