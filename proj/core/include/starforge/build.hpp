#pragma once

#include "starforge/star.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace starforge {

// Adds component n to an (n-1)-component presentation through
// u = (beta_1 t^{p_1n}, ..., beta_{n-1} t^{p_{n-1,n}}).
struct ExtensionStep {
    std::vector<int> p_new;
    std::vector<BiPoly> beta;  // units; only the first q_i t-coefficients matter
};

Frame extension_frame(const Presentation& s, const ExtensionStep& step);
// u in the extension frame; throws unless beta are units and u is a member.
Vec step_element(const Presentation& s, const ExtensionStep& step);

// sum_i lambda_i / beta_i(x, 0) as a polynomial in x (length D).
Vec nondegeneracy_function(const Presentation& s, const ExtensionStep& step);
// Its value at x = 0; the step is degenerate when this vanishes.
Scalar nondegeneracy(const Presentation& s, const ExtensionStep& step);

struct QuotientReport {
    Frame frame;            // levels q_i + p_in
    LinearSpace b_ext;
    LinearSpace u_span;
    Vec u;
    int q_n = 0;
    int dim_q = 0;
    int nilpotency = 0;     // smallest k with pi^k in (u)
    bool top_power_zero = false;
    bool below_top_nonzero = false;
    bool monomial_basis = false;  // {x^a pi^k : a < D, k < q_n} is a basis of Q
    bool flat = false;
    Vec nondegeneracy;      // polynomial in x

    bool certified() const;
};

// u is not in (pi) + I_C^2 + x I_C, where I_C is the ideal of elements vanishing at t = 0.
bool generates_cotangent(const Presentation& s, const ExtensionStep& step);

// No precondition: used for both branches of the degeneracy dichotomy.
QuotientReport analyze_quotient(const Presentation& s, const ExtensionStep& step);
// Throws DegenerateExtension on a degenerate step, DegenerateInput if u does
// not generate the cotangent space modulo pi, and Contradiction if a step
// meeting both conditions fails a certificate.
QuotientReport quotient(const Presentation& s, const ExtensionStep& step);

// The n-component presentation whose last coordinate is the class in Q
// written in the monomial basis.
Presentation extend_star(const Presentation& s, const ExtensionStep& step);

// M = K^d with nilpotent t given by its matrix (rows; acts on columns).
// Free over K[t]/(t^q) iff ker t^k = im t^{q-k} for 1 <= k < q.
bool flatness_over_line(const std::vector<Vec>& t_matrix, int q);

// Random admissible step attaching the new branch to component k at depth d:
// u = s sigma(pi) pi^d + c rho(pi) v_kj + pi^{d+1} r. Returns nullopt when
// the draw has the wrong valuations or u does not generate the cotangent
// space modulo pi; degenerate draws are returned as-is.
std::optional<ExtensionStep> random_step(const Presentation& s, std::mt19937_64& rng, int p_max,
                                         bool x_free = true);
// A degenerate step u = pi^d * unit attached at the root. Only defined when
// every level equals (n-1) d, so that all new levels coincide with q_n;
// returns nullopt otherwise. Such u never generates the cotangent space
// modulo pi.
std::optional<ExtensionStep> degenerate_step(const Presentation& s, std::mt19937_64& rng);

struct Tower {
    Presentation star;
    int base_p = 1;
    std::vector<ExtensionStep> steps;
    int draws = 0;
    int degenerate_draws = 0;
};

Tower random_tower(std::uint64_t seed, int n_max, int p_max);
Presentation replay(const Presentation& base, const std::vector<ExtensionStep>& steps);

}  // namespace starforge
