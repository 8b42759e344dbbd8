#pragma once

#include "starforge/presentation.hpp"

#include <optional>
#include <string>
#include <vector>

// Invariants of a presentation. Everything here is generic in the x-degree
// bound: D = 1 is a star, D > 1 a fragmented deformation.
namespace starforge {

using Spectrum = std::vector<std::vector<int>>;

struct CheckEntry {
    std::string name;
    bool ok = true;
    std::string witness;
};

struct ValidationReport {
    std::vector<CheckEntry> checks;
    bool valid() const;
    const CheckEntry* first_failure() const;
};

struct ValidateOptions {
    bool closure = true;
};

ValidationReport validate(const Presentation& s, ValidateOptions opt = {});
// Throws InvalidStar naming the first failed check.
void require_valid(const Presentation& s, ValidateOptions opt = {});

Presentation make_congruence_pair_star(int p);
Presentation make_lines_star(const std::vector<Scalar>& c);
// All tuples agreeing at P, at levels n-1: the glueing of n coordinate axes.
Presentation make_initial_star(int n);
// Image of K[[t,y]] on the plane branches y = phi_i(t). The phi_i are
// polynomials with phi_i(0) = 0; q_i = sum_j val(phi_i - phi_j).
Presentation make_branch_star(const std::vector<TruncSeries>& phi);
Presentation make_planes_deformation(const std::vector<Scalar>& c, int xdeg);

bool membership(const Presentation& s, const MultiGerm& g);

// Pairwise congruence orders, no consistency check.
Spectrum raw_spectrum(const Presentation& s);
// Throws InvalidStar if q_i != sum_j p_ij.
Spectrum spectrum(const Presentation& s);
// Returns a violating triple (i, j, k) if any.
std::optional<std::vector<int>> ultrametric_violation(const Spectrum& p);

struct FiberReport {
    int dim = 0;
    int cotangent_dim = 0;  // dim m_F / m_F^2
    bool principal = false;
    int nilpotency = 0;     // of the chosen maximal-ideal generator, 0 if not principal
    bool oblate = false;
    Vec generator;          // representative in the headroom frame
};

FiberReport fiber_algebra(const Presentation& s);
int embedding_dimension(const Presentation& s);

// Normal vector of the top slice, normalized to lambda_1 = 1.
std::vector<Scalar> lambda(const Presentation& s);

struct PairGenerator {
    int i = 0, j = 0;
    Vec v;                       // in the headroom-1 frame
    MultiGerm germ;
    std::vector<BiPoly> beta;    // beta[m] = v_m / t^{p_im}; empty BiPoly at m = i
    std::vector<Scalar> b;       // beta[m] at x = t = 0; b[i] = 0, b[j] = 1
};

PairGenerator pair_generator(const Presentation& s, int i, int j);

struct UnitConstantTable {
    int n = 0;
    // b[i][j][m]
    std::vector<std::vector<std::vector<Scalar>>> b;
    std::vector<Scalar> lambda;
    std::vector<CheckEntry> checks;
    bool ok() const;
};

// Collects every pair generator and checks the multiplicative, reciprocal,
// sign and lambda product laws; failures are recorded, not thrown.
UnitConstantTable unit_constant_table(const Presentation& s);
// As above, throwing InvalidStar on the first violated identity.
UnitConstantTable unit_constants(const Presentation& s);

struct SubstarIdeal {
    std::vector<int> indices;  // I, 0-based
    int target = 0;            // smallest index outside I
    Vec generator;             // prod_{j in I} v_{j,target}, headroom frame
    LinearSpace span;          // {generator * b}
    LinearSpace vanishing;     // {b : b_j = 0 for j in I}
    bool equal = false;
};

SubstarIdeal substar_ideal_report(const Presentation& s, const std::vector<int>& indices);
SubstarIdeal substar_ideal(const Presentation& s, const std::vector<int>& indices);

struct ConnectorMap {
    int i = 0;
    Presentation star;
    std::vector<int> kept;   // frame columns of the other components
    LinearSpace domain;      // K_i
    std::vector<CheckEntry> checks;

    // i-th coordinate of the unique element of B over k.
    BiPoly apply(const Vec& k) const;
    Vec project(const Vec& v) const;
    bool ok() const;
};

ConnectorMap connector(const Presentation& s, int i);

// Every x^a t^b coordinate of v vanishes for a >= 1.
bool is_x_free(const Frame& f, const Vec& v);

}  // namespace starforge
