#pragma once

#include "starforge/star.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace starforge {

enum class Verdict { Identical, StrictlyIncluded, Incomparable };

const char* verdict_name(Verdict v);

// Inclusion of preimage algebras, components identified in order.
struct ComparisonReport {
    Verdict verdict = Verdict::Incomparable;
    Spectrum spectrum_a, spectrum_b;
    bool a_in_b = false;
    bool b_in_a = false;
    bool spectra_equal = false;
    bool spans_equal = false;
    // Set when strictly included: 0 if a is the smaller algebra, 1 if b is.
    int smaller = -1;
    // The smaller algebra has entrywise larger spectrum.
    bool dominance = false;
    std::optional<std::pair<int, int>> gap;
};

ComparisonReport compare_stars(const Presentation& a, const Presentation& b);

// u in the smaller algebra, v in the larger one, uv = 0, and the bilinear
// form (lambda u, w) -> lambda_i w_i mod t^{q'_i} is nonzero on (u, v).
struct NonflatnessWitness {
    int component = 0;
    int q_sup = 0;   // level of the larger algebra at the component
    int q_sub = 0;
    MultiGerm u, v;
    bool product_zero = false;
    TruncSeries phi;  // value of the form, truncated at q_sub
    bool phi_nonzero = false;
    // Every lambda in the smaller algebra with lambda u = 0 has
    // lambda_i = 0 mod t^{q_sub}, so the form is well defined.
    bool well_defined = false;

    bool ok() const { return product_zero && phi_nonzero && well_defined; }
};

NonflatnessWitness nonflatness_witness(const Presentation& sub, const Presentation& sup);

struct FiltrationStep {
    int component = 0;
    int level = 0;          // u_j = t^m
    Vec u;
    MultiGerm germ;
    LinearSpace ideal;      // I_i
    LinearSpace next;       // I_{i+1} = I_i with coordinate j zero
    bool cyclic = false;    // I_i = u B + I_{i+1}
    bool annihilator = false;  // I_{S_j} u is inside I_{i+1}
    bool not_inside = false;   // u_j != 0
    bool next_inside = false;  // I_{i+1} vanishes on component j

    bool ok() const { return cyclic && annihilator && not_inside && next_inside; }
};

struct FiltrationReport {
    Frame frame;            // levels q_i + w_i + 1 where w_i is the least valuation of a generator
    LinearSpace ideal;
    std::vector<FiltrationStep> steps;
    bool respans = false;
    bool length_ok = false;

    bool ok() const;
};

// Throws NotAProperIdeal if a generator is a unit and Usage if one is not a member.
FiltrationReport ideal_filtration(const Presentation& s, const std::vector<MultiGerm>& gens);

// Branches phi_i of a plane model: phi = Y_i for a generator Y of the ideal of
// the first component, cut to polynomials of degree <= q_i. Requires an
// oblate star.
std::vector<TruncSeries> plane_branches(const Presentation& s);

// The subalgebra generated by pi and t^e Y + c Y^2; its spectrum dominates.
// Throws DegenerateInput for the finitely many c that merge two branches.
Presentation deepen(const Presentation& s, int e, const Scalar& c);

}  // namespace starforge
