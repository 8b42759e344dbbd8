#pragma once

#include "starforge/germ.hpp"
#include "starforge/linear_space.hpp"

#include <functional>
#include <vector>

namespace starforge {

// Flat coordinates on prod_i (K[x]/(x^D))[t]/(t^{q_i}); x^a t^b of component i
// sits at offset_i + a*q_i + b. Star frames have D = 1.
class Frame {
public:
    Frame() = default;
    Frame(int xdeg, std::vector<int> levels);

    int n() const { return static_cast<int>(q_.size()); }
    int xdeg() const { return d_; }
    const std::vector<int>& levels() const { return q_; }
    int level(int i) const { return q_[i]; }
    int dim() const { return dim_; }
    int index(int i, int a, int b) const { return off_[i] + a * q_[i] + b; }

    Vec zero() const { return Vec(dim_); }
    Vec one() const;
    Vec pi() const;
    Vec xvar() const;
    Vec unit(int i, int a, int b) const;

    Vec mul(const Vec& u, const Vec& v) const;
    Vec power(const Vec& u, int k) const;

    BiPoly component(const Vec& v, int i) const;
    MultiGerm germ(const Vec& v) const;
    // Polynomial semantics: each component is zero-extended or cut to the level.
    Vec flatten(const MultiGerm& g) const;
    Vec transfer(const Vec& v, const Frame& from) const;

    int t_valuation(const Vec& v, int i) const;
    bool component_zero(const Vec& v, int i) const;
    std::vector<int> columns_where(const std::function<bool(int, int, int)>& pred) const;
    std::vector<int> component_columns(int i) const;

    Frame raised(int h) const;
    Frame raised(const std::vector<int>& extra) const;

    friend bool operator==(const Frame& a, const Frame& b) { return a.d_ == b.d_ && a.q_ == b.q_; }
    friend bool operator!=(const Frame& a, const Frame& b) { return !(a == b); }

private:
    int d_ = 1;
    std::vector<int> q_;
    std::vector<int> off_;
    int dim_ = 0;
};

// Finite model of a local algebra: the image B of the algebra modulo the level
// ideal prod (t^{q_i}). The full algebra is the preimage of B, so a polynomial
// tuple is a member exactly when its reduction lies in B.
class Presentation {
public:
    Presentation() = default;
    Presentation(Frame frame, LinearSpace basis);
    static Presentation from_vectors(Frame frame, const std::vector<Vec>& vectors);
    static Presentation from_germs(int xdeg, std::vector<int> levels, const std::vector<MultiGerm>& gens);

    const Frame& frame() const { return frame_; }
    int n() const { return frame_.n(); }
    int xdeg() const { return frame_.xdeg(); }
    const std::vector<int>& q() const { return frame_.levels(); }
    const LinearSpace& basis() const { return basis_; }
    int dim() const { return basis_.dim(); }
    bool is_star() const { return frame_.xdeg() == 1; }

    // Preimage of B at levels N >= q: lifted rows plus the padding x^a t^b e_i, q_i <= b < N_i.
    LinearSpace lifted(const Frame& target) const;
    Presentation at_levels(const std::vector<int>& levels) const;
    Presentation headroom(int h) const;

    bool member(const MultiGerm& g) const;
    bool member_vec(const Vec& v) const { return basis_.member(v); }

    friend bool operator==(const Presentation& a, const Presentation& b) {
        return a.frame_ == b.frame_ && a.basis_ == b.basis_;
    }
    friend bool operator!=(const Presentation& a, const Presentation& b) { return !(a == b); }

private:
    Frame frame_;
    LinearSpace basis_;
};

}  // namespace starforge
