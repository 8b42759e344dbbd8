#pragma once

#include "starforge/scalar.hpp"

#include <optional>
#include <vector>

namespace starforge {

// Subspace of K^d kept in reduced row-echelon form with unit pivots, so two
// spaces are equal exactly when their row lists are.
class LinearSpace {
public:
    LinearSpace() = default;
    explicit LinearSpace(int ambient) : d_(ambient) {}

    static LinearSpace span(int ambient, const std::vector<Vec>& vectors);
    static LinearSpace full(int ambient);

    int ambient() const { return d_; }
    int dim() const { return static_cast<int>(rows_.size()); }
    const std::vector<Vec>& rows() const { return rows_; }
    const std::vector<int>& pivots() const { return piv_; }

    // Adds v to the span; returns false if v was already a member.
    bool insert(Vec v);
    void insert_all(const std::vector<Vec>& vs);

    // Normal form of v modulo this space (zero at every pivot column).
    Vec reduce(Vec v) const;
    bool member(const Vec& v) const;
    bool contains(const LinearSpace& o) const;
    // Coefficients of v in the row basis, if v is a member.
    std::optional<Vec> coordinates(const Vec& v) const;

    LinearSpace sum(const LinearSpace& o) const;
    LinearSpace intersect(const LinearSpace& o) const;
    // dim(this / sub); sub must be contained in this.
    int quotient_dim(const LinearSpace& sub) const;
    // Elements whose entries at the given columns all vanish.
    LinearSpace zero_on(const std::vector<int>& cols) const;
    // Image under keeping only the given columns, in that order.
    LinearSpace project(const std::vector<int>& cols) const;

    friend bool operator==(const LinearSpace& a, const LinearSpace& b) {
        return a.d_ == b.d_ && a.rows_ == b.rows_;
    }
    friend bool operator!=(const LinearSpace& a, const LinearSpace& b) { return !(a == b); }

private:
    int d_ = 0;
    std::vector<Vec> rows_;
    std::vector<int> piv_;
};

LinearSpace span(int ambient, const std::vector<Vec>& vectors);

// Coefficients c with sum c_k gens[k] = target, or nullopt.
std::optional<Vec> solve_in_span(const std::vector<Vec>& gens, const Vec& target);

// Basis of {c : sum c_k rows[k] = 0}.
std::vector<Vec> left_kernel(const std::vector<Vec>& rows);

// Basis of {x : M x = 0} for M given by rows of length ncols.
std::vector<Vec> nullspace(const std::vector<Vec>& rows, int ncols);

int rank(const std::vector<Vec>& rows, int ncols);

}  // namespace starforge
