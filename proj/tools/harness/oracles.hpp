#pragma once

#include "starforge/linear_space.hpp"

#include <random>
#include <string>
#include <vector>

// Slow reference implementations used to cross-check the kernel.
namespace starforge::harness {

// Plain Gaussian elimination on a copy; no echelon bookkeeping.
int naive_rank(std::vector<Vec> rows, int ncols);

// t given by its matrix (rows; acts on columns), t^q = 0. Lifts a basis of
// M/tM and checks that {t^k g : k < q} is a basis of M.
bool naive_free_over_line(const std::vector<Vec>& t_matrix, int q);

struct NilpotentModule {
    std::vector<Vec> t;
    int q = 1;
    std::vector<int> blocks;  // Jordan block sizes before conjugation
};

// Direct sum of Jordan blocks of size <= q, conjugated by random elementary matrices.
NilpotentModule random_nilpotent_module(std::mt19937_64& rng, int max_dim);

// Compares every LinearSpace operation on one random instance against
// naive_rank; returns the first disagreement, or an empty string.
std::string cross_check_linear_space(std::mt19937_64& rng);

}  // namespace starforge::harness
