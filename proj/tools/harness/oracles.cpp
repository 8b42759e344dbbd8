#include "harness/oracles.hpp"

#include <algorithm>

namespace starforge::harness {

namespace {

int small(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Vec act(const std::vector<Vec>& m, const Vec& v) {
    Vec out(m.size());
    for (size_t r = 0; r < m.size(); ++r)
        for (size_t c = 0; c < v.size(); ++c)
            if (sgn(m[r][c]) != 0 && sgn(v[c]) != 0) out[r] += m[r][c] * v[c];
    return out;
}

Vec random_vec(std::mt19937_64& rng, int d, int spread) {
    Vec v(d);
    for (auto& x : v) x = small(rng, -spread, spread);
    return v;
}

// Rows drawn at random, some of them combinations of earlier ones.
std::vector<Vec> random_rows(std::mt19937_64& rng, int count, int d) {
    std::vector<Vec> rows;
    for (int k = 0; k < count; ++k) {
        if (!rows.empty() && small(rng, 0, 2) == 0) {
            Vec v(d);
            for (const auto& r : rows) axpy(v, Scalar(small(rng, -2, 2)), r);
            rows.push_back(std::move(v));
        } else {
            rows.push_back(random_vec(rng, d, 2));
        }
    }
    return rows;
}

std::vector<Vec> concat(std::vector<Vec> a, const std::vector<Vec>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

std::string fmt(const std::string& what, long got, long want) {
    return what + ": got " + std::to_string(got) + ", oracle " + std::to_string(want);
}

}  // namespace

int naive_rank(std::vector<Vec> rows, int ncols) {
    int rank = 0;
    for (int c = 0; c < ncols && rank < static_cast<int>(rows.size()); ++c) {
        int pivot = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r)
            if (sgn(rows[r][c]) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(rows[rank], rows[pivot]);
        for (int r = rank + 1; r < static_cast<int>(rows.size()); ++r) {
            if (sgn(rows[r][c]) == 0) continue;
            const Scalar f = rows[r][c] / rows[rank][c];
            for (int k = c; k < ncols; ++k) rows[r][k] -= f * rows[rank][k];
        }
        ++rank;
    }
    return rank;
}

bool naive_free_over_line(const std::vector<Vec>& t_matrix, int q) {
    const int d = static_cast<int>(t_matrix.size());
    if (d == 0) return true;
    std::vector<Vec> image;
    for (int c = 0; c < d; ++c) {
        Vec col(d);
        for (int r = 0; r < d; ++r) col[r] = t_matrix[r][c];
        image.push_back(std::move(col));
    }
    std::vector<Vec> gens;
    std::vector<Vec> acc = image;
    int acc_rank = naive_rank(acc, d);
    for (int c = 0; c < d; ++c) {
        Vec e(d);
        e[c] = 1;
        acc.push_back(e);
        const int r = naive_rank(acc, d);
        if (r > acc_rank) {
            acc_rank = r;
            gens.push_back(std::move(e));
        } else {
            acc.pop_back();
        }
    }
    std::vector<Vec> orbit;
    for (const auto& g : gens) {
        Vec v = g;
        for (int k = 0; k < q; ++k) {
            orbit.push_back(v);
            v = act(t_matrix, v);
        }
    }
    return static_cast<int>(orbit.size()) == d && naive_rank(orbit, d) == d;
}

NilpotentModule random_nilpotent_module(std::mt19937_64& rng, int max_dim) {
    NilpotentModule m;
    m.q = small(rng, 1, 4);
    const bool free = small(rng, 0, 1) == 0;
    int d = 0;
    while (true) {
        const int b = free ? m.q : small(rng, 1, m.q);
        if (d + b > max_dim) break;
        m.blocks.push_back(b);
        d += b;
        if (small(rng, 0, 3) == 0) break;
    }
    if (m.blocks.empty()) {
        m.q = std::min(m.q, max_dim);
        m.blocks.push_back(m.q);
        d = m.q;
    }
    m.t.assign(d, Vec(d));
    int off = 0;
    for (int b : m.blocks) {
        for (int k = 0; k + 1 < b; ++k) m.t[off + k + 1][off + k] = 1;
        off += b;
    }
    // T <- E T E^{-1} with E = I + c e_ij.
    for (int k = 0; k < d * d && d > 1; ++k) {
        const int i = small(rng, 0, d - 1), j = small(rng, 0, d - 1);
        if (i == j) continue;
        const Scalar c = small(rng, -2, 2);
        if (sgn(c) == 0) continue;
        for (int col = 0; col < d; ++col) m.t[i][col] += c * m.t[j][col];
        for (int row = 0; row < d; ++row) m.t[row][j] -= c * m.t[row][i];
    }
    return m;
}

std::string cross_check_linear_space(std::mt19937_64& rng) {
    const int d = small(rng, 1, 8);
    const auto a = random_rows(rng, small(rng, 0, 6), d);
    const auto b = random_rows(rng, small(rng, 0, 6), d);
    const LinearSpace sa = LinearSpace::span(d, a), sb = LinearSpace::span(d, b);
    const int ra = naive_rank(a, d), rb = naive_rank(b, d), rab = naive_rank(concat(a, b), d);

    if (sa.dim() != ra) return fmt("dim", sa.dim(), ra);
    if (sa.sum(sb).dim() != rab) return fmt("dim of sum", sa.sum(sb).dim(), rab);
    const LinearSpace meet = sa.intersect(sb);
    if (meet.dim() != ra + rb - rab) return fmt("dim of intersection", meet.dim(), ra + rb - rab);
    for (const auto& r : meet.rows()) {
        if (naive_rank(concat(a, {r}), d) != ra || naive_rank(concat(b, {r}), d) != rb)
            return "intersection row outside one of the spaces";
    }
    if (sa.contains(sb) != (rab == ra)) return "containment disagrees";
    if ((sa == sb) != (rab == ra && rab == rb)) return "equality disagrees";

    Vec v = small(rng, 0, 1) == 0 || a.empty() ? random_vec(rng, d, 3) : Vec(d);
    if (is_zero(v))
        for (const auto& r : a) axpy(v, Scalar(small(rng, -3, 3)), r);
    const bool in = naive_rank(concat(a, {v}), d) == ra;
    if (sa.member(v) != in) return "membership disagrees";
    if (auto c = sa.coordinates(v)) {
        Vec back(d);
        for (size_t k = 0; k < c->size(); ++k) axpy(back, (*c)[k], sa.rows()[k]);
        if (back != v) return "coordinates do not reconstruct the vector";
    } else if (in) {
        return "member without coordinates";
    }
    if (!is_zero(sa.reduce(v)) == in) return "reduction disagrees with membership";

    const auto lk = left_kernel(a);
    if (static_cast<int>(lk.size()) != static_cast<int>(a.size()) - ra)
        return fmt("left kernel size", static_cast<long>(lk.size()), static_cast<long>(a.size()) - ra);
    for (const auto& c : lk) {
        Vec s(d);
        for (size_t k = 0; k < c.size(); ++k) axpy(s, c[k], a[k]);
        if (!is_zero(s)) return "left kernel vector is not a relation";
    }
    if (naive_rank(lk, static_cast<int>(a.size())) != static_cast<int>(lk.size())) return "left kernel is dependent";

    const auto ns = nullspace(a, d);
    if (static_cast<int>(ns.size()) != d - ra) return fmt("nullspace size", static_cast<long>(ns.size()), d - ra);
    for (const auto& x : ns)
        if (!is_zero(act(a, x))) return "nullspace vector is not annihilated";
    if (rank(a, d) != ra) return fmt("rank", rank(a, d), ra);

    std::vector<int> cols;
    for (int c = 0; c < d; ++c)
        if (small(rng, 0, 2) == 0) cols.push_back(c);
    const LinearSpace z = sa.zero_on(cols);
    for (const auto& r : z.rows())
        for (int c : cols)
            if (sgn(r[c]) != 0) return "zero_on row does not vanish";
    std::vector<Vec> restricted;
    for (const auto& r : a) {
        Vec w;
        for (int c : cols) w.push_back(r[c]);
        restricted.push_back(std::move(w));
    }
    const int rr = naive_rank(restricted, static_cast<int>(cols.size()));
    if (z.dim() != ra - rr) return fmt("dim of zero_on", z.dim(), ra - rr);
    if (sa.project(cols).dim() != rr) return fmt("dim of projection", sa.project(cols).dim(), rr);
    if (sa.sum(sb).quotient_dim(sb) != rab - rb) return fmt("quotient dim", sa.sum(sb).quotient_dim(sb), rab - rb);
    return {};
}

}  // namespace starforge::harness
