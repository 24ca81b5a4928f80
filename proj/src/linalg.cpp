#include "diffalg/linalg.hpp"

#include "diffalg/errors.hpp"

#include <set>

namespace diffalg {

LinearSystem::LinearSystem(CoeffRing ring, std::size_t ncols) : ring_(ring), ncols_(ncols) {
    if (!ring.is_field())
        throw usage_error("linear solving requires a coefficient field (Q or GF(p)), got " +
                          ring.name());
}

void LinearSystem::add_equation(const std::vector<std::pair<std::size_t, Rat>>& coeffs,
                                const Rat& rhs) {
    std::map<std::size_t, Rat> row;
    for (const auto& [c, v] : coeffs) {
        if (c >= ncols_) throw usage_error("equation column index out of range");
        Rat nv = ring_.normalize(v);
        auto it = row.find(c);
        if (it == row.end()) {
            if (!ring_.is_zero(nv)) row.emplace(c, nv);
        } else {
            Rat s = ring_.add(it->second, nv);
            if (ring_.is_zero(s))
                row.erase(it);
            else
                it->second = std::move(s);
        }
    }
    rows_.push_back(std::move(row));
    rhs_.push_back(ring_.normalize(rhs));
}

LinearSystem::Result LinearSystem::solve(bool want_kernel) {
    const std::size_t nrows = rows_.size();

    // column -> rows holding a nonzero entry there
    std::vector<std::set<std::size_t>> col_rows(ncols_);
    for (std::size_t r = 0; r < nrows; ++r)
        for (const auto& [c, v] : rows_[r]) col_rows[c].insert(r);

    std::vector<bool> is_pivot_row(nrows, false);
    std::vector<std::size_t> pivot_row_of(ncols_, SIZE_MAX);

    // factor taken by value: the call site reads it out of the target row,
    // which the subtraction itself erases
    auto subtract_scaled = [&](std::size_t target, std::size_t source, Rat factor) {
        // rows_[target] -= factor * rows_[source]
        for (const auto& [c, v] : rows_[source]) {
            Rat delta = ring_.mul(factor, v);
            auto it = rows_[target].find(c);
            if (it == rows_[target].end()) {
                if (!ring_.is_zero(delta)) {
                    rows_[target].emplace(c, ring_.neg(delta));
                    col_rows[c].insert(target);
                }
            } else {
                Rat s = ring_.sub(it->second, delta);
                if (ring_.is_zero(s)) {
                    rows_[target].erase(it);
                    col_rows[c].erase(target);
                } else {
                    it->second = std::move(s);
                }
            }
        }
        rhs_[target] = ring_.sub(rhs_[target], ring_.mul(factor, rhs_[source]));
    };

    std::size_t rank = 0;
    for (std::size_t c = 0; c < ncols_; ++c) {
        // sparsest non-pivot candidate row
        std::size_t pivot = SIZE_MAX, best = SIZE_MAX;
        for (std::size_t r : col_rows[c]) {
            if (is_pivot_row[r]) continue;
            if (rows_[r].size() < best) {
                best = rows_[r].size();
                pivot = r;
            }
        }
        if (pivot == SIZE_MAX) continue;
        Rat inv = ring_.inv(rows_[pivot].at(c));
        if (inv != 1) {
            for (auto& [cc, v] : rows_[pivot]) v = ring_.mul(v, inv);
            rhs_[pivot] = ring_.mul(rhs_[pivot], inv);
        }
        auto holders = col_rows[c]; // copy: mutated during subtraction
        for (std::size_t r : holders) {
            if (r == pivot) continue;
            subtract_scaled(r, pivot, rows_[r].at(c));
        }
        is_pivot_row[pivot] = true;
        pivot_row_of[c] = pivot;
        ++rank;
    }

    Result result;
    result.rank = rank;
    result.feasible = true;
    for (std::size_t r = 0; r < nrows; ++r) {
        if (!is_pivot_row[r] && !rows_[r].empty())
            throw usage_error("internal: non-pivot row retained coefficients");
        if (!is_pivot_row[r] && !ring_.is_zero(rhs_[r])) {
            result.feasible = false;
            break;
        }
    }
    if (result.feasible) {
        result.solution.assign(ncols_, ring_.zero());
        for (std::size_t c = 0; c < ncols_; ++c)
            if (pivot_row_of[c] != SIZE_MAX) result.solution[c] = rhs_[pivot_row_of[c]];
    }
    if (want_kernel && rank < ncols_) {
        for (std::size_t f = 0; f < ncols_; ++f) {
            if (pivot_row_of[f] != SIZE_MAX) continue;
            std::vector<Rat> kernel(ncols_, ring_.zero());
            kernel[f] = ring_.one();
            for (std::size_t c = 0; c < ncols_; ++c) {
                if (pivot_row_of[c] == SIZE_MAX) continue;
                auto it = rows_[pivot_row_of[c]].find(f);
                if (it != rows_[pivot_row_of[c]].end()) kernel[c] = ring_.neg(it->second);
            }
            result.kernel = std::move(kernel);
            break;
        }
    }
    return result;
}

} // namespace diffalg
