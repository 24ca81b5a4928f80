#pragma once

#include "diffalg/coeff.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

namespace diffalg {

/// Exact sparse Gaussian elimination over a coefficient field. Rows are
/// equations sum_c a[c] * x_c = rhs. Pivots are chosen per column among the
/// sparsest candidate rows, so entries stay small on the mostly-unit
/// matrices produced by operator expansions.
class LinearSystem {
  public:
    LinearSystem(CoeffRing ring, std::size_t ncols);

    std::size_t columns() const { return ncols_; }
    // Coefficients for one equation; repeated column indices are summed.
    void add_equation(const std::vector<std::pair<std::size_t, Rat>>& coeffs, const Rat& rhs);

    struct Result {
        bool feasible = false;
        std::vector<Rat> solution; // one solution, free variables set to zero
        std::size_t rank = 0;
        std::optional<std::vector<Rat>> kernel; // nontrivial kernel vector, if any
    };

    // Runs the elimination once; the system is consumed.
    Result solve(bool want_kernel = false);

  private:
    CoeffRing ring_;
    std::size_t ncols_;
    std::vector<std::map<std::size_t, Rat>> rows_;
    std::vector<Rat> rhs_;
};

} // namespace diffalg
