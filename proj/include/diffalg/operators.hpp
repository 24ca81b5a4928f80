#pragma once

#include "diffalg/algebra.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace diffalg {

/// Element of the enveloping ring in normal form: a sum of terms
/// coeff * v * d1^i d2^j with the polynomial part to the left of the
/// derivations. Acts on polynomials; composition renormalizes through the
/// commutation rule d_i r = r d_i + d_i(r).
class EnvOperator {
  public:
    EnvOperator(CoeffRing ring, Mode mode) : ring_(ring), mode_(mode) {}

    static EnvOperator identity(CoeffRing ring, Mode mode);
    static EnvOperator term(CoeffRing ring, Mode mode, const Rat& coeff, const Monomial& v,
                            const DerivOp& theta);

    const CoeffRing& ring() const { return ring_; }
    Mode mode() const { return mode_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<std::pair<Monomial, DerivOp>, Rat>& terms() const { return terms_; }

    EnvOperator add(const EnvOperator& o) const;
    EnvOperator scale(const Rat& c) const;
    // this ∘ other, normalized into the canonical form.
    EnvOperator compose(const EnvOperator& o,
                        std::uint64_t step_budget = kDefaultExponentBudget) const;

    DiffPoly apply(const DiffPoly& a,
                   std::uint64_t step_budget = kDefaultExponentBudget) const;

    std::string to_string() const; // terms "poly-part :: [i,j]" joined by sign

  private:
    void accumulate(const Monomial& v, const DerivOp& theta, const Rat& c);

    CoeffRing ring_;
    Mode mode_;
    std::map<std::pair<Monomial, DerivOp>, Rat> terms_;
};

/// x1^{1-eps} x2^{1-sigma} d1^i d2^j with i = 0 forced when eps = 1 and
/// j = 0 forced when sigma = 1. These are the operators whose application to
/// a command generator telescopes exactly.
struct WOperator {
    int eps = 0;
    int sigma = 0;
    Int i;
    Int j;

    void validate() const;
    std::string to_string() const;
};

/// (d1^a x1)^{1-eps} (d2^b x2)^{1-sigma} d1^s d2^t with tower orders a, b >= 1.
struct VOperator {
    int eps = 0;
    int sigma = 0;
    Int a;
    Int b;
    Int s;
    Int t;

    void validate() const;
    std::string to_string() const;
};

EnvOperator w_to_operator(const WOperator& w, CoeffRing ring, Mode mode);
EnvOperator w_to_operator(const VOperator& v, CoeffRing ring, Mode mode);

} // namespace diffalg
