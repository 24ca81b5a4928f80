#pragma once

#include "diffalg/coeff.hpp"
#include "diffalg/errors.hpp"
#include "diffalg/numeric.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace diffalg {

inline constexpr std::uint64_t kDefaultExponentBudget = 65536; // 2^16

// Derivative operator d1^e1 d2^e2; the monoid is commutative, composition is
// componentwise addition. Exponents are arbitrary precision.
struct DerivOp {
    Int e1;
    Int e2;

    DerivOp() : e1(0), e2(0) {}
    DerivOp(Int a, Int b) : e1(std::move(a)), e2(std::move(b)) {}

    static DerivOp identity() { return DerivOp(); }
    static DerivOp d1(Int e = Int(1)) { return DerivOp(std::move(e), Int(0)); }
    static DerivOp d2(Int e = Int(1)) { return DerivOp(Int(0), std::move(e)); }

    DerivOp compose(const DerivOp& o) const { return DerivOp(e1 + o.e1, e2 + o.e2); }
    Int order() const { return e1 + e2; }
    bool is_identity() const { return e1 == 0 && e2 == 0; }

    bool operator==(const DerivOp& o) const { return e1 == o.e1 && e2 == o.e2; }
    bool operator!=(const DerivOp& o) const { return !(*this == o); }
    bool operator<(const DerivOp& o) const {
        if (e1 != o.e1) return e1 < o.e1;
        return e2 < o.e2;
    }

    std::string to_string() const; // "[e1,e2]"
};

// Variable bases, ordered x1 < x2 < q0 < q1 < ... < t.
enum class BaseKind : unsigned char { x1 = 0, x2 = 1, q = 2, t = 3 };

struct VarBase {
    BaseKind kind;
    int index; // q-state index; 0 otherwise

    static VarBase x1() { return {BaseKind::x1, 0}; }
    static VarBase x2() { return {BaseKind::x2, 0}; }
    static VarBase q(int state) { return {BaseKind::q, state}; }
    static VarBase t() { return {BaseKind::t, 0}; }

    bool is_x() const { return kind == BaseKind::x1 || kind == BaseKind::x2; }

    bool operator==(const VarBase& o) const { return kind == o.kind && index == o.index; }
    bool operator!=(const VarBase& o) const { return !(*this == o); }
    bool operator<(const VarBase& o) const {
        if (kind != o.kind) return kind < o.kind;
        return index < o.index;
    }

    std::string to_string() const; // "x1", "x2", "q3", "t"
    // Parses a base name; returns nullopt on anything else.
    static std::optional<VarBase> parse(const std::string& name);
};

// Two algebra presentations. In `quotient` the cross derivatives of the two
// distinguished variables vanish: x1 admits only d1-towers and x2 only
// d2-towers, so x1[i,j] with j>0 (resp. x2 with i>0) is not a variable.
enum class Mode { free_algebra, quotient };

std::string mode_name(Mode m); // "A" / "B"

struct DiffVar {
    VarBase base;
    DerivOp theta;

    bool operator==(const DiffVar& o) const { return base == o.base && theta == o.theta; }
    bool operator!=(const DiffVar& o) const { return !(*this == o); }
    bool operator<(const DiffVar& o) const {
        if (base != o.base) return base < o.base;
        return theta < o.theta;
    }

    bool valid_in(Mode mode) const;
    // True for x1 with a d2-component or x2 with a d1-component; those
    // variables generate the quotient ideal and vanish in quotient mode.
    bool is_mixed() const;

    std::string to_string() const; // "x1[2,0]"
};

// Commutative power product of variables in canonical form: factors sorted,
// exponents positive.
class Monomial {
  public:
    using Factor = std::pair<DiffVar, std::int64_t>;

    Monomial() = default;
    static Monomial one() { return Monomial(); }
    static Monomial variable(const DiffVar& v, std::int64_t exp = 1);
    // Builds from arbitrary (possibly unsorted/repeated) factor list.
    static Monomial from_factors(std::vector<Factor> factors);

    const std::vector<Factor>& factors() const { return factors_; }
    bool is_one() const { return factors_.empty(); }

    Monomial times(const Monomial& o) const;
    Monomial times_var(const DiffVar& v, std::int64_t exp = 1) const;
    // Divides by one power of the variable; the variable must occur.
    Monomial without_one(const DiffVar& v) const;

    Int total_degree() const;
    Int count(BaseKind kind) const; // degree in the given base group
    Int count_base(const VarBase& b) const;
    bool contains_base(const VarBase& b) const;
    bool has_mixed_factor() const;

    // The factor supported on the x-group (other bases dropped).
    Monomial x_part() const;

    bool valid_in(Mode mode) const;

    bool operator==(const Monomial& o) const { return factors_ == o.factors_; }
    bool operator!=(const Monomial& o) const { return !(*this == o); }
    bool operator<(const Monomial& o) const;

    std::string to_string() const; // "x1[0,0]^1 * q0[1,2]^3"; "1" if empty

  private:
    std::vector<Factor> factors_;
};

// Pair grading (deg1, deg2): deg1 weights d1-towers of x1 by order+1, deg2
// weights d2-towers of x2; everything else contributes zero. Compared
// lexicographically with deg1 dominant.
struct MultiDegree {
    Int d1;
    Int d2;

    bool operator==(const MultiDegree& o) const { return d1 == o.d1 && d2 == o.d2; }
    bool operator!=(const MultiDegree& o) const { return !(*this == o); }
    bool operator<(const MultiDegree& o) const {
        if (d1 != o.d1) return d1 < o.d1;
        return d2 < o.d2;
    }
    bool operator>(const MultiDegree& o) const { return o < *this; }

    std::string to_string() const;
};

MultiDegree multidegree(const Monomial& m);

struct DegreeResult {
    bool homogeneous;
    Int value; // the common degree, or the maximum when inhomogeneous
};

enum class Grading {
    total,           // standard polynomial degree
    pair,            // MultiDegree
    variable_groups, // x-part exactly, q-group and t-group totals
    t_count          // degree in the t-group only
};

/// Sparse differential polynomial with exact coefficients. Immutable value
/// semantics: every operation returns a fresh polynomial in canonical form
/// (no zero coefficients, factors sorted).
class DiffPoly {
  public:
    DiffPoly(CoeffRing ring, Mode mode) : ring_(ring), mode_(mode) {}

    static DiffPoly zero(CoeffRing ring, Mode mode) { return DiffPoly(ring, mode); }
    static DiffPoly constant(CoeffRing ring, Mode mode, const Rat& c);
    static DiffPoly variable(CoeffRing ring, Mode mode, const DiffVar& v);
    static DiffPoly monomial(CoeffRing ring, Mode mode, const Monomial& m,
                             const Rat& c);

    const CoeffRing& ring() const { return ring_; }
    Mode mode() const { return mode_; }
    const std::map<Monomial, Rat>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    DiffPoly add(const DiffPoly& o) const;
    DiffPoly sub(const DiffPoly& o) const;
    DiffPoly neg() const;
    DiffPoly mul(const DiffPoly& o) const;
    DiffPoly scale(const Rat& c) const;
    DiffPoly mul_monomial(const Monomial& m, const Rat& c) const;

    // Single derivation d_i, i in {1, 2}, by the Leibniz rule. In quotient
    // mode d2 annihilates x1-towers and d1 annihilates x2-towers.
    DiffPoly derive(int i) const;
    // Iterated derivations; order independent. Guarded by a step budget
    // because orders are arbitrary-precision.
    DiffPoly apply_theta(const DerivOp& theta,
                         std::uint64_t step_budget = kDefaultExponentBudget) const;

    DegreeResult deg() const; // usage_error on zero

    // Highest MultiDegree over the terms, and the sum of terms attaining it.
    MultiDegree pair_degree() const; // usage_error on zero
    DiffPoly highest_part() const;   // usage_error on zero

    std::vector<DiffPoly> homogeneous_components(Grading g) const;
    bool is_homogeneous(Grading g) const;

    DegreeResult t_degree() const; // usage_error on zero

    // Adds c * m, dropping the term if the sum vanishes.
    void accumulate(const Monomial& m, const Rat& c);

    bool operator==(const DiffPoly& o) const;
    bool operator!=(const DiffPoly& o) const { return !(*this == o); }

    std::string to_string() const;

  private:
    CoeffRing ring_;
    Mode mode_;
    std::map<Monomial, Rat> terms_;
};

// usage_error unless both operands share ring and mode.
void require_compatible(const DiffPoly& a, const DiffPoly& b, const char* op);

// Derivative of a single variable under d_i; nullopt when annihilated.
std::optional<DiffVar> derive_var(const DiffVar& v, int i, Mode mode);

// Quotient-mode image of a free-mode polynomial: monomials containing a
// mixed variable are dropped, everything else maps through unchanged.
DiffPoly project_to_quotient(const DiffPoly& a);
// The same polynomial re-read in free mode (every quotient variable is one).
DiffPoly lift_to_free(const DiffPoly& a);

// Canonical text form parser; inverse of DiffPoly::to_string.
DiffPoly parse_poly(const std::string& text, const CoeffRing& ring, Mode mode);

} // namespace diffalg
