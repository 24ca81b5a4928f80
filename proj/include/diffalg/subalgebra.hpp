#pragma once

#include "diffalg/membership.hpp"

#include <string>
#include <vector>

namespace diffalg {

/// Differential subalgebra generated by the ambient x-variables, the first
/// derivatives of t, and the products t*f_i. Membership of t*f here mirrors
/// membership of f in the differential ideal [f_1,...,f_r].
struct SubalgebraSystem {
    CoeffRing ring;
    std::vector<DiffPoly> base_generators; // free-mode polynomials without t

    // "x1", "x2", "q<k>", "d1t", "d2t", "tf<i>" (1-based); bare "t" is not
    // a generator.
    DiffPoly resolve_generator(const std::string& name) const;
    bool is_t_generator_name(const std::string& name) const; // excludes the tf's
};

SubalgebraSystem make_subalgebra_system(CoeffRing ring, std::vector<DiffPoly> base_generators);

/// Expression over the subalgebra generators: sums and products with
/// coefficients, leaves referencing a generator with a derivative operator
/// applied. Membership is witnessed syntactically; evaluation is the
/// verifier.
class SubExpr {
  public:
    enum class Kind { constant, generator, sum, product, scaled };

    static SubExpr constant(const Rat& value);
    static SubExpr generator(std::string name, DerivOp theta);
    static SubExpr sum(std::vector<SubExpr> args);
    static SubExpr product(std::vector<SubExpr> args);
    static SubExpr scaled(const Rat& coeff, SubExpr arg);

    Kind kind() const { return kind_; }
    const std::vector<SubExpr>& args() const { return args_; }
    const std::string& generator_name() const { return name_; }
    const Rat& coeff() const { return coeff_; }
    const DerivOp& theta() const { return theta_; }

    DiffPoly evaluate(const SubalgebraSystem& sys) const;
    // true when every generator leaf lies in the T family (x's and d_i(t))
    bool within_T(const SubalgebraSystem& sys) const;

    std::string to_json_text() const;
    static SubExpr from_json_text(const std::string& text, const CoeffRing& ring);

  private:
    SubExpr() = default;

    Kind kind_ = Kind::constant;
    Rat coeff_;
    std::string name_;
    DerivOp theta_;
    std::vector<SubExpr> args_;
};

// Monomial in x-variables as a product of generator leaves.
SubExpr monomial_to_expr(const Monomial& m);
// Polynomial over x-variables as a sum of scaled products.
SubExpr poly_to_expr(const DiffPoly& p);

struct TfDecomposition {
    DiffPoly principal;  // t * theta(f)
    SubExpr remainder;   // theta(t f) - principal, expressed inside T
};

// theta(t f) = t theta(f) + g with g in T; the returned remainder is the
// explicit T-expression for g, verified by expansion.
TfDecomposition theta_tf_decompose(const SubalgebraSystem& sys, const DerivOp& theta,
                                   const DiffPoly& f);

// Consumes an ideal witness f = sum lambda * m * theta(f_i) and produces a
// subalgebra expression evaluating exactly to t*f. Rejects witnesses that do
// not reproduce f.
SubExpr lift_to_subalgebra(const SubalgebraSystem& sys, const DiffPoly& f,
                           const std::vector<OperatorTerm>& witness);

struct LiftVerification {
    bool accepted = false;
    std::string reason;
};

LiftVerification verify_lift(const SubalgebraSystem& sys, const SubExpr& expr, const DiffPoly& f);

struct SubalgebraRefutation {
    OracleVerdict verdict;
    std::vector<OracleResult> component_results;
    std::optional<SubExpr> lift; // when the delegated oracle finds a member
    std::string obstruction;
};

// Bounded refutation of t*f in S_I through the deg_t = 1 reduction: t*f is a
// member iff f is an ideal member, so the bounded ideal oracle on f lifts to
// a bounded verdict here.
SubalgebraRefutation refute_tf_membership_bounded(const SubalgebraSystem& sys, const DiffPoly& f,
                                                  const OracleBounds& bounds);

// ---- bridge from the machine encoding ----

// Free-mode generator list: one pre-quotient generator per command, then the
// two quotient-ideal generators d1(x2), d2(x1).
std::vector<DiffPoly> free_mode_generators(const EncodedSystem& sys);

SubalgebraSystem make_subalgebra_system_from_machine(const EncodedSystem& sys);

// Translates a quotient-mode oracle witness for `target` into a free-mode
// witness over free_mode_generators(sys): the quotient-mode identity holds in
// the free algebra up to monomials divisible by a mixed variable, and those
// are peeled off into explicit d1(x2)/d2(x1) witness entries.
std::vector<OperatorTerm> free_witness_from_quotient(const EncodedSystem& sys,
                                                     const std::vector<OperatorTerm>& witness,
                                                     const DiffPoly& target);

} // namespace diffalg
