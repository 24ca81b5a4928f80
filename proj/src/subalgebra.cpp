#include "diffalg/subalgebra.hpp"

#include <nlohmann/json.hpp>

namespace diffalg {

using ordered_json = nlohmann::ordered_json;

namespace {

void require_over_x_variables(const DiffPoly& f, const char* what) {
    if (f.mode() != Mode::free_algebra)
        throw usage_error(std::string(what) + " must be a free-mode polynomial");
    for (const auto& [m, c] : f.terms())
        if (m.count(BaseKind::t) != 0)
            throw usage_error(std::string(what) + " must not involve t");
}

DiffPoly t_variable(CoeffRing ring) {
    return DiffPoly::variable(ring, Mode::free_algebra, {VarBase::t(), DerivOp::identity()});
}

std::size_t order_as_size(const Int& v, const char* what) {
    if (v < 0 || v > Int(kDefaultExponentBudget))
        throw resource_error(std::string(what) + " out of range: " + v.str());
    return v.convert_to<std::size_t>();
}

} // namespace

SubalgebraSystem make_subalgebra_system(CoeffRing ring, std::vector<DiffPoly> base_generators) {
    for (const auto& f : base_generators) {
        if (f.ring() != ring) throw usage_error("subalgebra generator ring mismatch");
        require_over_x_variables(f, "subalgebra base generator");
    }
    return SubalgebraSystem{ring, std::move(base_generators)};
}

bool SubalgebraSystem::is_t_generator_name(const std::string& name) const {
    if (name == "d1t" || name == "d2t") return true;
    auto base = VarBase::parse(name);
    return base.has_value() && base->kind != BaseKind::t;
}

DiffPoly SubalgebraSystem::resolve_generator(const std::string& name) const {
    if (name == "d1t")
        return DiffPoly::variable(ring, Mode::free_algebra, {VarBase::t(), DerivOp::d1()});
    if (name == "d2t")
        return DiffPoly::variable(ring, Mode::free_algebra, {VarBase::t(), DerivOp::d2()});
    if (name.rfind("tf", 0) == 0 && name.size() > 2) {
        std::size_t idx = 0;
        try {
            idx = std::stoul(name.substr(2));
        } catch (...) {
            throw validation_error("unknown subalgebra generator '" + name + "'");
        }
        if (idx < 1 || idx > base_generators.size())
            throw validation_error("subalgebra generator index out of range in '" + name + "'");
        return base_generators[idx - 1].mul(t_variable(ring));
    }
    auto base = VarBase::parse(name);
    if (base && base->kind != BaseKind::t)
        return DiffPoly::variable(ring, Mode::free_algebra, {*base, DerivOp::identity()});
    throw validation_error("unknown subalgebra generator '" + name + "'");
}

SubExpr SubExpr::constant(const Rat& value) {
    SubExpr e;
    e.kind_ = Kind::constant;
    e.coeff_ = value;
    return e;
}

SubExpr SubExpr::generator(std::string name, DerivOp theta) {
    SubExpr e;
    e.kind_ = Kind::generator;
    e.name_ = std::move(name);
    e.theta_ = std::move(theta);
    return e;
}

SubExpr SubExpr::sum(std::vector<SubExpr> args) {
    SubExpr e;
    e.kind_ = Kind::sum;
    e.args_ = std::move(args);
    return e;
}

SubExpr SubExpr::product(std::vector<SubExpr> args) {
    SubExpr e;
    e.kind_ = Kind::product;
    e.args_ = std::move(args);
    return e;
}

SubExpr SubExpr::scaled(const Rat& coeff, SubExpr arg) {
    SubExpr e;
    e.kind_ = Kind::scaled;
    e.coeff_ = coeff;
    e.args_.push_back(std::move(arg));
    return e;
}

DiffPoly SubExpr::evaluate(const SubalgebraSystem& sys) const {
    switch (kind_) {
        case Kind::constant:
            return DiffPoly::constant(sys.ring, Mode::free_algebra, coeff_);
        case Kind::generator: {
            if (theta_.e1 < 0 || theta_.e2 < 0)
                throw validation_error("negative derivative order in expression");
            return sys.resolve_generator(name_).apply_theta(theta_);
        }
        case Kind::sum: {
            DiffPoly acc = DiffPoly::zero(sys.ring, Mode::free_algebra);
            for (const auto& a : args_) acc = acc.add(a.evaluate(sys));
            return acc;
        }
        case Kind::product: {
            DiffPoly acc = DiffPoly::constant(sys.ring, Mode::free_algebra, sys.ring.one());
            for (const auto& a : args_) acc = acc.mul(a.evaluate(sys));
            return acc;
        }
        case Kind::scaled:
            return args_[0].evaluate(sys).scale(coeff_);
    }
    throw usage_error("unreachable");
}

bool SubExpr::within_T(const SubalgebraSystem& sys) const {
    if (kind_ == Kind::generator) return sys.is_t_generator_name(name_);
    for (const auto& a : args_)
        if (!a.within_T(sys)) return false;
    return true;
}

namespace {

ordered_json expr_to_json(const SubExpr& e) {
    ordered_json j;
    switch (e.kind()) {
        case SubExpr::Kind::constant: {
            j["op"] = "const";
            Rat v = e.coeff();
            j["value"] = (boost::multiprecision::denominator(v) == 1)
                             ? boost::multiprecision::numerator(v).str()
                             : v.str();
            break;
        }
        case SubExpr::Kind::generator:
            j["op"] = "gen";
            j["name"] = e.generator_name();
            j["theta"] = ordered_json::array({e.theta().e1.str(), e.theta().e2.str()});
            break;
        case SubExpr::Kind::sum:
        case SubExpr::Kind::product: {
            j["op"] = e.kind() == SubExpr::Kind::sum ? "add" : "mul";
            ordered_json arr = ordered_json::array();
            for (const auto& a : e.args()) arr.push_back(expr_to_json(a));
            j["args"] = arr;
            break;
        }
        case SubExpr::Kind::scaled: {
            j["op"] = "scale";
            Rat v = e.coeff();
            j["coeff"] = (boost::multiprecision::denominator(v) == 1)
                             ? boost::multiprecision::numerator(v).str()
                             : v.str();
            j["arg"] = expr_to_json(e.args()[0]);
            break;
        }
    }
    return j;
}

Rat coeff_from_json(const ordered_json& j, const CoeffRing& ring, const char* field) {
    if (!j.contains(field) || !j.at(field).is_string())
        throw validation_error(std::string("expression: missing string field '") + field + "'");
    return ring.parse(j.at(field).get<std::string>());
}

SubExpr expr_from_json(const ordered_json& j, const CoeffRing& ring) {
    if (!j.is_object() || !j.contains("op"))
        throw validation_error("expression node must be an object with 'op'");
    std::string op = j.at("op").get<std::string>();
    if (op == "const") return SubExpr::constant(coeff_from_json(j, ring, "value"));
    if (op == "gen") {
        if (!j.contains("name") || !j.contains("theta") || !j.at("theta").is_array() ||
            j.at("theta").size() != 2)
            throw validation_error("gen node needs 'name' and 'theta' [i,j]");
        auto ord = [&](const ordered_json& v) {
            return v.is_string() ? parse_int(v.get<std::string>())
                                 : Int(v.get<std::int64_t>());
        };
        return SubExpr::generator(j.at("name").get<std::string>(),
                                  DerivOp(ord(j.at("theta")[0]), ord(j.at("theta")[1])));
    }
    if (op == "add" || op == "mul") {
        if (!j.contains("args") || !j.at("args").is_array())
            throw validation_error("'" + op + "' node needs an 'args' array");
        std::vector<SubExpr> args;
        for (const auto& a : j.at("args")) args.push_back(expr_from_json(a, ring));
        return op == "add" ? SubExpr::sum(std::move(args)) : SubExpr::product(std::move(args));
    }
    if (op == "scale") {
        if (!j.contains("arg")) throw validation_error("scale node needs 'arg'");
        return SubExpr::scaled(coeff_from_json(j, ring, "coeff"),
                               expr_from_json(j.at("arg"), ring));
    }
    throw validation_error("unknown expression op '" + op + "'");
}

} // namespace

std::string SubExpr::to_json_text() const { return expr_to_json(*this).dump(2) + "\n"; }

SubExpr SubExpr::from_json_text(const std::string& text, const CoeffRing& ring) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw validation_error(std::string("expression file: JSON syntax error: ") + e.what());
    }
    if (doc.is_object() && doc.contains("expr")) return expr_from_json(doc.at("expr"), ring);
    return expr_from_json(doc, ring);
}

SubExpr monomial_to_expr(const Monomial& m) {
    std::vector<SubExpr> factors;
    for (const auto& [var, exp] : m.factors()) {
        if (var.base.kind == BaseKind::t)
            throw usage_error("monomial with t-factor cannot be expressed over x-generators");
        for (std::int64_t k = 0; k < exp; ++k)
            factors.push_back(SubExpr::generator(var.base.to_string(), var.theta));
    }
    return SubExpr::product(std::move(factors));
}

SubExpr poly_to_expr(const DiffPoly& p) {
    std::vector<SubExpr> terms;
    for (const auto& [m, c] : p.terms()) terms.push_back(SubExpr::scaled(c, monomial_to_expr(m)));
    return SubExpr::sum(std::move(terms));
}

TfDecomposition theta_tf_decompose(const SubalgebraSystem& sys, const DerivOp& theta,
                                   const DiffPoly& f) {
    require_over_x_variables(f, "theta_tf_decompose argument");
    if (f.ring() != sys.ring) throw usage_error("theta_tf_decompose: ring mismatch");
    std::size_t di = order_as_size(theta.e1, "derivative order");
    std::size_t dj = order_as_size(theta.e2, "derivative order");

    DiffPoly theta_f = f.apply_theta(theta);
    DiffPoly principal = theta_f.mul(t_variable(sys.ring));

    // theta(t f) = sum over (r,s) <= theta of C * d1^r d2^s(t) * rest(f);
    // every term with (r,s) != (0,0) lies in T
    std::vector<SubExpr> parts;
    for (std::size_t r = 0; r <= di; ++r) {
        for (std::size_t s = 0; s <= dj; ++s) {
            if (r == 0 && s == 0) continue;
            Rat coeff = sys.ring.mul(sys.ring.from_int(binomial(Int(di), Int(r))),
                                     sys.ring.from_int(binomial(Int(dj), Int(s))));
            if (sys.ring.is_zero(coeff)) continue;
            SubExpr t_leaf = r >= 1
                                 ? SubExpr::generator("d1t", DerivOp(Int(r - 1), Int(s)))
                                 : SubExpr::generator("d2t", DerivOp(Int(r), Int(s - 1)));
            DiffPoly rest = f.apply_theta(DerivOp(Int(di - r), Int(dj - s)));
            parts.push_back(SubExpr::scaled(
                coeff, SubExpr::product({std::move(t_leaf), poly_to_expr(rest)})));
        }
    }
    TfDecomposition result{principal, SubExpr::sum(std::move(parts))};

    // verify by expansion
    DiffPoly lhs = t_variable(sys.ring).mul(f).apply_theta(theta);
    DiffPoly rhs = result.principal.add(result.remainder.evaluate(sys));
    if (lhs != rhs)
        throw std::logic_error("theta_tf_decompose: expansion check failed");
    return result;
}

SubExpr lift_to_subalgebra(const SubalgebraSystem& sys, const DiffPoly& f,
                           const std::vector<OperatorTerm>& witness) {
    require_over_x_variables(f, "lift target");
    if (f.ring() != sys.ring) throw usage_error("lift: ring mismatch");

    // the witness must reproduce f exactly
    DiffPoly rebuilt = DiffPoly::zero(sys.ring, Mode::free_algebra);
    for (const auto& w : witness) {
        if (w.gen_index >= sys.base_generators.size())
            throw validation_error("witness generator index out of range");
        rebuilt = rebuilt.add(sys.base_generators[w.gen_index]
                                  .apply_theta(w.theta)
                                  .mul_monomial(w.v, w.lambda));
    }
    if (rebuilt != f)
        throw validation_error("ideal witness does not reproduce the target polynomial");

    // t f = sum lambda m theta(t f_i) - sum lambda m g_{theta,i} with each
    // g in T coming from the decomposition of theta(t f_i)
    std::vector<SubExpr> parts;
    for (const auto& w : witness) {
        std::string tf_name = "tf" + std::to_string(w.gen_index + 1);
        parts.push_back(SubExpr::scaled(
            w.lambda,
            SubExpr::product({monomial_to_expr(w.v), SubExpr::generator(tf_name, w.theta)})));
        TfDecomposition dec = theta_tf_decompose(sys, w.theta, sys.base_generators[w.gen_index]);
        parts.push_back(SubExpr::scaled(
            sys.ring.neg(w.lambda),
            SubExpr::product({monomial_to_expr(w.v), dec.remainder})));
    }
    SubExpr expr = SubExpr::sum(std::move(parts));

    DiffPoly expected = f.mul(t_variable(sys.ring));
    if (expr.evaluate(sys) != expected)
        throw std::logic_error("lift_to_subalgebra: constructed expression failed verification");
    return expr;
}

LiftVerification verify_lift(const SubalgebraSystem& sys, const SubExpr& expr, const DiffPoly& f) {
    require_over_x_variables(f, "verify_lift target");
    DiffPoly value(sys.ring, Mode::free_algebra);
    try {
        value = expr.evaluate(sys);
    } catch (const validation_error& e) {
        return {false, std::string("expression invalid: ") + e.what()};
    }
    DiffPoly expected = f.mul(t_variable(sys.ring));
    if (value != expected)
        return {false, "expression evaluates to a different polynomial than t*f"};
    return {true, "expression evaluates exactly to t*f"};
}

SubalgebraRefutation refute_tf_membership_bounded(const SubalgebraSystem& sys, const DiffPoly& f,
                                                  const OracleBounds& bounds) {
    require_over_x_variables(f, "refutation target");
    SubalgebraRefutation out{OracleVerdict::member, {}, std::nullopt, ""};
    if (f.is_zero()) {
        out.lift = SubExpr::sum({});
        return out;
    }

    // every element of deg_t degree one divisible by t is a combination of
    // m * t * theta(f_i), so t*f in S_I forces an ideal witness for f
    std::vector<OperatorTerm> combined;
    bool all_member = true, any_certified = false;
    for (const auto& component : f.homogeneous_components(Grading::variable_groups)) {
        OracleProblem p{component, sys.base_generators, {}, bounds};
        p.commands.assign(sys.base_generators.size(), std::nullopt);
        OracleResult r = oracle_member(p);
        out.component_results.push_back(r);
        if (r.verdict == OracleVerdict::member) {
            combined.insert(combined.end(), r.witness.begin(), r.witness.end());
        } else {
            all_member = false;
            if (r.verdict == OracleVerdict::certified_non_member) {
                any_certified = true;
                if (out.obstruction.empty()) out.obstruction = r.obstruction;
            }
        }
    }
    if (all_member) {
        out.verdict = OracleVerdict::member;
        out.lift = lift_to_subalgebra(sys, f, combined);
    } else if (any_certified) {
        out.verdict = OracleVerdict::certified_non_member;
    } else {
        out.verdict = OracleVerdict::not_member_within_bounds;
    }
    return out;
}

std::vector<DiffPoly> free_mode_generators(const EncodedSystem& sys) {
    std::vector<DiffPoly> gens;
    for (const auto& [cmd, g] : sys.generators)
        gens.push_back(compile_command(cmd, sys.ring, Mode::free_algebra));
    for (const auto& j : sys.j_generators) gens.push_back(j);
    return gens;
}

SubalgebraSystem make_subalgebra_system_from_machine(const EncodedSystem& sys) {
    return make_subalgebra_system(sys.ring, free_mode_generators(sys));
}

std::vector<OperatorTerm> free_witness_from_quotient(const EncodedSystem& sys,
                                                     const std::vector<OperatorTerm>& witness,
                                                     const DiffPoly& target) {
    if (target.mode() != Mode::quotient)
        throw usage_error("free_witness_from_quotient expects a quotient-mode target");
    std::vector<DiffPoly> gens = free_mode_generators(sys);
    std::size_t n_command_gens = sys.generators.size();

    std::vector<OperatorTerm> out;
    DiffPoly residue = lift_to_free(target);
    for (const auto& w : witness) {
        if (w.gen_index >= n_command_gens)
            throw usage_error("quotient witness references an unknown generator");
        out.push_back(w);
        residue = residue.sub(gens[w.gen_index].apply_theta(w.theta).mul_monomial(w.v, w.lambda));
    }

    // the residue vanishes in the quotient, so each monomial carries a mixed
    // variable; peel them into d1(x2)/d2(x1) witness entries
    const CoeffRing& ring = sys.ring;
    while (!residue.is_zero()) {
        auto [mono, coeff] = *residue.terms().begin();
        const DiffVar* mixed = nullptr;
        for (const auto& fct : mono.factors())
            if (fct.first.is_mixed()) {
                mixed = &fct.first;
                break;
            }
        if (!mixed)
            throw validation_error("quotient witness does not lift: residue has a monomial "
                                   "without mixed variables: " +
                                   mono.to_string());
        std::size_t gen_index;
        DerivOp theta;
        if (mixed->base.kind == BaseKind::x2) {
            gen_index = n_command_gens;     // d1(x2)
            theta = DerivOp(mixed->theta.e1 - 1, mixed->theta.e2);
        } else {
            gen_index = n_command_gens + 1; // d2(x1)
            theta = DerivOp(mixed->theta.e1, mixed->theta.e2 - 1);
        }
        Monomial rest = mono.without_one(*mixed);
        out.push_back({coeff, rest, theta, gen_index});
        residue = residue.sub(gens[gen_index].apply_theta(theta).mul_monomial(rest, coeff));
    }
    return out;
}

} // namespace diffalg
