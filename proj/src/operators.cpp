#include "diffalg/operators.hpp"

#include <sstream>

namespace diffalg {

EnvOperator EnvOperator::identity(CoeffRing ring, Mode mode) {
    return term(ring, mode, ring.one(), Monomial::one(), DerivOp::identity());
}

EnvOperator EnvOperator::term(CoeffRing ring, Mode mode, const Rat& coeff, const Monomial& v,
                              const DerivOp& theta) {
    if (!v.valid_in(mode))
        throw usage_error("operator monomial " + v.to_string() + " invalid in mode " +
                          mode_name(mode));
    EnvOperator op(ring, mode);
    op.accumulate(v, theta, ring.normalize(coeff));
    return op;
}

void EnvOperator::accumulate(const Monomial& v, const DerivOp& theta, const Rat& c) {
    if (ring_.is_zero(c)) return;
    auto key = std::make_pair(v, theta);
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(std::move(key), c);
        return;
    }
    Rat s = ring_.add(it->second, c);
    if (ring_.is_zero(s))
        terms_.erase(it);
    else
        it->second = std::move(s);
}

EnvOperator EnvOperator::add(const EnvOperator& o) const {
    if (ring_ != o.ring_ || mode_ != o.mode_) throw usage_error("operator add: ring/mode mismatch");
    EnvOperator r = *this;
    for (const auto& [k, c] : o.terms_) r.accumulate(k.first, k.second, c);
    return r;
}

EnvOperator EnvOperator::scale(const Rat& c) const {
    EnvOperator r(ring_, mode_);
    Rat cc = ring_.normalize(c);
    if (ring_.is_zero(cc)) return r;
    for (const auto& [k, coeff] : terms_) r.accumulate(k.first, k.second, ring_.mul(coeff, cc));
    return r;
}

DiffPoly EnvOperator::apply(const DiffPoly& a, std::uint64_t step_budget) const {
    if (a.ring() != ring_ || a.mode() != mode_)
        throw usage_error("operator apply: ring/mode mismatch");
    DiffPoly r(ring_, mode_);
    for (const auto& [k, c] : terms_)
        r = r.add(a.apply_theta(k.second, step_budget).mul_monomial(k.first, c));
    return r;
}

EnvOperator EnvOperator::compose(const EnvOperator& o, std::uint64_t step_budget) const {
    if (ring_ != o.ring_ || mode_ != o.mode_)
        throw usage_error("operator compose: ring/mode mismatch");
    EnvOperator r(ring_, mode_);
    for (const auto& [k1, c1] : terms_) {
        const Monomial& v1 = k1.first;
        const DerivOp& th1 = k1.second;
        if (th1.order() > Int(step_budget))
            throw resource_error("compose: derivative order exceeds step budget");
        for (const auto& [k2, c2] : o.terms_) {
            const Monomial& v2 = k2.first;
            const DerivOp& th2 = k2.second;
            // move th1 across v2: d1^p d2^q v2 = sum C(p,r)C(q,s) (d1^r d2^s v2) d1^{p-r} d2^{q-s}
            DiffPoly v2poly = DiffPoly::monomial(ring_, mode_, v2, ring_.one());
            for (Int rr(0); rr <= th1.e1; ++rr) {
                for (Int ss(0); ss <= th1.e2; ++ss) {
                    Rat binom = ring_.mul(ring_.from_int(binomial(th1.e1, rr)),
                                          ring_.from_int(binomial(th1.e2, ss)));
                    if (ring_.is_zero(binom)) continue;
                    DiffPoly derived = v2poly.apply_theta(DerivOp(rr, ss), step_budget);
                    DerivOp rest(th1.e1 - rr + th2.e1, th1.e2 - ss + th2.e2);
                    Rat base = ring_.mul(ring_.mul(c1, c2), binom);
                    for (const auto& [m, cm] : derived.terms())
                        r.accumulate(v1.times(m), rest, ring_.mul(base, cm));
                }
            }
        }
    }
    return r;
}

std::string EnvOperator::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        bool negative = c < 0;
        Rat mag = negative ? Rat(-c) : c;
        if (first) {
            if (negative) out << "-";
            first = false;
        } else {
            out << (negative ? " - " : " + ");
        }
        std::string cs = ring_.to_string(mag);
        if (k.first.is_one())
            out << cs;
        else if (mag == 1)
            out << k.first.to_string();
        else
            out << cs << " * " << k.first.to_string();
        out << " :: " << k.second.to_string();
    }
    return out.str();
}

void WOperator::validate() const {
    if ((eps != 0 && eps != 1) || (sigma != 0 && sigma != 1))
        throw validation_error("W operator: eps and sigma must be 0 or 1");
    if (i < 0 || j < 0) throw validation_error("W operator: negative derivative order");
    if (eps == 1 && i != 0)
        throw validation_error("W operator: i must be 0 when eps = 1");
    if (sigma == 1 && j != 0)
        throw validation_error("W operator: j must be 0 when sigma = 1");
}

std::string WOperator::to_string() const {
    Monomial pre = Monomial::one();
    if (eps == 0) pre = pre.times_var({VarBase::x1(), DerivOp::identity()});
    if (sigma == 0) pre = pre.times_var({VarBase::x2(), DerivOp::identity()});
    return (pre.is_one() ? std::string("1") : pre.to_string()) + " :: " +
           DerivOp(i, j).to_string();
}

void VOperator::validate() const {
    if ((eps != 0 && eps != 1) || (sigma != 0 && sigma != 1))
        throw validation_error("V operator: eps and sigma must be 0 or 1");
    if (s < 0 || t < 0) throw validation_error("V operator: negative derivative order");
    if (eps == 0 && a < 1) throw validation_error("V operator: tower order a must be >= 1");
    if (sigma == 0 && b < 1) throw validation_error("V operator: tower order b must be >= 1");
}

std::string VOperator::to_string() const {
    Monomial pre = Monomial::one();
    if (eps == 0) pre = pre.times_var({VarBase::x1(), DerivOp::d1(a)});
    if (sigma == 0) pre = pre.times_var({VarBase::x2(), DerivOp::d2(b)});
    return (pre.is_one() ? std::string("1") : pre.to_string()) + " :: " +
           DerivOp(s, t).to_string();
}

EnvOperator w_to_operator(const WOperator& w, CoeffRing ring, Mode mode) {
    w.validate();
    Monomial pre = Monomial::one();
    if (w.eps == 0) pre = pre.times_var({VarBase::x1(), DerivOp::identity()});
    if (w.sigma == 0) pre = pre.times_var({VarBase::x2(), DerivOp::identity()});
    return EnvOperator::term(ring, mode, ring.one(), pre, DerivOp(w.i, w.j));
}

EnvOperator w_to_operator(const VOperator& v, CoeffRing ring, Mode mode) {
    v.validate();
    Monomial pre = Monomial::one();
    if (v.eps == 0) pre = pre.times_var({VarBase::x1(), DerivOp::d1(v.a)});
    if (v.sigma == 0) pre = pre.times_var({VarBase::x2(), DerivOp::d2(v.b)});
    return EnvOperator::term(ring, mode, ring.one(), pre, DerivOp(v.s, v.t));
}

} // namespace diffalg
