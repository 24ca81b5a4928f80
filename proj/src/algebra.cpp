#include "diffalg/algebra.hpp"

#include <algorithm>
#include <sstream>

namespace diffalg {

std::string DerivOp::to_string() const {
    return "[" + e1.str() + "," + e2.str() + "]";
}

std::string VarBase::to_string() const {
    switch (kind) {
        case BaseKind::x1: return "x1";
        case BaseKind::x2: return "x2";
        case BaseKind::q: return "q" + std::to_string(index);
        case BaseKind::t: return "t";
    }
    return "?";
}

std::optional<VarBase> VarBase::parse(const std::string& name) {
    if (name == "x1") return x1();
    if (name == "x2") return x2();
    if (name == "t") return t();
    if (name.size() >= 2 && name[0] == 'q') {
        for (std::size_t i = 1; i < name.size(); ++i)
            if (name[i] < '0' || name[i] > '9') return std::nullopt;
        if (name.size() > 7) return std::nullopt; // q-index capped at 6 digits
        return q(std::stoi(name.substr(1)));
    }
    return std::nullopt;
}

std::string mode_name(Mode m) { return m == Mode::free_algebra ? "A" : "B"; }

bool DiffVar::is_mixed() const {
    if (base.kind == BaseKind::x1) return theta.e2 > 0;
    if (base.kind == BaseKind::x2) return theta.e1 > 0;
    return false;
}

bool DiffVar::valid_in(Mode mode) const {
    return mode == Mode::free_algebra || !is_mixed();
}

std::string DiffVar::to_string() const {
    return base.to_string() + theta.to_string();
}

Monomial Monomial::variable(const DiffVar& v, std::int64_t exp) {
    Monomial m;
    if (exp < 0) throw usage_error("negative exponent in monomial");
    if (exp > 0) m.factors_.push_back({v, exp});
    return m;
}

Monomial Monomial::from_factors(std::vector<Factor> factors) {
    std::sort(factors.begin(), factors.end(),
              [](const Factor& a, const Factor& b) { return a.first < b.first; });
    Monomial m;
    for (auto& f : factors) {
        if (f.second < 0) throw usage_error("negative exponent in monomial");
        if (f.second == 0) continue;
        if (!m.factors_.empty() && m.factors_.back().first == f.first)
            m.factors_.back().second += f.second;
        else
            m.factors_.push_back(std::move(f));
    }
    return m;
}

Monomial Monomial::times(const Monomial& o) const {
    Monomial r;
    auto a = factors_.begin(), b = o.factors_.begin();
    while (a != factors_.end() && b != o.factors_.end()) {
        if (a->first < b->first)
            r.factors_.push_back(*a++);
        else if (b->first < a->first)
            r.factors_.push_back(*b++);
        else {
            r.factors_.push_back({a->first, a->second + b->second});
            ++a;
            ++b;
        }
    }
    r.factors_.insert(r.factors_.end(), a, factors_.end());
    r.factors_.insert(r.factors_.end(), b, o.factors_.end());
    return r;
}

Monomial Monomial::times_var(const DiffVar& v, std::int64_t exp) const {
    return times(variable(v, exp));
}

Monomial Monomial::without_one(const DiffVar& v) const {
    Monomial r;
    bool found = false;
    for (const auto& f : factors_) {
        if (!found && f.first == v) {
            found = true;
            if (f.second > 1) r.factors_.push_back({f.first, f.second - 1});
        } else {
            r.factors_.push_back(f);
        }
    }
    if (!found) throw usage_error("variable " + v.to_string() + " not in monomial");
    return r;
}

Int Monomial::total_degree() const {
    Int d(0);
    for (const auto& f : factors_) d += f.second;
    return d;
}

Int Monomial::count(BaseKind kind) const {
    Int d(0);
    for (const auto& f : factors_)
        if (f.first.base.kind == kind) d += f.second;
    return d;
}

Int Monomial::count_base(const VarBase& b) const {
    Int d(0);
    for (const auto& f : factors_)
        if (f.first.base == b) d += f.second;
    return d;
}

bool Monomial::contains_base(const VarBase& b) const {
    for (const auto& f : factors_)
        if (f.first.base == b) return true;
    return false;
}

bool Monomial::has_mixed_factor() const {
    for (const auto& f : factors_)
        if (f.first.is_mixed()) return true;
    return false;
}

Monomial Monomial::x_part() const {
    Monomial r;
    for (const auto& f : factors_)
        if (f.first.base.is_x()) r.factors_.push_back(f);
    return r;
}

bool Monomial::valid_in(Mode mode) const {
    for (const auto& f : factors_)
        if (!f.first.valid_in(mode)) return false;
    return true;
}

bool Monomial::operator<(const Monomial& o) const {
    auto a = factors_.begin(), b = o.factors_.begin();
    while (a != factors_.end() && b != o.factors_.end()) {
        if (a->first != b->first) return a->first < b->first;
        if (a->second != b->second) return a->second < b->second;
        ++a;
        ++b;
    }
    return a == factors_.end() && b != o.factors_.end();
}

std::string Monomial::to_string() const {
    if (factors_.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i) s += " * ";
        s += factors_[i].first.to_string() + "^" + std::to_string(factors_[i].second);
    }
    return s;
}

MultiDegree multidegree(const Monomial& m) {
    MultiDegree d{Int(0), Int(0)};
    for (const auto& f : m.factors()) {
        if (f.first.base.kind == BaseKind::x1)
            d.d1 += (f.first.theta.e1 + 1) * f.second;
        else if (f.first.base.kind == BaseKind::x2)
            d.d2 += (f.first.theta.e2 + 1) * f.second;
    }
    return d;
}

std::string MultiDegree::to_string() const {
    return "(" + d1.str() + "," + d2.str() + ")";
}

DiffPoly DiffPoly::constant(CoeffRing ring, Mode mode, const Rat& c) {
    DiffPoly p(ring, mode);
    p.accumulate(Monomial::one(), ring.normalize(c));
    return p;
}

DiffPoly DiffPoly::variable(CoeffRing ring, Mode mode, const DiffVar& v) {
    return monomial(ring, mode, Monomial::variable(v), ring.one());
}

DiffPoly DiffPoly::monomial(CoeffRing ring, Mode mode, const Monomial& m, const Rat& c) {
    if (!m.valid_in(mode))
        throw usage_error("monomial " + m.to_string() + " is not valid in mode " + mode_name(mode));
    DiffPoly p(ring, mode);
    p.accumulate(m, ring.normalize(c));
    return p;
}

void DiffPoly::accumulate(const Monomial& m, const Rat& c) {
    if (ring_.is_zero(c)) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
        return;
    }
    Rat s = ring_.add(it->second, c);
    if (ring_.is_zero(s))
        terms_.erase(it);
    else
        it->second = std::move(s);
}

void require_compatible(const DiffPoly& a, const DiffPoly& b, const char* op) {
    if (a.ring() != b.ring())
        throw usage_error(std::string(op) + ": ring mismatch (" + a.ring().name() + " vs " +
                          b.ring().name() + ")");
    if (a.mode() != b.mode())
        throw usage_error(std::string(op) + ": mode mismatch (" + mode_name(a.mode()) + " vs " +
                          mode_name(b.mode()) + ")");
}

DiffPoly DiffPoly::add(const DiffPoly& o) const {
    require_compatible(*this, o, "add");
    DiffPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.accumulate(m, c);
    return r;
}

DiffPoly DiffPoly::sub(const DiffPoly& o) const {
    require_compatible(*this, o, "sub");
    DiffPoly r = *this;
    for (const auto& [m, c] : o.terms_) r.accumulate(m, ring_.neg(c));
    return r;
}

DiffPoly DiffPoly::neg() const {
    DiffPoly r(ring_, mode_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, ring_.neg(c));
    return r;
}

DiffPoly DiffPoly::scale(const Rat& c) const {
    DiffPoly r(ring_, mode_);
    Rat cc = ring_.normalize(c);
    if (ring_.is_zero(cc)) return r;
    for (const auto& [m, coeff] : terms_) r.accumulate(m, ring_.mul(coeff, cc));
    return r;
}

DiffPoly DiffPoly::mul_monomial(const Monomial& mono, const Rat& c) const {
    if (!mono.valid_in(mode_))
        throw usage_error("monomial " + mono.to_string() + " invalid in mode " + mode_name(mode_));
    DiffPoly r(ring_, mode_);
    Rat cc = ring_.normalize(c);
    if (ring_.is_zero(cc)) return r;
    for (const auto& [m, coeff] : terms_) r.accumulate(m.times(mono), ring_.mul(coeff, cc));
    return r;
}

DiffPoly DiffPoly::mul(const DiffPoly& o) const {
    require_compatible(*this, o, "mul");
    DiffPoly r(ring_, mode_);
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_)
            r.accumulate(ma.times(mb), ring_.mul(ca, cb));
    return r;
}

std::optional<DiffVar> derive_var(const DiffVar& v, int i, Mode mode) {
    if (i != 1 && i != 2) throw usage_error("derivation index must be 1 or 2");
    if (mode == Mode::quotient) {
        if (v.base.kind == BaseKind::x1 && i == 2) return std::nullopt;
        if (v.base.kind == BaseKind::x2 && i == 1) return std::nullopt;
    }
    DiffVar d = v;
    if (i == 1)
        d.theta.e1 += 1;
    else
        d.theta.e2 += 1;
    return d;
}

DiffPoly DiffPoly::derive(int i) const {
    DiffPoly r(ring_, mode_);
    for (const auto& [m, c] : terms_) {
        const auto& factors = m.factors();
        for (std::size_t k = 0; k < factors.size(); ++k) {
            auto dv = derive_var(factors[k].first, i, mode_);
            if (!dv) continue;
            Rat coeff = ring_.mul(c, ring_.from_int(factors[k].second));
            if (ring_.is_zero(coeff)) continue;
            Monomial nm = m.without_one(factors[k].first).times_var(*dv);
            r.accumulate(nm, coeff);
        }
    }
    return r;
}

DiffPoly DiffPoly::apply_theta(const DerivOp& theta, std::uint64_t step_budget) const {
    if (theta.e1 < 0 || theta.e2 < 0) throw usage_error("negative derivative order");
    if (theta.order() > Int(step_budget))
        throw resource_error("derivative order " + theta.order().str() +
                             " exceeds step budget " + std::to_string(step_budget));
    DiffPoly r = *this;
    for (Int k(0); k < theta.e1; ++k) r = r.derive(1);
    for (Int k(0); k < theta.e2; ++k) r = r.derive(2);
    return r;
}

DegreeResult DiffPoly::deg() const {
    if (terms_.empty()) throw usage_error("deg of the zero polynomial");
    bool first = true, homogeneous = true;
    Int d(0);
    for (const auto& [m, c] : terms_) {
        Int td = m.total_degree();
        if (first) {
            d = td;
            first = false;
        } else if (td != d) {
            homogeneous = false;
            if (td > d) d = td;
        }
    }
    return {homogeneous, d};
}

MultiDegree DiffPoly::pair_degree() const {
    if (terms_.empty()) throw usage_error("Deg of the zero polynomial");
    MultiDegree best{Int(-1), Int(0)};
    bool first = true;
    for (const auto& [m, c] : terms_) {
        MultiDegree d = multidegree(m);
        if (first || best < d) {
            best = d;
            first = false;
        }
    }
    return best;
}

DiffPoly DiffPoly::highest_part() const {
    MultiDegree top = pair_degree();
    DiffPoly r(ring_, mode_);
    for (const auto& [m, c] : terms_)
        if (multidegree(m) == top) r.terms_.emplace(m, c);
    return r;
}

namespace {

// Component key under Grading::variable_groups: the exact x-part plus the
// collective q- and t-group degrees.
struct GroupKey {
    Monomial x_part;
    Int q;
    Int t;
    bool operator<(const GroupKey& o) const {
        if (x_part != o.x_part) return x_part < o.x_part;
        if (q != o.q) return q < o.q;
        return t < o.t;
    }
};

} // namespace

std::vector<DiffPoly> DiffPoly::homogeneous_components(Grading g) const {
    std::vector<DiffPoly> out;
    auto split = [&](auto key_of) {
        using Key = decltype(key_of(std::declval<const Monomial&>()));
        std::map<Key, DiffPoly> comps;
        for (const auto& [m, c] : terms_) {
            auto [it, fresh] = comps.try_emplace(key_of(m), ring_, mode_);
            it->second.accumulate(m, c);
        }
        for (auto& [k, p] : comps) out.push_back(std::move(p));
    };
    switch (g) {
        case Grading::total:
            split([](const Monomial& m) { return m.total_degree(); });
            break;
        case Grading::pair:
            split([](const Monomial& m) { return multidegree(m); });
            break;
        case Grading::variable_groups:
            split([](const Monomial& m) {
                return GroupKey{m.x_part(), m.count(BaseKind::q), m.count(BaseKind::t)};
            });
            break;
        case Grading::t_count:
            split([](const Monomial& m) { return m.count(BaseKind::t); });
            break;
    }
    return out;
}

bool DiffPoly::is_homogeneous(Grading g) const {
    return homogeneous_components(g).size() <= 1;
}

DegreeResult DiffPoly::t_degree() const {
    if (terms_.empty()) throw usage_error("deg_t of the zero polynomial");
    bool first = true, homogeneous = true;
    Int d(0);
    for (const auto& [m, c] : terms_) {
        Int td = m.count(BaseKind::t);
        if (first) {
            d = td;
            first = false;
        } else if (td != d) {
            homogeneous = false;
            if (td > d) d = td;
        }
    }
    return {homogeneous, d};
}

bool DiffPoly::operator==(const DiffPoly& o) const {
    return ring_ == o.ring_ && mode_ == o.mode_ && terms_ == o.terms_;
}

std::string DiffPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        bool negative = c < 0;
        Rat mag = negative ? Rat(-c) : c;
        if (first) {
            if (negative) out << "-";
            first = false;
        } else {
            out << (negative ? " - " : " + ");
        }
        std::string cs = ring_.to_string(mag);
        if (m.is_one())
            out << cs;
        else if (mag == 1)
            out << m.to_string();
        else
            out << cs << " * " << m.to_string();
    }
    return out.str();
}

DiffPoly project_to_quotient(const DiffPoly& a) {
    if (a.mode() != Mode::free_algebra)
        throw usage_error("project_to_quotient expects a free-mode polynomial");
    DiffPoly r(a.ring(), Mode::quotient);
    for (const auto& [m, c] : a.terms())
        if (!m.has_mixed_factor()) r.accumulate(m, c);
    return r;
}

DiffPoly lift_to_free(const DiffPoly& a) {
    if (a.mode() != Mode::quotient)
        throw usage_error("lift_to_free expects a quotient-mode polynomial");
    DiffPoly r(a.ring(), Mode::free_algebra);
    for (const auto& [m, c] : a.terms()) r.accumulate(m, c);
    return r;
}

} // namespace diffalg
