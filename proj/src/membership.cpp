#include "diffalg/membership.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <array>
#include <functional>
#include <set>
#include <thread>

namespace diffalg {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json int_to_json(const Int& v) {
    if (v >= Int(INT64_MIN) && v <= Int(INT64_MAX)) return v.convert_to<std::int64_t>();
    return v.str();
}

Int json_to_int(const ordered_json& j, const std::string& where) {
    if (j.is_number_integer()) return Int(j.get<std::int64_t>());
    if (j.is_string()) return parse_int(j.get<std::string>());
    throw validation_error(where + ": expected an integer or decimal string");
}

ordered_json config_to_json(const Config& c) {
    return ordered_json::array({c.state, int_to_json(c.c1), int_to_json(c.c2)});
}

Config config_from_json(const ordered_json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 3)
        throw validation_error(where + ": configuration must be [state,c1,c2]");
    Int state = json_to_int(j[0], where);
    Int c1 = json_to_int(j[1], where);
    Int c2 = json_to_int(j[2], where);
    if (state < 0 || state > Int(1 << 30) || c1 < 0 || c2 < 0)
        throw validation_error(where + ": configuration out of range");
    return Config(state.convert_to<int>(), c1, c2);
}

ordered_json command_to_json(const Command& c) {
    ordered_json e;
    e["i"] = c.i;
    e["eps"] = c.eps;
    e["sigma"] = c.sigma;
    e["j"] = c.j;
    e["alpha"] = c.alpha;
    e["beta"] = c.beta;
    return e;
}

Command command_from_json(const ordered_json& j, const std::string& where) {
    Command c;
    auto geti = [&](const char* f) {
        if (!j.contains(f) || !j.at(f).is_number_integer())
            throw validation_error(where + ": command field '" + std::string(f) + "' missing");
        return j.at(f).get<int>();
    };
    c.i = geti("i");
    c.eps = geti("eps");
    c.sigma = geti("sigma");
    c.j = geti("j");
    c.alpha = geti("alpha");
    c.beta = geti("beta");
    return c;
}

} // namespace

std::string Certificate::to_json_text() const {
    ordered_json doc;
    doc["field"] = target.ring().name();
    doc["target"] = target.to_string();
    doc["steps"] = ordered_json::array();
    for (const auto& s : steps) {
        ordered_json e;
        e["w"] = {{"eps", s.w.eps},
                  {"sigma", s.w.sigma},
                  {"i", int_to_json(s.w.i)},
                  {"j", int_to_json(s.w.j)}};
        e["command"] = command_to_json(s.command);
        e["from"] = config_to_json(s.from);
        e["to"] = config_to_json(s.to);
        doc["steps"].push_back(e);
    }
    return doc.dump(2) + "\n";
}

Certificate Certificate::from_json_text(const std::string& text, CoeffRing ring) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw validation_error(std::string("certificate file: JSON syntax error: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("target") || !doc.contains("steps"))
        throw validation_error("certificate file: expected object with 'target' and 'steps'");
    if (doc.contains("field") && doc["field"].get<std::string>() != ring.name())
        throw validation_error("certificate file: field " + doc["field"].get<std::string>() +
                               " does not match requested field " + ring.name());
    DiffPoly target = parse_poly(doc["target"].get<std::string>(), ring, Mode::quotient);
    Certificate cert{{}, target};
    std::size_t idx = 0;
    for (const auto& e : doc["steps"]) {
        std::string where = "steps[" + std::to_string(idx) + "]";
        if (!e.is_object() || !e.contains("w"))
            throw validation_error(where + ": malformed step");
        WOperator w;
        w.eps = e["w"].value("eps", -1);
        w.sigma = e["w"].value("sigma", -1);
        w.i = json_to_int(e["w"].at("i"), where);
        w.j = json_to_int(e["w"].at("j"), where);
        cert.steps.push_back({w, command_from_json(e.at("command"), where),
                              config_from_json(e.at("from"), where),
                              config_from_json(e.at("to"), where)});
        ++idx;
    }
    return cert;
}

WOperator step_witness(const Command& cmd, const Config& from) {
    if (cmd.eps != from.eps() || cmd.sigma != from.sigma())
        throw usage_error("step witness: command symbols do not match the configuration");
    WOperator w;
    w.eps = cmd.eps;
    w.sigma = cmd.sigma;
    w.i = from.c1 == 0 ? Int(0) : Int(from.c1 - 1);
    w.j = from.c2 == 0 ? Int(0) : Int(from.c2 - 1);
    w.validate();
    return w;
}

EnvOperator general_step_witness(const Command& cmd, const Config& from, const Int& a,
                                 const Int& b, CoeffRing ring, Mode mode) {
    if (cmd.eps != from.eps() || cmd.sigma != from.sigma())
        throw usage_error("step witness: command symbols do not match the configuration");
    Monomial pre = Monomial::one();
    Int s, t;
    if (cmd.eps == 1) {
        s = a; // the x1 tower comes out of the generator
    } else {
        pre = pre.times_var({VarBase::x1(), DerivOp::d1(a)});
        s = from.c1 - 1;
    }
    if (cmd.sigma == 1) {
        t = b;
    } else {
        pre = pre.times_var({VarBase::x2(), DerivOp::d2(b)});
        t = from.c2 - 1;
    }
    return EnvOperator::term(ring, mode, ring.one(), pre, DerivOp(s, t));
}

CertifyResult certify(const Machine& m, CoeffRing ring, const Config& start,
                      std::uint64_t max_steps) {
    if (start.state < 1) throw usage_error("certify: start state must be >= 1");
    Trace trace = run(m, start, max_steps);
    CertifyResult result{CertifyStatus::budget_exceeded, std::nullopt, trace};
    switch (trace.status) {
        case RunStatus::halted: break;
        case RunStatus::stuck: result.status = CertifyStatus::stuck; return result;
        case RunStatus::cycle_detected: result.status = CertifyStatus::cycle_detected; return result;
        case RunStatus::budget_exceeded: result.status = CertifyStatus::budget_exceeded; return result;
    }
    result.status = CertifyStatus::certificate;
    Certificate cert{{}, membership_target(start, trace.configs.back(), ring)};
    for (std::size_t k = 0; k < trace.commands.size(); ++k) {
        const Command& cmd = trace.commands[k];
        cert.steps.push_back(
            {step_witness(cmd, trace.configs[k]), cmd, trace.configs[k], trace.configs[k + 1]});
    }
    result.certificate = std::move(cert);
    return result;
}

VerifyOutcome verify_certificate(const EncodedSystem& sys, const Certificate& cert) {
    auto reject = [](const std::string& reason,
                     std::optional<std::size_t> step = std::nullopt) {
        return VerifyOutcome{false, reason, step};
    };
    if (cert.target.ring() != sys.ring)
        return reject("target field " + cert.target.ring().name() + " does not match system field " +
                      sys.ring.name());
    if (cert.steps.empty())
        return cert.target.is_zero() ? VerifyOutcome{true, "empty certificate, zero target", {}}
                                     : reject("empty certificate with nonzero target");

    DiffPoly total = DiffPoly::zero(sys.ring, Mode::quotient);
    for (std::size_t k = 0; k < cert.steps.size(); ++k) {
        const auto& s = cert.steps[k];
        try {
            s.w.validate();
        } catch (const validation_error& e) {
            return reject(std::string("w outside its W set: ") + e.what(), k);
        }
        if (s.w.eps != s.command.eps || s.w.sigma != s.command.sigma)
            return reject("w symbols do not match the command", k);
        const Command* table_cmd = sys.machine.find(s.command.i, s.command.eps, s.command.sigma);
        if (!table_cmd || !(*table_cmd == s.command))
            return reject("command not present in the machine", k);
        if (s.from.eps() != s.command.eps || s.from.sigma() != s.command.sigma)
            return reject("command does not apply to the source configuration", k);
        StepResult sr = step(sys.machine, s.from);
        if (sr.kind != StepKind::stepped || sr.next != s.to)
            return reject("configuration step mismatch", k);
        if (k + 1 < cert.steps.size() && !(s.to == cert.steps[k + 1].from))
            return reject("configuration chain broken", k);

        const DiffPoly* gen = nullptr;
        for (const auto& [cmd, g] : sys.generators)
            if (cmd == s.command) gen = &g;
        if (!gen) return reject("no generator for the command", k);
        DiffPoly lhs = w_to_operator(s.w, sys.ring, Mode::quotient).apply(*gen);
        DiffPoly rhs = membership_target(s.from, s.to, sys.ring);
        if (lhs != rhs) return reject("w(g) does not reproduce the step difference", k);
        total = total.add(lhs);
    }
    if (cert.steps.back().to.state != 0)
        return reject("final configuration is not terminal", cert.steps.size() - 1);
    if (total != cert.target) return reject("telescoped sum does not equal the target");
    return {true, "telescoping sum reproduces the target exactly", {}};
}

// ---------------------------------------------------------------- oracle

std::string oracle_verdict_name(OracleVerdict v) {
    switch (v) {
        case OracleVerdict::member: return "member";
        case OracleVerdict::not_member_within_bounds: return "not_member_within_bounds";
        case OracleVerdict::certified_non_member: return "certified_non_member";
    }
    return "?";
}

namespace {

struct GroupCounts {
    Int x1, x2, q, t;
};

GroupCounts counts_of(const Monomial& m) {
    return {m.count(BaseKind::x1), m.count(BaseKind::x2), m.count(BaseKind::q),
            m.count(BaseKind::t)};
}

// Collective group degrees of a polynomial, when homogeneous.
std::optional<GroupCounts> homogeneous_counts(const DiffPoly& p) {
    std::optional<GroupCounts> out;
    for (const auto& [m, c] : p.terms()) {
        GroupCounts g = counts_of(m);
        if (!out) {
            out = g;
        } else if (out->x1 != g.x1 || out->x2 != g.x2 || out->q != g.q || out->t != g.t) {
            return std::nullopt;
        }
    }
    return out;
}

std::set<int> q_bases_of(const DiffPoly& p) {
    std::set<int> out;
    for (const auto& [m, c] : p.terms())
        for (const auto& f : m.factors())
            if (f.first.base.kind == BaseKind::q) out.insert(f.first.base.index);
    return out;
}

bool every_monomial_mixed(const DiffPoly& p) {
    if (p.is_zero()) return false;
    for (const auto& [m, c] : p.terms())
        if (!m.has_mixed_factor()) return false;
    return true;
}

// Bounds-independent unreachability: no operator column over generator g can
// ever produce the monomial mu.
bool monomial_unreachable_from(const Monomial& mu, const DiffPoly& gen, const Int& target_q) {
    if (gen.is_zero()) return true;
    // every monomial of theta(v * gen) keeps a mixed factor if every monomial
    // of gen has one
    if (every_monomial_mixed(gen) && !mu.has_mixed_factor()) return true;
    // when the q-group degree forces the operator monomial to be q-free, the
    // q-bases of mu must all come from gen itself
    auto gen_counts = homogeneous_counts(gen);
    if (gen_counts && target_q - gen_counts->q == 0) {
        std::set<int> gen_bases = q_bases_of(gen);
        for (const auto& f : mu.factors())
            if (f.first.base.kind == BaseKind::q && !gen_bases.count(f.first.base.index))
                return true;
    }
    return false;
}

struct ColumnDesc {
    std::size_t gen_index;
    Monomial v;
    DerivOp theta;
};

// multisets of `count` variables drawn from `options` (indices non-decreasing)
void enumerate_multisets(const std::vector<DiffVar>& options, std::size_t count,
                         std::size_t from, Monomial& acc,
                         const std::function<void(const Monomial&)>& emit) {
    if (count == 0) {
        emit(acc);
        return;
    }
    for (std::size_t k = from; k < options.size(); ++k) {
        Monomial saved = acc;
        acc = acc.times_var(options[k]);
        enumerate_multisets(options, count - 1, k, acc, emit);
        acc = saved;
    }
}

std::vector<DiffVar> x_tower_options(BaseKind kind, Mode mode, unsigned max_xdeg) {
    std::vector<DiffVar> out;
    VarBase base = kind == BaseKind::x1 ? VarBase::x1() : VarBase::x2();
    for (unsigned a = 0; a <= max_xdeg; ++a) {
        if (mode == Mode::quotient) {
            out.push_back({base, kind == BaseKind::x1 ? DerivOp::d1(Int(a)) : DerivOp::d2(Int(a))});
        } else {
            for (unsigned b = 0; b <= max_xdeg; ++b)
                out.push_back({base, DerivOp(Int(a), Int(b))});
        }
    }
    return out;
}

std::vector<DiffVar> q_options(const std::set<int>& q_bases, unsigned max_order) {
    std::vector<DiffVar> out;
    for (int base : q_bases)
        for (unsigned i = 0; i <= max_order; ++i)
            for (unsigned j = 0; j <= max_order; ++j)
                out.push_back({VarBase::q(base), DerivOp(Int(i), Int(j))});
    return out;
}

std::vector<DiffVar> t_options(unsigned max_order) {
    std::vector<DiffVar> out;
    for (unsigned i = 0; i <= max_order; ++i)
        for (unsigned j = 0; j <= max_order; ++j)
            out.push_back({VarBase::t(), DerivOp(Int(i), Int(j))});
    return out;
}

std::size_t small_count(const Int& v, const char* what) {
    if (v < 0 || v > 64) throw resource_error(std::string(what) + " out of range: " + v.str());
    return v.convert_to<std::size_t>();
}

} // namespace

OracleProblem problem_for(const EncodedSystem& sys, const DiffPoly& target,
                          const OracleBounds& bounds) {
    OracleProblem p{target, {}, {}, bounds};
    for (const auto& [cmd, g] : sys.generators) {
        p.generators.push_back(g);
        p.commands.push_back(cmd);
    }
    return p;
}

bool operator_in_W(const Monomial& v, const DerivOp& theta, const Command& cmd) {
    Monomial expect = Monomial::one();
    if (cmd.eps == 0) expect = expect.times_var({VarBase::x1(), DerivOp::identity()});
    if (cmd.sigma == 0) expect = expect.times_var({VarBase::x2(), DerivOp::identity()});
    if (!(v == expect)) return false;
    if (cmd.eps == 1 && theta.e1 != 0) return false;
    if (cmd.sigma == 1 && theta.e2 != 0) return false;
    return true;
}

bool operator_in_V(const Monomial& v, const DerivOp& theta, const Command& cmd) {
    (void)theta;
    std::size_t expected_factors = (cmd.eps == 0 ? 1u : 0u) + (cmd.sigma == 0 ? 1u : 0u);
    if (v.factors().size() != expected_factors) return false;
    bool seen_x1 = false, seen_x2 = false;
    for (const auto& f : v.factors()) {
        if (f.second != 1) return false;
        if (f.first.base.kind == BaseKind::x1 && cmd.eps == 0 && f.first.theta.e1 >= 1 &&
            f.first.theta.e2 == 0)
            seen_x1 = true;
        else if (f.first.base.kind == BaseKind::x2 && cmd.sigma == 0 && f.first.theta.e2 >= 1 &&
                 f.first.theta.e1 == 0)
            seen_x2 = true;
        else
            return false;
    }
    return (cmd.eps == 1 || seen_x1) && (cmd.sigma == 1 || seen_x2);
}

OracleResult oracle_member(const OracleProblem& p) {
    const CoeffRing& ring = p.target.ring();
    const Mode mode = p.target.mode();
    if (!ring.is_field())
        throw usage_error("oracle requires a coefficient field (Q or GF(p))");
    if (p.target.is_zero()) {
        // the zero polynomial is a member via the empty combination
        return {OracleVerdict::member, {}, "", p.bounds, 0};
    }
    for (const auto& g : p.generators)
        if (g.ring() != ring || g.mode() != mode)
            throw usage_error("oracle: generator ring/mode mismatch");
    if (!p.target.is_homogeneous(Grading::total) ||
        !p.target.is_homogeneous(Grading::variable_groups))
        throw usage_error("oracle target must be multi-homogeneous; decompose it first");

    OracleResult result{OracleVerdict::not_member_within_bounds, {}, "", p.bounds, 0};

    GroupCounts target_counts = counts_of(p.target.terms().begin()->first);
    Int target_deg = p.target.terms().begin()->first.total_degree();

    // global grading obstructions (independent of any bound)
    Int target_q = target_counts.q;
    for (const auto& [mu, c] : p.target.terms()) {
        bool unreachable_everywhere = true;
        for (const auto& g : p.generators)
            if (!monomial_unreachable_from(mu, g, target_q)) {
                unreachable_everywhere = false;
                break;
            }
        if (unreachable_everywhere) {
            result.verdict = OracleVerdict::certified_non_member;
            result.obstruction = "grading obstruction: no operator applied to any generator can "
                                 "produce the monomial " +
                                 mu.to_string();
            return result;
        }
    }
    // a group-homogeneous generator whose counts exceed the target's in some
    // group can never participate, whatever the bounds
    {
        bool any_usable = false;
        for (const auto& g : p.generators) {
            if (g.is_zero()) continue;
            auto gc = homogeneous_counts(g);
            if (gc && (target_counts.x1 < gc->x1 || target_counts.x2 < gc->x2 ||
                       target_counts.q < gc->q || target_counts.t < gc->t)) {
                continue;
            }
            any_usable = true;
            break;
        }
        if (!any_usable) {
            result.verdict = OracleVerdict::certified_non_member;
            result.obstruction = "grading obstruction: every generator exceeds the target in "
                                 "some variable-group degree";
            return result;
        }
    }

    std::set<int> all_q_bases = q_bases_of(p.target);
    for (const auto& g : p.generators)
        for (int b : q_bases_of(g)) all_q_bases.insert(b);

    // ---- enumerate candidate columns
    std::vector<ColumnDesc> columns;
    auto push_column_family = [&](std::size_t k, const Monomial& v) {
        for (unsigned s = 0; s <= p.bounds.max_order; ++s)
            for (unsigned t = 0; t <= p.bounds.max_order; ++t) {
                if (columns.size() >= p.bounds.column_cap)
                    throw resource_error("oracle search space exceeds the column cap " +
                                         std::to_string(p.bounds.column_cap) +
                                         " (raise --column-cap or tighten bounds)");
                columns.push_back({k, v, DerivOp(Int(s), Int(t))});
            }
    };

    std::vector<DiffVar> opt_x1 = x_tower_options(BaseKind::x1, mode, p.bounds.max_xdeg);
    std::vector<DiffVar> opt_x2 = x_tower_options(BaseKind::x2, mode, p.bounds.max_xdeg);
    std::vector<DiffVar> opt_q = q_options(all_q_bases, p.bounds.max_order);
    std::vector<DiffVar> opt_t = t_options(p.bounds.max_order);

    for (std::size_t k = 0; k < p.generators.size(); ++k) {
        const DiffPoly& g = p.generators[k];
        if (g.is_zero()) continue;

        std::vector<std::array<std::size_t, 4>> shapes; // counts (x1, x2, q, t)
        auto gen_counts = homogeneous_counts(g);
        bool deg_homog = g.is_homogeneous(Grading::total);
        if (!p.bounds.strict && gen_counts && deg_homog) {
            Int nx1 = target_counts.x1 - gen_counts->x1;
            Int nx2 = target_counts.x2 - gen_counts->x2;
            Int nq = target_counts.q - gen_counts->q;
            Int nt = target_counts.t - gen_counts->t;
            if (nx1 < 0 || nx2 < 0 || nq < 0 || nt < 0) continue;
            shapes.push_back({small_count(nx1, "operator x1 count"),
                              small_count(nx2, "operator x2 count"),
                              small_count(nq, "operator q count"),
                              small_count(nt, "operator t count")});
        } else {
            // strict search or inhomogeneous generator: constrain only the
            // total degree window of the operator monomial
            Int mindeg(0), maxdeg(0);
            bool first = true;
            for (const auto& [m, c] : g.terms()) {
                Int d = m.total_degree();
                if (first || d < mindeg) mindeg = d;
                if (first || d > maxdeg) maxdeg = d;
                first = false;
            }
            Int lo = target_deg - maxdeg;
            Int hi = target_deg - mindeg;
            if (hi < 0) continue;
            if (lo < 0) lo = 0;
            std::size_t lo_s = small_count(lo, "operator degree"),
                        hi_s = small_count(hi, "operator degree");
            for (std::size_t c1 = 0; c1 <= hi_s; ++c1)
                for (std::size_t c2 = 0; c1 + c2 <= hi_s; ++c2)
                    for (std::size_t cq = 0; c1 + c2 + cq <= hi_s; ++cq)
                        for (std::size_t ct = 0; c1 + c2 + cq + ct <= hi_s; ++ct)
                            if (c1 + c2 + cq + ct >= lo_s) shapes.push_back({c1, c2, cq, ct});
        }

        for (const auto& shape : shapes) {
            Monomial acc = Monomial::one();
            enumerate_multisets(opt_x1, shape[0], 0, acc, [&](const Monomial& m1) {
                Monomial acc2 = m1;
                enumerate_multisets(opt_x2, shape[1], 0, acc2, [&](const Monomial& m2) {
                    Monomial acc3 = m2;
                    enumerate_multisets(opt_q, shape[2], 0, acc3, [&](const Monomial& m3) {
                        Monomial acc4 = m3;
                        enumerate_multisets(opt_t, shape[3], 0, acc4,
                                            [&](const Monomial& m4) { push_column_family(k, m4); });
                    });
                });
            });
        }
    }
    result.columns_searched = columns.size();

    // ---- materialize column polynomials (independent applications)
    std::vector<DiffPoly> column_polys(columns.size(), DiffPoly::zero(ring, mode));
    std::map<std::pair<std::size_t, DerivOp>, DiffPoly> theta_cache;
    for (const auto& col : columns)
        theta_cache.try_emplace({col.gen_index, col.theta}, DiffPoly::zero(ring, mode));
    for (auto& [key, poly] : theta_cache)
        poly = p.generators[key.first].apply_theta(key.second);

    auto materialize = [&](std::size_t begin, std::size_t end) {
        for (std::size_t c = begin; c < end; ++c) {
            const auto& col = columns[c];
            column_polys[c] = theta_cache.at({col.gen_index, col.theta})
                                  .mul_monomial(col.v, ring.one());
        }
    };
    unsigned jobs = p.bounds.jobs == 0 ? 1 : p.bounds.jobs;
    if (jobs <= 1 || columns.size() < 64) {
        materialize(0, columns.size());
    } else {
        std::vector<std::thread> workers;
        std::size_t chunk = (columns.size() + jobs - 1) / jobs;
        for (unsigned w = 0; w < jobs; ++w) {
            std::size_t b = w * chunk, e = std::min(columns.size(), b + chunk);
            if (b >= e) break;
            workers.emplace_back(materialize, b, e);
        }
        for (auto& t : workers) t.join();
    }

    // ---- row indexing
    std::map<Monomial, std::size_t> row_of;
    auto row_index = [&](const Monomial& m) {
        auto [it, fresh] = row_of.try_emplace(m, row_of.size());
        return it->second;
    };
    for (const auto& [m, c] : p.target.terms()) row_index(m);
    std::vector<std::vector<std::pair<std::size_t, Rat>>> column_entries(columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c)
        for (const auto& [m, coeff] : column_polys[c].terms())
            column_entries[c].push_back({row_index(m), coeff});

    // ---- restrict to the block of rows reachable from the target monomials
    std::size_t nrows = row_of.size();
    std::vector<std::vector<std::size_t>> cols_touching(nrows);
    for (std::size_t c = 0; c < columns.size(); ++c)
        for (const auto& [r, coeff] : column_entries[c]) cols_touching[r].push_back(c);

    std::vector<bool> row_in(nrows, false), col_in(columns.size(), false);
    std::vector<std::size_t> frontier;
    for (const auto& [m, c] : p.target.terms()) {
        std::size_t r = row_of.at(m);
        row_in[r] = true;
        frontier.push_back(r);
    }
    while (!frontier.empty()) {
        std::size_t r = frontier.back();
        frontier.pop_back();
        for (std::size_t c : cols_touching[r]) {
            if (col_in[c]) continue;
            col_in[c] = true;
            for (const auto& [rr, coeff] : column_entries[c])
                if (!row_in[rr]) {
                    row_in[rr] = true;
                    frontier.push_back(rr);
                }
        }
    }

    std::vector<std::size_t> live_cols;
    for (std::size_t c = 0; c < columns.size(); ++c)
        if (col_in[c]) live_cols.push_back(c);
    std::vector<std::size_t> col_slot(columns.size(), SIZE_MAX);
    for (std::size_t s = 0; s < live_cols.size(); ++s) col_slot[live_cols[s]] = s;

    // ---- assemble equations per live row and solve
    LinearSystem system(ring, live_cols.size());
    std::vector<std::vector<std::pair<std::size_t, Rat>>> row_entries(nrows);
    for (std::size_t c : live_cols)
        for (const auto& [r, coeff] : column_entries[c])
            row_entries[r].push_back({col_slot[c], coeff});
    std::map<std::size_t, Rat> rhs_of_row;
    for (const auto& [m, c] : p.target.terms()) rhs_of_row[row_of.at(m)] = c;
    for (std::size_t r = 0; r < nrows; ++r) {
        if (!row_in[r]) continue;
        auto rhs_it = rhs_of_row.find(r);
        system.add_equation(row_entries[r],
                            rhs_it == rhs_of_row.end() ? ring.zero() : rhs_it->second);
    }
    LinearSystem::Result solved = system.solve(false);
    if (!solved.feasible) {
        result.verdict = OracleVerdict::not_member_within_bounds;
        return result;
    }

    result.verdict = OracleVerdict::member;
    DiffPoly check = DiffPoly::zero(ring, mode);
    for (std::size_t s = 0; s < live_cols.size(); ++s) {
        if (ring.is_zero(solved.solution[s])) continue;
        const auto& col = columns[live_cols[s]];
        result.witness.push_back({solved.solution[s], col.v, col.theta, col.gen_index});
        check = check.add(column_polys[live_cols[s]].scale(solved.solution[s]));
    }
    if (check != p.target)
        throw std::logic_error("oracle: witness failed re-verification");
    return result;
}

std::string witness_to_json_text(const std::vector<OperatorTerm>& witness, const CoeffRing& ring,
                                 Mode mode) {
    ordered_json doc;
    doc["field"] = ring.name();
    doc["mode"] = mode_name(mode);
    doc["entries"] = ordered_json::array();
    for (const auto& w : witness) {
        ordered_json e;
        e["lambda"] = ring.to_string(w.lambda);
        e["monomial"] = w.v.to_string();
        e["theta"] = ordered_json::array({int_to_json(w.theta.e1), int_to_json(w.theta.e2)});
        e["gen"] = w.gen_index;
        doc["entries"].push_back(e);
    }
    return doc.dump(2) + "\n";
}

std::vector<OperatorTerm> witness_from_json_text(const std::string& text, const CoeffRing& ring,
                                                 Mode mode) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw validation_error(std::string("witness file: JSON syntax error: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("entries") || !doc["entries"].is_array())
        throw validation_error("witness file: expected an object with an 'entries' array");
    if (doc.contains("field") && doc["field"].get<std::string>() != ring.name())
        throw validation_error("witness file: field mismatch");
    if (doc.contains("mode") && doc["mode"].get<std::string>() != mode_name(mode))
        throw validation_error("witness file: mode mismatch");
    std::vector<OperatorTerm> out;
    std::size_t idx = 0;
    for (const auto& e : doc["entries"]) {
        std::string where = "entries[" + std::to_string(idx) + "]";
        if (!e.is_object() || !e.contains("lambda") || !e.contains("monomial") ||
            !e.contains("theta") || !e.contains("gen"))
            throw validation_error(where + ": needs lambda, monomial, theta, gen");
        OperatorTerm w;
        w.lambda = ring.parse(e["lambda"].get<std::string>());
        std::string mono_text = e["monomial"].get<std::string>();
        DiffPoly parsed = parse_poly(mono_text, ring, mode);
        if (mono_text == "1") {
            w.v = Monomial::one();
        } else {
            if (parsed.term_count() != 1 || parsed.terms().begin()->second != ring.one())
                throw validation_error(where + ": 'monomial' must be a single unit-coefficient "
                                               "monomial");
            w.v = parsed.terms().begin()->first;
        }
        if (!e["theta"].is_array() || e["theta"].size() != 2)
            throw validation_error(where + ": theta must be [i,j]");
        w.theta = DerivOp(json_to_int(e["theta"][0], where), json_to_int(e["theta"][1], where));
        if (w.theta.e1 < 0 || w.theta.e2 < 0)
            throw validation_error(where + ": negative derivative order");
        if (!e["gen"].is_number_unsigned())
            throw validation_error(where + ": gen must be a non-negative index");
        w.gen_index = e["gen"].get<std::size_t>();
        out.push_back(std::move(w));
        ++idx;
    }
    return out;
}

// ---------------------------------------------------------------- independence

IndependenceReport independence_check(const EncodedSystem& sys, unsigned bound) {
    IndependenceReport report;
    for (const auto& [cmd, g] : sys.generators) {
        std::vector<Int> as, bs, ss, ts;
        for (unsigned k = 1; k <= bound; ++k) as.push_back(Int(k));
        bs = as;
        for (unsigned k = 0; k <= bound; ++k) ss.push_back(Int(k));
        ts = ss;
        if (cmd.eps == 1) as = {Int(1)};   // tower absent; placeholder value
        if (cmd.sigma == 1) bs = {Int(1)};
        for (const Int& a : as)
            for (const Int& b : bs)
                for (const Int& s : ss)
                    for (const Int& t : ts) {
                        VOperator op{cmd.eps, cmd.sigma, a, b, s, t};
                        DiffPoly applied = w_to_operator(op, sys.ring, Mode::quotient).apply(g);
                        DiffPoly element = applied.is_zero() ? applied : applied.highest_part();
                        report.elements.push_back({op, cmd, element});
                    }
    }
    report.element_count = report.elements.size();

    std::map<Monomial, std::size_t> row_of;
    std::vector<std::vector<std::pair<std::size_t, Rat>>> row_entries;
    for (std::size_t c = 0; c < report.elements.size(); ++c) {
        for (const auto& [m, coeff] : report.elements[c].element.terms()) {
            auto [it, fresh] = row_of.try_emplace(m, row_of.size());
            if (fresh) row_entries.emplace_back();
            row_entries[it->second].push_back({c, coeff});
        }
    }
    CoeffRing field = sys.ring.kind() == RingKind::integers ? CoeffRing::rationals() : sys.ring;
    LinearSystem system(field, report.elements.size());
    for (const auto& entries : row_entries) system.add_equation(entries, field.zero());
    LinearSystem::Result solved = system.solve(true);
    report.rank = solved.rank;
    report.full_rank = solved.rank == report.elements.size();
    if (!report.full_rank && solved.kernel) {
        for (std::size_t c = 0; c < solved.kernel->size(); ++c)
            if (!field.is_zero((*solved.kernel)[c]))
                report.dependence.push_back({c, (*solved.kernel)[c]});
    }
    return report;
}

// ---------------------------------------------------------------- decision

std::string decision_verdict_name(DecisionVerdict v) {
    switch (v) {
        case DecisionVerdict::member: return "member";
        case DecisionVerdict::certified_non_member: return "certified_non_member";
        case DecisionVerdict::not_member_within_bounds: return "not_member_within_bounds";
        case DecisionVerdict::unknown: return "unknown";
    }
    return "?";
}

namespace {

// [state, c1, c2] when the monomial is x1 * x2 * (q_state derived)
std::optional<Config> config_of_monomial(const Monomial& m) {
    const auto& f = m.factors();
    if (f.size() != 3) return std::nullopt;
    if (!(f[0].first.base == VarBase::x1()) || f[0].second != 1 ||
        !f[0].first.theta.is_identity())
        return std::nullopt;
    if (!(f[1].first.base == VarBase::x2()) || f[1].second != 1 ||
        !f[1].first.theta.is_identity())
        return std::nullopt;
    if (f[2].first.base.kind != BaseKind::q || f[2].second != 1) return std::nullopt;
    return Config(f[2].first.base.index, f[2].first.theta.e1, f[2].first.theta.e2);
}

} // namespace

Decision decide_membership(const EncodedSystem& sys, const DiffPoly& target,
                           const DecisionBudgets& budgets) {
    Decision decision;
    if (target.ring() != sys.ring || target.mode() != Mode::quotient)
        throw usage_error("decide_membership: target must be a quotient-mode polynomial over " +
                          sys.ring.name());
    if (target.is_zero()) {
        decision.verdict = DecisionVerdict::member;
        return decision;
    }

    std::vector<DiffPoly> components = target.homogeneous_components(Grading::variable_groups);
    bool all_member = true, any_certified_non = false, any_within_bounds = false,
         any_unknown = false;
    bool cert_member = false, oracle_member_seen = false;

    for (const auto& component : components) {
        ComponentDecision cd{component, std::nullopt, std::nullopt, std::nullopt,
                             DecisionVerdict::unknown};

        // simulation path: a +-1 two-monomial configuration difference
        std::vector<std::pair<Config, Config>> pairs;
        if (component.term_count() == 2) {
            auto it = component.terms().begin();
            auto [m1, c1] = *it;
            ++it;
            auto [m2, c2] = *it;
            auto u1 = config_of_monomial(m1), u2 = config_of_monomial(m2);
            if (u1 && u2) {
                Rat one = sys.ring.one(), minus = sys.ring.neg(sys.ring.one());
                if (c1 == one && c2 == minus) pairs.push_back({*u1, *u2});
                if (c2 == one && c1 == minus) pairs.push_back({*u2, *u1});
                if (one == minus) { // characteristic 2: both orientations
                    pairs.clear();
                    if (c1 == one && c2 == one) {
                        pairs.push_back({*u1, *u2});
                        pairs.push_back({*u2, *u1});
                    }
                }
            }
        }
        for (const auto& [start, halt] : pairs) {
            if (start.state < 1) continue;
            CertifyResult cr = certify(sys.machine, sys.ring, start, budgets.max_steps);
            cd.simulation_status = cr.status;
            if (cr.status == CertifyStatus::certificate &&
                cr.trace.configs.back() == halt) {
                VerifyOutcome vo = verify_certificate(sys, *cr.certificate);
                if (!vo.accepted)
                    throw std::logic_error("decide: generated certificate failed verification: " +
                                           vo.reason);
                cd.certificate = cr.certificate;
                break;
            }
        }

        // bounded oracle path
        try {
            cd.oracle = oracle_member(problem_for(sys, component, budgets.oracle));
        } catch (const resource_error&) {
            // leave the component unknown through this path
        }

        if (cd.certificate) {
            cd.verdict = DecisionVerdict::member;
            cert_member = true;
            if (cd.oracle && cd.oracle->verdict == OracleVerdict::member) {
                oracle_member_seen = true;
                decision.paths_agree = true;
            }
        } else if (cd.oracle && cd.oracle->verdict == OracleVerdict::member) {
            cd.verdict = DecisionVerdict::member;
            oracle_member_seen = true;
        } else if (cd.oracle && cd.oracle->verdict == OracleVerdict::certified_non_member) {
            cd.verdict = DecisionVerdict::certified_non_member;
        } else if (cd.oracle) {
            cd.verdict = DecisionVerdict::not_member_within_bounds;
        } else {
            cd.verdict = DecisionVerdict::unknown;
        }

        all_member = all_member && cd.verdict == DecisionVerdict::member;
        any_certified_non |= cd.verdict == DecisionVerdict::certified_non_member;
        any_within_bounds |= cd.verdict == DecisionVerdict::not_member_within_bounds;
        any_unknown |= cd.verdict == DecisionVerdict::unknown;
        decision.components.push_back(std::move(cd));
    }

    if (all_member)
        decision.verdict = DecisionVerdict::member;
    else if (any_certified_non)
        decision.verdict = DecisionVerdict::certified_non_member;
    else if (any_unknown)
        decision.verdict = DecisionVerdict::unknown;
    else if (any_within_bounds)
        decision.verdict = DecisionVerdict::not_member_within_bounds;
    else
        decision.verdict = DecisionVerdict::unknown;
    (void)cert_member;
    (void)oracle_member_seen;
    return decision;
}

} // namespace diffalg
