// diffalg command-line front end: machine simulation, generator compilation,
// certificate generation/verification, the bounded membership oracle, the
// independence checker and the subalgebra tools.
//
// Exit codes: 0 = established result, 2 = budget exhausted / unknown,
// 1 = usage or input error.

#include "diffalg/machines.hpp"
#include "diffalg/membership.hpp"
#include "diffalg/subalgebra.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace diffalg;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kExitEstablished = 0;
constexpr int kExitError = 1;
constexpr int kExitUnknown = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw usage_error("cannot open file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw usage_error("cannot write file '" + path + "'");
    out << content;
}

void emit(const ordered_json& doc) { std::cout << doc.dump(2) << "\n"; }

struct FieldOption {
    std::string name = "Q";
    CoeffRing ring() const { return CoeffRing::from_name(name); }
};

void add_field_option(CLI::App* cmd, FieldOption& field) {
    cmd->add_option("--field", field.name, "Coefficient field/ring: Q, Z, GF2, GF(p), Zp(p)")
        ->envname("DIFFALG_FIELD");
}

struct BoundsOptions {
    unsigned max_order = 8;
    unsigned max_xdeg = 4;
    std::size_t column_cap = 200000;
    bool strict = false;
    unsigned jobs = 1;

    OracleBounds bounds() const { return {max_order, max_xdeg, column_cap, strict, jobs}; }
};

void add_bounds_options(CLI::App* cmd, BoundsOptions& b) {
    cmd->add_option("--max-order", b.max_order, "Bound on operator derivative exponents")
        ->envname("DIFFALG_MAX_ORDER");
    cmd->add_option("--max-xdeg", b.max_xdeg, "Bound on tower orders inside operator monomials")
        ->envname("DIFFALG_MAX_XDEG");
    cmd->add_option("--column-cap", b.column_cap, "Abort when the search enumerates more columns")
        ->envname("DIFFALG_COLUMN_CAP");
    cmd->add_flag("--strict-oracle", b.strict,
                  "Also search operators outside the grading-compatible shapes")
        ->envname("DIFFALG_STRICT_ORACLE");
    cmd->add_option("--jobs", b.jobs, "Worker threads for operator application")
        ->envname("DIFFALG_JOBS");
}

ordered_json trace_to_json(const Trace& trace) {
    ordered_json configs = ordered_json::array();
    for (const auto& c : trace.configs) configs.push_back(c.to_string());
    ordered_json doc;
    doc["status"] = run_status_name(trace.status);
    doc["steps"] = trace.configs.size() - 1;
    doc["trace"] = configs;
    if (trace.status == RunStatus::cycle_detected) doc["cycle_step"] = trace.cycle_step;
    return doc;
}

ordered_json witness_summary(const std::vector<OperatorTerm>& witness, const CoeffRing& ring,
                             const std::vector<std::optional<Command>>& commands) {
    ordered_json arr = ordered_json::array();
    for (const auto& w : witness) {
        ordered_json e;
        e["lambda"] = ring.to_string(w.lambda);
        e["operator"] = (w.v.is_one() ? std::string("1") : w.v.to_string()) +
                        " :: " + w.theta.to_string();
        e["gen"] = w.gen_index;
        if (w.gen_index < commands.size() && commands[w.gen_index]) {
            const Command& cmd = *commands[w.gen_index];
            e["command"] = cmd.to_string();
            e["in_W"] = operator_in_W(w.v, w.theta, cmd);
            e["in_V"] = operator_in_V(w.v, w.theta, cmd);
        }
        arr.push_back(e);
    }
    return arr;
}

// ---- subcommand handlers ----

int cmd_run(const std::string& machine_path, const std::string& start_text,
            std::uint64_t max_steps) {
    Machine m = Machine::from_json_text(read_file(machine_path));
    Config start = Config::parse(start_text);
    Trace trace = run(m, start, max_steps);
    ordered_json doc = trace_to_json(trace);
    doc["summary"] = "run " + run_status_name(trace.status) + " after " +
                     std::to_string(trace.configs.size() - 1) + " step(s), final " +
                     trace.configs.back().to_string();
    emit(doc);
    return trace.status == RunStatus::budget_exceeded ? kExitUnknown : kExitEstablished;
}

int cmd_compile(const std::string& machine_path, const std::string& out_path,
                const FieldOption& field) {
    Machine m = Machine::from_json_text(read_file(machine_path));
    EncodedSystem sys = compile_machine(m, field.ring());
    std::ostringstream buf;
    write_generator_file(buf, sys);
    if (out_path.empty())
        std::cout << buf.str();
    else
        write_file(out_path, buf.str());
    return kExitEstablished;
}

int cmd_certify(const std::string& machine_path, const std::string& start_text,
                const std::string& halt_text, std::uint64_t max_steps, const FieldOption& field,
                const std::string& out_path) {
    Machine m = Machine::from_json_text(read_file(machine_path));
    Config start = Config::parse(start_text);
    if (start.state < 1) throw usage_error("certify: start state must be >= 1");
    CoeffRing ring = field.ring();
    CertifyResult result = certify(m, ring, start, max_steps);

    ordered_json doc;
    if (result.status != CertifyStatus::certificate) {
        std::string status = result.status == CertifyStatus::budget_exceeded ? "budget_exceeded"
                             : result.status == CertifyStatus::stuck         ? "stuck"
                                                                             : "cycle_detected";
        doc["status"] = status;
        doc["summary"] = "no certificate: machine did not halt (" + status + ")";
        emit(doc);
        return kExitUnknown;
    }
    const Config& final_cfg = result.trace.configs.back();
    if (!halt_text.empty()) {
        Config halt = Config::parse(halt_text);
        if (!(final_cfg == halt)) {
            doc["status"] = "halt_mismatch";
            doc["final"] = final_cfg.to_string();
            doc["summary"] = "machine halted at " + final_cfg.to_string() +
                             ", not at the requested target " + halt.to_string();
            emit(doc);
            return kExitUnknown;
        }
    }
    std::string cert_text = result.certificate->to_json_text();
    if (!out_path.empty()) write_file(out_path, cert_text);
    doc["status"] = "certificate";
    doc["steps"] = result.certificate->steps.size();
    doc["final"] = final_cfg.to_string();
    doc["target"] = result.certificate->target.to_string();
    if (out_path.empty()) doc["certificate"] = ordered_json::parse(cert_text);
    doc["summary"] = "halted at " + final_cfg.to_string() + " in " +
                     std::to_string(result.certificate->steps.size()) + " step(s)";
    emit(doc);
    return kExitEstablished;
}

int cmd_verify(const std::string& gens_path, const std::string& cert_path) {
    std::ifstream gin(gens_path);
    if (!gin) throw usage_error("cannot open file '" + gens_path + "'");
    EncodedSystem sys = read_generator_file(gin);
    Certificate cert = Certificate::from_json_text(read_file(cert_path), sys.ring);
    VerifyOutcome outcome = verify_certificate(sys, cert);
    ordered_json doc;
    doc["accepted"] = outcome.accepted;
    doc["reason"] = outcome.reason;
    if (outcome.failing_step) doc["failing_step"] = *outcome.failing_step;
    doc["summary"] = outcome.accepted ? "certificate accepted" : "certificate rejected";
    emit(doc);
    return outcome.accepted ? kExitEstablished : kExitError;
}

int cmd_oracle(const std::string& gens_path, const std::string& target_text,
               const BoundsOptions& bounds, const std::string& witness_out) {
    std::ifstream gin(gens_path);
    if (!gin) throw usage_error("cannot open file '" + gens_path + "'");
    EncodedSystem sys = read_generator_file(gin);
    DiffPoly target = parse_poly(target_text, sys.ring, Mode::quotient);

    ordered_json components = ordered_json::array();
    std::vector<OperatorTerm> full_witness;
    OracleVerdict combined = OracleVerdict::member;
    bool any_within_bounds = false, any_certified = false;
    for (const auto& component : target.homogeneous_components(Grading::variable_groups)) {
        OracleProblem problem = problem_for(sys, component, bounds.bounds());
        OracleResult r = oracle_member(problem);
        ordered_json cj;
        cj["component"] = component.to_string();
        cj["verdict"] = oracle_verdict_name(r.verdict);
        cj["columns_searched"] = r.columns_searched;
        if (r.verdict == OracleVerdict::member) {
            cj["witness"] = witness_summary(r.witness, sys.ring, problem.commands);
            full_witness.insert(full_witness.end(), r.witness.begin(), r.witness.end());
        }
        if (r.verdict == OracleVerdict::certified_non_member) {
            cj["obstruction"] = r.obstruction;
            any_certified = true;
        }
        if (r.verdict == OracleVerdict::not_member_within_bounds) any_within_bounds = true;
        components.push_back(cj);
    }
    if (any_certified)
        combined = OracleVerdict::certified_non_member;
    else if (any_within_bounds)
        combined = OracleVerdict::not_member_within_bounds;

    ordered_json doc;
    doc["verdict"] = oracle_verdict_name(combined);
    doc["components"] = components;
    doc["summary"] =
        combined == OracleVerdict::member
            ? "member: exact witness found"
            : (combined == OracleVerdict::certified_non_member
                   ? "certified non-member (grading obstruction)"
                   : "not member within bounds (max-order " + std::to_string(bounds.max_order) +
                         ", max-xdeg " + std::to_string(bounds.max_xdeg) + ")");
    emit(doc);
    if (combined == OracleVerdict::member && !witness_out.empty())
        write_file(witness_out, witness_to_json_text(full_witness, sys.ring, Mode::quotient));
    if (combined == OracleVerdict::member || combined == OracleVerdict::certified_non_member)
        return kExitEstablished;
    return kExitUnknown;
}

int cmd_independence(const std::string& gens_path, unsigned bound) {
    std::ifstream gin(gens_path);
    if (!gin) throw usage_error("cannot open file '" + gens_path + "'");
    EncodedSystem sys = read_generator_file(gin);
    IndependenceReport report = independence_check(sys, bound);
    ordered_json doc;
    doc["elements"] = report.element_count;
    doc["rank"] = report.rank;
    doc["full_rank"] = report.full_rank;
    if (!report.full_rank) {
        ordered_json dep = ordered_json::array();
        CoeffRing display = sys.ring.kind() == RingKind::integers ? CoeffRing::rationals()
                                                                  : sys.ring;
        for (const auto& [idx, coeff] : report.dependence) {
            ordered_json e;
            e["index"] = idx;
            e["coeff"] = display.to_string(coeff);
            e["operator"] = report.elements[idx].op.to_string();
            e["command"] = report.elements[idx].command.to_string();
            e["element"] = report.elements[idx].element.to_string();
            dep.push_back(e);
        }
        doc["dependence"] = dep;
    }
    doc["summary"] = report.full_rank
                         ? "full rank: " + std::to_string(report.rank) + " of " +
                               std::to_string(report.element_count) + " elements independent"
                         : "rank deficiency: explicit vanishing combination over " +
                               std::to_string(report.dependence.size()) + " element(s)";
    emit(doc);
    return kExitEstablished;
}

int cmd_decide(const std::string& gens_path, const std::string& target_text,
               std::uint64_t max_steps, const BoundsOptions& bounds) {
    std::ifstream gin(gens_path);
    if (!gin) throw usage_error("cannot open file '" + gens_path + "'");
    EncodedSystem sys = read_generator_file(gin);
    DiffPoly target = parse_poly(target_text, sys.ring, Mode::quotient);
    DecisionBudgets budgets{max_steps, bounds.bounds()};
    Decision decision = decide_membership(sys, target, budgets);
    ordered_json doc;
    doc["verdict"] = decision_verdict_name(decision.verdict);
    doc["paths_agree"] = decision.paths_agree;
    ordered_json comps = ordered_json::array();
    for (const auto& cd : decision.components) {
        ordered_json cj;
        cj["component"] = cd.component.to_string();
        cj["verdict"] = decision_verdict_name(cd.verdict);
        cj["via_certificate"] = cd.certificate.has_value();
        if (cd.oracle) cj["oracle_verdict"] = oracle_verdict_name(cd.oracle->verdict);
        if (cd.oracle && !cd.oracle->obstruction.empty())
            cj["obstruction"] = cd.oracle->obstruction;
        comps.push_back(cj);
    }
    doc["components"] = comps;
    doc["summary"] = "decision: " + decision_verdict_name(decision.verdict);
    emit(doc);
    if (decision.verdict == DecisionVerdict::member ||
        decision.verdict == DecisionVerdict::certified_non_member)
        return kExitEstablished;
    return kExitUnknown;
}

int cmd_element(unsigned fm, bool have_fm, const std::string& config_text,
                const std::string& halt_text, const FieldOption& field, const std::string& mode,
                std::uint64_t exponent_budget) {
    CoeffRing ring = field.ring();
    if (mode != "A" && mode != "B") throw usage_error("--mode must be A or B");
    Mode m = mode == "A" ? Mode::free_algebra : Mode::quotient;
    DiffPoly out = DiffPoly::zero(ring, m);
    if (have_fm) {
        out = test_element(fm, ring, m, Int(exponent_budget));
    } else if (!config_text.empty() && !halt_text.empty()) {
        out = membership_target(Config::parse(config_text), Config::parse(halt_text), ring, m);
    } else if (!config_text.empty()) {
        out = config_element(Config::parse(config_text), ring, m);
    } else {
        throw usage_error("element: give --fm or --config (optionally with --halt)");
    }
    std::cout << out.to_string() << "\n";
    return kExitEstablished;
}

int cmd_machines(const std::string& export_dir) {
    ordered_json doc = ordered_json::array();
    for (const auto& b : bundled_machines()) {
        ordered_json e;
        e["name"] = b.name;
        e["description"] = b.description;
        e["acyclic"] = b.acyclic;
        e["commands"] = b.machine.table().size();
        doc.push_back(e);
        if (!export_dir.empty())
            write_file(export_dir + "/" + b.name + ".json", b.machine.to_json_text());
    }
    emit(doc);
    return kExitEstablished;
}

SubalgebraSystem load_subalgebra_system(const std::string& machine_path,
                                        const std::string& gens_path, const FieldOption& field,
                                        std::optional<EncodedSystem>& encoded) {
    if (!machine_path.empty()) {
        Machine m = Machine::from_json_text(read_file(machine_path));
        encoded = compile_machine(m, field.ring());
        return make_subalgebra_system_from_machine(*encoded);
    }
    if (gens_path.empty()) throw usage_error("subalg: give --machine or --base-gens");
    CoeffRing ring = field.ring();
    std::vector<DiffPoly> gens;
    std::istringstream in(read_file(gens_path));
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        gens.push_back(parse_poly(line, ring, Mode::free_algebra));
    }
    return make_subalgebra_system(ring, std::move(gens));
}

int cmd_subalg_lift(const std::string& machine_path, const std::string& gens_path,
                    const FieldOption& field, const std::string& target_text,
                    const std::string& witness_path, bool from_quotient,
                    const std::string& out_path) {
    std::optional<EncodedSystem> encoded;
    SubalgebraSystem sys = load_subalgebra_system(machine_path, gens_path, field, encoded);

    DiffPoly f(field.ring(), Mode::free_algebra);
    std::vector<OperatorTerm> witness;
    if (from_quotient) {
        if (!encoded) throw usage_error("--from-quotient requires --machine");
        DiffPoly target_b = parse_poly(target_text, sys.ring, Mode::quotient);
        witness = witness_from_json_text(read_file(witness_path), sys.ring, Mode::quotient);
        witness = free_witness_from_quotient(*encoded, witness, target_b);
        f = lift_to_free(target_b);
    } else {
        f = parse_poly(target_text, sys.ring, Mode::free_algebra);
        witness = witness_from_json_text(read_file(witness_path), sys.ring, Mode::free_algebra);
    }
    SubExpr expr = lift_to_subalgebra(sys, f, witness);
    ordered_json doc;
    doc["lifted"] = true;
    if (!out_path.empty()) {
        ordered_json file;
        file["field"] = sys.ring.name();
        file["expr"] = ordered_json::parse(expr.to_json_text());
        write_file(out_path, file.dump(2) + "\n");
        doc["out"] = out_path;
    } else {
        doc["expr"] = ordered_json::parse(expr.to_json_text());
    }
    doc["summary"] = "t*f expressed over the subalgebra generators";
    emit(doc);
    return kExitEstablished;
}

int cmd_subalg_verify(const std::string& machine_path, const std::string& gens_path,
                      const FieldOption& field, const std::string& target_text,
                      const std::string& lift_path, bool from_quotient) {
    std::optional<EncodedSystem> encoded;
    SubalgebraSystem sys = load_subalgebra_system(machine_path, gens_path, field, encoded);
    DiffPoly f = from_quotient
                     ? lift_to_free(parse_poly(target_text, sys.ring, Mode::quotient))
                     : parse_poly(target_text, sys.ring, Mode::free_algebra);
    SubExpr expr = SubExpr::from_json_text(read_file(lift_path), sys.ring);
    LiftVerification v = verify_lift(sys, expr, f);
    ordered_json doc;
    doc["accepted"] = v.accepted;
    doc["reason"] = v.reason;
    doc["summary"] = v.accepted ? "lift verified" : "lift rejected";
    emit(doc);
    return v.accepted ? kExitEstablished : kExitError;
}

int cmd_subalg_refute(const std::string& machine_path, const std::string& gens_path,
                      const FieldOption& field, const std::string& target_text, bool from_quotient,
                      const BoundsOptions& bounds) {
    std::optional<EncodedSystem> encoded;
    SubalgebraSystem sys = load_subalgebra_system(machine_path, gens_path, field, encoded);
    DiffPoly f = from_quotient
                     ? lift_to_free(parse_poly(target_text, sys.ring, Mode::quotient))
                     : parse_poly(target_text, sys.ring, Mode::free_algebra);
    SubalgebraRefutation r = refute_tf_membership_bounded(sys, f, bounds.bounds());
    ordered_json doc;
    doc["verdict"] = oracle_verdict_name(r.verdict);
    if (!r.obstruction.empty()) doc["obstruction"] = r.obstruction;
    doc["summary"] = r.verdict == OracleVerdict::member
                         ? "t*f is a member: lift constructed"
                         : (r.verdict == OracleVerdict::certified_non_member
                                ? "t*f certified outside the subalgebra (grading obstruction)"
                                : "t*f not a member within the given bounds");
    emit(doc);
    return r.verdict == OracleVerdict::not_member_within_bounds ? kExitUnknown : kExitEstablished;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact differential-algebra toolkit: counter machines, ideal membership "
                 "certificates, a bounded membership oracle and subalgebra lifts"};
    app.require_subcommand(1);

    // run
    auto* run_cmd = app.add_subcommand("run", "Simulate a machine from a start configuration");
    std::string run_machine, run_start = "[1,0,0]";
    std::uint64_t run_steps = 10000;
    run_cmd->add_option("machine", run_machine, "Machine JSON file")->required();
    run_cmd->add_option("--start", run_start, "Start configuration [i,c1,c2]");
    run_cmd->add_option("--max-steps", run_steps, "Step budget")->envname("DIFFALG_MAX_STEPS");

    // compile
    auto* compile_cmd = app.add_subcommand("compile", "Compile a machine to its generator file");
    std::string compile_machine_path, compile_out;
    FieldOption compile_field;
    compile_cmd->add_option("machine", compile_machine_path, "Machine JSON file")->required();
    compile_cmd->add_option("-o,--out", compile_out, "Output generator file (default stdout)");
    add_field_option(compile_cmd, compile_field);

    // certify
    auto* certify_cmd =
        app.add_subcommand("certify", "Simulate and emit a telescoping membership certificate");
    std::string certify_machine_path, certify_start, certify_halt, certify_out;
    std::uint64_t certify_steps = 10000;
    FieldOption certify_field;
    certify_cmd->add_option("machine", certify_machine_path, "Machine JSON file")->required();
    certify_cmd->add_option("--start", certify_start, "Start configuration [i,c1,c2]")->required();
    certify_cmd->add_option("--halt", certify_halt, "Required halt configuration");
    certify_cmd->add_option("--max-steps", certify_steps, "Step budget")
        ->envname("DIFFALG_MAX_STEPS");
    certify_cmd->add_option("-o,--out", certify_out, "Certificate output file");
    add_field_option(certify_cmd, certify_field);

    // verify
    auto* verify_cmd =
        app.add_subcommand("verify", "Verify a certificate against a generator file");
    std::string verify_gens, verify_cert;
    verify_cmd->add_option("generators", verify_gens, "Generator file")->required();
    verify_cmd->add_option("certificate", verify_cert, "Certificate JSON file")->required();

    // oracle
    auto* oracle_cmd =
        app.add_subcommand("oracle", "Degree-bounded exact membership search for a target");
    std::string oracle_gens, oracle_target, oracle_witness_out;
    BoundsOptions oracle_bounds;
    oracle_cmd->add_option("generators", oracle_gens, "Generator file")->required();
    oracle_cmd->add_option("--target", oracle_target, "Target polynomial (canonical text)")
        ->required();
    oracle_cmd->add_option("--witness-out", oracle_witness_out, "Write the witness JSON here");
    add_bounds_options(oracle_cmd, oracle_bounds);

    // independence
    auto* indep_cmd = app.add_subcommand(
        "independence", "Exact rank of the highest parts of bounded operator applications");
    std::string indep_gens;
    unsigned indep_bound = 5;
    indep_cmd->add_option("generators", indep_gens, "Generator file")->required();
    indep_cmd->add_option("--bound", indep_bound, "Tower/exponent bound");

    // decide
    auto* decide_cmd = app.add_subcommand(
        "decide", "Combine simulation and the bounded oracle on a membership target");
    std::string decide_gens, decide_target;
    std::uint64_t decide_steps = 10000;
    BoundsOptions decide_bounds;
    decide_cmd->add_option("generators", decide_gens, "Generator file")->required();
    decide_cmd->add_option("--target", decide_target, "Target polynomial")->required();
    decide_cmd->add_option("--max-steps", decide_steps, "Simulation step budget")
        ->envname("DIFFALG_MAX_STEPS");
    add_bounds_options(decide_cmd, decide_bounds);

    // element
    auto* element_cmd =
        app.add_subcommand("element", "Print test/configuration elements in canonical text");
    unsigned element_fm = 0;
    std::string element_config, element_halt, element_mode = "B";
    std::uint64_t element_budget = kDefaultExponentBudget;
    FieldOption element_field;
    auto* fm_opt = element_cmd->add_option("--fm", element_fm, "Index m of the test element");
    element_cmd->add_option("--config", element_config, "Configuration [i,c1,c2]");
    element_cmd->add_option("--halt", element_halt,
                            "Halt configuration: emits the start-halt difference");
    element_cmd->add_option("--mode", element_mode, "Algebra mode: A (free) or B (quotient)");
    element_cmd->add_option("--exponent-budget", element_budget, "Cap on derivative towers")
        ->envname("DIFFALG_EXPONENT_BUDGET");
    add_field_option(element_cmd, element_field);

    // machines
    auto* machines_cmd = app.add_subcommand("machines", "List or export the bundled machines");
    std::string machines_dir;
    machines_cmd->add_option("--export-dir", machines_dir, "Write machine JSON files here");

    // subalg
    auto* subalg_cmd = app.add_subcommand("subalg", "Subalgebra membership tools");
    subalg_cmd->require_subcommand(1);
    std::string sub_machine, sub_gens, sub_target, sub_witness, sub_lift, sub_out;
    bool sub_from_quotient = false;
    FieldOption sub_field;
    BoundsOptions sub_bounds;

    auto* lift_cmd = subalg_cmd->add_subcommand(
        "lift", "Transform an ideal witness into a subalgebra expression for t*f");
    lift_cmd->add_option("--machine", sub_machine, "Machine JSON file (base ideal from commands)");
    lift_cmd->add_option("--base-gens", sub_gens, "File of free-mode base generators");
    lift_cmd->add_option("--target", sub_target, "The polynomial f")->required();
    lift_cmd->add_option("--witness", sub_witness, "Ideal witness JSON")->required();
    lift_cmd->add_flag("--from-quotient", sub_from_quotient,
                       "Witness/target are quotient-mode; translate first");
    lift_cmd->add_option("-o,--out", sub_out, "Lift output file");
    add_field_option(lift_cmd, sub_field);

    auto* sverify_cmd =
        subalg_cmd->add_subcommand("verify", "Evaluate a lift expression against t*f");
    sverify_cmd->add_option("--machine", sub_machine, "Machine JSON file");
    sverify_cmd->add_option("--base-gens", sub_gens, "File of free-mode base generators");
    sverify_cmd->add_option("--target", sub_target, "The polynomial f")->required();
    sverify_cmd->add_option("--lift", sub_lift, "Lift expression JSON")->required();
    sverify_cmd->add_flag("--from-quotient", sub_from_quotient,
                          "Target is quotient-mode; lift it to the free algebra");
    add_field_option(sverify_cmd, sub_field);

    auto* refute_cmd = subalg_cmd->add_subcommand(
        "refute", "Bounded refutation of t*f membership via the ideal oracle");
    refute_cmd->add_option("--machine", sub_machine, "Machine JSON file");
    refute_cmd->add_option("--base-gens", sub_gens, "File of free-mode base generators");
    refute_cmd->add_option("--target", sub_target, "The polynomial f")->required();
    refute_cmd->add_flag("--from-quotient", sub_from_quotient,
                         "Target is quotient-mode; lift it to the free algebra");
    add_field_option(refute_cmd, sub_field);
    add_bounds_options(refute_cmd, sub_bounds);

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(run_cmd)) return cmd_run(run_machine, run_start, run_steps);
        if (app.got_subcommand(compile_cmd))
            return cmd_compile(compile_machine_path, compile_out, compile_field);
        if (app.got_subcommand(certify_cmd))
            return cmd_certify(certify_machine_path, certify_start, certify_halt, certify_steps,
                               certify_field, certify_out);
        if (app.got_subcommand(verify_cmd)) return cmd_verify(verify_gens, verify_cert);
        if (app.got_subcommand(oracle_cmd))
            return cmd_oracle(oracle_gens, oracle_target, oracle_bounds, oracle_witness_out);
        if (app.got_subcommand(indep_cmd)) return cmd_independence(indep_gens, indep_bound);
        if (app.got_subcommand(decide_cmd))
            return cmd_decide(decide_gens, decide_target, decide_steps, decide_bounds);
        if (app.got_subcommand(element_cmd))
            return cmd_element(element_fm, fm_opt->count() > 0, element_config, element_halt,
                               element_field, element_mode, element_budget);
        if (app.got_subcommand(machines_cmd)) return cmd_machines(machines_dir);
        if (app.got_subcommand(subalg_cmd)) {
            if (subalg_cmd->got_subcommand(lift_cmd))
                return cmd_subalg_lift(sub_machine, sub_gens, sub_field, sub_target, sub_witness,
                                       sub_from_quotient, sub_out);
            if (subalg_cmd->got_subcommand(sverify_cmd))
                return cmd_subalg_verify(sub_machine, sub_gens, sub_field, sub_target, sub_lift,
                                         sub_from_quotient);
            if (subalg_cmd->got_subcommand(refute_cmd))
                return cmd_subalg_refute(sub_machine, sub_gens, sub_field, sub_target,
                                         sub_from_quotient, sub_bounds);
        }
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const resource_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
