// Copyright (c) pamreach contributors.
// SPDX-License-Identifier: Apache-2.0
#include "pam/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pam/gap.hpp"
#include "pam/loop_dsl.hpp"
#include "pam/orbit_lab.hpp"
#include "pam/pam_io.hpp"
#include "pam/query.hpp"

namespace pam {

namespace {

using nlohmann::json;

struct Common {
    std::string pam_path;
    bool trace = false;
    bool records = false;
    long long horizon = 10000;
    long precision = 40;
};

int emit_decision(const Common& common, const std::string& query, const Decision& d,
                  std::ostream& out) {
    if (common.records) {
        json rec;
        rec["query"] = query;
        rec["answer"] = answer_name(d.answer);
        if (d.witness) rec["witness"] = *d.witness;
        if (d.witness_unbounded) rec["witness"] = "exists, unbounded-search";
        if (!d.diagnostics.empty()) rec["diagnostics"] = d.diagnostics;
        out << rec.dump() << "\n";
    } else {
        switch (d.answer) {
            case Answer::yes:
                out << "yes";
                if (d.witness) out << " n=" << *d.witness;
                if (d.witness_unbounded) out << " (witness exists, unbounded-search)";
                out << "\n";
                break;
            case Answer::no:
                out << "no\n";
                break;
            case Answer::unknown:
                out << "unknown";
                if (!d.diagnostics.empty()) out << " (" << d.diagnostics.front() << ")";
                out << "\n";
                break;
        }
    }
    if (common.trace && !d.trace.steps.empty()) out << d.trace.to_text();
    return d.answer == Answer::unknown ? 2 : 0;
}

Rational parse_rat(const std::string& s) { return Rational::parse(s); }

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact reachability decisions for one-dimensional piecewise affine maps"};
    app.require_subcommand(1);

    Common common;
    app.add_flag("--trace", common.trace, "print the reduction trace after the answer");
    app.add_flag("--records", common.records, "machine-readable one-line records");
    app.add_option("--horizon", common.horizon, "simulation bound for semi-decisions");
    app.add_option("--precision", common.precision, "enclosure precision in bits");

    std::string from, to, lo, hi, from_lo, from_hi, to_lo, to_hi;
    std::string c_str, d_str, gamma_str, prime_str, program_path;
    long long steps = 100;
    int digits = 12;
    int histogram_bits = -1;
    bool lo_open = false, hi_closed = false;

    auto add_pam = [&](CLI::App* sub) {
        sub->add_option("--pam", common.pam_path, "map definition file")->required();
    };

    CLI::App* sc_classify = app.add_subcommand("classify", "structural classification");
    add_pam(sc_classify);

    CLI::App* sc_reach = app.add_subcommand("reach", "point-to-point reachability");
    add_pam(sc_reach);
    sc_reach->add_option("--from", from)->required();
    sc_reach->add_option("--to", to)->required();

    CLI::App* sc_ri = app.add_subcommand("reach-interval", "point-to-interval reachability");
    add_pam(sc_ri);
    sc_ri->add_option("--from", from)->required();
    sc_ri->add_option("--lo", lo)->required();
    sc_ri->add_option("--hi", hi)->required();
    sc_ri->add_flag("--lo-open", lo_open);
    sc_ri->add_flag("--hi-closed", hi_closed);

    CLI::App* sc_ir = app.add_subcommand("interval-reach", "interval-to-interval reachability");
    add_pam(sc_ir);
    sc_ir->add_option("--from-lo", from_lo)->required();
    sc_ir->add_option("--from-hi", from_hi)->required();
    sc_ir->add_option("--to-lo", to_lo)->required();
    sc_ir->add_option("--to-hi", to_hi)->required();

    CLI::App* sc_per = app.add_subcommand("periodic", "is the orbit eventually periodic");
    add_pam(sc_per);
    sc_per->add_option("--from", from)->required();

    CLI::App* sc_rot = app.add_subcommand("rotation", "rotation number of a gap map");
    add_pam(sc_rot);
    CLI::App* sc_cyc = app.add_subcommand("cycle", "unique attracting cycle of a gap map");
    add_pam(sc_cyc);

    CLI::App* sc_sim = app.add_subcommand("simulate", "exact orbit export");
    add_pam(sc_sim);
    sc_sim->add_option("--from", from)->required();
    sc_sim->add_option("--steps", steps);
    sc_sim->add_option("--digits", digits);
    sc_sim->add_option("--histogram-bits", histogram_bits,
                       "emit a cell histogram instead of the orbit");

    CLI::App* sc_cert = app.add_subcommand("certify-infinite", "p-adic infinite-orbit proof");
    add_pam(sc_cert);
    sc_cert->add_option("--from", from)->required();
    sc_cert->add_option("--prime", prime_str)->required();

    CLI::App* sc_probe = app.add_subcommand("probe", "bounded shrinking-interval probe");
    sc_probe->add_option("--c", c_str)->required();
    sc_probe->add_option("--d", d_str)->required();
    sc_probe->add_option("--gamma", gamma_str)->required();

    CLI::App* sc_halt = app.add_subcommand("halting", "halting of a simple loop program");
    sc_halt->add_option("--program", program_path, "loop program file")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        return 1;
    }

    QueryOptions opts;
    opts.simulation_depth = common.horizon;

    try {
        if (sc_classify->parsed()) {
            Pam f = load_pam_file(common.pam_path);
            Classification cls = classify(f);
            if (common.records) {
                json rec;
                rec["query"] = "classify";
                rec["shape"] = shape_name(cls.shape);
                rec["pieces"] = cls.piece_count;
                rec["injective"] = cls.injective;
                rec["surjective"] = cls.surjective;
                rec["twist"] = cls.twist;
                out << rec.dump() << "\n";
            } else {
                out << "shape=" << shape_name(cls.shape) << " pieces=" << cls.piece_count
                    << " injective=" << (cls.injective ? "yes" : "no")
                    << " surjective=" << (cls.surjective ? "yes" : "no")
                    << " twist=" << (cls.twist ? "yes" : "no") << "\n";
            }
            return 0;
        }
        if (sc_reach->parsed()) {
            Pam f = load_pam_file(common.pam_path);
            Decision d = reach(f, parse_rat(from), parse_rat(to), opts);
            return emit_decision(common, "reach", d, out);
        }
        if (sc_ri->parsed()) {
            Pam f = load_pam_file(common.pam_path);
            Interval I(parse_rat(lo), parse_rat(hi), !lo_open, hi_closed);
            Decision d = point_to_interval(f, parse_rat(from), I, opts);
            return emit_decision(common, "reach-interval", d, out);
        }
        if (sc_ir->parsed()) {
            Pam f = load_pam_file(common.pam_path);
            Interval J0(parse_rat(from_lo), parse_rat(from_hi), true, false);
            Interval J1(parse_rat(to_lo), parse_rat(to_hi), true, false);
            Decision d = interval_to_interval(f, J0, J1, opts);
            return emit_decision(common, "interval-reach", d, out);
        }
        if (sc_per->parsed()) {
            Pam f = load_pam_file(common.pam_path);
            Decision d = periodic(f, parse_rat(from), opts);
            return emit_decision(common, "periodic", d, out);
        }
        if (sc_rot->parsed() || sc_cyc->parsed()) {
            Pam f = load_pam_file(common.pam_path);
            Classification cls = classify(f);
            if (cls.shape != Shape::middle_gap) {
                err << "unsupported: rotation data requires a middle-gap map (shape is "
                    << shape_name(cls.shape) << ")\n";
                return 2;
            }
            GapParams gp = to_gap_params(f);
            CycleInfo cycle = rotation_and_cycle(gp);
            std::string pts, word;
            for (size_t i = 0; i < cycle.points.size(); ++i) {
                if (i) {
                    pts += ",";
                    word += ",";
                }
                pts += cycle.points[i].to_string();
                word += std::to_string(cycle.word[i]);
            }
            if (common.records) {
                json rec;
                rec["query"] = sc_rot->parsed() ? "rotation" : "cycle";
                rec["p"] = cycle.p;
                rec["q"] = cycle.q;
                rec["cycle"] = pts;
                rec["word"] = word;
                rec["contraction"] = cycle.contraction.to_string();
                out << rec.dump() << "\n";
            } else {
                out << "rho=" << cycle.p << "/" << cycle.q << " q=" << cycle.q << " cycle=" << pts
                    << " word=" << word << " contraction=" << cycle.contraction.to_string()
                    << "\n";
            }
            return 0;
        }
        if (sc_sim->parsed()) {
            Pam f = load_pam_file(common.pam_path);
            if (histogram_bits >= 0) {
                AccumulationStats stats =
                    accumulation_stats(f, parse_rat(from), steps, histogram_bits);
                out << "cell_lo,cell_hi,count\n";
                Rational span = f.carrier().length();
                Rational base = f.carrier().lo;
                long cells = 1l << histogram_bits;
                for (long i = 0; i < cells; ++i) {
                    Rational clo = base + span * Rational(i, cells);
                    Rational chi = base + span * Rational(i + 1, cells);
                    out << clo.to_string() << "," << chi.to_string() << ","
                        << stats.counts[static_cast<size_t>(i)] << "\n";
                }
                return 0;
            }
            out << "n,value,decimal,branch\n";
            simulate(
                f, parse_rat(from), steps,
                [&](const OrbitRecord& r) {
                    out << r.index << "," << r.value.to_string() << "," << r.decimal << ","
                        << r.branch << "\n";
                },
                digits);
            return 0;
        }
        if (sc_cert->parsed()) {
            Pam f = load_pam_file(common.pam_path);
            Integer p(prime_str);
            auto cert = valuation_certificate(f, parse_rat(from), p, common.horizon);
            if (common.records) {
                json rec;
                rec["query"] = "certify-infinite";
                rec["prime"] = p.get_str();
                if (cert) {
                    rec["certified"] = true;
                    rec["entry_index"] = cert->entry_index;
                    rec["entry_valuation"] = cert->entry_valuation;
                } else {
                    rec["certified"] = false;
                }
                out << rec.dump() << "\n";
            } else if (cert) {
                out << "certified infinite: v_" << p.get_str() << " strictly decreasing from n="
                    << cert->entry_index << " (v=" << cert->entry_valuation << ")\n";
            } else {
                out << "no certificate up to the horizon\n";
            }
            return cert ? 0 : 2;
        }
        if (sc_probe->parsed()) {
            ProbeResult res = lagrange_probe(parse_rat(c_str), parse_rat(d_str),
                                             parse_rat(gamma_str), common.horizon);
            if (common.records) {
                json rec;
                rec["query"] = "probe";
                rec["gamma"] = res.gamma.to_string();
                rec["horizon"] = res.horizon;
                if (res.witness) {
                    rec["witness_n"] = res.witness->first;
                    rec["witness_value"] = res.witness->second.to_string();
                    rec["lagrange_upper"] = res.lagrange_upper->to_string();
                }
                rec["note"] = res.note;
                out << rec.dump() << "\n";
            } else if (res.witness) {
                out << "witness n=" << res.witness->first
                    << " n*f^n(0)=" << res.witness->second.to_string()
                    << " lagrange_upper=" << res.lagrange_upper->to_string() << "\n";
            } else {
                out << "no witness up to horizon " << res.horizon
                    << " (not a decision: " << res.note << ")\n";
            }
            return res.witness ? 0 : 2;
        }
        if (sc_halt->parsed()) {
            std::ifstream in(program_path);
            if (!in) throw Error("cannot open program file " + program_path);
            std::stringstream buffer;
            buffer << in.rdbuf();
            LoopProgram prog = parse_loop_program(buffer.str());
            HaltingAnswer ans = decide_halting(prog);
            if (common.records) {
                json rec;
                rec["query"] = "halting";
                switch (ans.kind) {
                    case HaltingAnswer::Kind::halts:
                        rec["answer"] = "halts";
                        rec["steps"] = ans.steps;
                        break;
                    case HaltingAnswer::Kind::diverges:
                        rec["answer"] = "diverges";
                        break;
                    case HaltingAnswer::Kind::unsupported:
                        rec["answer"] = "unsupported";
                        rec["reason"] = ans.reason;
                        break;
                }
                out << rec.dump() << "\n";
            } else {
                switch (ans.kind) {
                    case HaltingAnswer::Kind::halts:
                        out << "halts n=" << ans.steps << "\n";
                        break;
                    case HaltingAnswer::Kind::diverges:
                        out << "diverges\n";
                        break;
                    case HaltingAnswer::Kind::unsupported:
                        out << "unsupported (" << ans.reason << ")\n";
                        break;
                }
            }
            if (common.trace && !ans.decision.trace.steps.empty())
                out << ans.decision.trace.to_text();
            return ans.kind == HaltingAnswer::Kind::unsupported ? 2 : 0;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << "usage error: no subcommand\n";
    return 1;
}

}  // namespace pam
