#include "evgeom/cli.hpp"

#include <CLI11.hpp>
#include <iostream>
#include <json.hpp>

#include "evgeom/bounds.hpp"
#include "evgeom/codes.hpp"
#include "evgeom/constructions.hpp"
#include "evgeom/io.hpp"
#include "evgeom/verify.hpp"

namespace evgeom {

namespace {

void print_report(const VerificationReport& rep, bool json, std::ostream& out) {
    if (json) {
        out << report_to_json(rep) << '\n';
        return;
    }
    out << (rep.passed ? "PASS " : "FAIL ") << rep.check << "  work=" << rep.work
        << " reduction=" << reduction_name(rep.reduction) << " elapsed_ms=" << rep.elapsed_ms << '\n';
    if (!rep.counts.empty()) {
        out << "  counts:";
        for (const auto& [k, v] : rep.counts) out << ' ' << k << '=' << v;
        out << '\n';
    }
    if (!rep.witness.empty()) {
        out << "  " << (rep.witness_role.empty() ? "witness" : rep.witness_role) << ":";
        std::size_t shown = 0;
        for (const auto& p : rep.witness) {
            if (shown++ == 16) {
                out << " ... (" << rep.witness.size() << " total)";
                break;
            }
            out << " [";
            for (std::size_t i = 0; i < p.coords.size(); ++i) {
                if (i) out << ',';
                out << (int)p.coords[i];
            }
            out << ']';
        }
        out << '\n';
    }
}

int report_exit(const VerificationReport& rep, bool json, std::ostream& out) {
    print_report(rep, json, out);
    return rep.passed ? 0 : 1;
}

VerifyOptions options_from(const RunConfig& cfg) {
    VerifyOptions opts;
    opts.budget = cfg.budget;
    opts.threads = cfg.threads;
    opts.census = cfg.census;
    opts.allow_reduction = !cfg.unreduced;
    return opts;
}

int run_construct(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    ConstructionSpec spec;
    if (!parse_family(cfg.family, spec.family)) {
        err << "unknown family: " << cfg.family << '\n';
        return 2;
    }
    spec.q = cfg.q;
    spec.with_group = cfg.with_group;
    spec.modulus_index = cfg.modulus_index;
    BuildResult r = construct(spec);
    for (const auto& w : r.warnings) err << "warning: " << w << '\n';
    if (cfg.output.empty()) {
        write_pointset(out, r.set);
    } else {
        write_pointset_file(cfg.output, r.set);
        if (cfg.json) {
            nlohmann::json j{{"family", cfg.family}, {"q", cfg.q}, {"size", r.set.size()},
                             {"ambient_dim", r.set.ambient_dim}, {"out", cfg.output}};
            out << j.dump() << '\n';
        } else {
            out << "wrote " << r.set.size() << " points of PG(" << r.set.ambient_dim << ","
                << cfg.q << ") to " << cfg.output << '\n';
        }
    }
    return 0;
}

int run_bounds(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    BoundResult b;
    if (cfg.kind == "n2")
        b = bound_n_minus2(cfg.n, cfg.q);
    else if (cfg.kind == "g5")
        b = bound_5general(cfg.n, cfg.q);
    else if (cfg.kind == "g4")
        b = bound_4general(cfg.n, cfg.q);
    else {
        err << "unknown bound kind: " << cfg.kind << '\n';
        return 2;
    }
    nlohmann::json j{{"kind", b.kind}, {"n", b.n},
                     {"q", b.q},       {"value", b.value},
                     {"exact_expression", b.exact_expression}, {"real_value", b.real_value}};
    out << j.dump() << '\n';
    return 0;
}

int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const VerifyOptions opts = options_from(cfg);
    if (cfg.command == "construct") return run_construct(cfg, out, err);
    if (cfg.command == "bounds") return run_bounds(cfg, out, err);
    if (cfg.command == "verify-general") {
        return report_exit(is_k_general(read_pointset_file(cfg.input), cfg.k, opts), cfg.json, out);
    }
    if (cfg.command == "verify-rs") {
        return report_exit(is_rs_set(read_pointset_file(cfg.input), cfg.r, cfg.s, opts), cfg.json, out);
    }
    if (cfg.command == "verify-spectrum") {
        return report_exit(hyperplane_spectrum(read_pointset_file(cfg.input), opts), cfg.json, out);
    }
    if (cfg.command == "verify-cubic-lemma") {
        return report_exit(solid_cubic_lemma(cfg.q, opts), cfg.json, out);
    }
    if (cfg.command == "verify-seven-lemma") {
        return report_exit(seven_point_lemma(cfg.q, opts), cfg.json, out);
    }
    if (cfg.command == "verify-transitive") {
        return report_exit(is_transitive(read_pointset_file(cfg.input), opts), cfg.json, out);
    }
    if (cfg.command == "verify-complete") {
        return report_exit(completeness_check(read_pointset_file(cfg.input), cfg.r, cfg.s, opts),
                           cfg.json, out);
    }
    if (cfg.command == "verify-affine") {
        return report_exit(affine_check(read_pointset_file(cfg.input), opts), cfg.json, out);
    }
    if (cfg.command == "code-export") {
        CheckMatrix m = export_check_matrix(read_pointset_file(cfg.input));
        if (cfg.output.empty())
            write_check_matrix(out, m);
        else
            write_check_matrix_file(cfg.output, m);
        return 0;
    }
    if (cfg.command == "code-mindist") {
        CheckMatrix m = read_check_matrix_file(cfg.input);
        MinDistanceResult d = min_distance(m, opts);
        nlohmann::json j{{"q", m.q}, {"rows", m.rows}, {"cols", m.cols},
                         {"distance", d.distance}, {"support", d.support}, {"work", d.work}};
        out << j.dump() << '\n';
        return 0;
    }
    err << "unknown command: " << cfg.command << '\n';
    return 2;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.budget < 1) {
        err << "budget must be at least 1\n";
        return 2;
    }
    try {
        return dispatch(cfg, out, err);
    } catch (const BudgetExceeded& e) {
        err << "budget exceeded: " << e.what() << '\n';
        return 2;
    } catch (const io_error& e) {
        err << "io error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"constructions and exact verification of general-position point sets over finite fields"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&](CLI::App* sub) {
        sub->add_flag("--json", cfg.json, "emit JSON lines");
        sub->add_flag("--census", cfg.census, "count all violations instead of stopping at the first");
        sub->add_option("--budget", cfg.budget, "rank-evaluation budget")->envname("EVGEOM_BUDGET");
        sub->add_option("--threads", cfg.threads, "worker threads (0 = auto)");
        sub->add_flag("--unreduced", cfg.unreduced, "disable group reductions");
    };

    CLI::App* construct = app.add_subcommand("construct", "build a point-set family");
    construct->add_option("--family", cfg.family, "ovoid7|cubic|hyp6|aff5|proj5|pg13")->required();
    construct->add_option("--q", cfg.q, "field order")->required();
    construct->add_option("--out", cfg.output, "output file (stdout if omitted)");
    construct->add_flag("--with-group,!--no-group", cfg.with_group, "attach group generators");
    construct->add_option("--modulus-index", cfg.modulus_index, "alternative irreducible modulus");
    construct->add_flag("--json", cfg.json, "emit JSON lines");

    CLI::App* verify = app.add_subcommand("verify", "verification checks");
    verify->require_subcommand(1);
    struct SubSpec {
        const char* name;
        const char* help;
        bool needs_input;
        bool needs_q;
    };
    for (const auto& [name, help, needs_input, needs_q] :
         {SubSpec{"general", "k-generality", true, false},
          SubSpec{"rs", "(r,s)-set conditions", true, false},
          SubSpec{"spectrum", "hyperplane spectrum", true, false},
          SubSpec{"cubic-lemma", "five points in a solid lie on a twisted cubic", false, true},
          SubSpec{"seven-lemma", "seven points in a 4-flat contain a cubic quadruple", false, true},
          SubSpec{"transitive", "orbit of the first point covers the set", true, false},
          SubSpec{"complete", "extendability scan", true, false},
          SubSpec{"affine", "find a disjoint hyperplane", true, false}}) {
        CLI::App* sub = verify->add_subcommand(name, help);
        add_common(sub);
        if (needs_input) sub->add_option("--in", cfg.input, "point-set file")->required();
        if (needs_q) sub->add_option("--q", cfg.q, "field order")->required();
        if (std::string(name) == "general") sub->add_option("--k", cfg.k, "k")->required();
        if (std::string(name) == "rs" || std::string(name) == "complete") {
            sub->add_option("--r", cfg.r, "r")->required();
            sub->add_option("--s", cfg.s, "s")->required();
        }
    }

    CLI::App* bounds = app.add_subcommand("bounds", "closed-form upper bounds");
    bounds->add_option("--kind", cfg.kind, "n2|g5|g4")->required();
    bounds->add_option("--n", cfg.n, "projective dimension")->required();
    bounds->add_option("--q", cfg.q, "field order")->required();

    CLI::App* code = app.add_subcommand("code", "parity-check export and minimum distance");
    code->require_subcommand(1);
    CLI::App* code_export = code->add_subcommand("export", "point set -> check matrix");
    code_export->add_option("--in", cfg.input, "point-set file")->required();
    code_export->add_option("--out", cfg.output, "matrix file (stdout if omitted)");
    CLI::App* code_mindist = code->add_subcommand("mindist", "brute-force minimum distance");
    code_mindist->add_option("--in", cfg.input, "matrix file")->required();
    add_common(code_mindist);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            // --help and friends
            out << app.help();
            return 0;
        }
        err << e.what() << '\n';
        return 2;
    }

    if (construct->parsed()) cfg.command = "construct";
    if (verify->parsed()) {
        for (const char* name :
             {"general", "rs", "spectrum", "cubic-lemma", "seven-lemma", "transitive", "complete", "affine"}) {
            if (verify->get_subcommand(name)->parsed()) cfg.command = std::string("verify-") + name;
        }
    }
    if (bounds->parsed()) cfg.command = "bounds";
    if (code->parsed()) {
        cfg.command = code->get_subcommand("export")->parsed() ? "code-export" : "code-mindist";
    }
    return run(cfg, out, err);
}

}  // namespace evgeom
