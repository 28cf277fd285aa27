#pragma once

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "analysis.hpp"
#include "cohomology.hpp"
#include "rq_ring.hpp"

namespace nodalcy::cli {

namespace detail {

inline void emit_error(std::ostream& err, const std::string& code, const std::string& message) {
    err << json{{"error", json{{"code", code}, {"message", message}}}}.dump() << "\n";
}

inline void write_output(const std::string& text, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << text;
        if (!text.empty() && text.back() != '\n') out << "\n";
        return;
    }
    std::ofstream file(out_path);
    if (!file) fail(errc::invalid_argument, "cannot open output file '" + out_path + "'");
    file << text;
    if (!text.empty() && text.back() != '\n') file << "\n";
}

inline std::string read_file(const std::string& path) {
    std::ifstream file(path);
    if (!file) fail(errc::invalid_argument, "cannot open input file '" + path + "'");
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
}

inline json integer_to_json(const Integer& value) {
    if (value >= 0 && value <= Integer(std::numeric_limits<std::uint64_t>::max()))
        return value.convert_to<std::uint64_t>();
    return value.str();  // exact decimal string beyond 64 bits
}

inline std::string quadric_table_csv(const CohomologyTable& table) {
    std::string csv = "k,q,j,value\n";
    for (unsigned q = 0; q <= table.q_max; ++q) {
        for (long long j = table.j_min; j <= table.j_max; ++j) {
            const auto& e = table.at(q, j);
            csv += std::to_string(table.k) + "," + std::to_string(q) + "," + std::to_string(j) + "," +
                   (e.determined ? e.value.str() : std::string("undetermined")) + "\n";
        }
    }
    return csv;
}

inline json quadric_table_json(const CohomologyTable& table) {
    json entries = json::array();
    for (unsigned q = 0; q <= table.q_max; ++q) {
        for (long long j = table.j_min; j <= table.j_max; ++j) {
            const auto& e = table.at(q, j);
            entries.push_back(json{{"q", q},
                                   {"j", j},
                                   {"determined", e.determined},
                                   {"value", e.determined ? integer_to_json(e.value) : json(nullptr)}});
        }
    }
    return json{{"n", table.n}, {"k", table.k},     {"family", table.family},
                {"j_min", table.j_min}, {"j_max", table.j_max}, {"entries", entries}};
}

// Rows q, columns j, for eyeball comparison against the case tables.
inline std::string quadric_table_markdown(const CohomologyTable& table) {
    std::string md = "### h^q(" + table.family + "), n = " + std::to_string(table.n) + "\n\n";
    md += "| q \\ j |";
    for (long long j = table.j_min; j <= table.j_max; ++j) md += " " + std::to_string(j) + " |";
    md += "\n|---|";
    for (long long j = table.j_min; j <= table.j_max; ++j) md += "---|";
    md += "\n";
    for (unsigned q = 0; q <= table.q_max; ++q) {
        md += "| " + std::to_string(q) + " |";
        for (long long j = table.j_min; j <= table.j_max; ++j) {
            const auto& e = table.at(q, j);
            md += " " + (e.determined ? e.value.str() : std::string("?")) + " |";
        }
        md += "\n";
    }
    return md;
}

inline std::pair<std::string, std::string> split_top_level_comma(const std::string& text) {
    int depth = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '(') ++depth;
        if (text[i] == ')') --depth;
        if (text[i] == ',' && depth == 0) return {text.substr(0, i), text.substr(i + 1)};
    }
    fail(errc::invalid_flag, "--mul expects two comma-separated expressions");
}

}  // namespace detail

// Runs one CLI invocation. Exit status: 0 success, 1 validation error,
// 2 budget exhaustion; errors additionally produce a JSON object on err.
inline int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact smoothing analysis of nodal Calabi-Yau hypersurfaces"};
    app.require_subcommand(1);

    // schoen
    auto* schoen_cmd = app.add_subcommand("schoen", "emit the built-in nodal family member of dimension n");
    unsigned schoen_dim = 3;
    std::string schoen_out;
    schoen_cmd->add_option("--dim", schoen_dim, "odd dimension n >= 3")->required();
    schoen_cmd->add_option("--out", schoen_out, "output file (default: stdout)");

    // analyze
    auto* analyze_cmd = app.add_subcommand("analyze", "compute I, K, the span defect and the smoothing checks");
    std::string analyze_in, analyze_out, analyze_format = "json";
    AnalyzeOptions options;
    std::vector<std::uint64_t> primes;
    std::int64_t node_sample = -1;
    analyze_cmd->add_option("--input", analyze_in, "model JSON file")->required();
    analyze_cmd->add_option("--out", analyze_out, "report file (default: stdout)");
    analyze_cmd->add_flag("--power-check,!--no-power-check", options.power_check,
                          "run the power-map containment and span checks (default on)");
    analyze_cmd->add_option("--modular-primes", primes, "compute modular lower-bound ranks for these primes")
        ->delimiter(',');
    analyze_cmd->add_option("--node-sample", node_sample, "restrict the analysis to a seeded node subsample");
    analyze_cmd->add_option("--seed", options.seed, "seed for sampling and randomized membership checks");
    analyze_cmd->add_option("--budget", options.product_budget, "product budget for the span check");
    analyze_cmd->add_option("--exact-cells", options.exact_cell_budget,
                            "largest exact elimination, in matrix cells, this run may attempt");
    analyze_cmd->add_option("--random-checks", options.random_membership_checks,
                            "random combinations tested by the containment check");
    analyze_cmd->add_flag("--timings", options.include_timings, "include wall-clock timings in the report");
    analyze_cmd->add_option("--format", analyze_format, "json or markdown")->check(CLI::IsMember({"json", "markdown"}));

    // bott
    auto* bott_cmd = app.add_subcommand("bott", "h^q(P^n, Omega^p(m)) by Bott's formula");
    unsigned bott_n = 1, bott_p = 0, bott_q = 0;
    long long bott_m = 0;
    bott_cmd->add_option("--n", bott_n)->required();
    bott_cmd->add_option("--p", bott_p)->required();
    bott_cmd->add_option("--q", bott_q)->required();
    bott_cmd->add_option("--m", bott_m)->required();

    // quadric-table
    auto* quadric_cmd = app.add_subcommand("quadric-table", "H^{<=2} table of Omega_Q^k(j) on the quadric");
    unsigned quad_n = 5, quad_k = 3;
    long long quad_jmin = 0, quad_jmax = 0;
    std::string quad_format = "json", quad_out;
    quadric_cmd->add_option("--n", quad_n, "odd ambient dimension >= 5")->required();
    quadric_cmd->add_option("--k", quad_k, "form degree, n-1 or n-2")->required();
    quadric_cmd->add_option("--jmin", quad_jmin)->required();
    quadric_cmd->add_option("--jmax", quad_jmax)->required();
    quadric_cmd->add_option("--format", quad_format, "json, csv or markdown")
        ->check(CLI::IsMember({"json", "csv", "markdown"}));
    quadric_cmd->add_option("--out", quad_out, "output file (default: stdout)");

    // rq
    auto* rq_cmd = app.add_subcommand("rq", "multiply two classes in the ring R_Q");
    unsigned rq_n = 5;
    std::string rq_mul, rq_format = "text";
    rq_cmd->add_option("--n", rq_n, "odd dimension >= 3")->required();
    rq_cmd->add_option("--mul", rq_mul, "two expressions over eta^k, A, B and rational scalars, comma separated")
        ->required();
    rq_cmd->add_option("--format", rq_format, "text or json")->check(CLI::IsMember({"text", "json"}));

    // verify-nodes
    auto* verify_cmd = app.add_subcommand("verify-nodes", "run the ODP verifier over a model's node list");
    std::string verify_in, verify_out, verify_format = "json";
    std::int64_t verify_sample = -1;
    std::uint64_t verify_seed = 0;
    verify_cmd->add_option("--input", verify_in, "model JSON file")->required();
    verify_cmd->add_option("--out", verify_out, "report file (default: stdout)");
    verify_cmd->add_option("--sample", verify_sample, "verify only a seeded sample of this many nodes");
    verify_cmd->add_option("--seed", verify_seed, "sampling seed");
    verify_cmd->add_option("--format", verify_format, "json or markdown")
        ->check(CLI::IsMember({"json", "markdown"}));

    std::vector<std::string> argv_storage;
    argv_storage.push_back("nodalcy");
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    argv.reserve(argv_storage.size());
    for (const auto& a : argv_storage) argv.push_back(a.c_str());

    try {
        try {
            app.parse(static_cast<int>(argv.size()), argv.data());
        } catch (const CLI::CallForHelp& e) {
            out << app.help();
            return 0;
        } catch (const CLI::ParseError& e) {
            std::string code = app.get_subcommands().empty() ? "UnknownCommand" : "InvalidFlag";
            detail::emit_error(err, code, e.what());
            return 1;
        }

        if (app.got_subcommand(schoen_cmd)) {
            auto model = schoen_family(schoen_dim);
            detail::write_output(model_to_json(model).dump(), schoen_out, out);
            return 0;
        }

        if (app.got_subcommand(analyze_cmd)) {
            options.modular_primes = primes;
            if (node_sample >= 0) options.node_sample = static_cast<std::size_t>(node_sample);
            auto model = model_from_json(parse_json_text(detail::read_file(analyze_in)));
            auto report = run_analysis(model, options);
            std::string rendered =
                analyze_format == "markdown" ? report_to_markdown(report) : report_to_json(report).dump(2);
            detail::write_output(rendered, analyze_out, out);
            if (report.smoothing.span_budget_exhausted) {
                detail::emit_error(err, "OutOfBudget", "power-span check exhausted the product budget; the report "
                                                       "carries a partial lower bound");
                return 2;
            }
            return 0;
        }

        if (app.got_subcommand(bott_cmd)) {
            out << bott(bott_n, bott_p, bott_q, bott_m).str() << "\n";
            return 0;
        }

        if (app.got_subcommand(quadric_cmd)) {
            auto table = quadric_cohomology_table(quad_n, quad_k, quad_jmin, quad_jmax);
            std::string rendered;
            if (quad_format == "csv")
                rendered = detail::quadric_table_csv(table);
            else if (quad_format == "markdown")
                rendered = detail::quadric_table_markdown(table);
            else
                rendered = detail::quadric_table_json(table).dump(2);
            detail::write_output(rendered, quad_out, out);
            return 0;
        }

        if (app.got_subcommand(rq_cmd)) {
            auto [lhs_text, rhs_text] = detail::split_top_level_comma(rq_mul);
            auto lhs = parse_rq_expression(rq_n, lhs_text);
            auto rhs = parse_rq_expression(rq_n, rhs_text);
            auto product = lhs * rhs;
            if (rq_format == "json") {
                out << json{{"n", rq_n},
                            {"lhs", lhs.to_string()},
                            {"rhs", rhs.to_string()},
                            {"determined", product.determined()},
                            {"product", product.to_string()}}
                           .dump()
                    << "\n";
            } else {
                out << product.to_string() << "\n";
            }
            return 0;
        }

        if (app.got_subcommand(verify_cmd)) {
            json j = parse_json_text(detail::read_file(verify_in));
            if (!j.is_object() || !j.contains("n") || !j.contains("cyclotomic_order") || !j.contains("f") ||
                !j.contains("nodes"))
                fail(errc::schema_error, "model needs 'n', 'cyclotomic_order', 'f' and 'nodes'");
            unsigned order = j["cyclotomic_order"].get<unsigned>();
            MultiPoly f = poly_from_json(j["f"]);
            std::vector<ProjectivePoint> nodes;
            for (const auto& node : j["nodes"]) nodes.push_back(point_from_json(node, order));

            std::vector<std::size_t> indices(nodes.size());
            std::iota(indices.begin(), indices.end(), 0);
            std::string mode = "all";
            if (verify_sample >= 0 && static_cast<std::size_t>(verify_sample) < nodes.size()) {
                indices = nodalcy::detail::sample_indices(nodes.size(), static_cast<std::size_t>(verify_sample),
                                                          verify_seed);
                mode = "sample";
            }

            OdpVerifier verifier(f);
            std::vector<OdpRecord> records(indices.size());
            parallel_for(indices.size(), [&](std::size_t i) { records[i] = verifier.verify(nodes[indices[i]]); });

            std::size_t failed = 0;
            json record_array = json::array();
            for (std::size_t i = 0; i < indices.size(); ++i) {
                const auto& r = records[i];
                if (!r.is_odp) ++failed;
                record_array.push_back(json{{"index", indices[i]},
                                            {"on_hypersurface", r.on_hypersurface},
                                            {"critical", r.critical},
                                            {"hessian_rank", r.hessian_rank},
                                            {"is_odp", r.is_odp}});
            }
            json report{{"node_count", nodes.size()}, {"checked", indices.size()}, {"mode", mode},
                        {"failed", failed},           {"all_passed", failed == 0}, {"records", record_array}};
            std::string rendered;
            if (verify_format == "markdown") {
                rendered = "# Node verification\n\n- checked " + std::to_string(indices.size()) + " of " +
                           std::to_string(nodes.size()) + " nodes (" + mode + ")\n- failures: " +
                           std::to_string(failed) + "\n";
            } else {
                rendered = report.dump(2);
            }
            detail::write_output(rendered, verify_out, out);
            if (failed > 0) {
                detail::emit_error(err, "NotANode", std::to_string(failed) + " of the checked points failed ODP "
                                                     "verification");
                return 1;
            }
            return 0;
        }

        detail::emit_error(err, "UnknownCommand", "no subcommand given");
        return 1;
    } catch (const Error& e) {
        detail::emit_error(err, e.code_name(), e.message());
        return e.code() == errc::out_of_budget ? 2 : 1;
    } catch (const std::exception& e) {
        detail::emit_error(err, "InternalError", e.what());
        return 1;
    }
}

}  // namespace nodalcy::cli
