#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "errors.hpp"
#include "serialization.hpp"
#include "smoothing.hpp"

namespace nodalcy {

struct AnalyzeOptions {
    bool power_check = true;
    std::vector<std::uint64_t> modular_primes;  // non-empty selects modular mode
    std::optional<std::size_t> node_sample;     // restrict to a seeded node subsample
    std::uint64_t seed = 0;
    std::size_t product_budget = 1000000;
    std::size_t random_membership_checks = 50;
    // exact eliminations larger than this many matrix cells are refused;
    // the n=5 family degree-14 matrix (~651M cells) is deliberately beyond it
    std::size_t exact_cell_budget = 20000000;
    bool include_timings = false;
};

struct SmoothingReport {
    std::size_t node_count = 0;
    unsigned power_exponent = 1;  // m = (n-1)/2
    unsigned degree_I = 0, degree_K = 0;
    std::size_t rows_I = 0, rows_K = 0;
    std::size_t dim_I = 0, dim_K = 0;
    std::size_t span_dimension = 0;  // node_count - dim_K
    std::optional<bool> smoothable;
    std::vector<bool> per_node_smoothable;
    std::optional<bool> power_map_contained;
    std::optional<bool> power_map_spans;
    bool span_budget_exhausted = false;
    std::size_t span_products_considered = 0;
    std::string method = "exact";  // "exact" | "modular"
    std::vector<std::uint64_t> primes;
    bool partial = false;
    std::vector<std::string> partial_reasons;
};

struct AnalysisReport {
    unsigned n = 0;
    unsigned field_order = 0;
    std::size_t node_count_total = 0;  // before any subsampling
    std::optional<std::size_t> sampled_nodes;
    bool odp_all_verified = true;  // construction verifies every listed node
    std::vector<std::string> assumptions;
    SmoothingReport smoothing;
    std::map<std::string, double> timings_seconds;  // emitted only on request
    bool include_timings = false;
};

namespace detail {

inline std::vector<std::size_t> sample_indices(std::size_t total, std::size_t want, std::uint64_t seed) {
    std::vector<std::size_t> indices(total);
    std::iota(indices.begin(), indices.end(), 0);
    if (want >= total) return indices;
    std::mt19937_64 rng(seed);
    std::shuffle(indices.begin(), indices.end(), rng);
    indices.resize(want);
    std::sort(indices.begin(), indices.end());  // keep the model's node order
    return indices;
}

}  // namespace detail

inline AnalysisReport run_analysis(const NodalHypersurface& model, const AnalyzeOptions& opts) {
    using Clock = std::chrono::steady_clock;
    auto started = Clock::now();
    auto elapsed = [&](Clock::time_point from) { return std::chrono::duration<double>(Clock::now() - from).count(); };

    AnalysisReport report;
    report.n = model.n();
    report.field_order = model.field_order();
    report.node_count_total = model.node_count();
    report.include_timings = opts.include_timings;
    report.assumptions = {
        "surjectivity onto the relation space uses H^1 vanishing of the twisted ideal sheaf, automatic for "
        "hypersurfaces",
        "completeness of the node list is not verified; dimensions refer to the listed nodes",
        "per-node smoothing parameters carry a global sign ambiguity; all reported dimensions are sign-invariant",
    };

    const NodalHypersurface* working = &model;
    std::optional<NodalHypersurface> restricted;
    if (opts.node_sample && *opts.node_sample < model.node_count()) {
        auto indices = detail::sample_indices(model.node_count(), *opts.node_sample, opts.seed);
        restricted.emplace(model.restrict_to(indices));
        working = &*restricted;
        report.sampled_nodes = working->node_count();
    }

    SmoothingReport& sm = report.smoothing;
    sm.node_count = working->node_count();
    sm.power_exponent = working->m();
    sm.degree_I = working->n() + 2;
    sm.degree_K = working->m() * (working->n() + 2);
    const unsigned k = working->n() + 2;
    sm.rows_I = binomial(sm.degree_I + k - 1, k - 1).convert_to<std::size_t>();
    sm.rows_K = binomial(sm.degree_K + k - 1, k - 1).convert_to<std::size_t>();
    if (report.sampled_nodes) {
        sm.partial = true;
        sm.partial_reasons.push_back("analysis restricted to a " + std::to_string(sm.node_count) +
                                     "-node subsample of " + std::to_string(report.node_count_total) + " nodes");
    }

    if (!opts.modular_primes.empty()) {
        sm.method = "modular";
        sm.primes = opts.modular_primes;
        sm.partial = true;
        sm.partial_reasons.push_back("modular ranks are lower bounds for the exact ranks, so span_dimension is an "
                                     "upper bound");
        auto t0 = Clock::now();
        std::size_t dim_i = 0, dim_k = 0;
        for (std::uint64_t p : opts.modular_primes) {
            dim_i = std::max(dim_i, modular_evaluation_rank(*working, sm.degree_I, p).rank);
        }
        report.timings_seconds["rank_I"] = elapsed(t0);
        auto t1 = Clock::now();
        if (working->m() == 1) {
            dim_k = dim_i;
        } else {
            for (std::uint64_t p : opts.modular_primes) {
                dim_k = std::max(dim_k, modular_evaluation_rank(*working, sm.degree_K, p).rank);
            }
        }
        report.timings_seconds["rank_K"] = elapsed(t1);
        sm.dim_I = dim_i;
        sm.dim_K = dim_k;
        sm.span_dimension = sm.node_count - sm.dim_K;
        sm.partial_reasons.push_back("smoothability and power-map checks need the exact subspaces; rerun in exact "
                                     "mode for them");
    } else {
        std::size_t cells = sm.rows_I * sm.node_count;
        if (working->m() != 1) cells += sm.rows_K * sm.node_count;
        if (cells > opts.exact_cell_budget)
            fail(errc::out_of_budget,
                 "exact elimination over " + std::to_string(cells) +
                     " matrix cells exceeds the configured budget; use --modular-primes and/or --node-sample");

        auto t0 = Clock::now();
        Subspace I = space_I(*working);
        report.timings_seconds["space_I"] = elapsed(t0);
        auto t1 = Clock::now();
        Subspace K = working->m() == 1 ? I : space_K(*working);
        report.timings_seconds["space_K"] = elapsed(t1);

        sm.dim_I = I.dim();
        sm.dim_K = K.dim();
        sm.span_dimension = sm.node_count - sm.dim_K;

        auto smooth = check_smoothable(K);
        sm.smoothable = smooth.smoothable;
        sm.per_node_smoothable = smooth.per_node;

        if (opts.power_check) {
            auto t2 = Clock::now();
            auto contain = check_power_containment(I, K, working->m(), opts.random_membership_checks, opts.seed);
            sm.power_map_contained = contain.contained;
            report.timings_seconds["power_containment"] = elapsed(t2);
            auto t3 = Clock::now();
            auto spans = check_power_spans(I, K, working->m(), opts.product_budget);
            report.timings_seconds["power_spans"] = elapsed(t3);
            if (spans.budget_exhausted) {
                sm.span_budget_exhausted = true;
                sm.partial = true;
                sm.partial_reasons.push_back("power-span check stopped at the product budget with span dimension >= " +
                                             std::to_string(spans.span_dim));
            } else {
                sm.power_map_spans = spans.spans;
            }
            sm.span_products_considered = spans.products_considered;
        }
    }
    report.timings_seconds["total"] = elapsed(started);
    return report;
}

inline json report_to_json(const AnalysisReport& report) {
    const SmoothingReport& sm = report.smoothing;
    json smoothing{
        {"node_count", sm.node_count},
        {"power_exponent", sm.power_exponent},
        {"degree_I", sm.degree_I},
        {"degree_K", sm.degree_K},
        {"matrix_shape_I", json::array({sm.rows_I, sm.node_count})},
        {"matrix_shape_K", json::array({sm.rows_K, sm.node_count})},
        {"dim_I", sm.dim_I},
        {"dim_K", sm.dim_K},
        {"span_dimension", sm.span_dimension},
        {"smoothable", sm.smoothable ? json(*sm.smoothable) : json(nullptr)},
        {"power_map_contained", sm.power_map_contained ? json(*sm.power_map_contained) : json(nullptr)},
        {"power_map_spans", sm.power_map_spans ? json(*sm.power_map_spans) : json(nullptr)},
        {"span_budget_exhausted", sm.span_budget_exhausted},
        {"span_products_considered", sm.span_products_considered},
        {"method", sm.method},
        {"modular_primes", sm.primes},
        {"partial", sm.partial},
        {"partial_reasons", sm.partial_reasons},
    };
    if (!sm.per_node_smoothable.empty()) {
        json per_node = json::array();
        for (bool b : sm.per_node_smoothable) per_node.push_back(b);
        smoothing["per_node_smoothable"] = per_node;
    }
    json out{
        {"n", report.n},
        {"cyclotomic_order", report.field_order},
        {"node_count_total", report.node_count_total},
        {"sampled_nodes", report.sampled_nodes ? json(*report.sampled_nodes) : json(nullptr)},
        {"odp_all_verified", report.odp_all_verified},
        {"assumptions", report.assumptions},
        {"smoothing", smoothing},
    };
    if (report.include_timings) out["timings_seconds"] = report.timings_seconds;
    return out;
}

inline std::string report_to_markdown(const AnalysisReport& report) {
    const SmoothingReport& sm = report.smoothing;
    std::string md;
    md += "# Smoothing analysis\n\n";
    md += "- dimension n: " + std::to_string(report.n) + " (m = " + std::to_string(sm.power_exponent) + ")\n";
    md += "- cyclotomic order: " + std::to_string(report.field_order) + "\n";
    md += "- nodes analyzed: " + std::to_string(sm.node_count) + " of " + std::to_string(report.node_count_total) +
          ", all verified as ODPs\n";
    md += "- method: " + sm.method;
    if (!sm.primes.empty()) {
        md += " (primes:";
        for (auto p : sm.primes) md += " " + std::to_string(p);
        md += ")";
    }
    md += "\n\n";
    md += "| quantity | value |\n|---|---|\n";
    md += "| dim I (degree " + std::to_string(sm.degree_I) + ") | " + std::to_string(sm.dim_I) + " |\n";
    md += "| dim K (degree " + std::to_string(sm.degree_K) + ") | " + std::to_string(sm.dim_K) + " |\n";
    md += "| span of A-B classes | " + std::to_string(sm.span_dimension) + " |\n";
    auto tri = [](const std::optional<bool>& v) { return v ? (*v ? std::string("yes") : std::string("no")) : std::string("not computed"); };
    md += "| smoothable | " + tri(sm.smoothable) + " |\n";
    md += "| power map lands in K | " + tri(sm.power_map_contained) + " |\n";
    md += "| powers of I span K | " + tri(sm.power_map_spans) + " |\n";
    if (sm.partial) {
        md += "\n**Partial result.**\n";
        for (const auto& reason : sm.partial_reasons) md += "- " + reason + "\n";
    }
    if (!report.assumptions.empty()) {
        md += "\nAssumptions:\n";
        for (const auto& a : report.assumptions) md += "- " + a + "\n";
    }
    return md;
}

}  // namespace nodalcy
