#include "ranksel/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <stdexcept>

#include "ranksel/parallel.hpp"
#include "ranksel/permutation_test.hpp"
#include "ranksel/subsample.hpp"
#include "ranksel/tau_dist.hpp"
#include "ranksel/u_dist.hpp"

namespace ranksel {

void RunConfig::validate(std::int64_t n_rows) const {
    if (resampled) {
        if (m < 1 || static_cast<std::int64_t>(m) > n_rows)
            throw std::domain_error("config: subsample size m must lie in [1, n]");
        if (ell < 1) throw std::domain_error("config: ell must be >= 1");
    }
    if (n_perm < 1) throw std::domain_error("config: n-perm must be >= 1");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("config: alpha must lie in (0, 1)");
    if (folds < 1 || static_cast<std::int64_t>(folds) > n_rows)
        throw std::domain_error("config: folds must lie in [1, n]");
    if (threads < 1) throw std::domain_error("config: threads must be >= 1");
    if (pvalue_mode == PValueMode::Exact && resampled)
        throw std::domain_error("config: exact p-values are only defined for plain statistics");
}

RankingConfig RunConfig::ranking() const {
    RankingConfig rc;
    rc.use_xi = use_xi;
    rc.resampled = resampled;
    rc.m = m;
    rc.ell = ell;
    rc.seed = seed;
    return rc;
}

std::string RunConfig::statistic_name() const {
    return std::string(use_xi ? "xi" : "auc") + (resampled ? "_resampled" : "_plain");
}

namespace {

std::vector<std::uint8_t> labels_in_value_order(const LabeledSample& sample,
                                                const RankPermutation& perm) {
    std::vector<std::uint8_t> ordered(sample.size());
    for (std::size_t k = 0; k < ordered.size(); ++k)
        ordered[k] = sample.labels[static_cast<std::size_t>(perm.order[k])];
    return ordered;
}

struct FeatureResult {
    double statistic = 0.0;
    double pvalue = 1.0;
};

// Everything shared read-only by the per-feature workers.
struct SelectionContext {
    const DatasetMatrix& data;
    const RunConfig& config;
    const SubsampleDesign* design = nullptr;  // when resampled
    const UNullDistribution* u_null = nullptr;  // exact AUC mode
    GroupCounts counts;
};

FeatureResult compute_feature(const SelectionContext& ctx, std::int64_t j) {
    const RunConfig& cfg = ctx.config;
    const LabeledSample sample = ctx.data.feature_sample(j);
    RandomStream tie_stream(
        make_key(cfg.seed, StreamPurpose::TieBreak, static_cast<std::uint64_t>(j)));
    const RankPermutation perm = rank_values(sample.values, tie_stream);

    FeatureResult result;
    if (!cfg.resampled) {
        const std::vector<std::uint8_t> ordered = labels_in_value_order(sample, perm);
        result.statistic =
            cfg.use_xi ? xi_of_ordered_labels(ordered) : auc_of_ordered_labels(ordered);
    } else {
        const SubsampleEvaluator eval(*ctx.design, perm);
        result.statistic =
            cfg.use_xi ? eval.mean_xi(sample.labels) : eval.mean_auc(sample.labels);
    }

    if (cfg.pvalue_mode == PValueMode::Exact) {
        if (cfg.use_xi) {
            result.pvalue = xi_exact_pvalue(result.statistic, ctx.counts.n0, ctx.counts.n1);
        } else {
            const double u = result.statistic * ctx.counts.n0 * ctx.counts.n1;
            const double p =
                2.0 * std::min(ctx.u_null->upper_tail(u), ctx.u_null->cdf(u));
            result.pvalue = std::min(p, 1.0);
        }
        return result;
    }

    PermutationScheme scheme;
    scheme.n_perm = cfg.n_perm;
    scheme.key = make_key(cfg.seed, StreamPurpose::Permutation, static_cast<std::uint64_t>(j));
    scheme.alternative = cfg.use_xi ? Alternative::Greater : Alternative::TwoSided;
    const double center = cfg.use_xi ? 0.0 : 0.5;

    LabelStatistic stat;
    if (!cfg.resampled) {
        const std::vector<std::int32_t> order = perm.order;
        const bool use_xi = cfg.use_xi;
        stat = [order, use_xi](std::span<const std::uint8_t> labels) {
            std::vector<std::uint8_t> ordered(order.size());
            for (std::size_t k = 0; k < order.size(); ++k)
                ordered[k] = labels[static_cast<std::size_t>(order[k])];
            return use_xi ? xi_of_ordered_labels(ordered) : auc_of_ordered_labels(ordered);
        };
    } else {
        // Shared evaluator: the permuted label vector is rescored against
        // the same fixed design.
        auto eval = std::make_shared<SubsampleEvaluator>(*ctx.design, perm);
        const bool use_xi = cfg.use_xi;
        stat = [eval, use_xi](std::span<const std::uint8_t> labels) {
            return use_xi ? eval->mean_xi(labels) : eval->mean_auc(labels);
        };
    }
    result.pvalue = permutation_pvalue(stat, sample.labels, scheme, center);
    return result;
}

}  // namespace

SelectionOutput run_selection(const DatasetMatrix& data, const RunConfig& config) {
    data.validate();
    config.validate(data.n_rows());
    const std::int64_t p = data.n_features();
    if (p < 1) throw std::domain_error("run_selection: dataset has no feature columns");

    SelectionContext ctx{data, config, nullptr, nullptr, GroupCounts{}};
    ctx.counts = group_counts(LabeledSample(data.labels, data.columns.front()));

    SubsampleDesign design;
    if (config.resampled) {
        design = build_design(data.n_rows(), config.m, config.ell,
                              make_key(config.seed, StreamPurpose::SubsampleDesign));
        ctx.design = &design;
    }
    UNullDistribution u_null;
    if (config.pvalue_mode == PValueMode::Exact && !config.use_xi) {
        if (ctx.counts.n0 == 0 || ctx.counts.n1 == 0)
            throw std::domain_error("run_selection: exact AUC p-values need both classes present");
        u_null = u_null_distribution(ctx.counts.n0, ctx.counts.n1);
        ctx.u_null = &u_null;
    }

    std::vector<FeatureResult> results(static_cast<std::size_t>(p));
    parallel_for(p, config.threads, [&](std::int64_t j) {
        try {
            results[static_cast<std::size_t>(j)] = compute_feature(ctx, j);
        } catch (const std::exception& e) {
            throw std::runtime_error("feature '" +
                                     data.feature_names[static_cast<std::size_t>(j)] +
                                     "': " + e.what());
        }
    });

    std::vector<double> pvals(static_cast<std::size_t>(p));
    for (std::int64_t j = 0; j < p; ++j)
        pvals[static_cast<std::size_t>(j)] = results[static_cast<std::size_t>(j)].pvalue;

    SelectionOutput output;
    output.selection = fdr_select(PValueVector(pvals), config.alpha, config.fdr);
    output.reports.resize(static_cast<std::size_t>(p));
    for (std::int64_t j = 0; j < p; ++j) {
        FeatureReport& report = output.reports[static_cast<std::size_t>(j)];
        report.name = data.feature_names[static_cast<std::size_t>(j)];
        report.statistic = results[static_cast<std::size_t>(j)].statistic;
        report.pvalue = results[static_cast<std::size_t>(j)].pvalue;
        report.adjusted = output.selection.adjusted[static_cast<std::size_t>(j)];
        report.selected = output.selection.is_selected(static_cast<std::int32_t>(j));
    }
    return output;
}

namespace {

FoldPartition folds_or_whole(const DatasetMatrix& data, std::int32_t k, std::uint64_t seed) {
    if (k == 1) {
        FoldPartition part;
        part.k = 1;
        part.assignment.assign(static_cast<std::size_t>(data.n_rows()), 0);
        part.folds.resize(1);
        part.folds[0].resize(static_cast<std::size_t>(data.n_rows()));
        for (std::int64_t i = 0; i < data.n_rows(); ++i)
            part.folds[0][static_cast<std::size_t>(i)] = static_cast<std::int32_t>(i);
        return part;
    }
    return make_folds(data.n_rows(), k, make_key(seed, StreamPurpose::Folds));
}

}  // namespace

StabilityCurve run_stability(const DatasetMatrix& data, const RunConfig& config,
                             std::int32_t k, std::span<const std::int32_t> s_grid) {
    data.validate();
    const FoldPartition part = folds_or_whole(data, k, config.seed);
    return stability_curve(data, config.ranking(), part, s_grid);
}

std::vector<EllSweepRow> run_ell_sweep(const DatasetMatrix& data, const RunConfig& config,
                                       std::span<const std::int64_t> ell_grid, double alpha) {
    if (ell_grid.empty()) throw std::domain_error("run_ell_sweep: empty ell grid");
    data.validate();
    const FoldPartition part = folds_or_whole(data, config.folds, config.seed);

    std::vector<EllSweepRow> rows;
    for (std::int32_t fold = 0; fold < part.k; ++fold) {
        const DatasetMatrix fold_data = data.rows_subset(part.folds[static_cast<std::size_t>(fold)]);
        for (std::int64_t ell : ell_grid) {
            RunConfig cfg = config;
            cfg.use_xi = true;
            cfg.resampled = true;
            cfg.ell = ell;
            cfg.alpha = alpha;
            cfg.pvalue_mode = PValueMode::MonteCarlo;
            // Fold-scoped seed so folds get independent designs and draws.
            cfg.seed = config.seed ^ derive_stream_id(StreamPurpose::Folds,
                                                      static_cast<std::uint64_t>(fold) + 1);
            const SelectionOutput out = run_selection(fold_data, cfg);
            rows.push_back(EllSweepRow{fold, ell,
                                       static_cast<std::int32_t>(out.selection.selected.size())});
        }
    }
    return rows;
}

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

void write_text(const std::string& text, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
    out << text;
}

}  // namespace

std::string format_feature_reports(const SelectionOutput& output) {
    std::string text = "feature\tstatistic\tp\tp_adjusted\tselected\n";
    for (const FeatureReport& r : output.reports) {
        text += r.name;
        text += '\t';
        text += format_double(r.statistic);
        text += '\t';
        text += format_double(r.pvalue);
        text += '\t';
        text += format_double(r.adjusted);
        text += '\t';
        text += r.selected ? '1' : '0';
        text += '\n';
    }
    return text;
}

void write_feature_reports(const SelectionOutput& output, const std::string& path) {
    write_text(format_feature_reports(output), path);
}

std::string format_stability_curve(const StabilityCurve& curve) {
    std::string text = "s,count,method\n";
    for (std::size_t i = 0; i < curve.s_values.size(); ++i) {
        text += std::to_string(curve.s_values[i]);
        text += ',';
        text += std::to_string(curve.counts[i]);
        text += ',';
        text += curve.method;
        text += '\n';
    }
    return text;
}

void write_stability_curve(const StabilityCurve& curve, const std::string& path) {
    write_text(format_stability_curve(curve), path);
}

std::string format_ell_sweep(const std::vector<EllSweepRow>& rows) {
    std::string text = "fold,ell,rejections\n";
    for (const EllSweepRow& row : rows) {
        text += std::to_string(row.fold);
        text += ',';
        text += std::to_string(row.ell);
        text += ',';
        text += std::to_string(row.rejections);
        text += '\n';
    }
    return text;
}

void write_ell_sweep(const std::vector<EllSweepRow>& rows, const std::string& path) {
    write_text(format_ell_sweep(rows), path);
}

}  // namespace ranksel
