// ranksel — marginal rank statistics, subsampling, FDR selection and
// stability evaluation for two-class feature matrices.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ranksel/dataset.hpp"
#include "ranksel/oracle.hpp"
#include "ranksel/pipeline.hpp"

namespace {

struct CommonOpts {
    std::string input;
    std::string label_col = "label";
    std::string statistic = "auc";
    bool resample = false;
    std::int32_t m = 50;
    std::int64_t ell = 100;
    std::int64_t n_perm = 100000;
    std::string pvalue = "mc";
    std::string fdr = "by";
    double alpha = 0.15;
    std::int32_t folds = 4;
    std::uint64_t seed = 0;
    std::int32_t threads = 1;
    std::string output_dir = ".";
};

void add_common_flags(CLI::App* cmd, CommonOpts& opts, bool needs_input) {
    auto* input = cmd->add_option("--input", opts.input, "Input CSV (header row required)");
    if (needs_input) input->required();
    cmd->add_option("--label-col", opts.label_col, "Name of the binary label column");
    cmd->add_option("--statistic", opts.statistic, "Marginal statistic")
        ->check(CLI::IsMember({"auc", "xi"}));
    cmd->add_flag("--resample", opts.resample, "Use the subsampled statistic");
    cmd->add_option("--m", opts.m, "Subsample size");
    cmd->add_option("--ell", opts.ell, "Number of subsamples");
    cmd->add_option("--n-perm", opts.n_perm, "Monte Carlo permutations per p-value");
    cmd->add_option("--pvalue", opts.pvalue, "P-value mode (exact only for plain statistics)")
        ->check(CLI::IsMember({"exact", "mc"}));
    cmd->add_option("--fdr", opts.fdr, "FDR procedure")->check(CLI::IsMember({"by", "bh"}));
    cmd->add_option("--alpha", opts.alpha, "Target FDR level");
    cmd->add_option("--folds", opts.folds, "Cross-validation folds");
    cmd->add_option("--seed", opts.seed, "Random seed");
    cmd->add_option("--threads", opts.threads, "Worker threads");
    cmd->add_option("--output-dir", opts.output_dir, "Directory for output files");
}

ranksel::RunConfig to_config(const CommonOpts& opts) {
    ranksel::RunConfig config;
    config.use_xi = opts.statistic == "xi";
    config.resampled = opts.resample;
    config.m = opts.m;
    config.ell = opts.ell;
    config.n_perm = opts.n_perm;
    config.alpha = opts.alpha;
    config.fdr = opts.fdr == "bh" ? ranksel::FdrProcedure::BenjaminiHochberg
                                  : ranksel::FdrProcedure::BenjaminiYekutieli;
    config.pvalue_mode = opts.pvalue == "exact" ? ranksel::PValueMode::Exact
                                                : ranksel::PValueMode::MonteCarlo;
    config.folds = opts.folds;
    config.seed = opts.seed;
    config.threads = opts.threads;
    return config;
}

std::string output_path(const CommonOpts& opts, const std::string& file) {
    std::filesystem::create_directories(opts.output_dir);
    return (std::filesystem::path(opts.output_dir) / file).string();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-class feature selection with rank statistics, subsampling and FDR control"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Config file (key=value); CLI flags take precedence");

    CommonOpts opts;
    std::vector<std::int64_t> ell_grid;
    std::vector<std::int32_t> s_grid;

    auto* select = app.add_subcommand("select", "Run the two-step selection pipeline");
    add_common_flags(select, opts, true);

    auto* stability = app.add_subcommand("stability", "Stability curve across CV folds");
    add_common_flags(stability, opts, true);
    stability->add_option("--s-grid", s_grid, "Values of s (default 1..p)");

    auto* sweep = app.add_subcommand("ell-sweep", "Rejections of resampled xi per ell");
    add_common_flags(sweep, opts, true);
    sweep->add_option("--ell-grid", ell_grid, "Values of ell")->required();

    auto* synth = app.add_subcommand("synth", "Generate a synthetic two-class dataset");
    std::int64_t synth_n = 200, synth_p = 100, synth_nonnull = 10;
    double synth_shift = 1.0, synth_rho = 0.0;
    std::int64_t synth_rho_block = 0;
    std::string synth_out = "synthetic.csv";
    synth->add_option("--n", synth_n, "Rows (two balanced classes)");
    synth->add_option("--p", synth_p, "Features");
    synth->add_option("--n-nonnull", synth_nonnull, "Shifted (non-null) features");
    synth->add_option("--shift", synth_shift, "Class shift in standard deviations");
    synth->add_option("--rho", synth_rho, "Equicorrelation inside the correlated block");
    synth->add_option("--rho-block", synth_rho_block, "Features sharing the common factor");
    synth->add_option("--seed", opts.seed, "Random seed");
    synth->add_option("--output", synth_out, "Output CSV path");

    auto* verify = app.add_subcommand("verify", "Run the brute-force oracle suite");

    CLI11_PARSE(app, argc, argv);

    try {
        if (select->parsed()) {
            const ranksel::DatasetMatrix data = ranksel::ingest_csv(opts.input, opts.label_col);
            const ranksel::SelectionOutput out = ranksel::run_selection(data, to_config(opts));
            const std::string path = output_path(opts, "feature_report.tsv");
            ranksel::write_feature_reports(out, path);
            std::printf("%zu of %lld features selected (alpha=%g); report written to %s\n",
                        out.selection.selected.size(),
                        static_cast<long long>(data.n_features()), opts.alpha, path.c_str());
        } else if (stability->parsed()) {
            const ranksel::DatasetMatrix data = ranksel::ingest_csv(opts.input, opts.label_col);
            if (s_grid.empty())
                for (std::int32_t s = 1; s <= data.n_features(); ++s) s_grid.push_back(s);
            const ranksel::StabilityCurve curve =
                ranksel::run_stability(data, to_config(opts), opts.folds, s_grid);
            const std::string path = output_path(opts, "stability_curve.csv");
            ranksel::write_stability_curve(curve, path);
            std::printf("stability curve (%s, %d folds) written to %s\n",
                        curve.method.c_str(), opts.folds, path.c_str());
        } else if (sweep->parsed()) {
            const ranksel::DatasetMatrix data = ranksel::ingest_csv(opts.input, opts.label_col);
            const auto rows =
                ranksel::run_ell_sweep(data, to_config(opts), ell_grid, opts.alpha);
            const std::string path = output_path(opts, "ell_sweep.csv");
            ranksel::write_ell_sweep(rows, path);
            std::printf("ell sweep written to %s\n", path.c_str());
        } else if (synth->parsed()) {
            ranksel::SyntheticSpec spec;
            spec.n = synth_n;
            spec.p = synth_p;
            spec.n_nonnull = synth_nonnull;
            spec.shift = synth_shift;
            spec.rho = synth_rho;
            spec.rho_block = synth_rho_block;
            spec.key = ranksel::StreamKey{opts.seed, 0};
            ranksel::write_dataset_csv(ranksel::generate_synthetic(spec), synth_out);
            std::printf("synthetic dataset (%lld x %lld) written to %s\n",
                        static_cast<long long>(synth_n), static_cast<long long>(synth_p),
                        synth_out.c_str());
        } else if (verify->parsed()) {
            const int failures = ranksel::oracle::run_verify_suite();
            if (failures > 0) {
                std::fprintf(stderr, "error: verify: %d check(s) failed\n", failures);
                return 1;
            }
            std::printf("all oracle checks passed\n");
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
