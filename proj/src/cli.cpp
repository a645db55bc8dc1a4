#include "driftknn/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "driftknn/bench.hpp"
#include "driftknn/estimators.hpp"
#include "driftknn/geometry.hpp"
#include "driftknn/io.hpp"
#include "driftknn/theory.hpp"

namespace driftknn {

namespace {

std::string fmt(double v) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", v);
    return buffer;
}

//! Stream selector: path "-" means stdout, anything else a fresh file.
class Output {
public:
    explicit Output(const std::string& path) {
        if (path != "-") {
            file_.open(path);
            if (!file_) throw std::invalid_argument("cannot write file: " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
    void finish() {
        if (file_.is_open()) {
            file_.flush();
            if (!file_) throw std::runtime_error("write failed");
        }
    }

private:
    std::ofstream file_;
};

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> items;
    std::string item;
    std::istringstream stream(text);
    while (std::getline(stream, item, ',')) {
        if (!item.empty()) items.push_back(item);
    }
    return items;
}

std::vector<std::size_t> parse_count_list(const std::string& text,
                                          const std::string& flag) {
    std::vector<std::size_t> values;
    for (const std::string& item : split_list(text)) {
        try {
            values.push_back(std::stoull(item));
        } catch (const std::exception&) {
            throw std::invalid_argument(flag + ": bad count '" + item + "'");
        }
    }
    if (values.empty()) throw std::invalid_argument(flag + ": empty list");
    return values;
}

std::vector<double> parse_real_list(const std::string& text,
                                    const std::string& flag) {
    std::vector<double> values;
    for (const std::string& item : split_list(text)) {
        try {
            values.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw std::invalid_argument(flag + ": bad value '" + item + "'");
        }
    }
    if (values.empty()) throw std::invalid_argument(flag + ": empty list");
    return values;
}

DgpId parse_dgp(int id) {
    if (id == 1) return DgpId::DGP1;
    if (id == 2) return DgpId::DGP2;
    throw std::invalid_argument("--dgp must be 1 or 2");
}

std::size_t threads_from_env() {
    const char* env = std::getenv("DRIFTKNN_THREADS");
    if (env == nullptr || *env == '\0') return 0; // auto
    char* end = nullptr;
    const unsigned long value = std::strtoul(env, &end, 10);
    if (end == nullptr || *end != '\0') return 0;
    return static_cast<std::size_t>(value);
}

// ----------------------------------------------------------------- simulate

struct SimulateOptions {
    int dgp = 1;
    double kappa = 0.5;
    double gamma = 0.6;
    std::size_t d = 2;
    std::size_t n = 0;
    std::string role = "Q";
    std::uint64_t seed = 0;
    std::string out = "-";
};

void run_simulate(const SimulateOptions& opt) {
    DgpConfig dgp;
    dgp.dgp_id = parse_dgp(opt.dgp);
    dgp.kappa = opt.kappa;
    dgp.gamma = opt.gamma;
    dgp.d = opt.d;
    SourceRole role;
    if (opt.role == "P") {
        role = SourceRole::P;
    } else if (opt.role == "Q") {
        role = SourceRole::Q;
    } else {
        throw std::invalid_argument("--role must be P or Q");
    }
    const SourceDataset data = sample_dataset(dgp, role, opt.n, opt.seed);
    Output output(opt.out);
    write_dataset_csv(output.stream(), data, opt.d);
    output.finish();
}

// ----------------------------------------------------------------- classify

struct ClassifyOptions {
    std::string train_p;
    std::string train_q;
    std::string queries;
    std::string algorithm = "adaptive";
    std::string out = "-";
};

void run_classify(const ClassifyOptions& opt) {
    if (opt.train_p.empty() && opt.train_q.empty()) {
        throw std::invalid_argument("classify: need --train-p and/or --train-q");
    }
    const SourceDataset p = opt.train_p.empty()
                                ? SourceDataset()
                                : load_dataset_csv(opt.train_p, "P");
    const SourceDataset q = opt.train_q.empty()
                                ? SourceDataset()
                                : load_dataset_csv(opt.train_q, "Q");
    if (!p.empty() && !q.empty() && p.dimension() != q.dimension()) {
        throw std::invalid_argument("classify: training sets disagree on dimension");
    }
    const std::vector<FeatureVector> queries = load_queries_csv(opt.queries);
    const std::size_t dim = p.empty() ? q.dimension() : p.dimension();
    for (const FeatureVector& x : queries) {
        if (x.size() != dim) {
            throw std::invalid_argument("classify: query dimension mismatch");
        }
    }
    const Classifier algorithm = classifier_from_string(opt.algorithm);
    if (algorithm == Classifier::knn_q && q.empty()) {
        throw std::invalid_argument("classify: knn_q requires --train-q");
    }

    Output output(opt.out);
    std::ostream& os = output.stream();
    os << "label,k_p,k_q,r,threshold,stop_reason,attempts\n";
    for (const FeatureVector& x : queries) {
        switch (algorithm) {
            case Classifier::adaptive: {
                const auto [label, sel] = adaptive_two_source(p, q, x);
                os << label << "," << sel.ks[0] << "," << sel.ks[1] << ","
                   << fmt(sel.r_final) << "," << fmt(sel.threshold) << ","
                   << to_string(sel.stop_reason) << "," << sel.iterations << "\n";
                break;
            }
            case Classifier::pooled_adaptive: {
                const PooledScan scan = pooled_adaptive_classify(p, q, x);
                os << scan.label << "," << scan.k_p << "," << scan.k_q << ","
                   << fmt(scan.r_final) << "," << fmt(scan.threshold) << ","
                   << to_string(scan.stop_reason) << "," << scan.attempts << "\n";
                break;
            }
            case Classifier::knn_q: {
                const int label = knn_q_baseline(q, x);
                const std::size_t k = baseline_k(q.size(), q.dimension());
                os << label << ",0," << k << ",na,na,fixed,1\n";
                break;
            }
            case Classifier::knn_all: {
                const int label = knn_all_baseline(p, q, x);
                // Report the source composition of the fixed pooled prefix.
                std::vector<LabeledSample> rows;
                rows.reserve(p.size() + q.size());
                rows.insert(rows.end(), p.samples().begin(), p.samples().end());
                rows.insert(rows.end(), q.samples().begin(), q.samples().end());
                const SourceDataset pooled(std::move(rows), "ALL");
                const std::size_t k = baseline_k(pooled.size(), pooled.dimension());
                std::size_t from_p = 0;
                for (const Neighbor& nb : k_nearest(pooled, x, k)) {
                    if (nb.index < p.size()) ++from_p;
                }
                os << label << "," << from_p << "," << (k - from_p)
                   << ",na,na,fixed,1\n";
                break;
            }
        }
    }
    output.finish();
}

// -------------------------------------------------------------------- rates

struct RatesOptions {
    double alpha = 1.0;
    double gamma = 1.0;
    double beta_p = 1.0;
    double beta_q = 1.0;
    std::size_t d = 2;
    std::size_t np = 0;
    std::size_t nq = 0;
    std::string out = "-";
};

void run_rates(const RatesOptions& opt) {
    RateParams params;
    params.alpha = opt.alpha;
    params.gamma = opt.gamma;
    params.beta_p = opt.beta_p;
    params.beta_q = opt.beta_q;
    params.d = opt.d;
    params.n_p = opt.np;
    params.n_q = opt.nq;

    const bool strong = strong_transfer_branch(params);
    const double rate = minimax_rate_general(params);

    Output output(opt.out);
    std::ostream& os = output.stream();
    os << "branch,rate,exponent,exact,regime\n";
    os << (strong ? "strong_transfer" : "weak_transfer") << "," << fmt(rate) << ",";
    if (opt.nq == 0) {
        // Exponent and regime describe the source-only setting.
        const ExponentReport report = minimax_exponent_single(params);
        os << fmt(report.exponent) << "," << (report.exact ? "yes" : "no") << ","
           << to_string(classify_regime(params)) << "\n";
    } else {
        os << "na,na,na\n";
    }
    output.finish();
}

// -------------------------------------------------------------------- bench

struct BenchOptions {
    int dgp = 1;
    std::string kappa = "0.5";
    double gamma = 0.6;
    std::size_t d = 2;
    std::string np = "0";
    std::size_t nq = 0;
    std::size_t trials = 1;
    std::size_t test_points = 200;
    std::string classifiers = "adaptive,pooled_adaptive,knn_q,knn_all";
    std::uint64_t seed = 0;
    bool timing = false;
    std::string out = "-";
};

void run_bench(const BenchOptions& opt) {
    const std::vector<double> kappas = parse_real_list(opt.kappa, "--kappa");
    const std::vector<std::size_t> nps = parse_count_list(opt.np, "--np");
    std::vector<Classifier> classifiers;
    for (const std::string& name : split_list(opt.classifiers)) {
        classifiers.push_back(classifier_from_string(name));
    }
    if (classifiers.empty()) throw std::invalid_argument("--classifiers: empty list");
    const std::size_t threads = threads_from_env();

    Output output(opt.out);
    std::ostream& os = output.stream();
    os << "dgp,kappa,gamma,d,n_p,n_q,trials,test_points,seed,classifier,"
          "accuracy,stderr,mean_attempts,wall_time_seconds\n";
    for (std::size_t np : nps) {
        for (double kappa : kappas) {
            ExperimentConfig config;
            config.dgp.dgp_id = parse_dgp(opt.dgp);
            config.dgp.kappa = kappa;
            config.dgp.gamma = opt.gamma;
            config.dgp.d = opt.d;
            config.n_p = np;
            config.n_q = opt.nq;
            config.trials = opt.trials;
            config.test_points = opt.test_points;
            config.classifiers = classifiers;
            config.master_seed = opt.seed;
            const ExperimentResult result = run_experiment(config, threads);
            for (const ClassifierSummary& row : result.per_classifier) {
                // Wall time varies run to run; keep output seed-deterministic
                // unless timing was explicitly requested.
                const double wall = opt.timing ? row.wall_time_seconds : 0.0;
                os << opt.dgp << "," << fmt(kappa) << "," << fmt(opt.gamma) << ","
                   << opt.d << "," << np << "," << opt.nq << "," << opt.trials
                   << "," << opt.test_points << "," << opt.seed << ","
                   << to_string(row.classifier) << "," << fmt(row.accuracy) << ","
                   << fmt(row.accuracy_stderr) << "," << fmt(row.mean_attempts)
                   << "," << fmt(wall) << "\n";
            }
        }
    }
    output.finish();
}

// ----------------------------------------------------------------- realdata

struct RealdataOptions {
    std::string file;
    std::string label_col = "y";
    std::string feature_cols;
    std::string split_col;
    std::string nq_train;
    std::size_t replications = 100;
    std::uint64_t seed = 0;
    std::string out = "-";
};

void run_realdata(const RealdataOptions& opt) {
    const std::vector<std::string> feature_cols = split_list(opt.feature_cols);
    if (feature_cols.empty()) {
        throw std::invalid_argument("--feature-cols: empty list");
    }
    const std::vector<std::size_t> nq_values =
        parse_count_list(opt.nq_train, "--nq-train");

    const TabularDataset raw =
        load_csv(opt.file, opt.label_col, feature_cols, opt.split_col);
    const TabularDataset normalized = normalize_minmax(raw);
    const auto [p, q] = split_by_binary(normalized);
    std::cerr << "loaded " << normalized.features.size() << " rows ("
              << raw.dropped_rows << " dropped), split P=" << p.size()
              << " Q=" << q.size() << "\n";

    Output output(opt.out);
    std::ostream& os = output.stream();
    os << "n_q_train,replications,seed,classifier,accuracy\n";
    for (std::size_t nq_train : nq_values) {
        const RealDataReport report =
            real_data_protocol(p, q, nq_train, opt.replications, opt.seed);
        for (std::size_t ci = 0; ci < report.classifiers.size(); ++ci) {
            os << nq_train << "," << opt.replications << "," << opt.seed << ","
               << to_string(report.classifiers[ci]) << ","
               << fmt(report.accuracy[ci]) << "\n";
        }
    }
    output.finish();
}

} // namespace

int cli_dispatch(std::vector<std::string> args) {
    CLI::App app{"Pointwise-adaptive weighted kNN classification under posterior drift"};
    app.require_subcommand(1);

    SimulateOptions sim;
    CLI::App* simulate = app.add_subcommand(
        "simulate", "Draw a synthetic labeled dataset and write it as CSV");
    simulate->add_option("--dgp", sim.dgp, "Generating process, 1 or 2");
    simulate->add_option("--kappa", sim.kappa, "Signal strength in [0,1]")->required();
    simulate->add_option("--gamma", sim.gamma, "Relative signal exponent");
    simulate->add_option("--d", sim.d, "Covariate dimension");
    simulate->add_option("--n", sim.n, "Number of samples")->required();
    simulate->add_option("--role", sim.role, "Source role, P or Q")->required();
    simulate->add_option("--seed", sim.seed, "RNG seed");
    simulate->add_option("--out", sim.out, "Output CSV path, - for stdout");

    ClassifyOptions cls;
    CLI::App* classify = app.add_subcommand(
        "classify", "Label query points from training CSVs");
    classify->add_option("--train-p", cls.train_p, "Source training CSV");
    classify->add_option("--train-q", cls.train_q, "Target training CSV");
    classify->add_option("--queries", cls.queries, "Query CSV")->required();
    classify->add_option("--algorithm", cls.algorithm,
                         "adaptive | pooled_adaptive | knn_q | knn_all");
    classify->add_option("--out", cls.out, "Output CSV path, - for stdout");

    RatesOptions rates;
    CLI::App* rates_cmd = app.add_subcommand(
        "rates", "Evaluate minimax-rate formulas and the regime classification");
    rates_cmd->add_option("--alpha", rates.alpha, "Margin exponent")->required();
    rates_cmd->add_option("--gamma", rates.gamma, "Relative signal exponent")->required();
    rates_cmd->add_option("--beta-p", rates.beta_p, "Source smoothness")->required();
    rates_cmd->add_option("--beta-q", rates.beta_q, "Target smoothness")->required();
    rates_cmd->add_option("--d", rates.d, "Dimension")->required();
    rates_cmd->add_option("--np", rates.np, "Source sample size")->required();
    rates_cmd->add_option("--nq", rates.nq, "Target sample size")->required();
    rates_cmd->add_option("--out", rates.out, "Output CSV path, - for stdout");

    BenchOptions bench;
    CLI::App* bench_cmd = app.add_subcommand(
        "bench", "Monte Carlo comparison of the classifiers");
    bench_cmd->add_option("--dgp", bench.dgp, "Generating process, 1 or 2");
    bench_cmd->add_option("--kappa", bench.kappa, "Signal strengths, comma list");
    bench_cmd->add_option("--gamma", bench.gamma, "Relative signal exponent");
    bench_cmd->add_option("--d", bench.d, "Covariate dimension");
    bench_cmd->add_option("--np", bench.np, "Source sizes, comma list")->required();
    bench_cmd->add_option("--nq", bench.nq, "Target size")->required();
    bench_cmd->add_option("--trials", bench.trials, "Replicated trials")->required();
    bench_cmd->add_option("--test-points", bench.test_points, "Queries per trial");
    bench_cmd->add_option("--classifiers", bench.classifiers, "Comma list");
    bench_cmd->add_option("--seed", bench.seed, "Master seed");
    bench_cmd->add_flag("--timing", bench.timing,
                        "Report measured wall times (off: zeros, for stable output)");
    bench_cmd->add_option("--out", bench.out, "Output CSV path, - for stdout");

    RealdataOptions real;
    CLI::App* real_cmd = app.add_subcommand(
        "realdata", "Repeated-random-split evaluation on a real CSV");
    real_cmd->add_option("--file", real.file, "Input CSV")->required();
    real_cmd->add_option("--label-col", real.label_col, "Binary label column");
    real_cmd->add_option("--feature-cols", real.feature_cols,
                         "Feature columns, comma list")->required();
    real_cmd->add_option("--split-col", real.split_col,
                         "Binary column dividing P (1) from Q (0)")->required();
    real_cmd->add_option("--nq-train", real.nq_train,
                         "Target training sizes, comma list")->required();
    real_cmd->add_option("--replications", real.replications, "Replications");
    real_cmd->add_option("--seed", real.seed, "RNG seed");
    real_cmd->add_option("--out", real.out, "Output CSV path, - for stdout");

    try {
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (simulate->parsed()) run_simulate(sim);
        if (classify->parsed()) run_classify(cls);
        if (rates_cmd->parsed()) run_rates(rates);
        if (bench_cmd->parsed()) run_bench(bench);
        if (real_cmd->parsed()) run_realdata(real);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace driftknn
