#include "fdts_cli/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "fdts/classify.hpp"
#include "fdts/dataset.hpp"
#include "fdts/dsearch.hpp"
#include "fdts/error.hpp"
#include "fdts/format.hpp"
#include "fdts/fracdiff.hpp"
#include "fdts/metrics.hpp"
#include "fdts/stattests.hpp"
#include "fdts/synthetic.hpp"
#include "json.hpp"
#include "svg.hpp"

namespace fdts::cli {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

constexpr const char* kRunFormat = "fdts-run";
constexpr int kRunVersion = 1;
constexpr const char* kDefaultModels = "logreg,knn:200,rf:entropy:50";
const std::vector<std::size_t> kDiagHurstLags = {5, 10, 20, 100};

[[noreturn]] void invalid(const std::string& message) {
  throw Error(ErrorKind::InvalidParameter, message);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, sep)) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

double parse_real(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    invalid("not a number: '" + text + "'");
  }
  if (used != text.size() || !std::isfinite(v)) invalid("not a number: '" + text + "'");
  return v;
}

std::string num(double v) { return format_double(v); }

std::string num(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

// Shared output state for one subcommand invocation.
struct Context {
  std::ostream& out;
  std::ostream& err;
  fs::path out_dir = ".";
  std::vector<std::string> written;

  void write(const std::string& name, const std::string& content) {
    fs::create_directories(out_dir);
    const fs::path path = out_dir / name;
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error(ErrorKind::Io, "cannot write '" + path.string() + "'");
    file << content;
    if (!file) throw Error(ErrorKind::Io, "failed writing '" + path.string() + "'");
    written.push_back(name);
  }
};

// Optional transforms applied, in this order, before a diagnostic.
struct SeriesPrep {
  std::string input;
  std::string column = "Close";
  bool log = false;
  bool returns = false;
  std::optional<double> d;
  double tau = kDefaultTau;

  void add_to(CLI::App& app) {
    app.add_option("--input", input, "CSV file (OHLCV, Date,Value or one numeric column)")->required();
    app.add_option("--column", column, "Column to read from OHLCV files")->capture_default_str();
    app.add_flag("--log", log, "Take logs of the values first");
    app.add_flag("--returns", returns, "Use log returns");
    app.add_option("--d", d, "Apply fixed-window fractional differencing of this order");
    app.add_option("--tau", tau, "Weight threshold for --d")->capture_default_str();
  }

  TimeSeries load() const {
    TimeSeries x = load_series(input, column);
    if (log) x = log_values(x);
    if (returns) x = log_returns(x);
    if (d) x = fracdiff_fixed(x, *d, tau);
    return x;
  }
};

Json test_json(const StatTestResult& r) {
  Json j;
  j["test"] = to_string(r.test_kind);
  j["statistic"] = r.statistic;
  j["p_value"] = r.p_value;
  Json cv = Json::object();
  for (const auto& [level, value] : r.critical_values) cv[level] = value;
  j["critical_values"] = cv;
  j["lags_used"] = r.lags_used;
  j["nobs"] = r.nobs;
  return j;
}

std::string acf_csv(const AcfResult& a) {
  std::string csv = "lag,acf\n";
  for (std::size_t i = 0; i < a.lags.size(); ++i) {
    csv += std::to_string(a.lags[i]) + ',' + num(a.r[i]) + '\n';
  }
  return csv;
}

std::string acf_svg(const AcfResult& a, const std::string& name) {
  SvgLinePlot plot;
  plot.title = "Autocorrelation" + (name.empty() ? std::string() : " of " + name);
  plot.x_label = "lag";
  plot.y_label = "ACF";
  SvgSeries s;
  s.stems = true;
  for (std::size_t i = 0; i < a.lags.size(); ++i) {
    s.x.push_back(static_cast<double>(a.lags[i]));
    s.y.push_back(a.r[i]);
  }
  plot.series.push_back(std::move(s));
  plot.reference_y = {a.confidence_band, -a.confidence_band};
  return render_line_plot(plot);
}

// ------------------------------------------------------------ subcommands

struct WeightsCmd {
  std::string d_list;
  std::size_t len = 20;
  std::optional<double> tau;
  bool svg = false;

  void run(Context& ctx) const {
    const std::vector<double> ds = parse_real_list(d_list);
    const bool multi = ds.size() > 1;
    std::string csv = multi ? "d,j,omega\n" : "j,omega\n";
    SvgLinePlot plot{"Lag weights", "j", "omega_j", {}, {}};
    for (double d : ds) {
      const FdWeights w = tau ? fd_weights_threshold(d, *tau, len) : fd_weights(d, len);
      SvgSeries series{"d = " + num(d), {}, {}, false};
      for (std::size_t j = 0; j < w.size(); ++j) {
        if (multi) csv += num(d) + ',';
        csv += std::to_string(j) + ',' + num(w[j]) + '\n';
        series.x.push_back(static_cast<double>(j));
        series.y.push_back(w[j]);
      }
      plot.series.push_back(std::move(series));
    }
    ctx.write("weights.csv", csv);
    if (svg) ctx.write("weights.svg", render_line_plot(plot));
    ctx.out << csv;
  }
};

struct DiffCmd {
  std::string input;
  std::string column = "Close";
  double d = 0.0;
  std::string mode = "fixed";
  double tau = kDefaultTau;
  double lambda_star = 1.0;
  bool log = false;

  void run(Context& ctx) const {
    TimeSeries x = load_series(input, column);
    if (log) x = log_values(x);
    const TimeSeries y = mode == "fixed" ? fracdiff_fixed(x, d, tau)
                                         : fracdiff_expanding(x, d, lambda_star);
    std::ostringstream csv;
    write_series(y, csv);
    ctx.write("diff.csv", csv.str());
    ctx.out << "retained " << y.size() << " of " << x.size() << " rows (dropped "
            << x.size() - y.size() << ")\n";
  }
};

struct SimulateCmd {
  std::string kind = "arfima";
  double d = 0.3;
  std::size_t len = 1000;
  std::uint64_t seed = 0;
  double sigma = 1.0;
  double noise = SyntheticOhlcvOptions{}.label_noise;
  std::string input;

  void run(Context& ctx) const {
    std::ostringstream csv;
    if (kind == "ohlcv") {
      SyntheticOhlcvOptions options;
      options.n = len;
      options.label_d = d;
      options.label_noise = noise;
      write_ohlcv(synthetic_ohlcv(seed, options), csv);
      ctx.write("ohlcv.csv", csv.str());
      ctx.out << "wrote " << len << " synthetic OHLCV rows\n";
      return;
    }
    TimeSeries x;
    if (!input.empty()) {
      x = fracdiff_inverse(load_series(input), d);
    } else if (kind == "arfima") {
      x = arfima(seed, len, d, sigma);
    } else if (kind == "cumulated") {
      x = cumulated_arfima(seed, len, d, sigma);
    } else if (kind == "walk") {
      x = random_walk(seed, len, sigma);
    } else {
      x = white_noise(seed, len, sigma);
    }
    write_series(x, csv);
    ctx.write("simulate.csv", csv.str());
    ctx.out << "wrote " << x.size() << " rows\n";
  }
};

struct AdfCmd {
  SeriesPrep prep;
  std::optional<std::size_t> lags;

  void run(Context& ctx) const {
    const std::string text = test_json(adf_test(prep.load(), lags)).dump(2) + '\n';
    ctx.write("adf.json", text);
    ctx.out << text;
  }
};

struct KpssCmd {
  SeriesPrep prep;

  void run(Context& ctx) const {
    const std::string text = test_json(kpss_test(prep.load())).dump(2) + '\n';
    ctx.write("kpss.json", text);
    ctx.out << text;
  }
};

struct HurstCmd {
  SeriesPrep prep;
  std::string max_lags = "20";

  void run(Context& ctx) const {
    const TimeSeries x = prep.load();
    Json rows = Json::array();
    for (double lag : parse_real_list(max_lags)) {
      if (lag < 0 || std::floor(lag) != lag) invalid("max lag must be a whole number");
      rows.push_back({{"max_lag", static_cast<std::size_t>(lag)},
                      {"hurst", hurst_exponent(x, static_cast<std::size_t>(lag))}});
    }
    const std::string text = Json{{"hurst", rows}}.dump(2) + '\n';
    ctx.write("hurst.json", text);
    ctx.out << text;
  }
};

struct AcfCmd {
  SeriesPrep prep;
  std::size_t max_lag = 40;

  void run(Context& ctx) const {
    const TimeSeries x = prep.load();
    const AcfResult a = acf(x, max_lag);
    const std::string csv = acf_csv(a);
    ctx.write("acf.csv", csv);
    ctx.write("acf.svg", acf_svg(a, x.name()));
    ctx.out << csv;
  }
};

struct DiagCmd {
  SeriesPrep prep;
  std::size_t max_lag = 40;

  void run(Context& ctx) const {
    const TimeSeries x = prep.load();
    Json j;
    j["n"] = x.size();
    j["adf"] = test_json(adf_test(x));
    j["kpss"] = test_json(kpss_test(x));
    Json hurst = Json::array();
    for (std::size_t lag : kDiagHurstLags) {
      Json row{{"max_lag", lag}};
      try {
        row["hurst"] = hurst_exponent(x, lag);
      } catch (const Error& e) {
        row["hurst"] = nullptr;
        row["error"] = e.what();
      }
      hurst.push_back(std::move(row));
    }
    j["hurst"] = std::move(hurst);
    const AcfResult a = acf(x, std::min(max_lag, x.size() - 1));
    j["acf"] = {{"lags", a.lags}, {"r", a.r}, {"confidence_band", a.confidence_band}};
    const std::string text = j.dump(2) + '\n';
    ctx.write("diag.json", text);
    ctx.write("acf.svg", acf_svg(a, x.name()));
    ctx.out << text;
  }
};

struct ScanCmd {
  std::string input;
  std::string column = "Close";
  std::string grid = "0:1:0.1";
  double tau = kDefaultTau;
  double alpha = 0.05;
  bool log = true;
  std::optional<std::size_t> adf_lags;

  void run(Context& ctx) const {
    if (!(alpha > 0.0 && alpha < 1.0)) invalid("alpha must lie in (0, 1)");
    const std::vector<double> d_grid = parse_real_list(grid);
    const std::vector<DScanRow> rows =
        scan_d(load_series(input, column), d_grid, ScanOptions{tau, log, adf_lags});

    std::string csv = "d,adf_stat,p_value,correlation,n_retained\n";
    SvgSeries pvals{"ADF p-value", {}, {}, false};
    for (const DScanRow& r : rows) {
      if (r.ok()) {
        csv += num(r.d) + ',' + num(r.adf_stat) + ',' + num(r.adf_p) + ',' + num(r.correlation) +
               ',' + std::to_string(r.n_retained) + '\n';
        pvals.x.push_back(r.d);
        pvals.y.push_back(r.adf_p);
      } else {
        csv += num(r.d) + ",,,," + std::to_string(r.n_retained) + '\n';
        ctx.err << "d = " << num(r.d) << " failed: " << r.failure << '\n';
      }
    }
    ctx.write("scan.csv", csv);
    ctx.write("scan.svg", render_line_plot({"ADF p-value by differencing order", "d", "p-value",
                                            {pvals}, {alpha}}));
    ctx.out << csv;
    const double best = select_optimal_d(rows, alpha);
    ctx.out << "selected d = " << num(best) << '\n';
  }
};

struct HeatmapCmd {
  std::string input;
  std::string column = "Close";
  std::string thresholds;
  std::string d_values;
  bool log = true;

  void run(Context& ctx) const {
    const std::vector<double> thr =
        thresholds.empty() ? default_heatmap_thresholds() : parse_real_list(thresholds);
    const std::vector<double> ds = d_values.empty() ? default_heatmap_d_values() : parse_real_list(d_values);
    const HeatmapGrid grid = heatmap(load_series(input, column), thr, ds, ScanOptions{kDefaultTau, log, {}});

    std::string csv = "threshold,d,adf_stat\n";
    std::size_t missing = 0;
    SvgHeatmap map{"ADF statistic by threshold and d", "threshold", "d", {}, {}, grid.adf_stats};
    for (std::size_t i = 0; i < grid.thresholds.size(); ++i) {
      map.row_names.push_back(num(grid.thresholds[i]));
      for (std::size_t j = 0; j < grid.d_values.size(); ++j) {
        const auto& cell = grid.adf_stats[i][j];
        if (!cell) ++missing;
        csv += num(grid.thresholds[i]) + ',' + num(grid.d_values[j]) + ',' + num(cell) + '\n';
      }
    }
    for (double d : grid.d_values) map.col_names.push_back(num(d));
    ctx.write("heatmap.csv", csv);
    ctx.write("heatmap.svg", render_heatmap(map));
    ctx.out << grid.thresholds.size() * grid.d_values.size() << " cells, " << missing
            << " with insufficient data\n";
  }
};

struct DatasetArgs {
  std::string input;
  std::string sentiment;
  double d = 0.3;
  double tau = kDefaultTau;
  std::string mode = "fixed";
  double split = 0.8;

  void add_to(CLI::App& app) {
    app.add_option("--input", input, "OHLCV CSV")->required();
    app.add_option("--sentiment", sentiment, "Sentiment CSV (optional)");
    app.add_option("--d", d, "Differencing order of the close feature")->capture_default_str();
    app.add_option("--tau", tau, "Weight threshold")->capture_default_str();
    app.add_option("--mode", mode, "fixed or expanding")
        ->check(CLI::IsMember({"fixed", "expanding"}))
        ->capture_default_str();
    app.add_option("--split", split, "Training fraction")->capture_default_str();
  }

  LabeledDataset build() const {
    const OhlcvFrame frame = load_ohlcv(input);
    const DatasetOptions options{d, tau, split, mode == "fixed" ? FdMode::Fixed : FdMode::Expanding};
    if (sentiment.empty()) return build_dataset(frame, options);
    return build_dataset(frame, load_sentiment(sentiment), options);
  }
};

struct FeaturesCmd {
  DatasetArgs data;

  void run(Context& ctx) const {
    const LabeledDataset ds = data.build();
    std::ostringstream csv;
    write_dataset_csv(ds, csv);
    ctx.write("dataset.csv", csv.str());
    ctx.out << ds.rows() << " rows (" << ds.split_index << " train, " << ds.rows() - ds.split_index
            << " test), features:";
    for (const std::string& f : ds.feature_names) ctx.out << ' ' << f;
    ctx.out << '\n';
  }
};

template <class F>
auto stage(const std::string& name, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const Error& e) {
    throw Error(e.kind(), name + " stage: " + e.message());
  }
}

struct PipelineCmd {
  DatasetArgs data;
  std::string models = kDefaultModels;
  std::uint64_t seed = 0;

  void run(Context& ctx) const {
    std::vector<std::pair<std::string, ModelSpec>> specs;
    for (const std::string& text : split(models, ',')) {
      ModelSpec spec = parse_model_spec(text);
      // A forest spec without an explicit seed takes --seed.
      if (auto* forest = std::get_if<ForestSpec>(&spec.kind); forest && split(text, ':').size() < 5) {
        forest->seed = seed;
      }
      specs.emplace_back(text, spec);
    }
    if (specs.empty()) invalid("no models given");

    const LabeledDataset ds = stage("dataset", [&] { return data.build(); });
    const FeatureMatrix train_X = ds.train_X();
    const FeatureMatrix test_X = ds.test_X();
    const std::vector<Label> train_y = ds.train_y();
    const std::vector<Label> test_y = ds.test_y();

    std::string metrics_csv = "Model," + MetricReport::csv_header() + '\n';
    std::string predictions = "Model,Date,Truth,Score,Predicted\n";
    Json reports = Json::array();
    for (const auto& [text, spec] : specs) {
      const TrainedModel model = stage("train " + text, [&] { return train(spec, train_X, train_y); });
      const std::vector<double> scores = stage("predict " + text, [&] { return predict_scores(model, test_X); });
      const std::vector<Label> labels = stage("predict " + text, [&] { return predict_labels(model, test_X); });
      const MetricReport report =
          stage("evaluate " + text, [&] { return evaluate(test_y, labels, scores); });

      metrics_csv += text + ',' + report.csv_row() + '\n';
      for (std::size_t i = 0; i < labels.size(); ++i) {
        predictions += text + ',' + format_date(ds.dates[ds.split_index + i]) + ',' +
                       std::to_string(to_int(test_y[i])) + ',' + num(scores[i]) + ',' +
                       std::to_string(to_int(labels[i])) + '\n';
      }
      Json entry;
      entry["model"] = text;
      entry["description"] = describe(spec);
      entry["metrics"] = Json::parse(report.to_json());
      reports.push_back(std::move(entry));
    }

    Json summary;
    summary["rows"] = ds.rows();
    summary["train_rows"] = ds.split_index;
    summary["test_rows"] = ds.rows() - ds.split_index;
    summary["features"] = ds.feature_names;
    summary["models"] = std::move(reports);
    ctx.write("metrics.csv", metrics_csv);
    ctx.write("predictions.csv", predictions);
    ctx.write("metrics.json", summary.dump(2) + '\n');
    ctx.out << metrics_csv;
  }
};

Json load_run_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Input, "'" + path.string() + "' is not valid JSON");
  }
  if (!j.is_object() || j.value("format", "") != kRunFormat ||
      j.value("version", 0) != kRunVersion || !j.contains("args") || !j["args"].is_array()) {
    throw Error(ErrorKind::Input, "'" + path.string() + "' is not a run configuration");
  }
  return j;
}

std::vector<std::string> with_out(std::vector<std::string> args, const std::string& out_dir) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--out" && i + 1 < args.size()) {
      args[i + 1] = out_dir;
      return args;
    }
    if (args[i].rfind("--out=", 0) == 0) {
      args[i] = "--out=" + out_dir;
      return args;
    }
  }
  args.push_back("--out");
  args.push_back(out_dir);
  return args;
}

int exit_code_for(const Error& e) {
  return is_validation_error(e.kind()) ? kExitValidation : kExitData;
}

}  // namespace

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> values;
  const std::vector<std::string> range = split(text, ':');
  if (range.size() == 3 && text.find(',') == std::string::npos) {
    const double start = parse_real(range[0]);
    const double stop = parse_real(range[1]);
    const double step = parse_real(range[2]);
    if (!(step > 0.0) || stop < start) invalid("range needs start <= stop and step > 0: '" + text + "'");
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    if (count > 100000) invalid("range has too many points: '" + text + "'");
    for (std::size_t i = 0; i < count; ++i) {
      // Snap to 12 decimals so 0:1:0.1 yields the literals 0.1, 0.2, ...
      values.push_back(std::round((start + static_cast<double>(i) * step) * 1e12) / 1e12);
    }
    return values;
  }
  for (const std::string& item : split(text, ',')) values.push_back(parse_real(item));
  if (values.empty()) invalid("empty list");
  return values;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fractional differencing, stationarity diagnostics and volume-direction classifiers",
               "fdts"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "fdts 0.1.0");
  std::string out_dir = ".";
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();
  // Allow --out after the subcommand name as well.
  app.fallthrough();

  std::map<std::string, std::function<void(Context&)>> commands;

  WeightsCmd weights;
  {
    CLI::App* c = app.add_subcommand("weights", "Fractional differencing weights");
    c->add_option("--d", weights.d_list, "Order or comma list of orders")->required();
    c->add_option("--len", weights.len, "Number of weights")->capture_default_str();
    c->add_option("--tau", weights.tau, "Stop at the first weight below this magnitude");
    c->add_flag("--svg", weights.svg, "Also write weights.svg");
    commands["weights"] = [&](Context& ctx) {
      if (weights.len == 0) invalid("--len must be positive");
      weights.run(ctx);
    };
  }

  DiffCmd diff;
  {
    CLI::App* c = app.add_subcommand("diff", "Fractionally difference a series");
    c->add_option("--input", diff.input, "Input CSV")->required();
    c->add_option("--column", diff.column, "OHLCV column")->capture_default_str();
    c->add_option("--d", diff.d, "Differencing order")->required();
    c->add_option("--mode", diff.mode, "fixed or expanding")
        ->check(CLI::IsMember({"fixed", "expanding"}))
        ->capture_default_str();
    c->add_option("--tau", diff.tau, "Weight threshold (fixed mode)")->capture_default_str();
    c->add_option("--lambda-star", diff.lambda_star, "Weight-loss cutoff (expanding mode)")
        ->capture_default_str();
    c->add_flag("--log,!--no-log", diff.log, "Difference log values");
    commands["diff"] = [&](Context& ctx) { diff.run(ctx); };
  }

  SimulateCmd simulate;
  {
    CLI::App* c = app.add_subcommand("simulate", "Generate synthetic series or invert a differenced one");
    c->add_option("--kind", simulate.kind, "arfima, cumulated, walk, noise or ohlcv")
        ->check(CLI::IsMember({"arfima", "cumulated", "walk", "noise", "ohlcv"}))
        ->capture_default_str();
    c->add_option("--d", simulate.d, "Memory parameter")->capture_default_str();
    c->add_option("--len", simulate.len, "Length")->capture_default_str();
    c->add_option("--seed", simulate.seed, "Random seed")->capture_default_str();
    c->add_option("--sigma", simulate.sigma, "Innovation standard deviation")->capture_default_str();
    c->add_option("--noise", simulate.noise, "Label noise for --kind ohlcv, in feature standard deviations")
        ->capture_default_str();
    c->add_option("--input", simulate.input, "Integrate this series by order d instead of simulating");
    commands["simulate"] = [&](Context& ctx) { simulate.run(ctx); };
  }

  AdfCmd adf;
  {
    CLI::App* c = app.add_subcommand("adf", "Augmented Dickey-Fuller test");
    adf.prep.add_to(*c);
    c->add_option("--lags", adf.lags, "Fixed lag order (default: AIC selection)");
    commands["adf"] = [&](Context& ctx) { adf.run(ctx); };
  }

  KpssCmd kpss;
  {
    CLI::App* c = app.add_subcommand("kpss", "KPSS level-stationarity test");
    kpss.prep.add_to(*c);
    commands["kpss"] = [&](Context& ctx) { kpss.run(ctx); };
  }

  HurstCmd hurst;
  {
    CLI::App* c = app.add_subcommand("hurst", "Hurst exponent");
    hurst.prep.add_to(*c);
    c->add_option("--max-lag", hurst.max_lags, "Maximum lag or comma list")->capture_default_str();
    commands["hurst"] = [&](Context& ctx) { hurst.run(ctx); };
  }

  AcfCmd acf_cmd;
  {
    CLI::App* c = app.add_subcommand("acf", "Sample autocorrelation");
    acf_cmd.prep.add_to(*c);
    c->add_option("--max-lag", acf_cmd.max_lag, "Largest lag")->capture_default_str();
    commands["acf"] = [&](Context& ctx) { acf_cmd.run(ctx); };
  }

  DiagCmd diag;
  {
    CLI::App* c = app.add_subcommand("diag", "ADF, KPSS, Hurst and ACF report");
    diag.prep.add_to(*c);
    c->add_option("--max-lag", diag.max_lag, "Largest ACF lag")->capture_default_str();
    commands["diag"] = [&](Context& ctx) { diag.run(ctx); };
  }

  ScanCmd scan;
  {
    CLI::App* c = app.add_subcommand("scan", "ADF and correlation over a grid of d");
    c->add_option("--input", scan.input, "Input CSV")->required();
    c->add_option("--column", scan.column, "OHLCV column")->capture_default_str();
    c->add_option("--grid", scan.grid, "d list or start:stop:step")->capture_default_str();
    c->add_option("--tau", scan.tau, "Weight threshold")->capture_default_str();
    c->add_option("--alpha", scan.alpha, "ADF significance level")->capture_default_str();
    c->add_flag("--log,!--no-log", scan.log, "Scan log values (default on)");
    c->add_option("--adf-lags", scan.adf_lags, "Fixed ADF lag order");
    commands["scan"] = [&](Context& ctx) { scan.run(ctx); };
  }

  HeatmapCmd heat;
  {
    CLI::App* c = app.add_subcommand("heatmap", "ADF statistic over thresholds and d");
    c->add_option("--input", heat.input, "Input CSV")->required();
    c->add_option("--column", heat.column, "OHLCV column")->capture_default_str();
    c->add_option("--thresholds", heat.thresholds, "Threshold list (default: 10 values 1e-3..3e-5)");
    c->add_option("--grid", heat.d_values, "d list or start:stop:step (default: 0.8 down to 0.2)");
    c->add_flag("--log,!--no-log", heat.log, "Use log values (default on)");
    commands["heatmap"] = [&](Context& ctx) { heat.run(ctx); };
  }

  FeaturesCmd features;
  {
    CLI::App* c = app.add_subcommand("features", "Build the labelled dataset");
    features.data.add_to(*c);
    commands["features"] = [&](Context& ctx) { features.run(ctx); };
  }

  PipelineCmd pipeline;
  {
    CLI::App* c = app.add_subcommand("pipeline", "Dataset, training and evaluation for each model");
    pipeline.data.add_to(*c);
    c->add_option("--models", pipeline.models, "Comma list of logreg[:l2], knn:K, rf:CRIT:LEAVES[:TREES[:SEED]]")
        ->capture_default_str();
    c->add_option("--seed", pipeline.seed, "Forest seed")->capture_default_str();
    commands["pipeline"] = [&](Context& ctx) { pipeline.run(ctx); };
  }

  std::string rerun_path;
  {
    CLI::App* c = app.add_subcommand("rerun", "Re-execute a saved run.json");
    c->add_option("config", rerun_path, "Path to run.json")->required();
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  try {
    if (name == "rerun") {
      const Json config = load_run_config(rerun_path);
      std::vector<std::string> saved = config["args"].get<std::vector<std::string>>();
      if (app.count("--out") > 0) saved = with_out(saved, out_dir);
      return run(saved, out, err);
    }

    Context ctx{out, err, out_dir, {}};
    int code = kExitOk;
    try {
      commands.at(name)(ctx);
    } catch (const NoStationaryDError& e) {
      // The scan outputs are still useful; report and finish with a data error.
      err << "error: " << e.what() << '\n';
      code = kExitData;
    }
    Json config;
    config["format"] = kRunFormat;
    config["version"] = kRunVersion;
    config["subcommand"] = name;
    config["args"] = args;
    config["outputs"] = ctx.written;
    ctx.write("run.json", config.dump(2) + '\n');
    return code;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace fdts::cli
