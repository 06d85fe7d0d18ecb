// Command-line front end: smooth, persistence, entropy, evaluate, synth.
//
// Exit status is 0 on success, 1 for invalid input or arguments and 2 when a
// file cannot be read or written.

#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "topolines/evaluate.hpp"
#include "topolines/io.hpp"
#include "topolines/metrics.hpp"
#include "topolines/persistence.hpp"
#include "topolines/synthetic.hpp"

using namespace topolines;

namespace {

constexpr int kExitInvalid = 1;
constexpr int kExitIo = 2;

const std::map<std::string, BoundaryRule> kBoundaryNames{{"open", BoundaryRule::Open},
                                                         {"augmented", BoundaryRule::Augmented}};

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-")
    std::cout << text;
  else
    write_text(path, text);
}

// "Median=3,5,9" -> ("Median", {3, 5, 9})
std::pair<std::string, std::vector<double>> parse_grid(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ValidationError("grid '" + text + "' must look like Method=v1,v2,...");
  std::vector<double> values;
  std::stringstream rest(text.substr(eq + 1));
  for (std::string item; std::getline(rest, item, ',');) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ValidationError("grid '" + text + "': not a number: '" + item + "'");
    }
  }
  if (values.empty()) throw ValidationError("grid '" + text + "' has no values");
  return {text.substr(0, eq), values};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Topology-preserving smoothing of time series"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file; [section] names a subcommand, flags win");

  BoundaryRule boundary = BoundaryRule::Open;
  app.add_option("--boundary", boundary, "Boundary rule for persistence: open or augmented")
      ->transform(CLI::CheckedTransformer(kBoundaryNames, CLI::ignore_case));

  // smooth
  std::string smooth_in, smooth_out, smooth_method;
  double smooth_param = 0.0;
  auto* smooth_cmd = app.add_subcommand("smooth", "Smooth one series with one method");
  smooth_cmd->add_option("--in", smooth_in, "Input CSV")->required();
  smooth_cmd->add_option("--out", smooth_out, "Output CSV (default stdout)");
  smooth_cmd
      ->add_option("--method", smooth_method,
                   "TopoLines (fraction), TopoLinesThreshold, Median, Gaussian, Cutoff, "
                   "Subsample or DouglasPeucker")
      ->required();
  smooth_cmd->add_option("--param", smooth_param, "Method parameter")->required();

  // persistence
  std::string pers_in, pers_out;
  auto* pers_cmd = app.add_subcommand("persistence", "Print the persistence pairs of a series");
  pers_cmd->add_option("--in", pers_in, "Input CSV")->required();
  pers_cmd->add_option("--out", pers_out, "Output CSV (default stdout)");

  // entropy
  std::string ent_in;
  int ent_m = 2;
  double ent_factor = 0.2;
  auto* ent_cmd = app.add_subcommand("entropy", "Approximate entropy of a series");
  ent_cmd->add_option("--in", ent_in, "Input CSV")->required();
  ent_cmd->add_option("--m", ent_m, "Embedding dimension")->capture_default_str();
  ent_cmd->add_option("--r-factor", ent_factor, "Tolerance as a multiple of the sample SD")
      ->capture_default_str();

  // evaluate
  RunConfig run;
  std::string eval_in, eval_kind, out_dir = "topolines_out";
  std::vector<std::string> grids;
  bool no_csv = false, no_json = false, no_svg = false;
  auto* eval_cmd = app.add_subcommand("evaluate", "Sweep every method and rank them");
  auto* eval_in_opt = eval_cmd->add_option("--in", eval_in, "Input CSV");
  eval_cmd->add_option("--synthetic", eval_kind, "spike-train, noisy-sine or random-walk")
      ->excludes(eval_in_opt);
  eval_cmd->add_option("--n", run.synthetic_n, "Synthetic length")->capture_default_str();
  eval_cmd->add_option("--seed", run.seed, "Synthetic seed")->capture_default_str();
  eval_cmd->add_option("--out-dir", out_dir, "Directory for report and charts")
      ->capture_default_str();
  eval_cmd->add_option("--methods", run.evaluation.methods, "Methods to compare")
      ->delimiter(',');
  eval_cmd->add_option("--grid", grids, "Override a grid, e.g. Median=3,5,9");
  eval_cmd->add_option("--apen-m", run.evaluation.apen_m, "ApEn embedding dimension")
      ->capture_default_str();
  eval_cmd->add_option("--apen-r-factor", run.evaluation.apen_r_factor, "ApEn tolerance factor")
      ->capture_default_str();
  eval_cmd->add_option("--threads", run.evaluation.threads, "Worker threads")
      ->capture_default_str();
  eval_cmd->add_flag("--no-csv", no_csv, "Skip smoothed CSV output");
  eval_cmd->add_flag("--no-json", no_json, "Skip report.json");
  eval_cmd->add_flag("--no-svg", no_svg, "Skip SVG charts");

  // synth
  std::string synth_kind, synth_out;
  std::size_t synth_n = 1024;
  std::uint64_t synth_seed = 7;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic series");
  synth_cmd->add_option("--kind", synth_kind, "spike-train, noisy-sine or random-walk")
      ->required();
  synth_cmd->add_option("--n", synth_n, "Length")->capture_default_str();
  synth_cmd->add_option("--seed", synth_seed, "Seed")->capture_default_str();
  synth_cmd->add_option("--out", synth_out, "Output CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  const PersistenceOptions options{boundary};
  try {
    if (*smooth_cmd) {
      const auto series = load_csv(smooth_in);
      emit(smooth_out, to_csv(smooth(series, make_spec(smooth_method, smooth_param), options)));
    } else if (*pers_cmd) {
      const auto series = load_csv(pers_in);
      const auto diagram = diagram_of(series.values(), options);
      std::string text = "birth_index,death_index,birth,death,persistence\n";
      for (const auto& p : diagram.pairs)
        text += std::to_string(p.birth_index) + "," + std::to_string(p.death_index) + "," +
                format_double(p.birth_value) + "," + format_double(p.death_value) + "," +
                format_double(p.persistence) + "\n";
      emit(pers_out, text);
    } else if (*ent_cmd) {
      const auto series = load_csv(ent_in);
      const double r = entropy_tolerance(series.values(), ent_factor);
      std::cout << format_double(approx_entropy(series, ent_m, r)) << "\n";
    } else if (*eval_cmd) {
      run.evaluation.persistence = options;
      for (const auto& g : grids) {
        auto [method, values] = parse_grid(g);
        run.evaluation.grids[method] = std::move(values);
      }
      run.output_dir = out_dir;
      run.emit_csv = !no_csv;
      run.emit_json = !no_json;
      run.emit_svg = !no_svg;
      TimeSeries series = [&] {
        if (!eval_in.empty()) {
          run.input = eval_in;
          return load_csv(eval_in);
        }
        run.synthetic = parse_synthetic_kind(eval_kind.empty() ? "spike-train" : eval_kind);
        return generate_synthetic(*run.synthetic, run.synthetic_n, run.seed);
      }();
      const auto ev = evaluate(series, run.evaluation);
      const auto files = write_outputs(series, ev, run);
      std::cout << "dataset " << ev.report.dataset << " (" << ev.points.size() << " points, "
                << ev.failures.size() << " failures)\n";
      for (const auto& method : ev.report.methods)
        std::cout << "  " << method << " overall rank " << ev.report.overall_rank.at(method)
                  << "\n";
      for (const auto& f : files.paths) std::cout << "wrote " << (run.output_dir / f).string() << "\n";
    } else if (*synth_cmd) {
      emit(synth_out, to_csv(generate_synthetic(parse_synthetic_kind(synth_kind), synth_n,
                                                synth_seed)));
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return 0;
}
