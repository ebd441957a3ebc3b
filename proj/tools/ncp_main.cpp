#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ncp/baselines.hpp"
#include "ncp/dataset.hpp"
#include "ncp/errors.hpp"
#include "ncp/metrics.hpp"
#include "ncp/pipeline.hpp"
#include "ncp/svg.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct CommonOpts {
  std::string input;
  std::string format;  // "", "csv", "json"
  std::string method = "ncp";
  double alpha = 0.2;
  double beta = 1.0;
  std::uint64_t seed = 0;
  int iterations = 0;  // 0 keeps the per-method default
  std::string out;
  std::string svg;
  bool normalize = false;
};

ncp::DatasetFormat resolve_format(const std::string& path, const std::string& format) {
  if (format == "csv") return ncp::DatasetFormat::kCsv;
  if (format == "json") return ncp::DatasetFormat::kJson;
  if (!format.empty()) throw ncp::ValidationError("unknown --format: " + format);
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
    return ncp::DatasetFormat::kJson;
  }
  return ncp::DatasetFormat::kCsv;
}

ncp::Dataset load_input(const CommonOpts& o) {
  ncp::Dataset ds = ncp::load_dataset(o.input, resolve_format(o.input, o.format));
  if (o.normalize && ds.features_present) ncp::normalize_zscore(ds);
  return ds;
}

ncp::PipelineConfig pipeline_config(const CommonOpts& o) {
  ncp::PipelineConfig cfg;
  cfg.alpha = o.alpha;
  cfg.beta = o.beta;
  cfg.seed = o.seed;
  if (o.iterations > 0) {
    cfg.stage3_iterations = o.iterations;
    cfg.fd_iterations = o.iterations;
  }
  return cfg;
}

void write_outputs(const ncp::PackingLayout& layout, const CommonOpts& o) {
  if (!o.out.empty()) ncp::save_layout(layout, o.out);
  if (!o.svg.empty()) ncp::save_svg(layout, o.svg);
}

// Marks a partial layout in its config JSON before it is persisted.
ncp::PackingLayout flag_non_convergence(ncp::PackingLayout layout, const std::string& message) {
  nlohmann::ordered_json cfg;
  try {
    cfg = nlohmann::ordered_json::parse(layout.config);
  } catch (...) {
    cfg = nlohmann::ordered_json::object();
  }
  cfg["non_convergence"] = message;
  layout.config = cfg.dump();
  return layout;
}

int cmd_pack(const CommonOpts& o) {
  ncp::Dataset ds = load_input(o);
  auto t0 = Clock::now();
  ncp::PackingLayout layout;
  try {
    layout = ncp::pack(ds, o.method, pipeline_config(o));
  } catch (const ncp::PackingNonConvergence& e) {
    ncp::PackingLayout partial = flag_non_convergence(e.layout, e.what());
    write_outputs(partial, o);
    std::cerr << "non-convergence: " << e.what() << " (partial layout written)\n";
    return 3;
  }
  double dt = seconds_since(t0);
  write_outputs(layout, o);
  std::cout << "pack method=" << o.method << " n=" << layout.size() << " s=" << layout.scale
            << " runtime=" << dt << "s";
  if (!o.out.empty()) std::cout << " out=" << o.out;
  std::cout << "\n";
  return 0;
}

int cmd_metrics(const std::string& layout_path, const CommonOpts& o) {
  ncp::PackingLayout layout = ncp::load_layout(layout_path);
  ncp::Dataset ds = load_input(o);
  ncp::MetricsReport report = ncp::full_report(layout, ds);
  std::string text = ncp::metrics_to_json(report);
  if (!o.out.empty()) {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw ncp::ParseError("cannot open for writing: " + o.out);
    f << text;
  }
  std::cout << text;
  return 0;
}

struct CompareRow {
  std::string method;
  ncp::MetricsReport report;
  double runtime = 0.0;
  std::string error;  // empty = success
};

int cmd_compare(const std::vector<std::string>& methods, const CommonOpts& o) {
  if (methods.size() < 2) throw ncp::ValidationError("compare needs at least 2 methods");
  ncp::Dataset ds = load_input(o);
  std::vector<CompareRow> rows;
  for (const std::string& method : methods) {
    CompareRow row;
    row.method = method;
    auto t0 = Clock::now();
    try {
      ncp::PackingLayout layout = ncp::pack(ds, method, pipeline_config(o));
      row.runtime = seconds_since(t0);
      row.report = ncp::full_report(layout, ds);
    } catch (const std::exception& e) {
      row.runtime = seconds_since(t0);
      row.error = e.what();
    }
    rows.push_back(row);
  }

  std::ostringstream csv;
  csv << "method,np1,np2,compactness,convexity,balanced_index,runtime_seconds,status\n";
  for (const CompareRow& r : rows) {
    if (r.error.empty()) {
      csv << r.method << "," << r.report.np1 << "," << r.report.np2 << ","
          << r.report.compactness << "," << r.report.convexity << "," << r.report.balanced_index
          << "," << r.runtime << ",ok\n";
    } else {
      std::string msg = r.error;
      std::replace(msg.begin(), msg.end(), ',', ';');
      csv << r.method << ",,,,,," << r.runtime << ",error: " << msg << "\n";
    }
  }
  if (!o.out.empty()) {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw ncp::ParseError("cannot open for writing: " + o.out);
    f << csv.str();
  }

  std::cout << "seed=" << o.seed << " alpha=" << o.alpha << " beta=" << o.beta << "\n";
  std::cout << "method     np1      np2      compact  convex   balanced runtime\n";
  for (const CompareRow& r : rows) {
    char line[160];
    if (r.error.empty()) {
      std::snprintf(line, sizeof(line), "%-10s %-8.4f %-8.4f %-8.4f %-8.4f %-8.4f %.3fs",
                    r.method.c_str(), r.report.np1, r.report.np2, r.report.compactness,
                    r.report.convexity, r.report.balanced_index, r.runtime);
      std::cout << line << "\n";
    } else {
      std::cout << r.method << "  FAILED: " << r.error << "\n";
    }
  }
  return 0;
}

int cmd_gridsearch(std::vector<double> alphas, std::vector<double> betas, const CommonOpts& o) {
  if (alphas.empty()) alphas = {0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0};
  if (betas.empty()) betas = {0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0};
  ncp::Dataset ds = load_input(o);

  std::ostringstream csv;
  csv << "alpha,beta,np1,np2,compactness,convexity,balanced_index,status\n";
  double best_balanced = -1.0;
  double best_alpha = 0.0;
  double best_beta = 0.0;
  for (double a : alphas) {
    for (double b : betas) {
      CommonOpts cell = o;
      cell.alpha = a;
      cell.beta = b;
      try {
        ncp::PackingLayout layout = ncp::pack(ds, "ncp", pipeline_config(cell));
        ncp::MetricsReport rep = ncp::full_report(layout, ds);
        csv << a << "," << b << "," << rep.np1 << "," << rep.np2 << "," << rep.compactness << ","
            << rep.convexity << "," << rep.balanced_index << ",ok\n";
        if (rep.balanced_index > best_balanced) {
          best_balanced = rep.balanced_index;
          best_alpha = a;
          best_beta = b;
        }
      } catch (const std::exception& e) {
        std::string msg = e.what();
        std::replace(msg.begin(), msg.end(), ',', ';');
        csv << a << "," << b << ",,,,,,error: " << msg << "\n";
      }
    }
  }
  if (!o.out.empty()) {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw ncp::ParseError("cannot open for writing: " + o.out);
    f << csv.str();
  } else {
    std::cout << csv.str();
  }
  if (best_balanced >= 0.0) {
    std::cout << "best alpha=" << best_alpha << " beta=" << best_beta
              << " balanced_index=" << best_balanced << "\n";
  } else {
    std::cout << "all cells failed\n";
  }
  return 0;
}

int cmd_render(const std::string& layout_path, const CommonOpts& o) {
  ncp::PackingLayout layout = ncp::load_layout(layout_path);
  std::string path = !o.svg.empty() ? o.svg : o.out;
  if (path.empty()) throw ncp::ValidationError("render needs --svg (or --out) path");
  ncp::save_svg(layout, path);
  std::cout << "render n=" << layout.size() << " out=" << path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Neighborhood-preserving non-uniform circle packing"};
  app.require_subcommand(1);

  CommonOpts o;
  std::string layout_path;
  std::vector<std::string> methods = {"ncp", "simifc", "fd"};
  std::vector<double> alphas;
  std::vector<double> betas;

  auto add_dataset_flags = [&](CLI::App* cmd) {
    cmd->add_option("--input", o.input, "dataset path")->required();
    cmd->add_option("--format", o.format, "csv|json (default: by extension)");
    cmd->add_flag("--normalize", o.normalize, "z-score features before use");
  };
  auto add_run_flags = [&](CLI::App* cmd) {
    cmd->add_option("--alpha", o.alpha, "centering weight (default 0.2)");
    cmd->add_option("--beta", o.beta, "convexity weight (default 1.0)");
    cmd->add_option("--seed", o.seed, "root random seed");
    cmd->add_option("--iterations", o.iterations,
                    "final-stage iteration budget (default: 1250 ncp, 10000 fd)");
  };

  CLI::App* pack = app.add_subcommand("pack", "run one method end-to-end");
  add_dataset_flags(pack);
  add_run_flags(pack);
  pack->add_option("--method", o.method, "ncp|simifc|fd");
  pack->add_option("--out", o.out, "layout JSON output path");
  pack->add_option("--svg", o.svg, "SVG output path");

  CLI::App* metrics = app.add_subcommand("metrics", "evaluate a layout against its dataset");
  metrics->add_option("--layout", layout_path, "layout JSON path")->required();
  add_dataset_flags(metrics);
  metrics->add_option("--out", o.out, "report JSON output path");

  CLI::App* compare = app.add_subcommand("compare", "run several methods on one dataset");
  add_dataset_flags(compare);
  add_run_flags(compare);
  compare->add_option("--methods", methods, "methods to compare")->delimiter(',');
  compare->add_option("--out", o.out, "comparison CSV output path");

  CLI::App* grid = app.add_subcommand("gridsearch", "NCP metrics over an alpha x beta grid");
  add_dataset_flags(grid);
  add_run_flags(grid);
  grid->add_option("--alphas", alphas, "alpha grid values")->delimiter(',');
  grid->add_option("--betas", betas, "beta grid values")->delimiter(',');
  grid->add_option("--out", o.out, "grid CSV output path");

  CLI::App* render = app.add_subcommand("render", "layout JSON to SVG");
  render->add_option("--layout", layout_path, "layout JSON path")->required();
  render->add_option("--svg", o.svg, "SVG output path");
  render->add_option("--out", o.out, "SVG output path (alias)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (pack->parsed()) return cmd_pack(o);
    if (metrics->parsed()) return cmd_metrics(layout_path, o);
    if (compare->parsed()) return cmd_compare(methods, o);
    if (grid->parsed()) return cmd_gridsearch(alphas, betas, o);
    if (render->parsed()) return cmd_render(layout_path, o);
  } catch (const ncp::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const ncp::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const ncp::DegenerateInput& e) {
    std::cerr << "degenerate input: " << e.what() << "\n";
    return 2;
  } catch (const ncp::NonConvergence& e) {
    std::cerr << "non-convergence: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
  return 4;
}
