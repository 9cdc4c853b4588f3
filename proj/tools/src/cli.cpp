#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "demo.hpp"
#include "errors.hpp"
#include "io.hpp"
#include "pdsim/error.hpp"
#include "pdsim/landscape.hpp"
#include "report.hpp"

namespace pdsim::cli {
namespace {

struct Options {
  // sample
  std::string shape;
  std::size_t n = 0;
  std::uint64_t seed = 1;
  std::string out;
  // pd
  std::string in;
  std::size_t max_dim = 2;
  std::string cap = "auto";
  std::string out_prefix;
  // compare
  std::string a, b;
  double p = 2.0;
  std::string metrics = "all";
  std::string format = "json";
  // demo
  std::size_t demo_n = 400;
  std::string out_dir;
};

int cmd_sample(const Options& o, std::ostream& out) {
  PointCloud cloud;
  switch (parse_shape(o.shape)) {
    case ShapeTag::disc: cloud = sample_disc(o.n, o.seed); break;
    case ShapeTag::annulus: cloud = sample_annulus(o.n, o.seed); break;
    case ShapeTag::circle: cloud = sample_circle(o.n, o.seed); break;
    case ShapeTag::external: throw InputError("shape must be disc, annulus or circle");
  }
  save_points(o.out, cloud);
  out << "wrote " << cloud.size() << " points to " << o.out << '\n';
  return kOk;
}

std::optional<double> parse_cap(const std::string& text) {
  if (text == "auto") return std::nullopt;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !(v > 0.0) || !std::isfinite(v)) {
    throw InputError("--cap must be 'auto' or a positive number, got '" + text + "'");
  }
  return v;
}

int cmd_pd(const Options& o, std::ostream& out) {
  const auto cloud = load_points(o.in);
  const auto requested = parse_cap(o.cap);
  const double cap = requested ? *requested : auto_rips_cap(cloud);
  const auto dgms = rips_persistence(distance_matrix(cloud), o.max_dim - 1, cap);
  for (const auto& [dim, d] : dgms) {
    const std::string path = o.out_prefix + "_h" + std::to_string(dim) + ".json";
    save_diagram(path, d);
    out << "H" << dim << ": " << d.finite_pairs.size() << " pairs, " << d.essential_births.size()
        << " essential -> " << path << '\n';
  }
  out << "rips cap " << format_number(cap) << '\n';
  return kOk;
}

int cmd_landscape(const Options& o, std::ostream& out) {
  const auto d = load_diagram(o.in);
  const auto l = build_landscape(d);
  save_landscape(o.out, l);
  out << "wrote " << l.layers.size() << " layers to " << o.out << '\n';
  return kOk;
}

int cmd_compare(const Options& o, std::ostream& out) {
  const auto metrics = parse_metrics(o.metrics);
  const auto a = load_diagram(o.a);
  const auto b = load_diagram(o.b);
  const auto report = compare(a, b, o.p, metrics, o.a + " vs " + o.b);
  std::string text;
  if (o.format == "csv") {
    text = report_csv_header(metrics) + "\n" + report_csv_row(report) + "\n";
  } else {
    text = report_to_json(report).dump(2) + "\n";
  }
  if (o.out.empty()) {
    out << text;
  } else {
    write_text(o.out, text);
  }
  return kOk;
}

int cmd_demo(const Options& o, std::ostream& out) {
  DemoConfig config;
  config.n_points = o.demo_n;
  config.seed = o.seed;
  const auto result = run_demo(config);
  write_demo_artifacts(result, o.out_dir);
  for (const auto& c : result.clouds) {
    out << c.name << ": cap " << format_number(c.cap) << ", H0 " << c.diagrams.at(0).finite_pairs.size()
        << " pairs, H1 " << c.diagrams.at(1).finite_pairs.size() << " pairs\n";
  }
  const auto& cos = result.cross_shape.at({Metric::cosine_distance, 1});
  out << "H1 cosine distance: Q-R " << format_number(cos[0][1]) << ", Q-S " << format_number(cos[0][2])
      << ", R-S " << format_number(cos[1][2]) << '\n';
  out << "artifacts in " << o.out_dir << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Persistence diagrams of planar point clouds and their similarity", "pdsim"};
  app.require_subcommand(1);
  Options o;

  auto* sample = app.add_subcommand("sample", "Sample points uniformly from a shape");
  sample->add_option("--shape", o.shape, "disc, annulus or circle")->required();
  sample->add_option("--n", o.n, "Number of points")->required()->check(CLI::PositiveNumber);
  sample->add_option("--seed", o.seed, "Random seed");
  sample->add_option("--out", o.out, "Output CSV")->required();

  auto* pd = app.add_subcommand("pd", "Vietoris-Rips persistence diagrams of a point cloud");
  pd->add_option("--in", o.in, "Input CSV")->required();
  pd->add_option("--max-dim", o.max_dim, "Simplex dimension; writes H0 .. H(max-dim - 1)")
      ->check(CLI::Range(std::size_t{1}, std::size_t{8}));
  pd->add_option("--cap", o.cap, "Largest filtration value: 'auto' or a positive number");
  pd->add_option("--out-prefix", o.out_prefix, "Writes <prefix>_h<k>.json")->required();

  auto* landscape = app.add_subcommand("landscape", "Persistence landscape of a diagram");
  landscape->add_option("--in", o.in, "Diagram JSON")->required();
  landscape->add_option("--out", o.out, "Landscape JSON")->required();

  auto* cmp = app.add_subcommand("compare", "Distances and similarities between two diagrams");
  cmp->add_option("--a", o.a, "First diagram JSON")->required();
  cmp->add_option("--b", o.b, "Second diagram JSON")->required();
  cmp->add_option("--p", o.p, "Exponent for Wasserstein and landscape norms")->check(CLI::Range(1.0, 1e6));
  cmp->add_option("--metrics", o.metrics, "Comma-separated metrics or 'all'");
  cmp->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  cmp->add_option("--out", o.out, "Output file (default: stdout)");

  auto* demo = app.add_subcommand("demo", "Disc / annulus / circle comparison study");
  demo->add_option("--n", o.demo_n, "Points per cloud")->check(CLI::Range(std::size_t{50}, std::size_t{100000}));
  demo->add_option("--seed", o.seed, "Random seed");
  demo->add_option("--out-dir", o.out_dir, "Output directory")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*sample) return cmd_sample(o, out);
    if (*pd) return cmd_pd(o, out);
    if (*landscape) return cmd_landscape(o, out);
    if (*cmp) return cmd_compare(o, out);
    if (*demo) return cmd_demo(o, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const SemanticError& e) {
    err << "error: " << e.what() << '\n';
    return kSemantic;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InternalConsistencyError& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  } catch (const InvariantViolation& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}

}  // namespace pdsim::cli
