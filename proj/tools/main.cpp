// Command-line front end. Exit codes: 0 ok, 1 parse, 2 precondition,
// 3 numeric budget, 4 internal invariant. Errors go to stderr as JSON.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "finsler/arrangement.hpp"
#include "finsler/chords.hpp"
#include "finsler/disk.hpp"
#include "finsler/integral_geometry.hpp"
#include "finsler/io.hpp"
#include "finsler/optimizer.hpp"
#include "finsler/rng.hpp"
#include "finsler/strands.hpp"
#include "render.hpp"

namespace {

using namespace finsler;
using io::Json;

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    io::write_file_atomic(out_path, text);
  }
}

disk::IntervalFamily load_family(const std::string& path) {
  return io::family_from_json(io::parse(path == "-" ? std::string(std::istreambuf_iterator<char>(std::cin), {})
                                                     : io::read_file(path)));
}

ig::LineMeasure load_measure(const std::string& arg) {
  if (arg == "mu_ext") return ig::make_mu_ext();
  if (arg == "uniform") return ig::LineMeasure(ig::Uniform{1.0});
  const bool inline_json = !arg.empty() && arg.front() == '{';
  return io::measure_from_json(io::parse(inline_json ? arg : io::read_file(arg)));
}

ig::PlanePoint parse_point(const std::string& s) {
  double x = 0, y = 0;
  char comma = 0;
  std::istringstream in(s);
  if (!(in >> x >> comma >> y) || comma != ',') fail(ErrorKind::Parse, "expected a point as x,y: " + s);
  return {x, y};
}

disk::Rational parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return disk::Rational(std::stoll(s));
    return disk::Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  } catch (const std::exception&) {
    fail(ErrorKind::Parse, "expected a rational number: " + s);
  }
}

// "center" or "s2,h2" with rational doubled coordinates.
disk::CylinderPoint parse_cylinder_point(const std::string& s) {
  if (s == "center" || s == "O") return disk::Center{};
  const auto comma = s.find(',');
  if (comma == std::string::npos) fail(ErrorKind::Parse, "expected a point as s2,h2 or center: " + s);
  return disk::CylinderCoord{parse_rational(s.substr(0, comma)), parse_rational(s.substr(comma + 1))};
}

std::string polygon_csv(const geom::Polygon& poly) {
  std::ostringstream csv;
  csv.precision(17);
  csv << "x,y\n";
  for (const auto& z : poly) csv << z.x << ',' << z.y << '\n';
  return csv.str();
}

geom::Polygon load_polygon_csv(const std::string& path) {
  std::istringstream in(io::read_file(path));
  std::string line;
  geom::Polygon poly;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'x' || line[0] == '#') continue;
    poly.push_back(parse_point(line));
  }
  return poly;
}

ig::Method parse_method(const std::string& name, std::uint64_t samples, std::uint64_t seed, int levels) {
  if (name == "closed") return ig::Closed{};
  if (name == "mc") return ig::MonteCarlo{samples, seed};
  if (name == "quad") return ig::Quadrature{0, levels};
  fail(ErrorKind::Parse, "method must be closed, mc or quad");
}

Json estimate_json(const ig::Estimate& e) { return {{"value", e.value}, {"std_error", e.std_error}}; }

int report_error(const Error& e) {
  std::cerr << Json{{"error", std::string(to_string(e.kind()))}, {"message", e.what()}}.dump() << '\n';
  return exit_code(e.kind());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete and projective Finsler disks"};
  app.require_subcommand(1);

  std::string in_path, out_path, measure_arg = "mu_ext", summary_path, log_path;
  std::int64_t r_int = 1, n_max = 0;
  double radius = 1.0, eps = 0.05, tolerance = 0.05;
  std::size_t resolution = 360, trials = 50, count = 0;
  std::vector<std::size_t> n_list{2000};
  std::uint64_t seed = rng::default_seed(1), samples = 1'000'000;
  unsigned threads = 1;
  bool allow_large = false, as_json = false;
  int levels = 1;
  std::string p_str, q_str, x_str = "-0.5,0", y_str = "0.5,0", method = "closed", region_path;

  auto* validate = app.add_subcommand("validate", "check the disk conditions of an interval family");
  validate->add_option("--in", in_path, "family JSON")->required();

  auto* area = app.add_subcommand("area", "discrete area of a valid family");
  area->add_option("--in", in_path, "family JSON")->required();
  area->add_flag("--json", as_json, "print JSON instead of k/2");

  auto* distance = app.add_subcommand("distance", "discrete distance between two cylinder points");
  distance->add_option("--in", in_path, "family JSON")->required();
  distance->add_option("--p", p_str, "center or s2,h2 (doubled rationals)")->required();
  distance->add_option("--q", q_str, "center or s2,h2 (doubled rationals)")->required();

  auto* extremal = app.add_subcommand("extremal", "extremal disk of radius r");
  extremal->add_option("--r", r_int, "radius")->required();
  extremal->add_option("--out", out_path, "output JSON (default stdout)");

  auto* minimize = app.add_subcommand("minimize", "apply reduction moves until none applies");
  minimize->add_option("--in", in_path, "family JSON")->required();
  minimize->add_option("--out", out_path, "output family JSON");
  minimize->add_option("--log", log_path, "move log JSON");

  auto* enumerate = app.add_subcommand("enumerate", "all disks of radius r with at most n_max walls");
  enumerate->add_option("--r", r_int, "radius")->required();
  enumerate->add_option("--n-max", n_max, "largest wall count")->required();
  enumerate->add_option("--threads", threads, "worker threads");
  enumerate->add_flag("--allow-large", allow_large, "permit r > 2");
  enumerate->add_option("--out", out_path, "JSON lines, one disk per line");
  enumerate->add_option("--summary", summary_path, "summary JSON (default stdout)");

  auto* strands = app.add_subcommand("strands", "strand decomposition of a valid family");
  strands->add_option("--in", in_path, "family JSON")->required();

  auto* mu_distance = app.add_subcommand("mu-distance", "projective distance of a line measure");
  mu_distance->add_option("--measure", measure_arg, "mu_ext, uniform, a JSON file or inline JSON");
  mu_distance->add_option("--x", x_str, "x,y");
  mu_distance->add_option("--y", y_str, "x,y");

  auto* mu_ball = app.add_subcommand("mu-ball", "boundary polyline of a metric ball about O");
  mu_ball->add_option("--measure", measure_arg, "mu_ext, uniform, a JSON file or inline JSON");
  mu_ball->add_option("--r", radius, "radius");
  mu_ball->add_option("--resolution", resolution, "number of rays");
  mu_ball->add_option("--out", out_path, "CSV output (default stdout)");

  auto* mu_area = app.add_subcommand("mu-area", "Holmes-Thompson area of a polygon or metric ball");
  mu_area->add_option("--measure", measure_arg, "mu_ext, uniform, a JSON file or inline JSON");
  mu_area->add_option("--region", region_path, "polygon CSV (x,y per line); default: the ball of radius --r");
  mu_area->add_option("--r", radius, "ball radius when no region is given");
  mu_area->add_option("--resolution", resolution, "ball rays");
  mu_area->add_option("--method", method, "closed | mc | quad");
  mu_area->add_option("--samples", samples, "Monte Carlo pairs");
  mu_area->add_option("--seed", seed, "Monte Carlo seed");
  mu_area->add_option("--levels", levels, "quadrature refinement levels");

  auto* sample = app.add_subcommand("sample", "random chords of the unit disk");
  sample->add_option("--n", count, "chord count")->required();
  sample->add_option("--seed", seed, "seed");
  sample->add_option("--out", out_path, "CSV output (default stdout)");

  auto* converge = app.add_subcommand("converge", "discretization convergence experiment");
  converge->add_option("--n", n_list, "chord counts")->expected(1, -1);
  converge->add_option("--trials", trials, "trials per n");
  converge->add_option("--seed", seed, "seed");
  converge->add_option("--x", x_str, "x,y");
  converge->add_option("--y", y_str, "x,y");
  converge->add_option("--tolerance", tolerance, "per-trial tolerance for the summary fractions");
  converge->add_option("--out", out_path, "per-trial CSV (default stdout)");
  converge->add_option("--summary", summary_path, "summary JSON");

  auto* wlln = app.add_subcommand("wlln", "weak-law deviation bound for crossing indicators");
  wlln->add_option("--n", count, "chord count")->required();
  wlln->add_option("--eps", eps, "deviation threshold");
  wlln->add_option("--trials", trials, "trials");
  wlln->add_option("--seed", seed, "seed");

  auto* render = app.add_subcommand("render", "SVG of a family (tents and chords) or of metric balls");
  render->add_option("--in", in_path, "family JSON");
  render->add_option("--measure", measure_arg, "measure for ball rendering when --in is absent");
  render->add_option("--r", radius, "ball radius");
  render->add_option("--resolution", resolution, "ball rays");
  render->add_option("--out", out_path, "SVG output (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*validate) {
      emit("", io::to_json(disk::validate(load_family(in_path))).dump());
    } else if (*area) {
      const auto a = disk::discrete_area(load_family(in_path));
      emit("", as_json ? Json{{"area2", a.twice_value()}, {"area", a.to_string()}}.dump() : a.to_string());
    } else if (*distance) {
      const auto d = disk::discrete_distance(load_family(in_path), parse_cylinder_point(p_str),
                                             parse_cylinder_point(q_str));
      emit("", std::to_string(d));
    } else if (*extremal) {
      emit(out_path, io::to_json(disk::extremal_disk(r_int)).dump());
    } else if (*minimize) {
      const auto result = opt::minimize(load_family(in_path));
      emit(out_path, io::to_json(result.family).dump());
      if (!log_path.empty()) {
        Json log = Json::array();
        for (const auto& m : result.log) log.push_back(io::to_json(m));
        io::write_file_atomic(log_path, log.dump(2));
      }
    } else if (*enumerate) {
      opt::EnumerationOptions options;
      options.threads = threads;
      options.allow_large_radius = allow_large;
      const auto result = opt::enumerate_disks(r_int, n_max, options);
      if (!out_path.empty()) {
        std::string lines;
        for (const auto& d : result.disks) lines += io::to_json(d).dump() + "\n";
        emit(out_path, lines);
      }
      emit(summary_path, io::to_json(result.summary).dump());
    } else if (*strands) {
      const auto family = load_family(in_path);
      const auto d = strands::strand_decomposition(family);
      Json list = Json::array();
      for (const auto& s : d.strands) {
        list.push_back({{"stops2", s.stops2}, {"widths2", s.widths2}, {"period2", s.period2}});
      }
      emit("", Json{{"r", d.r}, {"n", d.n}, {"strands", list}}.dump());
    } else if (*mu_distance) {
      const double d = ig::mu_distance(load_measure(measure_arg), parse_point(x_str), parse_point(y_str));
      emit("", Json{{"distance", d}}.dump());
    } else if (*mu_ball) {
      emit(out_path, polygon_csv(ig::mu_ball(load_measure(measure_arg), radius, resolution)));
    } else if (*mu_area) {
      const auto mu = load_measure(measure_arg);
      const auto region = region_path.empty() ? ig::mu_ball(mu, radius, resolution) : load_polygon_csv(region_path);
      const auto e = ig::santalo_area(mu, region, parse_method(method, samples, seed, levels));
      Json j = estimate_json(e);
      j["method"] = method;
      j["seed"] = seed;
      emit("", j.dump());
    } else if (*sample) {
      const auto chords = chords::sample_chords(count, seed);
      std::ostringstream csv;
      csv.precision(17);
      csv << "# seed " << seed << "\ntheta,p\n";
      for (std::size_t i = 0; i < chords.size(); ++i) csv << chords[i].theta << ',' << chords[i].p << '\n';
      emit(out_path, csv.str());
    } else if (*converge) {
      const auto rep = chords::convergence_experiment(n_list, trials, parse_point(x_str), parse_point(y_str), seed,
                                                      tolerance);
      std::ostringstream csv;
      csv.precision(17);
      csv << "n,trial,dist_term,area_term\n";
      for (const auto& t : rep.trials) csv << t.n << ',' << t.trial << ',' << t.dist_term << ',' << t.area_term << '\n';
      emit(out_path, csv.str());
      if (!summary_path.empty()) {
        Json s = Json::array();
        for (const auto& m : rep.summaries) {
          s.push_back({{"n", m.n},
                       {"trials", m.trials},
                       {"mean_dist", m.mean_dist},
                       {"mean_area", m.mean_area},
                       {"target_dist", m.target_dist},
                       {"target_area", m.target_area},
                       {"err_dist", m.err_dist},
                       {"err_area", m.err_area},
                       {"frac_dist_within", m.frac_dist_within},
                       {"frac_area_within", m.frac_area_within}});
        }
        io::write_file_atomic(summary_path, Json{{"seed", seed}, {"tolerance", tolerance}, {"summaries", s}}.dump(2));
      }
    } else if (*wlln) {
      const auto w = chords::wlln_bound_check(count, eps, trials, seed);
      auto check = [](const chords::DeviationCheck& c) {
        return Json{{"deviation_probability", c.deviation_probability},
                    {"bound", c.bound},
                    {"std_error", c.std_error},
                    {"within", c.within}};
      };
      emit("", Json{{"n", w.n},
                    {"eps", w.eps},
                    {"trials", w.trials},
                    {"seed", w.seed},
                    {"dependent_fraction", w.dependent_fraction},
                    {"mean_estimate", w.mean_estimate},
                    {"mean_estimate_error", w.mean_estimate_error},
                    {"estimated_center", check(w.estimated_center)},
                    {"exact_center", check(w.exact_center)}}
                   .dump());
    } else if (*render) {
      if (!in_path.empty()) {
        emit(out_path, cli::render_family_svg(load_family(in_path)));
      } else {
        const auto mu = load_measure(measure_arg);
        emit(out_path, cli::render_balls_svg({ig::mu_ball(mu, radius, resolution)}));
      }
    }
  } catch (const Error& e) {
    return report_error(e);
  } catch (const std::exception& e) {
    std::cerr << Json{{"error", "InternalInvariant"}, {"message", e.what()}}.dump() << '\n';
    return 4;
  }
  return 0;
}
