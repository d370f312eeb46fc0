#include "finsler/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace finsler::io {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { fail(ErrorKind::Parse, what); }

template <typename T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_fail(std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    parse_fail(std::string("field \"") + key + "\" has the wrong type");
  }
}

double optional_number(const Json& j, const char* key, double fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  return field<double>(j, key);
}

}  // namespace

Json to_json(const disk::IntervalFamily& family) {
  Json intervals = Json::array();
  for (const auto& iv : family.intervals()) intervals.push_back({iv.a2, iv.b2});
  return {{"circumference2", family.circumference2()}, {"intervals", intervals}};
}

disk::IntervalFamily family_from_json(const Json& j) {
  const auto c2 = field<std::int64_t>(j, "circumference2");
  const auto raw = field<std::vector<std::vector<std::int64_t>>>(j, "intervals");
  std::vector<disk::Interval> intervals;
  for (const auto& pair : raw) {
    if (pair.size() != 2) parse_fail("each interval must be a pair [a2, b2]");
    intervals.push_back({pair[0], pair[1]});
  }
  return disk::IntervalFamily(c2, std::move(intervals));
}

Json to_json(const ig::LineMeasure& mu) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ig::Uniform>) {
          return {{"type", "uniform"}, {"density", v.density}};
        } else if constexpr (std::is_same_v<T, ig::ParallelFamily>) {
          Json t_max = std::isfinite(v.t_max) ? Json(v.t_max) : Json(nullptr);
          return {{"type", "parallel"}, {"theta", v.theta}, {"t_min", v.t_min}, {"t_max", t_max}, {"weight", v.weight}};
        } else if constexpr (std::is_same_v<T, ig::GridDensity>) {
          return {{"type", "grid"},   {"n_theta", v.n_theta()}, {"n_p", v.n_p()},
                  {"p_min", v.p_min()}, {"dp", v.dp()},          {"values", v.values()}};
        } else if constexpr (std::is_same_v<T, ig::Truncated>) {
          return {{"type", "truncated"}, {"p_max", v.p_max}, {"inner", to_json(*v.inner)}};
        } else {
          Json parts = Json::array();
          for (const auto& [w, m] : v.parts) parts.push_back({{"weight", w}, {"measure", to_json(m)}});
          return {{"type", "mixture"}, {"parts", parts}};
        }
      },
      mu.variant());
}

ig::LineMeasure measure_from_json(const Json& j) {
  const auto type = field<std::string>(j, "type");
  if (type == "uniform") return ig::LineMeasure(ig::Uniform{field<double>(j, "density")});
  if (type == "parallel") {
    return ig::LineMeasure(ig::ParallelFamily{field<double>(j, "theta"), optional_number(j, "t_min", 0.0),
                                              optional_number(j, "t_max", ig::kInf),
                                              optional_number(j, "weight", 1.0)});
  }
  if (type == "grid") {
    return ig::LineMeasure(ig::GridDensity(field<std::size_t>(j, "n_theta"), field<std::size_t>(j, "n_p"),
                                           field<double>(j, "p_min"), field<double>(j, "dp"),
                                           field<std::vector<double>>(j, "values")));
  }
  if (type == "truncated") {
    if (!j.contains("inner")) parse_fail("missing field \"inner\"");
    return ig::truncate(measure_from_json(j.at("inner")), field<double>(j, "p_max"));
  }
  if (type == "mixture") {
    if (!j.contains("parts") || !j.at("parts").is_array()) parse_fail("mixture needs a \"parts\" array");
    ig::Mixture m;
    for (const auto& part : j.at("parts")) {
      if (!part.contains("measure")) parse_fail("mixture part needs a \"measure\"");
      m.parts.emplace_back(field<double>(part, "weight"), measure_from_json(part.at("measure")));
    }
    return ig::LineMeasure(std::move(m));
  }
  if (type == "mu_ext") return ig::make_mu_ext();
  if (type == "smoothed") {
    return ig::smoothed_mu_ext(field<double>(j, "eps"), optional_number(j, "t", 6.0),
                           static_cast<int>(optional_number(j, "cells_per_eps", 4)));
  }
  parse_fail("unknown measure type \"" + type + "\"");
}

Json to_json(const disk::ValidationReport& report) {
  Json violations = Json::array();
  for (const auto& v : report.violations) {
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, disk::CoverPair>) {
            violations.push_back({{"kind", "cover_pair"}, {"i", x.i}, {"j", x.j}});
          } else if constexpr (std::is_same_v<T, disk::CoverageMismatch>) {
            violations.push_back({{"kind", "coverage"}, {"point2", x.point2}, {"count", x.count}});
          } else {
            violations.push_back(
                {{"kind", "endpoint_degree"}, {"point2", x.point2}, {"starts", x.starts}, {"ends", x.ends}});
          }
        },
        v);
  }
  Json j{{"valid", report.valid}, {"violations", violations}};
  j["radius"] = report.radius ? Json(*report.radius) : Json(nullptr);
  return j;
}

Json to_json(const opt::EnumeratedDisk& d) {
  return {{"code", disk::to_hex(d.code)}, {"n", d.n}, {"area2", d.area.twice_value()}, {"area", d.area.to_string()}};
}

Json to_json(const opt::EnumerationSummary& s) {
  Json codes = Json::array();
  for (const auto& c : s.minimizing_codes) codes.push_back(disk::to_hex(c));
  Json j{{"r", s.r}, {"n_max", s.n_max}, {"count", s.count}, {"nodes", s.nodes}, {"minimizing_codes", codes}};
  if (s.min_area) {
    j["min_area2"] = s.min_area->twice_value();
    j["min_area"] = s.min_area->to_string();
  } else {
    j["min_area2"] = nullptr;
    j["min_area"] = nullptr;
  }
  return j;
}

Json to_json(const opt::MoveRecord& m) {
  auto iv = [](const disk::Interval& i) { return Json{i.a2, i.b2}; };
  return {{"move", opt::to_string(m.config.kind)}, {"gamma", iv(m.config.gamma)},
          {"alpha", iv(m.config.alpha)},           {"beta", iv(m.config.beta)},
          {"area2_before", m.area_before.twice_value()}, {"area2_after", m.area_after.twice_value()},
          {"walls_after", m.walls_after}};
}

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    parse_fail(std::string("malformed JSON: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::InvalidArgument, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::InvalidArgument, "cannot write " + tmp);
    out << contents;
    if (!out) fail(ErrorKind::InvalidArgument, "write failed for " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) fail(ErrorKind::InvalidArgument, "cannot rename onto " + path);
}

}  // namespace finsler::io
