#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "kfilter/bspline.hpp"
#include "kfilter/filters.hpp"
#include "kfilter/polyline.hpp"
#include "kfilter/version.hpp"
#include "kfilter/word.hpp"

namespace kfilter {

// insertion-ordered keys keep serialized reports stable
using json = nlohmann::ordered_json;

inline uint64_t fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex64(uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

// {tool version, estimator version, seed, config hash}: stamped into every
// output file.
inline json metadata_json(uint64_t seed, const std::string& config_canonical) {
  json m;
  m["tool_version"] = kToolVersion;
  m["estimator_version"] = kEstimatorVersion;
  m["seed"] = seed;
  m["config_hash"] = hex64(fnv1a(config_canonical));
  return m;
}

inline json alphabet_to_json(const Alphabet& a) {
  json j;
  j["name"] = a.name();
  j["dim"] = a.dim();
  json toks = json::array();
  for (const auto& t : a.tokens()) {
    json tj;
    tj["id"] = t.id;
    tj["label"] = t.label;
    if (t.inverse_id) tj["inverse"] = *t.inverse_id;
    else tj["inverse"] = nullptr;
    if (a.has_realization()) {
      const Eigen::MatrixXd& m = a.matrix(t.id);
      json rows = json::array();
      for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
        rows.push_back(row);
      }
      tj["matrix"] = rows;
    }
    toks.push_back(tj);
  }
  j["tokens"] = toks;
  return j;
}

inline Alphabet alphabet_from_json(const json& j) {
  std::vector<Token> tokens;
  for (const auto& tj : j.at("tokens")) {
    Token t;
    t.id = tj.at("id").get<uint16_t>();
    t.label = tj.at("label").get<std::string>();
    if (tj.contains("inverse") && !tj.at("inverse").is_null())
      t.inverse_id = tj.at("inverse").get<uint16_t>();
    tokens.push_back(t);
  }
  Alphabet a(j.at("name").get<std::string>(), std::move(tokens));
  for (const auto& tj : j.at("tokens")) {
    if (!tj.contains("matrix")) continue;
    const auto& rows = tj.at("matrix");
    Eigen::MatrixXd m(rows.size(), rows.at(0).size());
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c)
        m(r, c) = rows.at(size_t(r)).at(size_t(c)).get<double>();
    a.set_realization(tj.at("id").get<uint16_t>(), m);
  }
  a.validate();
  return a;
}

// CSV rows `t,x0,...`; the closed flag travels in a JSON sidecar next to the
// file.
inline void write_polyline_csv(std::ostream& os, const Polyline& p) {
  p.validate();
  os.precision(17);
  os << 't';
  for (int d = 0; d < p.dim(); ++d) os << ",x" << d;
  os << '\n';
  for (size_t i = 0; i < p.points.size(); ++i) {
    os << (p.times.empty() ? double(i) : p.times[i]);
    for (int d = 0; d < p.dim(); ++d) os << ',' << p.points[i](d);
    os << '\n';
  }
}

inline Polyline read_polyline_csv(std::istream& is) {
  Polyline p;
  std::string line;
  bool header = true;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (header && line.rfind("t,", 0) == 0) {
      header = false;
      continue;
    }
    header = false;
    std::istringstream ls(line);
    std::vector<double> vals;
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      try {
        vals.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw std::invalid_argument("polyline csv: bad number '" + cell + "'");
      }
    }
    if (vals.size() < 2) throw std::invalid_argument("polyline csv: row needs t plus coords");
    p.times.push_back(vals[0]);
    Eigen::VectorXd pt(vals.size() - 1);
    for (size_t d = 1; d < vals.size(); ++d) pt(Eigen::Index(d - 1)) = vals[d];
    p.points.push_back(pt);
  }
  return p;
}

inline std::filesystem::path polyline_sidecar(const std::filesystem::path& csv) {
  std::filesystem::path s = csv;
  s += ".meta.json";
  return s;
}

inline void save_polyline(const std::filesystem::path& csv, const Polyline& p) {
  std::ofstream f(csv);
  if (!f) throw std::runtime_error("cannot write " + csv.string());
  write_polyline_csv(f, p);
  json meta;
  meta["closed"] = p.closed;
  meta["dim"] = p.dim();
  meta["points"] = p.points.size();
  std::ofstream mf(polyline_sidecar(csv));
  if (!mf) throw std::runtime_error("cannot write " + polyline_sidecar(csv).string());
  mf << meta.dump(2) << '\n';
}

inline Polyline load_polyline(const std::filesystem::path& csv) {
  std::ifstream f(csv);
  if (!f) throw std::runtime_error("cannot read " + csv.string());
  Polyline p = read_polyline_csv(f);
  std::ifstream mf(polyline_sidecar(csv));
  if (mf) {
    json meta = json::parse(mf);
    p.closed = meta.value("closed", false);
  }
  p.validate();
  return p;
}

inline json curve_to_json(const BSplineCurve& c) {
  c.validate();
  json j;
  j["degree"] = c.degree;
  j["knots"] = c.knots;
  json cps = json::array();
  for (const auto& cp : c.control_points) {
    json row = json::array();
    for (Eigen::Index d = 0; d < cp.size(); ++d) row.push_back(cp(d));
    cps.push_back(row);
  }
  j["control_points"] = cps;
  j["closed"] = c.closed;
  return j;
}

inline BSplineCurve curve_from_json(const json& j) {
  BSplineCurve c;
  c.degree = j.at("degree").get<int>();
  c.knots = j.at("knots").get<std::vector<double>>();
  for (const auto& row : j.at("control_points")) {
    Eigen::VectorXd cp(row.size());
    for (Eigen::Index d = 0; d < cp.size(); ++d) cp(d) = row.at(size_t(d)).get<double>();
    c.control_points.push_back(cp);
  }
  c.closed = j.at("closed").get<bool>();
  c.validate();
  return c;
}

inline json verdict_to_json(const std::string& word_id, const FilterVerdict& v) {
  json j;
  j["word_id"] = word_id;
  j["kind"] = verdict_name(v.kind);
  j["estimate_bits"] = v.estimate_bits;
  j["memory_bits"] = v.memory_bits;
  if (std::isfinite(v.ratio)) j["ratio"] = v.ratio;
  else j["ratio"] = nullptr;
  j["marginal"] = v.marginal;
  return j;
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
}

} // namespace kfilter
