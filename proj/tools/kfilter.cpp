// kfilter: quantize sampled motions into generator words, estimate their
// complexity, classify causality/spin, smooth with splines, and emit the
// algebra/harmonics artifacts. One subcommand per stage; `pipeline` chains
// them. All outputs are files; reports embed version, seed and config hash.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "kfilter/bits.hpp"
#include "kfilter/brownian.hpp"
#include "kfilter/bspline.hpp"
#include "kfilter/complexity.hpp"
#include "kfilter/filters.hpp"
#include "kfilter/g2.hpp"
#include "kfilter/harmonics.hpp"
#include "kfilter/io.hpp"
#include "kfilter/noise.hpp"
#include "kfilter/octonion.hpp"
#include "kfilter/polyline.hpp"
#include "kfilter/quantize.hpp"
#include "kfilter/robot.hpp"
#include "kfilter/rng.hpp"
#include "kfilter/version.hpp"
#include "kfilter/word.hpp"

namespace fs = std::filesystem;
using namespace kfilter;

namespace {

// Fixed per-stage randomness streams; see derive_seed.
enum : uint64_t {
  kStreamWordNoise = 1,
  kStreamPathNoise = 2,
  kStreamDensityTargets = 3,
};

struct GlobalOpts {
  std::string out;
  uint64_t seed = 1;
  std::string estimator = "dict";
  unsigned threads = 1;
};

fs::path out_dir(const GlobalOpts& g) {
  std::string dir = g.out;
  if (dir.empty()) {
    const char* env = std::getenv("KFILTER_OUT");
    dir = env && *env ? env : ".";
  }
  fs::path p(dir);
  fs::create_directories(p);
  return p;
}

void write_json_file(const fs::path& path, const json& j) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << j.dump(2) << '\n';
}

std::vector<Word> read_word_file(const fs::path& path, const Alphabet& a) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read " + path.string());
  std::vector<Word> words;
  std::string line;
  while (std::getline(f, line)) {
    bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
    if (!blank) words.push_back(word_from_text(line, a));
  }
  if (words.empty()) throw std::runtime_error("no words in " + path.string());
  return words;
}

void write_word_file(const fs::path& path, const std::vector<Word>& words, const Alphabet& a) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  for (const auto& w : words) f << word_to_text(w, a) << '\n';
}

Eigen::VectorXd default_anchor(int dim) {
  Eigen::VectorXd v;
  if (dim == 7) {
    v = Eigen::VectorXd::Zero(7);
    v(3) = 1.0; // e4: moved by both sample generators
  } else {
    v = Eigen::VectorXd::Ones(dim);
    v.normalize();
  }
  return v;
}

Eigen::VectorXd parse_vector(const std::string& csv) {
  std::vector<double> vals;
  std::istringstream is(csv);
  std::string cell;
  while (std::getline(is, cell, ',')) vals.push_back(std::stod(cell));
  Eigen::VectorXd v(vals.size());
  for (size_t i = 0; i < vals.size(); ++i) v(Eigen::Index(i)) = vals[i];
  return v;
}

std::string canon(const std::string& name, const std::vector<std::pair<std::string, std::string>>& kv) {
  std::ostringstream os;
  os << name;
  for (const auto& [k, v] : kv) os << ' ' << k << '=' << v;
  return os.str();
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

json estimate_row(const Word& w, const Alphabet& a) {
  json row;
  uint64_t len_bits = encode_self_delimiting(w, a).bits.size();
  row["tokens"] = w.tokens.size();
  row["input_len_bits"] = len_bits;
  for (Estimator e : all_estimators())
    row[estimator_name(e)] = estimate_word(w, a, e).bits;
  return row;
}

// ---------------------------------------------------------------------------

struct PipelineOpts {
  double theta = 2.0 * std::numbers::pi / 100.0;
  size_t n = 100;
  double sigma = 0.3;
  double path_sigma = 0.05;
  double rho = 4.0;
  double memory_bits = 0.0; // 0: use the clean estimate
  int degree = 4;
  size_t ctrl = 16;
  double epsilon = 0.0; // 0: 4 * path_sigma
  std::string input;
};

void cmd_pipeline(const GlobalOpts& g, const PipelineOpts& o) {
  Estimator est = parse_estimator(g.estimator);
  std::string cc = canon("pipeline", {{"theta", num(o.theta)},
                                      {"n", std::to_string(o.n)},
                                      {"sigma", num(o.sigma)},
                                      {"path_sigma", num(o.path_sigma)},
                                      {"rho", num(o.rho)},
                                      {"memory_bits", num(o.memory_bits)},
                                      {"degree", std::to_string(o.degree)},
                                      {"ctrl", std::to_string(o.ctrl)},
                                      {"epsilon", num(o.epsilon)},
                                      {"estimator", g.estimator},
                                      {"input", o.input.empty() ? "-" : o.input}});
  json report;
  report["meta"] = metadata_json(g.seed, cc);

  // stage 1: ingest or generate the demo loop (Rx^n orbit of the anchor)
  Alphabet a = build_so3_alphabet(o.theta);
  Quantizer q = make_quantizer(a, default_anchor(3), o.theta);
  Polyline p0;
  if (!o.input.empty()) {
    p0 = load_polyline(o.input);
    if (p0.dim() != 3) throw std::runtime_error("pipeline: input path must be 3-dimensional");
  } else {
    Word seed_word{std::vector<uint16_t>(o.n, 0), a.name()};
    p0 = reconstruct(seed_word, q);
  }
  report["path"] = {{"points", p0.points.size()},
                    {"closed", p0.closed},
                    {"arc_length", p0.arc_length()}};

  // stage 2: quantize
  Word w_clean = quantize_path(p0, q, o.n);
  report["quantize"] = {{"tokens", w_clean.tokens.size()},
                        {"word", word_to_text(w_clean, a)}};

  // stage 3: perturb (token substitution on the word, jitter on the path)
  NoiseSpec word_noise{NoiseSpec::Model::TokenSubstitution, o.sigma,
                       derive_seed(g.seed, kStreamWordNoise)};
  Word w_noisy = apply_E_word(w_clean, a, word_noise);
  NoiseSpec path_noise{NoiseSpec::Model::CoordinateJitter, o.path_sigma,
                       derive_seed(g.seed, kStreamPathNoise)};
  Polyline p_noisy = apply_E_path(p0, path_noise);
  report["perturb"] = {{"sigma", o.sigma},
                       {"path_sigma", o.path_sigma},
                       {"word", word_to_text(w_noisy, a)}};

  // stage 4: estimate
  double est_clean = estimate_word(w_clean, a, est).bits;
  double est_noisy = estimate_word(w_noisy, a, est).bits;
  report["estimate"] = {{"estimator", g.estimator},
                        {"clean", estimate_row(w_clean, a)},
                        {"noisy", estimate_row(w_noisy, a)}};

  // stage 5: classify
  FilterConfig cfg{est, o.rho, o.memory_bits > 0 ? o.memory_bits : est_clean};
  json cls;
  cls["memory_bits"] = cfg.memory_bits;
  cls["rho"] = cfg.rho;
  cls["path_clean"] = verdict_to_json("clean", classify_path(w_clean, w_clean, a, cfg));
  cls["path_noisy"] = verdict_to_json("noisy", classify_path(w_clean, w_noisy, a, cfg));
  Polyline rec = reconstruct(w_clean, q);
  if (rec.closed) {
    cls["loop_clean"] = verdict_to_json("clean", classify_loop(w_clean, w_clean, a, q, cfg));
    cls["loop_noisy"] = verdict_to_json("noisy", classify_loop(w_clean, w_noisy, a, q, cfg));
  }
  report["classify"] = cls;

  // stage 6: fit spline to the jittered path, audit tube and complexity
  BSplineCurve curve = fit_bspline(p_noisy, o.degree, o.ctrl);
  double eps = o.epsilon > 0 ? o.epsilon : 4.0 * o.path_sigma;
  TubeReport geom = tube_check(curve, p_noisy, eps);
  TubeReport cx = complexity_reduction(p_noisy, curve, q, est);
  report["spline"] = {{"degree", o.degree},
                      {"ctrl", o.ctrl},
                      {"epsilon", eps},
                      {"max_deviation", geom.max_deviation},
                      {"contained", geom.contained},
                      {"complexity_original_bits", cx.complexity_original_bits},
                      {"complexity_spline_bits", cx.complexity_spline_bits},
                      {"ratio", cx.ratio}};

  write_json_file(out_dir(g) / "pipeline_report.json", report);
}

// ---------------------------------------------------------------------------

struct QuantizeOpts {
  std::string input;
  double theta = 2.0 * std::numbers::pi / 100.0;
  size_t n = 100;
  std::string anchor;
};

void cmd_quantize(const GlobalOpts& g, const QuantizeOpts& o) {
  Polyline p = load_polyline(o.input);
  Alphabet a = build_so3_alphabet(o.theta);
  Eigen::VectorXd anchor = o.anchor.empty() ? default_anchor(3) : parse_vector(o.anchor);
  Quantizer q = make_quantizer(a, anchor, o.theta);
  Word w = quantize_path(p, q, o.n);
  Polyline rec = reconstruct(w, q);

  fs::path dir = out_dir(g);
  write_word_file(dir / "word.txt", {w}, a);
  write_json_file(dir / "alphabet.json", alphabet_to_json(a));
  std::string cc = canon("quantize", {{"input", o.input},
                                      {"theta", num(o.theta)},
                                      {"n", std::to_string(o.n)}});
  json rep;
  rep["meta"] = metadata_json(g.seed, cc);
  rep["tokens"] = w.tokens.size();
  rep["closed"] = rec.closed;
  rep["endpoint_gap"] = (rec.points.back() - rec.points.front()).norm();
  write_json_file(dir / "quantize_report.json", rep);
}

// ---------------------------------------------------------------------------

struct PerturbOpts {
  std::string word_file;
  std::string alphabet_file;
  std::string input;
  double sigma = 0.1;
};

void cmd_perturb(const GlobalOpts& g, const PerturbOpts& o) {
  fs::path dir = out_dir(g);
  if (!o.word_file.empty()) {
    if (o.alphabet_file.empty())
      throw std::runtime_error("perturb: --alphabet-file required with --word-file");
    Alphabet a = alphabet_from_json(json::parse(read_text_file(o.alphabet_file)));
    std::vector<Word> words = read_word_file(o.word_file, a);
    NoiseSpec ns{NoiseSpec::Model::TokenSubstitution, o.sigma,
                 derive_seed(g.seed, kStreamWordNoise)};
    std::vector<Word> out;
    for (const auto& w : words) out.push_back(apply_E_word(w, a, ns));
    write_word_file(dir / "perturbed.txt", out, a);
  } else if (!o.input.empty()) {
    Polyline p = load_polyline(o.input);
    NoiseSpec ns{NoiseSpec::Model::CoordinateJitter, o.sigma,
                 derive_seed(g.seed, kStreamPathNoise)};
    save_polyline(dir / "perturbed.csv", apply_E_path(p, ns));
  } else {
    throw std::runtime_error("perturb: need --word-file or --input");
  }
  std::string cc = canon("perturb", {{"word_file", o.word_file.empty() ? "-" : o.word_file},
                                     {"input", o.input.empty() ? "-" : o.input},
                                     {"sigma", num(o.sigma)}});
  write_json_file(dir / "perturb_report.json", json{{"meta", metadata_json(g.seed, cc)}});
}

// ---------------------------------------------------------------------------

struct EstimateOpts {
  std::string word_file;
  std::string alphabet_file;
};

void cmd_estimate(const GlobalOpts& g, const EstimateOpts& o) {
  Alphabet a = alphabet_from_json(json::parse(read_text_file(o.alphabet_file)));
  std::vector<Word> words = read_word_file(o.word_file, a);
  std::string cc = canon("estimate", {{"word_file", o.word_file},
                                      {"alphabet_file", o.alphabet_file},
                                      {"estimator", g.estimator}});
  json rep;
  rep["meta"] = metadata_json(g.seed, cc);
  json rows = json::array();
  for (size_t i = 0; i < words.size(); ++i) {
    json row = estimate_row(words[i], a);
    row["word_id"] = i;
    rows.push_back(row);
  }
  rep["rows"] = rows;
  write_json_file(out_dir(g) / "estimates.json", rep);
}

// ---------------------------------------------------------------------------

struct ClassifyOpts {
  std::string word_file;
  std::string image_file;
  std::string alphabet_file;
  double rho = 4.0;
  double memory_bits = 0.0;
  bool loop = false;
  double theta = 2.0 * std::numbers::pi / 100.0;
  std::string anchor;
};

void cmd_classify(const GlobalOpts& g, const ClassifyOpts& o) {
  Estimator est = parse_estimator(g.estimator);
  Alphabet a = alphabet_from_json(json::parse(read_text_file(o.alphabet_file)));
  std::vector<Word> words = read_word_file(o.word_file, a);
  std::vector<Word> images =
      o.image_file.empty() ? words : read_word_file(o.image_file, a);
  if (images.size() != words.size())
    throw std::runtime_error("classify: word/image line counts differ");

  FilterConfig cfg{est, o.rho, o.memory_bits};
  Quantizer q;
  if (o.loop) {
    Eigen::VectorXd anchor =
        o.anchor.empty() ? default_anchor(a.dim()) : parse_vector(o.anchor);
    q = make_quantizer(a, anchor, o.theta);
  }
  std::string cc = canon("classify", {{"word_file", o.word_file},
                                      {"image_file", o.image_file.empty() ? "-" : o.image_file},
                                      {"rho", num(o.rho)},
                                      {"memory_bits", num(o.memory_bits)},
                                      {"loop", o.loop ? "1" : "0"},
                                      {"estimator", g.estimator}});
  std::ofstream f(out_dir(g) / "verdicts.jsonl");
  if (!f) throw std::runtime_error("cannot write verdicts.jsonl");
  f << json{{"meta", metadata_json(g.seed, cc)}}.dump() << '\n';
  for (size_t i = 0; i < words.size(); ++i) {
    FilterVerdict v = o.loop ? classify_loop(words[i], images[i], a, q, cfg)
                             : classify_path(words[i], images[i], a, cfg);
    f << verdict_to_json(std::to_string(i), v).dump() << '\n';
  }
}

// ---------------------------------------------------------------------------

struct SplineOpts {
  std::string input;
  int degree = 4;
  size_t ctrl = 16;
  double epsilon = 0.1;
  double theta = 2.0 * std::numbers::pi / 100.0;
};

void cmd_spline(const GlobalOpts& g, const SplineOpts& o) {
  Estimator est = parse_estimator(g.estimator);
  Polyline p = load_polyline(o.input);
  BSplineCurve c = fit_bspline(p, o.degree, o.ctrl);
  TubeReport geom = tube_check(c, p, o.epsilon);

  std::string cc = canon("spline", {{"input", o.input},
                                    {"degree", std::to_string(o.degree)},
                                    {"ctrl", std::to_string(o.ctrl)},
                                    {"epsilon", num(o.epsilon)},
                                    {"estimator", g.estimator}});
  json rep;
  rep["meta"] = metadata_json(g.seed, cc);
  rep["epsilon"] = geom.epsilon;
  rep["max_deviation"] = geom.max_deviation;
  rep["contained"] = geom.contained;
  if (p.dim() == 3) {
    Quantizer q = make_quantizer(build_so3_alphabet(o.theta), default_anchor(3), o.theta);
    TubeReport cx = complexity_reduction(p, c, q, est);
    rep["complexity_original_bits"] = cx.complexity_original_bits;
    rep["complexity_spline_bits"] = cx.complexity_spline_bits;
    rep["ratio"] = cx.ratio;
  }
  fs::path dir = out_dir(g);
  json cj = curve_to_json(c);
  cj["meta"] = metadata_json(g.seed, cc);
  write_json_file(dir / "curve.json", cj);
  save_polyline(dir / "curve_samples.csv", sample_curve(c, p.points.size()));
  write_json_file(dir / "tube_report.json", rep);
}

// ---------------------------------------------------------------------------

struct ProbeG2Opts {
  double x1 = kDefaultG2AngleA;
  double y1 = kDefaultG2AngleB;
  int max_len = 8;
  double tol = 1e-6;
  int density_targets = 10;
  int density_max_len = 12;
};

void cmd_probe_g2(const GlobalOpts& g, const ProbeG2Opts& o) {
  G2Alphabet ga = make_g2_alphabet(o.x1, o.y1);
  FreenessReport fr = probe_freeness(ga, o.max_len, o.tol);

  Rng rng(derive_seed(g.seed, kStreamDensityTargets));
  std::vector<G2Element> targets;
  for (int t = 0; t < o.density_targets; ++t) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(7, 7);
    for (int k = 0; k < 8; ++k) {
      G2Kind kind = rng.below(2) ? G2Kind::A : G2Kind::B;
      double ang = 2.0 * std::numbers::pi * rng.uniform();
      m *= g2_generator(kind, ang).matrix;
    }
    targets.push_back({m});
  }
  DensityReport dr = probe_density(ga, targets, o.density_max_len);

  std::string cc = canon("probe-g2", {{"x1", num(o.x1)},
                                      {"y1", num(o.y1)},
                                      {"max_len", std::to_string(o.max_len)},
                                      {"tol", num(o.tol)},
                                      {"density_targets", std::to_string(o.density_targets)},
                                      {"density_max_len", std::to_string(o.density_max_len)}});
  json rep;
  rep["meta"] = metadata_json(g.seed, cc);
  rep["freeness"] = {{"max_len", fr.max_len},
                     {"tol", fr.tol},
                     {"words_checked", fr.words_checked},
                     {"min_distance", fr.min_distance},
                     {"min_per_length", fr.min_per_length},
                     {"relation_found", fr.relation_found}};
  if (fr.relation_found) {
    Word w{fr.argmin_tokens, ga.alphabet.name()};
    rep["freeness"]["relation_word"] = word_to_text(w, ga.alphabet);
  }
  json dens;
  dens["max_len"] = dr.max_len;
  dens["words_checked"] = dr.words_checked;
  dens["per_target_min"] = dr.per_target_min;
  rep["density"] = dens;

  fs::path dir = out_dir(g);
  write_json_file(dir / "probe_g2.json", rep);
  std::ofstream csv(dir / "oct_table.csv");
  if (!csv) throw std::runtime_error("cannot write oct_table.csv");
  write_oct_table_csv(csv);
}

// ---------------------------------------------------------------------------

struct OracleOpts {
  size_t len = 6;
  uint64_t max_bits = kOracleMaxBits;
  std::string labels = "a,b";
};

void cmd_oracle(const GlobalOpts& g, const OracleOpts& o) {
  std::vector<Token> tokens;
  {
    std::istringstream is(o.labels);
    std::string label;
    uint16_t id = 0;
    while (std::getline(is, label, ',')) tokens.push_back({id++, std::nullopt, label});
  }
  Alphabet a("oracle", std::move(tokens));
  std::vector<OracleResult> table = oracle_table(a, o.len, o.max_bits, g.threads);

  std::string cc = canon("oracle", {{"len", std::to_string(o.len)},
                                    {"max_bits", std::to_string(o.max_bits)},
                                    {"labels", o.labels}});
  json rep;
  rep["meta"] = metadata_json(g.seed, cc);
  rep["alphabet"] = alphabet_to_json(a);
  json rows = json::array();
  for (const auto& r : table) {
    json row;
    row["word"] = word_to_text(r.word, a);
    row["found"] = r.found;
    if (r.found) {
      row["shortest_bits"] = r.shortest_bits;
      row["program"] = program_to_text(r.program, a);
    }
    row["programs_searched"] = r.programs_searched;
    rows.push_back(row);
  }
  rep["rows"] = rows;
  write_json_file(out_dir(g) / "oracle_table.json", rep);
}

// ---------------------------------------------------------------------------

struct HarmonicsOpts {
  int l = -1; // < 0: emit the default panel set
  int m = 0;
  int theta_steps = 64;
  int phi_steps = 128;
};

void cmd_harmonics(const GlobalOpts& g, const HarmonicsOpts& o) {
  std::vector<std::pair<int, int>> panel;
  if (o.l >= 0) panel.emplace_back(o.l, o.m);
  else panel = {{3, 2}, {7, 1}, {4, 2}, {5, 4}, {3, 0}};

  fs::path dir = out_dir(g);
  std::string cc = canon("harmonics", {{"l", std::to_string(o.l)},
                                       {"m", std::to_string(o.m)},
                                       {"theta_steps", std::to_string(o.theta_steps)},
                                       {"phi_steps", std::to_string(o.phi_steps)}});
  json rep;
  rep["meta"] = metadata_json(g.seed, cc);
  rep["radius"] = "abs(Y)"; // what the mesh uses for r
  json files = json::array();
  for (auto [l, m] : panel) {
    HarmonicSpec spec{l, m, o.theta_steps, o.phi_steps};
    SurfaceMesh mesh = mesh_harmonic(spec);
    std::string stem = "Y_" + std::to_string(l) + "_" + std::to_string(m);
    {
      std::ofstream f(dir / (stem + ".obj"));
      if (!f) throw std::runtime_error("cannot write " + stem + ".obj");
      write_obj(mesh, f);
    }
    std::string csv_name = stem + "_" + std::to_string(o.theta_steps) + "x" +
                           std::to_string(o.phi_steps) + ".csv";
    {
      std::ofstream f(dir / csv_name);
      if (!f) throw std::runtime_error("cannot write " + csv_name);
      write_harmonic_csv(spec, f);
    }
    files.push_back({{"l", l},
                     {"m", m},
                     {"obj", stem + ".obj"},
                     {"csv", csv_name},
                     {"vertices", mesh.vertices.size()},
                     {"triangles", mesh.triangles.size()}});
  }
  rep["files"] = files;
  write_json_file(dir / "harmonics_report.json", rep);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"complexity filters for quantized motions"};
  app.require_subcommand(1);
  app.set_config("--config");

  GlobalOpts g;
  app.add_option("--out", g.out, "output directory (default: $KFILTER_OUT or .)");
  app.add_option("--seed", g.seed, "run seed; all stage randomness derives from it");
  app.add_option("--estimator", g.estimator, "complexity estimator")
      ->check(CLI::IsMember({"lz78", "lzw", "dict"}));
  app.add_option("--threads", g.threads, "worker threads for parallel enumeration");

  PipelineOpts po;
  auto* pipeline = app.add_subcommand("pipeline", "generate, quantize, perturb, estimate, classify, fit");
  pipeline->add_option("--theta", po.theta, "quantizer step angle");
  pipeline->add_option("--n", po.n, "token budget");
  pipeline->add_option("--sigma", po.sigma, "token substitution probability");
  pipeline->add_option("--path-sigma", po.path_sigma, "path jitter stddev");
  pipeline->add_option("--rho", po.rho, "memory-vs-estimate ratio for Causal");
  pipeline->add_option("--memory-bits", po.memory_bits, "robot memory (0: clean estimate)");
  pipeline->add_option("--degree", po.degree, "spline degree");
  pipeline->add_option("--ctrl", po.ctrl, "spline control point count");
  pipeline->add_option("--epsilon", po.epsilon, "tube radius (0: 4*path-sigma)");
  pipeline->add_option("--input", po.input, "polyline CSV to ingest instead of the demo loop");
  pipeline->callback([&] { cmd_pipeline(g, po); });

  QuantizeOpts qo;
  auto* quantize = app.add_subcommand("quantize", "polyline -> generator word");
  quantize->add_option("--input", qo.input, "polyline CSV")->required();
  quantize->add_option("--theta", qo.theta, "step angle");
  quantize->add_option("--n", qo.n, "token budget");
  quantize->add_option("--anchor", qo.anchor, "anchor point as comma list");
  quantize->callback([&] { cmd_quantize(g, qo); });

  PerturbOpts eo;
  auto* perturb = app.add_subcommand("perturb", "apply the fluctuation operator");
  perturb->add_option("--word-file", eo.word_file, "word file (token substitution)");
  perturb->add_option("--alphabet-file", eo.alphabet_file, "alphabet JSON");
  perturb->add_option("--input", eo.input, "polyline CSV (coordinate jitter)");
  perturb->add_option("--sigma", eo.sigma, "substitution probability / jitter stddev");
  perturb->callback([&] { cmd_perturb(g, eo); });

  EstimateOpts so;
  auto* estimate = app.add_subcommand("estimate", "complexity estimates for words");
  estimate->add_option("--word-file", so.word_file, "word file")->required();
  estimate->add_option("--alphabet-file", so.alphabet_file, "alphabet JSON")->required();
  estimate->callback([&] { cmd_estimate(g, so); });

  ClassifyOpts co;
  auto* classify = app.add_subcommand("classify", "causal/reversible or spin verdicts");
  classify->add_option("--word-file", co.word_file, "clean words")->required();
  classify->add_option("--image-file", co.image_file, "fluctuated words (default: clean)");
  classify->add_option("--alphabet-file", co.alphabet_file, "alphabet JSON")->required();
  classify->add_option("--rho", co.rho, "memory-vs-estimate ratio for Causal");
  classify->add_option("--memory-bits", co.memory_bits, "robot memory bits")->required();
  classify->add_flag("--loop", co.loop, "apply the spin rule (words must close)");
  classify->add_option("--theta", co.theta, "step angle for loop closure");
  classify->add_option("--anchor", co.anchor, "anchor point as comma list");
  classify->callback([&] { cmd_classify(g, co); });

  SplineOpts spo;
  auto* spline = app.add_subcommand("spline", "fit a B-spline and audit the tube");
  spline->add_option("--input", spo.input, "polyline CSV")->required();
  spline->add_option("--degree", spo.degree, "spline degree");
  spline->add_option("--ctrl", spo.ctrl, "control point count");
  spline->add_option("--epsilon", spo.epsilon, "tube radius");
  spline->add_option("--theta", spo.theta, "quantizer step for the complexity part");
  spline->callback([&] { cmd_spline(g, spo); });

  ProbeG2Opts go;
  auto* probe = app.add_subcommand("probe-g2", "freeness/density probes and the table fixture");
  probe->add_option("--x1", go.x1, "kind-A generator angle");
  probe->add_option("--y1", go.y1, "kind-B generator angle");
  probe->add_option("--max-len", go.max_len, "freeness word length bound");
  probe->add_option("--tol", go.tol, "relation tolerance");
  probe->add_option("--density-targets", go.density_targets, "random targets");
  probe->add_option("--density-max-len", go.density_max_len, "density word length bound");
  probe->callback([&] { cmd_probe_g2(g, go); });

  OracleOpts oo;
  auto* oracle = app.add_subcommand("oracle", "exhaustive shortest-program table");
  oracle->add_option("--len", oo.len, "word length");
  oracle->add_option("--max-bits", oo.max_bits, "program search bound");
  oracle->add_option("--labels", oo.labels, "comma-separated token labels");
  oracle->callback([&] { cmd_oracle(g, oo); });

  HarmonicsOpts ho;
  auto* harm = app.add_subcommand("harmonics", "surface meshes r = |Y_l^m|");
  harm->add_option("--l", ho.l, "degree (omit for the default panel set)");
  harm->add_option("--m", ho.m, "order");
  harm->add_option("--theta-steps", ho.theta_steps, "latitude resolution");
  harm->add_option("--phi-steps", ho.phi_steps, "longitude resolution");
  harm->callback([&] { cmd_harmonics(g, ho); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cout << json{{"error", e.what()}}.dump() << std::endl;
    return 1;
  }
  return 0;
}
