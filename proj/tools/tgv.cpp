// Command-line front end: denoising, filter training, dataset generation,
// batch evaluation, and the grid-refinement consistency check.
//
// Exit codes: 0 success, 2 bad arguments, 3 I/O failure, 4 solver divergence.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tgv/consistency.hpp"
#include "tgv/data.hpp"
#include "tgv/image_io.hpp"
#include "tgv/metrics.hpp"
#include "tgv/train.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "tgv 1.0.0";

struct CliError : std::runtime_error {
  int code;
  CliError(int c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

tgv::BankPair resolve_banks(const std::string& spec) {
  using namespace tgv;
  if (spec == "identity") return {identity_K(), identity_L()};
  if (spec == "handcrafted:L3K1")
    return {handcrafted_bank(HandcraftedKind::K1), handcrafted_bank(HandcraftedKind::L3)};
  if (spec == "handcrafted:L4K4")
    return {handcrafted_bank(HandcraftedKind::K4), handcrafted_bank(HandcraftedKind::L4)};
  // a directory holding bank_K.json / bank_L.json, or a file prefix
  fs::path pk, pl;
  if (fs::is_directory(spec)) {
    pk = fs::path(spec) / "bank_K.json";
    pl = fs::path(spec) / "bank_L.json";
  } else {
    pk = spec + "_K.json";
    pl = spec + "_L.json";
  }
  if (!fs::exists(pk) || !fs::exists(pl))
    throw CliError(3, "bank spec '" + spec + "': cannot find " + pk.string() + " / " + pl.string());
  BankPair banks;
  banks.K = load_bank(pk.string());
  banks.L = load_bank(pl.string());
  if (banks.K.target != BankTarget::K || banks.L.target != BankTarget::L)
    throw CliError(3, "bank spec '" + spec + "': target mismatch in bank files");
  return banks;
}

void write_run_manifest(const fs::path& dir, const std::string& command, const json& config,
                        const std::vector<std::pair<std::string, std::string>>& bank_hashes) {
  json m;
  m["version"] = kVersion;
  m["command"] = command;
  m["config"] = config;
  m["threads"] = tgv::max_threads();
  json hashes = json::object();
  for (const auto& [name, hash] : bank_hashes) hashes[name] = hash;
  m["bank_hashes"] = hashes;
  std::ofstream f(dir / "run_manifest.json");
  if (!f) throw CliError(3, "cannot write run manifest in " + dir.string());
  f << m.dump(2) << "\n";
}

json load_config_json(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream f(path);
  if (!f) throw CliError(3, "cannot read config " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return json::parse(ss.str());
}

std::string csv_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct DenoiseArgs {
  std::string in, out, ref, bank = "handcrafted:L3K1";
  double alpha1 = 0.0685, alpha0 = 0.137;
  long iters = 10000;
  int bits = 16;
  bool luma = false;
};

int cmd_denoise(const DenoiseArgs& a) {
  tgv::LoadOptions lo;
  lo.luma_convert = a.luma;
  tgv::Image f = tgv::load_image(a.in, lo);
  tgv::BankPair banks = resolve_banks(a.bank);

  tgv::Image u = f;
  if (a.alpha1 > 0.0 || a.alpha0 > 0.0) u = tgv::pd_solve(f, banks, {a.alpha1, a.alpha0}, a.iters).u;

  const fs::path out_path(a.out);
  if (out_path.has_parent_path()) fs::create_directories(out_path.parent_path());
  tgv::save_image(u, a.out, a.bits);

  const fs::path dir = out_path.has_parent_path() ? out_path.parent_path() : fs::path(".");
  json rc = {{"in", a.in},         {"out", a.out},       {"ref", a.ref},   {"bank", a.bank},
             {"alpha1", a.alpha1}, {"alpha0", a.alpha0}, {"iters", a.iters}, {"bits", a.bits}};
  write_run_manifest(dir, "denoise", rc,
                     {{"K", tgv::bank_hash(banks.K)}, {"L", tgv::bank_hash(banks.L)}});

  if (!a.ref.empty()) {
    tgv::Image r = tgv::load_image(a.ref, lo);
    std::ofstream mcsv(dir / "metrics.csv");
    if (!mcsv) throw CliError(3, "cannot write metrics.csv");
    mcsv << "image,psnr,mse,ssim\n";
    mcsv << out_path.filename().string() << "," << csv_double(tgv::psnr(u, r)) << ","
         << csv_double(tgv::mse(u, r)) << "," << csv_double(tgv::ssim(u, r)) << "\n";
  }
  return 0;
}

struct GenArgs {
  std::string kind = "synthetic", out, src, gt_bank = "handcrafted:L3K1";
  int count = 32, size = 128;
  uint64_t seed = 1;
  double sigma = 0.0, alpha1 = 0.1, alpha0 = 0.2;
  bool pseudo_gt = false;
  long gt_iters = 20000;
};

int cmd_gen_data(const GenArgs& a) {
  fs::create_directories(a.out);
  std::vector<tgv::Image> clean;
  if (a.kind == "synthetic") {
    tgv::SyntheticOptions so;
    so.count = a.count;
    so.rows = a.size;
    so.cols = a.size;
    clean = tgv::gen_synthetic(a.seed, so);
  } else if (a.kind == "textured") {
    clean = tgv::gen_textured(a.seed, a.count, a.size, a.size);
  } else if (a.kind == "natural") {
    if (a.src.empty()) throw CliError(2, "gen-data --kind natural requires --src DIR");
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(a.src))
      if (e.path().extension() == ".png") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw CliError(3, "no .png files in " + a.src);
    tgv::LoadOptions lo;
    lo.luma_convert = true;
    for (const fs::path& p : files) {
      if (static_cast<int>(clean.size()) >= a.count) break;
      tgv::Image img = tgv::load_image(p.string(), lo);
      if (img.rows() < a.size || img.cols() < a.size) continue;
      tgv::Image crop(a.size, a.size, 1.0);
      const int i0 = (img.rows() - a.size) / 2, j0 = (img.cols() - a.size) / 2;
      for (int i = 0; i < a.size; ++i)
        for (int j = 0; j < a.size; ++j) crop.at(i, j) = img.at(i0 + i, j0 + j);
      clean.push_back(std::move(crop));
    }
    if (clean.empty())
      throw CliError(3, "no usable images (need at least " + std::to_string(a.size) + "x" +
                            std::to_string(a.size) + ") in " + a.src);
  } else {
    throw CliError(2, "unknown --kind " + a.kind);
  }

  tgv::BankPair banks = resolve_banks(a.gt_bank);
  tgv::DatasetManifest man;
  man.pseudo_gt_iters = a.pseudo_gt ? a.gt_iters : 0;
  man.note = a.kind;
  for (size_t s = 0; s < clean.size(); ++s) {
    char name[64];
    std::snprintf(name, sizeof(name), "clean_%03zu.png", s);
    tgv::save_image(clean[s], (fs::path(a.out) / name).string());
    tgv::DatasetEntry e;
    e.clean = name;
    e.sigma = a.sigma;
    e.seed = a.seed + 1000 + s;
    if (a.sigma > 0.0) {
      std::snprintf(name, sizeof(name), "noisy_%03zu.png", s);
      tgv::save_image(tgv::add_gaussian_noise(clean[s], a.sigma, e.seed),
                      (fs::path(a.out) / name).string());
      e.corrupted = name;
    } else {
      e.corrupted = e.clean;
    }
    if (a.pseudo_gt) {
      std::snprintf(name, sizeof(name), "target_%03zu.png", s);
      tgv::PseudoGtOptions po;
      po.iters = a.gt_iters;
      tgv::save_image(tgv::pseudo_ground_truth(clean[s], {a.alpha1, a.alpha0}, banks, po),
                      (fs::path(a.out) / name).string());
      e.target = name;
    }
    man.entries.push_back(std::move(e));
  }
  tgv::save_manifest(man, (fs::path(a.out) / "manifest.json").string());

  json rc = {{"kind", a.kind},   {"count", a.count},         {"size", a.size},
             {"seed", a.seed},   {"sigma", a.sigma},         {"pseudo_gt", a.pseudo_gt},
             {"alpha1", a.alpha1}, {"alpha0", a.alpha0},     {"gt_iters", a.gt_iters},
             {"gt_bank", a.gt_bank}, {"src", a.src}};
  write_run_manifest(a.out, "gen-data", rc,
                     {{"K", tgv::bank_hash(banks.K)}, {"L", tgv::bank_hash(banks.L)}});
  return 0;
}

std::vector<tgv::TrainSample> load_pairs(const std::string& manifest_path,
                                         const std::string& input_field,
                                         const std::string& ref_field) {
  tgv::DatasetManifest man = tgv::load_manifest(manifest_path);
  const fs::path base = fs::path(manifest_path).parent_path();
  std::vector<tgv::TrainSample> out;
  for (const tgv::DatasetEntry& e : man.entries) {
    tgv::TrainSample s;
    const std::string in_name = input_field == "clean" ? e.clean : e.corrupted;
    std::string ref_name = ref_field == "clean" ? e.clean : e.target;
    if (ref_name.empty()) ref_name = e.clean;
    s.f = tgv::load_image((base / in_name).string());
    s.target = tgv::load_image((base / ref_name).string());
    out.push_back(std::move(s));
  }
  return out;
}

struct TrainArgs {
  std::string data, out, constraint = "sum1", input_field = "corrupted", ref_field = "target";
  int nk = 4, nl = 4, nu = 1;
  long outer = 3000, inner = 100;
  double lr = 1e-3, alpha1 = 0.1, alpha0 = 0.2;
  bool symmetric = false, quiet = false;
  uint64_t seed = 1;
};

int cmd_train(const TrainArgs& a) {
  std::vector<tgv::TrainSample> samples = load_pairs(a.data, a.input_field, a.ref_field);
  if (samples.empty()) throw CliError(3, "empty dataset " + a.data);

  tgv::TrainConfig tc;
  tc.outer_iters = static_cast<int>(a.outer);
  tc.inner_iters = static_cast<int>(a.inner);
  tc.lr = a.lr;
  tc.alpha = {a.alpha1, a.alpha0};
  tc.symmetric = a.symmetric;
  tc.seed = a.seed;
  tc.constraint =
      a.constraint == "gamma" ? tgv::BankConstraint::equal_sums : tgv::BankConstraint::sum_to_one;

  tgv::BankPair init = tgv::initial_banks(a.nk, a.nl, a.nu, tc.constraint, a.symmetric, a.seed);
  tgv::TrainMonitor monitor = nullptr;
  if (!a.quiet)
    monitor = [](long t, double loss) {
      if (t % 50 == 0 || t == 1) std::cerr << "step " << t << "  loss " << loss << "\n";
    };
  tgv::TrainResult r = tgv::bilevel_train(samples, init, tc, monitor);

  fs::create_directories(a.out);
  tgv::save_bank(r.banks.K, (fs::path(a.out) / "bank_K.json").string());
  tgv::save_bank(r.banks.L, (fs::path(a.out) / "bank_L.json").string());
  tgv::write_loss_csv(r.loss_history, (fs::path(a.out) / "loss.csv").string());

  json rc = {{"data", a.data},     {"nk", a.nk},         {"nl", a.nl},
             {"nu", a.nu},         {"outer", a.outer},   {"inner", a.inner},
             {"lr", a.lr},         {"alpha1", a.alpha1}, {"alpha0", a.alpha0},
             {"constraint", a.constraint}, {"symmetric", a.symmetric}, {"seed", a.seed},
             {"input_field", a.input_field}, {"ref_field", a.ref_field}};
  json side = {{"config", rc}, {"best_step", r.best_step}, {"best_loss", r.best_loss}};
  std::ofstream ck(fs::path(a.out) / "checkpoint.json");
  ck << side.dump(2) << "\n";
  write_run_manifest(a.out, "train", rc,
                     {{"K", tgv::bank_hash(r.banks.K)}, {"L", tgv::bank_hash(r.banks.L)}});
  return 0;
}

struct EvalArgs {
  std::string data, out, methods, input_field = "corrupted", ref_field = "target";
  double alpha1 = 0.1, alpha0 = 0.2;
  long iters = 10000;
};

int cmd_eval(const EvalArgs& a) {
  std::vector<tgv::TrainSample> pairs = load_pairs(a.data, a.input_field, a.ref_field);
  if (pairs.empty()) throw CliError(3, "empty dataset " + a.data);

  std::vector<std::pair<std::string, std::string>> specs;
  {
    std::stringstream ss(a.methods);
    std::string tok;
    while (std::getline(ss, tok, ';')) {
      const size_t eq = tok.find('=');
      if (eq == std::string::npos) throw CliError(2, "bad --methods entry: " + tok);
      specs.emplace_back(tok.substr(0, eq), tok.substr(eq + 1));
    }
  }
  if (specs.empty()) throw CliError(2, "no methods given");

  fs::create_directories(a.out);
  std::ofstream per(fs::path(a.out) / "per_image.csv");
  per << "method,image_id,psnr,mse,ssim\n";
  std::ofstream summary(fs::path(a.out) / "summary.csv");
  summary << "method,mean_psnr,mean_mse,mean_ssim\n";

  std::vector<std::pair<std::string, std::string>> hashes;
  for (const auto& [name, spec] : specs) {
    tgv::BankPair banks = resolve_banks(spec);
    hashes.emplace_back(name + ":K", tgv::bank_hash(banks.K));
    hashes.emplace_back(name + ":L", tgv::bank_hash(banks.L));
    tgv::StepSizes st = tgv::precondition(banks, pairs[0].f.rows(), pairs[0].f.cols(), pairs[0].f.h);
    double sum_psnr = 0, sum_mse = 0, sum_ssim = 0;
    for (size_t s = 0; s < pairs.size(); ++s) {
      tgv::Image u =
          tgv::pd_solve(pairs[s].f, banks, {a.alpha1, a.alpha0}, a.iters, std::nullopt, st).u;
      const double p = tgv::psnr(u, pairs[s].target);
      const double m = tgv::mse(u, pairs[s].target);
      const double ss = tgv::ssim(u, pairs[s].target);
      per << name << "," << s << "," << csv_double(p) << "," << csv_double(m) << ","
          << csv_double(ss) << "\n";
      sum_psnr += p;
      sum_mse += m;
      sum_ssim += ss;
    }
    const double n = static_cast<double>(pairs.size());
    summary << name << "," << csv_double(sum_psnr / n) << "," << csv_double(sum_mse / n) << ","
            << csv_double(sum_ssim / n) << "\n";
  }

  json rc = {{"data", a.data},     {"methods", a.methods}, {"alpha1", a.alpha1},
             {"alpha0", a.alpha0}, {"iters", a.iters},     {"input_field", a.input_field},
             {"ref_field", a.ref_field}};
  write_run_manifest(a.out, "eval", rc, hashes);
  return 0;
}

struct ConsArgs {
  std::string field = "affine_plus_sine", bank = "handcrafted:L3K1", out, levels = "16,32,64,128";
  double alpha1 = 0.1, alpha0 = 0.2;
  long iters = 20000, rot_iters = 4000;
  bool rotation = false;
  int rot_size = 24;
  uint64_t seed = 1;
};

int cmd_consistency(const ConsArgs& a) {
  tgv::TestFieldKind kind;
  if (a.field == "affine")
    kind = tgv::TestFieldKind::affine;
  else if (a.field == "affine_plus_sine" || a.field == "sine")
    kind = tgv::TestFieldKind::affine_plus_sine;
  else if (a.field == "smooth_bump" || a.field == "bump")
    kind = tgv::TestFieldKind::smooth_bump;
  else
    throw CliError(2, "unknown --field " + a.field);

  std::vector<int> levels;
  {
    std::stringstream ss(a.levels);
    std::string tok;
    while (std::getline(ss, tok, ',')) levels.push_back(std::stoi(tok));
  }

  tgv::BankPair banks = resolve_banks(a.bank);
  fs::create_directories(a.out);
  tgv::LadderReport rep = tgv::refinement_ladder(kind, {a.alpha1, a.alpha0}, banks, levels, a.iters);
  tgv::write_ladder_csv(rep, (fs::path(a.out) / "ladder.csv").string());
  std::ofstream txt(fs::path(a.out) / "summary.txt");
  txt << tgv::ladder_summary(rep);

  if (a.rotation) {
    tgv::SyntheticOptions so;
    so.count = 1;
    so.rows = a.rot_size;
    so.cols = a.rot_size;
    tgv::Image img = tgv::gen_synthetic(a.seed, so)[0];
    img = tgv::add_gaussian_noise(img, 12.75, a.seed + 1);
    tgv::RotationReport rr = tgv::rotation_diagnostic(img, {a.alpha1, a.alpha0}, banks, a.rot_iters);
    txt << "\nrotation diagnostic (band " << rr.excluded_band << " excluded):\n"
        << "  rms_90 = " << rr.rms_90 << "\n"
        << "  rms_45 = " << rr.rms_45 << "  (" << rr.caveat << ")\n";
  }

  json rc = {{"field", a.field},   {"bank", a.bank},   {"levels", a.levels}, {"alpha1", a.alpha1},
             {"alpha0", a.alpha0}, {"iters", a.iters}, {"rotation", a.rotation}, {"seed", a.seed}};
  write_run_manifest(a.out, "consistency-check", rc,
                     {{"K", tgv::bank_hash(banks.K)}, {"L", tgv::bank_hash(banks.L)}});
  return 0;
}

// Missing config keys fall back silently; CLI flags always win because they
// are applied after this.
template <typename T>
void from_config(const json& cfg, const char* key, T& value) {
  if (cfg.contains(key)) value = cfg.at(key).get<T>();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Learned interpolation-filter discretization of second-order TGV"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  app.fallthrough();

  std::string config_path;
  app.add_option("--config", config_path, "JSON config file (flags override it)");
  int threads = 0;
  app.add_option("--threads", threads, "cap worker threads (0 = library default)");

  DenoiseArgs da;
  CLI::App* denoise = app.add_subcommand("denoise", "TGV-denoise a grayscale PNG");
  denoise->add_option("--in", da.in, "input image")->required();
  denoise->add_option("--out", da.out, "output image")->required();
  denoise->add_option("--ref", da.ref, "reference image for metrics");
  denoise->add_option("--bank", da.bank, "identity | handcrafted:L3K1 | handcrafted:L4K4 | dir");
  auto* d_a1 = denoise->add_option("--alpha1", da.alpha1, "first-order weight");
  auto* d_a0 = denoise->add_option("--alpha0", da.alpha0, "second-order weight");
  auto* d_it = denoise->add_option("--iters", da.iters, "primal-dual iterations");
  denoise->add_option("--bits", da.bits, "output bit depth (8|16)");
  denoise->add_flag("--luma", da.luma, "accept color input, convert to luma");

  GenArgs ga;
  CLI::App* gen = app.add_subcommand("gen-data", "generate a dataset with a manifest");
  gen->add_option("--kind", ga.kind, "synthetic | textured | natural");
  gen->add_option("--out", ga.out, "output directory")->required();
  gen->add_option("--src", ga.src, "source directory for --kind natural");
  auto* g_count = gen->add_option("--count", ga.count, "number of images");
  auto* g_size = gen->add_option("--size", ga.size, "image side length");
  gen->add_option("--seed", ga.seed, "root seed");
  auto* g_sigma = gen->add_option("--sigma", ga.sigma, "noise level on the 0-255 scale");
  gen->add_flag("--pseudo-gt", ga.pseudo_gt, "also compute fine-grid pseudo ground truths");
  gen->add_option("--alpha1", ga.alpha1, "pseudo-gt first-order weight");
  gen->add_option("--alpha0", ga.alpha0, "pseudo-gt second-order weight");
  auto* g_gti = gen->add_option("--gt-iters", ga.gt_iters, "pseudo-gt solver iterations");
  gen->add_option("--gt-bank", ga.gt_bank, "bank for the pseudo ground truth");

  TrainArgs ta;
  CLI::App* train = app.add_subcommand("train", "learn interpolation filters");
  train->add_option("--data", ta.data, "dataset manifest")->required();
  train->add_option("--out", ta.out, "output directory")->required();
  train->add_option("--nk", ta.nk, "number of K filters");
  train->add_option("--nl", ta.nl, "number of L filters");
  train->add_option("--nu", ta.nu, "filter support radius");
  auto* t_outer = train->add_option("--outer", ta.outer, "outer iterations");
  auto* t_inner = train->add_option("--inner", ta.inner, "inner piggyback iterations");
  auto* t_lr = train->add_option("--lr", ta.lr, "Adam learning rate");
  train->add_option("--alpha1", ta.alpha1, "first-order weight");
  train->add_option("--alpha0", ta.alpha0, "second-order weight");
  train->add_option("--constraint", ta.constraint, "sum1 | gamma");
  train->add_flag("--symmetric", ta.symmetric, "closed under 90-degree rotations");
  train->add_option("--seed", ta.seed, "init seed");
  train->add_option("--input-field", ta.input_field, "corrupted | clean");
  train->add_option("--ref-field", ta.ref_field, "target | clean");
  train->add_flag("--quiet", ta.quiet, "suppress progress lines");

  EvalArgs ea;
  CLI::App* eval = app.add_subcommand("eval", "batch-evaluate methods against references");
  eval->add_option("--data", ea.data, "dataset manifest")->required();
  eval->add_option("--out", ea.out, "output directory")->required();
  eval->add_option("--methods", ea.methods, "name=bankspec;name2=bankspec2")->required();
  eval->add_option("--alpha1", ea.alpha1, "first-order weight");
  eval->add_option("--alpha0", ea.alpha0, "second-order weight");
  auto* e_it = eval->add_option("--iters", ea.iters, "solver iterations");
  eval->add_option("--input-field", ea.input_field, "corrupted | clean");
  eval->add_option("--ref-field", ea.ref_field, "target | clean");

  ConsArgs ca;
  CLI::App* cons = app.add_subcommand("consistency-check", "grid-refinement study");
  cons->add_option("--field", ca.field, "affine | affine_plus_sine | smooth_bump");
  cons->add_option("--bank", ca.bank, "bank spec");
  cons->add_option("--out", ca.out, "output directory")->required();
  cons->add_option("--levels", ca.levels, "comma-separated grid sizes");
  cons->add_option("--alpha1", ca.alpha1, "first-order weight");
  cons->add_option("--alpha0", ca.alpha0, "second-order weight");
  auto* c_it = cons->add_option("--iters", ca.iters, "solver iterations per level");
  cons->add_flag("--rotation", ca.rotation, "also run the rotation diagnostic");
  cons->add_option("--rot-size", ca.rot_size, "image size for the rotation diagnostic");
  cons->add_option("--rot-iters", ca.rot_iters, "iterations for the rotation diagnostic");
  cons->add_option("--seed", ca.seed, "seed for the diagnostic image");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    tgv::set_thread_cap(threads);
    const json cfg = load_config_json(config_path);
    // config file fills anything the command line left at its default
    if (!cfg.empty()) {
      if (!d_a1->count()) from_config(cfg, "alpha1", da.alpha1);
      if (!d_a0->count()) from_config(cfg, "alpha0", da.alpha0);
      if (!d_it->count()) from_config(cfg, "iters", da.iters);
      if (!g_count->count()) from_config(cfg, "count", ga.count);
      if (!g_size->count()) from_config(cfg, "size", ga.size);
      if (!g_sigma->count()) from_config(cfg, "sigma", ga.sigma);
      if (!g_gti->count()) from_config(cfg, "gt_iters", ga.gt_iters);
      if (!t_outer->count()) from_config(cfg, "outer", ta.outer);
      if (!t_inner->count()) from_config(cfg, "inner", ta.inner);
      if (!t_lr->count()) from_config(cfg, "lr", ta.lr);
      if (!e_it->count()) from_config(cfg, "iters", ea.iters);
      if (!c_it->count()) from_config(cfg, "iters", ca.iters);
    }
    if (denoise->parsed()) return cmd_denoise(da);
    if (gen->parsed()) return cmd_gen_data(ga);
    if (train->parsed()) return cmd_train(ta);
    if (eval->parsed()) return cmd_eval(ea);
    if (cons->parsed()) return cmd_consistency(ca);
    return 2;
  } catch (const CliError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code;
  } catch (const tgv::SolverDivergence& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
