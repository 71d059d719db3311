#include "cli.hpp"

#include <charconv>
#include <filesystem>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "oamw/bench.hpp"
#include "oamw/overlap.hpp"
#include "oamw/pgm.hpp"
#include "oamw/witnesses.hpp"
#include "output.hpp"

namespace oamw::cli {
namespace {

struct Pair {
  double ell1 = 0.0, alpha1 = 0.0, ell2 = 0.0, alpha2 = 0.0;

  double& param(const std::string& name) {
    if (name == "ell1") return ell1;
    if (name == "alpha1") return alpha1;
    if (name == "ell2") return ell2;
    if (name == "alpha2") return alpha2;
    throw std::invalid_argument("unknown sweep parameter '" + name + "'");
  }
  double param(const std::string& name) const { return const_cast<Pair&>(*this).param(name); }
  FracModeSpec a() const { return {ell1, alpha1}; }
  FracModeSpec b() const { return {ell2, alpha2}; }
};

struct Sweep {
  std::string name;
  double start = 0.0, stop = 0.0;
  int count = 0;

  double at(int i) const { return count == 1 ? start : start + (stop - start) * i / (count - 1); }
};

double parse_double(std::string_view s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw std::invalid_argument("bad number '" + std::string(s) + "'");
  return v;
}

// name=start:stop:count
Sweep parse_sweep(const std::string& text) {
  const auto eq = text.find('=');
  const auto c1 = text.find(':', eq);
  const auto c2 = c1 == std::string::npos ? c1 : text.find(':', c1 + 1);
  if (eq == std::string::npos || c2 == std::string::npos) throw std::invalid_argument("sweep must look like name=start:stop:count");
  Sweep s{text.substr(0, eq), parse_double(text.substr(eq + 1, c1 - eq - 1)),
          parse_double(text.substr(c1 + 1, c2 - c1 - 1)), 0};
  const double count = parse_double(text.substr(c2 + 1));
  if (count < 1 || count != static_cast<int>(count)) throw std::invalid_argument("sweep count must be a positive integer");
  s.count = static_cast<int>(count);
  Pair probe;
  probe.param(s.name);
  return s;
}

std::vector<Pair> expand(const Pair& base, const std::optional<Sweep>& sweep) {
  if (!sweep) return {base};
  std::vector<Pair> out;
  for (int i = 0; i < sweep->count; ++i) {
    Pair p = base;
    p.param(sweep->name) = sweep->at(i);
    out.push_back(p);
  }
  return out;
}

void add_pair_options(CLI::App* cmd, Pair& p) {
  cmd->add_option("--ell1", p.ell1, "charge of the first state");
  cmd->add_option("--alpha1", p.alpha1, "discontinuity orientation of the first state (rad)");
  cmd->add_option("--ell2", p.ell2, "charge of the second state");
  cmd->add_option("--alpha2", p.alpha2, "discontinuity orientation of the second state (rad)");
}

int cmd_overlap(const Pair& base, const std::optional<Sweep>& sweep) {
  if (sweep) {
    Csv csv({"param", "r"});
    for (const auto& p : expand(base, sweep)) csv.row({p.param(sweep->name), overlap_sq(p.a(), p.b())});
    std::cout << csv.str();
    return 0;
  }
  const auto v = complex_overlap(base.a(), base.b());
  nlohmann::json j{{"ell1", base.ell1}, {"alpha1", base.alpha1}, {"ell2", base.ell2}, {"alpha2", base.alpha2},
                   {"beta", v.beta},    {"r", overlap_sq(base.a(), base.b())},     {"re", v.value.real()},
                   {"im", v.value.imag()}};
  std::cout << j.dump(2) << '\n';
  return 0;
}

OverlapTriple triple_from_flags(const std::vector<double>& r, const std::vector<std::string>& states) {
  if (!states.empty()) {
    if (states.size() != 3) throw std::invalid_argument("--from-states needs exactly three ELL,ALPHA pairs");
    std::vector<FracModeSpec> specs;
    for (const auto& s : states) {
      const auto comma = s.find(',');
      if (comma == std::string::npos) throw std::invalid_argument("state '" + s + "' must be ELL,ALPHA");
      specs.emplace_back(parse_double(s.substr(0, comma)), parse_double(s.substr(comma + 1)));
    }
    return triple_from_states(specs[0], specs[1], specs[2]);
  }
  OverlapTriple t{r[0], r[1], r[2]};
  t.validate();
  return t;
}

struct BenchArgs {
  int n = 1024;
  double extent_waists = 16.0;
  int kick_index = 0;
  std::string synthesis = "exact";
  std::string dump_dir;
  std::string import_path;
};

BenchConfig bench_config(const BenchArgs& args) {
  BenchConfig cfg = BenchConfig::defaults(args.n, args.extent_waists);
  if (args.kick_index != 0) cfg.kick_index = args.kick_index;
  if (args.synthesis.rfind("lg:", 0) == 0) {
    const double modes = parse_double(args.synthesis.substr(3));
    if (modes != static_cast<int>(modes)) throw std::invalid_argument("--synthesis lg:N needs an integer N");
    cfg.synthesis = LgTruncated{static_cast<int>(modes)};
  } else if (args.synthesis != "exact") {
    throw std::invalid_argument("--synthesis must be 'exact' or 'lg:N'");
  }
  cfg.validate();
  return cfg;
}

void dump_images(const Interferogram& img, const std::filesystem::path& dir, const std::string& stem) {
  std::filesystem::create_directories(dir);
  save_interferogram(img, dir / (stem + "_interferogram.pgm"));
  save_spectrum_image(spectrum(std::span<const double>(img.intensity), img.config.grid.n), dir / (stem + "_spectrum.pgm"));
}

int cmd_bench(const Pair& base, const std::optional<Sweep>& sweep, const BenchArgs& args) {
  if (!args.import_path.empty()) {
    const auto img = load_interferogram(args.import_path);
    const auto e = extract(img);
    nlohmann::json j{{"bench", e.overlap}, {"raw", e.raw}, {"separation", e.separation}, {"separation_ok", e.separation_ok}};
    std::cout << j.dump(2) << '\n';
    return e.separation_ok ? 0 : 3;
  }
  const BenchConfig cfg = bench_config(args);
  const auto pairs = expand(base, sweep);
  Csv csv({"param", "analytic", "bench", "abs_error", "separation"});
  nlohmann::json single;
  bool ok = true;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& p = pairs[i];
    const auto img = interfere(synthesize(p.a(), cfg), synthesize(p.b(), cfg), cfg);
    const auto e = extract(img);
    const double analytic = overlap_sq(p.a(), p.b());
    ok = ok && e.separation_ok;
    if (!args.dump_dir.empty()) dump_images(img, args.dump_dir, sweep ? "point" + std::to_string(i) : "bench");
    if (sweep) {
      csv.row({p.param(sweep->name), analytic, e.overlap, std::abs(e.overlap - analytic), e.separation});
    } else {
      single = {{"analytic", analytic},           {"bench", e.overlap},
                {"raw", e.raw},                   {"abs_error", std::abs(e.overlap - analytic)},
                {"separation", e.separation},     {"separation_ok", e.separation_ok},
                {"out_of_range", e.out_of_range}, {"config", config_to_json(cfg)}};
    }
  }
  std::cout << (sweep ? csv.str() : single.dump(2) + "\n");
  if (!ok) std::cerr << "separation diagnostic failed (threshold " << num(kSeparationThreshold) << ")\n";
  return ok ? 0 : 3;
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{"Fractional OAM overlap, witness and virtual-bench toolkit", "oamw"};
  app.set_version_flag("--version", OAMW_VERSION);
  app.set_config("--config", "", "key=value file; keys are <command>.<flag> or grouped under [command]");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);

  Pair pair;
  std::string sweep_text;

  auto* overlap = app.add_subcommand("overlap", "analytic overlap of two fractional modes");
  add_pair_options(overlap, pair);
  overlap->add_option("--sweep", sweep_text, "name=start:stop:count, emits CSV");

  std::vector<double> r(3, -1.0);
  std::vector<std::string> states;
  auto* witness = app.add_subcommand("witness", "region memberships and witness distances of an overlap triple");
  auto* r_ab = witness->add_option("--r-ab", r[0]);
  auto* r_bc = witness->add_option("--r-bc", r[1]);
  auto* r_ac = witness->add_option("--r-ac", r[2]);
  auto* from_states = witness->add_option("--from-states", states, "three ELL,ALPHA pairs")->expected(3);
  for (auto* opt : {r_ab, r_bc, r_ac}) {
    opt->excludes(from_states);
  }
  r_ab->needs(r_bc, r_ac);
  r_bc->needs(r_ab, r_ac);
  r_ac->needs(r_ab, r_bc);

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "overlap recovered from a simulated single-image interferogram");
  add_pair_options(bench, pair);
  bench->add_option("--sweep", sweep_text, "name=start:stop:count, emits CSV");
  bench->add_option("--n", bench_args.n, "samples per side")->capture_default_str();
  bench->add_option("--extent-waists", bench_args.extent_waists, "grid side in waists")->capture_default_str();
  bench->add_option("--kick-index", bench_args.kick_index, "fringe index k0 (default n/8)");
  bench->add_option("--synthesis", bench_args.synthesis, "exact or lg:N")->capture_default_str();
  bench->add_option("--dump-dir", bench_args.dump_dir, "write PGM interferogram and spectrum images here");
  bench->add_option("--import", bench_args.import_path, "reprocess a stored PGM (with .json sidecar)")->check(CLI::ExistingFile);

  ReproduceArgs rep;
  auto* reproduce_cmd = app.add_subcommand("reproduce", "emit plot-ready artifacts for one figure or table");
  reproduce_cmd->add_option("--target", rep.target)->required()->check(CLI::IsMember(kTargets));
  reproduce_cmd->add_option("--out", rep.out)->capture_default_str();
  reproduce_cmd->add_option("--seed", rep.seed)->envname("OAMW_SEED")->capture_default_str();
  reproduce_cmd->add_option("--jobs", rep.jobs)->check(CLI::PositiveNumber)->capture_default_str();
  reproduce_cmd->add_option("--n", rep.n, "bench grid size")->capture_default_str();
  reproduce_cmd->add_option("--budget", rep.budget, "evaluations per search")->check(CLI::Range(1000L, 100000000L))->capture_default_str();
  reproduce_cmd->add_option("--resolution", rep.resolution, "boundary bins")->check(CLI::Range(64, 100000))->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    std::optional<Sweep> sweep;
    if (!sweep_text.empty()) sweep = parse_sweep(sweep_text);
    if (overlap->parsed()) return cmd_overlap(pair, sweep);
    if (witness->parsed()) {
      if (states.empty() && r_ab->count() == 0) throw std::invalid_argument("give --r-ab/--r-bc/--r-ac or --from-states");
      nlohmann::json j = classify_region(triple_from_flags(r, states));
      std::cout << j.dump(2) << '\n';
      return 0;
    }
    if (bench->parsed()) return cmd_bench(pair, sweep, bench_args);
    return reproduce(rep);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const SeparationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace oamw::cli
