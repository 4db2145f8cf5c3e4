// Command-line front end: load structures, run verifications, compute
// brackets, fields and flows, emit reports and derived structures.
//
// Exit codes: 0 all checks passed, 1 a verification check failed,
// 2 input or usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "jacobikit/catalog.hpp"
#include "jacobikit/chardist.hpp"
#include "jacobikit/errors.hpp"
#include "jacobikit/homogenize.hpp"
#include "jacobikit/limits.hpp"
#include "jacobikit/structure.hpp"

using namespace jacobikit;

namespace {

struct GlobalOptions {
  RunConfig cfg;
  bool machine = false;
};

std::vector<double> parse_point(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(cell, &used));
      if (used != cell.size()) throw Error("bad coordinate value `" + cell + "`");
    } catch (const std::exception&) {
      throw Error("bad coordinate value `" + cell + "`");
    }
  }
  if (out.empty()) throw Error("empty point");
  return out;
}

void emit_structure(const PartialJacobiStructure& s, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << structure_to_json(s).dump(2) << "\n";
  } else {
    save_structure_file(s, out_path);
  }
}

std::string short_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

nlohmann::ordered_json config_json(const GlobalOptions& opt) {
  nlohmann::ordered_json j;
  j["seed"] = opt.cfg.seed;
  j["samples"] = opt.cfg.samples;
  j["tol"] = short_double(opt.cfg.tol);
  j["trials"] = opt.cfg.trials;
  j["deg"] = opt.cfg.degree;
  return j;
}

std::string config_human(const GlobalOptions& opt) {
  std::ostringstream os;
  os << "seed: " << opt.cfg.seed << "  samples: " << opt.cfg.samples
     << "  tol: " << short_double(opt.cfg.tol) << "  trials: " << opt.cfg.trials
     << "  deg: " << opt.cfg.degree;
  return os.str();
}

int report_command(const GlobalOptions& opt, const std::string& command,
                   const PartialJacobiStructure& s, const VerificationReport& report) {
  if (opt.machine) {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["structure"] = s.name;
    j["dimension"] = s.dim();
    j["flat"] = s.flat;
    j["config"] = config_json(opt);
    auto r = render_json(report);
    j["checks"] = r["checks"];
    j["overall"] = r["overall"];
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "structure: " << (s.name.empty() ? "<unnamed>" : s.name) << " (dimension "
              << s.dim() << ", flat {";
    for (std::size_t i = 0; i < s.flat.size(); ++i) {
      if (i) std::cout << ",";
      std::cout << s.flat[i];
    }
    std::cout << "})\n" << config_human(opt) << "\n" << render_human(report);
  }
  return report.all_passed() ? 0 : 1;
}

PartialJacobiStructure catalog_by_name(const std::string& name, int param,
                                       const std::string& constants_path) {
  if (name == "standard") return standard_jacobi(param);
  if (name == "contact") return contact_canonical(param);
  if (name == "one-jet") return one_jet(param);
  if (name == "cosymplectic") return cosymplectic_extended_cotangent(param).structure;
  if (name == "lie-poisson") {
    if (constants_path.empty()) return lie_poisson(StructureConstants::so3());
    std::ifstream in(constants_path);
    if (!in) throw Error("cannot read constants file `" + constants_path + "`");
    nlohmann::json doc;
    try {
      in >> doc;
    } catch (const nlohmann::json::exception& e) {
      throw Error("invalid constants document: " + std::string(e.what()));
    }
    if (!doc.is_object() || !doc.contains("dimension") || !doc.contains("entries")) {
      throw Error("constants document needs `dimension` and `entries`");
    }
    const int n = doc["dimension"].get<int>();
    if (n < 1) throw Error("constants dimension must be positive");
    std::vector<Rational> c(static_cast<std::size_t>(n) * n * n, Rational(0));
    ChartPtr scratch = make_chart({"v"});
    for (const auto& entry : doc["entries"]) {
      if (!entry.is_array() || entry.size() != 4) {
        throw Error("constants entries must be [i, j, k, value]");
      }
      const int i = entry[0].get<int>();
      const int j = entry[1].get<int>();
      const int k = entry[2].get<int>();
      if (i < 0 || i >= n || j < 0 || j >= n || k < 0 || k >= n) {
        throw Error("constants entry index out of range");
      }
      const Expr v = parse_expr(entry[3].get<std::string>(), scratch);
      if (!is_constant(v)) throw Error("constants entries must be rational literals");
      c[(static_cast<std::size_t>(i) * n + j) * n + k] = v->value;
      c[(static_cast<std::size_t>(j) * n + i) * n + k] = -v->value;
    }
    return lie_poisson(StructureConstants(n, std::move(c)));
  }
  throw Error("unknown catalog name `" + name +
              "` (expected standard|contact|one-jet|cosymplectic|lie-poisson)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"partial Jacobi structure toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions opt;
  app.add_option("--seed", opt.cfg.seed, "RNG seed for sampling and random test functions")
      ->envname("JACOBI_KIT_SEED");
  app.add_option("--samples", opt.cfg.samples, "sample count for the sampled backend")
      ->check(CLI::PositiveNumber);
  app.add_option("--tol", opt.cfg.tol, "relative tolerance for sampled checks")
      ->check(CLI::PositiveNumber);
  app.add_option("--trials", opt.cfg.trials, "random trials per randomized check")
      ->check(CLI::PositiveNumber);
  app.add_option("--deg", opt.cfg.degree, "degree bound for random test polynomials")
      ->check(CLI::NonNegativeNumber);
  app.add_flag("--machine", opt.machine, "machine-readable JSON output");
  app.add_flag_callback(
      "--serial", [&opt]() { opt.cfg.exec = ExecPolicy::Serial; },
      "disable parallel kernels");

  std::string path;
  std::string out_path;
  std::string f_text;
  std::string g_text;

  auto* cmd_verify = app.add_subcommand("verify", "run the structure verification suite");
  cmd_verify->add_option("path", path, "structure file")->required();

  auto* cmd_bracket = app.add_subcommand("bracket", "Jacobi bracket of two functions");
  cmd_bracket->add_option("path", path)->required();
  cmd_bracket->add_option("f", f_text, "first function")->required();
  cmd_bracket->add_option("g", g_text, "second function")->required();

  auto* cmd_ham = app.add_subcommand("hamiltonian", "Hamiltonian field of a function");
  cmd_ham->add_option("path", path)->required();
  cmd_ham->add_option("f", f_text, "function")->required();

  auto* cmd_poiss = app.add_subcommand("poissonize", "homogeneous Poisson structure on M x R");
  cmd_poiss->add_option("path", path)->required();
  cmd_poiss->add_option("-o,--out", out_path, "output structure file (default stdout)");
  bool poiss_verify = false;
  cmd_poiss->add_flag("--verify", poiss_verify, "also run the homogeneous checks");

  auto* cmd_conf = app.add_subcommand("conformal", "conformal transform by a factor");
  cmd_conf->add_option("path", path)->required();
  cmd_conf->add_option("phi", f_text, "conformal factor")->required();
  cmd_conf->add_option("-o,--out", out_path, "output structure file (default stdout)");

  auto* cmd_rank = app.add_subcommand("rank", "characteristic distribution rank at points");
  cmd_rank->add_option("path", path)->required();
  std::vector<std::string> point_texts;
  cmd_rank->add_option("--point", point_texts, "evaluation point, comma-separated")->required();
  double rank_tol = 1e-8;
  cmd_rank->add_option("--rank-tol", rank_tol, "singular value cutoff");
  bool rank_image = false;
  cmd_rank->add_flag("--image", rank_image, "rank of im Lambda# instead of the full family span");

  auto* cmd_flow = app.add_subcommand("flow", "integrate a Hamiltonian field");
  cmd_flow->set_help_flag("--help", "print help");  // frees -h / --h for the step size
  cmd_flow->add_option("path", path)->required();
  std::string h_text;
  std::string from_text;
  double duration = 1.0;
  double step = 1e-2;
  std::string conserve_text;
  cmd_flow->add_option("--H", h_text, "Hamiltonian function")->required();
  cmd_flow->add_option("--from", from_text, "initial point, comma-separated")->required();
  cmd_flow->add_option("--T", duration, "duration")->required();
  cmd_flow->add_option("--h", step, "step size")->required();
  cmd_flow->add_option("--conserve", conserve_text, "function whose drift along the flow is reported");
  cmd_flow->add_option("-o,--out", out_path, "trajectory file (default stdout)");

  auto* cmd_catalog = app.add_subcommand("catalog", "emit a built-in structure");
  std::string catalog_name;
  int catalog_param = 1;
  std::string constants_path;
  cmd_catalog->add_option("name", catalog_name, "standard|contact|one-jet|cosymplectic|lie-poisson")
      ->required();
  cmd_catalog->add_option("param", catalog_param, "size parameter (ignored for lie-poisson)");
  cmd_catalog->add_option("--constants", constants_path, "structure constants file for lie-poisson");
  cmd_catalog->add_option("-o,--out", out_path, "output structure file (default stdout)");

  auto* cmd_cyl = app.add_subcommand("cyl-bracket", "bracket of two cylindrical functions");
  int level_f = 0;
  int level_g = 0;
  cmd_cyl->add_option("level-f", level_f, "truncation level of f")->required();
  cmd_cyl->add_option("f", f_text, "first function")->required();
  cmd_cyl->add_option("level-g", level_g, "truncation level of g")->required();
  cmd_cyl->add_option("g", g_text, "second function")->required();

  auto* cmd_map = app.add_subcommand("map-check", "Jacobi map verification");
  std::string dst_path;
  std::string map_text;
  int tests = 0;
  cmd_map->add_option("src", path, "source structure file")->required();
  cmd_map->add_option("dst", dst_path, "target structure file")->required();
  cmd_map->add_option("--map", map_text, "target coordinates over the source chart, comma-separated")
      ->required();
  cmd_map->add_option("--tests", tests, "number of random pairs (default --trials)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const ZeroPolicy policy = opt.cfg.zero_policy();

  try {
    if (cmd_verify->parsed()) {
      const auto s = load_structure_file(path, policy);
      return report_command(opt, "verify", s, verify_structure(s, opt.cfg));
    }

    if (cmd_bracket->parsed()) {
      const auto s = load_structure_file(path, policy);
      const Expr f = s.parse_on_chart(f_text);
      const Expr g = s.parse_on_chart(g_text);
      const Expr result = jacobi_bracket(s, f, g, policy);
      if (opt.machine) {
        nlohmann::ordered_json j;
        j["command"] = "bracket";
        j["structure"] = s.name;
        j["f"] = f_text;
        j["g"] = g_text;
        j["result"] = to_string(result);
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << to_string(result) << "\n";
      }
      return 0;
    }

    if (cmd_ham->parsed()) {
      const auto s = load_structure_file(path, policy);
      const Expr f = s.parse_on_chart(f_text);
      const auto comps = hamiltonian_field(s, f, policy).components();
      if (opt.machine) {
        nlohmann::ordered_json j;
        j["command"] = "hamiltonian";
        j["structure"] = s.name;
        j["f"] = f_text;
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& c : comps) arr.push_back(to_string(c));
        j["components"] = arr;
        std::cout << j.dump(2) << "\n";
      } else {
        for (int i = 0; i < s.dim(); ++i) {
          std::cout << "d/d" << s.chart->name(i) << ": " << to_string(comps[static_cast<std::size_t>(i)])
                    << "\n";
        }
      }
      return 0;
    }

    if (cmd_poiss->parsed()) {
      const auto s = load_structure_file(path, policy);
      const auto hps = poissonize(s);
      emit_structure(hps.hat, out_path);
      if (poiss_verify) {
        const auto report = verify_homogeneous(hps, opt.cfg);
        if (!opt.machine) std::cout << render_human(report);
        return report.all_passed() ? 0 : 1;
      }
      return 0;
    }

    if (cmd_conf->parsed()) {
      const auto s = load_structure_file(path, policy);
      const Expr phi = s.parse_on_chart(f_text);
      emit_structure(conformal_transform(s, phi, opt.cfg), out_path);
      return 0;
    }

    if (cmd_rank->parsed()) {
      const auto s = load_structure_file(path, policy);
      std::vector<std::vector<double>> points;
      for (const auto& pt : point_texts) points.push_back(parse_point(pt));
      if (rank_image || points.size() > 1) {
        VerificationReport report = csi_probe(s, points, rank_tol);
        return report_command(opt, "rank", s, report);
      }
      const auto probe = make_standard_probe(s, points.front(), rank_tol, policy);
      const int r = char_rank(probe, policy);
      if (opt.machine) {
        nlohmann::ordered_json j;
        j["command"] = "rank";
        j["structure"] = s.name;
        j["rank"] = r;
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << r << "\n";
      }
      return 0;
    }

    if (cmd_flow->parsed()) {
      const auto s = load_structure_file(path, policy);
      const Expr H = s.parse_on_chart(h_text);
      const auto x0 = parse_point(from_text);
      const Trajectory tr = flow(s, H, x0, duration, step, policy);

      double drift = 0.0;
      bool have_drift = false;
      if (!conserve_text.empty()) {
        const Expr C = s.parse_on_chart(conserve_text);
        const double c0 = evaluate(C, tr.samples.front().state);
        for (const auto& smp : tr.samples) {
          drift = std::max(drift, std::abs(evaluate(C, smp.state) - c0));
        }
        have_drift = true;
      }

      const std::string table = trajectory_to_tsv(tr);
      if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw Error("cannot write trajectory file `" + out_path + "`");
        out << table;
      }
      if (opt.machine) {
        nlohmann::ordered_json j;
        j["command"] = "flow";
        j["structure"] = s.name;
        j["H"] = h_text;
        j["steps"] = tr.samples.size() - 1;
        j["final_time"] = format_double(tr.samples.back().time);
        j["integrator"] = tr.integrator;
        j["error_estimate"] = format_double(tr.error_estimate);
        j["aborted"] = tr.aborted;
        if (have_drift) j["drift"] = format_double(drift);
        if (out_path.empty()) j["trajectory"] = table;
        std::cout << j.dump(2) << "\n";
      } else {
        if (out_path.empty()) std::cout << table;
        std::cout << "steps: " << tr.samples.size() - 1 << "  final time: "
                  << format_double(tr.samples.back().time)
                  << "  error estimate: " << format_double(tr.error_estimate) << "\n";
        if (have_drift) std::cout << "drift of " << conserve_text << ": " << format_double(drift) << "\n";
        if (tr.aborted) std::cout << "aborted: non-finite state\n";
      }
      return tr.aborted ? 1 : 0;
    }

    if (cmd_catalog->parsed()) {
      emit_structure(catalog_by_name(catalog_name, catalog_param, constants_path), out_path);
      return 0;
    }

    if (cmd_cyl->parsed()) {
      const auto f = parse_cylindrical(level_f, f_text);
      const auto g = parse_cylindrical(level_g, g_text);
      const auto result = cyl_bracket(f, g, policy);
      if (opt.machine) {
        nlohmann::ordered_json j;
        j["command"] = "cyl-bracket";
        j["level"] = result.level;
        j["result"] = to_string(result.fn);
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "level " << result.level << ": " << to_string(result.fn) << "\n";
      }
      return 0;
    }

    if (cmd_map->parsed()) {
      const auto src = load_structure_file(path, policy);
      const auto dst = load_structure_file(dst_path, policy);
      std::vector<Expr> map;
      std::stringstream ss(map_text);
      std::string cell;
      while (std::getline(ss, cell, ',')) map.push_back(src.parse_on_chart(cell));
      const int pair_count = tests > 0 ? tests : opt.cfg.trials;
      VerificationReport report = jacobi_map_check(src, dst, map, pair_count, opt.cfg);
      return report_command(opt, "map-check", src, report);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
