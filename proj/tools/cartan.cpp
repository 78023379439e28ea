// Command-line front end; the work happens in cartan::run.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cartan/report.hpp"

namespace {

std::vector<double> parse_csv(const std::string& s) {
  std::vector<double> out;
  std::istringstream in(s);
  for (std::string item; std::getline(in, item, ',');) {
    std::size_t used = 0;
    out.push_back(std::stod(item, &used));
    if (used != item.size()) throw cartan::UsageError("bad number '" + item + "' in --point");
  }
  return out;
}

cartan::Params parse_params(const std::vector<std::string>& items) {
  cartan::Params out;
  for (const std::string& group : items) {
    std::istringstream in(group);
    for (std::string kv; std::getline(in, kv, ',');) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw cartan::UsageError("--params expects key=value, got '" + kv + "'");
      out[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cartan realization problems as G-structure algebroids"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(cartan::tool_version));

  std::string config_path, format, out, model, point, flow_section;
  std::vector<std::string> params;
  double tol = 0, quad_tol = 0, rank_tol = 0, rationality_tol = 0, c1 = 0, c2 = 0, a = 0, b = 0, t = 0;
  std::int64_t bound = 0;
  std::uint64_t seed = 0;
  int samples = 0, grid = 0;

  auto* o_config = app.add_option("--config", config_path, "JSON config; explicit flags take precedence");
  auto* o_format = app.add_option("--format", format, "json or text");
  auto* o_out = app.add_option("--out", out, "Report path (default: standard output)");
  auto* o_seed = app.add_option("--seed", seed, "Sampling seed");
  auto* o_tol = app.add_option("--tol", tol, "Identity tolerance (default by model)");
  auto* o_quad = app.add_option("--quad-tol", quad_tol, "Relative quadrature tolerance");
  auto* o_rank = app.add_option("--rank-tol", rank_tol, "Relative singular-value threshold");
  auto* o_bound = app.add_option("--denominator-bound", bound, "Largest denominator in rationality tests");
  auto* o_rat = app.add_option("--rationality-tol", rationality_tol, "Residual tolerance |q x - p|");

  std::vector<std::string> command;
  std::vector<CLI::Option*> model_opts, params_opts, c1_opts, c2_opts;
  auto add_model = [&](CLI::App* sub) {
    model_opts.push_back(sub->add_option("--model", model, "Built-in model name"));
    params_opts.push_back(sub->add_option("--params", params, "Model parameters key=value[,key=value]"));
  };
  auto add_levels = [&](CLI::App* sub) {
    c1_opts.push_back(sub->add_option("--c1", c1, "Level of I1")->required());
    c2_opts.push_back(sub->add_option("--c2", c2, "Level of I2")->required());
  };

  auto* verify = app.add_subcommand("verify", "Check the algebroid identities of a model");
  add_model(verify);
  auto* o_samples = verify->add_option("--samples", samples, "Sample points");

  auto* leaf = app.add_subcommand("leaf", "Leaf rank, isotropy and invariant drift at a point");
  add_model(leaf);
  auto* o_point = leaf->add_option("--point", point, "Base point, comma separated")->required();
  auto* o_flow = leaf->add_option("--flow-section", flow_section, "Flow along a constant section e1|e2|e3");
  auto* o_t = leaf->add_option("--t", t, "Flow time");

  auto* mono = app.add_subcommand("monodromy", "Monodromy and U(1)-monodromy of the leaves of a level set");
  add_model(mono);
  add_levels(mono);

  auto* complete = app.add_subcommand("complete", "Completeness of the leaves of a level set");
  add_model(complete);
  add_levels(complete);

  auto* ek = app.add_subcommand("ek", "Extremal Kahler surfaces");
  ek->require_subcommand(1);
  auto* classify = ek->add_subcommand("classify", "Leaves of the level set {I1 = c1, I2 = c2}");
  add_levels(classify);
  auto* table1 = ek->add_subcommand("table1", "Table of 1-connected solutions");
  auto* su21 = ek->add_subcommand("su21", "su(2,1) transversal at u = 0");
  auto* o_a = su21->add_option("--a", a, "Diagonal coordinate a")->required();
  auto* o_b = su21->add_option("--b", b, "Diagonal coordinate b (K = 3b/2)")->required();
  auto* sweep = ek->add_subcommand("sweep", "Classify a grid of level sets over [-2,2]^2");
  auto* o_grid = sweep->add_option("--grid", grid, "Grid points per axis");

  for (CLI::App* sub : {verify, leaf, mono, complete, ek, classify, table1, su21, sweep}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  for (CLI::App* sub : app.get_subcommands()) {
    command.push_back(sub->get_name());
    for (CLI::App* inner : sub->get_subcommands()) command.push_back(inner->get_name());
  }
  auto given = [](const std::vector<CLI::Option*>& opts) {
    for (auto* o : opts) {
      if (o->count() > 0) return true;
    }
    return false;
  };

  try {
    cartan::RunConfig config;
    if (o_config->count() > 0) {
      std::ifstream in(config_path);
      if (!in) throw cartan::UsageError("cannot read config " + config_path);
      nlohmann::json j;
      try {
        in >> j;
      } catch (const nlohmann::json::exception& e) {
        throw cartan::UsageError(std::string("config is not valid JSON: ") + e.what());
      }
      cartan::apply_config_json(config, j);
    }
    cartan::apply_environment(config, [](const char* name) { return std::getenv(name); });
    config.command = command;
    if (given(model_opts)) config.model = model;
    if (given(params_opts)) config.params = parse_params(params);
    if (given(c1_opts)) config.c1 = c1;
    if (given(c2_opts)) config.c2 = c2;
    if (o_a->count() > 0) config.a = a;
    if (o_b->count() > 0) config.b = b;
    if (o_point->count() > 0) config.point = parse_csv(point);
    if (o_flow->count() > 0) config.flow_section = flow_section;
    if (o_t->count() > 0) config.flow_time = t;
    if (o_samples->count() > 0) config.samples = samples;
    if (o_grid->count() > 0) config.grid = grid;
    if (o_seed->count() > 0) config.seed = seed;
    if (o_tol->count() > 0) config.tol.identity = tol;
    if (o_quad->count() > 0) config.tol.quad = quad_tol;
    if (o_rank->count() > 0) config.tol.rank = rank_tol;
    if (o_bound->count() > 0) config.tol.denominator_bound = bound;
    if (o_rat->count() > 0) config.tol.rationality = rationality_tol;
    if (o_format->count() > 0) config.format = format;
    if (o_out->count() > 0) config.out = out;

    const cartan::RunResult result = cartan::run(config);
    const std::string text = cartan::render(result);
    if (config.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream file(config.out, std::ios::binary);
      if (!file) throw cartan::UsageError("cannot write " + config.out);
      file << text;
    }
    return result.exit_code;
  } catch (const cartan::UsageError& e) {
    std::cerr << "cartan: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "cartan: bad number: " << e.what() << '\n';
    return 2;
  } catch (const cartan::Error& e) {
    std::cerr << "cartan: " << e.what() << '\n';
    return 1;
  }
}
