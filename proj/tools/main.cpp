// Copyright 2026 The crossqasm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "crossqasm/campaign.hpp"
#include "crossqasm/subprocess.hpp"

namespace cq = crossqasm;

namespace {

struct Overrides {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::size_t> programs;
  std::optional<std::size_t> iterations;
  std::optional<std::string> adapters;
  std::vector<std::string> subprocesses;
  std::optional<std::size_t> k;
  std::optional<double> tolerance;
  std::optional<std::size_t> workers;
  std::optional<double> timeout;
  bool no_reduce = false;
};

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

cq::CampaignConfig build_config(const Overrides& o) {
  cq::CampaignConfig c = o.config.empty() ? cq::CampaignConfig{} : cq::load_config(o.config);
  if (o.seed) c.seed = *o.seed;
  if (o.out) c.out_dir = *o.out;
  if (o.programs) c.ite.max_classes = *o.programs;
  if (o.iterations) c.ite.iterations = *o.iterations;
  if (o.adapters) c.ite.adapters = split_commas(*o.adapters);
  for (const auto& entry : o.subprocesses) {
    const auto eq = entry.find('=');
    if (eq == std::string::npos || eq == 0) throw cq::ConfigError("--subprocess expects ID=COMMAND");
    cq::AdapterSpec s;
    s.id = entry.substr(0, eq);
    s.kind = cq::AdapterSpec::Kind::Subprocess;
    s.command = entry.substr(eq + 1);
    c.extra_adapters.push_back(s);
    c.ite.adapters.push_back(s.id);
  }
  if (o.k) c.oracle.k = *o.k;
  if (o.tolerance) c.oracle.tolerance = *o.tolerance;
  if (o.workers) c.workers = *o.workers;
  if (o.timeout) {
    c.timeout_secs = *o.timeout;
    for (auto& s : c.extra_adapters) {
      if (s.kind == cq::AdapterSpec::Kind::Subprocess) s.timeout_secs = *o.timeout;
    }
  }
  if (o.no_reduce) c.triage.reduce = false;
  c.sync_seed();
  cq::validate_campaign(c);
  return c;
}

void add_common(CLI::App* app, Overrides& o) {
  app->add_option("--config", o.config, "JSON campaign config");
  app->add_option("--seed", o.seed, "Campaign seed");
  app->add_option("--out", o.out, "Output directory");
  app->add_option("--programs", o.programs, "Number of programs");
  app->add_option("--adapters", o.adapters, "Comma-separated adapter ids");
  app->add_option("--subprocess", o.subprocesses, "Subprocess adapter as ID=COMMAND (repeatable)");
  app->add_option("--workers", o.workers, "Worker threads");
  app->add_option("--timeout-secs", o.timeout, "Per-request timeout for subprocess adapters");
}

void print_summary(const cq::CampaignResult& r, const cq::CampaignConfig& c) {
  const auto& n = r.counts;
  std::cout << "programs " << n.programs << ", members " << n.members << ", crashes " << n.crashes
            << ", inequivalences " << n.inequivalences << ", undecided " << n.undecided << ", clusters "
            << n.clusters << "\n";
  std::cout << "timing: generator " << cq::format_double(r.fractions.generator) << ", ite "
            << cq::format_double(r.fractions.ite) << ", detection " << cq::format_double(r.fractions.detection)
            << "\n";
  std::cout << "report: " << (c.out_dir / "report.json").string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cross-platform OpenQASM 2.0 toolchain fuzzer"};
  app.set_version_flag("--version", std::string(cq::kVersion));
  app.require_subcommand(1);

  Overrides gen_o;
  auto* gen = app.add_subcommand("generate", "Write seed programs only");
  add_common(gen, gen_o);

  Overrides fuzz_o;
  auto* fuzz = app.add_subcommand("fuzz", "Run a full campaign");
  add_common(fuzz, fuzz_o);
  fuzz->add_option("--iterations", fuzz_o.iterations, "ITE iterations per program");
  fuzz->add_option("--k", fuzz_o.k, "Oracle pairs per class");
  fuzz->add_option("--tolerance", fuzz_o.tolerance, "Equivalence tolerance");
  fuzz->add_flag("--no-reduce", fuzz_o.no_reduce, "Skip test-case reduction");

  std::string check_dir;
  std::size_t check_k = 5;
  double check_tol = cq::kDefaultTolerance;
  auto* check = app.add_subcommand("check", "Re-run the equivalence oracle over a campaign directory");
  check->add_option("dir", check_dir, "Campaign directory")->required();
  check->add_option("--k", check_k, "Pairs per class");
  check->add_option("--tolerance", check_tol, "Equivalence tolerance");

  std::string reduce_dir;
  std::size_t reduce_id = 0;
  auto* reduce = app.add_subcommand("reduce", "Reduce one warning");
  reduce->add_option("dir", reduce_dir, "Campaign directory")->required();
  reduce->add_option("--warning", reduce_id, "Warning id")->required();

  std::string report_dir;
  auto* report = app.add_subcommand("report", "Print the campaign report");
  report->add_option("dir", report_dir, "Campaign directory")->required();

  std::string serve_id;
  auto* serve = app.add_subcommand("serve", "Serve an adapter over the JSON-lines protocol on stdin/stdout");
  serve->add_option("--adapter", serve_id, "Builtin adapter id")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*gen) {
      const auto c = build_config(gen_o);
      const auto n = cq::generate_programs(c, c.ite.max_classes, std::cerr);
      std::cout << "wrote " << n << " programs under " << (c.out_dir / "programs").string() << "\n";
      return 0;
    }
    if (*fuzz) {
      const auto c = build_config(fuzz_o);
      const auto r = cq::run_campaign(c);
      print_summary(r, c);
      return r.warnings.empty() ? 0 : 1;
    }
    if (*check) {
      const auto r = cq::check_directory(check_dir, check_k, check_tol);
      std::size_t crashes = 0;
      for (const auto& w : r.warnings) crashes += w.kind == cq::Warning::Kind::Crash;
      std::cout << "pairs " << r.pairs_checked << ", inequivalences " << r.warnings.size() - crashes
                << ", unparsable " << crashes << ", undecided " << r.undecided << "\n";
      return r.warnings.empty() ? 0 : 1;
    }
    if (*reduce) {
      std::cout << cq::print(cq::reduce_warning(reduce_dir, reduce_id));
      return 0;
    }
    if (*report) {
      std::cout << cq::load_report(report_dir).dump(2) << "\n";
      return 0;
    }
    if (*serve) {
      auto spec = cq::builtin_spec(serve_id);
      if (!spec) throw cq::ConfigError("unknown adapter '" + serve_id + "'");
      auto adapter = cq::make_adapter(*spec);
      cq::serve_protocol(*adapter, std::cin, std::cout);
      return 0;
    }
  } catch (const cq::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const cq::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const cq::SignalNotReproducible& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
