#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "gerbekit/corpus.hpp"
#include "gerbekit/error.hpp"
#include "pipeline.hpp"

using namespace gerbekit;
using cli::json;

namespace {

int report_error(const Error& e, json report) {
  report["error"] = std::string(to_string(e.kind()));
  report["message"] = e.what();
  std::cout << report.dump(2) << "\n";
  std::cerr << "error: " << e.what() << "\n";
  return cli::exit_code(e.kind());
}

void write_outputs(const std::string& dir, const cli::Result& r) {
  io::Workspace ws(dir);
  for (const auto& [name, doc] : r.artifacts) {
    ws.put(name, doc);
    io::write_file(ws.root() / (name + ".json"), doc);
  }
  for (const auto& [name, text] : r.texts) std::ofstream(ws.root() / name) << text;
  ws.put("report", r.report);
  io::write_file(ws.root() / "report.json", r.report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gerbekit: finite 2-group bundles, extensions and their cohomology"};
  app.require_subcommand(1);

  cli::Options opt;
  std::optional<std::size_t> cap;
  std::vector<std::string> inputs;
  std::string pipeline, out_dir;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--prime", opt.prime, "Coefficient prime p < 256")->capture_default_str();
    sub->add_option("--degree", opt.degree, "Cohomological degree")->capture_default_str();
    sub->add_option("--max-dim", opt.max_dim, "Top nerve dimension")->capture_default_str();
    sub->add_option("--budget", opt.budget, "Search budget for 2-transformations")->capture_default_str();
    sub->add_option("--cap", cap, "Enumeration cap (overrides GERBEKIT_CAP)");
    sub->add_option("--character", opt.character, "Index of the character G → Z/p")->capture_default_str();
  };

  auto* validate = app.add_subcommand("validate", "Run the full invariant scan on an object file");
  validate->add_option("input", inputs, "File, corpus:<name>, cyclic:<n> or symmetric:<k>")->required();

  auto* run = app.add_subcommand("run", "Run a pipeline and write its artifacts");
  run->add_option("pipeline", pipeline, "Pipeline name")->required()->check(CLI::IsMember(cli::pipeline_names()));
  run->add_option("inputs", inputs, "Input files or corpus:<name>")->required();
  run->add_option("--out", out_dir, "Workspace directory for artifacts and the report");
  add_common(run);
  add_common(validate);

  auto* list = app.add_subcommand("list", "List pipelines and corpus extensions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  if (cap) setenv("GERBEKIT_CAP", std::to_string(*cap).c_str(), 1);

  if (list->parsed()) {
    json out = {{"pipelines", cli::pipeline_names()}};
    json names = json::array();
    for (const auto& n : corpus::extensions()) names.push_back(n.name);
    out["corpus"] = std::move(names);
    std::cout << out.dump(2) << "\n";
    return 0;
  }

  if (validate->parsed()) {
    json report = {{"command", "validate"}, {"input", inputs}, {"results", json::array()}};
    try {
      for (const auto& in : inputs) report["results"].push_back(cli::validate_document(cli::load_input(in)));
    } catch (const Error& e) {
      report["valid"] = false;
      return report_error(e, report);
    }
    report["valid"] = true;
    std::cout << report.dump(2) << "\n";
    return 0;
  }

  json report = {{"command", "run"}, {"pipeline", pipeline}};
  try {
    std::vector<json> docs;
    for (const auto& in : inputs) docs.push_back(cli::load_input(in));
    auto r = cli::run_pipeline(pipeline, docs, opt);
    if (!out_dir.empty()) write_outputs(out_dir, r);
    std::cout << r.report.dump(2) << "\n";
  } catch (const Error& e) {
    return report_error(e, report);
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
