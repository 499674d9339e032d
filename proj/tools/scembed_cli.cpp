// scembed command line: family, nets, label, present, verify, pipeline.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "scembed/scembed.h"

namespace {

struct Flags {
  std::string config_path;
  std::optional<std::string> mode;
  std::optional<std::size_t> max_stage;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<unsigned> workers;
  std::optional<std::string> space;
  bool print_config = false;
};

int report_error(sce_status s) {
  std::cerr << "scembed: " << sce_last_error() << "\n";
  return static_cast<int>(s);
}

std::vector<std::pair<std::string, std::string>> patches(const Flags& f) {
  using nlohmann::json;
  std::vector<std::pair<std::string, std::string>> out;
  if (f.max_stage) out.emplace_back("max_stage", json(*f.max_stage).dump());
  if (f.seed) out.emplace_back("seed", json(*f.seed).dump());
  if (f.out) out.emplace_back("out", json(*f.out).dump());
  if (f.workers) out.emplace_back("workers", json(*f.workers).dump());
  if (f.space) out.emplace_back("space", json(*f.space).dump());
  return out;
}

int run(const Flags& flags, const std::string& command) {
  std::string config = "{}";
  if (!flags.config_path.empty()) {
    std::ifstream in(flags.config_path, std::ios::binary);
    if (!in) {
      std::cerr << "scembed: cannot read config '" << flags.config_path << "'\n";
      return SCE_INPUT_ERROR;
    }
    std::ostringstream s;
    s << in.rdbuf();
    config = s.str();
  }

  // The mode flag goes in first so that other keys are checked against its defaults.
  sce_session* session = nullptr;
  sce_status st = SCE_OK;
  if (flags.mode) {
    auto doc = nlohmann::json::parse(config, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) {
      std::cerr << "scembed: config '" << flags.config_path << "' is not a JSON object\n";
      return SCE_INPUT_ERROR;
    }
    doc["mode"] = *flags.mode;
    config = doc.dump();
  }
  st = sce_session_create(config.c_str(), &session);
  if (st != SCE_OK) return report_error(st);

  for (const auto& [key, value] : patches(flags)) {
    st = sce_session_set(session, key.c_str(), value.c_str());
    if (st != SCE_OK) break;
  }

  if (st == SCE_OK && flags.print_config) {
    char* text = nullptr;
    st = sce_session_config_json(session, &text);
    if (st == SCE_OK) {
      std::cout << text << "\n";
      sce_free(text);
    }
  } else if (st == SCE_OK) {
    st = sce_run(session, command.c_str());
    char* text = nullptr;
    if ((st == SCE_OK || st == SCE_VERIFY_FAILED) && sce_session_report_json(session, &text) == SCE_OK) {
      std::cout << text << "\n";
      sce_free(text);
    }
  }

  int code = static_cast<int>(st);
  if (st != SCE_OK) report_error(st);
  sce_session_destroy(session);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Embeds finite metric stages into asymptotic cones of two-generator groups"};
  app.require_subcommand(0, 1);
  Flags flags;

  auto add_flags = [&flags](CLI::App* a) {
    a->add_option("--config", flags.config_path, "JSON config file");
    a->add_option("--mode", flags.mode, "strict or relaxed")->check(CLI::IsMember({"strict", "relaxed"}));
    a->add_option("--max-stage", flags.max_stage, "last stage to build");
    a->add_option("--seed", flags.seed, "seed for sampled checks");
    a->add_option("--out", flags.out, "artifact directory");
    a->add_option("--workers", flags.workers, "worker threads");
    a->add_option("--space", flags.space, "space file");
    a->add_flag("--print-config", flags.print_config, "print the effective config and exit");
  };
  add_flags(&app);

  std::string command;
  const std::vector<std::pair<std::string, std::string>> subcommands = {
      {"family", "materialize words of T(n) for family_lengths"},
      {"nets", "build nets of the configured space"},
      {"label", "choose scaling and label net edges (reads nets.json)"},
      {"present", "emit relators (reads labels.json)"},
      {"verify", "check labels and presentation (reads labels and presentation)"},
      {"pipeline", "run every step"},
  };
  for (const auto& [name, help] : subcommands) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_flags(sub);
    sub->callback([&command, n = name] { command = n; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : SCE_INPUT_ERROR;
  }
  if (command.empty() && !flags.print_config) {
    std::cerr << app.help();
    return SCE_INPUT_ERROR;
  }
  return run(flags, command.empty() ? "pipeline" : command);
}
