// dpz command-line front end. Flags become key=value config lines handed to
// the C API, so the CLI and library runs are configured identically.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dpz/dpz.h"

namespace {

const char* status_name(int code) {
  switch (code) {
    case DPZ_ERR_CONFIG: return "config";
    case DPZ_ERR_BUDGET: return "budget";
    case DPZ_ERR_MODEL: return "model";
    default: return "internal";
  }
}

int report_error(int code, const std::string& message) {
  nlohmann::ordered_json j;
  j["error"] = status_name(code);
  j["code"] = code;
  j["message"] = message;
  std::cerr << j.dump() << "\n";
  return code;
}

struct Flag {
  std::string key;
  std::string value;
  CLI::Option* opt = nullptr;
};

struct Command {
  CLI::App* app = nullptr;
  std::vector<Flag> flags;
};

// flag name on the command line -> config key
const std::map<std::string, std::string> kKeyOf = {
    {"q", "q"},           {"r", "r"},           {"model", "model"},       {"mode", "mode"},
    {"budget", "budget"}, {"D", "D"},           {"class", "class"},       {"a", "a"},
    {"a-prime", "a_prime"}, {"k", "k"},         {"hmax", "hmax"},         {"mmax", "mmax"},
    {"n-max", "n_max"},   {"cone", "cone"},     {"include-zero", "include_zero"},
    {"qsym", "qsym"},     {"exact", "exact"},   {"virtual", "virtual"},   {"convention", "convention"},
    {"max-exact-bits", "max_exact_bits"}};

void add_flags(Command& cmd, const std::vector<std::string>& names) {
  cmd.flags.reserve(names.size());
  for (const auto& n : names) {
    cmd.flags.push_back({kKeyOf.at(n), "", nullptr});
    Flag& f = cmd.flags.back();
    f.opt = cmd.app->add_option("--" + n, f.value, "config key " + f.key);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Counting rational curves on split del Pezzo surfaces over finite fields"};
  app.require_subcommand(1);
  std::string format = "csv", output, config_file;
  unsigned threads = 1;
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--threads", threads, "worker threads; output does not depend on it");
  app.add_option("--output,-o", output, "write the report here instead of stdout");
  app.add_option("--config", config_file, "key=value file; flags override its entries");

  const std::vector<std::string> common = {"q", "r", "max-exact-bits"};
  const std::vector<std::string> counting = {"model", "mode", "budget"};
  std::map<std::string, std::vector<std::string>> spec = {
      {"count", {"D", "class", "a", "a-prime", "k", "exact", "virtual", "convention"}},
      {"scan", {"D", "hmax", "cone", "include-zero", "convention"}},
      {"converge", {"D", "class", "mmax"}},
      {"audit-upper", {"hmax", "cone"}},
      {"limits", {"D", "n-max"}},
      {"tamagawa", {"D"}},
      {"cones", {}},
      {"admissible", {"class", "qsym"}}};
  const std::map<std::string, std::string> help = {
      {"count", "exact and virtual counts for one class"},
      {"scan", "count table over the classes of a cone"},
      {"converge", "ratio #Mor(m alpha)/q^(m h) against tau"},
      {"audit-upper", "upper-bound audit over regime classes"},
      {"limits", "zeta coefficient limits and the tau identity"},
      {"tamagawa", "truncated Tamagawa number"},
      {"cones", "(-1)-classes, conics and blow-down data"},
      {"admissible", "theorem constants for a class and field size"}};

  std::map<std::string, Command> commands;
  for (auto& [name, extra] : spec) {
    Command& c = commands[name];
    c.app = app.add_subcommand(name, help.at(name));
    std::vector<std::string> names = common;
    bool needs_model = name == "count" || name == "scan" || name == "converge" || name == "audit-upper";
    if (needs_model) names.insert(names.end(), counting.begin(), counting.end());
    names.insert(names.end(), extra.begin(), extra.end());
    add_flags(c, names);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error(DPZ_ERR_CONFIG, e.what());
  }

  std::map<std::string, std::string> cfg;
  if (!config_file.empty()) {
    std::ifstream in(config_file);
    if (!in) return report_error(DPZ_ERR_CONFIG, "cannot read config file " + config_file);
    std::string line;
    while (std::getline(in, line)) {
      auto eq = line.find('=');
      if (line.empty() || line[0] == '#' || eq == std::string::npos) {
        if (!line.empty() && line[0] != '#') return report_error(DPZ_ERR_CONFIG, "config line '" + line + "' is not key=value");
        continue;
      }
      cfg[line.substr(0, eq)] = line.substr(eq + 1);
    }
  }
  for (auto& [name, c] : commands) {
    if (!c.app->parsed()) continue;
    cfg["command"] = name;
    for (const auto& f : c.flags)
      if (f.opt->count()) cfg[f.key] = f.value;
  }
  cfg["threads"] = std::to_string(threads);

  std::string text;
  for (const auto& [k, v] : cfg) text += k + "=" + v + "\n";

  dpz_report* report = nullptr;
  int st = dpz_run(text.c_str(), &report);
  if (st != DPZ_OK) return report_error(st, dpz_last_error());
  char* rendered = nullptr;
  st = dpz_report_text(report, format.c_str(), &rendered);
  dpz_report_free(report);
  if (st != DPZ_OK) return report_error(st, dpz_last_error());
  std::string out_text = rendered;
  dpz_free_string(rendered);

  if (output.empty()) {
    std::cout << out_text;
    std::cout.flush();
    if (!std::cout) return report_error(DPZ_ERR_CONFIG, "cannot write to stdout");
  } else {
    std::ofstream out(output, std::ios::binary);
    out << out_text;
    if (!out) return report_error(DPZ_ERR_CONFIG, "cannot write " + output);
  }
  return 0;
}
