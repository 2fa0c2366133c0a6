// Command-line driver: loads a workspace document, dispatches one command,
// and prints the report. Exit codes: 0 every check holds, 1 a check failed
// (or a stored witness did not reproduce), 2 input error (unreadable or
// invalid documents, unknown commands or entries, shape mismatches).
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hvdc/cli.hpp"

namespace {

hvdc::Report read_report(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw hvdc::InputError("cannot read file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text.str());
  } catch (const nlohmann::ordered_json::exception& e) {
    throw hvdc::InputError(path + ": parse error: " + e.what());
  }
  return hvdc::report_from_json(j);
}

void write_text(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw hvdc::InputError("cannot write file '" + out_path + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Checks and constructions for set-valued profunctors between finite "
      "categories: composites, restrictions, companions, tabulations, Kan "
      "extensions, Day convolution, and their universal-property verdicts."};
  app.footer(
      "Verdicts: holds_exact is theorem-backed, holds_bounded is quantified\n"
      "over the verification context (--ctx / --path-len), fails carries a\n"
      "witness. The enumeration budget honors the HVDC_MAX_ENUM environment\n"
      "variable. Exit codes: 0 all checks hold, 1 a check failed, 2 input\n"
      "error.");

  std::string workspace_path;
  app.add_option("workspace", workspace_path, "workspace document (JSON)")->required();
  std::vector<std::string> command;
  app.add_option("command", command,
                 "command and its arguments (validate, compose, restrict, companion, "
                 "conjoint, unit, tabulate, cotabulate, kan, weighted-colim, dense, "
                 "yoneda-check, curry, day, monoidal-yoneda, bc-check, doctrinal, "
                 "lift-kan, check-cartesian, check-cocartesian, check-pointwise)");

  std::string ctx_name;
  auto* ctx_opt = app.add_option("--ctx", ctx_name, "named context entry to quantify over");
  std::size_t path_len = 0;
  auto* path_opt = app.add_option("--path-len", path_len, "override the context's path bound");
  std::size_t arity = 0;
  auto* arity_opt = app.add_option("--arity", arity, "lower the monoidal arity bound");
  std::uint64_t seed = 0;
  auto* seed_opt = app.add_option("--seed", seed, "echoed into the report for reproducibility");
  std::string format = "text";
  app.add_option("--format", format, "report rendering")
      ->check(CLI::IsMember({"text", "json"}));
  std::string witness_path;
  auto* witness_opt =
      app.add_option("--verify-witness", witness_path,
                     "re-run the command stored in this report and require a bit-exact match");
  std::string save_path;
  auto* save_opt =
      app.add_option("--save", save_path, "write the canonical form of the workspace");
  std::string out_path;
  app.add_option("--out", out_path, "write the report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const hvdc::Workspace ws = hvdc::load_workspace(workspace_path);
    if (*save_opt) hvdc::save_workspace(ws, save_path);

    hvdc::RunOptions opt;
    if (*ctx_opt) opt.ctx = ctx_name;
    if (*path_opt) opt.path_len = path_len;
    if (*arity_opt) opt.arity = arity;
    if (*seed_opt) opt.seed = seed;

    if (*witness_opt) {
      if (!command.empty()) {
        throw hvdc::InputError("--verify-witness re-runs the stored command; drop the "
                               "command positional");
      }
      const hvdc::Report stored = read_report(witness_path);
      const bool same = hvdc::verify_witness(stored, ws);
      std::cout << "re-ran: " << stored.command() << "\n"
                << (same ? "witness verified: the stored report reproduces bit-exactly"
                         : "witness mismatch: the stored report does not match the re-run")
                << "\n";
      return same ? 0 : 1;
    }

    if (command.empty()) {
      if (*save_opt) return 0;
      throw hvdc::InputError("no command given (try --help)");
    }
    const std::string name = command.front();
    const std::vector<std::string> args(command.begin() + 1, command.end());
    const hvdc::Report report = hvdc::run(name, args, ws, opt);
    write_text(format == "json" ? hvdc::report_json(report).dump(2) + "\n"
                                : hvdc::report_text(report),
               out_path);
    return report.ok() ? 0 : 1;
  } catch (const hvdc::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
