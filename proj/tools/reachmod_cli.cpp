#include <CLI11.hpp>

#include <iostream>

#include "reachmod/commands.hpp"

int main(int argc, char** argv) {
  using reachmod::cli::Method;

  CLI::App app{"Maximal reachability submodules of linear systems over polynomial rings"};
  app.require_subcommand(1);

  reachmod::cli::RunOptions options;
  std::string method = "kernel";
  std::string order = "grevlex";
  std::string output = "text";
  std::string path;

  struct Spec {
    const char* name;
    const char* help;
  };
  const Spec specs[] = {
      {"maxreach", "Print the maximal reachability submodule of M"},
      {"kernel", "Print the reduced Groebner basis of ker [yE - A, -B]"},
      {"curly-m", "Print generators of ker [yE - A, -B] cap (M[y] x R[y]^m)"},
      {"invariant-check", "Report whether M is (A,B)-invariant"},
      {"compare", "Run both procedures, check they agree and report timings"},
      {"oracle", "Field case: compare both procedures with the classical algorithms"},
  };
  for (const auto& spec : specs) {
    CLI::App* sub = app.add_subcommand(spec.name, spec.help);
    sub->add_option("file", path, "System file (YAML or JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--method", method, "Procedure for maxreach")
        ->check(CLI::IsMember({"kernel", "iterative"}));
    sub->add_option("--order", order, "Monomial order")->check(CLI::IsMember({"grevlex", "lex"}));
    sub->add_option("--output", output, "Output format")
        ->check(CLI::IsMember({"text", "structured"}));
    sub->add_option("--cap", options.pair_cap, "Maximum number of processed S-pairs");
    sub->add_option("--chain-cap", options.chain_cap, "Maximum iterations of the S_k/W_k chains");
    sub->add_flag("--verify", options.verify, "Check the reachability certificate");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : reachmod::cli::kUsage;
  }

  options.method = method == "iterative" ? Method::Iterative : Method::Kernel;
  options.order = *reachmod::parse_monomial_order(order);
  options.structured = output == "structured";
  const std::string command = app.get_subcommands().front()->get_name();
  return reachmod::cli::run(command, path, options, std::cout, std::cerr);
}
