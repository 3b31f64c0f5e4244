#include <CLI11.hpp>

#include <iostream>

#include "commands.hpp"
#include "qkflag/errors.hpp"

using namespace qkflag;
using namespace qkflag::cli;

int main(int argc, char** argv) {
  CLI::App app{"Presentations, Schubert classes and Toda Hamiltonians of quantum K rings of flag varieties"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format;
  Globals g;
  app.add_option("--format", format, "json, latex or text")->check(CLI::IsMember({"json", "latex", "text"}));
  app.add_option("--q-cap", g.q_cap, "maximal Q-degree of results (default n)");
  app.add_flag("--sl", g.sl, "apply T1...Tn -> 1 to the output");
  app.add_option("--seed", g.seed, "seed of the property suite");

  std::string shape, flavor = "toda";

  auto* present = app.add_subcommand("present", "emit the relations of a presentation");
  present->add_option("--shape", shape, "r1,...,rk;n")->required();
  present->add_option("--flavor", flavor, "toda, whitney or toda-p");

  std::optional<std::string> word, element;
  auto* schubert = app.add_subcommand("schubert", "emit a Schubert representative");
  schubert->add_option("--shape", shape)->required();
  schubert->add_option("--word", word, "delta operators applied in order to the point class, e.g. 2,1")->expected(0, 1);
  schubert->add_option("--element", element, "class by partition (2,1) or one-line [1,3,2]");

  std::string a, b;
  auto* multiply = app.add_subcommand("multiply", "quantum product and Schubert expansion");
  multiply->add_option("--shape", shape)->required();
  multiply->add_option("--a", a, "partition, one-line element or delta chain")->required();
  multiply->add_option("--b", b)->required();
  multiply->add_option("--flavor", flavor, "toda, whitney or toda-p");

  std::string poly;
  auto* expand = app.add_subcommand("expand", "Schubert expansion of a polynomial in e_l(X^(j)), T and Q");
  expand->add_option("--shape", shape)->required();
  expand->add_option("--poly", poly, "e.g. \"eX1_1*eX1_2 - T1\"")->required();
  expand->add_option("--flavor", flavor, "toda, whitney or toda-p");

  int n = 0, k = 0;
  std::string what = "all";
  auto* toda = app.add_subcommand("toda-ham", "Toda Hamiltonians, symbols and commutators");
  toda->add_option("--n", n)->required();
  toda->add_option("--k", k, "single Hamiltonian (default all)");
  toda->add_option("--what", what, "operators, symbols, commutators, eigenvalues or all");

  std::string suite = "all", filter, fixtures;
  auto* verify = app.add_subcommand("verify", "run fixtures and property suites");
  verify->add_option("--suite", suite, "golden, properties, toda-ham or all");
  verify->add_option("--filter", filter, "only checks whose id contains this");
  verify->add_option("--fixtures", fixtures, "fixture directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? Ok : Usage;
  }

  bool is_verify = verify->parsed();
  if (format.empty()) g.format = is_verify ? Format::Text : Format::Json;
  else g.format = format == "json" ? Format::Json : format == "latex" ? Format::Latex : Format::Text;

  try {
    if (present->parsed()) return cmd_present(g, shape, flavor, std::cout);
    if (schubert->parsed()) return cmd_schubert(g, shape, word, element, std::cout);
    if (multiply->parsed()) return cmd_multiply(g, shape, a, b, flavor, std::cout);
    if (expand->parsed()) return cmd_expand(g, shape, poly, flavor, std::cout);
    if (toda->parsed()) return cmd_toda_ham(g, n, k, what, std::cout);
    if (is_verify) return cmd_verify(g, suite, filter, fixtures, std::cout);
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Cap;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Usage;
  } catch (const InvalidShape& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Usage;
  } catch (const IndexOutOfRange& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Usage;
  } catch (const ShapeMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Usage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return Failed;
  }
  return Usage;
}
