#include <iostream>
#include <map>

#include "commands.hpp"
#include "flipcenter/errors.hpp"

int main(int argc, char** argv) {
  using namespace flipcenter;
  CLI::App app{"Center triangulations under parallel flips: solve, verify, measure, generate, score, draw."};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("flipcenter ") + cli::kVersion);

  const std::vector<std::string> args(argv, argv + argc);
  std::map<CLI::App*, cli::Handler> handlers;
  auto remember = [&](cli::Handler h) { handlers[app.get_subcommands({}).back()] = std::move(h); };
  remember(cli::add_solve(app, args));
  remember(cli::add_verify(app));
  remember(cli::add_distance(app));
  remember(cli::add_generate(app));
  remember(cli::add_score(app));
  remember(cli::add_draw(app));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitInput;
  }

  try {
    for (auto* sub : app.get_subcommands()) return handlers.at(sub)();
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitInput;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitInput;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitInput;
  } catch (const DegenerateInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitInput;
  } catch (const DuplicatePoint& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitRejected;
  }
  return cli::kExitInput;
}
