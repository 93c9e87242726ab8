#include <CLI11.hpp>
#include <iostream>

#include "commands.hpp"
#include "common.hpp"
#include "evego/errors.hpp"

namespace {

const char* kind_name(evego::ErrorKind kind) {
  switch (kind) {
    case evego::ErrorKind::Usage:
      return "usage";
    case evego::ErrorKind::Data:
      return "data";
    case evego::ErrorKind::Numeric:
      return "numeric";
  }
  return "unknown";
}

void emit_error(const std::string& kind, const std::string& what) {
  evego::cli::json line;
  line["error"] = what;
  line["kind"] = kind;
  std::cerr << line.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deterministic toolkit for egocentric event-camera motion capture"};
  app.require_subcommand(1);
  app.set_config("--config", "", "INI config file; command-line flags override its values");
  app.failure_message(CLI::FailureMessage::help);

  evego::cli::register_events(app);
  evego::cli::register_lnes(app);
  evego::cli::register_camera(app);
  evego::cli::register_calib(app);
  evego::cli::register_visibility(app);
  evego::cli::register_eval(app);
  evego::cli::register_simulate(app);
  evego::cli::register_pipeline(app);

  try {
    app.parse(argc, argv);
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    emit_error("usage", e.what());
    return static_cast<int>(evego::ErrorKind::Usage);
  } catch (const evego::Error& e) {
    emit_error(kind_name(e.kind()), e.what());
    return static_cast<int>(e.kind());
  } catch (const std::exception& e) {
    emit_error("data", e.what());
    return static_cast<int>(evego::ErrorKind::Data);
  }
}
