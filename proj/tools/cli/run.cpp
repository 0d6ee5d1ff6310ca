#include <filesystem>
#include <functional>
#include <map>

#include <CLI11.hpp>

#include "cli/commands.hpp"

namespace abstractpose::cli {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Abstract-image pose toolkit: render, encode, decode and evaluate synthetic poses."};
  app.name("abstractpose");

  const std::map<std::string, std::function<CommandResult(const Manifest&)>> commands{
      {"render", cmd_render}, {"encode", cmd_encode},   {"decode", cmd_decode},
      {"roundtrip", cmd_roundtrip}, {"metrics", cmd_metrics}, {"ablate", cmd_ablate}};

  std::string command;
  std::string manifest_path;
  std::optional<std::uint64_t> seed;
  std::string camera;
  std::string out_dir;
  std::optional<int> workers;
  app.add_option("command", command, "render | encode | decode | roundtrip | metrics | ablate")
      ->required()
      ->check(CLI::IsMember({"render", "encode", "decode", "roundtrip", "metrics", "ablate"}));
  app.add_option("--manifest", manifest_path, "JSON run manifest");
  app.add_option("--seed", seed, "seed for camera and part sampling");
  app.add_option("--camera", camera, "\"i,j\" or \"random\"");
  app.add_option("--out-dir", out_dir, "output directory");
  app.add_option("--workers", workers, "worker threads");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    Manifest m;
    if (!manifest_path.empty()) m = read_manifest(manifest_path);
    if (seed) m.seed = *seed;
    if (!camera.empty()) m.camera = parse_camera(camera);
    if (!out_dir.empty()) m.out_dir = out_dir;
    if (workers) m.workers = *workers;
    m.validate();

    const CommandResult r = commands.at(command)(m);
    for (const std::string& w : r.warnings) err << "warning: " << w << "\n";
    out << command << ": " << r.frames << " frame(s), " << r.outputs << " file(s) written, "
        << r.warnings.size() << " warning(s)\n";
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::kIo ? 2 : 1;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace abstractpose::cli
