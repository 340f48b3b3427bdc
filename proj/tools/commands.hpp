#pragma once

#include <string>
#include <vector>

#include <CLI11.hpp>

namespace flipcenter::cli {

inline constexpr const char* kVersion = "0.1.0";

/// Each registers its subcommand and returns a handler that yields the exit
/// code once parsing has succeeded.
using Handler = std::function<int()>;

Handler add_solve(CLI::App& app, const std::vector<std::string>& argv);
Handler add_verify(CLI::App& app);
Handler add_distance(CLI::App& app);
Handler add_generate(CLI::App& app);
Handler add_score(CLI::App& app);
Handler add_draw(CLI::App& app);

/// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitRejected = 1;
inline constexpr int kExitInput = 2;

}  // namespace flipcenter::cli
