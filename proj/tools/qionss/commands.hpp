#pragma once

#include <iosfwd>
#include <optional>
#include <string>

namespace qionss::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitVerifyFailed = 1,
    kExitConfigError = 2,
    kExitPhysicsError = 3,
};

struct CommandOptions {
    std::optional<std::string> out_path;       // CSV destination (stdout when empty)
    std::optional<std::string> envelope_path;  // run metadata destination (stderr when empty)
    unsigned threads = 0;                      // 0 = auto
};

int cmd_model(const std::string& config_path, const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_freq(const std::string& config_path, const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_time(const std::string& config_path, const CommandOptions& opts, std::ostream& out, std::ostream& err);

struct RosettaOptions {
    double v0_mag = 0.0;
    double v0_phase = 0.0;
    double omega = 0.0;
    double cprime = 0.0;
    double ell = 0.0;
    double z0 = 0.0;
    std::string direction = "right";
    bool invert = false;
};

int cmd_rosetta(const RosettaOptions& opts, std::ostream& out, std::ostream& err);

int cmd_verify(bool inject_b_sign_fault, unsigned threads, std::ostream& out, std::ostream& err);

// Full command-line entry point (argv[0] is the program name).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Formats with 17 significant digits; negative zero prints as 0.
std::string fmt_num(double x);

}  // namespace qionss::cli
