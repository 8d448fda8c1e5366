#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace ctxelim {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;  // parse or usage error
inline constexpr int kExitFailed = 2;  // elimination failure

// Runs "ctxelim <args...>" (args exclude the program name).
//
//   eliminate --input FILE [--method kaykobad|lp|auto] [--sample "x=0,z=0"]
//             [--seed N] [--json] [--boolean] [--in-context]
//   compose FIRST SECOND [--internal o,...] [--method M]
//   quotient SYSTEM FIRST --inputs o,... --outputs o',... [--name M2] [--method M]
//   bench [--N 10] [--vars 5,10] [--irrelevant 2] [--trials 50] [--seed 1]
//         [--method kaykobad] [--mode antecedent] [--reps 5]
//   verify FILE
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct VerifyResult {
  bool ok = true;
  std::size_t checked = 0;
  std::string error;  // first rejected certificate, when !ok
};

// Re-checks every certificate of an `eliminate --json` document from the
// document alone: lambda >= 0, B_J^T lambda = +/-q, and, when the source
// atoms and context are present, that B_J, b_J, q and the result atom follow
// from them. Throws std::invalid_argument on malformed input.
VerifyResult verify_certificates(std::string_view json_text);

}  // namespace ctxelim
