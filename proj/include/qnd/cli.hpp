#pragma once

#include <string>
#include <vector>

namespace qnd::cli {

// Exit codes: 0 ok, 1 verification failure, 2 file error, 3 parse/usage
// error, 4 invalid model.
constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitFile = 2;
constexpr int kExitParse = 3;
constexpr int kExitModel = 4;

int run(const std::vector<std::string>& args);

}  // namespace qnd::cli
