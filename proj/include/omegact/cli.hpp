#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace omegact
{
  /// Exit codes shared by every subcommand.
  enum ExitCode : int
  {
    kYes = 0,       // holds, valid, provable, member
    kNo = 1,        // counterexample, rejected, not a member
    kUnknown = 2,   // search bound exhausted or schema-grade certificate
    kBadInput = 3,  // unreadable or ill-formed input
  };

  /// Command line front end.  `args` excludes the program name.  The first
  /// output line is the conclusion; `key: value` details follow.
  int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
}
