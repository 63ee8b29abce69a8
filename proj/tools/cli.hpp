#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace loopcond::cli {

/// Exit codes: 0 success / positive answer, 1 negative answer, 2 usage or resource error.
auto run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err) -> int;

} // namespace loopcond::cli
