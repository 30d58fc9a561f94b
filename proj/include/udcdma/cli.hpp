#pragma once

#include <iosfwd>

namespace udcdma {

// Command-line front end. Returns 0 on success, 1 on runtime failure, 2 on usage errors.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace udcdma
