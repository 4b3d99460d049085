#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nbox::cli
{

// Exit codes shared by every subcommand.
inline constexpr int exit_ok = 0;
inline constexpr int exit_rejected = 1;
inline constexpr int exit_malformed = 2;
inline constexpr int exit_unprovable = 3;
inline constexpr int exit_resource_limit = 4;

// Runs one invocation. args[0] is the program name.
int run( const std::vector< std::string >& args, std::ostream& out, std::ostream& err );

} // namespace nbox::cli
