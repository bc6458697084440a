#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "codetopic/highlighter.hpp"
#include "codetopic/text.hpp"

namespace codetopic {

/// Exit statuses shared by every subcommand.
enum ExitStatus : int { kExitOk = 0, kExitUsage = 1, kExitData = 2 };

/// Entry point of the `codetopic` tool: extract, train, highlight, evaluate
/// and serve subcommands.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Static page with each highlighted region wrapped in a <mark> element.
std::string render_html(const SourceDocument& doc, std::span<const HighlightSpan> spans);

}  // namespace codetopic
