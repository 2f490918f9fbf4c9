// Copyright 2026 The qscen Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

bool read_input(const std::string& path, std::string& text) {
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
    return true;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream buf;
  buf << in.rdbuf();
  text = buf.str();
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  using qscen::cli::Command;
  using qscen::cli::Format;

  CLI::App app{"qscen: pre/post-selection, linear-optics and Bell-locality calculations"};
  app.require_subcommand(1);

  struct Sub {
    Command command;
    const char* name;
    const char* help;
    const char* input_help;
  };
  const Sub subs[] = {
      {Command::run, "run", "Run a builtin or inline scenario", "Scenario config (JSON, '-' for stdin)"},
      {Command::abl, "abl", "Conditional probabilities for a pre/post-selected measurement",
       "ABL config (JSON, '-' for stdin)"},
      {Command::chsh, "chsh", "CHSH value and optimum for a two-spin state", "CHSH config (JSON, '-' for stdin)"},
      {Command::lhv_check, "lhv-check", "Local-hidden-variable membership of a behavior",
       "Behavior file (JSON, '-' for stdin)"},
  };

  std::string input;
  std::string format;
  std::string output;
  Command chosen = Command::run;
  for (const auto& s : subs) {
    auto* sub = app.add_subcommand(s.name, s.help);
    sub->add_option("input", input, s.input_help)->required();
    sub->add_option("-f,--format", format, "Override the output format")
        ->check(CLI::IsMember({"json", "tsv"}));
    sub->add_option("-o,--output", output, "Write the report here instead of stdout");
    sub->callback([&chosen, c = s.command] { chosen = c; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : qscen::cli::kExitConfigError;
  }

  qscen::cli::Invocation inv;
  inv.command = chosen;
  if (!read_input(input, inv.config_text)) {
    std::cerr << "qscen " << qscen::cli::command_name(chosen) << ": cannot read '" << input << "'\n";
    return qscen::cli::kExitConfigError;
  }
  if (!format.empty()) inv.format = format == "tsv" ? Format::tsv : Format::json;
  if (!output.empty()) inv.output = output;
  return qscen::cli::execute(inv, std::cout, std::cerr);
}
