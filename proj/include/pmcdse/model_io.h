#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "pmcdse/dtmc.h"

namespace pmcdse {

// Reads a whole file. Throws Error("FileNotFound") naming the path.
std::string readTextFile(std::filesystem::path const& path);

// Parses the line-oriented model format (see docs/formats.md):
//
//   param <name>
//   state <name> [label[,label...]]
//   init <name>
//   trans <src> <dst> <probability|$param>
//   reward <name> state <state> <value>
//   reward <name> trans <src> <dst> <value>
//
// Only syntax is checked here; semantic defects (undeclared parameters,
// out-of-range constants, missing rows) are left to validateModel.
ParametricDtmc parseModel(std::string_view text, std::string const& source = "<model>");

ParametricDtmc loadModel(std::filesystem::path const& path);

}  // namespace pmcdse
