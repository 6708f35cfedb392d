#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "agv/codesearch.hpp"

namespace agv {

// JSON code files:
//   {"type":"css","q":2,"n":7,"c1":[[...]],"c2":[[...]]}
//   {"type":"stab","q":2,"n":5,"generators":[[...2n entries, (x|z) order...]]}
// Rows are canonicalized on load. Entries >= q, wrong row lengths, C2 not in
// C1, and non-isotropic generators raise FormatError.

Code parse_code_file(std::string_view text);
Code load_code_file(const std::filesystem::path& path);

/// Single-line JSON with sorted keys and RREF rows.
std::string dump_code_file(const Code& code);
void save_code_file(const std::filesystem::path& path, const Code& code);

}  // namespace agv
