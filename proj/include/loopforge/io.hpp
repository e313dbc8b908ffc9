#pragma once

#include <string>

#include "loopforge/folder.hpp"
#include "loopforge/loop.hpp"
#include "loopforge/permgroup.hpp"

namespace loopforge {

// Text formats, all with '#' line comments:
//   loop file:   "loop <n>" then n rows of n integers (row x is x*0 .. x*(n-1))
//   group file:  "group <degree>" then one generator image list per line
//   folder file: sections [group] (group file syntax), [H] (generator image
//                lists), [K] (one full image list per line, identity first)

Loop parse_loop(const std::string& text);
PermGroup parse_group(const std::string& text);
Folder parse_folder(const std::string& text);

Loop load_loop(const std::string& path);
PermGroup load_group(const std::string& path);
Folder load_folder(const std::string& path);

std::string format_loop(const Loop& l);
std::string format_group(const PermGroup& g);
std::string format_folder(const Folder& f);

std::string load_text(const std::string& path);
void save_text(const std::string& path, const std::string& text);

}  // namespace loopforge
