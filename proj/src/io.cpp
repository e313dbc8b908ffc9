#include "loopforge/io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "loopforge/errors.hpp"

namespace loopforge {
namespace {

// comment-stripped, trimmed nonempty lines
std::vector<std::string> clean_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    auto b = line.find_last_not_of(" \t\r");
    out.push_back(line.substr(a, b - a + 1));
  }
  return out;
}

std::vector<int> parse_ints(const std::string& line, const char* what) {
  std::istringstream in(line);
  std::vector<int> vals;
  int v;
  while (in >> v) vals.push_back(v);
  if (!in.eof()) throw InputError(std::string(what) + ": bad integer in \"" + line + "\"");
  return vals;
}

Perm parse_perm(const std::string& line, int degree, const char* what) {
  std::vector<int> img = parse_ints(line, what);
  if (static_cast<int>(img.size()) != degree)
    throw InputError(std::string(what) + ": expected " + std::to_string(degree) +
                     " images, got " + std::to_string(img.size()));
  return Perm(img);
}

int parse_header(const std::vector<std::string>& lines, const std::string& word) {
  if (lines.empty()) throw InputError(word + " file: empty input");
  std::istringstream in(lines[0]);
  std::string tag;
  int n = 0;
  if (!(in >> tag >> n) || tag != word || n < 1)
    throw InputError(word + " file: first line must be \"" + word + " <n>\"");
  std::string extra;
  if (in >> extra) throw InputError(word + " file: trailing text after header");
  return n;
}

}  // namespace

Loop parse_loop(const std::string& text) {
  std::vector<std::string> lines = clean_lines(text);
  int n = parse_header(lines, "loop");
  if (static_cast<int>(lines.size()) != n + 1)
    throw InputError("loop file: expected " + std::to_string(n) + " rows, got " +
                     std::to_string(lines.size() - 1));
  std::vector<std::vector<int>> table;
  for (int i = 1; i <= n; ++i) {
    std::vector<int> row = parse_ints(lines[i], "loop file");
    if (static_cast<int>(row.size()) != n)
      throw InputError("loop file: row " + std::to_string(i - 1) + " has " +
                       std::to_string(row.size()) + " entries, expected " +
                       std::to_string(n));
    table.push_back(std::move(row));
  }
  return Loop(std::move(table));
}

PermGroup parse_group(const std::string& text) {
  std::vector<std::string> lines = clean_lines(text);
  int degree = parse_header(lines, "group");
  std::vector<Perm> gens;
  for (std::size_t i = 1; i < lines.size(); ++i)
    gens.push_back(parse_perm(lines[i], degree, "group file"));
  if (gens.empty()) return PermGroup::trivial(degree);
  return PermGroup(degree, gens);
}

Folder parse_folder(const std::string& text) {
  std::vector<std::string> lines = clean_lines(text);
  std::vector<std::string> gsec, hsec, ksec;
  std::vector<std::string>* cur = nullptr;
  for (const std::string& line : lines) {
    if (line == "[group]") { cur = &gsec; continue; }
    if (line == "[H]") { cur = &hsec; continue; }
    if (line == "[K]") { cur = &ksec; continue; }
    if (line[0] == '[') throw InputError("folder file: unknown section " + line);
    if (!cur) throw InputError("folder file: content before first section");
    cur->push_back(line);
  }
  if (gsec.empty()) throw InputError("folder file: missing [group] section");
  if (ksec.empty()) throw InputError("folder file: missing or empty [K] section");
  std::string gtext;
  for (const std::string& l : gsec) gtext += l + "\n";
  PermGroup g = parse_group(gtext);
  std::vector<Perm> hgens;
  for (const std::string& l : hsec) {
    Perm p = parse_perm(l, g.degree(), "folder file [H]");
    if (!g.contains(p))
      throw InputError("folder file [H]: generator outside the group");
    hgens.push_back(p);
  }
  PermGroup h = hgens.empty() ? PermGroup::trivial(g.degree())
                              : subgroup_generated(g, hgens);
  std::vector<Perm> k;
  for (const std::string& l : ksec) {
    Perm p = parse_perm(l, g.degree(), "folder file [K]");
    if (!g.contains(p))
      throw InputError("folder file [K]: element outside the group");
    k.push_back(p);
  }
  if (!k[0].is_identity())
    throw InputError("folder file [K]: first element must be the identity");
  Folder f{g, h, k};
  FolderReport rep = verify_folder(f, FolderLevel::folder);
  if (!rep.pass) throw InputError("NotFolder: " + rep.reason);
  return f;
}

std::string load_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

namespace {

void append_images(std::string& out, const Perm& p) {
  for (int i = 0; i < p.degree(); ++i) {
    if (i) out += ' ';
    out += std::to_string(p(i));
  }
  out += '\n';
}

}  // namespace

Loop load_loop(const std::string& path) { return parse_loop(load_text(path)); }
PermGroup load_group(const std::string& path) { return parse_group(load_text(path)); }
Folder load_folder(const std::string& path) { return parse_folder(load_text(path)); }

std::string format_loop(const Loop& l) {
  std::string out = "loop " + std::to_string(l.size()) + "\n";
  for (int x = 0; x < l.size(); ++x) {
    for (int y = 0; y < l.size(); ++y) {
      if (y) out += ' ';
      out += std::to_string(l.op(x, y));
    }
    out += '\n';
  }
  return out;
}

std::string format_group(const PermGroup& g) {
  std::string out = "group " + std::to_string(g.degree()) + "\n";
  for (const Perm& p : g.generators()) append_images(out, p);
  return out;
}

std::string format_folder(const Folder& f) {
  std::string out = "[group]\n" + format_group(f.g) + "[H]\n";
  for (const Perm& p : f.h.generators())
    if (!p.is_identity()) append_images(out, p);
  out += "[K]\n";
  for (const Perm& p : f.k) append_images(out, p);
  return out;
}

void save_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

}  // namespace loopforge
