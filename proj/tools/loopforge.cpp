// Command line front end.  Every subcommand loads and validates its inputs
// first, then computes, then prints one JSON object per line with keys in a
// fixed order, so reruns on identical inputs produce identical bytes unless
// --timing is given.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "loopforge/bx2p.hpp"
#include "loopforge/errors.hpp"
#include "loopforge/folder.hpp"
#include "loopforge/io.hpp"
#include "loopforge/loop.hpp"
#include "loopforge/permgroup.hpp"
#include "loopforge/search.hpp"
#include "loopforge/twisted.hpp"

using json = nlohmann::ordered_json;
using namespace loopforge;

namespace {

std::string fnv1a_hex(const std::string& bytes) {
  unsigned long long h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", h);
  return std::string(buf);
}

struct Emitter {
  json inputs = json::object();
  bool timing = false;
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();

  std::string digest(const std::string& path) {
    std::string text = load_text(path);
    inputs[path] = fnv1a_hex(text);
    return text;
  }
  void header(const std::string& command) const {
    json j;
    j["command"] = command;
    j["inputs"] = inputs;
    std::cout << j.dump() << "\n";
  }
  void line(const json& j) const { std::cout << j.dump() << "\n"; }
  void summary(json j) const {
    if (timing) {
      auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - start)
                    .count();
      j["elapsed_ms"] = static_cast<long long>(ms);
    }
    std::cout << j.dump() << "\n";
  }
};

json class_json(const FolderClass& c) {
  json j;
  j["folder"] = c.folder;
  j["bol"] = c.bol;
  j["ar"] = c.ar;
  j["bruck"] = c.bruck;
  j["bx2p"] = c.bx2p;
  j["witness"] = c.witness;
  return j;
}

json lemma_json(const LemmaReport& r) {
  json j;
  j["lemma"] = r.lemma;
  j["applicable"] = r.applicable;
  j["pass"] = r.pass;
  j["witness"] = r.witness;
  return j;
}

json qclass_json(const QClass& q) {
  json j;
  j["q"] = q.q;
  j["verdict"] = q.verdict;
  j["literal_hypothesis"] = q.literal_hypothesis;
  j["prime_power_hypothesis"] = q.prime_power_hypothesis;
  j["reason"] = q.reason;
  return j;
}

std::string numbered(const std::string& dir, const char* stem, int i,
                     const char* ext) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s_%04d.%s", stem, i, ext);
  return (std::filesystem::path(dir) / buf).string();
}

int run_check_loop(Emitter& em, const std::string& file,
                   const std::string& identities, bool soluble) {
  std::string text = em.digest(file);
  Loop l = parse_loop(text);
  em.header("check-loop");
  bool all = true;
  std::vector<std::string> wanted;
  {
    std::string cur;
    for (char c : identities + ",") {
      if (c == ',') {
        if (!cur.empty()) wanted.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
  }
  for (const std::string& id : wanted) {
    bool pass;
    if (id == "bol") pass = is_bol(l);
    else if (id == "aip") pass = has_two_sided_inverses(l) && is_aip(l);
    else if (id == "bruck") pass = is_bruck(l);
    else if (id == "ar") pass = is_ar_loop(l);
    else throw InputError("unknown identity: " + id);
    json j;
    j["check"] = id;
    j["pass"] = pass;
    em.line(j);
    all = all && pass;
  }
  if (soluble) {
    bool pass = is_soluble_loop(l);
    json j;
    j["check"] = "soluble";
    j["pass"] = pass;
    em.line(j);
    all = all && pass;
  }
  json s;
  s["order"] = l.size();
  s["verdict"] = all ? "pass" : "fail";
  em.summary(s);
  return all ? 0 : 1;
}

int run_envelope(Emitter& em, const std::string& file,
                 const std::string& emit) {
  std::string text = em.digest(file);
  Loop l = parse_loop(text);
  em.header("envelope");
  Folder f = baer_envelope(l);
  FolderReport rep = verify_folder(f, FolderLevel::folder);
  json j;
  j["degree"] = f.g.degree();
  j["group_order"] = f.g.order();
  j["h_order"] = f.h.order();
  j["k_size"] = static_cast<long long>(f.k.size());
  j["faithful"] = rep.faithful;
  j["envelope"] = rep.envelope;
  em.line(j);
  if (!emit.empty()) save_text(emit, format_folder(f));
  json s;
  s["verdict"] = "pass";
  em.summary(s);
  return 0;
}

int run_check_folder(Emitter& em, const std::string& file,
                     const std::string& level) {
  std::string text = em.digest(file);
  Folder f = parse_folder(text);
  em.header("check-folder");
  FolderClass c = classify_folder(f);
  em.line(class_json(c));
  bool pass;
  if (level == "folder") pass = c.folder;
  else if (level == "bol") pass = c.bol;
  else if (level == "ar") pass = c.ar;
  else if (level == "bruck") pass = c.bruck;
  else if (level == "bx2p") pass = c.bx2p;
  else throw InputError("unknown level: " + level);
  json s;
  s["level"] = level;
  s["verdict"] = pass ? "pass" : "fail";
  em.summary(s);
  return pass ? 0 : 1;
}

int run_fold2loop(Emitter& em, const std::string& file,
                  const std::string& emit) {
  std::string text = em.digest(file);
  Folder f = parse_folder(text);
  em.header("fold2loop");
  Loop l = folder_to_loop(f);
  json j;
  j["order"] = l.size();
  j["bol"] = is_bol(l);
  j["associative"] = is_associative(l);
  em.line(j);
  if (!emit.empty()) save_text(emit, format_loop(l));
  json s;
  s["verdict"] = "pass";
  em.summary(s);
  return 0;
}

int run_lemmas(Emitter& em, const std::string& file,
               const std::string& suite_name) {
  std::string text = em.digest(file);
  Folder f = parse_folder(text);
  em.header("lemmas");
  Suite suite;
  if (suite_name == "section3") suite = Suite::section3;
  else if (suite_name == "all") suite = Suite::all;
  else throw InputError("unknown suite: " + suite_name);
  std::vector<LemmaReport> reports = lemma_suite(f, suite);
  int applicable = 0, failed = 0;
  for (const LemmaReport& r : reports) {
    em.line(lemma_json(r));
    if (r.applicable) {
      ++applicable;
      if (!r.pass) ++failed;
    }
  }
  json s;
  s["applicable"] = applicable;
  s["failed"] = failed;
  s["verdict"] = failed == 0 ? "pass" : "fail";
  em.summary(s);
  return failed == 0 ? 0 : 1;
}

int run_heiss(Emitter& em, const std::string& file,
              const std::string& normal_file) {
  std::string text = em.digest(file);
  std::string ntext;
  if (!normal_file.empty()) ntext = em.digest(normal_file);
  Folder f = parse_folder(text);
  PermGroup n = normal_file.empty() ? o2_subgroup(f.g) : parse_group(ntext);
  em.header("heiss");
  HeissData d = heiss_decomposition(f, n);
  json j;
  j["n0"] = d.n0;
  json orb = json::array();
  for (const HeissOrbit& o : d.orbits) {
    json e;
    e["m"] = o.m;
    e["n"] = o.n;
    orb.push_back(e);
  }
  j["orbits"] = orb;
  j["total"] = d.total;
  j["k_size"] = static_cast<long long>(f.k.size());
  j["equals_k"] = d.equals_k;
  j["fibers_constant"] = d.fibers_constant;
  em.line(j);
  json s;
  s["verdict"] = d.equals_k ? "pass" : "fail";
  em.summary(s);
  return d.equals_k ? 0 : 1;
}

int run_qclass(Emitter& em, long long q, long long sieve_max) {
  em.header("qclass");
  if (sieve_max > 0) {
    std::vector<QClass> rows = sieve_q(sieve_max);
    json survivors = json::array();
    for (const QClass& r : rows) {
      em.line(qclass_json(r));
      if (r.prime_power_hypothesis) survivors.push_back(r.q);
    }
    json s;
    s["survivors"] = survivors;
    s["verdict"] = "pass";
    em.summary(s);
    return 0;
  }
  em.line(qclass_json(classify_q(q)));
  json s;
  s["verdict"] = "pass";
  em.summary(s);
  return 0;
}

int run_theorem1(Emitter& em, const std::string& file) {
  std::string text = em.digest(file);
  Folder f = parse_folder(text);
  em.header("theorem1");
  ShapeReport r = check_theorem1_shape(f);
  json j;
  j["applicable"] = r.applicable;
  j["pass"] = r.pass;
  j["undecided"] = r.undecided;
  j["e"] = r.e;
  j["product_ok"] = r.product_ok;
  j["fstar_ok"] = r.fstar_ok;
  json fac = json::array();
  for (const ShapeFactor& sf : r.factors) {
    json e;
    e["order"] = sf.order;
    e["q"] = sf.q;
    e["pgl_match"] = sf.pgl_match;
    e["borel_match"] = sf.borel_match;
    fac.push_back(e);
  }
  j["factors"] = fac;
  j["witness"] = r.witness;
  em.line(j);
  bool fail = r.applicable && !r.undecided && !r.pass;
  json s;
  s["verdict"] = fail ? "fail" : (r.undecided ? "undecided" : "pass");
  em.summary(s);
  return fail ? 1 : 0;
}

int run_enumerate(Emitter& em, const EnumSpec& spec, const std::string& out) {
  em.header("enumerate");
  EnumResult r = enumerate_loops(spec);
  std::filesystem::create_directories(out);
  for (std::size_t i = 0; i < r.loops.size(); ++i) {
    std::string path =
        numbered(out, "loop", static_cast<int>(i), "loop");
    save_text(path, format_loop(r.loops[i]));
  }
  json s;
  s["order"] = spec.order;
  s["raw_count"] = r.raw_count;
  s["emitted"] = static_cast<long long>(r.loops.size());
  s["verdict"] = "pass";
  em.summary(s);
  return 0;
}

int run_search_a(Emitter& em, const std::string& file, const std::string& out) {
  std::string text = em.digest(file);
  PermGroup g = parse_group(text);
  em.header("search-a");
  std::vector<Folder> hits = search_hypothesis_a(g);
  std::filesystem::create_directories(out);
  for (std::size_t i = 0; i < hits.size(); ++i) {
    const Folder& f = hits[i];
    std::string path =
        numbered(out, "folder", static_cast<int>(i), "folder");
    save_text(path, format_folder(f));
    json j;
    j["file"] = path;
    j["h_order"] = f.h.order();
    j["k_size"] = static_cast<long long>(f.k.size());
    em.line(j);
  }
  json s;
  s["hits"] = static_cast<long long>(hits.size());
  s["verdict"] = "pass";
  em.summary(s);
  return 0;
}

int run_search_folder(Emitter& em, const std::string& file,
                      const std::string& hfile, bool bx2p_only,
                      const std::string& out) {
  std::string text = em.digest(file);
  std::string htext = em.digest(hfile);
  PermGroup g = parse_group(text);
  PermGroup h = parse_group(htext);
  em.header("search-folder");
  std::vector<Folder> hits = search_folders(g, h, bx2p_only);
  std::filesystem::create_directories(out);
  for (std::size_t i = 0; i < hits.size(); ++i) {
    const Folder& f = hits[i];
    std::string path =
        numbered(out, "folder", static_cast<int>(i), "folder");
    save_text(path, format_folder(f));
    json j;
    j["file"] = path;
    j["k_size"] = static_cast<long long>(f.k.size());
    em.line(j);
  }
  json s;
  s["hits"] = static_cast<long long>(hits.size());
  s["verdict"] = "pass";
  em.summary(s);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* cap = std::getenv("LOOPFORGE_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(cap, &end, 10);
    if (end && *end == '\0' && v > 0)
      set_default_cap(static_cast<std::size_t>(v));
  }

  CLI::App app{"finite loop and loop folder toolkit"};
  app.require_subcommand(1);
  Emitter em;
  app.add_flag("--timing", em.timing,
               "append elapsed milliseconds to the summary line");
  std::function<int()> run;

  {
    auto* c = app.add_subcommand("check-loop", "verify loop identities");
    auto file = std::make_shared<std::string>();
    auto ids = std::make_shared<std::string>("bol,aip,bruck,ar");
    auto soluble = std::make_shared<bool>(false);
    c->add_option("loop-file", *file)->required();
    c->add_option("--identities", *ids, "comma list of bol,aip,bruck,ar");
    c->add_flag("--soluble", *soluble, "also test loop solubility");
    c->callback([&run, file, ids, soluble, &em] {
      run = [&em, file, ids, soluble] {
        return run_check_loop(em, *file, *ids, *soluble);
      };
    });
  }
  {
    auto* c = app.add_subcommand("envelope",
                                 "build the right-translation envelope");
    auto file = std::make_shared<std::string>();
    auto emit = std::make_shared<std::string>();
    c->add_option("loop-file", *file)->required();
    c->add_option("--emit-folder", *emit, "write the folder to this path");
    c->callback([&run, file, emit, &em] {
      run = [&em, file, emit] { return run_envelope(em, *file, *emit); };
    });
  }
  {
    auto* c = app.add_subcommand("check-folder",
                                 "classify a folder along the level chain");
    auto file = std::make_shared<std::string>();
    auto level = std::make_shared<std::string>("folder");
    c->add_option("folder-file", *file)->required();
    c->add_option("--level", *level, "folder|bol|ar|bruck|bx2p");
    c->callback([&run, file, level, &em] {
      run = [&em, file, level] { return run_check_folder(em, *file, *level); };
    });
  }
  {
    auto* c = app.add_subcommand("fold2loop",
                                 "reconstruct the loop of a folder");
    auto file = std::make_shared<std::string>();
    auto emit = std::make_shared<std::string>();
    c->add_option("folder-file", *file)->required();
    c->add_option("--emit-loop", *emit, "write the loop to this path");
    c->callback([&run, file, emit, &em] {
      run = [&em, file, emit] { return run_fold2loop(em, *file, *emit); };
    });
  }
  {
    auto* c = app.add_subcommand("lemmas", "run the folder audit suite");
    auto file = std::make_shared<std::string>();
    auto suite = std::make_shared<std::string>("section3");
    c->add_option("folder-file", *file)->required();
    c->add_option("--suite", *suite, "section3|all");
    c->callback([&run, file, suite, &em] {
      run = [&em, file, suite] { return run_lemmas(em, *file, *suite); };
    });
  }
  {
    auto* c = app.add_subcommand(
        "heiss", "orbit-size decomposition of K over a normal subgroup");
    auto file = std::make_shared<std::string>();
    auto normal = std::make_shared<std::string>();
    c->add_option("folder-file", *file)->required();
    c->add_option("--normal", *normal,
                  "group file for N (default: the 2-core of G)");
    c->callback([&run, file, normal, &em] {
      run = [&em, file, normal] { return run_heiss(em, *file, *normal); };
    });
  }
  {
    auto* c = app.add_subcommand("qclass",
                                 "field-size classification for the shape "
                                 "theorem");
    auto q = std::make_shared<long long>(0);
    auto sieve = std::make_shared<long long>(0);
    auto* qopt = c->add_option("q", *q, "single field size to classify");
    auto* sopt = c->add_option("--sieve", *sieve, "classify all q up to max");
    qopt->excludes(sopt);
    c->callback([&run, q, sieve, qopt, sopt, &em] {
      if (qopt->count() == 0 && sopt->count() == 0)
        throw CLI::RequiredError("qclass: give q or --sieve");
      run = [&em, q, sieve] { return run_qclass(em, *q, *sieve); };
    });
  }
  {
    auto* c = app.add_subcommand("theorem1",
                                 "structural shape check for the quotient "
                                 "G/O2(G)");
    auto file = std::make_shared<std::string>();
    c->add_option("folder-file", *file)->required();
    c->callback([&run, file, &em] {
      run = [&em, file] { return run_theorem1(em, *file); };
    });
  }
  {
    auto* c = app.add_subcommand("enumerate", "enumerate loops of one order");
    auto spec = std::make_shared<EnumSpec>();
    auto out = std::make_shared<std::string>();
    c->add_option("--order", spec->order, "loop order")->required();
    c->add_flag("--bol", spec->bol, "restrict to the Bol identity");
    c->add_flag("--exponent2", spec->exponent2, "restrict to exponent 2");
    c->add_flag("--aip", spec->aip, "restrict to automorphic inverses");
    c->add_flag("--ar", spec->ar, "restrict to inner-right automorphisms");
    c->add_flag("--canonical", spec->canonicalize,
                "one representative per isomorphism class");
    c->add_flag("--reverse", spec->reverse, "reverse branching order");
    c->add_option("--threads", spec->threads, "worker count");
    c->add_option("--out", *out, "output directory")->required();
    c->callback([&run, spec, out, &em] {
      run = [&em, spec, out] { return run_enumerate(em, *spec, *out); };
    });
  }
  {
    auto* c = app.add_subcommand(
        "search-a", "involution-class transversal search over all stabilizers");
    auto file = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    c->add_option("group-file", *file)->required();
    c->add_option("--out", *out, "output directory")->required();
    c->callback([&run, file, out, &em] {
      run = [&em, file, out] { return run_search_a(em, *file, *out); };
    });
  }
  {
    auto* c = app.add_subcommand("search-folder",
                                 "transversal search for one stabilizer");
    c->set_help_flag("--help", "print help");
    auto file = std::make_shared<std::string>();
    auto hfile = std::make_shared<std::string>();
    auto out = std::make_shared<std::string>();
    auto strict = std::make_shared<bool>(false);
    c->add_option("group-file", *file)->required();
    c->add_option("--h", *hfile, "group file for the stabilizer")->required();
    c->add_flag("--bx2p", *strict, "keep only folders classified bx2p");
    c->add_option("--out", *out, "output directory")->required();
    c->callback([&run, file, hfile, strict, out, &em] {
      run = [&em, file, hfile, strict, out] {
        return run_search_folder(em, *file, *hfile, *strict, *out);
      };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    return run();
  } catch (const Error& e) {
    json j;
    j["error"] = e.what();
    switch (e.kind()) {
      case ErrorKind::input:
        j["kind"] = "input";
        break;
      case ErrorKind::verdict:
        j["kind"] = "verdict";
        break;
      case ErrorKind::cap:
        j["kind"] = "cap";
        break;
    }
    std::cout << j.dump() << "\n";
    return e.kind() == ErrorKind::input ? 2
           : e.kind() == ErrorKind::verdict ? 1
                                            : 3;
  }
}
