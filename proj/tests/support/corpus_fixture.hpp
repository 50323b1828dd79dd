#pragma once

// Synthetic reference corpus (10 libraries) and target projects with known ground truth.
// Every library core class is central in its release (it uses the release's utility
// classes or other cores); utility classes are trivial and therefore never indexed.

#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "jcfinder/source_model.hpp"
#include "jcfinder/zip_archive.hpp"
#include "support/fs_utils.hpp"
#include "support/java_model.hpp"
#include "support/mutations.hpp"

namespace jcf_test {

struct FixtureVersion {
  std::string version;
  std::int64_t timestamp = 0;
  std::string path;                          // manifest path; empty means the default layout
  bool archive = false;                      // sources shipped as a -sources.jar
  std::map<std::string, std::string> files;  // relative path -> content
};

struct FixtureLibrary {
  std::string name;  // lower-case stem, e.g. "alpha"
  std::string group;
  std::string artifact;
  std::vector<FixtureVersion> versions;
  std::map<std::string, ClassModel> classes;  // simple name -> model of every heavy class
  std::set<std::string> expected_indexed;     // qualified names expected to survive refinement
  std::string ga() const { return group + ":" + artifact; }
};

struct FixtureProject {
  std::string name;
  std::map<std::string, std::string> files;
  std::set<std::string> truth;  // group:artifact reused by the project
  std::set<std::string> declared;
};

struct E2EFixture {
  fs::path corpus;
  fs::path manifest;
  fs::path projects_dir;
  std::vector<FixtureLibrary> libraries;
  std::vector<FixtureProject> projects;

  const FixtureLibrary& library(const std::string& name) const {
    for (const auto& l : libraries)
      if (l.name == name) return l;
    throw std::out_of_range(name);
  }
};

inline std::string capitalize(std::string s) {
  s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

inline std::string package_dir(const std::string& package) {
  std::string out = package;
  for (auto& c : out)
    if (c == '.') c = '/';
  return out;
}

// A class whose only methods are tiny static helpers: removed under C2.
inline std::string trivial_util_source(const std::string& package, const std::string& name) {
  return "package " + package + ";\n\npublic final class " + name + " {\n  private " + name +
         "() {}\n  public static int clamp(int a, int b) {\n    return a < b ? a : b;\n  }\n"
         "  public static boolean positive(int a) {\n    return a > 0;\n  }\n}\n";
}

// Getter/setter data holder: removed under C2.
inline std::string data_holder_source(const std::string& package, const std::string& name) {
  return "package " + package + ";\n\npublic class " + name + " {\n  private String id;\n  private int size;\n"
         "  public String getId() { return id; }\n  public void setId(String id) { this.id = id; }\n"
         "  public int getSize() { return size; }\n  public void setSize(int size) { this.size = size; }\n}\n";
}

inline ClassModel with_fields(ClassModel c, const std::vector<std::string>& types) {
  for (const auto& t : types) {
    std::string field = t;
    field[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(field[0])));
    c.fields.push_back("private " + t + " " + field + "Ref;");
  }
  c.reset_order();
  return c;
}

inline void write_manifest(const fs::path& corpus, const std::vector<FixtureLibrary>& libs) {
  nlohmann::json j;
  j["created_at"] = 1700000000000LL;
  j["tool_version"] = "fixture";
  j["libraries"] = nlohmann::json::array();
  for (const auto& l : libs) {
    nlohmann::json vs = nlohmann::json::array();
    for (const auto& v : l.versions) {
      nlohmann::json vj{{"version", v.version}, {"timestamp", v.timestamp}};
      if (!v.path.empty()) vj["path"] = v.path;
      vs.push_back(vj);
    }
    j["libraries"].push_back({{"group", l.group}, {"artifact", l.artifact}, {"versions", vs}});
  }
  write_file(corpus / "manifest.json", j.dump(2));
}

inline fs::path version_dir(const fs::path& corpus, const FixtureLibrary& l, const FixtureVersion& v) {
  return v.path.empty() ? corpus / l.group / l.artifact / v.version : corpus / v.path;
}

inline void write_library(const fs::path& corpus, const FixtureLibrary& l) {
  for (const auto& v : l.versions) {
    const auto dir = version_dir(corpus, l, v);
    fs::create_directories(dir);
    if (v.archive) {
      std::vector<jcfinder::zip::Entry> entries;
      for (const auto& [p, c] : v.files) entries.push_back({p, c});
      entries.push_back({"META-INF/MANIFEST.MF", "Manifest-Version: 1.0\n"});
      write_file(dir / (l.artifact + "-" + v.version + "-sources.jar"), jcfinder::zip::write_archive(entries));
    } else {
      for (const auto& [p, c] : v.files) write_file(dir / p, c);
    }
  }
}

// Builds the standard fixture under `root`: root/corpus and root/projects.
inline E2EFixture build_e2e_fixture(const fs::path& root, std::uint64_t seed = 20240917) {
  static const char* kNames[] = {"alpha", "bravo", "charlie", "delta", "echo",
                                 "foxtrot", "golf", "hotel", "india", "juliet"};
  E2EFixture fx;
  fx.corpus = root / "corpus";
  fx.projects_dir = root / "projects";
  JavaGenerator gen(seed);
  const std::int64_t t0 = 1500000000000LL;
  const std::int64_t day = 86400000LL;

  for (int i = 0; i < 10; ++i) {
    FixtureLibrary lib;
    lib.name = kNames[i];
    lib.group = "org." + lib.name;
    lib.artifact = lib.name + "-core";
    const std::string pkg = lib.group;
    const std::string cap = capitalize(lib.name);
    const std::string dir = "src/main/java/" + package_dir(pkg) + "/";
    std::map<std::string, std::string> files;

    if (lib.name == "hotel") {
      // Three classes in one file; LZWEncoder is the one a project later reuses alone.
      auto encoder = with_fields(gen.make_class(pkg + ".gif", "AnimatedGifEncoder"), {"NeuQuant", "LZWEncoder"});
      auto quant = gen.make_class(pkg + ".gif", "NeuQuant");
      auto lzw = with_fields(gen.make_class(pkg + ".gif", "LZWEncoder"),
                             {"NeuQuant", "HotelBits", "HotelTables", "HotelChecks"});
      files[dir + "gif/AnimatedGifEncoder.java"] = render_file({encoder, quant, lzw});
      for (const auto* u : {"HotelBits", "HotelTables", "HotelChecks"})
        files[dir + "gif/" + u + ".java"] = trivial_util_source(pkg + ".gif", u);
      lib.classes = {{"AnimatedGifEncoder", encoder}, {"NeuQuant", quant}, {"LZWEncoder", lzw}};
      lib.expected_indexed = {pkg + ".gif.AnimatedGifEncoder", pkg + ".gif.LZWEncoder"};
    } else {
      const std::vector<std::string> utils = {cap + "Strings", cap + "Maths", cap + "Checks"};
      auto engine = with_fields(gen.make_class(pkg, cap + "Engine"), utils);
      auto codec = with_fields(gen.make_class(pkg, cap + "Codec"), {cap + "Engine"});
      auto planner = with_fields(gen.make_class(pkg, cap + "Planner"), {cap + "Engine", cap + "Codec"});
      auto factory = gen.make_class(pkg, cap + "WidgetFactory");  // C3
      auto test = gen.make_class(pkg, cap + "EngineTest");         // C4
      for (const auto* c : {&engine, &codec, &planner, &factory}) files[dir + c->name + ".java"] = c->render();
      files["src/test/java/" + package_dir(pkg) + "/" + test.name + ".java"] = test.render();
      for (const auto& u : utils) files[dir + u + ".java"] = trivial_util_source(pkg, u);
      files[dir + cap + "Listener.java"] = "package " + pkg + ";\n\npublic interface " + cap +
                                           "Listener {\n  void onEvent(int code);\n}\n";  // C1
      files[dir + cap + "Record.java"] = data_holder_source(pkg, cap + "Record");       // C2
      lib.classes = {{engine.name, engine}, {codec.name, codec}, {planner.name, planner},
                     {factory.name, factory}, {test.name, test}};
      lib.expected_indexed = {pkg + "." + engine.name, pkg + "." + codec.name, pkg + "." + planner.name};
    }
    if (lib.name == "juliet") {
      // A later verbatim copy of another group's class: attribution must stay with alpha.
      const auto& alpha = fx.libraries.front();
      files["src/main/java/org/alpha/AlphaEngine.java"] = alpha.classes.at("AlphaEngine").render();
    }

    const std::int64_t base = t0 + i * 30 * day;
    if (lib.name == "india") lib.versions.push_back({"0.9", base - day, "", false, {}});  // no sources
    FixtureVersion v1{"1.0", base, "", lib.name == "foxtrot" || lib.name == "golf", files};
    if (lib.name == "golf") v1.path = "archives/golf-core-1.0";
    lib.versions.push_back(v1);
    if (lib.name == "alpha" || lib.name == "charlie" || lib.name == "foxtrot") {
      auto next = files;
      auto scheduler = with_fields(gen.make_class(pkg, cap + "Scheduler"), {cap + "Planner", cap + "Engine"});
      next[dir + scheduler.name + ".java"] = scheduler.render();
      lib.classes.emplace(scheduler.name, scheduler);
      lib.expected_indexed.insert(pkg + "." + scheduler.name);
      lib.versions.push_back({"1.1", base + 10 * day, "", lib.name == "foxtrot", next});
    }
    write_library(fx.corpus, lib);
    fx.libraries.push_back(std::move(lib));
  }
  write_manifest(fx.corpus, fx.libraries);

  // Projects: each reuses 1-3 library classes next to its own code.
  Mutator mut(seed ^ 0x5eedULL);
  auto own_code = [&](FixtureProject& p, int count) {
    for (int k = 0; k < count; ++k) {
      auto c = gen.make_class("com." + p.name, capitalize(p.name) + "Service" + std::to_string(k));
      p.files["src/main/java/com/" + p.name + "/" + c.name + ".java"] = c.render();
    }
    p.files["src/main/java/com/" + p.name + "/Settings.java"] = data_holder_source("com." + p.name, "Settings");
  };
  auto pom = [](const std::set<std::string>& deps) {
    std::string x = "<?xml version=\"1.0\"?>\n<project>\n  <groupId>com.example</groupId>\n"
                    "  <artifactId>app</artifactId>\n  <version>1.0</version>\n  <dependencies>\n";
    for (const auto& d : deps) {
      const auto c = d.find(':');
      x += "    <dependency>\n      <groupId>" + d.substr(0, c) + "</groupId>\n      <artifactId>" + d.substr(c + 1) +
           "</artifactId>\n      <version>1.0</version>\n    </dependency>\n";
    }
    return x + "  </dependencies>\n</project>\n";
  };
  auto copy_into = [](FixtureProject& p, ClassModel c, const std::string& package) {
    c.package = package;
    p.files["src/main/java/" + package_dir(package) + "/" + c.name + ".java"] = c.render();
  };
  auto lib = [&](const std::string& n) -> const FixtureLibrary& { return fx.library(n); };

  {  // verbatim copy of one whole file
    FixtureProject p{"single", {}, {lib("alpha").ga()}, {lib("alpha").ga(), "com.google.guava:guava"}};
    p.files["src/main/java/org/alpha/AlphaEngine.java"] = lib("alpha").classes.at("AlphaEngine").render();
    own_code(p, 3);
    fx.projects.push_back(p);
  }
  {  // renamed, reordered and reformatted copies
    FixtureProject p{"renamed", {}, {lib("bravo").ga()}, {}};
    for (const auto* n : {"BravoCodec", "BravoPlanner"}) {
      auto c = lib("bravo").classes.at(n);
      c = mut.invariant(c, InvariantKind::Rename);
      c = mut.invariant(c, InvariantKind::Rename);
      c = mut.invariant(c, InvariantKind::MethodReorder);
      c = mut.invariant(c, InvariantKind::Whitespace);
      c = mut.invariant(c, InvariantKind::Literal);
      copy_into(p, c, "com.renamed.vendor");
    }
    own_code(p, 2);
    fx.projects.push_back(p);
  }
  {  // three libraries, one of them shipped as a source jar
    FixtureProject p{"multi", {}, {lib("charlie").ga(), lib("delta").ga(), lib("foxtrot").ga()}, {lib("delta").ga()}};
    copy_into(p, lib("charlie").classes.at("CharlieEngine"), "com.multi.third");
    copy_into(p, lib("delta").classes.at("DeltaPlanner"), "com.multi.third");
    copy_into(p, lib("foxtrot").classes.at("FoxtrotCodec"), "com.multi.third");
    own_code(p, 3);
    fx.projects.push_back(p);
  }
  {  // one class taken out of a three-class file
    FixtureProject p{"gif", {}, {lib("hotel").ga()}, {}};
    copy_into(p, lib("hotel").classes.at("LZWEncoder"), "com.gif.codec");
    own_code(p, 2);
    fx.projects.push_back(p);
  }
  {  // later verbatim re-release in another group must not change attribution
    FixtureProject p{"mixed", {}, {lib("golf").ga(), lib("alpha").ga()}, {lib("golf").ga(), "junit:junit"}};
    copy_into(p, lib("golf").classes.at("GolfPlanner"), "com.mixed.lib");
    p.files["src/main/java/org/juliet/AlphaEngine.java"] = lib("alpha").classes.at("AlphaEngine").render();
    own_code(p, 3);
    fx.projects.push_back(p);
  }
  for (auto& p : fx.projects) {
    p.files["pom.xml"] = pom(p.declared);
    for (const auto& [rel, content] : p.files) write_file(fx.projects_dir / p.name / rel, content);
  }
  fx.manifest = fx.corpus / "manifest.json";
  return fx;
}

}  // namespace jcf_test
