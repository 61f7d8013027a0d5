#include "dsk/cli.hpp"

#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "dsk/textio.hpp"

namespace dsk::cli {

namespace {

constexpr int kOk = 0;
constexpr int kFindings = 1;
constexpr int kUsage = 2;

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return std::move(buffer).str();
}

std::optional<ConceptName> to_name(const std::string& text, std::ostream& err) {
  try {
    return ConceptName(text);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return std::nullopt;
  }
}

// Loads and parses `path`, then hands the document to `body`. Unreadable
// files are usage errors; parse failures are findings.
int with_document(const std::string& path, std::ostream& err,
                  const std::function<int(const Document&)>& body) {
  auto text = read_file(path);
  if (!text) {
    err << "error: cannot read '" << path << "'\n";
    return kUsage;
  }
  try {
    return body(parse(*text));
  } catch (const ParseError& e) {
    err << path << ":" << e.what() << "\n";
    return kFindings;
  }
}

int cmd_validate(const Document& doc, std::ostream& out, std::ostream& err) {
  Registry registry = effective_registry(doc);
  int findings = 0;
  auto report = [&](std::string_view kind, const ConceptName& name, const Error& e) {
    out << kind << " " << name.str() << ": " << e.what() << "\n";
    ++findings;
  };
  for (const auto& item : doc.items) {
    if (const auto* d = std::get_if<NonConceptDef>(&item)) {
      try {
        derive(registry.at(d->delta.base), d->delta);
      } catch (const Error& e) {
        report("nonconcept", d->name, e);
      }
    } else if (const auto* s = std::get_if<IntangibleSpec>(&item)) {
      try {
        build_intangible(*s);
      } catch (const Error& e) {
        report("intangible", s->term, e);
      }
    } else if (const auto* p = std::get_if<ProductLineDef>(&item)) {
      try {
        expand(registry, p->line);
      } catch (const Error& e) {
        report("productline", p->name, e);
      }
    } else if (const auto* g = std::get_if<GraphDef>(&item)) {
      ValidationReport r = validate(g->graph);
      for (const auto& v : r.violations) {
        out << "graph " << g->name.str() << ": " << v.rule << " " << v.where << ": " << v.message
            << "\n";
        ++findings;
      }
      for (const auto& w : r.warnings) {
        err << "graph " << g->name.str() << ": warning " << w.rule << " " << w.where << ": "
            << w.message << "\n";
      }
    }
  }
  return findings > 0 ? kFindings : kOk;
}

int cmd_derive(const Document& doc, const std::string& file, const ConceptName& name,
               std::ostream& out, std::ostream& err) {
  if (const auto* d = doc.find_nonconcept(name)) {
    try {
      Registry registry = effective_registry(doc);
      out << serialize(derive(registry.at(d->delta.base), d->delta));
      return kOk;
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      return kFindings;
    }
  }
  if (const auto* s = doc.find_intangible(name)) {
    try {
      out << serialize(build_intangible(*s));
      return kOk;
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      return kFindings;
    }
  }
  err << "error: no nonconcept or intangible named '" << name.str() << "' in " << file << "\n";
  return kUsage;
}

int cmd_detect(const Document& doc, const std::string& file, const ConceptName& name,
               std::ostream& out, std::ostream& err) {
  const auto* g = doc.find_graph(name);
  if (!g) {
    err << "error: no graph named '" << name.str() << "' in " << file << "\n";
    return kUsage;
  }
  for (const auto& instance : detect(g->graph)) {
    out << "instance root=" << instance.root
        << " socket=" << (instance.socket ? *instance.socket : "-")
        << " isocket=" << instance.isocket << " plugged=";
    for (size_t i = 0; i < instance.plugged.size(); ++i) {
      if (i > 0) out << ",";
      out << instance.plugged[i].first << ":" << instance.plugged[i].second;
    }
    out << "\n";
  }
  return kOk;
}

int cmd_diff(const Document& doc, const std::string& file, const ConceptName& a,
             const ConceptName& b, std::ostream& out, std::ostream& err) {
  const auto* da = doc.find_nonconcept(a);
  const auto* db = doc.find_nonconcept(b);
  if (!da || !db) {
    err << "error: no nonconcept named '" << (da ? b : a).str() << "' in " << file << "\n";
    return kUsage;
  }
  try {
    Registry registry = effective_registry(doc);
    DiffReport r = diff(registry.at(da->delta.base), da->delta, db->delta);
    for (const auto& e : r.only_a) {
      out << "a-only " << to_string(e.member.kind) << " " << e.member.name.str() << " "
          << to_string(e.state) << "\n";
    }
    for (const auto& e : r.only_b) {
      out << "b-only " << to_string(e.member.kind) << " " << e.member.name.str() << " "
          << to_string(e.state) << "\n";
    }
    for (const auto& c : r.changed) {
      out << "changed " << to_string(c.member.kind) << " " << c.member.name.str() << " "
          << to_string(c.in_a) << " " << to_string(c.in_b) << "\n";
    }
    return kOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kFindings;
  }
}

int cmd_expand(const Document& doc, const std::string& file, const ConceptName& name,
               std::ostream& out, std::ostream& err) {
  const auto* p = doc.find_productline(name);
  if (!p) {
    err << "error: no productline named '" << name.str() << "' in " << file << "\n";
    return kUsage;
  }
  try {
    auto results = expand(effective_registry(doc), p->line);
    for (const auto& [variant, result] : results) {
      out << "variant " << variant.str() << " " << to_string(result.classification) << "\n";
      if (result.ontology) out << serialize(*result.ontology);
      out << "\n";
    }
    return kOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kFindings;
  }
}

int cmd_render(const Document& doc, const std::string& file, const ConceptName& name,
               const std::string& output, std::ostream& err) {
  std::string dot;
  try {
    if (const auto* d = doc.find_nonconcept(name)) {
      Registry registry = effective_registry(doc);
      dot = to_dot(derive(registry.at(d->delta.base), d->delta));
    } else if (const auto* s = doc.find_intangible(name)) {
      dot = to_dot(build_intangible(*s));
    } else if (const auto* g = doc.find_graph(name)) {
      dot = to_dot(g->graph, g->name.str());
    } else {
      err << "error: no renderable item (nonconcept, intangible or graph) named '" << name.str()
          << "' in " << file << "\n";
      return kUsage;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kFindings;
  }
  std::ofstream sink(output, std::ios::binary);
  if (!sink) {
    err << "error: cannot write '" << output << "'\n";
    return kUsage;
  }
  sink << dot;
  return kOk;
}

int cmd_corpus(std::ostream& out) {
  Document doc;
  Registry corpus = builtin_corpus();
  for (const auto& entry : corpus.concepts()) doc.items.push_back(entry);
  out << serialize(doc);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"pluggable-ontology toolkit", "dsocket"};
  app.require_subcommand(1);

  std::string file;
  std::string nonconcept_name;
  std::string graph_name;
  std::string a_name;
  std::string b_name;
  std::string productline_name;
  std::string item_name;
  std::string output;

  auto* validate_cmd = app.add_subcommand("validate", "check every item of a document");
  validate_cmd->add_option("file", file, "input .dsk document")->required();

  auto* derive_cmd =
      app.add_subcommand("derive", "print the canonical ontology of a nonconcept or intangible");
  derive_cmd->add_option("file", file, "input .dsk document")->required();
  derive_cmd->add_option("--nonconcept", nonconcept_name, "item to derive")->required();

  auto* detect_cmd = app.add_subcommand("detect", "find pattern instances in a graph");
  detect_cmd->add_option("file", file, "input .dsk document")->required();
  detect_cmd->add_option("--graph", graph_name, "graph item to scan")->required();

  auto* diff_cmd = app.add_subcommand("diff", "compare two nonconcepts of one base");
  diff_cmd->add_option("file", file, "input .dsk document")->required();
  diff_cmd->add_option("--a", a_name, "first nonconcept")->required();
  diff_cmd->add_option("--b", b_name, "second nonconcept")->required();

  auto* expand_cmd = app.add_subcommand("expand", "expand a product line into its variants");
  expand_cmd->add_option("file", file, "input .dsk document")->required();
  expand_cmd->add_option("--productline", productline_name, "product line to expand")->required();

  auto* render_cmd = app.add_subcommand("render", "write a DOT rendering of an item");
  render_cmd->add_option("file", file, "input .dsk document")->required();
  render_cmd->add_option("--item", item_name, "nonconcept, intangible or graph to render")
      ->required();
  render_cmd->add_option("-o,--output", output, "output .dot path")->required();

  app.add_subcommand("corpus", "print the built-in concepts as a document");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    err << "run 'dsocket --help' for usage\n";
    return kUsage;
  }

  if (validate_cmd->parsed()) {
    return with_document(file, err,
                         [&](const Document& doc) { return cmd_validate(doc, out, err); });
  }
  if (derive_cmd->parsed()) {
    auto name = to_name(nonconcept_name, err);
    if (!name) return kUsage;
    return with_document(
        file, err, [&](const Document& doc) { return cmd_derive(doc, file, *name, out, err); });
  }
  if (detect_cmd->parsed()) {
    auto name = to_name(graph_name, err);
    if (!name) return kUsage;
    return with_document(
        file, err, [&](const Document& doc) { return cmd_detect(doc, file, *name, out, err); });
  }
  if (diff_cmd->parsed()) {
    auto a = to_name(a_name, err);
    auto b = to_name(b_name, err);
    if (!a || !b) return kUsage;
    return with_document(
        file, err, [&](const Document& doc) { return cmd_diff(doc, file, *a, *b, out, err); });
  }
  if (expand_cmd->parsed()) {
    auto name = to_name(productline_name, err);
    if (!name) return kUsage;
    return with_document(
        file, err, [&](const Document& doc) { return cmd_expand(doc, file, *name, out, err); });
  }
  if (render_cmd->parsed()) {
    auto name = to_name(item_name, err);
    if (!name) return kUsage;
    return with_document(file, err, [&](const Document& doc) {
      return cmd_render(doc, file, *name, output, err);
    });
  }
  return cmd_corpus(out);
}

}  // namespace dsk::cli
