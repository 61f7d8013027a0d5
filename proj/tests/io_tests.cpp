// Tests for the DSL parser, the canonical serializers, the DOT exporter and
// the command-line front end.

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "dsk/cli.hpp"
#include "dsk/textio.hpp"
#include "support/gen.hpp"
#include "support/oracles.hpp"

using namespace dsk;

namespace {

namespace fs = std::filesystem;

fs::path fixture_dir() { return fs::path(DSK_FIXTURE_DIR); }
fs::path golden_dir() { return fs::path(DSK_GOLDEN_DIR); }

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string fixture(const std::string& name) { return slurp(fixture_dir() / name); }
std::string golden(const std::string& name) { return slurp(golden_dir() / name); }

// A file under the system temp directory, deleted on scope exit.
class TempFile {
public:
  explicit TempFile(const std::string& content, const std::string& suffix = ".dsk") {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("dsk_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++) + suffix);
    std::ofstream out(path_, std::ios::binary);
    out << content;
  }
  ~TempFile() {
    std::error_code ec;
    fs::remove(path_, ec);
  }
  std::string str() const { return path_.string(); }

private:
  fs::path path_;
};

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

ParseError parse_failure(const std::string& text) {
  try {
    parse(text);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a ParseError");
  return ParseError(Errc::syntax_error, 0, 0, "unreachable");
}

// Ontology contents modulo socket entry order, for injectivity checks.
struct CanonicalOntology {
  std::string root;
  std::vector<PluggedEntry> entries;
  std::vector<std::string> identities;
  std::string pos, neg;

  bool operator==(const CanonicalOntology&) const = default;
  bool operator<(const CanonicalOntology& o) const {
    return std::tie(root, entries, identities, pos, neg) <
           std::tie(o.root, o.entries, o.identities, o.pos, o.neg);
  }

  static CanonicalOntology of(const PluggableOntology& o) {
    CanonicalOntology c;
    c.root = o.root.str();
    for (const auto* e : canonical_entries(o.socket)) c.entries.push_back(*e);
    for (const auto& l : o.isocket.identities) {
      c.identities.push_back(l.is_non() ? "!" : (l.negated() ? "~" : "") + l.text());
    }
    if (o.pos) c.pos = o.pos->text();
    if (o.neg) c.neg = o.neg->text();
    return c;
  }
};

}  // namespace

TEST_CASE("empty and comment-only inputs parse to an empty document") {
  CHECK(parse("").items.empty());
  CHECK(parse("# nothing here\n\n# still nothing\n").items.empty());
}

TEST_CASE("a concept parses with interleaved members and forward dependencies") {
  Document doc = parse(
      "concept C {\n"
      "  functionality F requires P, Q\n"
      "  part P\n"
      "  property Q\n"
      "  part R essential\n"
      "}\n");
  const BaseConcept* c = doc.find_concept(ConceptName("C"));
  REQUIRE(c != nullptr);
  REQUIRE(c->parts().size() == 2);
  CHECK(c->parts()[0].name == ConceptName("P"));
  CHECK_FALSE(c->parts()[0].essential);
  CHECK(c->parts()[1].essential);
  REQUIRE(c->functionalities().size() == 1);
  CHECK(c->functionalities()[0].needs ==
        std::vector<ConceptName>{ConceptName("P"), ConceptName("Q")});
}

TEST_CASE("parse errors carry one-based positions") {
  ParseError e = parse_failure("concept C {\n  part X\n  part X\n}\n");
  CHECK(e.code() == Errc::duplicate_name);
  CHECK(e.line() == 3);
  CHECK(e.col() == 8);
  CHECK(std::string(e.what()).rfind("3:8: ", 0) == 0);
}

TEST_CASE("the reserved token cannot name things") {
  CHECK(parse_failure("concept Non- {}\n").code() == Errc::syntax_error);
  CHECK(parse_failure("nonconcept N from Clock { remove part Non- }\n").code() ==
        Errc::syntax_error);
  std::string msg = parse_failure("concept Non- {}\n").what();
  CHECK(msg.find("reserved token") != std::string::npos);
}

TEST_CASE("dependencies must name a part or property of the same concept") {
  ParseError e = parse_failure("concept C { functionality F requires Ghost }\n");
  CHECK(e.code() == Errc::unknown_reference);
  CHECK(std::string(e.what()).find("Ghost") != std::string::npos);
  // Another functionality does not satisfy a dependency.
  CHECK(parse_failure("concept C { functionality F requires G functionality G }\n").code() ==
        Errc::unknown_reference);
}

TEST_CASE("modification bases resolve forward, locally and against the corpus") {
  Document doc = parse(
      "nonconcept N from Widget { remove part Knob }\n"
      "concept Widget { part Knob }\n"
      "nonconcept M from Clock { remove part Battery }\n");
  CHECK(doc.find_nonconcept(ConceptName("N")) != nullptr);
  CHECK(doc.find_nonconcept(ConceptName("M")) != nullptr);
  CHECK(parse_failure("nonconcept N from Nowhere {}\n").code() == Errc::unknown_reference);

  // A document concept with a corpus name overrides the built-in one.
  Document shadow = parse(
      "concept Clock { part Dial }\n"
      "nonconcept N from Clock { remove part Dial }\n");
  Registry reg = effective_registry(shadow);
  CHECK(reg.at(ConceptName("Clock")).parts().size() == 1);
  CHECK(derive(reg.at(ConceptName("Clock")),
               shadow.find_nonconcept(ConceptName("N"))->delta)
            .socket.entries.size() == 1);
}

TEST_CASE("item names are unique per kind but shared across kinds") {
  CHECK(parse_failure("concept A {}\nconcept A {}\n").code() == Errc::duplicate_name);
  CHECK(parse_failure("intangible A { pos \"x\" neg \"y\" }\n"
                      "intangible A { pos \"x\" neg \"y\" }\n")
            .code() == Errc::duplicate_name);
  Document doc = parse(
      "concept A { part P }\n"
      "nonconcept A from A { remove part P }\n"
      "intangible A { pos \"x\" neg \"y\" }\n");
  CHECK(doc.items.size() == 3);
}

TEST_CASE("identity modifications parse in all three spellings") {
  Document doc = parse(
      "nonconcept N from Clock {\n"
      "  remove part Battery\n"
      "  identity CollectorsItem\n"
      "  identity Magritte negated\n"
      "  identity Non-\n"
      "}\n");
  const Delta& d = doc.find_nonconcept(ConceptName("N"))->delta;
  REQUIRE(d.ops.size() == 4);
  CHECK(std::get<SetIdentityOp>(d.ops[1]).label.text() == "CollectorsItem");
  CHECK(std::get<SetIdentityOp>(d.ops[2]).label.negated());
  CHECK(std::get<SetIdentityOp>(d.ops[3]).label.is_non());
}

TEST_CASE("intangible attribute problems surface as parse errors with their code") {
  CHECK(parse_failure("intangible X { pos \"\" neg \"y\" }\n").code() ==
        Errc::empty_attribute);
  CHECK(parse_failure("intangible X { pos \"  \" neg \"y\" }\n").code() ==
        Errc::empty_attribute);
  CHECK(parse_failure("intangible X { pos \"Non-\" neg \"y\" }\n").code() ==
        Errc::invalid_name);
  // Equal pos and neg texts are a semantic matter, left to the builder.
  Document doc = parse("intangible X { pos \"same\" neg \"same\" }\n");
  CHECK_THROWS_AS((void)build_intangible(*doc.find_intangible(ConceptName("X"))), Error);
}

TEST_CASE("string escapes cover quotes and backslashes only") {
  Document doc = parse("intangible X { pos \"a \\\"b\\\" c\" neg \"d\\\\e\" }\n");
  const IntangibleSpec* s = doc.find_intangible(ConceptName("X"));
  REQUIRE(s != nullptr);
  CHECK(s->pos.text() == "a \"b\" c");
  CHECK(s->neg.text() == "d\\e");
  CHECK(parse_failure("intangible X { pos \"a\\nb\" neg \"y\" }\n").code() ==
        Errc::syntax_error);
  CHECK(parse_failure("intangible X { pos \"open neg \n \"y\" }\n").code() ==
        Errc::syntax_error);
}

TEST_CASE("product lines parse stages and reject duplicate variant names") {
  Document doc = parse(fixture("printer_line.dsk"));
  const ProductLineDef* line = doc.find_productline(ConceptName("PrinterLine"));
  REQUIRE(line != nullptr);
  REQUIRE(line->line.variants.size() == 3);
  CHECK(line->line.variants[0].stage == Stage::Manufacturing);
  CHECK(line->line.variants[1].stage == Stage::Delivery);
  CHECK(line->line.variants[2].stage == Stage::Design);
  CHECK(line->line.variants[2].delta.ops.empty());

  CHECK(parse_failure("productline L from Clock {\n"
                      "  variant A stage design {}\n"
                      "  variant A stage delivery {}\n"
                      "}\n")
            .code() == Errc::duplicate_name);
  CHECK(parse_failure("productline L from Clock { variant A stage retail {} }\n").code() ==
        Errc::syntax_error);
}

TEST_CASE("graphs parse nodes before edges with optional labels") {
  Document doc = parse(fixture("clock_star.dsk"));
  const GraphDef* g = doc.find_graph(ConceptName("ClockStar"));
  REQUIRE(g != nullptr);
  CHECK(g->graph.nodes().size() == 6);
  CHECK(g->graph.edges().size() == 5);
  CHECK(g->graph.find_node("clock")->label == "Clock");
  CHECK(g->graph.find_node("non")->label == "Non-");

  Document bare = parse("graph G { node a : class }\n");
  CHECK(bare.find_graph(ConceptName("G"))->graph.find_node("a")->label == "a");

  CHECK(parse_failure("graph G { edge a -> b : composition node a : class }\n").code() ==
        Errc::unknown_reference);
  CHECK(parse_failure("graph G { node a : class edge a -> b : composition }\n").code() ==
        Errc::unknown_reference);
  CHECK(parse_failure("graph G { node a : class node a : socket }\n").code() ==
        Errc::duplicate_name);
  CHECK(parse_failure("graph G { node a : widget }\n").code() == Errc::syntax_error);

  // Out-of-range cardinality parses; the validator owns that rule.
  Document liberal = parse("graph G { node a : class node b : class edge a -> b : plugged 7 }\n");
  CHECK(liberal.find_graph(ConceptName("G"))->graph.edges()[0].cardinality == 7);
  CHECK_FALSE(validate(liberal.find_graph(ConceptName("G"))->graph).ok());
}

TEST_CASE("stray characters and oversized numbers fail cleanly") {
  CHECK(parse_failure("concept C { part X } $\n").code() == Errc::syntax_error);
  CHECK(parse_failure("graph G { node a : class node b : class edge a -> b : plugged "
                      "9999999999 }\n")
            .code() == Errc::syntax_error);
  CHECK(parse_failure("nonconcept N from Clock { remove part -Battery }\n").code() ==
        Errc::syntax_error);
}

TEST_CASE("deleting any single token from a document never crashes the parser") {
  std::string text = fixture("kitchen_sink.dsk");
  // First make sure the pristine fixture parses.
  Document pristine = parse(text);
  CHECK(pristine.items.size() == 6);

  // Drop comment lines, then split into whitespace-separated tokens.
  std::vector<std::string> tokens;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.find_first_not_of(" \t") != std::string::npos &&
        line[line.find_first_not_of(" \t")] == '#') {
      continue;
    }
    std::istringstream words(line);
    std::string w;
    while (words >> w) tokens.push_back(w);
  }
  REQUIRE(tokens.size() > 100);

  int failures = 0;
  for (size_t skip = 0; skip < tokens.size(); ++skip) {
    std::string mutated;
    for (size_t i = 0; i < tokens.size(); ++i) {
      if (i == skip) continue;
      mutated += tokens[i];
      mutated += ' ';
    }
    try {
      parse(mutated);
    } catch (const ParseError&) {
      ++failures;  // a clean, typed rejection
    }
    // Anything else escaping here fails the test by terminating it.
  }
  // Most single-token deletions must be detected as errors.
  CHECK(failures > static_cast<int>(tokens.size() / 2));
}

TEST_CASE("ontology serialization matches the frozen example bytes") {
  Document doc = parse(fixture("non_clock.dsk"));
  Registry reg = effective_registry(doc);
  const NonConceptDef* def = doc.find_nonconcept(ConceptName("NonClock"));
  REQUIRE(def != nullptr);
  CHECK(serialize(derive(reg.at(def->delta.base), def->delta)) == golden("non_clock.out"));

  Document intang = parse(fixture("event.dsk"));
  CHECK(serialize(build_intangible(*intang.find_intangible(ConceptName("Event")))) ==
        golden("event.out"));
}

TEST_CASE("serialization elides empty blocks and quotes non-name items") {
  Registry reg = builtin_corpus();
  PluggableOntology no_socket =
      derive(reg.at(ConceptName("Clock")),
             {ConceptName("Clock"),
              {SetIdentityOp{IdentityLabel::named(ConceptName("Artwork"))}}});
  std::string text = serialize(no_socket);
  CHECK(text ==
        "pluggable Clock\n"
        "isocket {\n"
        "  Non-\n"
        "  Artwork\n"
        "}\n");

  PluggableOntology bare{ConceptName("Thing"), {}, {}, std::nullopt, std::nullopt};
  CHECK(serialize(bare) == "pluggable Thing\n");

  PluggableOntology quoted{ConceptName("Thing"),
                           Socket{{{"two words", MemberKind::Part, 1}}},
                           ISocket{{IdentityLabel::non()}},
                           std::nullopt,
                           std::nullopt};
  CHECK(serialize(quoted) ==
        "pluggable Thing\n"
        "socket {\n"
        "  part \"two words\" = 1\n"
        "}\n"
        "isocket {\n"
        "  Non-\n"
        "}\n");
}

TEST_CASE("socket order does not leak into the canonical bytes") {
  PluggableOntology a{ConceptName("T"),
                      Socket{{{"b", MemberKind::Part, 1}, {"a", MemberKind::Part, 0}}},
                      ISocket{{IdentityLabel::non()}},
                      std::nullopt,
                      std::nullopt};
  PluggableOntology b = a;
  std::swap(b.socket.entries[0], b.socket.entries[1]);
  CHECK(a.socket.entries != b.socket.entries);
  CHECK(serialize(a) == serialize(b));
}

TEST_CASE("distinct canonical ontologies serialize to distinct bytes") {
  gen::Rng rng(31337);
  std::map<std::string, CanonicalOntology> seen;
  int produced = 0;
  for (int i = 0; i < 300; ++i) {
    PluggableOntology o = [&] {
      if (i % 3 == 2) {
        auto spec = gen::intangible_with_name(rng, gen::ident(rng));
        return build_intangible(spec);
      }
      BaseConcept base = gen::concept_(rng);
      return derive(base, gen::delta_for(rng, base, true));
    }();
    std::string bytes = serialize(o);
    CanonicalOntology canon = CanonicalOntology::of(o);
    auto [it, fresh] = seen.emplace(bytes, canon);
    if (!fresh) {
      REQUIRE(it->second == canon);  // same bytes then same canonical value
    }
    ++produced;
  }
  CHECK(produced == 300);
}

TEST_CASE("document serialization round-trips every fixture") {
  for (const auto& entry : fs::directory_iterator(fixture_dir())) {
    if (entry.path().extension() != ".dsk") continue;
    CAPTURE(entry.path().filename().string());
    Document doc = parse(slurp(entry.path()));
    std::string text = serialize(doc);
    CHECK(text.rfind("# dsocket-dsl v1\n", 0) == 0);
    Document again = parse(text);
    CHECK(again == doc);
    CHECK(serialize(again) == text);  // serialization is a fixed point
  }
}

TEST_CASE("property: generated documents round-trip through the DSL") {
  gen::Rng rng(808);
  for (int i = 0; i < 200; ++i) {
    Document doc = gen::document(rng);
    std::string text = serialize(doc);
    CAPTURE(i);
    Document again = parse(text);
    REQUIRE(again == doc);
  }
}

TEST_CASE("DOT export draws the star with its plug cardinalities") {
  Document doc = parse(fixture("clock_star.dsk"));
  std::string dot = to_dot(doc.find_graph(ConceptName("ClockStar"))->graph, "ClockStar");
  oracle::DotCensus census = oracle::dot_census(dot);
  CHECK(census.digraph);
  CHECK(census.balanced);
  CHECK(census.node_statements == 6);
  CHECK(census.edge_statements == 5);
  CHECK(dot.find("digraph \"ClockStar\"") == 0);
  CHECK(dot.find("\"clock\" [label=\"Clock\"];") != std::string::npos);
  CHECK(dot.find("arrowtail=odiamond") != std::string::npos);
  CHECK(dot.find("label=\"plugged-in (0)\"") != std::string::npos);
  CHECK(dot.find("label=\"plugged-in (1)\"") != std::string::npos);
}

TEST_CASE("DOT export marks quality nodes with pos and neg labels") {
  PluggableOntology o = build_intangible(
      {ConceptName("Event"), PosAttribute("much publicized"), NegAttribute("disappointing")});
  std::string dot = to_dot(o);
  CHECK(dot.find("label=\"pos: much publicized\"") != std::string::npos);
  CHECK(dot.find("label=\"neg: disappointing\"") != std::string::npos);
  CHECK(dot.find("shape=ellipse") != std::string::npos);
  oracle::DotCensus census = oracle::dot_census(dot);
  // Root, socket, iSocket, two qualities, one Non-.
  CHECK(census.node_statements == 6);
  CHECK(census.edge_statements == 5);
}

// ---------------------------------------------------------------------------
// Command-line front end, exercised in-process.

TEST_CASE("cli derive prints the canonical bytes of a derivation") {
  CliResult r = run_cli({"derive", (fixture_dir() / "non_clock.dsk").string(), "--nonconcept",
                         "NonClock"});
  CHECK(r.code == 0);
  CHECK(r.out == golden("non_clock.out"));
  CHECK(r.err.empty());
}

TEST_CASE("cli derive resolves intangible terms too") {
  CliResult r = run_cli({"derive", (fixture_dir() / "cooperation.dsk").string(), "--nonconcept",
                         "Cooperation"});
  CHECK(r.code == 0);
  CHECK(r.out == golden("cooperation.out"));
}

TEST_CASE("cli derive reports an identity breakdown as a finding") {
  CliResult r = run_cli({"derive", (fixture_dir() / "clock.dsk").string(), "--nonconcept",
                         "BrokenClock"});
  CHECK(r.code == 1);
  CHECK(r.out.empty());
  CHECK(r.err.find("Scale") != std::string::npos);
}

TEST_CASE("cli derive distinguishes findings from missing items") {
  CliResult r = run_cli({"derive", (fixture_dir() / "clock.dsk").string(), "--nonconcept",
                         "Ghost"});
  CHECK(r.code == 2);
  CHECK(r.err.find("no nonconcept or intangible named 'Ghost'") != std::string::npos);
}

TEST_CASE("cli validate is silent on a clean file") {
  CliResult r = run_cli({"validate", (fixture_dir() / "non_clock.dsk").string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(r.err.empty());
}

TEST_CASE("cli validate reports breakdowns and rule violations") {
  CliResult broken = run_cli({"validate", (fixture_dir() / "clock.dsk").string()});
  CHECK(broken.code == 1);
  CHECK(broken.out.find("nonconcept BrokenClock:") != std::string::npos);
  CHECK(broken.out.find("Scale") != std::string::npos);

  CliResult card = run_cli({"validate", (fixture_dir() / "bad_cardinality.dsk").string()});
  CHECK(card.code == 1);
  CHECK(card.out.find("graph Bad: R1 s->x: plugged-in cardinality must be 0 or 1, got 2") !=
        std::string::npos);
}

TEST_CASE("cli validate reports parse errors with file positions") {
  TempFile bad("concept C {\n  part X\n  part X\n}\n");
  CliResult r = run_cli({"validate", bad.str()});
  CHECK(r.code == 1);
  CHECK(r.err.find(bad.str() + ":3:8:") != std::string::npos);
}

TEST_CASE("cli detect prints one line per star") {
  CliResult r = run_cli({"detect", (fixture_dir() / "clock_star.dsk").string(), "--graph",
                         "ClockStar"});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "instance root=clock socket=sock isocket=isock "
        "plugged=battery:0,periodicity:0,non:1\n");
}

TEST_CASE("cli diff lists members only touched by one side") {
  CliResult r = run_cli({"diff", (fixture_dir() / "clock.dsk").string(), "--a", "NonClock",
                         "--b", "BrokenClock"});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "a-only part Battery removed\n"
        "a-only functionality Periodicity removed\n"
        "b-only part Scale removed\n"
        "b-only functionality Adjustability removed\n");
}

TEST_CASE("cli expand prints every variant with its classification") {
  CliResult r = run_cli({"expand", (fixture_dir() / "printer_line.dsk").string(),
                         "--productline", "PrinterLine"});
  CHECK(r.code == 0);
  CHECK(r.out == golden("expand_printer.out"));
}

TEST_CASE("cli render writes DOT to the requested file") {
  TempFile sink("", ".dot");
  CliResult r = run_cli({"render", (fixture_dir() / "non_clock.dsk").string(), "--item", "NonClock",
                         "-o", sink.str()});
  CHECK(r.code == 0);
  std::string dot = slurp(sink.str());
  CHECK(dot.rfind("digraph \"Clock\"", 0) == 0);
  CHECK(oracle::dot_census(dot).node_statements == 6);

  CliResult missing = run_cli({"render", (fixture_dir() / "non_clock.dsk").string(), "--item",
                               "Ghost", "-o", sink.str()});
  CHECK(missing.code == 2);

  CliResult broken = run_cli({"render", (fixture_dir() / "clock.dsk").string(), "--item",
                              "BrokenClock", "-o", sink.str()});
  CHECK(broken.code == 1);
}

TEST_CASE("cli corpus emits the built-in concepts as a parsable document") {
  CliResult r = run_cli({"corpus"});
  CHECK(r.code == 0);
  CHECK(r.out == golden("corpus.out"));
  Document doc = parse(r.out);
  CHECK(doc.items.size() == 6);
}

TEST_CASE("cli usage problems exit with 2") {
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"frobnicate"}).code == 2);
  CHECK(run_cli({"derive"}).code == 2);  // missing file and option
  CliResult unreadable = run_cli({"validate", "/no/such/file.dsk"});
  CHECK(unreadable.code == 2);
  CHECK(unreadable.err.find("cannot read") != std::string::npos);
  CliResult help = run_cli({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("derive") != std::string::npos);
}
