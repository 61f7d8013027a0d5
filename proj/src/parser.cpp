#include <cctype>
#include <set>
#include <string>
#include <vector>

#include "dsk/textio.hpp"

namespace dsk {

namespace {

enum class Tok { Ident, String, Integer, Arrow, LBrace, RBrace, Colon, Comma, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;  // ident spelling or decoded string body
  int value = 0;     // integer tokens
  int line = 1;
  int col = 1;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::Ident: return "'" + t.text + "'";
    case Tok::String: return "string \"" + t.text + "\"";
    case Tok::Integer: return "number " + std::to_string(t.value);
    case Tok::Arrow: return "'->'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Colon: return "':'";
    case Tok::Comma: return "','";
    case Tok::End: return "end of input";
  }
  return "?";
}

[[noreturn]] void fail(Errc code, int line, int col, const std::string& message) {
  throw ParseError(code, line, col, message);
}

[[noreturn]] void fail_at(Errc code, const Token& t, const std::string& message) {
  fail(code, t.line, t.col, message);
}

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_ident_char(char c) {
  unsigned char u = static_cast<unsigned char>(c);
  return std::isalnum(u) != 0 || c == '-' || c == '_';
}

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  size_t i = 0;
  int line = 1;
  int col = 1;
  auto bump = [&](size_t n = 1) {
    for (size_t k = 0; k < n; ++k) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      bump();
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') bump();
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (is_ident_start(c)) {
      size_t start = i;
      while (i < text.size() && is_ident_char(text[i])) {
        // keep `a->b` lexable: a trailing '-' belongs to an arrow, not the name
        if (text[i] == '-' && i + 1 < text.size() && text[i + 1] == '>') break;
        bump();
      }
      t.kind = Tok::Ident;
      t.text = std::string(text.substr(start, i - start));
      out.push_back(std::move(t));
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) != 0) {
      size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])) != 0) bump();
      std::string digits(text.substr(start, i - start));
      if (digits.size() > 9) fail(Errc::syntax_error, t.line, t.col, "number too large");
      t.kind = Tok::Integer;
      t.value = std::stoi(digits);
      t.text = std::move(digits);
      out.push_back(std::move(t));
      continue;
    }
    if (c == '"') {
      bump();
      std::string body;
      bool closed = false;
      while (i < text.size()) {
        char d = text[i];
        if (d == '"') {
          bump();
          closed = true;
          break;
        }
        if (d == '\n') break;
        if (d == '\\') {
          if (i + 1 >= text.size() || (text[i + 1] != '"' && text[i + 1] != '\\')) {
            fail(Errc::syntax_error, line, col, "unknown escape in string, only \\\" and \\\\ exist");
          }
          bump();
          body.push_back(text[i]);
          bump();
          continue;
        }
        body.push_back(d);
        bump();
      }
      if (!closed) fail(Errc::syntax_error, t.line, t.col, "unterminated string");
      t.kind = Tok::String;
      t.text = std::move(body);
      out.push_back(std::move(t));
      continue;
    }
    if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      bump(2);
      t.kind = Tok::Arrow;
      out.push_back(std::move(t));
      continue;
    }
    switch (c) {
      case '{': t.kind = Tok::LBrace; break;
      case '}': t.kind = Tok::RBrace; break;
      case ':': t.kind = Tok::Colon; break;
      case ',': t.kind = Tok::Comma; break;
      default:
        fail(Errc::syntax_error, line, col, std::string("unexpected character '") + c + "'");
    }
    bump();
    out.push_back(std::move(t));
  }
  Token end;
  end.kind = Tok::End;
  end.line = line;
  end.col = col;
  out.push_back(std::move(end));
  return out;
}

// A base reference whose target may be defined later in the document.
struct PendingRef {
  ConceptName base;
  int line;
  int col;
};

class Parser {
public:
  Parser(std::vector<Token> tokens, const Registry& ambient)
      : tokens_(std::move(tokens)), ambient_(ambient) {}

  Document run() {
    Document doc;
    while (peek().kind != Tok::End) {
      const Token& kw = expect_ident("an item ('concept', 'nonconcept', 'intangible', "
                                     "'productline' or 'graph')");
      if (kw.text == "concept") {
        doc.items.push_back(parse_concept());
      } else if (kw.text == "nonconcept") {
        doc.items.push_back(parse_nonconcept());
      } else if (kw.text == "intangible") {
        doc.items.push_back(parse_intangible());
      } else if (kw.text == "productline") {
        doc.items.push_back(parse_productline());
      } else if (kw.text == "graph") {
        doc.items.push_back(parse_graph());
      } else {
        fail_at(Errc::syntax_error, kw,
                "expected 'concept', 'nonconcept', 'intangible', 'productline' or 'graph', got " +
                    describe(kw));
      }
    }
    for (const auto& ref : pending_) {
      if (!concept_names_.count(ref.base.str()) && !ambient_.contains(ref.base)) {
        fail(Errc::unknown_reference, ref.line, ref.col,
             "unknown base concept '" + ref.base.str() + "'");
      }
    }
    return doc;
  }

private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }

  bool peek_is(std::string_view word) const {
    return peek().kind == Tok::Ident && peek().text == word;
  }

  const Token& expect(Tok kind, const std::string& what) {
    if (peek().kind != kind) {
      fail_at(Errc::syntax_error, peek(), "expected " + what + ", got " + describe(peek()));
    }
    return next();
  }

  const Token& expect_ident(const std::string& what) { return expect(Tok::Ident, what); }

  void expect_keyword(std::string_view word) {
    if (!peek_is(word)) {
      fail_at(Errc::syntax_error, peek(),
              "expected '" + std::string(word) + "', got " + describe(peek()));
    }
    next();
  }

  // An identifier used as a name; the reserved Non- token is not a name.
  std::pair<ConceptName, const Token*> expect_name(const std::string& what) {
    const Token& t = expect_ident(what);
    if (t.text == kNonToken) {
      fail_at(Errc::syntax_error, t, "'Non-' is a reserved token, not a usable " + what);
    }
    return {ConceptName(t.text), &t};
  }

  void claim(std::set<std::string>& taken, const ConceptName& name, const Token& at,
             const std::string& what) {
    if (!taken.insert(name.str()).second) {
      fail_at(Errc::duplicate_name, at, "duplicate " + what + " '" + name.str() + "'");
    }
  }

  BaseConcept parse_concept() {
    auto [name, name_tok] = expect_name("concept name");
    claim(concept_names_, name, *name_tok, "concept");
    expect(Tok::LBrace, "'{'");
    std::vector<PartSpec> parts;
    std::vector<FunctionalitySpec> functionalities;
    std::vector<PropertySpec> properties;
    std::set<std::string> member_names;
    struct Requirement {
      size_t functionality;
      ConceptName need;
      int line;
      int col;
    };
    std::vector<Requirement> requirements;
    while (peek().kind != Tok::RBrace) {
      const Token& kw = expect_ident("'part', 'functionality', 'property' or '}'");
      if (kw.text == "part") {
        auto [member, member_tok] = expect_name("part name");
        claim(member_names, member, *member_tok, "member");
        bool essential = false;
        if (peek_is("essential")) {
          next();
          essential = true;
        }
        parts.push_back({std::move(member), essential});
      } else if (kw.text == "functionality") {
        auto [member, member_tok] = expect_name("functionality name");
        claim(member_names, member, *member_tok, "member");
        FunctionalitySpec spec{std::move(member), {}};
        if (peek_is("requires")) {
          next();
          for (;;) {
            auto [need, need_tok] = expect_name("required member name");
            requirements.push_back({functionalities.size(), need, need_tok->line, need_tok->col});
            spec.needs.push_back(std::move(need));
            if (peek().kind != Tok::Comma) break;
            next();
          }
        }
        functionalities.push_back(std::move(spec));
      } else if (kw.text == "property") {
        auto [member, member_tok] = expect_name("property name");
        claim(member_names, member, *member_tok, "member");
        properties.push_back({std::move(member)});
      } else {
        fail_at(Errc::syntax_error, kw,
                "expected 'part', 'functionality', 'property' or '}', got " + describe(kw));
      }
    }
    next();  // }
    std::set<std::string> resolvable;
    for (const auto& p : parts) resolvable.insert(p.name.str());
    for (const auto& p : properties) resolvable.insert(p.name.str());
    for (const auto& r : requirements) {
      if (!resolvable.count(r.need.str())) {
        fail(Errc::unknown_reference, r.line, r.col,
             "'" + functionalities[r.functionality].name.str() + "' requires '" + r.need.str() +
                 "', which is not a part or property of this concept");
      }
    }
    return BaseConcept(std::move(name), std::move(parts), std::move(functionalities),
                       std::move(properties));
  }

  std::vector<ModOp> parse_mods() {
    std::vector<ModOp> ops;
    while (peek().kind != Tok::RBrace) {
      const Token& kw = expect_ident("'remove', 'add', 'restore', 'identity' or '}'");
      if (kw.text == "remove" || kw.text == "add" || kw.text == "restore") {
        const Token& kind_tok = expect_ident("'part', 'functionality' or 'property'");
        MemberKind kind;
        if (kind_tok.text == "part") {
          kind = MemberKind::Part;
        } else if (kind_tok.text == "functionality") {
          kind = MemberKind::Functionality;
        } else if (kind_tok.text == "property") {
          kind = MemberKind::Property;
        } else {
          fail_at(Errc::syntax_error, kind_tok,
                  "expected 'part', 'functionality' or 'property', got " + describe(kind_tok));
        }
        auto [member, member_tok] = expect_name("member name");
        (void)member_tok;
        if (kw.text == "remove") {
          ops.push_back(RemoveOp{kind, std::move(member)});
        } else if (kw.text == "add") {
          ops.push_back(AddOp{kind, std::move(member)});
        } else {
          ops.push_back(RestoreOp{kind, std::move(member)});
        }
      } else if (kw.text == "identity") {
        const Token& label_tok = expect_ident("identity label or 'Non-'");
        if (label_tok.text == kNonToken) {
          ops.push_back(SetIdentityOp{IdentityLabel::non()});
        } else {
          ConceptName label(label_tok.text);
          bool negated = false;
          if (peek_is("negated")) {
            next();
            negated = true;
          }
          ops.push_back(SetIdentityOp{IdentityLabel::named(label, negated)});
        }
      } else {
        fail_at(Errc::syntax_error, kw,
                "expected 'remove', 'add', 'restore', 'identity' or '}', got " + describe(kw));
      }
    }
    next();  // }
    return ops;
  }

  NonConceptDef parse_nonconcept() {
    auto [name, name_tok] = expect_name("nonconcept name");
    claim(nonconcept_names_, name, *name_tok, "nonconcept");
    expect_keyword("from");
    auto [base, base_tok] = expect_name("base concept name");
    pending_.push_back({base, base_tok->line, base_tok->col});
    expect(Tok::LBrace, "'{'");
    return NonConceptDef{std::move(name), Delta{std::move(base), parse_mods()}};
  }

  IntangibleSpec parse_intangible() {
    auto [name, name_tok] = expect_name("intangible term");
    claim(intangible_names_, name, *name_tok, "intangible");
    expect(Tok::LBrace, "'{'");
    expect_keyword("pos");
    const Token& pos_tok = expect(Tok::String, "positive attribute string");
    std::optional<PosAttribute> pos = make_attribute<PosAttribute>(pos_tok);
    expect_keyword("neg");
    const Token& neg_tok = expect(Tok::String, "negative attribute string");
    std::optional<NegAttribute> neg = make_attribute<NegAttribute>(neg_tok);
    expect(Tok::RBrace, "'}'");
    return IntangibleSpec{std::move(name), std::move(*pos), std::move(*neg)};
  }

  template <class Attribute>
  std::optional<Attribute> make_attribute(const Token& at) {
    try {
      return Attribute(at.text);
    } catch (const Error& e) {
      fail_at(e.code(), at, e.what());
    }
  }

  ProductLineDef parse_productline() {
    auto [name, name_tok] = expect_name("productline name");
    claim(productline_names_, name, *name_tok, "productline");
    expect_keyword("from");
    auto [base, base_tok] = expect_name("base concept name");
    pending_.push_back({base, base_tok->line, base_tok->col});
    expect(Tok::LBrace, "'{'");
    VariantSet line{base, {}};
    std::set<std::string> variant_names;
    while (peek().kind != Tok::RBrace) {
      expect_keyword("variant");
      auto [vname, vname_tok] = expect_name("variant name");
      claim(variant_names, vname, *vname_tok, "variant");
      expect_keyword("stage");
      const Token& stage_tok = expect_ident("'design', 'manufacturing' or 'delivery'");
      Stage stage;
      if (stage_tok.text == "design") {
        stage = Stage::Design;
      } else if (stage_tok.text == "manufacturing") {
        stage = Stage::Manufacturing;
      } else if (stage_tok.text == "delivery") {
        stage = Stage::Delivery;
      } else {
        fail_at(Errc::syntax_error, stage_tok,
                "expected 'design', 'manufacturing' or 'delivery', got " + describe(stage_tok));
      }
      expect(Tok::LBrace, "'{'");
      line.variants.push_back({std::move(vname), Delta{base, parse_mods()}, stage});
    }
    next();  // }
    return ProductLineDef{std::move(name), std::move(line)};
  }

  GraphDef parse_graph() {
    auto [name, name_tok] = expect_name("graph name");
    claim(graph_names_, name, *name_tok, "graph");
    expect(Tok::LBrace, "'{'");
    std::vector<GraphNode> nodes;
    std::vector<GraphEdge> edges;
    std::set<std::string> node_ids;
    while (peek_is("node")) {
      next();
      auto [id, id_tok] = expect_name("node id");
      if (!node_ids.insert(id.str()).second) {
        fail_at(Errc::duplicate_name, *id_tok, "duplicate node id '" + id.str() + "'");
      }
      expect(Tok::Colon, "':'");
      const Token& kind_tok = expect_ident("'class', 'socket', 'isocket', 'pos' or 'neg'");
      NodeKind kind;
      if (kind_tok.text == "class") {
        kind = NodeKind::Class;
      } else if (kind_tok.text == "socket") {
        kind = NodeKind::Socket;
      } else if (kind_tok.text == "isocket") {
        kind = NodeKind::ISocket;
      } else if (kind_tok.text == "pos") {
        kind = NodeKind::Pos;
      } else if (kind_tok.text == "neg") {
        kind = NodeKind::Neg;
      } else {
        fail_at(Errc::syntax_error, kind_tok,
                "expected 'class', 'socket', 'isocket', 'pos' or 'neg', got " +
                    describe(kind_tok));
      }
      std::string label = id.str();
      if (peek_is("label")) {
        next();
        label = expect(Tok::String, "label string").text;
      }
      nodes.push_back({id.str(), std::move(label), kind});
    }
    while (peek_is("edge")) {
      next();
      auto endpoint = [&]() {
        auto [id, id_tok] = expect_name("node id");
        if (!node_ids.count(id.str())) {
          fail_at(Errc::unknown_reference, *id_tok, "unknown node '" + id.str() + "'");
        }
        return id.str();
      };
      std::string from = endpoint();
      expect(Tok::Arrow, "'->'");
      std::string to = endpoint();
      expect(Tok::Colon, "':'");
      const Token& kind_tok = expect_ident("'composition' or 'plugged'");
      if (kind_tok.text == "composition") {
        edges.push_back({std::move(from), std::move(to), EdgeKind::Composition, 1});
      } else if (kind_tok.text == "plugged") {
        // Liberal on purpose: any small nonnegative number parses, the
        // pattern validator is what rejects non-Boolean cardinality (R1).
        const Token& card = expect(Tok::Integer, "plugged cardinality");
        edges.push_back({std::move(from), std::move(to), EdgeKind::PluggedIn, card.value});
      } else {
        fail_at(Errc::syntax_error, kind_tok,
                "expected 'composition' or 'plugged', got " + describe(kind_tok));
      }
    }
    expect(Tok::RBrace, "'node', 'edge' or '}'");
    return GraphDef{std::move(name), OntologyGraph(std::move(nodes), std::move(edges))};
  }

  std::vector<Token> tokens_;
  size_t pos_ = 0;
  const Registry& ambient_;
  std::set<std::string> concept_names_;
  std::set<std::string> nonconcept_names_;
  std::set<std::string> intangible_names_;
  std::set<std::string> productline_names_;
  std::set<std::string> graph_names_;
  std::vector<PendingRef> pending_;
};

}  // namespace

Document parse(std::string_view text, const Registry& ambient) {
  return Parser(lex(text), ambient).run();
}

Document parse(std::string_view text) { return parse(text, builtin_corpus()); }

const BaseConcept* Document::find_concept(const ConceptName& name) const {
  for (const auto& item : items) {
    if (const auto* c = std::get_if<BaseConcept>(&item); c && c->name() == name) return c;
  }
  return nullptr;
}

const NonConceptDef* Document::find_nonconcept(const ConceptName& name) const {
  for (const auto& item : items) {
    if (const auto* d = std::get_if<NonConceptDef>(&item); d && d->name == name) return d;
  }
  return nullptr;
}

const IntangibleSpec* Document::find_intangible(const ConceptName& name) const {
  for (const auto& item : items) {
    if (const auto* d = std::get_if<IntangibleSpec>(&item); d && d->term == name) return d;
  }
  return nullptr;
}

const ProductLineDef* Document::find_productline(const ConceptName& name) const {
  for (const auto& item : items) {
    if (const auto* d = std::get_if<ProductLineDef>(&item); d && d->name == name) return d;
  }
  return nullptr;
}

const GraphDef* Document::find_graph(const ConceptName& name) const {
  for (const auto& item : items) {
    if (const auto* d = std::get_if<GraphDef>(&item); d && d->name == name) return d;
  }
  return nullptr;
}

Registry effective_registry(const Document& doc, const Registry& ambient) {
  Registry r = ambient;
  for (const auto& item : doc.items) {
    if (const auto* c = std::get_if<BaseConcept>(&item)) {
      r = register_concept(std::move(r), *c, /*replace_existing=*/true);
    }
  }
  return r;
}

Registry effective_registry(const Document& doc) {
  return effective_registry(doc, builtin_corpus());
}

}  // namespace dsk
