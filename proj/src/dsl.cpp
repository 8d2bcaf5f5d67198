#include "gottlieb/dsl.hpp"

#include <cctype>
#include <optional>
#include <set>
#include <vector>

namespace gottlieb {

namespace {

enum class Tok { Ident, Int, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourceSpan span;
};

const std::set<std::string, std::less<>> kKeywords = {"algebra", "fibration", "base", "fibre",
                                                      "total",   "gen",       "d"};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.span = {line, col, 1};
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isalnum(static_cast<unsigned char>(text[j]))) ++j;
      t.kind = Tok::Ident;
      t.text = std::string(text.substr(i, j - i));
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j < text.size() && std::isalpha(static_cast<unsigned char>(text[j]))) {
        throw Error(ErrorKind::Syntax, "identifiers must start with a letter", t.span);
      }
      t.kind = Tok::Int;
      t.text = std::string(text.substr(i, j - i));
    } else if (std::string_view("{}:=+-*^/").find(c) != std::string_view::npos) {
      t.kind = Tok::Punct;
      t.text = std::string(1, c);
    } else {
      throw Error(ErrorKind::Syntax, std::string("unexpected character '") + c + "'", t.span);
    }
    t.span.length = t.text.size();
    advance(t.text.size());
    out.push_back(std::move(t));
  }
  Token end;
  end.span = {line, col, 0};
  out.push_back(end);
  return out;
}

struct Factor {
  std::string name;
  std::uint32_t exponent = 1;
  SourceSpan span;
};

struct Term {
  Rational coefficient = 1;
  std::vector<Factor> factors;
  SourceSpan span;
};

struct Poly {
  std::vector<Term> terms;
  SourceSpan span;
};

struct GenDecl {
  std::string name;
  int degree = 0;
  SourceSpan span;
};

struct DiffDecl {
  std::string name;
  Poly value;
  SourceSpan span;
};

struct Block {
  std::vector<GenDecl> gens;
  std::vector<DiffDecl> diffs;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(tokenize(text)) {}

  const Token& peek() const { return tokens_[pos_]; }
  bool at_punct(std::string_view p) const {
    return peek().kind == Tok::Punct && peek().text == p;
  }
  bool at_keyword(std::string_view k) const {
    return peek().kind == Tok::Ident && peek().text == k;
  }

  Token next() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const std::string& expected) const {
    const auto& t = peek();
    const std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw Error(ErrorKind::Syntax, "expected " + expected + ", found " + found, t.span);
  }

  void expect_punct(std::string_view p) {
    if (!at_punct(p)) fail("'" + std::string(p) + "'");
    next();
  }

  void expect_keyword(std::string_view k) {
    if (!at_keyword(k)) fail("'" + std::string(k) + "'");
    next();
  }

  Token expect_name() {
    if (peek().kind != Tok::Ident) fail("a name");
    if (kKeywords.count(peek().text)) fail("a name (not the keyword '" + peek().text + "')");
    return next();
  }

  Token expect_int() {
    if (peek().kind != Tok::Int) fail("an integer");
    return next();
  }

  void expect_end() {
    if (peek().kind != Tok::End) fail("end of input");
  }

  // item := "gen" NAME ":" INT | "d" NAME "=" poly
  Block parse_items(bool allow_gens) {
    Block block;
    while (true) {
      if (allow_gens && at_keyword("gen")) {
        const auto start = next().span;
        const auto name = expect_name();
        expect_punct(":");
        const auto degree = expect_int();
        int value = 0;
        try {
          value = std::stoi(degree.text);
        } catch (const std::exception&) {
          throw Error(ErrorKind::Syntax, "degree out of range", degree.span);
        }
        if (value < 1) {
          throw Error(ErrorKind::DegreeMismatch, "generator degree must be at least 1",
                      degree.span);
        }
        block.gens.push_back({name.text, value, {start.line, start.column, name.span.length}});
      } else if (at_keyword("d")) {
        const auto start = next().span;
        const auto name = expect_name();
        expect_punct("=");
        block.diffs.push_back({name.text, parse_poly(), start});
      } else {
        return block;
      }
    }
  }

  // poly := ["-"] term (("+" | "-") term)*
  Poly parse_poly() {
    Poly poly;
    poly.span = peek().span;
    bool negate = false;
    if (at_punct("-")) {
      next();
      negate = true;
    }
    while (true) {
      Term term = parse_term();
      if (negate) term.coefficient = -term.coefficient;
      poly.terms.push_back(std::move(term));
      if (at_punct("+")) {
        next();
        negate = false;
      } else if (at_punct("-")) {
        next();
        negate = true;
      } else {
        return poly;
      }
    }
  }

  // term := [coef ["*"]] factor ("*" factor)* | coef
  Term parse_term() {
    Term term;
    term.span = peek().span;
    bool have_coefficient = false;
    if (peek().kind == Tok::Int) {
      term.coefficient = parse_coefficient();
      have_coefficient = true;
      if (at_punct("*")) {
        next();
      } else if (!starts_factor()) {
        return term;
      }
    }
    if (!starts_factor()) fail(have_coefficient ? "a generator" : "a term");
    term.factors.push_back(parse_factor());
    while (at_punct("*")) {
      next();
      term.factors.push_back(parse_factor());
    }
    return term;
  }

  bool starts_factor() const {
    return peek().kind == Tok::Ident && !kKeywords.count(peek().text);
  }

  Rational parse_coefficient() {
    const auto num = expect_int();
    mpz_class denominator = 1;
    if (at_punct("/")) {
      next();
      const auto den = expect_int();
      denominator = mpz_class(den.text);
      if (denominator == 0) throw Error(ErrorKind::Syntax, "zero denominator", den.span);
    }
    Rational q(mpz_class(num.text), denominator);
    q.canonicalize();
    return q;
  }

  // factor := NAME ["^" INT]
  Factor parse_factor() {
    const auto name = expect_name();
    Factor f{name.text, 1, name.span};
    if (at_punct("^")) {
      next();
      const auto e = expect_int();
      unsigned long value = 0;
      try {
        value = std::stoul(e.text);
      } catch (const std::exception&) {
        throw Error(ErrorKind::Syntax, "exponent out of range", e.span);
      }
      if (value > 1u << 16) throw Error(ErrorKind::Syntax, "exponent out of range", e.span);
      f.exponent = static_cast<std::uint32_t>(value);
      f.span.length = e.span.column + e.span.length - name.span.column;
    }
    return f;
  }

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

Element build_element(const DgAlgebra& algebra, const Poly& poly, std::optional<int> degree) {
  Element out;
  for (const auto& term : poly.terms) {
    std::vector<GenIndex> word;
    for (const auto& f : term.factors) {
      const auto g = algebra.find(f.name);
      if (!g) {
        throw Error(ErrorKind::UnknownGenerator, "unknown generator '" + f.name + "'", f.span);
      }
      if (algebra.generator(*g).is_odd() && f.exponent >= 2) {
        throw Error(ErrorKind::OddExponent,
                    "odd generator '" + f.name + "' cannot be raised to a power",
                    f.span);
      }
      word.insert(word.end(), f.exponent, *g);
    }
    const auto [sign, mono] = algebra.normalize(word);
    if (term.coefficient == 0) continue;
    if (degree && mono.degree() != *degree) {
      throw Error(ErrorKind::DegreeMismatch,
                  "term has degree " + std::to_string(mono.degree()) + ", expected " +
                      std::to_string(*degree),
                  term.span);
    }
    if (sign != 0) out.add_term(mono, sign * term.coefficient);
  }
  return out;
}

void record_spans(const Block& block, std::map<std::string, SourceSpan>& spans) {
  for (const auto& g : block.gens) spans.emplace(g.name, g.span);
}

std::optional<SourceSpan> span_of(const std::vector<DiffDecl>& diffs, const std::string& name) {
  for (const auto& d : diffs) {
    if (d.name == name) return d.span;
  }
  return std::nullopt;
}

DgAlgebra build_algebra(const std::string& name, const Block& block) {
  std::vector<Generator> gens;
  std::set<std::string> seen;
  for (const auto& g : block.gens) {
    if (!seen.insert(g.name).second) {
      throw Error(ErrorKind::DuplicateGenerator, "generator '" + g.name + "' declared twice",
                  g.span);
    }
    gens.push_back({g.name, g.degree});
  }
  DgAlgebra algebra(name, std::move(gens));
  std::set<std::string> defined;
  for (const auto& d : block.diffs) {
    const auto g = algebra.find(d.name);
    if (!g) {
      throw Error(ErrorKind::UnknownGenerator, "unknown generator '" + d.name + "'", d.span);
    }
    if (!defined.insert(d.name).second) {
      throw Error(ErrorKind::Syntax, "differential of '" + d.name + "' given twice", d.span);
    }
    algebra.set_differential(*g,
                             build_element(algebra, d.value, algebra.generator(*g).degree + 1));
  }
  const auto report = algebra.check();
  if (!report.valid()) {
    const auto& issue = report.issues.front();
    throw Error(ErrorKind::InvalidDga,
                issue.message + ": " + format_element(algebra, issue.residual),
                span_of(block.diffs, algebra.generator(issue.generator).name));
  }
  return algebra;
}

ModelDocument parse_algebra_document(Parser& p, std::string_view text) {
  p.expect_keyword("algebra");
  const auto name = p.expect_name();
  p.expect_punct("{");
  const auto block = p.parse_items(true);
  p.expect_punct("}");
  p.expect_end();
  std::map<std::string, SourceSpan> spans;
  record_spans(block, spans);
  auto algebra = build_algebra(name.text, block);
  return {std::string(text), std::move(algebra), std::move(spans)};
}

ModelDocument parse_fibration_document(Parser& p, std::string_view text) {
  p.expect_keyword("fibration");
  const auto name = p.expect_name();
  p.expect_punct("{");
  p.expect_keyword("base");
  p.expect_punct("{");
  const auto base_block = p.parse_items(true);
  p.expect_punct("}");
  p.expect_keyword("fibre");
  p.expect_punct("{");
  const auto fibre_block = p.parse_items(true);
  p.expect_punct("}");
  p.expect_keyword("total");
  const auto total_start = p.peek().span;
  p.expect_punct("{");
  if (p.at_keyword("gen")) {
    throw Error(ErrorKind::Syntax, "generators cannot be declared in the total block",
                p.peek().span);
  }
  const auto total_block = p.parse_items(false);
  p.expect_punct("}");
  p.expect_punct("}");
  p.expect_end();

  std::map<std::string, SourceSpan> spans;
  record_spans(base_block, spans);
  record_spans(fibre_block, spans);

  DgAlgebra base = build_algebra(name.text + ".base", base_block);
  DgAlgebra fibre = build_algebra(name.text + ".fibre", fibre_block);
  for (const auto& g : fibre_block.gens) {
    if (base.find(g.name)) {
      throw Error(ErrorKind::DuplicateGenerator,
                  "generator '" + g.name + "' appears in both base and fibre", g.span);
    }
  }
  const DgAlgebra product = KsModel::product_algebra(base, fibre);
  std::map<std::string, Element> twisting;
  for (const auto& d : total_block.diffs) {
    if (base.find(d.name)) {
      throw Error(ErrorKind::BaseDifferentialOverride,
                  "d on base generator '" + d.name + "' is fixed by the base block", d.span);
    }
    const auto g = fibre.find(d.name);
    if (!g) {
      throw Error(ErrorKind::UnknownGenerator, "unknown generator '" + d.name + "'", d.span);
    }
    if (twisting.count(d.name)) {
      throw Error(ErrorKind::Syntax, "total differential of '" + d.name + "' given twice",
                  d.span);
    }
    twisting.emplace(d.name,
                     build_element(product, d.value, fibre.generator(*g).degree + 1));
  }
  KsModel model(name.text, std::move(base), std::move(fibre), twisting);
  const auto validation = validate_ks(model);
  if (!validation.valid()) {
    const auto& issue = validation.issues.front();
    std::optional<SourceSpan> where = total_start;
    for (const auto& d : total_block.diffs) {
      if (issue.message.find("(" + d.name + ")") != std::string::npos) {
        where = d.span;
        break;
      }
    }
    throw Error(ErrorKind::InvalidKsModel, issue.invariant + ": " + issue.message, where);
  }
  return {std::string(text), std::move(model), std::move(spans)};
}

void render_block(std::string& out, const DgAlgebra& algebra, const std::string& indent) {
  for (const auto& g : algebra.generators()) {
    out += indent + "gen " + g.name + " : " + std::to_string(g.degree) + "\n";
  }
  for (GenIndex g = 0; g < algebra.size(); ++g) {
    const auto& dg = algebra.differential(g);
    if (dg.is_zero()) continue;
    out += indent + "d " + algebra.generator(g).name + " = " + format_element(algebra, dg) + "\n";
  }
}

}  // namespace

ModelDocument parse_document(std::string_view text) {
  Parser p(text);
  if (p.at_keyword("algebra")) return parse_algebra_document(p, text);
  if (p.at_keyword("fibration")) return parse_fibration_document(p, text);
  p.fail("'algebra' or 'fibration'");
}

DgAlgebra parse_dga(std::string_view text) {
  Parser p(text);
  if (!p.at_keyword("algebra")) p.fail("'algebra'");
  return std::get<DgAlgebra>(parse_algebra_document(p, text).payload);
}

KsModel parse_ks(std::string_view text) {
  Parser p(text);
  if (!p.at_keyword("fibration")) p.fail("'fibration'");
  return std::get<KsModel>(parse_fibration_document(p, text).payload);
}

std::string render_dga(const DgAlgebra& algebra) {
  std::string out = "algebra " + algebra.name() + " {\n";
  render_block(out, algebra, "  ");
  return out + "}\n";
}

std::string render_ks(const KsModel& model) {
  std::string out = "fibration " + model.name() + " {\n  base {\n";
  render_block(out, model.base(), "    ");
  out += "  }\n  fibre {\n";
  render_block(out, model.fibre(), "    ");
  out += "  }\n  total {\n";
  const auto& total = model.total();
  for (GenIndex v = 0; v < model.fibre().size(); ++v) {
    const auto t = model.total_index_of_fibre(v);
    const auto& de = total.differential(t);
    if (de == model.from_fibre_element(model.fibre().differential(v))) continue;
    out += "    d " + total.generator(t).name + " = " + format_element(total, de) + "\n";
  }
  return out + "  }\n}\n";
}

std::string render(const ModelDocument& doc) {
  if (const auto* ks = std::get_if<KsModel>(&doc.payload)) return render_ks(*ks);
  return render_dga(std::get<DgAlgebra>(doc.payload));
}

}  // namespace gottlieb
