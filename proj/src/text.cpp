#include "vptk/text.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "vptk/error.hpp"

namespace vptk {

namespace {

const std::string kEpsilon = "ε";

bool is_space(char ch) { return std::isspace(static_cast<unsigned char>(ch)) != 0; }

template <typename Seq>
std::string join_names(const Seq& names) {
  std::string out;
  for (const auto& n : names) {
    if (!out.empty()) out += ' ';
    out += n;
  }
  return out;
}

}  // namespace

std::string format_word(const Word& w) {
  if (w.empty()) return kEpsilon;
  return join_names(w);
}

std::string format_word(const NestedWord& w) { return format_word(names_of(w)); }

Word parse_tokens(std::string_view text) {
  Word out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    const std::size_t start = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    if (i > start) out.emplace_back(text.substr(start, i - start));
  }
  if (out.size() == 1 && out.front() == kEpsilon) out.clear();
  return out;
}

// ---------------------------------------------------------------------------
// Terms

namespace {

class TermReader {
 public:
  explicit TermReader(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
  }
  bool done() {
    skip_space();
    return pos_ == text_.size();
  }
  bool peek(char ch) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == ch;
  }
  void expect(char ch) {
    if (!peek(ch)) fail(std::string("expected '") + ch + "'");
    ++pos_;
  }
  Symbol label() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && !is_space(text_[pos_]) && text_[pos_] != '(' &&
           text_[pos_] != ')')
      ++pos_;
    if (pos_ == start) fail("expected a label");
    return Symbol(text_.substr(start, pos_ - start));
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, 1, pos_ + 1);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

Hedge read_hedge(TermReader& in) {
  Hedge h;
  while (!in.done() && !in.peek(')')) {
    Symbol label = in.label();
    Hedge children;
    if (in.peek('(')) {
      in.expect('(');
      children = read_hedge(in);
      in.expect(')');
    }
    h.push_back(node(std::move(label), std::move(children)));
  }
  return h;
}

BinaryTree read_binary(TermReader& in) {
  Symbol label = in.label();
  if (label == "_") return BinaryTree();
  if (!in.peek('(')) return BinaryTree(std::move(label), {}, {});
  in.expect('(');
  BinaryTree left = read_binary(in);
  BinaryTree right = read_binary(in);
  in.expect(')');
  return BinaryTree(std::move(label), std::move(left), std::move(right));
}

void write_hedge(const Hedge& h, std::string& out) {
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (i != 0) out += ' ';
    out += h[i].label;
    if (!h[i].children.empty()) {
      out += '(';
      write_hedge(h[i].children, out);
      out += ')';
    }
  }
}

void write_binary(const BinaryTree& t, std::string& out) {
  if (t.is_leaf()) {
    out += '_';
    return;
  }
  out += t.label();
  out += '(';
  write_binary(t.left(), out);
  out += ' ';
  write_binary(t.right(), out);
  out += ')';
}

}  // namespace

NestedWord parse_nested(std::string_view text, const std::set<Symbol>& calls,
                        const std::set<Symbol>& returns) {
  const bool by_prefix = calls.empty() && returns.empty();
  NestedWord w;
  for (auto& t : parse_tokens(text)) {
    if (t == kBottomCall || calls.count(t) != 0 || (by_prefix && t.front() == 'c')) {
      w.push_back(call(std::move(t)));
    } else if (t == kBottomReturn || returns.count(t) != 0 || (by_prefix && t.front() == 'r')) {
      w.push_back(ret(std::move(t)));
    } else {
      throw AlphabetError("cannot tell whether '" + t + "' is a call or a return");
    }
  }
  return w;
}

std::string format_hedge(const Hedge& h) {
  if (h.empty()) return kEpsilon;
  std::string out;
  write_hedge(h, out);
  return out;
}

Hedge parse_hedge(std::string_view text) {
  if (parse_tokens(text).empty()) return {};
  TermReader in(text);
  Hedge h = read_hedge(in);
  if (!in.done()) in.fail("unbalanced ')'");
  return h;
}

std::string format_binary_tree(const BinaryTree& t) {
  std::string out;
  write_binary(t, out);
  return out;
}

BinaryTree parse_binary_tree(std::string_view text) {
  TermReader in(text);
  BinaryTree t = read_binary(in);
  if (!in.done()) in.fail("trailing input after binary tree");
  return t;
}

// ---------------------------------------------------------------------------
// Model files

namespace {

struct Token {
  std::string text;
  std::size_t line;
  std::size_t column;
};

using Line = std::vector<Token>;

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    ++line_no;
    Line line;
    std::size_t i = 0;
    while (i < raw.size()) {
      if (is_space(raw[i])) {
        ++i;
        continue;
      }
      if (raw[i] == '#') break;
      if (raw[i] == '[' || raw[i] == ']') {
        line.push_back({std::string(1, raw[i]), line_no, i + 1});
        ++i;
        continue;
      }
      const std::size_t from = i;
      while (i < raw.size() && !is_space(raw[i]) && raw[i] != '[' && raw[i] != ']') ++i;
      line.push_back({std::string(raw.substr(from, i - from)), line_no, from + 1});
    }
    if (!line.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

[[noreturn]] void fail_at(const Token& t, const std::string& msg) {
  throw ParseError(msg, t.line, t.column);
}

bool is_key(const std::string& s) { return s.size() > 1 && s.back() == ':'; }

/// key -> tokens for header lines; body lines returned separately.
struct Sections {
  std::map<std::string, std::vector<Token>> headers;
  std::vector<Line> body;
};

Sections split_sections(const std::vector<Line>& lines, const std::set<std::string>& keys) {
  Sections s;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const Line& line = lines[i];
    if (!is_key(line.front().text)) {
      s.body.push_back(line);
      continue;
    }
    std::string key;
    for (const Token& t : line) {
      if (is_key(t.text)) {
        key = t.text.substr(0, t.text.size() - 1);
        if (keys.count(key) == 0) fail_at(t, "unknown header '" + t.text + "'");
        if (s.headers.count(key) != 0) fail_at(t, "duplicate header '" + t.text + "'");
        s.headers[key];
        continue;
      }
      if (t.text == "[" || t.text == "]") fail_at(t, "unexpected bracket in header");
      s.headers[key].push_back(t);
    }
  }
  return s;
}

std::set<Symbol> symbols_of(const Sections& s, const std::string& key) {
  std::set<Symbol> out;
  if (auto it = s.headers.find(key); it != s.headers.end())
    for (const Token& t : it->second) out.insert(t.text);
  return out;
}

OutputAlphabet output_of(const Sections& s, const Token& where) {
  const bool plain = s.headers.count("out") != 0;
  const bool structured = s.headers.count("out-calls") != 0 || s.headers.count("out-returns") != 0;
  if (plain && structured)
    fail_at(where, "'out:' cannot be combined with 'out-calls:'/'out-returns:'");
  if (structured) {
    try {
      return OutputAlphabet::structured(
          StructuredAlphabet(symbols_of(s, "out-calls"), symbols_of(s, "out-returns")));
    } catch (const AlphabetError& e) {
      fail_at(where, e.what());
    }
  }
  return OutputAlphabet::plain(symbols_of(s, "out"));
}

class LineReader {
 public:
  explicit LineReader(const Line& line) : line_(line) {}

  const Token& next(const char* what) {
    if (pos_ >= line_.size()) {
      const Token& last = line_.back();
      throw ParseError(std::string("expected ") + what, last.line,
                       last.column + last.text.size());
    }
    return line_[pos_++];
  }
  void expect(const std::string& text) {
    const Token& t = next(("'" + text + "'").c_str());
    if (t.text != text) fail_at(t, "expected '" + text + "', found '" + t.text + "'");
  }
  Word word() {
    expect("[");
    Word w;
    for (;;) {
      const Token& t = next("']'");
      if (t.text == "]") return w;
      if (t.text == "[") fail_at(t, "nested '['");
      w.push_back(t.text);
    }
  }
  bool at(const std::string& text) const { return pos_ < line_.size() && line_[pos_].text == text; }
  bool done() const { return pos_ == line_.size(); }
  void finish() {
    if (!done()) fail_at(line_[pos_], "unexpected '" + line_[pos_].text + "'");
  }

 private:
  const Line& line_;
  std::size_t pos_ = 0;
};

StateId lookup(const NameTable& table, const Token& t, const char* what) {
  auto id = table.find(t.text);
  if (!id) fail_at(t, std::string("undeclared ") + what + " '" + t.text + "'");
  return *id;
}

NameTable table_of(const Sections& s, const std::string& key) {
  NameTable table;
  if (auto it = s.headers.find(key); it != s.headers.end()) {
    for (const Token& t : it->second) {
      if (table.find(t.text)) fail_at(t, "duplicate name '" + t.text + "'");
      table.intern(t.text);
    }
  }
  return table;
}

std::set<StateId> state_set(const Sections& s, const std::string& key, const NameTable& states) {
  std::set<StateId> out;
  if (auto it = s.headers.find(key); it != s.headers.end())
    for (const Token& t : it->second) out.insert(lookup(states, t, "state"));
  return out;
}

void check_name(const std::string& name) {
  const bool bad = name.empty() || name.front() == '#' || name.back() == ':' ||
                   name == "->" ||
                   name.find_first_of(" \t\r\n[]") != std::string::npos;
  if (bad) throw Error("name '" + name + "' cannot be written in the text format");
}

template <typename Seq>
void write_list(std::ostringstream& os, const char* key, const Seq& names) {
  os << key;
  for (const auto& n : names) {
    check_name(n);
    os << ' ' << n;
  }
  os << '\n';
}

std::string bracketed(const Word& w) {
  std::string out = "[";
  for (std::size_t i = 0; i < w.size(); ++i) {
    check_name(w[i]);
    if (i != 0) out += ' ';
    out += w[i];
  }
  return out + "]";
}

void write_output_alphabet(std::ostringstream& os, const OutputAlphabet& out) {
  if (out.is_structured()) {
    write_list(os, "out-calls:", out.structure().calls());
    write_list(os, "out-returns:", out.structure().returns());
  } else {
    write_list(os, "out:", out.symbols());
  }
}

template <typename Ids>
std::vector<std::string> names_for(const NameTable& table, const Ids& ids) {
  std::vector<std::string> out;
  for (auto id : ids) out.push_back(table.name(id));
  return out;
}

}  // namespace

std::string to_text(const Vpt& a) {
  std::ostringstream os;
  os << "vpt\n";
  write_list(os, "calls:", a.input_alphabet().calls());
  write_list(os, "returns:", a.input_alphabet().returns());
  write_output_alphabet(os, a.output_alphabet());
  write_list(os, "states:", a.states().names());
  write_list(os, "stack:", a.stack().names());
  write_list(os, "initial:", names_for(a.states(), a.initial()));
  write_list(os, "final:", names_for(a.states(), a.final()));
  for (const auto& t : a.calls())
    os << "call " << a.states().name(t.from) << ' ' << t.symbol << ' '
       << a.stack().name(t.stack) << ' ' << bracketed(t.output) << ' '
       << a.states().name(t.to) << '\n';
  for (const auto& t : a.returns())
    os << "ret " << a.states().name(t.from) << ' ' << t.symbol << ' '
       << a.stack().name(t.stack) << ' ' << bracketed(t.output) << ' '
       << a.states().name(t.to) << '\n';
  return os.str();
}

std::string to_text(const H2s& t) {
  std::ostringstream os;
  os << (t.is_standard() ? "h2s\n" : "h2s extended\n");
  write_list(os, "in:", t.input_alphabet());
  write_output_alphabet(os, t.output_alphabet());
  write_list(os, "states:", t.states().names());
  write_list(os, "initial:", names_for(t.states(), t.initial()));
  for (const auto& l : t.leaves()) {
    os << "leaf " << t.states().name(l.state);
    if (!l.output.empty()) os << ' ' << bracketed(l.output);
    os << '\n';
  }
  for (const auto& r : t.rules())
    os << "rule " << t.states().name(r.state) << ' ' << r.label << " -> "
       << bracketed(r.w1) << ' ' << t.states().name(r.child) << ' ' << bracketed(r.w2)
       << ' ' << t.states().name(r.sibling) << ' ' << bracketed(r.w3) << '\n';
  return os.str();
}

std::string to_text(const Model& m) {
  return std::visit([](const auto& x) { return to_text(x); }, m);
}

Vpt parse_vpt(std::string_view text) {
  const auto lines = tokenize(text);
  if (lines.empty() || lines.front().front().text != "vpt")
    throw ParseError("expected 'vpt' header", lines.empty() ? 1 : lines.front().front().line, 1);
  const Line& head = lines.front();
  if (head.size() != 1) fail_at(head[1], "unexpected '" + head[1].text + "' after 'vpt'");
  const Sections s = split_sections(
      lines, {"calls", "returns", "out", "out-calls", "out-returns", "states", "stack",
              "initial", "final"});

  VptDefinition d;
  try {
    d.input = StructuredAlphabet(symbols_of(s, "calls"), symbols_of(s, "returns"));
  } catch (const AlphabetError& e) {
    fail_at(head.front(), e.what());
  }
  d.output = output_of(s, head.front());
  d.states = table_of(s, "states");
  d.stack = table_of(s, "stack");
  d.initial = state_set(s, "initial", d.states);
  d.final = state_set(s, "final", d.states);

  for (const Line& line : s.body) {
    LineReader in(line);
    const Token& kind = in.next("'call' or 'ret'");
    if (kind.text != "call" && kind.text != "ret")
      fail_at(kind, "expected 'call' or 'ret', found '" + kind.text + "'");
    const bool is_call = kind.text == "call";
    VptTransition t;
    t.from = lookup(d.states, in.next("a state"), "state");
    const Token& sym = in.next("a symbol");
    if (d.input.tag_of(sym.text) != (is_call ? Tag::call : Tag::ret))
      fail_at(sym, "'" + sym.text + "' is not a declared " +
                       (is_call ? "call" : "return") + " symbol");
    t.symbol = sym.text;
    t.stack = lookup(d.stack, in.next("a stack symbol"), "stack symbol");
    const Token& open = in.next("'['");
    if (open.text != "[") fail_at(open, "expected '[' before the output word");
    for (;;) {
      const Token& o = in.next("']'");
      if (o.text == "]") break;
      if (!d.output.contains(o.text))
        fail_at(o, "output symbol '" + o.text + "' is not in the output alphabet");
      t.output.push_back(o.text);
    }
    t.to = lookup(d.states, in.next("a state"), "state");
    in.finish();
    (is_call ? d.calls : d.returns).push_back(std::move(t));
  }
  return Vpt(std::move(d));
}

H2s parse_h2s(std::string_view text) {
  const auto lines = tokenize(text);
  if (lines.empty() || lines.front().front().text != "h2s")
    throw ParseError("expected 'h2s' header", lines.empty() ? 1 : lines.front().front().line, 1);
  const Line& head = lines.front();
  bool extended = false;
  if (head.size() >= 2) {
    if (head[1].text != "extended" || head.size() > 2)
      fail_at(head[1], "unexpected '" + head[1].text + "' after 'h2s'");
    extended = true;
  }
  const Sections s =
      split_sections(lines, {"in", "out", "out-calls", "out-returns", "states", "initial"});

  H2sDefinition d;
  d.input = symbols_of(s, "in");
  d.output = output_of(s, head.front());
  d.states = table_of(s, "states");
  d.initial = state_set(s, "initial", d.states);

  auto checked_word = [&](LineReader& in) {
    Word w = in.word();
    for (const auto& sym : w)
      if (!d.output.contains(sym))
        throw ModelError("output symbol '" + sym + "' is not in the output alphabet");
    return w;
  };

  for (const Line& line : s.body) {
    LineReader in(line);
    const Token& kind = in.next("'leaf' or 'rule'");
    if (kind.text == "leaf") {
      LeafRule l;
      l.state = lookup(d.states, in.next("a state"), "state");
      if (!in.done()) {
        const Token& at = line[2];
        try {
          l.output = checked_word(in);
        } catch (const ModelError& e) {
          fail_at(at, e.what());
        }
        if (!l.output.empty() && !extended)
          fail_at(at, "leaf outputs need the 'h2s extended' header");
      }
      in.finish();
      d.leaves.push_back(std::move(l));
    } else if (kind.text == "rule") {
      NodeRule r;
      r.state = lookup(d.states, in.next("a state"), "state");
      const Token& label = in.next("a label");
      if (d.input.count(label.text) == 0)
        fail_at(label, "label '" + label.text + "' is not in the input alphabet");
      r.label = label.text;
      in.expect("->");
      try {
        r.w1 = checked_word(in);
        r.child = lookup(d.states, in.next("a state"), "state");
        r.w2 = checked_word(in);
        r.sibling = lookup(d.states, in.next("a state"), "state");
        r.w3 = checked_word(in);
      } catch (const ModelError& e) {
        fail_at(label, e.what());
      }
      in.finish();
      d.rules.push_back(std::move(r));
    } else {
      fail_at(kind, "expected 'leaf' or 'rule', found '" + kind.text + "'");
    }
  }
  return H2s(std::move(d));
}

Model parse_model(std::string_view text) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw ParseError("empty model file", 1, 1);
  const std::string& kind = lines.front().front().text;
  if (kind == "vpt") return parse_vpt(text);
  if (kind == "h2s") return parse_h2s(text);
  fail_at(lines.front().front(), "expected 'vpt' or 'h2s', found '" + kind + "'");
}

Model load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_model(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), 0, 0);
  }
}

void save_model(const std::filesystem::path& path, const Model& m) {
  const std::string text = to_text(m);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
}

}  // namespace vptk
