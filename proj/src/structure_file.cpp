#include "isoprod/structure_file.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace isoprod
{

std::pair<int, int> line_column(std::string_view text, std::size_t offset)
{
  offset = std::min(offset, text.size());
  int line = 1, col = 1;
  for (std::size_t i = 0; i < offset; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

namespace
{

[[noreturn]] void fail(std::string_view source, std::size_t offset, std::string const &msg)
{
  auto [l, c] = line_column(source, offset);
  throw ParseError(std::to_string(l) + ":" + std::to_string(c) + ": " + msg, offset, l, c);
}

bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// One logical statement: a line, extended while brackets are open.
struct Statement
{
  std::string_view text;
  std::size_t offset;
};

std::vector<Statement> split_statements(std::string_view src)
{
  std::vector<Statement> out;
  std::size_t i = 0, n = src.size();
  while (i < n) {
    // skip blank space and comments between statements
    if (std::isspace(static_cast<unsigned char>(src[i]))) {
      ++i;
      continue;
    }
    if (src[i] == '#') {
      while (i < n && src[i] != '\n')
        ++i;
      continue;
    }
    std::size_t start = i;
    int depth = 0;
    std::size_t end = i;
    while (i < n) {
      char c = src[i];
      if (c == '#') {
        while (i < n && src[i] != '\n')
          ++i;
        continue;
      }
      if (c == '(' || c == '[')
        ++depth;
      else if (c == ')' || c == ']')
        --depth;
      else if (c == '\n' && depth <= 0)
        break;
      if (!std::isspace(static_cast<unsigned char>(c)))
        end = i + 1;
      ++i;
    }
    out.push_back({src.substr(start, end - start), start});
  }
  return out;
}

// Cursor over one statement that reports errors against the whole file.
class Scanner
{
public:
  Scanner(std::string_view src, Statement st) : _src(src), _text(st.text), _base(st.offset) {}

  void skip_ws()
  {
    while (_pos < _text.size() && std::isspace(static_cast<unsigned char>(_text[_pos])))
      ++_pos;
  }
  std::size_t offset() const { return _base + _pos; }
  bool at_end()
  {
    skip_ws();
    return _pos >= _text.size();
  }
  std::string ident(char const *what)
  {
    skip_ws();
    std::size_t s = _pos;
    while (_pos < _text.size() && is_ident_char(_text[_pos]))
      ++_pos;
    if (s == _pos)
      fail(_src, offset(), std::string("expected ") + what);
    return std::string(_text.substr(s, _pos - s));
  }
  void expect(char c)
  {
    skip_ws();
    if (_pos >= _text.size() || _text[_pos] != c)
      fail(_src, offset(), std::string("expected '") + c + "'");
    ++_pos;
  }
  // Remainder of the statement, trimmed.
  Located rest(char const *what)
  {
    skip_ws();
    if (_pos >= _text.size())
      fail(_src, offset(), std::string("expected ") + what);
    Located l{std::string(_text.substr(_pos)), offset()};
    _pos = _text.size();
    return l;
  }
  long integer()
  {
    skip_ws();
    std::size_t s = _pos;
    bool neg = _pos < _text.size() && _text[_pos] == '-';
    if (neg)
      ++_pos;
    long v = 0;
    std::size_t digits = _pos;
    while (_pos < _text.size() && std::isdigit(static_cast<unsigned char>(_text[_pos]))) {
      v = v * 10 + (_text[_pos] - '0');
      if (v > 1'000'000'000)
        fail(_src, _base + s, "integer too large");
      ++_pos;
    }
    if (digits == _pos)
      fail(_src, _base + s, "expected an integer");
    return neg ? -v : v;
  }

private:
  std::string_view _src;
  std::string_view _text;
  std::size_t _base;
  std::size_t _pos = 0;
};

// "[a, b, (1,2)]" -> items with offsets.
std::vector<Located> split_items(std::string_view src, Located const &list)
{
  std::string_view t = list.text;
  if (t.empty() || t.front() != '[' || t.back() != ']')
    fail(src, list.offset, "expected a bracketed list [w1, w2, ...]");
  std::vector<Located> out;
  int depth = 0;
  std::size_t start = 1;
  auto flush = [&](std::size_t end) {
    std::size_t a = start, b = end;
    while (a < b && std::isspace(static_cast<unsigned char>(t[a])))
      ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(t[b - 1])))
      --b;
    if (a == b)
      fail(src, list.offset + a, "empty entry in list");
    out.push_back({std::string(t.substr(a, b - a)), list.offset + a});
  };
  for (std::size_t i = 1; i + 1 < t.size(); ++i) {
    char c = t[i];
    if (c == '(' || c == '[')
      ++depth;
    else if (c == ')' || c == ']')
      --depth;
    else if (c == ',' && depth == 0) {
      flush(i);
      start = i + 1;
    }
  }
  if (depth != 0)
    fail(src, list.offset, "unbalanced parentheses in list");
  flush(t.size() - 1);
  return out;
}

// Drops the " at offset N" tail of recipe and word errors; the caller adds
// line and column instead.
std::string bare(ParseError const &e)
{
  std::string m = e.what();
  auto k = m.rfind(" at offset ");
  return k == std::string::npos ? m : m.substr(0, k);
}

void check_entry_syntax(std::string_view src, Located const &item)
{
  if (item.text.front() == '(')
    return; // element label, checked against the group later
  try {
    parse_word(item.text);
  } catch (ParseError const &e) {
    fail(src, item.offset + e.offset, "malformed word: " + bare(e));
  }
}

} // namespace

StructureFile parse_structure_file(std::string_view text)
{
  StructureFile f;
  f.source = std::string(text);
  std::string_view src = f.source;
  bool have_group = false;

  for (auto const &st : split_statements(src)) {
    Scanner sc(src, st);
    std::size_t kw_at = sc.offset();
    std::string kw = sc.ident("a statement keyword");
    auto side = [&](char const *what) {
      sc.skip_ws();
      std::size_t at = sc.offset();
      std::string s = sc.ident(what);
      if (s != "C" && s != "D")
        fail(src, at, std::string(what) + " must be C or D");
      return s[0];
    };
    auto once = [&](bool taken, std::string const &what) {
      if (taken)
        fail(src, kw_at, "duplicate " + what);
    };

    if (kw == "group") {
      once(have_group, "'group' line");
      sc.expect('=');
      f.group = sc.rest("a group recipe");
      try {
        parse_group_recipe(f.group.text);
      } catch (ParseError const &e) {
        fail(src, f.group.offset + e.offset, bare(e));
      }
      have_group = true;
    } else if (kw == "name") {
      once(f.name.has_value(), "'name' line");
      sc.expect('=');
      f.name = sc.rest("a name").text;
    } else if (kw == "gen") {
      sc.skip_ws();
      std::size_t at = sc.offset();
      std::string alias = sc.ident("an alias name");
      if (alias == "id")
        fail(src, at, "'id' is reserved");
      sc.expect('=');
      Located def = sc.rest("an alias definition");
      check_entry_syntax(src, def);
      f.aliases.push_back({{alias, at}, def});
    } else if (kw == "tuple") {
      char s = side("tuple name");
      sc.expect('=');
      auto items = split_items(src, sc.rest("a tuple"));
      for (auto const &it : items)
        check_entry_syntax(src, it);
      auto &slot = s == 'C' ? f.tuple_c : f.tuple_d;
      once(slot.has_value(), std::string("tuple ") + s);
      slot = std::move(items);
    } else if (kw == "type") {
      char s = side("type name");
      sc.expect('=');
      Located t = sc.rest("a type such as [3^2,4]");
      auto &slot = s == 'C' ? f.type_c : f.type_d;
      once(slot.has_value(), std::string("type ") + s);
      try {
        slot = parse_type(t.text);
      } catch (ParseError const &e) {
        fail(src, t.offset + e.offset, bare(e));
      }
    } else if (kw == "expect") {
      sc.skip_ws();
      std::size_t at = sc.offset();
      std::string what = sc.ident("'genus' or 'type'");
      sc.expect('=');
      if (what == "genus") {
        once(f.expect_genus.has_value(), "'expect genus' line");
        sc.expect('(');
        long a = sc.integer();
        sc.expect(',');
        long b = sc.integer();
        sc.expect(')');
        f.expect_genus = std::pair(a, b);
      } else if (what == "type") {
        once(f.expect_type.has_value(), "'expect type' line");
        sc.skip_ws();
        std::size_t tat = sc.offset();
        std::string t = sc.ident("a type letter");
        if (t == "a")
          f.expect_type = SurfaceType::a;
        else if (t == "b")
          f.expect_type = SurfaceType::b;
        else if (t == "c")
          f.expect_type = SurfaceType::c;
        else if (t == "d")
          f.expect_type = SurfaceType::d;
        else
          fail(src, tat, "expected type a, b, c or d");
      } else {
        fail(src, at, "unknown expectation '" + what + "'");
      }
    } else {
      fail(src, kw_at, "unknown statement '" + kw + "'");
    }
    if (!sc.at_end())
      fail(src, sc.offset(), "unexpected text after statement");
  }
  if (!have_group)
    fail(src, 0, "missing 'group = ...' line");
  return f;
}

namespace
{

Index evaluate_entry(FiniteGroup const &g, AliasMap const &aliases, std::string_view src, Located const &item)
{
  if (item.text.front() == '(') {
    auto x = g.find(item.text);
    if (!x)
      fail(src, item.offset, "no element labelled " + item.text + " in " + g.recipe());
    return *x;
  }
  Word w = parse_word(item.text);
  for (auto const &l : w)
    if (!aliases.count(l.name))
      fail(src, item.offset, "undefined generator alias '" + l.name + "'");
  return evaluate_word(g, w, aliases);
}

} // namespace

LoadedStructure resolve_structure(StructureFile const &f, BuildOptions const &opts)
{
  std::string_view src = f.source;
  LoadedStructure s;
  try {
    s.group = build_group(f.group.text, opts);
  } catch (GroupError const &e) {
    fail(src, f.group.offset, e.what());
  }
  s.aliases = generator_aliases(*s.group);
  for (auto const &[name, def] : f.aliases) {
    Index x = evaluate_entry(*s.group, s.aliases, src, def);
    s.aliases[name.text] = x;
  }
  if (f.tuple_c)
    for (auto const &it : *f.tuple_c)
      s.c.push_back(evaluate_entry(*s.group, s.aliases, src, it));
  if (f.tuple_d)
    for (auto const &it : *f.tuple_d)
      s.d.push_back(evaluate_entry(*s.group, s.aliases, src, it));
  return s;
}

RamificationStructure validate_structure(LoadedStructure const &s)
{
  return make_structure(validate_spherical(s.group, s.c, "tuple C"), validate_spherical(s.group, s.d, "tuple D"));
}

std::vector<std::string> element_words(FiniteGroup const &g)
{
  std::size_t n = g.order();
  auto const &gens = g.generators();
  auto const &names = g.generator_names();
  std::vector<std::vector<std::size_t>> letters(n);
  std::vector<char> seen(n, 0);
  std::vector<Index> queue{g.identity()};
  seen[g.identity()] = 1;
  for (std::size_t h = 0; h < queue.size(); ++h)
    for (std::size_t k = 0; k < gens.size(); ++k) {
      Index y = g.mul(queue[h], gens[k]);
      if (!seen[y]) {
        seen[y] = 1;
        letters[y] = letters[queue[h]];
        letters[y].push_back(k);
        queue.push_back(y);
      }
    }
  std::vector<std::string> out(n);
  for (std::size_t x = 0; x < n; ++x) {
    Word w;
    for (auto k : letters[x]) {
      if (!w.empty() && w.back().name == names[k])
        ++w.back().exponent;
      else
        w.push_back({names[k], 1});
    }
    out[x] = to_string(w);
  }
  return out;
}

std::string write_structure_file(RamificationStructure const &s, std::string const &name)
{
  auto const &g = *s.c.group;
  auto words = element_words(g);
  std::ostringstream out;
  if (!name.empty())
    out << "name = " << name << '\n';
  out << "group = " << g.recipe() << '\n';
  auto tuple = [&](char side, std::vector<Index> const &t) {
    out << "tuple " << side << " = [";
    for (std::size_t i = 0; i < t.size(); ++i)
      out << (i ? ", " : "") << words[t[i]];
    out << "]\n";
  };
  tuple('C', s.c.entries);
  tuple('D', s.d.entries);
  return out.str();
}

} // namespace isoprod
