#include "pac/structure.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace pac {

namespace {

bool lex_less(std::span<const Element> a, std::span<const Element> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool is_identifier(std::string_view s) {
  if (s.empty())
    return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_';
  });
}

std::vector<std::string> default_names(int size) {
  std::vector<std::string> names;
  names.reserve(size);
  for (int i = 0; i < size; ++i)
    names.push_back(std::to_string(i));
  return names;
}

} // namespace

Signature::Signature(std::initializer_list<Symbol> symbols) {
  for (const auto &s : symbols)
    add(s.name, s.arity);
}

Signature::Signature(std::vector<Symbol> symbols) {
  for (auto &s : symbols)
    add(std::move(s.name), s.arity);
}

int Signature::add(std::string name, int arity) {
  if (arity < 1)
    throw Error("symbol '" + name + "' must have arity >= 1");
  if (find(name))
    throw Error("duplicate symbol '" + name + "'");
  symbols_.push_back({std::move(name), arity});
  return size() - 1;
}

std::optional<int> Signature::find(std::string_view name) const {
  for (int i = 0; i < size(); ++i)
    if (symbols_[i].name == name)
      return i;
  return std::nullopt;
}

int Signature::index(std::string_view name) const {
  if (auto i = find(name))
    return *i;
  throw Error("unknown symbol '" + std::string(name) + "'");
}

Relation::Relation(int arity, std::vector<Element> flat) : arity_(arity) {
  if (arity < 1)
    throw Error("relation arity must be >= 1");
  if (flat.size() % arity != 0)
    throw Error("flat tuple data is not a multiple of the arity");
  const std::size_t n = flat.size() / arity;
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i)
    order[i] = i;
  auto tup = [&](std::size_t i) {
    return std::span<const Element>(flat.data() + i * arity, arity);
  };
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return lex_less(tup(a), tup(b)); });
  data_.reserve(flat.size());
  for (std::size_t k = 0; k < n; ++k) {
    auto t = tup(order[k]);
    if (k > 0 && std::equal(t.begin(), t.end(), tup(order[k - 1]).begin()))
      continue;
    data_.insert(data_.end(), t.begin(), t.end());
  }
}

bool Relation::contains(std::span<const Element> t) const {
  if (static_cast<int>(t.size()) != arity_)
    return false;
  std::size_t lo = 0, hi = size();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    auto m = (*this)[mid];
    if (lex_less(m, t))
      lo = mid + 1;
    else
      hi = mid;
  }
  return lo < size() && std::equal(t.begin(), t.end(), (*this)[lo].begin());
}

Structure::Structure(Signature signature, int size,
                     std::vector<Relation> relations)
    : Structure(std::move(signature), default_names(size), std::move(relations)) {}

Structure::Structure(Signature signature, std::vector<std::string> names,
                     std::vector<Relation> relations)
    : signature_(std::move(signature)), names_(std::move(names)),
      relations_(std::move(relations)) {
  validate();
}

void Structure::validate() const {
  if (static_cast<int>(relations_.size()) != signature_.size())
    throw Error("structure has " + std::to_string(relations_.size()) +
                " relations for a signature of " +
                std::to_string(signature_.size()) + " symbols");
  for (int s = 0; s < signature_.size(); ++s) {
    const auto &r = relations_[s];
    if (r.arity() != signature_[s].arity && !(r.empty() && r.arity() == 0))
      throw Error("relation '" + signature_[s].name + "' has arity " +
                  std::to_string(r.arity()) + ", declared " +
                  std::to_string(signature_[s].arity));
    for (Element e : r.flat())
      if (e < 0 || e >= size())
        throw Error("relation '" + signature_[s].name +
                    "' mentions an element outside the universe");
  }
}

std::optional<Element> Structure::find_element(std::string_view name) const {
  for (Element e = 0; e < size(); ++e)
    if (names_[e] == name)
      return e;
  return std::nullopt;
}

std::size_t Structure::tuple_count() const {
  std::size_t n = 0;
  for (const auto &r : relations_)
    n += r.size();
  return n;
}

StructureBuilder::StructureBuilder(Signature signature, int size)
    : StructureBuilder(std::move(signature), default_names(size)) {}

StructureBuilder::StructureBuilder(Signature signature,
                                   std::vector<std::string> names)
    : signature_(std::move(signature)), names_(std::move(names)),
      flat_(signature_.size()) {}

StructureBuilder &StructureBuilder::add(int symbol,
                                        std::span<const Element> tuple) {
  if (symbol < 0 || symbol >= signature_.size())
    throw Error("symbol index out of range");
  if (static_cast<int>(tuple.size()) != signature_[symbol].arity)
    throw Error("tuple for '" + signature_[symbol].name + "' has length " +
                std::to_string(tuple.size()) + ", expected " +
                std::to_string(signature_[symbol].arity));
  for (Element e : tuple)
    if (e < 0 || e >= size())
      throw Error("tuple for '" + signature_[symbol].name +
                  "' mentions element " + std::to_string(e) +
                  " outside the universe");
  flat_[symbol].insert(flat_[symbol].end(), tuple.begin(), tuple.end());
  return *this;
}

StructureBuilder &StructureBuilder::add(std::string_view symbol,
                                        std::initializer_list<Element> tuple) {
  return add(signature_.index(symbol),
             std::span<const Element>(tuple.begin(), tuple.size()));
}

Structure StructureBuilder::build() && {
  std::vector<Relation> rels;
  rels.reserve(signature_.size());
  for (int s = 0; s < signature_.size(); ++s)
    rels.emplace_back(signature_[s].arity, std::move(flat_[s]));
  return Structure(std::move(signature_), std::move(names_), std::move(rels));
}

Structure align(const Structure &a, const Signature &target) {
  std::vector<Relation> rels;
  rels.reserve(target.size());
  for (const auto &sym : target)
    rels.emplace_back(sym.arity);
  for (int s = 0; s < a.signature().size(); ++s) {
    const auto &sym = a.signature()[s];
    auto t = target.find(sym.name);
    if (!t)
      throw Error("symbol '" + sym.name + "' is not in the template signature");
    if (target[*t].arity != sym.arity)
      throw Error("symbol '" + sym.name + "' has arity " +
                  std::to_string(sym.arity) + ", template expects " +
                  std::to_string(target[*t].arity));
    rels[*t] = a.relation(s);
  }
  return Structure(target, a.names(), std::move(rels));
}

namespace {

std::vector<std::string> tokens_of(const std::string &line) {
  std::string body = line.substr(0, line.find('#'));
  std::istringstream ss(body);
  std::vector<std::string> out;
  for (std::string tok; ss >> tok;)
    out.push_back(tok);
  return out;
}

[[noreturn]] void parse_fail(int line, const std::string &msg) {
  throw Error("line " + std::to_string(line) + ": " + msg);
}

} // namespace

Structure parse_structure(std::istream &in) {
  std::vector<std::string> names;
  std::unordered_map<std::string, Element> ids;
  bool have_universe = false;
  Signature sig;
  std::vector<std::vector<Element>> flat;
  int current = -1;

  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    auto toks = tokens_of(line);
    if (toks.empty())
      continue;
    if (toks[0] == "universe") {
      if (have_universe)
        parse_fail(lineno, "duplicate 'universe' line");
      have_universe = true;
      for (std::size_t i = 1; i < toks.size(); ++i) {
        if (!is_identifier(toks[i]))
          parse_fail(lineno, "element id '" + toks[i] + "' is not alphanumeric");
        if (!ids.emplace(toks[i], static_cast<Element>(names.size())).second)
          parse_fail(lineno, "duplicate element '" + toks[i] + "'");
        names.push_back(toks[i]);
      }
    } else if (toks[0] == "relation") {
      if (!have_universe)
        parse_fail(lineno, "'relation' before 'universe'");
      if (toks.size() != 3)
        parse_fail(lineno, "expected 'relation <name> <arity>'");
      if (!is_identifier(toks[1]))
        parse_fail(lineno, "relation name '" + toks[1] + "' is not an identifier");
      int arity = 0;
      try {
        std::size_t used = 0;
        arity = std::stoi(toks[2], &used);
        if (used != toks[2].size())
          throw std::invalid_argument("trailing");
      } catch (const std::exception &) {
        parse_fail(lineno, "arity '" + toks[2] + "' is not an integer");
      }
      try {
        current = sig.add(toks[1], arity);
      } catch (const Error &e) {
        parse_fail(lineno, e.what());
      }
      flat.emplace_back();
    } else {
      if (current < 0)
        parse_fail(lineno, "tuple outside of a relation block");
      if (static_cast<int>(toks.size()) != sig[current].arity)
        parse_fail(lineno, "tuple has " + std::to_string(toks.size()) +
                               " entries, relation '" + sig[current].name +
                               "' has arity " +
                               std::to_string(sig[current].arity));
      for (const auto &t : toks) {
        auto it = ids.find(t);
        if (it == ids.end())
          parse_fail(lineno, "unknown element '" + t + "'");
        flat[current].push_back(it->second);
      }
    }
  }
  if (!have_universe)
    throw Error("missing 'universe' line");
  std::vector<Relation> rels;
  for (int s = 0; s < sig.size(); ++s)
    rels.emplace_back(sig[s].arity, std::move(flat[s]));
  return Structure(std::move(sig), std::move(names), std::move(rels));
}

Structure parse_structure(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_structure(in);
}

Structure load_structure(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw Error("cannot open '" + path + "'");
  try {
    return parse_structure(in);
  } catch (const Error &e) {
    throw Error(path + ": " + e.what());
  }
}

void write_structure(std::ostream &out, const Structure &s) {
  out << "universe";
  for (const auto &n : s.names())
    out << ' ' << n;
  out << '\n';
  for (int r = 0; r < s.signature().size(); ++r) {
    const auto &rel = s.relation(r);
    out << "relation " << s.signature()[r].name << ' '
        << s.signature()[r].arity << '\n';
    for (std::size_t i = 0; i < rel.size(); ++i) {
      auto t = rel[i];
      for (std::size_t j = 0; j < t.size(); ++j)
        out << (j ? " " : "") << s.name(t[j]);
      out << '\n';
    }
  }
}

std::string to_string(const Structure &s) {
  std::ostringstream out;
  write_structure(out, s);
  return out.str();
}

} // namespace pac
