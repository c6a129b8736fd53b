#pragma once

#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pac {

/// Canonical element id: index into a structure's universe.
using Element = std::int32_t;

/// Subset of a small universe, bit i set iff element i is a member.
using Mask = std::uint64_t;

inline constexpr Mask bit(Element e) { return Mask{1} << e; }

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Raised when a configured size cap or search budget would be exceeded.
class CapExceeded : public Error {
public:
  using Error::Error;
};

struct Symbol {
  std::string name;
  int arity = 0;

  bool operator==(const Symbol &) const = default;
};

class Signature {
public:
  Signature() = default;
  Signature(std::initializer_list<Symbol> symbols);
  explicit Signature(std::vector<Symbol> symbols);

  /// Appends a symbol and returns its index. Names must be unique, arity >= 1.
  int add(std::string name, int arity);

  std::optional<int> find(std::string_view name) const;
  int index(std::string_view name) const;

  const Symbol &operator[](int i) const { return symbols_[i]; }
  int size() const { return static_cast<int>(symbols_.size()); }
  auto begin() const { return symbols_.begin(); }
  auto end() const { return symbols_.end(); }

  bool operator==(const Signature &) const = default;

private:
  std::vector<Symbol> symbols_;
};

/// A set of tuples of fixed arity, stored flat in lexicographic order.
class Relation {
public:
  Relation() = default;
  explicit Relation(int arity) : arity_(arity) {}
  /// Takes flat tuple data (size divisible by arity); sorts and deduplicates.
  Relation(int arity, std::vector<Element> flat);

  int arity() const { return arity_; }
  std::size_t size() const {
    return arity_ == 0 ? 0 : data_.size() / static_cast<std::size_t>(arity_);
  }
  bool empty() const { return data_.empty(); }

  std::span<const Element> operator[](std::size_t i) const {
    return {data_.data() + i * arity_, static_cast<std::size_t>(arity_)};
  }
  const std::vector<Element> &flat() const { return data_; }

  bool contains(std::span<const Element> t) const;

  bool operator==(const Relation &) const = default;

private:
  int arity_ = 0;
  std::vector<Element> data_;
};

class Structure {
public:
  Structure() = default;
  /// Universe of `size` elements named "0", "1", ...
  Structure(Signature signature, int size, std::vector<Relation> relations);
  Structure(Signature signature, std::vector<std::string> names,
            std::vector<Relation> relations);

  const Signature &signature() const { return signature_; }
  int size() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string> &names() const { return names_; }
  const std::string &name(Element e) const { return names_[e]; }
  std::optional<Element> find_element(std::string_view name) const;

  const Relation &relation(int symbol) const { return relations_[symbol]; }
  const Relation &relation(std::string_view symbol) const {
    return relations_[signature_.index(symbol)];
  }
  const std::vector<Relation> &relations() const { return relations_; }

  /// Total number of tuples over all relations.
  std::size_t tuple_count() const;

private:
  void validate() const;

  Signature signature_;
  std::vector<std::string> names_;
  std::vector<Relation> relations_;
};

/// Accumulates tuples; `build` validates, sorts and deduplicates.
class StructureBuilder {
public:
  StructureBuilder(Signature signature, int size);
  StructureBuilder(Signature signature, std::vector<std::string> names);

  StructureBuilder &add(int symbol, std::span<const Element> tuple);
  StructureBuilder &add(std::string_view symbol,
                        std::initializer_list<Element> tuple);
  StructureBuilder &add(int symbol, std::initializer_list<Element> tuple) {
    return add(symbol, std::span<const Element>(tuple.begin(), tuple.size()));
  }

  const Signature &signature() const { return signature_; }
  int size() const { return static_cast<int>(names_.size()); }

  Structure build() &&;

private:
  Signature signature_;
  std::vector<std::string> names_;
  std::vector<std::vector<Element>> flat_;
};

/// Re-expresses `a` over `target`: relations are matched by name, symbols the
/// instance does not mention become empty relations. Throws on symbols not in
/// `target` or arity mismatches.
Structure align(const Structure &a, const Signature &target);

/// Parses the line-oriented structure format:
///   universe <id> ...
///   relation <name> <arity>
///   <id> ... (one tuple per line)
Structure parse_structure(std::istream &in);
Structure parse_structure(std::string_view text);
Structure load_structure(const std::string &path);

void write_structure(std::ostream &out, const Structure &s);
std::string to_string(const Structure &s);

} // namespace pac
