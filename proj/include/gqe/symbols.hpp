#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace gqe {

using SymbolId = int32_t;

struct InputError : std::runtime_error {
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ResourceError : std::runtime_error {
  explicit ResourceError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class SymbolKind { Function, Constant, Predicate };

struct Symbol {
  SymbolKind kind;
  std::string name;
  int arity = 0;
  int creation_index = 0;
  bool is_definer = false;
  bool is_skolem = false;
  int definer_rank = 0;  // 0 for non-definers, -k for the k-th definer
};

// Interning table for all function, constant and predicate symbols.
// A name is bound to exactly one kind/arity; reuse with a different
// profile is an input error.
class Signature {
 public:
  SymbolId intern(SymbolKind kind, const std::string& name, int arity) {
    auto it = by_name_.find(name);
    if (it != by_name_.end()) {
      const Symbol& s = symbols_[it->second];
      if (s.kind != kind || s.arity != arity)
        throw InputError("symbol '" + name + "' reused with different kind or arity");
      return it->second;
    }
    Symbol s;
    s.kind = kind;
    s.name = name;
    s.arity = arity;
    s.creation_index = static_cast<int>(symbols_.size());
    SymbolId id = static_cast<SymbolId>(symbols_.size());
    symbols_.push_back(std::move(s));
    by_name_[name] = id;
    return id;
  }

  SymbolId predicate(const std::string& name, int arity) {
    return intern(SymbolKind::Predicate, name, arity);
  }
  SymbolId constant(const std::string& name) {
    return intern(SymbolKind::Constant, name, 0);
  }
  SymbolId function(const std::string& name, int arity) {
    if (arity < 1) throw InputError("function '" + name + "' needs arity >= 1");
    return intern(SymbolKind::Function, name, arity);
  }

  SymbolId fresh_definer(int arity, const std::string& prefix = "d") {
    std::string name = next_free_name(prefix, definer_counter_);
    SymbolId id = intern(SymbolKind::Predicate, name, arity);
    symbols_[id].is_definer = true;
    symbols_[id].definer_rank = -(++definers_created_);
    return id;
  }

  SymbolId fresh_skolem(int arity) {
    std::string name = next_free_name("sk", skolem_counter_);
    SymbolId id = arity == 0 ? constant(name) : function(name, arity);
    symbols_[id].is_skolem = true;
    return id;
  }

  const Symbol& operator[](SymbolId id) const { return symbols_.at(id); }
  const std::string& name(SymbolId id) const { return symbols_.at(id).name; }
  int arity(SymbolId id) const { return symbols_.at(id).arity; }
  SymbolKind kind(SymbolId id) const { return symbols_.at(id).kind; }
  bool is_definer(SymbolId id) const { return symbols_.at(id).is_definer; }
  size_t size() const { return symbols_.size(); }

  SymbolId lookup(const std::string& name) const {
    auto it = by_name_.find(name);
    return it == by_name_.end() ? -1 : it->second;
  }

  int definers_created() const { return definers_created_; }

 private:
  std::string next_free_name(const std::string& prefix, int& counter) {
    for (;;) {
      std::string name = prefix + std::to_string(++counter);
      if (by_name_.find(name) == by_name_.end()) return name;
    }
  }

  std::vector<Symbol> symbols_;
  std::map<std::string, SymbolId> by_name_;
  int definer_counter_ = 0;
  int skolem_counter_ = 0;
  int definers_created_ = 0;
};

// Total precedence over symbols. Class dominates: function > constant >
// predicate. Within a class: explicitly ordered symbols first, then skolem
// symbols (newer below older), then input symbols (older above newer);
// definer predicates sit below every input predicate, later ones lower.
class Precedence {
 public:
  explicit Precedence(const Signature& sig) : sig_(&sig) {}

  void set_order(const std::vector<SymbolId>& high_to_low) {
    override_.clear();
    int n = static_cast<int>(high_to_low.size());
    for (int i = 0; i < n; ++i) override_[high_to_low[i]] = n - i;
  }

  int64_t rank(SymbolId id) const {
    const Symbol& s = (*sig_)[id];
    int64_t cls = s.kind == SymbolKind::Function ? 3 : s.kind == SymbolKind::Constant ? 2 : 1;
    int64_t within;
    auto it = override_.find(id);
    if (it != override_.end())
      within = (int64_t{1} << 28) + it->second;
    else if (s.is_definer)
      within = -(int64_t{1} << 28) + s.definer_rank;
    else if (s.is_skolem)
      within = (int64_t{1} << 27) - s.creation_index;
    else
      within = (int64_t{1} << 20) - s.creation_index;
    return cls * (int64_t{1} << 40) + within;
  }

  bool greater(SymbolId a, SymbolId b) const { return rank(a) > rank(b); }

 private:
  const Signature* sig_;
  std::map<SymbolId, int> override_;
};

}  // namespace gqe
