#include "pac/ac.hpp"

#include <algorithm>
#include <random>

namespace pac {

SupportTable SupportTable::from_structure(const Structure &b) {
  if (b.size() > 64)
    throw CapExceeded("AC templates are limited to 64 elements, got " +
                      std::to_string(b.size()));
  return {b.signature(), b.size(), b.relations()};
}

Network::Network(const Structure &a)
    : variables_(a.size()), watch_(a.size()) {
  for (int r = 0; r < a.signature().size(); ++r) {
    const auto &rel = a.relation(r);
    for (std::size_t i = 0; i < rel.size(); ++i) {
      Constraint c{r, {rel[i].begin(), rel[i].end()}, false};
      std::vector<Element> vars = c.scope;
      std::sort(vars.begin(), vars.end());
      c.repeats = std::adjacent_find(vars.begin(), vars.end()) != vars.end();
      vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
      const int id = static_cast<int>(constraints_.size());
      for (Element v : vars)
        watch_[v].push_back(id);
      constraints_.push_back(std::move(c));
    }
  }
}

void revise(const Relation &allowed, std::span<const Mask> labels,
            std::span<Mask> out) {
  const std::size_t k = labels.size();
  for (std::size_t p = 0; p < k; ++p)
    out[p] = 0;
  const auto &flat = allowed.flat();
  for (std::size_t i = 0; i < flat.size(); i += k) {
    bool fits = true;
    for (std::size_t p = 0; p < k && fits; ++p)
      fits = (labels[p] & bit(flat[i + p])) != 0;
    if (!fits)
      continue;
    for (std::size_t p = 0; p < k; ++p)
      out[p] |= bit(flat[i + p]);
  }
  for (std::size_t p = 0; p < k; ++p)
    out[p] &= labels[p];
}

namespace {

class Propagator {
public:
  Propagator(const Network &net, const SupportTable &table, DomainMap dom,
             const AcOptions &opt)
      : net_(net), table_(table), opt_(opt) {
    out_.domains = std::move(dom);
  }

  PropagationOutcome run() {
    for (Mask d : out_.domains)
      if (d == 0) {
        out_.status = Consistency::inconsistent;
        return std::move(out_);
      }
    if (opt_.mode == AcMode::naive)
      run_naive();
    else
      run_worklist();
    return std::move(out_);
  }

private:
  // Returns false on a wipe-out. `on_change(v)` is called for every shrunk
  // variable.
  template <typename OnChange>
  bool revise_constraint(int cid, OnChange &&on_change) {
    const auto &c = net_.constraints()[cid];
    const std::size_t k = c.scope.size();
    labels_.resize(k);
    supports_.resize(k);
    for (std::size_t p = 0; p < k; ++p)
      labels_[p] = out_.domains[c.scope[p]];
    revise(table_.allowed[c.symbol], labels_, supports_);
    for (std::size_t p = 0; p < k; ++p) {
      const Element v = c.scope[p];
      const Mask before = out_.domains[v];
      const Mask after = before & supports_[p];
      if (after == before)
        continue;
      out_.domains[v] = after;
      if (opt_.trace)
        out_.trace.push_back({cid, static_cast<int>(p), before, after});
      if (after == 0) {
        out_.status = Consistency::inconsistent;
        return false;
      }
      on_change(v);
    }
    return true;
  }

  void run_naive() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int cid = 0; cid < static_cast<int>(net_.constraints().size()); ++cid)
        if (!revise_constraint(cid, [&](Element) { changed = true; }))
          return;
    }
  }

  void run_worklist() {
    const int m = static_cast<int>(net_.constraints().size());
    std::vector<int> queue;
    queue.reserve(m);
    std::vector<char> queued(m, 1);
    for (int c = 0; c < m; ++c)
      queue.push_back(c);
    std::mt19937_64 rng(opt_.shuffle_seed.value_or(0));
    if (opt_.shuffle_seed)
      std::shuffle(queue.begin(), queue.end(), rng);
    std::size_t head = 0;
    while (head < queue.size()) {
      int cid;
      if (opt_.shuffle_seed) {
        std::uniform_int_distribution<std::size_t> pick(head, queue.size() - 1);
        std::swap(queue[head], queue[pick(rng)]);
      }
      cid = queue[head++];
      if (head > 4096 && head * 2 > queue.size()) {
        queue.erase(queue.begin(), queue.begin() + head);
        head = 0;
      }
      queued[cid] = 0;
      const bool self = net_.constraints()[cid].repeats;
      const bool ok = revise_constraint(cid, [&](Element v) {
        for (int w : net_.watching(v))
          if (!queued[w] && (w != cid || self)) {
            queued[w] = 1;
            queue.push_back(w);
          }
      });
      if (!ok)
        return;
    }
  }

  const Network &net_;
  const SupportTable &table_;
  const AcOptions &opt_;
  PropagationOutcome out_;
  std::vector<Mask> labels_;
  std::vector<Mask> supports_;
};

} // namespace

PropagationOutcome propagate(const Network &net, const SupportTable &table,
                             DomainMap initial, const AcOptions &options) {
  if (static_cast<int>(initial.size()) != net.variables())
    throw Error("initial domain map does not match the instance");
  return Propagator(net, table, std::move(initial), options).run();
}

PropagationOutcome ac_finite(const Structure &a, const Structure &b,
                             const FinitePins &pins, const AcOptions &options) {
  if (!(a.signature() == b.signature()))
    throw Error("instance and template have different signatures");
  SupportTable table = SupportTable::from_structure(b);
  DomainMap dom(a.size(), table.top());
  for (auto [v, x] : pins) {
    if (v < 0 || v >= a.size())
      throw Error("pinned variable outside the instance");
    if (x < 0 || x >= b.size())
      throw Error("pin value outside the template universe");
    dom[v] &= bit(x);
  }
  return propagate(Network(a), table, std::move(dom), options);
}

TemplateDescriptor::TemplateDescriptor(
    std::string name, Signature signature, DescriptorContext unpinned,
    std::vector<std::pair<std::string, DescriptorContext>> pinned)
    : name_(std::move(name)), signature_(std::move(signature)),
      unpinned_(std::move(unpinned)), pinned_(std::move(pinned)) {
  auto check = [&](const DescriptorContext &c) {
    if (!(c.table.signature == signature_))
      throw Error("descriptor context signature mismatch");
    if (c.table.values < 1 || c.table.values > 64)
      throw Error("descriptor contexts need 1..64 atoms");
  };
  check(unpinned_);
  for (const auto &[n, c] : pinned_) {
    check(c);
    if (c.pin == 0 || (c.pin & ~c.table.top()))
      throw Error("representative '" + n + "' has an invalid pin label");
  }
}

std::optional<int>
TemplateDescriptor::find_representative(std::string_view name) const {
  for (int r = 0; r < representative_count(); ++r)
    if (pinned_[r].first == name)
      return r;
  return std::nullopt;
}

const DescriptorContext &
TemplateDescriptor::context(std::optional<int> rep) const {
  if (!rep)
    return unpinned_;
  if (*rep < 0 || *rep >= representative_count())
    throw Error("unknown representative " + std::to_string(*rep) +
                " for descriptor '" + name_ + "'");
  return pinned_[*rep].second;
}

std::vector<Mask> TemplateDescriptor::propagate(int symbol,
                                                std::span<const Mask> labels,
                                                std::optional<int> rep) const {
  const auto &ctx = context(rep);
  if (symbol < 0 || symbol >= signature_.size())
    throw Error("unknown symbol index");
  if (static_cast<int>(labels.size()) != signature_[symbol].arity)
    throw Error("label count does not match the arity");
  std::vector<Mask> out(labels.size());
  revise(ctx.table.allowed[symbol], labels, out);
  return out;
}

std::string TemplateDescriptor::label_name(Mask label,
                                           std::optional<int> rep) const {
  const auto &ctx = context(rep);
  if (label == 0)
    return "{}";
  std::string s = "{";
  bool first = true;
  for (int a = 0; a < ctx.table.values; ++a)
    if (label & bit(a)) {
      s += (first ? "" : ",") + ctx.atoms[a];
      first = false;
    }
  return s + "}";
}

PropagationOutcome ac_descriptor(const Structure &a,
                                 const TemplateDescriptor &desc,
                                 const DescriptorPins &pins,
                                 const AcOptions &options) {
  Structure aligned = align(a, desc.signature());
  std::optional<int> rep;
  for (auto [v, r] : pins) {
    if (v < 0 || v >= a.size())
      throw Error("pinned variable outside the instance");
    desc.context(r); // validates r
    if (rep && *rep != r)
      throw Error("descriptor pins must all use one representative");
    rep = r;
  }
  const auto &ctx = desc.context(rep);
  DomainMap dom(a.size(), ctx.table.top());
  for (auto [v, r] : pins)
    dom[v] &= ctx.pin;
  return propagate(Network(aligned), ctx.table, std::move(dom), options);
}

bool acc_holds(const Structure &a, const Structure &b) {
  return ac_finite(a, b).consistent();
}

bool acc_holds(const Structure &a, const TemplateDescriptor &desc) {
  return ac_descriptor(a, desc).consistent();
}

} // namespace pac
