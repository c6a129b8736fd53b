#include "pac/pac.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "pac/algebra.hpp"

namespace pac {

const char *to_string(PeekOutcome o) {
  switch (o) {
  case PeekOutcome::pass:
    return "pass";
  case PeekOutcome::fail:
    return "fail";
  case PeekOutcome::skipped:
    return "skipped";
  case PeekOutcome::unexplored:
    return "unexplored";
  }
  return "?";
}

bool VariableReport::passed() const {
  return std::any_of(peeks.begin(), peeks.end(), [](const PeekResult &p) {
    return p.outcome == PeekOutcome::pass;
  });
}

bool VariableReport::explored() const {
  return std::none_of(peeks.begin(), peeks.end(), [](const PeekResult &p) {
    return p.outcome == PeekOutcome::unexplored;
  });
}

std::string
PeekReport::to_text(const std::vector<std::string> &variable_names) const {
  std::ostringstream out;
  out << "decision " << (accepted() ? "accept" : "reject");
  if (rejecting_variable)
    out << " variable " << variable_names.at(*rejecting_variable);
  out << '\n';
  for (const auto &v : variables)
    for (const auto &p : v.peeks)
      out << "peek " << variable_names.at(v.variable) << ' '
          << representative_names.at(p.representative) << ' '
          << to_string(p.outcome) << '\n';
  return out.str();
}

int default_workers() {
#ifdef _OPENMP
  return std::max(1, omp_get_max_threads());
#else
  return std::max(1u, std::thread::hardware_concurrency());
#endif
}

namespace {

// One peek = AC on the instance with a single variable confined to the pin
// label of a representative's context.
struct PeekContext {
  const SupportTable *table;
  Mask pin;
};

class PeekKernel {
public:
  PeekKernel(const Structure &aligned, std::vector<PeekContext> contexts,
             std::vector<std::string> rep_names, const PacOptions &opt)
      : net_(aligned), contexts_(std::move(contexts)),
        rep_names_(std::move(rep_names)), opt_(opt) {}

  PeekReport serial() const {
    PeekReport report = blank();
    for (Element v = 0; v < net_.variables(); ++v) {
      report.variables.push_back(peek_variable(v));
      if (!report.variables.back().passed() && !report.rejecting_variable) {
        report.rejecting_variable = v;
        if (opt_.reject_fast) {
          for (Element w = v + 1; w < net_.variables(); ++w)
            report.variables.push_back(unexplored(w));
          break;
        }
      }
    }
    return finish(std::move(report));
  }

  PeekReport parallel(int workers) const {
    const int n = net_.variables();
    std::vector<VariableReport> results(n);
    std::atomic<int> first_reject{n};
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
    for (int v = 0; v < n; ++v) {
      if (opt_.reject_fast && v > first_reject.load(std::memory_order_relaxed))
        continue;
      results[v] = peek_variable(v);
      if (!results[v].passed()) {
        int cur = first_reject.load(std::memory_order_relaxed);
        while (v < cur && !first_reject.compare_exchange_weak(cur, v))
          ;
      }
    }
    // Canonicalise: everything after the least rejecting variable is
    // reported unexplored, whatever the schedule happened to compute.
    PeekReport report = blank();
    const int rej = first_reject.load();
    for (int v = 0; v < n; ++v) {
      if (opt_.reject_fast && v > rej)
        report.variables.push_back(unexplored(v));
      else
        report.variables.push_back(std::move(results[v]));
    }
    if (rej < n)
      report.rejecting_variable = rej;
    return finish(std::move(report));
  }

private:
  PeekReport blank() const {
    PeekReport r;
    r.representative_names = rep_names_;
    return r;
  }

  static PeekReport finish(PeekReport r) {
    r.decision = r.rejecting_variable ? Decision::reject : Decision::accept;
    return r;
  }

  VariableReport unexplored(Element v) const {
    VariableReport vr{v, {}};
    for (int r = 0; r < static_cast<int>(contexts_.size()); ++r)
      vr.peeks.push_back({r, PeekOutcome::unexplored, {}});
    return vr;
  }

  VariableReport peek_variable(Element v) const {
    VariableReport vr{v, {}};
    bool passed = false;
    for (int r = 0; r < static_cast<int>(contexts_.size()); ++r) {
      if (passed && opt_.short_circuit) {
        vr.peeks.push_back({r, PeekOutcome::skipped, {}});
        continue;
      }
      const auto &ctx = contexts_[r];
      DomainMap dom(net_.variables(), ctx.table->top());
      dom[v] &= ctx.pin;
      AcOptions ac = opt_.ac;
      ac.trace = opt_.trace;
      PropagationOutcome res = propagate(net_, *ctx.table, std::move(dom), ac);
      const bool ok = res.consistent();
      passed = passed || ok;
      vr.peeks.push_back({r, ok ? PeekOutcome::pass : PeekOutcome::fail,
                          opt_.trace ? std::move(res.trace)
                                     : std::vector<TraceEvent>{}});
    }
    return vr;
  }

  Network net_;
  std::vector<PeekContext> contexts_;
  std::vector<std::string> rep_names_;
  const PacOptions &opt_;
};

int resolve_workers(const PacOptions &opt) {
  if (opt.workers < 0)
    throw Error("worker count must be positive");
  return opt.workers == 0 ? default_workers() : opt.workers;
}

PeekKernel finite_kernel(const Structure &a, const Structure &b,
                         const SupportTable &table,
                         const std::vector<Element> &reps,
                         const PacOptions &opt) {
  if (!(a.signature() == b.signature()))
    throw Error("instance and template have different signatures");
  std::vector<PeekContext> ctx;
  std::vector<std::string> names;
  for (Element r : reps) {
    ctx.push_back({&table, bit(r)});
    names.push_back(b.name(r));
  }
  return PeekKernel(a, std::move(ctx), std::move(names), opt);
}

PeekKernel descriptor_kernel(const Structure &a, const TemplateDescriptor &desc,
                             const PacOptions &opt) {
  std::vector<PeekContext> ctx;
  std::vector<std::string> names;
  for (int r = 0; r < desc.representative_count(); ++r) {
    ctx.push_back({&desc.context(r).table, desc.pin(r)});
    names.push_back(desc.representative(r));
  }
  return PeekKernel(align(a, desc.signature()), std::move(ctx),
                    std::move(names), opt);
}

} // namespace

FinitePac::FinitePac(Structure b, bool use_orbits, int orbit_cap)
    : b_(std::move(b)), table_(SupportTable::from_structure(b_)) {
  if (use_orbits) {
    reps_ = peek_representatives(b_, orbit_cap);
  } else {
    for (Element e = 0; e < b_.size(); ++e)
      reps_.push_back(e);
  }
}

PeekReport FinitePac::decide(const Structure &a,
                             const PacOptions &options) const {
  const int workers = resolve_workers(options);
  auto k = finite_kernel(a, b_, table_, reps_, options);
  return workers == 1 ? k.serial() : k.parallel(workers);
}

PeekReport FinitePac::decide_serial(const Structure &a,
                                    const PacOptions &options) const {
  resolve_workers(options);
  return finite_kernel(a, b_, table_, reps_, options).serial();
}

PeekReport pac_decide(const Structure &a, const Structure &b,
                      const PacOptions &options) {
  return FinitePac(b).decide(a, options);
}

PeekReport pac_decide(const Structure &a, const TemplateDescriptor &desc,
                      const PacOptions &options) {
  const int workers = resolve_workers(options);
  auto k = descriptor_kernel(a, desc, options);
  return workers == 1 ? k.serial() : k.parallel(workers);
}

PeekReport pac_decide_serial(const Structure &a, const Structure &b,
                             const PacOptions &options) {
  return FinitePac(b).decide_serial(a, options);
}

PeekReport pac_decide_serial(const Structure &a, const TemplateDescriptor &desc,
                             const PacOptions &options) {
  resolve_workers(options);
  return descriptor_kernel(a, desc, options).serial();
}

bool pacc_holds(const Structure &a, const Structure &b) {
  PacOptions opt;
  opt.workers = 1;
  return pac_decide(a, b, opt).accepted();
}

bool pacc_holds(const Structure &a, const TemplateDescriptor &desc) {
  PacOptions opt;
  opt.workers = 1;
  return pac_decide(a, desc, opt).accepted();
}

} // namespace pac
