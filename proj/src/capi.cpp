#include "counterlab/counterlab.h"

#include <cstring>
#include <exception>
#include <string>

#include <nlohmann/json.hpp>

#include "counterlab/executor.hpp"
#include "counterlab/families.hpp"
#include "counterlab/icount.hpp"
#include "counterlab/machine.hpp"
#include "counterlab/oracle.hpp"
#include "counterlab/pdcomplement.hpp"
#include "counterlab/transforms.hpp"

struct cl_machine {
  counterlab::MachineSpec spec;
};

namespace {

using namespace counterlab;
using nlohmann::json;

thread_local std::string last_error;

cl_status fail(cl_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

cl_status emit(const json& doc, char** out) {
  *out = dup(doc.dump());
  return *out ? CL_OK : fail(CL_ERR_INTERNAL, "out of memory");
}

json options_of(const char* text) {
  if (!text || !*text) return json::object();
  auto doc = json::parse(text);
  if (!doc.is_object()) throw std::invalid_argument("options must be a JSON object");
  return doc;
}

// Runs body, translating exceptions into status codes.
template <class F>
cl_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const MachineError& e) {
    return fail(e.kind() == MachineError::Kind::syntax ? CL_ERR_SYNTAX : CL_ERR_INVALID, e.what());
  } catch (const json::exception& e) {
    return fail(CL_ERR_ARGUMENT, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(CL_ERR_ARGUMENT, e.what());
  } catch (const std::out_of_range& e) {
    return fail(CL_ERR_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(CL_ERR_INTERNAL, e.what());
  }
}

std::uint64_t cap_for(const MachineSpec& m, std::string_view x, std::uint64_t cap) {
  return cap ? cap : default_step_cap(m, x.size());
}

json verdict_json(const Verdict& v) {
  json j{{"verdict", to_string(v.outcome)}};
  if (!v.note.empty()) j["note"] = v.note;
  if (!v.witness.empty()) j["witness_length"] = v.witness.size() - 1;
  return j;
}

}  // namespace

extern "C" {

const char* cl_last_error(void) { return last_error.c_str(); }

const char* cl_version(void) { return "0.1.0"; }

void cl_string_free(char* s) { std::free(s); }

cl_status cl_machine_parse(const char* text, cl_machine_t** out) {
  if (!text || !out) return fail(CL_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = new cl_machine{parse_machine(text)};
    return CL_OK;
  });
}

cl_status cl_machine_load(const char* path, cl_machine_t** out) {
  if (!path || !out) return fail(CL_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    try {
      *out = new cl_machine{load_machine(path)};
    } catch (const MachineError&) {
      throw;
    } catch (const std::runtime_error& e) {
      return fail(CL_ERR_IO, e.what());
    }
    return CL_OK;
  });
}

void cl_machine_free(cl_machine_t* m) { delete m; }

cl_status cl_machine_to_json(const cl_machine_t* m, char** out) {
  if (!m || !out) return fail(CL_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    *out = dup(serialize_machine(m->spec));
    return CL_OK;
  });
}

cl_status cl_run(const cl_machine_t* m, const char* input, uint64_t cap, int count_paths, char** out) {
  if (!m || !input || !out) return fail(CL_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    const RunBudget budget{cap_for(m->spec, input, cap), RunBudget{}.config_cap};
    const auto v = decide(m->spec, input, budget);
    json doc = verdict_json(v);
    doc["machine"] = m->spec.name;
    doc["input"] = input;
    doc["cap"] = budget.step_cap;
    if (count_paths) {
      const auto pc = count_accepting_paths(m->spec, input, budget);
      doc["accepting_paths"] = pc.count;
      doc["paths_saturated"] = pc.saturated;
      doc["paths_lower_bound"] = pc.lower_bound;
    }
    return emit(doc, out);
  });
}

cl_status cl_transform(const cl_machine_t* m, const char* op, const char* params, cl_machine_t** out) {
  if (!m || !op || !out) return fail(CL_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    const json p = options_of(params);
    PairingOptions opt;
    opt.p = p.value("p", std::uint64_t{0});
    opt.max_len = p.value("max_len", std::size_t{4});
    const std::string o = op;
    MachineSpec r;
    if (o == "pair") {
      const auto ab = p.value("pair", std::vector<int>{0, 1});
      if (ab.size() != 2) throw std::invalid_argument("pair needs two counter indices");
      r = pair_counters(m->spec, ab[0], ab[1], opt);
    } else if (o == "reduce4") {
      r = reduce_counters(m->spec, opt);
    } else if (o == "reduce3pd") {
      r = reduce_counters_pd(m->spec, opt);
    } else if (o == "eliminate") {
      if (!p.contains("ceiling")) throw std::invalid_argument("eliminate needs a ceiling");
      r = eliminate_counters(m->spec, p.at("ceiling").get<std::uint64_t>());
    } else {
      throw std::invalid_argument("unknown transform '" + o + "'");
    }
    *out = new cl_machine{std::move(r)};
    return CL_OK;
  });
}

cl_status cl_complement(const cl_machine_t* m, const char* input, const char* options, char** out) {
  if (!m || !input || !out) return fail(CL_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    const json o = options_of(options);
    const MachineSpec& spec = m->spec;
    const std::uint64_t cap = cap_for(spec, input, o.value("cap", std::uint64_t{0}));
    json doc{{"machine", spec.name}, {"input", input}};
    if (o.value("pd", false) || spec.stack) {
      // t_x needs a cap above the runtime; the default formula vanishes on the empty input.
      const std::uint64_t pd_cap =
          o.value("cap", std::uint64_t{0}) ? cap : default_step_cap(spec, std::max<std::size_t>(1, std::strlen(input)));
      const auto res = complement_pd(spec, input, RunBudget{pd_cap, RunBudget{}.config_cap});
      doc.update(verdict_json(res.verdict));
      doc["mode"] = "pd";
      doc["t_x"] = res.t_x;
      doc["memo"] = res.memo;
      return emit(doc, out);
    }
    const std::string mode = o.value("mode", std::string("exact"));
    if (mode == "exact") {
      ICOptions opt;
      opt.r = o.value("layers", std::uint64_t{0});
      if (!opt.r) opt.r = cap;
      const auto res = complement_decide_ic(spec, input, opt);
      doc.update(verdict_json(res.verdict));
      doc["mode"] = "exact";
      json counts = json::array();
      for (const auto& l : res.layers) counts.push_back(l.count);
      doc["layer_counts"] = counts;
      // The audit replays the counting procedure over the whole universe.
      const std::uint64_t examined = std::max<std::uint64_t>(1, res.layers.size() - 1);
      double universe = static_cast<double>(spec.states.size()) * (std::strlen(input) + 2);
      for (int j = 0; j < spec.counters; ++j) universe *= static_cast<double>(examined + 1);
      if (universe <= o.value("audit_limit", 4096.0))
        doc["audit"] = audit_ic(spec, input, examined).to_json();
      else
        doc["audit"] = nullptr;
      return emit(doc, out);
    }
    if (mode == "guess") {
      const std::uint64_t r = o.value("layers", std::uint64_t{0}) ? o.value("layers", std::uint64_t{0}) : cap;
      const auto run = guessing_mode_run(spec, input, r, o.value("seed", std::uint64_t{0}));
      doc["mode"] = "guess";
      doc["status"] = to_string(run.status);
      doc["verdict"] = run.status == GuessStatus::accept   ? "accept"
                       : run.status == GuessStatus::reject ? "reject"
                                                           : "unknown";
      if (!run.reason.empty()) doc["reason"] = run.reason;
      doc["counts"] = run.counts;
      return emit(doc, out);
    }
    throw std::invalid_argument("unknown complement mode '" + mode + "'");
  });
}

cl_status cl_check_equiv(const cl_machine_t* a, const cl_machine_t* b, uint32_t max_len, uint64_t cap,
                         const char* family, uint64_t index, char** out) {
  if (!a || !b || !out) return fail(CL_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    if (a->spec.alphabet != b->spec.alphabet) throw std::invalid_argument("machines have different alphabets");
    std::vector<std::string> inputs;
    if (family && *family) {
      if (std::string(family) != "leq") throw std::invalid_argument("unknown family '" + std::string(family) + "'");
      const auto fam = leq_family([](std::uint64_t n) { return n; });
      for (auto& w : fam.sampler(index, max_len))
        if (fam.promised(index, w)) inputs.push_back(std::move(w));
    } else {
      inputs = strings_up_to(a->spec.alphabet, max_len);
    }
    OracleBudget budget;
    budget.cap = cap;
    if (!budget.cap)
      budget.cap = std::max(default_step_cap(a->spec, max_len), default_step_cap(b->spec, max_len));
    const auto rep = check_equivalence(a->spec, b->spec, inputs, budget);
    json doc = to_json(rep);
    doc["cap"] = budget.cap;
    return emit(doc, out);
  });
}

cl_status cl_report(const cl_machine_t* m, char** out) {
  if (!m || !out) return fail(CL_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    json doc{{"name", m->spec.name},
             {"sc", state_complexity(m->spec)},
             {"counters", m->spec.counters},
             {"mode", to_string(m->spec.mode)},
             {"rules", m->spec.transitions.size()}};
    if (m->spec.stack) {
      doc["ssc"] = stack_state_complexity(m->spec);
      doc["push_size"] = m->spec.stack->push_size;
    }
    if (m->spec.provenance)
      doc["provenance"] = {{"derived_from", m->spec.provenance->derived_from},
                           {"transform", m->spec.provenance->transform}};
    return emit(doc, out);
  });
}

cl_status cl_intervals(const cl_machine_t* m, const char* input, uint64_t t_x, uint64_t index, char** out) {
  if (!m || !input || !out) return fail(CL_ERR_ARGUMENT, "null argument");
  return guarded([&] {
    if (!m->spec.stack) throw std::invalid_argument("interval spaces need a pushdown machine");
    const IntervalSpace space(m->spec, std::strlen(input), t_x);
    json doc{{"conf", space.conf_count()}, {"t_x", t_x}, {"size", space.size()}};
    if (index != UINT64_MAX) {
      doc["index"] = index;
      doc["interval"] = to_json(space.at(index));
    }
    return emit(doc, out);
  });
}

}  // extern "C"
