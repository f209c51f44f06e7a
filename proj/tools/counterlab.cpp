// Command-line front end over the C interface.  One JSON document on stdout
// per command; diagnostics on stderr.
// Exit codes: 0 success, 1 validation or usage failure, 2 disagreement,
// 3 budget exhausted.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "counterlab/counterlab.h"

namespace {

using nlohmann::json;

constexpr int kOk = 0, kInvalid = 1, kDisagree = 2, kBudget = 3;

struct Failure {
  int code;
};

using Machine = std::unique_ptr<cl_machine_t, decltype(&cl_machine_free)>;

[[noreturn]] void die(const std::string& what) {
  std::cerr << "counterlab: " << what << ": " << cl_last_error() << "\n";
  throw Failure{kInvalid};
}

Machine load(const std::string& path) {
  cl_machine_t* m = nullptr;
  if (cl_machine_load(path.c_str(), &m) != CL_OK) die(path);
  return Machine(m, cl_machine_free);
}

json take(char* s) {
  json doc = json::parse(s);
  cl_string_free(s);
  return doc;
}

// --cap, else COUNTERLAB_CAP, else 0 (library default).
std::uint64_t cap_or_env(std::optional<std::uint64_t> cap) {
  if (cap) return *cap;
  if (const char* e = std::getenv("COUNTERLAB_CAP")) return std::strtoull(e, nullptr, 10);
  return 0;
}

int print(const json& doc) {
  std::cout << doc.dump(2) << "\n";
  return doc.value("verdict", std::string()) == "unknown" ? kBudget : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-way counter automata workbench"};
  app.require_subcommand(1);
  int status = kOk;

  std::string file, file2, input, op, mode = "exact", out_path, family;
  std::optional<std::uint64_t> cap;
  std::uint64_t seed = 0, ceiling = 0, p = 0, index = 0, layers = 0, t_x = 0;
  std::optional<std::uint64_t> at;
  std::size_t max_len = 4;
  std::vector<int> pair;
  bool count_paths = false, pd = false;

  auto* validate = app.add_subcommand("validate", "Check a machine document");
  validate->add_option("machine", file)->required();

  auto* run = app.add_subcommand("run", "Decide a machine on one input");
  run->add_option("machine", file)->required();
  run->add_option("--input", input)->required();
  run->add_option("--cap", cap, "Step cap");
  run->add_flag("--count-paths", count_paths, "Also count accepting paths");

  auto* transform = app.add_subcommand("transform", "Apply a counter transformation");
  transform->add_option("machine", file)->required();
  transform->add_option("--op", op)->required()->check(CLI::IsMember({"pair", "reduce4", "reduce3pd", "eliminate"}));
  transform->add_option("--pair", pair, "Counters to fuse, 1-based")->delimiter(',')->expected(2);
  transform->add_option("--ceiling", ceiling, "Counter ceiling for eliminate");
  transform->add_option("--p", p, "Encoding base");
  transform->add_option("--max-len", max_len, "Input length the default base is sized for");
  transform->add_option("-o,--output", out_path);

  auto* complement = app.add_subcommand("complement", "Decide the complement on one input");
  complement->add_option("machine", file)->required();
  complement->add_option("--input", input)->required();
  complement->add_option("--mode", mode)->check(CLI::IsMember({"exact", "guess"}));
  complement->add_option("--seed", seed);
  complement->add_flag("--pd", pd, "Pushdown complementation");
  complement->add_option("--cap", cap);
  complement->add_option("--layers", layers, "Number of layers (default: step cap)");

  auto* equiv = app.add_subcommand("check-equiv", "Compare two machines on all short inputs");
  equiv->add_option("m1", file)->required();
  equiv->add_option("m2", file2)->required();
  equiv->add_option("--max-len", max_len)->required();
  equiv->add_option("--family", family, "Restrict to promised instances of a family (leq)");
  equiv->add_option("--index", index);
  equiv->add_option("--cap", cap);

  auto* report = app.add_subcommand("report", "Machine metrics");
  report->add_option("machine", file)->required();

  auto* enumerate = app.add_subcommand("enumerate", "Configuration-interval space of a pushdown machine");
  enumerate->add_option("machine", file)->required();
  enumerate->add_option("--input", input)->required();
  enumerate->add_option("--t", t_x, "Runtime bound t_x")->required();
  enumerate->add_option("--index", at, "Interval to print");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInvalid;
  }

  try {
    char* s = nullptr;
    if (*validate) {
      auto m = load(file);
      if (cl_report(m.get(), &s) != CL_OK) die(file);
      json doc = take(s);
      status = print({{"valid", true}, {"name", doc["name"]}});
    } else if (*run) {
      auto m = load(file);
      if (cl_run(m.get(), input.c_str(), cap_or_env(cap), count_paths, &s) != CL_OK) die("run");
      status = print(take(s));
    } else if (*transform) {
      auto m = load(file);
      json params{{"max_len", max_len}};
      if (p) params["p"] = p;
      if (!pair.empty()) {
        if (pair[0] < 1 || pair[1] < 1) throw CLI::ValidationError("--pair", "counters are numbered from 1");
        params["pair"] = {pair[0] - 1, pair[1] - 1};
      }
      if (op == "eliminate") {
        if (!transform->count("--ceiling")) throw CLI::ValidationError("--ceiling", "required for eliminate");
        params["ceiling"] = ceiling;
      }
      cl_machine_t* r = nullptr;
      if (cl_transform(m.get(), op.c_str(), params.dump().c_str(), &r) != CL_OK) die("transform");
      Machine out(r, cl_machine_free);
      if (cl_machine_to_json(out.get(), &s) != CL_OK) die("transform");
      std::string text = s;
      cl_string_free(s);
      if (out_path.empty()) {
        std::cout << text << "\n";
      } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!(f << text << "\n")) {
          std::cerr << "counterlab: cannot write " << out_path << "\n";
          return kInvalid;
        }
        if (cl_report(out.get(), &s) != CL_OK) die("report");
        json doc = take(s);
        doc["output"] = out_path;
        status = print(doc);
      }
    } else if (*complement) {
      auto m = load(file);
      json o{{"mode", mode}, {"seed", seed}, {"pd", pd}, {"cap", cap_or_env(cap)}, {"layers", layers}};
      if (cl_complement(m.get(), input.c_str(), o.dump().c_str(), &s) != CL_OK) die("complement");
      status = print(take(s));
    } else if (*equiv) {
      auto a = load(file);
      auto b = load(file2);
      if (cl_check_equiv(a.get(), b.get(), static_cast<std::uint32_t>(max_len), cap_or_env(cap),
                         family.empty() ? nullptr : family.c_str(), index, &s) != CL_OK)
        die("check-equiv");
      json doc = take(s);
      print(doc);
      status = !doc["disagreements"].empty() ? kDisagree : !doc["unknown"].empty() ? kBudget : kOk;
    } else if (*report) {
      auto m = load(file);
      if (cl_report(m.get(), &s) != CL_OK) die("report");
      status = print(take(s));
    } else if (*enumerate) {
      auto m = load(file);
      if (cl_intervals(m.get(), input.c_str(), t_x, at ? *at : UINT64_MAX, &s) != CL_OK) die("enumerate");
      status = print(take(s));
    }
  } catch (const Failure& f) {
    return f.code;
  } catch (const CLI::Error& e) {
    std::cerr << "counterlab: " << e.what() << "\n";
    return kInvalid;
  }
  return status;
}
