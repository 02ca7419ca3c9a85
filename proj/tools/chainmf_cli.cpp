#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "chainmf.hpp"

using namespace chainmf;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::string exponents_text;
  std::vector<int> exponents;
  std::string format = "json";
  std::string out;
  std::string report;
  std::string compare;
  unsigned jobs = 1;
  std::string window_text;
  std::optional<std::pair<int, int>> window;
  long long source = -1, target = -1;
};

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> out;
  if (text.empty()) throw UsageError(std::string(what) + " is empty");
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw UsageError(std::string(what) + ": '" + item + "' is not an integer");
    }
    if (used != item.size()) throw UsageError(std::string(what) + ": '" + item + "' is not an integer");
    out.push_back(v);
  }
  if (!text.empty() && text.back() == ',') throw UsageError(std::string(what) + " has a trailing comma");
  return out;
}

void validate(RunConfig& cfg) {
  cfg.exponents = parse_int_list(cfg.exponents_text, "exponent list");
  try {
    check_chain_exponents(cfg.exponents);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  if (!cfg.window_text.empty()) {
    auto w = parse_int_list(cfg.window_text, "window");
    if (w.size() != 2 || w[0] > w[1]) throw UsageError("window must be lmin,lmax with lmin <= lmax");
    cfg.window = std::make_pair(w[0], w[1]);
  }
  if (cfg.jobs == 0) cfg.jobs = 1;
  const bool dot_ok = cfg.command == "quiver";
  if (cfg.format == "dot" && !dot_ok) throw UsageError("--format dot is only available for 'quiver'");
}

std::string join_exponents(const std::vector<int>& a) {
  std::string s;
  for (std::size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
  return s;
}

struct Outcome {
  std::string output;  // deterministic main document
  std::vector<CheckResult> checks;
};

std::string text_checks(const std::vector<CheckResult>& checks) {
  std::ostringstream os;
  for (const auto& r : checks) {
    os << (r.pass() ? "PASS " : "FAIL ") << r.name << " (" << r.cases << " cases)\n";
    for (const auto& c : r.counterexamples)
      os << "  " << c.source << " -> " << c.target << " l=" << c.shift << " expected " << c.expected << " found "
         << c.found << (c.note.empty() ? "" : " : " + c.note) << "\n";
  }
  return os.str();
}

Json json_checks(const std::vector<CheckResult>& checks) {
  Json out = Json::array();
  for (const auto& r : checks) out.push_back(to_json(r));
  return out;
}

Outcome cmd_collection(const RunConfig& cfg) {
  const auto c = build_collection(cfg.exponents);
  const auto h = compute_hom_table(c, cfg.jobs, cfg.window);
  Outcome o;
  o.checks = {verify_length(c), verify_objects(c), verify_exceptional(h), verify_strong(h), verify_semiorthogonal(h)};
  if (cfg.format == "json") {
    o.output = collection_to_json(c, h).dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << "exponents " << join_exponents(c.exponents()) << "\n";
    for (std::size_t s = 0; s < c.size(); ++s) os << s << " " << c.objects()[s].label << "\n";
    h.for_each([&](std::size_t s, std::size_t t, int l, std::size_t d) {
      if (d) os << "hom(" << s << "," << t << "," << l << ") = " << d << "\n";
    });
    o.output = os.str();
  }
  return o;
}

Outcome cmd_quiver(const RunConfig& cfg) {
  const auto c = build_collection(cfg.exponents);
  const QuiverTower qt(cfg.exponents);
  const auto& q = qt.top();
  Outcome o;
  o.checks = verify_quiver(c, qt, cfg.jobs);
  if (!cfg.compare.empty()) {
    std::ifstream in(cfg.compare);
    if (!in) throw UsageError("cannot read " + cfg.compare);
    std::stringstream buf;
    buf << in.rdbuf();
    CheckResult cmp{"matches " + cfg.compare};
    cmp.cases = 1;
    Quiver fixture;
    try {
      fixture = parse_quiver(buf.str());
    } catch (const Error& e) {
      throw UsageError(std::string("fixture: ") + e.what());
    }
    if (!(fixture == q)) {
      cmp.counterexamples.push_back({0, 0, 0, static_cast<long long>(fixture.arrows.size()),
                                     static_cast<long long>(q.arrows.size()), "quiver differs from fixture"});
      if (fixture.relations.size() != q.relations.size())
        cmp.counterexamples.push_back({0, 0, 0, static_cast<long long>(fixture.relations.size()),
                                       static_cast<long long>(q.relations.size()), "relation count"});
    }
    o.checks.push_back(cmp);
  }
  if (cfg.format == "dot") {
    o.output = export_dot(q);
  } else if (cfg.format == "json") {
    o.output = export_json(q);
  } else {
    std::ostringstream os;
    for (std::size_t v = 0; v < q.vertices.size(); ++v) os << "vertex " << v << " " << q.vertices[v] << "\n";
    for (std::size_t k = 0; k < q.arrows.size(); ++k) {
      const auto& a = q.arrows[k];
      os << "arrow " << k << " " << a.source << " -> " << a.target << " " << a.label << "\n";
    }
    for (const auto& r : q.relations) {
      os << "relation " << r.family << " ";
      for (auto x : r.lhs) os << x << " ";
      if (r.kind == Relation::Kind::Comm) {
        os << "=";
        for (auto x : r.rhs) os << " " << x;
      } else {
        os << "= 0";
      }
      os << "\n";
    }
    o.output = os.str();
  }
  return o;
}

Outcome cmd_hom(const RunConfig& cfg) {
  const auto c = build_collection(cfg.exponents);
  const auto n = static_cast<long long>(c.size());
  if (cfg.source < 0 || cfg.source >= n || cfg.target < 0 || cfg.target >= n)
    throw IndexOutOfRange("object indices must lie in [0, " + std::to_string(n - 1) + "]");
  const auto s = static_cast<std::size_t>(cfg.source), t = static_cast<std::size_t>(cfg.target);
  const auto& E = c[s];
  const auto& F = c[t];
  const auto [lo, hi] = cfg.window ? *cfg.window : checked_range(E, F);
  std::vector<std::size_t> dims(static_cast<std::size_t>(hi - lo + 1));
  parallel_for(dims.size(), cfg.jobs, [&](std::size_t k) { dims[k] = hom_dim(E, F, lo + static_cast<int>(k)); });
  Outcome o;
  if (cfg.format == "json") {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["exponents"] = cfg.exponents;
    j["source"] = s;
    j["target"] = t;
    j["labels"] = {c.objects()[s].label, c.objects()[t].label};
    j["from"] = lo;
    j["dims"] = dims;
    o.output = j.dump(2) + "\n";
  } else {
    std::ostringstream os;
    for (std::size_t k = 0; k < dims.size(); ++k) os << "l=" << lo + static_cast<int>(k) << " " << dims[k] << "\n";
    o.output = os.str();
  }
  return o;
}

Outcome cmd_milnor(const RunConfig& cfg) {
  Outcome o;
  const auto mu = milnor_number(cfg.exponents);
  std::optional<Integer> by_weights;
  std::string refused;
  try {
    by_weights = milnor_by_weights(cfg.exponents);
  } catch (const Error& e) {
    refused = e.what();
  }
  CheckResult agree{"milnor formulas agree"};
  if (by_weights) {
    agree.cases = 1;
    if (*by_weights != mu)
      agree.counterexamples.push_back({0, 0, 0, mu.get_si(), by_weights->get_si(), "weight product"});
  }
  o.checks = {agree};
  if (cfg.format == "json") {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["exponents"] = cfg.exponents;
    j["recursion"] = mu.get_str();
    j["weights"] = by_weights ? Json(by_weights->get_str()) : Json(nullptr);
    if (!refused.empty()) j["weights_refused"] = refused;
    j["agree"] = by_weights ? Json(*by_weights == mu) : Json(nullptr);
    o.output = j.dump(2) + "\n";
  } else {
    o.output = "recursion " + mu.get_str() + "\n" +
               (by_weights ? "weights " + by_weights->get_str() + "\n" : "weights refused: " + refused + "\n");
  }
  return o;
}

Outcome cmd_checks(const RunConfig& cfg) {
  const auto c = build_collection(cfg.exponents);
  const auto objs = object_pointers(c.objects());
  const auto h = compute_hom_table(c, cfg.jobs, cfg.window);
  Outcome o;
  o.checks = {verify_serre(objs, h, cfg.jobs), verify_psi_psi(c, cfg.jobs), verify_psi_phi(c, cfg.jobs),
              triangle_check(c, cfg.jobs), verify_canonical_morphisms(c, cfg.jobs)};
  if (cfg.format == "json") {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["exponents"] = cfg.exponents;
    j["checks"] = json_checks(o.checks);
    o.output = j.dump(2) + "\n";
  } else {
    o.output = text_checks(o.checks);
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exceptional collections of maximally graded chain polynomials"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("-a,--exponents", cfg.exponents_text, "exponents a_1,...,a_n")->required();
    sub->add_option("--format", cfg.format, "json | dot | text")->check(CLI::IsMember({"json", "dot", "text"}));
    sub->add_option("--out", cfg.out, "write the main output here instead of stdout");
    sub->add_option("--report", cfg.report, "write the JSON report here");
    sub->add_option("--jobs", cfg.jobs, "worker threads");
    sub->add_option("--window", cfg.window_text, "shift range lmin,lmax");
  };
  auto* collection = app.add_subcommand("collection", "build E^n and verify it is full strong exceptional");
  auto* quiver = app.add_subcommand("quiver", "build the quiver with relations and verify it");
  auto* hom = app.add_subcommand("hom", "dimensions of Hom(E_s, E_t[l])");
  auto* milnor = app.add_subcommand("milnor", "Milnor number by recursion and by weights");
  auto* checks = app.add_subcommand("checks", "Serre duality, triangle and Hom identity suites");
  for (auto* sub : {collection, quiver, hom, milnor, checks}) common(sub);
  quiver->add_option("--compare", cfg.compare, "quiver JSON fixture that must match");
  hom->add_option("source", cfg.source, "index s")->required();
  hom->add_option("target", cfg.target, "index t")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::string echo;
  for (int i = 0; i < argc; ++i) echo += (i ? " " : "") + std::string(argv[i]);
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    for (auto* sub : {collection, quiver, hom, milnor, checks})
      if (sub->parsed()) cfg.command = sub->get_name();
    validate(cfg);
    if (cfg.command == "collection") o = cmd_collection(cfg);
    else if (cfg.command == "quiver") o = cmd_quiver(cfg);
    else if (cfg.command == "hom") o = cmd_hom(cfg);
    else if (cfg.command == "milnor") o = cmd_milnor(cfg);
    else o = cmd_checks(cfg);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const IndexOutOfRange& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  bool pass = true;
  for (const auto& r : o.checks) pass = pass && r.pass();

  if (cfg.out.empty()) {
    std::cout << o.output;
  } else {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot write " << cfg.out << "\n";
      return 2;
    }
    f << o.output;
  }

  std::cerr << text_checks(o.checks);
  if (!cfg.report.empty()) {
    Json r;
    r["schema_version"] = kSchemaVersion;
    r["tool_version"] = kToolVersion;
    r["command"] = echo;
    r["pass"] = pass;
    r["checks"] = json_checks(o.checks);
    r["timing_ms"] = static_cast<long long>(ms);
    std::ofstream f(cfg.report);
    if (!f) {
      std::cerr << "error: cannot write " << cfg.report << "\n";
      return 2;
    }
    f << r.dump(2) << "\n";
  }
  return pass ? 0 : 1;
}
