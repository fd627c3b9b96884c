#include <openssl/evp.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <sstream>

#include "algd/cli.hpp"
#include "algd/courant.hpp"
#include "algd/errors.hpp"
#include "algd/lemmas.hpp"
#include "algd/sampling.hpp"
#include "manifest.hpp"

namespace algd {

using nlohmann::json;
using cli::Manifest;

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream out;
  for (unsigned int i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return out.str();
}

namespace {

struct TaskResult {
  bool passed = true;
  std::vector<std::string> witnesses;
  json payload = json::object();

  void require(bool ok, const std::string& witness) {
    if (!ok) {
      passed = false;
      witnesses.push_back(witness);
    }
  }
};

struct Settings {
  std::uint64_t seed;
  int degree_bound;
  int samples;
  bool parallel;
  std::string mutation;
};

std::uint64_t derive_seed(std::uint64_t seed, std::uint32_t a, std::uint32_t b) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), a, b};
  std::uint32_t parts[2];
  seq.generate(parts, parts + 2);
  return (std::uint64_t(parts[0]) << 32) | parts[1];
}

json cochain_json(const CoverSpec& cover, const CechCochain& c) {
  json out = json::object();
  for (const auto& [s, f] : c.values)
    if (!f.is_zero()) out[cover.label(s)] = f.to_string();
  return out;
}

json total_json(const CoverSpec& cover, const TotalCochain& t) {
  json out = json::object();
  for (const auto& [pq, c] : t) out[std::to_string(pq.first) + "," + std::to_string(pq.second)] = cochain_json(cover, c);
  return out;
}

void require_closed(TaskResult& r, const CoverSpec& cover, const TotalCochain& t, const std::string& what) {
  TotalCochain dt = total_d(cover, t);
  if (!total_is_zero(dt)) r.require(false, what + " is not D-closed: D = " + total_json(cover, dt).dump());
}

void absorb(TaskResult& r, const AxiomReport& rep, const std::string& prefix, json& summary) {
  for (const auto& a : rep.results) {
    summary[a.name] = {{"checked", a.checked}, {"passed", a.passed}};
    for (const auto& w : a.witnesses) r.require(false, prefix + a.name + ": " + w);
  }
}

std::vector<VertexSample> vertex_samples(Sampler& S, const FrameEVA& V, int count) {
  std::vector<VertexSample> out;
  for (int i = 0; i < count; ++i) {
    VertexSample s;
    s.v = S.vertex(V);
    s.v1 = S.vertex(V);
    s.v2 = S.vertex(V);
    s.f = S.poly(V.dim());
    s.g = S.poly(V.dim());
    out.push_back(std::move(s));
  }
  return out;
}

DiffForm half_pontryagin(const Connection& c) {
  MatrixForm curv = curvature(c);
  return mat_wedge_pair(curv, curv).scaled(Rational(1, 2));
}

// H_i from the manifest, else the Poincare primitive of 1/2 <c ^ c>.
std::vector<DiffForm> primitives(const Manifest& m, const InducedConnections& conns) {
  std::vector<DiffForm> H;
  for (int i = 0; i < m.cover->size(); ++i)
    H.push_back(m.primitives[i] ? *m.primitives[i] : poincare_primitive(half_pontryagin(conns.local[i])));
  return H;
}

std::vector<FrameEVA> frames(const Manifest& m) {
  std::vector<FrameEVA> out;
  for (const auto& f : m.frames) out.push_back(*f);
  return out;
}

TaskResult check_axioms(const Manifest& m, const Settings& st) {
  TaskResult r;
  const CoverSpec& cover = *m.cover;
  for (int i = 0; i < cover.size(); ++i) {
    Sampler S(derive_seed(st.seed, 1, i));
    const std::optional<Connection>& conn = m.connections[i];
    DiffForm H = m.primitives[i] ? *m.primitives[i]
                                 : conn ? poincare_primitive(half_pontryagin(*conn)) : DiffForm(m.ctx);
    CourantStructure s = conn ? CourantStructure::extension(*conn, H) : CourantStructure::exact(m.ctx, H);
    std::string prefix = cover.chart(i) + " courant ";
    json summary = json::object();
    r.require(s.admissible(), prefix + "not admissible: dH != 1/2 <c^c> for H = " + H.to_string());
    absorb(r, check_courant_axioms(s, S.triples(s, st.samples), S.functions(m.ctx->dim(), 3), st.parallel), prefix,
           summary);
    r.payload[cover.chart(i)]["courant"] = summary;
    if (m.frames[i]) {
      json vs = json::object();
      absorb(r, check_vertex_axioms(*m.frames[i], vertex_samples(S, *m.frames[i], st.samples), st.parallel),
             cover.chart(i) + " vertex ", vs);
      r.payload[cover.chart(i)]["vertex"] = vs;
    }
  }
  return r;
}

TaskResult pontryagin(const Manifest& m, const Settings&) {
  TaskResult r;
  InducedConnections conns = induced_connections(*m.cover, *m.bundle, m.connections);
  CharacteristicCocycle pi = pontryagin_cocycle(*m.cover, *m.bundle, conns);
  require_closed(r, *m.cover, pi.total(), "Pi");
  r.payload = {{"Pi40", cochain_json(*m.cover, pi.c40)},
               {"Pi31", cochain_json(*m.cover, pi.c31)},
               {"Pi22", cochain_json(*m.cover, pi.c22)}};
  return r;
}

TaskResult ch2(const Manifest& m, const Settings&) {
  TaskResult r;
  const CoverSpec& cover = *m.cover;
  InducedConnections conns = induced_connections(cover, *m.bundle, m.connections);
  CharacteristicCocycle ch = ch2_cocycle(cover, *m.bundle, conns);
  require_closed(r, cover, ch.total(), "ch2");
  HatPAssembly hat = hat_P_assembly(cover, *m.bundle, conns, primitives(m, conns));
  for (const auto& f : hat.failures) r.require(false, "hat P: " + f);
  r.payload = {{"ch40", cochain_json(cover, ch.c40)},
               {"ch31", cochain_json(cover, ch.c31)},
               {"ch22", cochain_json(cover, ch.c22)},
               {"hat31", cochain_json(cover, hat.hat31)},
               {"hat22", cochain_json(cover, hat.hat22)}};
  return r;
}

TaskResult eva_class(const Manifest& m, const Settings&) {
  TaskResult r;
  EvaClassCocycle e = eva_class_cocycle(*m.cover, frames(m));
  require_closed(r, *m.cover, e.total(), "eva class");
  r.payload = {{"h31", cochain_json(*m.cover, e.h31)}, {"b22", cochain_json(*m.cover, e.b22)}};
  return r;
}

TaskResult compare_classes(const Manifest& m, const Settings& st) {
  TaskResult r;
  const CoverSpec& cover = *m.cover;
  std::vector<FrameEVA> fr = frames(m);
  EvaClassCocycle e = eva_class_cocycle(cover, fr);
  BundleCocycle tangent = cotangent_bundle(cover, fr);
  InducedConnections conns = induced_connections(cover, tangent, std::vector<std::optional<Connection>>(cover.size()));
  CharacteristicCocycle ch = ch2_cocycle(cover, tangent, conns);
  require_closed(r, cover, e.total(), "eva class");
  require_closed(r, cover, ch.total(), "ch2 of the cotangent bundle");
  TotalCochain diff = total_add(e.total(), total_scaled(ch.total(), Rational(-1)));
  r.payload = {{"eva", total_json(cover, e.total())}, {"ch2", total_json(cover, ch.total())}};
  if (!r.passed) return r;
  try {
    TotalCochain x = coboundary_solve(cover, diff, st.degree_bound);
    r.payload["primitive"] = total_json(cover, x);
  } catch (const NoSolutionWithinBound& err) {
    r.require(false, "eva class - ch2 has no primitive with degree <= " + std::to_string(st.degree_bound) + ": " +
                         err.what());
  }
  return r;
}

TaskResult lemmas(const Manifest& m, const Settings& st) {
  TaskResult r;
  LemmaOptions opt;
  opt.seed = st.seed;
  opt.samples = st.samples;
  opt.parallel = st.parallel;
  opt.mutation = st.mutation;
  for (const auto& l : verify_lemmas(m.lemmas, opt)) {
    r.payload[l.name] = {{"checked", l.checked}, {"passed", l.passed}};
    for (const auto& w : l.witnesses) r.require(false, l.name + ": " + w);
  }
  return r;
}

TaskResult run_task(const std::string& task, const Manifest& m, const Settings& st) {
  try {
    if (task == "check-axioms") return check_axioms(m, st);
    if (task == "pontryagin") return pontryagin(m, st);
    if (task == "ch2") return ch2(m, st);
    if (task == "eva-class") return eva_class(m, st);
    if (task == "compare-classes") return compare_classes(m, st);
    return lemmas(m, st);
  } catch (const Error& e) {
    TaskResult r;
    r.require(false, std::string(e.kind()) + ": " + e.what());
    return r;
  }
}

std::filesystem::path cache_root(const RunFlags& flags) {
  if (!flags.cache_dir.empty()) return flags.cache_dir;
  if (const char* env = std::getenv("ALGD_CACHE_DIR"); env && *env) return env;
  return ".algd-cache";
}

std::optional<json> cache_load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) return std::nullopt;
  try {
    return json::parse(in);
  } catch (const json::exception&) {
    return std::nullopt;  // torn or foreign file: recompute
  }
}

void cache_store(const std::filesystem::path& file, const json& entry) {
  std::error_code ec;
  std::filesystem::create_directories(file.parent_path(), ec);
  if (ec) return;
  std::filesystem::path tmp = file;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << entry.dump();
  }
  std::filesystem::rename(tmp, file, ec);
}

// strings are cochain values, {checked, passed} a check summary
void print_payload(std::ostream& out, const json& v, int indent) {
  std::string pad(indent, ' ');
  for (const auto& [k, x] : v.items()) {
    if (x.is_string()) {
      out << pad << k << "  " << x.get<std::string>() << "\n";
    } else if (x.is_object() && x.contains("passed")) {
      out << pad << k << ": " << (x["passed"].get<bool>() ? "pass" : "FAIL") << " (" << x["checked"] << " checks)\n";
    } else if (x.is_object() && x.empty()) {
      out << pad << k << ": 0\n";
    } else if (x.is_object()) {
      out << pad << k << ":\n";
      print_payload(out, x, indent + 2);
    } else {
      out << pad << k << ": " << x.dump() << "\n";
    }
  }
}

std::string text_report(const json& report, const std::vector<double>& ms, const std::map<std::string, bool>& hits) {
  std::ostringstream out;
  out << "algd " << report["version"].get<std::string>() << "  manifest " << report["manifest_sha256"].get<std::string>()
      << "\nseed " << report["seed"].get<std::uint64_t>() << "  degree bound " << report["bounds"]["degree"].get<int>()
      << "  samples " << report["bounds"]["samples"].get<int>() << "\n";
  if (report.contains("mutation")) out << "mutation " << report["mutation"].get<std::string>() << "\n";
  const json& tasks = report["tasks"];
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const json& t = tasks[i];
    std::string name = t["task"];
    std::string key = std::to_string(i) + ":" + name;
    out << "\n[" << t["status"].get<std::string>() << "] " << name << "  (" << std::fixed << std::setprecision(1)
        << ms[i] << " ms" << (hits.at(key) ? ", cached" : "") << ")\n";
    for (const auto& w : t["witnesses"]) out << "  witness: " << w.get<std::string>() << "\n";
    print_payload(out, t["payload"], 2);
  }
  out << "\n" << (report["status"] == "pass" ? "all tasks passed" : "FAILED") << "\n";
  return out.str();
}

}  // namespace

RunOutcome run_manifest_text(const std::string& text, const RunFlags& flags) {
  RunOutcome outcome;
  Manifest m;
  try {
    m = cli::parse_manifest(text);
    if (flags.format != "text" && flags.format != "machine")
      throw ValidationError("unknown format '" + flags.format + "'");
    if (!flags.mutation.empty()) {
      const auto& names = mutation_names();
      if (std::find(names.begin(), names.end(), flags.mutation) == names.end())
        throw ValidationError("unknown mutation '" + flags.mutation + "'");
    }
    if (flags.degree_bound && *flags.degree_bound < 0) throw ValidationError("--degree-bound must be non-negative");
    if (flags.samples && *flags.samples < 1) throw ValidationError("--samples must be positive");
  } catch (const Error& e) {
    outcome.exit_code = 2;
    outcome.error = std::string(e.kind()) + ": " + e.what();
    outcome.text = outcome.error + "\n";
    return outcome;
  }

  Settings st{flags.seed.value_or(m.seed), flags.degree_bound.value_or(m.degree_bound), flags.samples.value_or(m.samples),
              flags.parallel, flags.mutation};

  json report;
  report["tool"] = "algd";
  report["version"] = kToolVersion;
  report["manifest_sha256"] = sha256_hex(text);
  report["seed"] = st.seed;
  report["bounds"] = {{"degree", st.degree_bound}, {"samples", st.samples}};
  if (!st.mutation.empty()) report["mutation"] = st.mutation;
  report["tasks"] = json::array();

  std::filesystem::path root = cache_root(flags);
  std::vector<double> ms;
  bool all = true;
  for (std::size_t i = 0; i < m.tasks.size(); ++i) {
    const std::string& task = m.tasks[i];
    // parallel never changes results, so it is not part of the key
    std::string key = sha256_hex(json{{"version", kToolVersion},
                                      {"manifest", m.canonical},
                                      {"task", task},
                                      {"seed", st.seed},
                                      {"degree", st.degree_bound},
                                      {"samples", st.samples},
                                      {"mutation", st.mutation}}
                                     .dump());
    std::filesystem::path file = root / (key + ".json");
    auto start = std::chrono::steady_clock::now();
    std::optional<json> entry = flags.use_cache ? cache_load(file) : std::nullopt;
    bool hit = entry && entry->contains("status") && entry->contains("witnesses") && entry->contains("payload");
    if (!hit) {
      TaskResult r = run_task(task, m, st);
      entry = json{{"status", r.passed ? "pass" : "fail"}, {"witnesses", r.witnesses}, {"payload", r.payload}};
      if (flags.use_cache) cache_store(file, *entry);
    }
    ms.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count());
    outcome.cache_hits[std::to_string(i) + ":" + task] = hit;
    (*entry)["task"] = task;
    all = all && (*entry)["status"] == "pass";
    report["tasks"].push_back(*entry);
  }
  report["status"] = all ? "pass" : "fail";

  outcome.exit_code = all ? 0 : 1;
  outcome.machine = report.dump(2) + "\n";
  outcome.text = text_report(report, ms, outcome.cache_hits);
  if (!flags.out.empty()) {
    std::ofstream out(flags.out, std::ios::binary);
    if (!out) {
      outcome.exit_code = 2;
      outcome.error = "ValidationError: cannot write report to " + flags.out;
      return outcome;
    }
    out << outcome.machine;
  }
  return outcome;
}

RunOutcome run_manifest_file(const std::string& path, const RunFlags& flags) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    RunOutcome o;
    o.exit_code = 2;
    o.error = "ParseError: cannot read manifest " + path;
    o.text = o.error + "\n";
    return o;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return run_manifest_text(buf.str(), flags);
}

}  // namespace algd
