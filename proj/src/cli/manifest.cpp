#include "manifest.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <set>

#include "algd/errors.hpp"
#include "algd/lemmas.hpp"
#include "algd/parse.hpp"

namespace algd::cli {

bool Manifest::has_connections() const {
  return std::any_of(connections.begin(), connections.end(), [](const auto& c) { return c.has_value(); });
}

bool Manifest::has_all_frames() const {
  return !frames.empty() && std::all_of(frames.begin(), frames.end(), [](const auto& f) { return f.has_value(); });
}

namespace {

const std::set<std::string> kKeys = {"version", "variables",  "charts", "nerve", "transitions", "bundle",
                                     "connections", "frames", "primitives", "tasks", "lemmas", "seed", "bounds"};

[[noreturn]] void invalid(const std::string& what) { throw ValidationError(what); }

std::string scalar(const YAML::Node& n, const std::string& where) {
  if (!n || !n.IsScalar()) invalid(where + " must be a scalar");
  return n.Scalar();
}

std::vector<std::string> scalars(const YAML::Node& n, const std::string& where) {
  if (!n || !n.IsSequence()) invalid(where + " must be a list");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n.size(); ++i) out.push_back(scalar(n[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

long integer(const YAML::Node& n, const std::string& where) {
  std::string s = scalar(n, where);
  try {
    std::size_t used = 0;
    long v = std::stol(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  invalid(where + " must be an integer, got '" + s + "'");
}

// Literal errors are reported with their location; unknown names are a
// validation problem, bad syntax a parse problem.
template <class F>
auto literal(const std::string& where, F f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError& e) {
    throw ParseError(where + ": " + e.what());
  } catch (const Error& e) {
    throw ValidationError(where + ": " + e.kind() + ": " + e.what());
  }
}

RatFunc ratfunc(const ContextPtr& ctx, const YAML::Node& n, const std::string& where) {
  std::string s = scalar(n, where);
  return literal(where, [&] { return parse_ratfunc(s, *ctx); });
}

ChartMap chart_map(const ContextPtr& ctx, const YAML::Node& n, const std::string& where) {
  if (!n || !n.IsSequence() || static_cast<int>(n.size()) != ctx->dim())
    invalid(where + " must list one image per variable");
  ChartMap m{ctx, {}};
  for (std::size_t i = 0; i < n.size(); ++i) m.images.push_back(ratfunc(ctx, n[i], where + "[" + std::to_string(i) + "]"));
  return m;
}

int chart_index(const Manifest& m, const YAML::Node& n, const std::string& where) {
  std::string name = scalar(n, where);
  auto it = std::find(m.charts.begin(), m.charts.end(), name);
  if (it == m.charts.end()) invalid(where + " names unknown chart '" + name + "'");
  return static_cast<int>(it - m.charts.begin());
}

// map keyed by chart name; every key must resolve
template <class F>
void per_chart(const Manifest& m, const YAML::Node& n, const std::string& where, F f) {
  if (!n.IsMap()) invalid(where + " must map chart names to values");
  for (const auto& kv : n) {
    int i = chart_index(m, kv.first, where);
    f(i, kv.second, where + "." + m.charts[i]);
  }
}

template <class F>
auto consistency(F f) -> decltype(f()) {
  try {
    return f();
  } catch (const ValidationError&) {
    throw;
  } catch (const Error& e) {
    throw ValidationError(std::string(e.kind()) + ": " + e.what());
  }
}

}  // namespace

Manifest parse_manifest(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ParseError(std::string("manifest is not valid YAML: ") + e.what());
  }
  if (!root.IsMap()) throw ParseError("manifest must be a mapping");
  for (const auto& kv : root) {
    std::string key = kv.first.as<std::string>();
    if (!kKeys.count(key)) invalid("unknown manifest key '" + key + "'");
  }

  Manifest m;
  if (!root["version"]) invalid("version is required");
  m.version = static_cast<int>(integer(root["version"], "version"));
  if (m.version != 1) invalid("unsupported manifest version " + std::to_string(m.version));

  std::vector<std::string> vars = scalars(root["variables"], "variables");
  if (vars.empty()) invalid("variables must not be empty");
  m.ctx = consistency([&] { return make_context(vars); });
  m.charts = scalars(root["charts"], "charts");
  if (m.charts.empty()) invalid("charts must not be empty");
  if (std::set<std::string>(m.charts.begin(), m.charts.end()).size() != m.charts.size())
    invalid("chart names must be distinct");
  const int nc = static_cast<int>(m.charts.size());

  std::vector<Simplex> nerve;
  if (root["nerve"]) {
    const YAML::Node& n = root["nerve"];
    if (!n.IsSequence()) invalid("nerve must be a list of chart lists");
    for (std::size_t s = 0; s < n.size(); ++s) {
      std::string where = "nerve[" + std::to_string(s) + "]";
      if (!n[s].IsSequence()) invalid(where + " must be a list of charts");
      Simplex simplex;
      for (std::size_t k = 0; k < n[s].size(); ++k) simplex.push_back(chart_index(m, n[s][k], where));
      nerve.push_back(simplex);
    }
  } else {
    for (int i = 0; i < nc; ++i)
      for (int j = i + 1; j < nc; ++j) {
        nerve.push_back({i, j});
        for (int k = j + 1; k < nc; ++k) nerve.push_back({i, j, k});
      }
  }

  std::vector<CoverSpec::Transition> transitions;
  if (root["transitions"]) {
    const YAML::Node& t = root["transitions"];
    if (!t.IsSequence()) invalid("transitions must be a list");
    for (std::size_t k = 0; k < t.size(); ++k) {
      std::string where = "transitions[" + std::to_string(k) + "]";
      int from = chart_index(m, t[k]["from"], where + ".from");
      int to = chart_index(m, t[k]["to"], where + ".to");
      if (from == to) invalid(where + " relates a chart to itself");
      // forward expresses chart-`from` coordinates through chart-`to` ones
      ChartMap fwd = chart_map(m.ctx, t[k]["forward"], where + ".forward");
      ChartMap bwd = chart_map(m.ctx, t[k]["backward"], where + ".backward");
      if (from < to)
        transitions.push_back({from, to, fwd, bwd});
      else
        transitions.push_back({to, from, bwd, fwd});
    }
  }
  m.cover.emplace(consistency([&] { return CoverSpec(m.ctx, m.charts, transitions, nerve); }));

  m.connections.assign(nc, std::nullopt);
  m.frames.assign(nc, std::nullopt);
  m.primitives.assign(nc, std::nullopt);

  if (root["bundle"]) {
    const YAML::Node& b = root["bundle"];
    int rank = static_cast<int>(integer(b["rank"], "bundle.rank"));
    if (rank < 1) invalid("bundle.rank must be positive");
    std::map<std::pair<int, int>, MatrixForm> g;
    const YAML::Node& c = b["cocycle"];
    if (c && !c.IsSequence()) invalid("bundle.cocycle must be a list");
    for (std::size_t k = 0; c && k < c.size(); ++k) {
      std::string where = "bundle.cocycle[" + std::to_string(k) + "]";
      int from = chart_index(m, c[k]["from"], where + ".from");
      int to = chart_index(m, c[k]["to"], where + ".to");
      if (from >= to) invalid(where + " must go from an earlier chart to a later one");
      const YAML::Node& mat = c[k]["matrix"];
      if (!mat || !mat.IsSequence() || static_cast<int>(mat.size()) != rank)
        invalid(where + ".matrix must have " + std::to_string(rank) + " rows");
      std::vector<RatFunc> entries;
      for (int r = 0; r < rank; ++r) {
        if (!mat[r].IsSequence() || static_cast<int>(mat[r].size()) != rank)
          invalid(where + ".matrix row " + std::to_string(r) + " must have " + std::to_string(rank) + " entries");
        for (int s = 0; s < rank; ++s)
          entries.push_back(ratfunc(m.ctx, mat[r][s], where + ".matrix[" + std::to_string(r) + "][" + std::to_string(s) + "]"));
      }
      g[{from, to}] = MatrixForm::functions(m.ctx, rank, entries);
    }
    m.bundle.emplace(consistency([&] { return BundleCocycle(*m.cover, rank, g); }));
  }

  if (root["connections"]) {
    if (!m.bundle) invalid("connections need a bundle");
    const int rank = m.bundle->rank();
    per_chart(m, root["connections"], "connections", [&](int i, const YAML::Node& n, const std::string& where) {
      if (!n.IsSequence() || static_cast<int>(n.size()) != rank) invalid(where + " must have " + std::to_string(rank) + " rows");
      MatrixForm w(m.ctx, rank, 1);
      for (int r = 0; r < rank; ++r) {
        if (!n[r].IsSequence() || static_cast<int>(n[r].size()) != rank)
          invalid(where + " row " + std::to_string(r) + " must have " + std::to_string(rank) + " entries");
        for (int s = 0; s < rank; ++s) {
          std::string at = where + "[" + std::to_string(r) + "][" + std::to_string(s) + "]";
          std::string lit = scalar(n[r][s], at);
          DiffForm f = literal(at, [&] { return parse_form(lit, m.ctx); });
          literal(at, [&] {
            w.set(r, s, f);
            return 0;
          });
        }
      }
      m.connections[i] = Connection(w);
    });
  }

  if (root["frames"]) {
    per_chart(m, root["frames"], "frames", [&](int i, const YAML::Node& n, const std::string& where) {
      if (n.IsScalar()) {
        if (n.Scalar() != "coordinate") invalid(where + " must be 'coordinate', {fields: ...} or {map: ..., inverse: ...}");
        m.frames[i] = FrameEVA::coordinate(m.ctx);
      } else if (n.IsMap() && n["fields"]) {
        std::vector<VectorField> fields;
        const YAML::Node& fs = n["fields"];
        if (!fs.IsSequence()) invalid(where + ".fields must be a list");
        for (std::size_t k = 0; k < fs.size(); ++k) {
          std::string at = where + ".fields[" + std::to_string(k) + "]";
          if (!fs[k].IsSequence() || static_cast<int>(fs[k].size()) != m.ctx->dim())
            invalid(at + " must list one component per variable");
          std::vector<RatFunc> comps;
          for (std::size_t c = 0; c < fs[k].size(); ++c) comps.push_back(ratfunc(m.ctx, fs[k][c], at));
          fields.emplace_back(m.ctx, comps);
        }
        m.frames[i] = literal(where, [&] { return FrameEVA(m.ctx, fields); });
      } else if (n.IsMap() && n["map"]) {
        ChartMap f = chart_map(m.ctx, n["map"], where + ".map");
        ChartMap b = chart_map(m.ctx, n["inverse"], where + ".inverse");
        m.frames[i] = literal(where, [&] { return FrameEVA::sheared(f, b); });
      } else {
        invalid(where + " must be 'coordinate', {fields: ...} or {map: ..., inverse: ...}");
      }
    });
  }

  if (root["primitives"]) {
    per_chart(m, root["primitives"], "primitives", [&](int i, const YAML::Node& n, const std::string& where) {
      std::string lit = scalar(n, where);
      DiffForm H = literal(where, [&] { return parse_form(lit, m.ctx); });
      if (!H.is_zero() && (!H.is_homogeneous() || H.degree() != 3)) invalid(where + " must be a 3-form");
      m.primitives[i] = H;
    });
  }

  m.tasks = scalars(root["tasks"], "tasks");
  for (const auto& t : m.tasks)
    if (std::find(kTasks.begin(), kTasks.end(), t) == kTasks.end()) invalid("unknown task '" + t + "'");
  for (const auto& t : m.tasks) {
    if ((t == "pontryagin" || t == "ch2") && !m.bundle) invalid("task " + t + " needs a bundle");
    if ((t == "eva-class" || t == "compare-classes") && !m.has_all_frames())
      invalid("task " + t + " needs a frame on every chart");
  }
  if (root["lemmas"]) {
    m.lemmas = scalars(root["lemmas"], "lemmas");
    for (const auto& l : m.lemmas)
      if (std::find(lemma_names().begin(), lemma_names().end(), l) == lemma_names().end())
        invalid("unknown lemma '" + l + "'");
  }
  if (root["seed"]) {
    long s = integer(root["seed"], "seed");
    if (s < 0) invalid("seed must be non-negative");
    m.seed = static_cast<std::uint64_t>(s);
  }
  if (root["bounds"]) {
    const YAML::Node& b = root["bounds"];
    if (!b.IsMap()) invalid("bounds must be a mapping");
    for (const auto& kv : b) {
      std::string key = kv.first.as<std::string>();
      if (key != "degree" && key != "samples") invalid("unknown bound '" + key + "'");
    }
    if (b["degree"]) m.degree_bound = static_cast<int>(integer(b["degree"], "bounds.degree"));
    if (b["samples"]) m.samples = static_cast<int>(integer(b["samples"], "bounds.samples"));
  }
  if (m.degree_bound < 0) invalid("bounds.degree must be non-negative");
  if (m.samples < 1) invalid("bounds.samples must be positive");

  YAML::Emitter out;
  out << root;
  m.canonical = out.c_str();
  return m;
}

}  // namespace algd::cli
