#include "fractree/pz_database.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "fractree/errors.hpp"
#include "fractree/parallel.hpp"

namespace fractree {

double chebyshev_eps(int a) {
  if (a < 1 || a > kEpsSampleCount) {
    throw InputError("pz_database: sample index out of range [1,500]");
  }
  return 0.5 * (std::cos((2.0 * a - 1.0) * std::numbers::pi / 1000.0) + 1.0);
}

namespace {

// Exact min-cost assignment on a square matrix (Hungarian with potentials,
// O(n^3)); n <= 2g stays tiny here.
std::vector<std::size_t> min_cost_assignment(const std::vector<std::vector<double>>& cost) {
  const int n = static_cast<int>(cost.size());
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> match(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = match[j0];
      int j1 = -1;
      double delta = inf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> row_to_col(static_cast<std::size_t>(n));
  for (int j = 1; j <= n; ++j) {
    if (match[j] != 0) row_to_col[static_cast<std::size_t>(match[j] - 1)] = static_cast<std::size_t>(j - 1);
  }
  return row_to_col;
}

std::vector<Complex> apply_permutation(const std::vector<Complex>& values, const std::vector<std::size_t>& perm) {
  std::vector<Complex> out(values.size());
  for (std::size_t i = 0; i < perm.size(); ++i) out[i] = values[perm[i]];
  return out;
}

void format_double(std::string& out, double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

struct LineReader {
  std::istream& in;
  int line_no = 0;

  bool next(std::string& line) {
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return true;
    }
    return false;
  }
};

[[noreturn]] void fail_format(const std::filesystem::path& path, int line, const std::string& what) {
  throw InputError("pz_database: " + path.string() + ":" + std::to_string(line) + ": " + what);
}

}

std::vector<std::size_t> match_roots(std::span<const Complex> prev, std::span<const Complex> next) {
  if (prev.size() != next.size()) {
    throw InputError("pz_database: match_roots needs equal-length root sets");
  }
  const std::size_t n = prev.size();
  if (n == 0) return {};
  std::vector<std::vector<double>> cost(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      cost[i][j] = std::abs(prev[i] - next[j]);
    }
  }
  return min_cost_assignment(cost);
}

ComponentTable build_component_table(const ComponentId& component, const TreeParams& params) {
  validate(component);
  validate(params);
  ComponentTable table{component, params, {}};
  table.samples.reserve(kEpsSampleCount);
  std::vector<Complex> zeros_prev, poles_prev;
  for (int a = 1; a <= kEpsSampleCount; ++a) {
    const double eps = chebyshev_eps(a);
    HalfOrderRational rat;
    try {
      rat = delta_for_case({component, eps}, params, zeros_prev, poles_prev);
    } catch (const NumericalError& e) {
      throw NumericalError("pz_database: building " + to_string(component) + " failed at sample " +
                           std::to_string(a) + ": " + e.what());
    }
    if (a > 1) {
      rat.zeros = apply_permutation(rat.zeros, match_roots(zeros_prev, rat.zeros));
      rat.poles = apply_permutation(rat.poles, match_roots(poles_prev, rat.poles));
    }
    for (const Complex& p : rat.poles) {
      // Observed stability property: stored poles all map to strictly
      // stable half-order poles. A violation means bad data, not a crash.
      if (!(p.real() > 0.0)) {
        throw NumericalError("pz_database: unstable half-order pole for " + to_string(component) +
                             " at sample " + std::to_string(a));
      }
    }
    zeros_prev = rat.zeros;
    poles_prev = rat.poles;
    table.samples.push_back({a, eps, std::move(rat.zeros), std::move(rat.poles)});
  }
  return table;
}

void ComponentTable::interpolate_into(double eps, std::vector<Complex>& zeros, std::vector<Complex>& poles,
                                      bool* clamped) const {
  if (clamped) *clamped = false;
  if (samples.size() < 2) {
    throw NumericalError("pz_database: table has too few samples to interpolate");
  }
  const EpsSample* lo_side = nullptr;
  const EpsSample* hi_side = nullptr;
  double t = 0.0;
  if (eps >= samples.front().eps) {
    lo_side = hi_side = &samples.front();
    if (clamped) *clamped = true;
  } else if (eps <= samples.back().eps) {
    lo_side = hi_side = &samples.back();
    if (clamped) *clamped = true;
  } else {
    // samples are eps-descending; find the bracketing pair.
    std::size_t lo = 0, hi = samples.size() - 1;
    while (hi - lo > 1) {
      const std::size_t mid = (lo + hi) / 2;
      if (samples[mid].eps >= eps) lo = mid; else hi = mid;
    }
    lo_side = &samples[lo];
    hi_side = &samples[hi];
    t = (eps - lo_side->eps) / (hi_side->eps - lo_side->eps);
  }
  const std::size_t n = lo_side->zeros.size();
  zeros.resize(n);
  poles.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    zeros[j] = lo_side->zeros[j] * (1.0 - t) + hi_side->zeros[j] * t;
    poles[j] = lo_side->poles[j] * (1.0 - t) + hi_side->poles[j] * t;
  }
}

HalfOrderRational interpolate(const ComponentTable& table, double eps, bool* clamped) {
  HalfOrderRational rat;
  rat.generation = table.generation();
  table.interpolate_into(eps, rat.zeros, rat.poles, clamped);
  return rat;
}

const ComponentTable& PoleZeroDatabase::table_for(const ComponentId& component) const {
  const std::int64_t ordinal = component_ordinal(component);
  if (ordinal >= 1 && static_cast<std::size_t>(ordinal) <= tables.size()) {
    const ComponentTable& t = tables[static_cast<std::size_t>(ordinal - 1)];
    if (t.component == component) return t;
  }
  for (const ComponentTable& t : tables) {
    if (t.component == component) return t;
  }
  throw InputError("pz_database: no table for component " + to_string(component));
}

PoleZeroDatabase build_database(const TreeParams& params, int max_generation, int threads) {
  validate(params);
  if (max_generation < 1 || max_generation > 10) {
    throw InputError("pz_database: max_generation must lie in [1,10]");
  }
  const std::vector<ComponentId> components = candidate_set(max_generation);
  PoleZeroDatabase db{params, max_generation, std::vector<ComponentTable>(components.size())};
  parallel_for(components.size(), [&](std::size_t i) {
    db.tables[i] = build_component_table(components[i], params);
  }, threads);
  return db;
}

void save_database(const PoleZeroDatabase& db, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw InputError("pz_database: cannot open for writing: " + path.string());
  }
  std::string buf;
  buf.reserve(1 << 20);
  buf += "fractree-pzdb v1\n";
  buf += "k=";
  format_double(buf, db.params.k);
  buf += " b=";
  format_double(buf, db.params.b);
  buf += "\n";
  for (const ComponentTable& table : db.tables) {
    buf += "component=" + to_string(table.component) + "\n";
    buf += "samples=" + std::to_string(table.samples.size()) + "\n";
    for (const EpsSample& sample : table.samples) {
      buf += std::to_string(sample.a);
      buf += ' ';
      format_double(buf, sample.eps);
      for (const Complex& z : sample.zeros) {
        buf += ' ';
        format_double(buf, z.real());
        buf += ' ';
        format_double(buf, z.imag());
      }
      for (const Complex& p : sample.poles) {
        buf += ' ';
        format_double(buf, p.real());
        buf += ' ';
        format_double(buf, p.imag());
      }
      buf += '\n';
    }
    out << buf;
    buf.clear();
  }
  out << buf;
  if (!out) {
    throw InputError("pz_database: write failed: " + path.string());
  }
}

PoleZeroDatabase load_database(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw InputError("pz_database: cannot open: " + path.string());
  }
  LineReader reader{in};
  std::string line;
  if (!reader.next(line) || line != "fractree-pzdb v1") {
    fail_format(path, reader.line_no, "expected header 'fractree-pzdb v1'");
  }
  PoleZeroDatabase db;
  if (!reader.next(line)) fail_format(path, reader.line_no, "missing parameter line");
  {
    std::istringstream ls(line);
    std::string ktok, btok;
    ls >> ktok >> btok;
    if (ktok.rfind("k=", 0) != 0 || btok.rfind("b=", 0) != 0) {
      fail_format(path, reader.line_no, "expected 'k=<...> b=<...>'");
    }
    try {
      db.params.k = std::stod(ktok.substr(2));
      db.params.b = std::stod(btok.substr(2));
    } catch (const std::exception&) {
      fail_format(path, reader.line_no, "cannot parse tree parameters");
    }
    validate(db.params);
  }

  while (reader.next(line)) {
    if (line.rfind("component=", 0) != 0) {
      fail_format(path, reader.line_no, "expected 'component=...'");
    }
    ComponentTable table;
    table.component = parse_component(line.substr(10));
    table.params = db.params;
    if (!reader.next(line) || line.rfind("samples=", 0) != 0) {
      fail_format(path, reader.line_no, "expected 'samples=...'");
    }
    int count = 0;
    try {
      count = std::stoi(line.substr(8));
    } catch (const std::exception&) {
      fail_format(path, reader.line_no, "cannot parse sample count");
    }
    if (count != kEpsSampleCount) {
      fail_format(path, reader.line_no, "sample count must be 500");
    }
    const std::size_t order = 2 * static_cast<std::size_t>(table.component.generation);
    table.samples.reserve(static_cast<std::size_t>(count));
    double prev_eps = std::numeric_limits<double>::infinity();
    for (int i = 0; i < count; ++i) {
      if (!reader.next(line)) fail_format(path, reader.line_no, "truncated sample block");
      std::istringstream ls(line);
      EpsSample sample;
      if (!(ls >> sample.a >> sample.eps)) {
        fail_format(path, reader.line_no, "cannot parse sample line");
      }
      if (sample.a != i + 1) fail_format(path, reader.line_no, "sample indices must run 1..500");
      if (!(sample.eps > 0.0 && sample.eps < 1.0 && sample.eps < prev_eps)) {
        fail_format(path, reader.line_no, "eps values must be strictly decreasing in (0,1)");
      }
      prev_eps = sample.eps;
      sample.zeros.resize(order);
      sample.poles.resize(order);
      double re = 0.0, im = 0.0;
      for (std::size_t j = 0; j < order; ++j) {
        if (!(ls >> re >> im)) fail_format(path, reader.line_no, "root count does not match 2*generation");
        sample.zeros[j] = Complex(re, im);
      }
      for (std::size_t j = 0; j < order; ++j) {
        if (!(ls >> re >> im)) fail_format(path, reader.line_no, "root count does not match 2*generation");
        sample.poles[j] = Complex(re, im);
      }
      double extra;
      if (ls >> extra) fail_format(path, reader.line_no, "root count does not match 2*generation");
      table.samples.push_back(std::move(sample));
    }
    db.tables.push_back(std::move(table));
  }

  if (db.tables.empty()) {
    throw InputError("pz_database: " + path.string() + ": no component tables");
  }
  int max_gen = 0;
  for (const ComponentTable& t : db.tables) max_gen = std::max(max_gen, t.component.generation);
  db.max_generation = max_gen;
  const std::vector<ComponentId> expected = candidate_set(max_gen);
  if (db.tables.size() != expected.size()) {
    throw InputError("pz_database: " + path.string() + ": incomplete component coverage for generation " +
                     std::to_string(max_gen));
  }
  std::vector<ComponentTable> ordered(expected.size());
  std::vector<bool> seen(expected.size(), false);
  for (ComponentTable& t : db.tables) {
    const std::size_t slot = static_cast<std::size_t>(component_ordinal(t.component) - 1);
    if (slot >= ordered.size() || seen[slot]) {
      throw InputError("pz_database: " + path.string() + ": duplicate or out-of-range component " +
                       to_string(t.component));
    }
    seen[slot] = true;
    ordered[slot] = std::move(t);
  }
  db.tables = std::move(ordered);
  return db;
}

}
