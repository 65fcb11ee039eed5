#include "fractree/tree.hpp"

#include <algorithm>
#include <charconv>

#include "fractree/errors.hpp"

namespace fractree {

void validate(const TreeParams& params) {
  if (!(params.k > 0.0) || !std::isfinite(params.k)) {
    throw InputError("tree: spring constant k must be positive and finite");
  }
  if (!(params.b > 0.0) || !std::isfinite(params.b)) {
    throw InputError("tree: damper constant b must be positive and finite");
  }
}

bool is_valid(const ComponentId& c) {
  if (c.generation < 1 || c.generation > 62) return false;
  const std::int64_t width = std::int64_t{1} << (c.generation - 1);
  return c.index >= 1 && c.index <= width;
}

void validate(const ComponentId& c) {
  if (!is_valid(c)) {
    throw InputError("tree: invalid component " + std::string(c.kind == ComponentKind::spring ? "k" : "b") +
                     std::to_string(c.generation) + "," + std::to_string(c.index));
  }
}

void validate(const DamageCase& dc) {
  validate(dc.component);
  if (!(dc.eps > 0.0) || !(dc.eps < 1.0)) {
    throw InputError("tree: damage amount eps must lie strictly in (0,1)");
  }
}

std::int64_t component_count(int max_generation) {
  if (max_generation < 1 || max_generation > 60) {
    throw InputError("tree: max_generation out of range");
  }
  return (std::int64_t{2} << max_generation) - 2;
}

ParentLink parent_of(const ComponentId& c) {
  validate(c);
  if (c.generation == 1) {
    throw InputError("tree: generation-1 component has no parent");
  }
  const std::int64_t half = std::int64_t{1} << (c.generation - 2);
  ParentLink link;
  link.parent.kind = c.kind;
  link.parent.generation = c.generation - 1;
  if (c.index <= half) {
    link.parent.index = c.index;
    link.branch = Branch::upper;
  } else {
    link.parent.index = c.index - half;
    link.branch = Branch::lower;
  }
  return link;
}

std::vector<Branch> branch_path(const ComponentId& c) {
  validate(c);
  std::vector<Branch> path;
  path.reserve(c.generation - 1);
  ComponentId cur = c;
  while (cur.generation > 1) {
    ParentLink link = parent_of(cur);
    path.push_back(link.branch);
    cur = link.parent;
  }
  // Collected deepest-first; wrapping applies from generation 1 outward.
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<ComponentId> candidate_set(int max_generation) {
  const std::int64_t total = component_count(max_generation);
  std::vector<ComponentId> out;
  out.reserve(static_cast<std::size_t>(total));
  for (int g = 1; g <= max_generation; ++g) {
    const std::int64_t width = std::int64_t{1} << (g - 1);
    for (std::int64_t m = 1; m <= width; ++m) {
      out.push_back({ComponentKind::spring, g, m});
      out.push_back({ComponentKind::damper, g, m});
    }
  }
  return out;
}

std::int64_t component_ordinal(const ComponentId& c) {
  validate(c);
  const std::int64_t before = (std::int64_t{2} << (c.generation - 1)) - 2;
  return before + 2 * (c.index - 1) + (c.kind == ComponentKind::spring ? 1 : 2);
}

std::string to_string(const ComponentId& c) {
  return std::string(c.kind == ComponentKind::spring ? "k" : "b") + std::to_string(c.generation) + "," +
         std::to_string(c.index);
}

ComponentId parse_component(const std::string& text) {
  if (text.size() < 4 || (text[0] != 'k' && text[0] != 'b')) {
    throw InputError("tree: cannot parse component '" + text + "' (expected e.g. k3,2)");
  }
  const auto comma = text.find(',');
  if (comma == std::string::npos || comma < 2 || comma + 1 >= text.size()) {
    throw InputError("tree: cannot parse component '" + text + "' (expected e.g. k3,2)");
  }
  ComponentId c;
  c.kind = text[0] == 'k' ? ComponentKind::spring : ComponentKind::damper;
  const char* gen_first = text.data() + 1;
  const char* gen_last = text.data() + comma;
  const char* idx_first = text.data() + comma + 1;
  const char* idx_last = text.data() + text.size();
  auto gr = std::from_chars(gen_first, gen_last, c.generation);
  auto ir = std::from_chars(idx_first, idx_last, c.index);
  if (gr.ec != std::errc{} || gr.ptr != gen_last || ir.ec != std::errc{} || ir.ptr != idx_last) {
    throw InputError("tree: cannot parse component '" + text + "' (expected e.g. k3,2)");
  }
  validate(c);
  return c;
}

}
