#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace fractree {

// Spring and damper constants shared by every undamaged component of the
// tree. r = sqrt(k/b) sets the scale of all half-order zeros and poles
// (units s^-1/2); c = 1/sqrt(k*b) is the compliance scale.
struct TreeParams {
  double k = 1.0;
  double b = 1.0;

  double r() const { return std::sqrt(k / b); }
  double c() const { return 1.0 / std::sqrt(k * b); }
};

void validate(const TreeParams& params);

enum class ComponentKind : std::uint8_t { spring, damper };

// Addresses one spring or damper: generation g >= 1 and index m in
// [1, 2^(g-1)], following the k_{g,m} / b_{g,m} subscript convention.
struct ComponentId {
  ComponentKind kind = ComponentKind::spring;
  int generation = 1;
  std::int64_t index = 1;

  friend bool operator==(const ComponentId&, const ComponentId&) = default;
};

bool is_valid(const ComponentId& c);
void validate(const ComponentId& c);

// One damaged component and its damage amount: the damaged constant is
// eps * (undamaged constant), 0 < eps < 1.
struct DamageCase {
  ComponentId component;
  double eps = 0.5;
};

void validate(const DamageCase& dc);

enum class Branch : std::uint8_t { upper, lower };

struct ParentLink {
  ComponentId parent;
  Branch branch;
};

// Total number of components in generations 1..n, i.e. 2^(n+1) - 2.
std::int64_t component_count(int max_generation);

// Inverse of the child map (g,m) -> {(g+1, m) upper, (g+1, m + 2^(g-1)) lower}.
// Throws for generation-1 components (no parent).
ParentLink parent_of(const ComponentId& c);

// Branches taken from the generation-1 ancestor down to c, in the order the
// wrapping steps must be applied. Empty for generation 1.
std::vector<Branch> branch_path(const ComponentId& c);

// Ordered candidate list [k11, b11, k21, b21, k22, b22, ...] through
// max_generation: generation-major, then index, spring before damper.
std::vector<ComponentId> candidate_set(int max_generation);

// 1-based position of c in candidate_set order (k11 -> 1, b11 -> 2, ...).
std::int64_t component_ordinal(const ComponentId& c);

std::string to_string(const ComponentId& c);           // e.g. "k3,2"
ComponentId parse_component(const std::string& text);  // inverse of to_string

}
