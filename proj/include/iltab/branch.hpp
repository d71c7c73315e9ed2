#pragma once

#include <string>
#include <vector>

#include "iltab/formula.hpp"
#include "iltab/label.hpp"
#include "iltab/label_structure.hpp"

namespace iltab {

struct LabelledFormula {
  Label label;
  Formula formula;

  std::string str() const { return label.str() + " :: " + render(formula); }

  bool operator==(const LabelledFormula& o) const {
    return label == o.label && formula == o.formula;
  }
  bool operator!=(const LabelledFormula& o) const { return !(*this == o); }
  bool operator<(const LabelledFormula& o) const {
    int c = label.compare(o.label);
    if (c != 0) return c < 0;
    return formula < o.formula;
  }

  std::size_t hash() const { return detail::hash_mix(label.hash(), formula.hash()); }
};

// One root-to-leaf path of a tableau, together with the closure of its
// labels. The label set of the structure is exactly the set of labels
// occurring in items.
struct Branch {
  std::vector<LabelledFormula> items;
  LabelStructure structure;

  bool contains(const LabelledFormula& lf) const {
    for (const LabelledFormula& x : items) {
      if (x == lf) return true;
    }
    return false;
  }
};

}  // namespace iltab

template <>
struct std::hash<iltab::LabelledFormula> {
  std::size_t operator()(const iltab::LabelledFormula& lf) const noexcept {
    return lf.hash();
  }
};
