#pragma once

#include <map>
#include <vector>

#include "starcat/group.hpp"

namespace starcat {

// Canonical representatives of isomorphism classes.  Seeded with the named
// constructors for small orders; groups with no seeded match register
// themselves on first sight, so lookups are deterministic given a
// deterministic call order.
class GroupCatalog {
 public:
  GroupCatalog() {
    for (const char* spec :
         {"C1",  "C2",  "C3",  "C4",   "V4",     "C5",     "C6",  "S3",  "C7",  "C8",
          "C2xC4", "C2xC2xC2", "D8",  "Q8",   "C9",     "C3xC3", "C10", "D10", "C11", "C12",
          "C2xC6", "D12", "C13", "C14", "D14", "C15",   "C16",  "C2xC8", "C4xC4",
          "C2xC2xC4", "C2xC2xC2xC2"})
      reps_.push_back(make_group(spec));
  }

  const Group& canonical(const Group& g) {
    for (const auto& r : reps_)
      if (r.order() == g.order() && (r.same(g) || is_isomorphic(r, g).has_value()))
        return r;
    reps_.push_back(g);
    return reps_.back();
  }

  // [E] <= [G]: E is isomorphic to a subquotient of G.  Memoized on the
  // canonical representatives.
  bool factor_leq(const Group& e, const Group& g) {
    const Group& ce = canonical(e);
    const Group& cg = canonical(g);
    auto key = std::make_pair(ce.id(), cg.id());
    auto it = leq_memo_.find(key);
    if (it != leq_memo_.end()) return it->second;
    bool found = false;
    if (cg.order() % ce.order() == 0) {
      for (const auto& sec : sections(cg)) {
        if (sec.top.size() != ce.order() * sec.bottom.size()) continue;
        if (is_isomorphic(ce, quotient(sec.top, sec.bottom).group).has_value()) {
          found = true;
          break;
        }
      }
    }
    leq_memo_[key] = found;
    return found;
  }

  bool factor_lt(const Group& e, const Group& g) {
    return factor_leq(e, g) && canonical(e).id() != canonical(g).id();
  }

 private:
  std::vector<Group> reps_;
  std::map<std::pair<const detail::GroupData*, const detail::GroupData*>, bool> leq_memo_;
};

}  // namespace starcat
