#include "demod/stratify.hpp"

#include <algorithm>

namespace demod {

namespace {

// Union-find where each node carries its level offset to the parent;
// find() returns the root and the accumulated offset level(v) - level(root).
struct OffsetUnionFind {
  std::vector<int> parent;
  std::vector<int> rank;
  std::vector<long long> offset;

  int make() {
    int id = static_cast<int>(parent.size());
    parent.push_back(id);
    rank.push_back(0);
    offset.push_back(0);
    return id;
  }

  std::pair<int, long long> find(int v) {
    if (parent[v] == v) return {v, 0};
    auto [root, above] = find(parent[v]);
    parent[v] = root;
    offset[v] += above;
    return {root, offset[v]};
  }

  // Imposes level(b) - level(a) = diff; false on contradiction.
  bool relate(int a, int b, long long diff) {
    auto [ra, da] = find(a);
    auto [rb, db] = find(b);
    if (ra == rb) return db - da == diff;
    // level(rb) - level(ra) = level(b) - db - (level(a) - da) = diff - db + da
    long long root_diff = diff - db + da;
    if (rank[ra] < rank[rb]) {
      parent[ra] = rb;
      offset[ra] = -root_diff;
    } else {
      parent[rb] = ra;
      offset[rb] = root_diff;
      if (rank[ra] == rank[rb]) ++rank[ra];
    }
    return true;
  }
};

struct Collector {
  const std::string& pred;
  std::vector<std::string> order;           // first-appearance order
  std::map<std::string, int> ids;
  std::vector<std::pair<int, int>> atoms;   // (u, w) for u in w

  int id_of(const std::string& v) {
    auto it = ids.find(v);
    if (it != ids.end()) return it->second;
    int id = static_cast<int>(order.size());
    ids.emplace(v, id);
    order.push_back(v);
    return id;
  }

  void walk(const Proposition& a) {
    switch (a.kind()) {
      case PropKind::Atom: {
        if (a.name() != pred)
          throw NotInMembershipLanguage("atom uses predicate '" + a.name() +
                                        "', expected '" + pred + "'");
        if (a.terms().size() != 2)
          throw NotInMembershipLanguage("membership atom must be binary");
        for (const Term& t : a.terms())
          if (!t.is_var())
            throw NotInMembershipLanguage(
                "membership atom has a non-variable argument");
        atoms.emplace_back(id_of(a.terms()[0].head()), id_of(a.terms()[1].head()));
        return;
      }
      case PropKind::Bottom:
        return;
      case PropKind::Forall:
      case PropKind::Exists:
        id_of(a.name());
        walk(a.body());
        return;
      default:
        walk(a.left());
        walk(a.right());
        return;
    }
  }
};

}  // namespace

StratifyResult stratify(const Proposition& a, const std::string& membership_pred) {
  Proposition renamed = rename_binders_apart(a);
  Collector col{membership_pred};
  col.walk(renamed);

  OffsetUnionFind uf;
  for (size_t i = 0; i < col.order.size(); ++i) uf.make();
  for (const auto& [u, w] : col.atoms)
    if (!uf.relate(u, w, 1)) return {};

  // Canonicalize: shift each component so its minimum level is 0.
  std::map<int, long long> component_min;
  std::vector<std::pair<int, long long>> found(col.order.size());
  for (size_t i = 0; i < col.order.size(); ++i) {
    found[i] = uf.find(static_cast<int>(i));
    auto [root, off] = found[i];
    auto it = component_min.find(root);
    if (it == component_min.end())
      component_min.emplace(root, off);
    else
      it->second = std::min(it->second, off);
  }

  Stratification s;
  for (size_t i = 0; i < col.order.size(); ++i) {
    auto [root, off] = found[i];
    s.levels.emplace_back(col.order[i], static_cast<int>(off - component_min[root]));
  }
  return {std::move(s)};
}

bool verify_stratification(const Proposition& a, const Stratification& s,
                           const std::string& membership_pred) {
  Proposition renamed = rename_binders_apart(a);
  Collector col{membership_pred};
  col.walk(renamed);

  std::vector<int> level(col.order.size());
  for (size_t i = 0; i < col.order.size(); ++i) {
    std::optional<int> lvl = s.level_of(col.order[i]);
    if (!lvl)
      throw std::runtime_error("stratification lacks variable: " + col.order[i]);
    level[i] = *lvl;
  }
  for (const auto& [u, w] : col.atoms)
    if (level[w] != level[u] + 1) return false;
  return true;
}

}  // namespace demod
