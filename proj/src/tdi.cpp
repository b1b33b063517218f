#include "ebref/tdi.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>

namespace ebref {
namespace {

// States from which an infinite internal path exists: states that reach a
// hidden cycle through hidden edges.
std::vector<bool> divergent_states(const Lts& p) {
  std::vector<std::vector<int>> hadj(static_cast<std::size_t>(p.num_states));
  for (const auto& t : p.transitions)
    if (t.label == kHiddenLabel)
      hadj[static_cast<std::size_t>(t.src)].push_back(t.dst);
  auto comp = scc_ids(p.num_states, hadj);
  std::vector<bool> div(static_cast<std::size_t>(p.num_states), false);
  for (const auto& t : p.transitions)
    if (t.label == kHiddenLabel &&
        comp[static_cast<std::size_t>(t.src)] ==
            comp[static_cast<std::size_t>(t.dst)])
      div[static_cast<std::size_t>(t.src)] = true;
  // propagate backwards along hidden edges to a fixpoint
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& t : p.transitions) {
      if (t.label != kHiddenLabel) continue;
      if (div[static_cast<std::size_t>(t.dst)] &&
          !div[static_cast<std::size_t>(t.src)]) {
        div[static_cast<std::size_t>(t.src)] = true;
        changed = true;
      }
    }
  }
  return div;
}

// Subset-construction determinization with tau closure, built lazily.
class Det {
 public:
  explicit Det(const Lts& p) : p_(p), div_(divergent_states(p)) {
    for (const auto& t : p.transitions) {
      if (t.label == kHiddenLabel)
        hidden_adj_[t.src].push_back(t.dst);
      else
        visible_adj_[{t.src, t.label}].push_back(t.dst);
    }
    std::vector<int> init = closure(p.initials);
    initial_ = intern(std::move(init));
  }

  int initial() const { return initial_; }

  // -1 rejects: the label is impossible here
  int step(int id, const std::string& label) {
    int lbl = p_.label_id(label);
    if (lbl < 0) return -1;
    auto key = std::make_pair(id, lbl);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    std::vector<int> next;
    for (int s : sets_[static_cast<std::size_t>(id)]) {
      auto vit = visible_adj_.find({s, lbl});
      if (vit == visible_adj_.end()) continue;
      next.insert(next.end(), vit->second.begin(), vit->second.end());
    }
    int result = -1;
    if (!next.empty()) {
      next = closure(std::move(next));
      result = intern(std::move(next));
    }
    memo_.emplace(key, result);
    return result;
  }

  // a diverged subset admits every continuation
  bool chaos(int id) const {
    for (int s : sets_[static_cast<std::size_t>(id)])
      if (div_[static_cast<std::size_t>(s)]) return true;
    return false;
  }

  bool empty(int id) const { return sets_[static_cast<std::size_t>(id)].empty(); }

  const std::vector<std::string>& alphabet() const { return p_.alphabet; }

 private:
  std::vector<int> closure(std::vector<int> s) const {
    std::vector<bool> seen(static_cast<std::size_t>(p_.num_states), false);
    std::vector<int> stack;
    for (int x : s)
      if (!seen[static_cast<std::size_t>(x)]) {
        seen[static_cast<std::size_t>(x)] = true;
        stack.push_back(x);
      }
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      auto it = hidden_adj_.find(x);
      if (it == hidden_adj_.end()) continue;
      for (int y : it->second)
        if (!seen[static_cast<std::size_t>(y)]) {
          seen[static_cast<std::size_t>(y)] = true;
          stack.push_back(y);
        }
    }
    std::vector<int> out;
    for (int i = 0; i < p_.num_states; ++i)
      if (seen[static_cast<std::size_t>(i)]) out.push_back(i);
    return out;
  }

  int intern(std::vector<int> s) {
    auto it = ids_.find(s);
    if (it != ids_.end()) return it->second;
    int id = static_cast<int>(sets_.size());
    ids_.emplace(s, id);
    sets_.push_back(std::move(s));
    return id;
  }

  const Lts& p_;
  std::vector<bool> div_;
  std::map<int, std::vector<int>> hidden_adj_;
  std::map<std::pair<int, int>, std::vector<int>> visible_adj_;
  std::map<std::vector<int>, int> ids_;
  std::vector<std::vector<int>> sets_;
  std::map<std::pair<int, int>, int> memo_;
  int initial_ = -1;
};

struct ProductNode {
  int parent = -1;
  std::string label;  // edge into this node; empty at roots and for tau
};

// Product search of impl against determinized spec. Returns the first
// violating trace (0-1 BFS: internal impl moves cost nothing, so the
// counterexample has minimal visible length). On success, visits every
// reachable product pair and can report them.
class ProductSearch {
 public:
  ProductSearch(const Lts& spec, const Lts& impl)
      : impl_(impl), det_(spec), impl_div_(divergent_states(impl)) {}

  // nullopt: containment holds; otherwise shortest offending trace
  std::optional<Trace> find_trace_violation() {
    run();
    return trace_cex_;
  }

  // first impl divergence not matched by a diverging spec subset
  std::optional<std::pair<int, Trace>> find_divergence_violation() {
    run();
    return div_cex_;
  }

  bool impl_divergent(int state) const {
    return impl_div_[static_cast<std::size_t>(state)];
  }

 private:
  void run() {
    if (done_) return;
    done_ = true;
    auto adj = impl_.out_edges();
    std::map<std::pair<int, int>, int> node_of;  // (impl, det) -> node
    std::deque<std::pair<int, int>> queue;
    int det0 = det_.initial();
    for (int s : impl_.initials) {
      if (det_.empty(det0)) {
        // spec admits nothing, not even the empty trace
        trace_cex_ = Trace{};
        return;
      }
      auto key = std::make_pair(s, det0);
      if (node_of.count(key)) continue;
      node_of[key] = new_node(-1, "");
      queue.push_back(key);
      check_divergence(s, det0, node_of[key]);
      if (div_cex_) return;
    }
    while (!queue.empty()) {
      auto [q, d] = queue.front();
      queue.pop_front();
      int node = node_of[{q, d}];
      if (det_.chaos(d)) continue;  // everything allowed from here
      for (auto [lbl, dst] : adj[static_cast<std::size_t>(q)]) {
        if (lbl == kHiddenLabel) {
          auto key = std::make_pair(dst, d);
          if (!node_of.count(key)) {
            node_of[key] = node;  // tau adds no trace content
            queue.push_front(key);
            check_divergence(dst, d, node);
            if (div_cex_) return;
          }
          continue;
        }
        std::string name = impl_.label_name(lbl);
        int nd = det_.step(d, name);
        if (nd < 0) {
          if (!trace_cex_) {
            Trace tr = path_to(node);
            tr.push_back(name);
            trace_cex_ = std::move(tr);
          }
          continue;
        }
        auto key = std::make_pair(dst, nd);
        if (!node_of.count(key)) {
          node_of[key] = new_node(node, name);
          queue.push_back(key);
          check_divergence(dst, nd, node_of[key]);
          if (div_cex_) return;
        }
      }
    }
  }

  void check_divergence(int impl_state, int det_id, int node) {
    if (div_cex_) return;
    if (impl_div_[static_cast<std::size_t>(impl_state)] && !det_.chaos(det_id))
      div_cex_ = std::make_pair(impl_state, path_to(node));
  }

  int new_node(int parent, std::string label) {
    nodes_.push_back({parent, std::move(label)});
    return static_cast<int>(nodes_.size()) - 1;
  }

  Trace path_to(int node) const {
    Trace tr;
    while (node >= 0) {
      if (!nodes_[static_cast<std::size_t>(node)].label.empty())
        tr.push_back(nodes_[static_cast<std::size_t>(node)].label);
      node = nodes_[static_cast<std::size_t>(node)].parent;
    }
    std::reverse(tr.begin(), tr.end());
    return tr;
  }

  const Lts& impl_;
  Det det_;
  std::vector<bool> impl_div_;
  std::vector<ProductNode> nodes_;
  std::optional<Trace> trace_cex_;
  std::optional<std::pair<int, Trace>> div_cex_;
  bool done_ = false;
};

// Hidden-only lasso from a divergent state, for witness rendering.
Lasso hidden_lasso_from(const Lts& p, int start, Trace stem) {
  Lasso l;
  l.stem = std::move(stem);
  std::map<int, std::vector<int>> hadj;
  for (const auto& t : p.transitions)
    if (t.label == kHiddenLabel) hadj[t.src].push_back(t.dst);
  auto div = divergent_states(p);
  // walk hidden edges through divergent states until a state repeats
  std::vector<int> path{start};
  std::map<int, std::size_t> pos{{start, 0}};
  int cur = start;
  for (;;) {
    int next = -1;
    for (int y : hadj[cur])
      if (div[static_cast<std::size_t>(y)] || y == cur) {
        next = y;
        break;
      }
    if (next == -1) next = hadj[cur].front();
    auto it = pos.find(next);
    if (it != pos.end()) {
      for (std::size_t i = it->second; i < path.size(); ++i) {
        l.cycle.push_back("tau");
        l.cycle_states.push_back(path[i]);
      }
      break;
    }
    pos[next] = path.size();
    path.push_back(next);
    cur = next;
  }
  return l;
}

}  // namespace

TdiVerdict traces_refines(const Lts& spec, const Lts& impl) {
  TdiVerdict v;
  ProductSearch search(spec, impl);
  if (auto cex = search.find_trace_violation()) {
    v.traces_ok = false;
    v.trace_cex = std::move(*cex);
  }
  return v;
}

TdiVerdict divergences_refines(const Lts& spec, const Lts& impl) {
  TdiVerdict v;
  ProductSearch search(spec, impl);
  // a trace violation can mask divergence pairs beyond it; treat the trace
  // counterexample's prefix search as authoritative for divergences only when
  // traces are contained
  auto div = search.find_divergence_violation();
  if (div) {
    v.divergences_ok = false;
    v.lasso_cex = hidden_lasso_from(impl, div->first, std::move(div->second));
  }
  return v;
}

TdiVerdict infinites_refines(const Lts& spec, const Lts& impl,
                             const TdiOptions& opts) {
  TdiVerdict v;
  auto spec_div = divergent_states(spec);
  auto spec_reach = spec.reachable();
  bool spec_div_free = true;
  for (int s = 0; s < spec.num_states; ++s)
    if (spec_reach[static_cast<std::size_t>(s)] &&
        spec_div[static_cast<std::size_t>(s)])
      spec_div_free = false;

  TdiVerdict tr = traces_refines(spec, impl);
  if (spec_div_free) {
    // Koenig reduction: finite branching + divergence-free spec means the
    // infinite traces are exactly the limits of the finite ones
    if (!tr.traces_ok) {
      v.infinites_ok = false;
      v.trace_cex = tr.trace_cex;
    }
    auto impl_div = divergent_states(impl);
    auto impl_reach = impl.reachable();
    for (int s = 0; s < impl.num_states && v.infinites_ok; ++s) {
      if (impl_reach[static_cast<std::size_t>(s)] &&
          impl_div[static_cast<std::size_t>(s)]) {
        // impl diverges, so its infinites include arbitrary extensions the
        // divergence-free spec cannot match
        TdiVerdict dv = divergences_refines(spec, impl);
        v.infinites_ok = false;
        v.lasso_cex = dv.lasso_cex;
      }
    }
  } else {
    if (!tr.traces_ok) {
      v.infinites_ok = false;
      v.trace_cex = tr.trace_cex;
    }
  }

  // belt-and-braces: pump sampled impl lassos through the determinized spec
  if (v.infinites_ok && opts.lasso_samples > 0) {
    std::mt19937_64 rng(opts.seed);
    auto adj = impl.out_edges();
    if (!impl.initials.empty()) {
      for (int sample = 0; sample < opts.lasso_samples; ++sample) {
        std::uniform_int_distribution<std::size_t> pick_init(
            0, impl.initials.size() - 1);
        int cur = impl.initials[pick_init(rng)];
        std::vector<int> states{cur};
        Trace labels;
        std::optional<std::pair<Trace, Trace>> lasso;
        for (int step = 0; step < 4 * impl.num_states + 8; ++step) {
          const auto& edges = adj[static_cast<std::size_t>(cur)];
          if (edges.empty()) break;
          std::uniform_int_distribution<std::size_t> pick(0, edges.size() - 1);
          auto [lbl, dst] = edges[pick(rng)];
          labels.push_back(lbl == kHiddenLabel ? std::string()
                                               : impl.label_name(lbl));
          auto it = std::find(states.begin(), states.end(), dst);
          if (it != states.end()) {
            std::size_t at = static_cast<std::size_t>(it - states.begin());
            Trace stem, cycle;
            for (std::size_t i = 0; i < at; ++i)
              if (!labels[i].empty()) stem.push_back(labels[i]);
            for (std::size_t i = at; i < labels.size(); ++i)
              if (!labels[i].empty()) cycle.push_back(labels[i]);
            lasso = std::make_pair(std::move(stem), std::move(cycle));
            break;
          }
          states.push_back(dst);
          cur = dst;
        }
        if (!lasso || lasso->second.empty()) continue;  // dead end or all-tau
        if (!accepts_lasso(spec, lasso->first, lasso->second)) {
          v.infinites_ok = false;
          Lasso w;
          w.stem = lasso->first;
          w.cycle = lasso->second;
          v.lasso_cex = std::move(w);
          break;
        }
      }
    }
  }
  return v;
}

TdiVerdict tdi_refines(const Lts& spec, const Lts& impl,
                       const TdiOptions& opts) {
  TdiVerdict v;
  TdiVerdict t = traces_refines(spec, impl);
  v.traces_ok = t.traces_ok;
  if (!t.traces_ok) v.trace_cex = t.trace_cex;
  TdiVerdict d = divergences_refines(spec, impl);
  v.divergences_ok = d.divergences_ok;
  if (!d.divergences_ok && !v.lasso_cex) v.lasso_cex = d.lasso_cex;
  TdiVerdict i = infinites_refines(spec, impl, opts);
  v.infinites_ok = i.infinites_ok;
  if (!i.infinites_ok) {
    if (!v.trace_cex && i.trace_cex) v.trace_cex = i.trace_cex;
    if (!v.lasso_cex && i.lasso_cex) v.lasso_cex = i.lasso_cex;
  }
  return v;
}

bool accepts_lasso(const Lts& p, const Trace& stem, const Trace& cycle) {
  Det det(p);
  int d = det.initial();
  if (det.empty(d)) return false;
  for (const auto& a : stem) {
    if (det.chaos(d)) return true;
    d = det.step(d, a);
    if (d < 0) return false;
  }
  if (cycle.empty()) return true;
  std::set<int> seen{d};
  for (;;) {
    if (det.chaos(d)) return true;
    for (const auto& a : cycle) {
      d = det.step(d, a);
      if (d < 0) return false;
      if (det.chaos(d)) return true;
    }
    if (!seen.insert(d).second) return true;  // pumped into a loop
  }
}

std::set<Trace> bounded_traces(const Lts& p, int max_len) {
  std::set<Trace> out;
  Det det(p);
  int d0 = det.initial();
  if (det.empty(d0)) return out;

  // enumerate all words over the alphabet from a diverged subset
  std::function<void(Trace&, int)> all_words = [&](Trace& prefix, int budget) {
    out.insert(prefix);
    if (budget == 0) return;
    for (const auto& a : p.alphabet) {
      prefix.push_back(a);
      all_words(prefix, budget - 1);
      prefix.pop_back();
    }
  };
  std::function<void(int, Trace&, int)> walk = [&](int d, Trace& prefix,
                                                   int budget) {
    if (det.chaos(d)) {
      all_words(prefix, budget);
      return;
    }
    out.insert(prefix);
    if (budget == 0) return;
    for (const auto& a : p.alphabet) {
      int nd = det.step(d, a);
      if (nd < 0) continue;
      prefix.push_back(a);
      walk(nd, prefix, budget - 1);
      prefix.pop_back();
    }
  };
  Trace prefix;
  walk(d0, prefix, max_len);
  return out;
}

CaVerdict check_ca(const Lts& p, const std::set<std::string>& c,
                   const std::set<std::string>& r) {
  for (const auto& x : c)
    if (r.count(x))
      throw std::invalid_argument("check_ca: C and R must be disjoint ('" + x +
                                  "')");
  auto reach = p.reachable();
  // subgraph avoiding R entirely
  std::vector<std::vector<int>> sub(static_cast<std::size_t>(p.num_states));
  std::vector<Transition> sub_edges;
  for (const auto& t : p.transitions) {
    if (!reach[static_cast<std::size_t>(t.src)]) continue;
    if (t.label != kHiddenLabel &&
        r.count(p.alphabet[static_cast<std::size_t>(t.label)]))
      continue;
    sub[static_cast<std::size_t>(t.src)].push_back(t.dst);
    sub_edges.push_back(t);
  }
  auto comp = scc_ids(p.num_states, sub);
  // violation: an SCC-internal edge labelled in C
  std::vector<Transition> c_edges;
  for (const auto& t : sub_edges) {
    if (t.label == kHiddenLabel) continue;
    if (!c.count(p.alphabet[static_cast<std::size_t>(t.label)])) continue;
    if (comp[static_cast<std::size_t>(t.src)] ==
        comp[static_cast<std::size_t>(t.dst)])
      c_edges.push_back(t);
  }
  if (c_edges.empty()) return {};

  // distances from initials over the full graph, for stem selection
  auto adj = p.out_edges();
  std::vector<int> dist(static_cast<std::size_t>(p.num_states), -1);
  std::vector<int> prev_state(static_cast<std::size_t>(p.num_states), -1);
  std::vector<int> prev_label(static_cast<std::size_t>(p.num_states), -2);
  std::deque<int> queue;
  for (int s : p.initials)
    if (dist[static_cast<std::size_t>(s)] == -1) {
      dist[static_cast<std::size_t>(s)] = 0;
      queue.push_back(s);
    }
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    for (auto [lbl, dst] : adj[static_cast<std::size_t>(s)]) {
      if (dist[static_cast<std::size_t>(dst)] != -1) continue;
      dist[static_cast<std::size_t>(dst)] = dist[static_cast<std::size_t>(s)] + 1;
      prev_state[static_cast<std::size_t>(dst)] = s;
      prev_label[static_cast<std::size_t>(dst)] = lbl;
      queue.push_back(dst);
    }
  }

  // shortest path inside one component of the R-avoiding subgraph
  auto comp_path = [&](int from, int to,
                       int cid) -> std::optional<std::pair<Trace, std::vector<int>>> {
    std::vector<std::vector<std::pair<int, int>>> nadj(
        static_cast<std::size_t>(p.num_states));
    for (const auto& t : sub_edges)
      if (comp[static_cast<std::size_t>(t.src)] == cid &&
          comp[static_cast<std::size_t>(t.dst)] == cid)
        nadj[static_cast<std::size_t>(t.src)].emplace_back(t.label, t.dst);
    for (auto& v : nadj) std::sort(v.begin(), v.end());
    if (from == to) return std::make_pair(Trace{}, std::vector<int>{});
    std::vector<int> ps(static_cast<std::size_t>(p.num_states), -1);
    std::vector<int> pl(static_cast<std::size_t>(p.num_states), -2);
    std::vector<bool> seen(static_cast<std::size_t>(p.num_states), false);
    std::deque<int> q{from};
    seen[static_cast<std::size_t>(from)] = true;
    bool found = false;
    while (!q.empty() && !found) {
      int s = q.front();
      q.pop_front();
      for (auto [lbl, dst] : nadj[static_cast<std::size_t>(s)]) {
        if (seen[static_cast<std::size_t>(dst)]) continue;
        seen[static_cast<std::size_t>(dst)] = true;
        ps[static_cast<std::size_t>(dst)] = s;
        pl[static_cast<std::size_t>(dst)] = lbl;
        if (dst == to) {
          found = true;
          break;
        }
        q.push_back(dst);
      }
    }
    if (!found) return std::nullopt;
    Trace tr;
    std::vector<int> sts;
    int cur = to;
    while (cur != from) {
      tr.insert(tr.begin(), p.label_name(pl[static_cast<std::size_t>(cur)]));
      sts.insert(sts.begin(), cur);
      cur = ps[static_cast<std::size_t>(cur)];
    }
    return std::make_pair(std::move(tr), std::move(sts));
  };

  // pick the best witness: minimal stem, then minimal cycle
  std::sort(c_edges.begin(), c_edges.end());
  std::optional<Lasso> best;
  std::size_t best_stem = 0, best_cycle = 0;
  for (const auto& e : c_edges) {
    if (dist[static_cast<std::size_t>(e.src)] < 0) continue;
    auto back = comp_path(e.dst, e.src, comp[static_cast<std::size_t>(e.src)]);
    if (!back) continue;
    std::size_t stem_len = static_cast<std::size_t>(
        dist[static_cast<std::size_t>(e.src)]);
    std::size_t cyc_len = 1 + back->first.size();
    if (best && std::make_pair(best_stem, best_cycle) <=
                    std::make_pair(stem_len, cyc_len))
      continue;
    Lasso l;
    int cur = e.src;
    while (prev_label[static_cast<std::size_t>(cur)] != -2) {
      l.stem.insert(l.stem.begin(),
                    p.label_name(prev_label[static_cast<std::size_t>(cur)]));
      l.stem_states.insert(l.stem_states.begin(), cur);
      cur = prev_state[static_cast<std::size_t>(cur)];
    }
    l.stem_states.insert(l.stem_states.begin(), cur);
    l.cycle.push_back(p.label_name(e.label));
    l.cycle_states.push_back(e.src);
    if (e.dst != e.src) {
      l.cycle_states.push_back(e.dst);
      for (std::size_t i = 0; i < back->first.size(); ++i) {
        l.cycle.push_back(back->first[i]);
        // the final state of the back path is e.src, the cycle start
        if (i + 1 < back->second.size())
          l.cycle_states.push_back(back->second[i]);
      }
    }
    best = std::move(l);
    best_stem = stem_len;
    best_cycle = cyc_len;
  }
  CaVerdict v;
  v.pass = false;
  v.witness = std::move(best);
  return v;
}

}  // namespace ebref
