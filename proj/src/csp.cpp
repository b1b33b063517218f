#include "ebref/csp.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace ebref {
namespace {

std::string join(const Trace& tr) {
  std::string out;
  for (std::size_t i = 0; i < tr.size(); ++i) {
    if (i) out += ",";
    out += tr[i];
  }
  return out;
}

}  // namespace

std::set<std::string> image(const EventMap& f, const std::set<std::string>& a) {
  std::set<std::string> out;
  for (const auto& x : a) {
    auto it = f.find(x);
    if (it != f.end()) out.insert(it->second);
  }
  return out;
}

std::set<std::string> preimage(const EventMap& f,
                               const std::set<std::string>& a) {
  std::set<std::string> out;
  for (const auto& [src, dst] : f)
    if (a.count(dst)) out.insert(src);
  return out;
}

EventMap restrict_into(const EventMap& f, const std::set<std::string>& targets) {
  EventMap out;
  for (const auto& [src, dst] : f)
    if (targets.count(dst)) out.emplace(src, dst);
  return out;
}

std::string Lasso::render() const {
  return "<" + join(stem) + "> / (<" + join(cycle) + ">)\xCF\x89";
}

Lts hide(const Lts& p, const std::set<std::string>& n) {
  for (const auto& x : n)
    if (p.label_id(x) < 0)
      throw std::invalid_argument("hide: label '" + x + "' not in alphabet");
  Lts out;
  out.num_states = p.num_states;
  out.initials = p.initials;
  out.state_names = p.state_names;
  std::vector<int> remap(p.alphabet.size(), kHiddenLabel);
  for (std::size_t i = 0; i < p.alphabet.size(); ++i) {
    if (n.count(p.alphabet[i])) continue;
    out.alphabet.push_back(p.alphabet[i]);
    remap[i] = static_cast<int>(out.alphabet.size()) - 1;
  }
  for (const auto& t : p.transitions) {
    int lbl = t.label == kHiddenLabel ? kHiddenLabel
                                      : remap[static_cast<std::size_t>(t.label)];
    out.transitions.push_back({t.src, lbl, t.dst});
  }
  out.normalize();
  return out;
}

Lts rename_forward(const Lts& p, const EventMap& f) {
  std::vector<std::string> mapped(p.alphabet.size());
  for (std::size_t i = 0; i < p.alphabet.size(); ++i) {
    auto it = f.find(p.alphabet[i]);
    if (it == f.end())
      throw std::invalid_argument("rename_forward: no image for '" +
                                  p.alphabet[i] + "'");
    mapped[i] = it->second;
  }
  Lts out;
  out.num_states = p.num_states;
  out.initials = p.initials;
  out.state_names = p.state_names;
  out.alphabet = mapped;
  std::sort(out.alphabet.begin(), out.alphabet.end());
  out.alphabet.erase(std::unique(out.alphabet.begin(), out.alphabet.end()),
                     out.alphabet.end());
  for (const auto& t : p.transitions) {
    int lbl = t.label == kHiddenLabel
                  ? kHiddenLabel
                  : out.label_id(mapped[static_cast<std::size_t>(t.label)]);
    out.transitions.push_back({t.src, lbl, t.dst});
  }
  out.normalize();
  return out;
}

Lts rename_inverse(const Lts& p, const EventMap& f) {
  std::set<std::string> covered;
  for (const auto& [src, dst] : f) {
    if (p.label_id(dst) < 0)
      throw std::invalid_argument("rename_inverse: '" + src +
                                  "' maps outside the alphabet ('" + dst + "')");
    covered.insert(dst);
  }
  for (const auto& a : p.alphabet)
    if (!covered.count(a))
      throw std::invalid_argument("rename_inverse: label '" + a +
                                  "' has empty preimage");
  Lts out;
  out.num_states = p.num_states;
  out.initials = p.initials;
  out.state_names = p.state_names;
  for (const auto& [src, dst] : f) out.alphabet.push_back(src);
  std::sort(out.alphabet.begin(), out.alphabet.end());
  out.alphabet.erase(std::unique(out.alphabet.begin(), out.alphabet.end()),
                     out.alphabet.end());
  for (const auto& t : p.transitions) {
    if (t.label == kHiddenLabel) {
      out.transitions.push_back({t.src, kHiddenLabel, t.dst});
      continue;
    }
    const std::string& a = p.alphabet[static_cast<std::size_t>(t.label)];
    for (const auto& [src, dst] : f)
      if (dst == a)
        out.transitions.push_back({t.src, out.label_id(src), t.dst});
  }
  out.normalize();
  return out;
}

Lts interleave_run(const Lts& p, const std::set<std::string>& n) {
  for (const auto& x : n)
    if (p.label_id(x) >= 0)
      throw std::invalid_argument("interleave_run: label '" + x +
                                  "' already in alphabet");
  Lts out;
  out.num_states = p.num_states;
  out.initials = p.initials;
  out.state_names = p.state_names;
  out.alphabet = p.alphabet;
  out.alphabet.insert(out.alphabet.end(), n.begin(), n.end());
  std::sort(out.alphabet.begin(), out.alphabet.end());
  for (const auto& t : p.transitions) {
    int lbl = t.label == kHiddenLabel
                  ? kHiddenLabel
                  : out.label_id(p.alphabet[static_cast<std::size_t>(t.label)]);
    out.transitions.push_back({t.src, lbl, t.dst});
  }
  for (const auto& x : n) {
    int lbl = out.label_id(x);
    for (int s = 0; s < out.num_states; ++s)
      out.transitions.push_back({s, lbl, s});
  }
  out.normalize();
  return out;
}

Trace project(const Trace& tr, const std::set<std::string>& a) {
  Trace out;
  for (const auto& x : tr)
    if (a.count(x)) out.push_back(x);
  return out;
}

Trace hide_trace(const Trace& tr, const std::set<std::string>& a) {
  Trace out;
  for (const auto& x : tr)
    if (!a.count(x)) out.push_back(x);
  return out;
}

Word project(const Lasso& l, const std::set<std::string>& a) {
  Word w;
  w.stem = project(l.stem, a);
  w.cycle = project(l.cycle, a);
  return w;
}

Word hide_trace(const Lasso& l, const std::set<std::string>& a) {
  Word w;
  w.stem = hide_trace(l.stem, a);
  w.cycle = hide_trace(l.cycle, a);
  return w;
}

std::optional<std::size_t> length(const Word& w) {
  if (!w.finite()) return std::nullopt;
  return w.stem.size();
}

CycleVerdict divergence_free_after_hide(const Lts& p,
                                        const std::set<std::string>& n) {
  auto reach = p.reachable();
  // subgraph of n-labelled edges among reachable states
  std::vector<std::vector<int>> sub(static_cast<std::size_t>(p.num_states));
  std::vector<Transition> sub_edges;
  for (const auto& t : p.transitions) {
    if (t.label == kHiddenLabel) continue;
    if (!n.count(p.alphabet[static_cast<std::size_t>(t.label)])) continue;
    if (!reach[static_cast<std::size_t>(t.src)]) continue;
    sub[static_cast<std::size_t>(t.src)].push_back(t.dst);
    sub_edges.push_back(t);
  }
  auto comp = scc_ids(p.num_states, sub);
  std::set<int> bad_comps;
  for (const auto& t : sub_edges)
    if (comp[static_cast<std::size_t>(t.src)] ==
        comp[static_cast<std::size_t>(t.dst)])
      bad_comps.insert(comp[static_cast<std::size_t>(t.src)]);
  if (bad_comps.empty()) return {};
  std::vector<bool> in_cycle_comp(static_cast<std::size_t>(p.num_states), false);
  for (int s = 0; s < p.num_states; ++s)
    if (reach[static_cast<std::size_t>(s)] &&
        bad_comps.count(comp[static_cast<std::size_t>(s)]))
      in_cycle_comp[static_cast<std::size_t>(s)] = true;

  // shortest stem over all edges, expanding in label order
  auto adj = p.out_edges();
  std::vector<int> prev_state(static_cast<std::size_t>(p.num_states), -1);
  std::vector<int> prev_label(static_cast<std::size_t>(p.num_states), -2);
  std::vector<bool> seen(static_cast<std::size_t>(p.num_states), false);
  std::deque<int> queue;
  int target = -1;
  for (int s : p.initials) {
    if (seen[static_cast<std::size_t>(s)]) continue;
    seen[static_cast<std::size_t>(s)] = true;
    queue.push_back(s);
  }
  while (!queue.empty() && target == -1) {
    int s = queue.front();
    queue.pop_front();
    if (in_cycle_comp[static_cast<std::size_t>(s)]) {
      target = s;
      break;
    }
    for (auto [lbl, dst] : adj[static_cast<std::size_t>(s)]) {
      if (seen[static_cast<std::size_t>(dst)]) continue;
      seen[static_cast<std::size_t>(dst)] = true;
      prev_state[static_cast<std::size_t>(dst)] = s;
      prev_label[static_cast<std::size_t>(dst)] = lbl;
      if (in_cycle_comp[static_cast<std::size_t>(dst)] && target == -1) {
        // keep scanning this BFS layer in order; first hit is lex-least
        target = dst;
        break;
      }
      queue.push_back(dst);
    }
  }

  Lasso lasso;
  int cur = target;
  while (prev_label[static_cast<std::size_t>(cur)] != -2) {
    lasso.stem.insert(lasso.stem.begin(),
                      p.label_name(prev_label[static_cast<std::size_t>(cur)]));
    lasso.stem_states.insert(lasso.stem_states.begin(), cur);
    cur = prev_state[static_cast<std::size_t>(cur)];
  }
  lasso.stem_states.insert(lasso.stem_states.begin(), cur);

  // shortest n-cycle from target within its component
  int tc = comp[static_cast<std::size_t>(target)];
  std::vector<std::vector<std::pair<int, int>>> nadj(
      static_cast<std::size_t>(p.num_states));
  for (const auto& t : sub_edges)
    if (comp[static_cast<std::size_t>(t.src)] == tc &&
        comp[static_cast<std::size_t>(t.dst)] == tc)
      nadj[static_cast<std::size_t>(t.src)].emplace_back(t.label, t.dst);
  for (auto& v : nadj) std::sort(v.begin(), v.end());
  std::vector<int> cprev_state(static_cast<std::size_t>(p.num_states), -1);
  std::vector<int> cprev_label(static_cast<std::size_t>(p.num_states), -2);
  std::vector<bool> cseen(static_cast<std::size_t>(p.num_states), false);
  std::deque<int> cqueue{target};
  int back = -1;  // state with an edge closing the cycle at target
  int back_label = -2;
  while (!cqueue.empty() && back == -1) {
    int s = cqueue.front();
    cqueue.pop_front();
    for (auto [lbl, dst] : nadj[static_cast<std::size_t>(s)]) {
      if (dst == target) {
        back = s;
        back_label = lbl;
        break;
      }
      if (cseen[static_cast<std::size_t>(dst)]) continue;
      cseen[static_cast<std::size_t>(dst)] = true;
      cprev_state[static_cast<std::size_t>(dst)] = s;
      cprev_label[static_cast<std::size_t>(dst)] = lbl;
      cqueue.push_back(dst);
    }
  }
  lasso.cycle.push_back(p.label_name(back_label));
  std::vector<int> rev_states;
  cur = back;
  while (cur != target && cprev_label[static_cast<std::size_t>(cur)] != -2) {
    lasso.cycle.insert(lasso.cycle.begin(),
                       p.label_name(cprev_label[static_cast<std::size_t>(cur)]));
    rev_states.insert(rev_states.begin(), cur);
    cur = cprev_state[static_cast<std::size_t>(cur)];
  }
  lasso.cycle_states.push_back(target);
  for (int s : rev_states) lasso.cycle_states.push_back(s);

  return {false, std::move(lasso)};
}

}  // namespace ebref
