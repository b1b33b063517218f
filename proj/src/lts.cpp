#include "ebref/lts.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ebref {

int Lts::label_id(const std::string& name) const {
  auto it = std::lower_bound(alphabet.begin(), alphabet.end(), name);
  if (it == alphabet.end() || *it != name) return -2;
  return static_cast<int>(it - alphabet.begin());
}

std::string Lts::label_name(int id) const {
  if (id == kHiddenLabel) return "tau";
  return alphabet.at(static_cast<std::size_t>(id));
}

bool Lts::has_hidden() const {
  for (const auto& t : transitions)
    if (t.label == kHiddenLabel) return true;
  return false;
}

void Lts::normalize() {
  std::sort(initials.begin(), initials.end());
  initials.erase(std::unique(initials.begin(), initials.end()), initials.end());
  std::sort(transitions.begin(), transitions.end());
  transitions.erase(std::unique(transitions.begin(), transitions.end()),
                    transitions.end());
  for (const auto& t : transitions) {
    if (t.src < 0 || t.src >= num_states || t.dst < 0 || t.dst >= num_states)
      throw std::logic_error("transition index out of range");
    if (t.label != kHiddenLabel &&
        (t.label < 0 || t.label >= static_cast<int>(alphabet.size())))
      throw std::logic_error("transition label out of range");
  }
  for (int s : initials)
    if (s < 0 || s >= num_states)
      throw std::logic_error("initial state out of range");
}

std::vector<std::vector<std::pair<int, int>>> Lts::out_edges() const {
  std::vector<std::vector<std::pair<int, int>>> adj(
      static_cast<std::size_t>(num_states));
  for (const auto& t : transitions)
    adj[static_cast<std::size_t>(t.src)].emplace_back(t.label, t.dst);
  for (auto& v : adj) std::sort(v.begin(), v.end());
  return adj;
}

std::vector<bool> Lts::reachable() const {
  std::vector<bool> seen(static_cast<std::size_t>(num_states), false);
  std::vector<int> stack;
  for (int s : initials) {
    if (!seen[static_cast<std::size_t>(s)]) {
      seen[static_cast<std::size_t>(s)] = true;
      stack.push_back(s);
    }
  }
  auto adj = out_edges();
  while (!stack.empty()) {
    int s = stack.back();
    stack.pop_back();
    for (auto [lbl, dst] : adj[static_cast<std::size_t>(s)]) {
      (void)lbl;
      if (!seen[static_cast<std::size_t>(dst)]) {
        seen[static_cast<std::size_t>(dst)] = true;
        stack.push_back(dst);
      }
    }
  }
  return seen;
}

std::vector<int> scc_ids(int n, const std::vector<std::vector<int>>& adj) {
  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  std::vector<int> low(static_cast<std::size_t>(n), 0);
  std::vector<int> num(static_cast<std::size_t>(n), -1);
  std::vector<int> stack;
  std::vector<bool> on_stack(static_cast<std::size_t>(n), false);
  int counter = 0, comps = 0;

  struct Frame {
    int v;
    std::size_t edge;
  };
  for (int root = 0; root < n; ++root) {
    if (num[static_cast<std::size_t>(root)] != -1) continue;
    std::vector<Frame> call{{root, 0}};
    num[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] =
        counter++;
    stack.push_back(root);
    on_stack[static_cast<std::size_t>(root)] = true;
    while (!call.empty()) {
      Frame& f = call.back();
      const auto& edges = adj[static_cast<std::size_t>(f.v)];
      if (f.edge < edges.size()) {
        int w = edges[f.edge++];
        if (num[static_cast<std::size_t>(w)] == -1) {
          num[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] =
              counter++;
          stack.push_back(w);
          on_stack[static_cast<std::size_t>(w)] = true;
          call.push_back({w, 0});
        } else if (on_stack[static_cast<std::size_t>(w)]) {
          low[static_cast<std::size_t>(f.v)] =
              std::min(low[static_cast<std::size_t>(f.v)],
                       num[static_cast<std::size_t>(w)]);
        }
      } else {
        int v = f.v;
        call.pop_back();
        if (!call.empty())
          low[static_cast<std::size_t>(call.back().v)] =
              std::min(low[static_cast<std::size_t>(call.back().v)],
                       low[static_cast<std::size_t>(v)]);
        if (low[static_cast<std::size_t>(v)] ==
            num[static_cast<std::size_t>(v)]) {
          for (;;) {
            int w = stack.back();
            stack.pop_back();
            on_stack[static_cast<std::size_t>(w)] = false;
            comp[static_cast<std::size_t>(w)] = comps;
            if (w == v) break;
          }
          ++comps;
        }
      }
    }
  }
  return comp;
}

std::set<std::string> enabled(const Lts& lts, int state) {
  if (state < 0 || state >= lts.num_states)
    throw std::out_of_range("state index out of range");
  std::set<std::string> out;
  for (const auto& t : lts.transitions)
    if (t.src == state) out.insert(lts.label_name(t.label));
  return out;
}

std::string dump_lts(const Lts& lts) {
  std::ostringstream os;
  os << "initials:";
  for (int s : lts.initials) os << " " << s;
  os << "\n";
  for (int i = 0; i < lts.num_states; ++i) {
    os << i << ":";
    if (!lts.state_names.empty())
      os << " " << lts.state_names[static_cast<std::size_t>(i)];
    os << "\n";
  }
  for (const auto& t : lts.transitions)
    os << t.src << " " << lts.label_name(t.label) << " " << t.dst << "\n";
  return os.str();
}

}  // namespace ebref
