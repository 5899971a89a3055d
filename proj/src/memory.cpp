#include "agentnet/runtime.hpp"

namespace agentnet {

namespace {

long election_bits(const ElectionState& e, const Widths& w) {
  if (e == ElectionState{}) return 0;
  long bits = 4 + 1 + 1;  // mode, origin, at_home
  bits += w.degree * 3;   // home degree, smallest and largest neighbor degree
  bits += w.stamp * 3;    // schedule counter, promotion stamp, verdict stamp
  bits += w.port * 4;     // away, cursor, came_via, confirm port
  bits += 1 + 1 + 1 + 1;  // padded, demote, forward, note_placed
  bits += 3 + 2;          // probe step, verdict
  bits += w.id * 3;       // head, verdict leader, settle pick
  bits += static_cast<long>(e.equal_nbr.size() + e.met.size());
  return bits;
}

long record_bits(const Widths& w) { return 1 + w.stamp + w.id + 2 * w.port; }
long note_bits(const Widths& w) { return w.id + w.stamp + w.port + 1; }

long tree_bits(const TreeInfo& t, const Widths& w) {
  if (t == TreeInfo{}) return 0;
  return 3 * w.id + w.port + static_cast<long>(t.children.size()) * (w.port + w.id);
}

long component_bits(const Component& c, const Widths& w) {
  if (c == Component{}) return 0;
  return w.id + w.port + static_cast<long>(c.children.size()) * w.port + static_cast<long>(c.rejected.size());
}

// Weights are charged a fixed 64 bits.
long courier_bits(const Courier& c, const Widths& w) {
  if (c == Courier{}) return 0;
  return 4 + 12 * w.id + 4 * w.port + 6 + 64;
}

}  // namespace

long memory_bits(const Agent& a, const Widths& w) {
  long bits = w.id + 2 + 1 + 1 + w.port;  // id, status, init_alone, all_edges_visited, arrival port
  bits += election_bits(a.el, w);
  bits += static_cast<long>(a.records.size()) * record_bits(w);
  bits += static_cast<long>(a.notes.size()) * note_bits(w);
  bits += tree_bits(a.tree, w);
  bits += component_bits(a.comp, w);
  bits += courier_bits(a.courier, w);
  if (a.riding) bits += 1;
  if (a.mark != Mark::undecided) bits += 2;
  if (a.dom_count != 0) bits += w.degree;
  return bits;
}

}  // namespace agentnet
