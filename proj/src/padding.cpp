#include "agentnet/padding.hpp"

#include <cmath>
#include <stdexcept>

namespace agentnet {

std::string binary_of(long id) {
  if (id < 1) throw std::invalid_argument("ids are positive");
  std::string s;
  for (; id > 0; id >>= 1) s.insert(s.begin(), static_cast<char>('0' + (id & 1)));
  return s;
}

long padded_length(int b) { return b + 2L * b * b; }

PaddedId pad_id(const std::string& id_bits) {
  if (id_bits.empty()) throw std::invalid_argument("empty id bit string");
  for (char c : id_bits)
    if (c != '0' && c != '1') throw std::invalid_argument("id bits must be 0 or 1");
  PaddedId p;
  p.original_bits = static_cast<int>(id_bits.size());
  p.bits = id_bits;
  p.bits.reserve(static_cast<std::size_t>(padded_length(p.original_bits)));
  for (long k = 0; k < static_cast<long>(p.original_bits) * p.original_bits; ++k) p.bits += "10";
  return p;
}

void append_block(Schedule& s, char bit, int degree, int block_len) {
  std::size_t start = s.size();
  if (bit == '1')
    for (Port p = 1; p <= degree; ++p) {
      s.push_back({ScheduleStep::Kind::visit, p});
      s.push_back({ScheduleStep::Kind::back, p});
    }
  while (static_cast<int>(s.size() - start) < block_len) s.push_back({});
}

Schedule exploration_schedule(const PaddedId& p, int degree) {
  if (degree < 1) throw std::invalid_argument("degree must be positive");
  Schedule s;
  s.reserve(p.bits.size() * 2 * static_cast<std::size_t>(degree));
  for (char bit : p.bits) append_block(s, bit, degree, 2 * degree);
  return s;
}

int meeting_bits(int n, double c) {
  if (n <= 1) return 0;
  return static_cast<int>(std::ceil(c * std::log2(static_cast<double>(n)) - 1e-9));
}

std::string meeting_bit_string(long id, int n, double c) {
  int len = meeting_bits(n, c);
  std::string raw = binary_of(id);
  if (static_cast<int>(raw.size()) > len)
    throw std::invalid_argument("id " + std::to_string(id) + " does not fit in " + std::to_string(len) + " bits");
  return std::string(static_cast<std::size_t>(len) - raw.size(), '0') + raw;
}

Schedule meeting_schedule(long id, int n, int max_degree, int degree, double c) {
  if (degree > max_degree) throw std::invalid_argument("degree exceeds max degree");
  Schedule s;
  for (char bit : meeting_bit_string(id, n, c)) append_block(s, bit, degree, 2 * max_degree);
  return s;
}

std::optional<long> first_meeting(const Schedule& a, const Schedule& b, Port port_a, Port port_b, long horizon) {
  // location: 0 = home, otherwise the port currently visited
  Port loc_a = 0, loc_b = 0;
  for (long t = 0; t <= horizon; ++t) {
    if ((loc_a == port_a && loc_b == 0) || (loc_b == port_b && loc_a == 0)) return t;
    auto advance = [t](const Schedule& s, Port& loc) {
      if (t >= static_cast<long>(s.size())) return;
      const auto& st = s[static_cast<std::size_t>(t)];
      if (st.kind == ScheduleStep::Kind::visit) loc = st.port;
      if (st.kind == ScheduleStep::Kind::back) loc = 0;
    };
    advance(a, loc_a);
    advance(b, loc_b);
  }
  return std::nullopt;
}

}  // namespace agentnet
