#include <doctest.h>

#include "agentnet/padding.hpp"

using namespace agentnet;

namespace {

int count_blocks(const Schedule& s, int block_len, ScheduleStep::Kind first) {
  int n = 0;
  for (std::size_t i = 0; i < s.size(); i += static_cast<std::size_t>(block_len)) n += s[i].kind == first;
  return n;
}

}  // namespace

TEST_CASE("padding appends ten-pairs") {
  CHECK(pad_id("1").bits == "110");
  CHECK(pad_id("101").bits == "101" + std::string("101010101010101010"));
  CHECK(pad_id("101").bits.size() == 21);
  CHECK(pad_id("101").original_bits == 3);
  CHECK(padded_length(2) == 10);
  CHECK(padded_length(3) == 21);
  CHECK_THROWS_AS(pad_id(""), std::invalid_argument);
  CHECK_THROWS_AS(pad_id("012"), std::invalid_argument);
}

TEST_CASE("padded lengths and gaps for every bit length up to 64") {
  for (int b = 1; b <= 64; ++b) {
    const std::string bits = "1" + std::string(static_cast<std::size_t>(b - 1), '0');
    CHECK(static_cast<long>(pad_id(bits).bits.size()) == b + 2L * b * b);
    for (int d = 1; d < b; ++d) CHECK(padded_length(b) - padded_length(d) >= 7);
  }
}

TEST_CASE("binary encoding is minimal") {
  CHECK(binary_of(1) == "1");
  CHECK(binary_of(6) == "110");
  CHECK_THROWS_AS(binary_of(0), std::invalid_argument);
}

TEST_CASE("exploration schedule shape") {
  Schedule s = exploration_schedule(pad_id("1"), 2);
  CHECK(s.size() == 12);
  CHECK(count_blocks(s, 4, ScheduleStep::Kind::visit) == 2);
  // sweep, sweep, stay
  CHECK(s[0] == ScheduleStep{ScheduleStep::Kind::visit, 1});
  CHECK(s[1].kind == ScheduleStep::Kind::back);
  CHECK(s[2] == ScheduleStep{ScheduleStep::Kind::visit, 2});
  for (int i = 8; i < 12; ++i) CHECK(s[i].kind == ScheduleStep::Kind::stay);
  for (int deg = 1; deg <= 4; ++deg) CHECK(exploration_schedule(pad_id("10"), deg).size() == 2u * deg * 10);
  CHECK_THROWS_AS(exploration_schedule(pad_id("1"), 0), std::invalid_argument);
}

TEST_CASE("meeting schedule pads ids on the left") {
  CHECK(meeting_bit_string(1, 4, 1.0) == "01");
  const int max_degree = 3;
  Schedule s = meeting_schedule(1, 4, max_degree, 2, 1.0);
  CHECK(s.size() == 4u * max_degree);
  for (int i = 0; i < 2 * max_degree; ++i) CHECK(s[i].kind == ScheduleStep::Kind::stay);
  CHECK(s[6] == ScheduleStep{ScheduleStep::Kind::visit, 1});
  // A sweep shorter than the block pads with stays.
  CHECK(s[10].kind == ScheduleStep::Kind::stay);
  CHECK(meeting_bits(32, 2.0) == 10);
  CHECK(meeting_bits(5, 2.0) == 5);
  CHECK_THROWS_AS(meeting_bit_string(16, 4, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(meeting_schedule(1, 4, 2, 3), std::invalid_argument);
}

TEST_CASE("ids five and six meet within the padded bound") {
  for (int deg = 1; deg <= 4; ++deg)
    for (Port pa = 1; pa <= deg; ++pa)
      for (Port pb = 1; pb <= deg; ++pb) {
        Schedule a = exploration_schedule(pad_id(binary_of(5)), deg);
        Schedule b = exploration_schedule(pad_id(binary_of(6)), deg);
        auto t = first_meeting(a, b, pa, pb, 2L * deg * padded_length(3));
        CHECK(t.has_value());
      }
}

TEST_CASE("distinct equal-length meeting ids always meet within one schedule") {
  const int n = 8, max_degree = 3;
  for (long x = 1; x < 64; ++x)
    for (long y = x + 1; y < 64; ++y)
      for (Port pa = 1; pa <= max_degree; ++pa) {
        Schedule a = meeting_schedule(x, n, max_degree, max_degree);
        Schedule b = meeting_schedule(y, n, max_degree, max_degree);
        CHECK(first_meeting(a, b, pa, 1, static_cast<long>(a.size())).has_value());
      }
}
