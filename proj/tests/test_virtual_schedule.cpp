#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "ccsched/oracle.hpp"
#include "ccsched/virtual_schedule.hpp"

using namespace ccsched;

namespace {

// Independent completeness count over the virtual schedule: the oracle's
// notion of "everything delivered exactly once per subpacket slot".
void check_virtual_cover(const std::vector<Transmission>& schedule, int p, int tbar, int abar) {
  std::map<std::pair<int, int>, std::multiset<int>> seen;  // (user, packet) -> q
  for (const auto& tx : schedule)
    for (const auto& t : tx.terms) seen[{t.recipient, t.packet}].insert(t.subpacket);
  for (int user = 1; user <= p; ++user)
    for (int packet = 1; packet <= p; ++packet) {
      const auto it = seen.find({user, packet});
      if (profile_caches(user, packet, p, tbar)) {
        CHECK(it == seen.end());
        continue;
      }
      REQUIRE(it != seen.end());
      std::multiset<int> want;
      for (int q = 1; q <= tbar + abar; ++q) want.insert(q);
      CHECK(it->second == want);
    }
}

oracle::OracleContext virtual_context(int p, int tbar, int abar) {
  oracle::OracleContext ctx;
  ctx.placement = build_placement_matrix(p, tbar);
  for (int u = 1; u <= p; ++u) {
    ctx.profile_of[u] = u;
    ctx.requesting.push_back(u);
  }
  ctx.per_packet_count = tbar + abar;
  return ctx;
}

}  // namespace

TEST_CASE("virtual config arithmetic") {
  const auto a = make_virtual_config(4, 2, 4, 1);
  CHECK(a.virtual_dof == 2);
  CHECK(a.remainder == 0);

  const auto b = make_virtual_config(4, 3, 4, 1);
  CHECK(b.virtual_dof == 2);
  CHECK(b.remainder == 1);

  const auto c = make_virtual_config(10, 5, 10, 1);
  CHECK(c.virtual_dof == 2);
  CHECK(c.remainder == 0);

  // Virtual DoF below the caching gain is out of scope.
  CHECK_THROWS_AS(make_virtual_config(2, 2, 3, 2), UnsupportedRegimeError);
}

TEST_CASE("round 1 of the 4-user virtual network") {
  const auto schedule = generate_virtual_schedule(make_virtual_config(4, 2, 4, 1));
  REQUIRE(schedule.size() == 12);  // P(P - tbar)

  struct Expect {
    std::vector<user_id> users;
    std::vector<int> packets;
    std::vector<int> subpackets;
    std::vector<std::vector<user_id>> nulling;
  };
  const std::vector<Expect> round1 = {
      {{1, 2, 3}, {2, 1, 1}, {1, 1, 1}, {{3}, {3}, {2}}},
      {{1, 3, 4}, {3, 1, 1}, {1, 2, 1}, {{4}, {4}, {3}}},
      {{1, 4, 2}, {4, 1, 1}, {1, 2, 2}, {{2}, {2}, {4}}},
  };
  for (int j = 0; j < 3; ++j) {
    const auto& tx = schedule[j];
    CHECK(tx.round == 1);
    CHECK(tx.index == j + 1);
    REQUIRE(tx.terms.size() == 3);
    for (int n = 0; n < 3; ++n) {
      CHECK(tx.terms[n].recipient == round1[j].users[n]);
      CHECK(tx.terms[n].packet == round1[j].packets[n]);
      CHECK(tx.terms[n].subpacket == round1[j].subpackets[n]);
      CHECK(tx.terms[n].nulling == round1[j].nulling[n]);
    }
  }
}

TEST_CASE("schedule shape and completeness") {
  for (const auto& [p, tbar, alpha, eta_hat] :
       std::vector<std::tuple<int, int, int, int>>{
           {4, 1, 4, 2}, {4, 1, 4, 3}, {10, 1, 10, 5}, {5, 1, 3, 1}, {7, 1, 6, 2}}) {
    const auto cfg = make_virtual_config(alpha, eta_hat, p, tbar);
    const auto schedule = generate_virtual_schedule(cfg);
    CHECK(static_cast<int>(schedule.size()) == p * (p - tbar));
    for (const auto& tx : schedule) {
      CHECK(static_cast<int>(tx.terms.size()) == tbar + cfg.virtual_dof);
      for (const auto& t : tx.terms)
        CHECK(static_cast<int>(t.nulling.size()) == cfg.virtual_dof - 1);
    }
    check_virtual_cover(schedule, p, tbar, cfg.virtual_dof);
  }
}

TEST_CASE("two-user network with virtual DoF one") {
  const auto cfg = make_virtual_config(1, 1, 2, 1);
  const auto schedule = generate_virtual_schedule(cfg);
  REQUIRE(schedule.size() == 2);
  for (const auto& tx : schedule) {
    CHECK(tx.terms.size() == 2);
    for (const auto& t : tx.terms) CHECK(t.nulling.empty());
  }
  // Decodability and completeness confirmed by the independent oracle.
  const auto parsed = oracle::parse_schedule_dump(dump_schedule(schedule));
  const auto ctx = virtual_context(2, 1, 1);
  CHECK(oracle::verify_decodability(parsed, ctx).decodable);
  CHECK(oracle::verify_completeness(parsed, ctx).complete);
}

TEST_CASE("rounds are rotations of round one") {
  const int p = 6, tbar = 1, abar = 3;
  const auto schedule = generate_virtual_schedule(make_virtual_config(3, 1, p, tbar));
  REQUIRE(static_cast<int>(schedule.size()) == p * (p - tbar));
  const int per_round = p - tbar;
  for (int r = 2; r <= p; ++r)
    for (int j = 1; j <= per_round; ++j) {
      const auto& base = schedule[j - 1];
      const auto& rot = schedule[(r - 1) * per_round + (j - 1)];
      REQUIRE(rot.terms.size() == base.terms.size());
      for (std::size_t n = 0; n < base.terms.size(); ++n) {
        CHECK(rot.terms[n].recipient == wrap_index(base.terms[n].recipient + r - 1, p));
        CHECK(rot.terms[n].packet == wrap_index(base.terms[n].packet + r - 1, p));
        std::vector<user_id> shifted;
        for (user_id u : base.terms[n].nulling)
          shifted.push_back(wrap_index(static_cast<int>(u) + r - 1, p));
        canonicalize(shifted);
        CHECK(rot.terms[n].nulling == shifted);
      }
    }
  (void)abar;
}

TEST_CASE("caching gain above one passes the oracle") {
  for (const auto& [p, tbar, abar] : std::vector<std::tuple<int, int, int>>{
           {4, 2, 2}, {6, 2, 2}, {6, 2, 3}, {6, 2, 4}, {8, 3, 3}, {8, 3, 5}, {9, 2, 6}}) {
    // eta_hat = 1 makes the virtual DoF equal alpha directly.
    const auto cfg = make_virtual_config(abar, 1, p, tbar);
    const auto schedule = generate_virtual_schedule(cfg);
    CHECK(static_cast<int>(schedule.size()) == p * (p - tbar));
    const auto parsed = oracle::parse_schedule_dump(dump_schedule(schedule));
    const auto ctx = virtual_context(p, tbar, abar);
    CHECK(oracle::verify_decodability(parsed, ctx).decodable);
    CHECK(oracle::verify_completeness(parsed, ctx).complete);
    check_virtual_cover(schedule, p, tbar, abar);
  }
}

TEST_CASE("interference_set") {
  const auto placement = build_placement_matrix(4, 1);
  CHECK(interference_set({1, 2, 3}, 2, 1, placement) == std::vector<user_id>{3});
  CHECK(interference_set({1, 2, 3}, 1, 2, placement) == std::vector<user_id>{3});
  const auto p2 = build_placement_matrix(2, 1);
  CHECK(interference_set({1, 2}, 1, 2, p2).empty());
  // Intended user caching the packet breaks the contract.
  CHECK_THROWS_AS(interference_set({1, 2, 3}, 1, 1, placement), ContractViolation);
  CHECK_THROWS_AS(interference_set({2, 3}, 1, 2, placement), ContractViolation);
}

TEST_CASE("oversubscribed virtual window is rejected") {
  CHECK_THROWS_AS(generate_virtual_schedule(make_virtual_config(10, 1, 4, 1)), ConfigError);
}
