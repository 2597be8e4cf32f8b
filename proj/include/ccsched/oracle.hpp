#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ccsched/errors.hpp"
#include "ccsched/placement.hpp"
#include "ccsched/profiles.hpp"
#include "ccsched/schedule.hpp"

// Independent brute-force checker. It consumes only the serialized schedule
// dump plus placement and roster data, deliberately sharing no construction
// code with the schedule generators, so a generator bug cannot vouch for
// itself.

namespace ccsched::oracle {

struct ParsedTerm {
  user_id recipient = 0;
  int packet = 0;
  int subpacket = 0;
  std::vector<user_id> nulling;
};

struct ParsedTransmission {
  char phase = '?';  // 'V', 'C', 'U'
  int round = 0;
  int index = 0;
  int shift = 0;
  int line_no = 0;
  std::vector<ParsedTerm> terms;
};

namespace detail {

inline user_id parse_user(std::string_view tok, int line_no) {
  try {
    if (!tok.empty() && tok.front() == '~')
      return phantom_id(std::stoi(std::string(tok.substr(1))));
    return static_cast<user_id>(std::stoi(std::string(tok)));
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line_no) + ": bad user token '" +
                     std::string(tok) + "'");
  }
}

inline int parse_int(std::string_view tok, int line_no, const char* what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(std::string(tok), &used);
    if (used != tok.size()) throw ParseError("");
    return v;
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line_no) + ": bad " + what + " '" +
                     std::string(tok) + "'");
  }
}

}  // namespace detail

inline std::vector<ParsedTransmission> parse_schedule_dump(const std::string& text) {
  std::vector<ParsedTransmission> out;
  std::istringstream stream(text);
  std::string line;
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto bar = line.find('|');
    if (bar == std::string::npos)
      throw ParseError("line " + std::to_string(line_no) + ": missing '|'");

    ParsedTransmission tx;
    tx.line_no = line_no;
    {
      std::istringstream head(line.substr(0, bar));
      std::string phase;
      head >> phase;
      if (phase != "V" && phase != "C" && phase != "U")
        throw ParseError("line " + std::to_string(line_no) + ": unknown phase '" + phase + "'");
      tx.phase = phase[0];
      std::vector<int> nums;
      std::string tok;
      while (head >> tok) nums.push_back(detail::parse_int(tok, line_no, "header field"));
      if (tx.phase == 'U') {
        if (nums.size() != 1) throw ParseError("line " + std::to_string(line_no) + ": bad header");
        tx.round = nums[0];
      } else if (nums.size() == 2) {
        tx.round = nums[0];
        tx.index = nums[1];
      } else if (nums.size() == 3 && tx.phase == 'C') {
        tx.round = nums[0];
        tx.index = nums[1];
        tx.shift = nums[2];
      } else {
        throw ParseError("line " + std::to_string(line_no) + ": bad header");
      }
    }

    std::string body = line.substr(bar + 1);
    std::size_t pos = 0;
    while (true) {
      const auto open = body.find('(', pos);
      if (open == std::string::npos) break;
      const auto brace_open = body.find('{', open);
      const auto brace_close = body.find('}', brace_open);
      const auto close = body.find(')', brace_close);
      if (brace_open == std::string::npos || brace_close == std::string::npos ||
          close == std::string::npos)
        throw ParseError("line " + std::to_string(line_no) + ": malformed term");

      ParsedTerm term;
      {
        std::string fields = body.substr(open + 1, brace_open - open - 2);  // user,packet,q,
        std::vector<std::string> parts;
        std::string cur;
        for (char c : fields) {
          if (c == ',') {
            parts.push_back(cur);
            cur.clear();
          } else {
            cur += c;
          }
        }
        if (!cur.empty()) parts.push_back(cur);
        if (parts.size() != 3)
          throw ParseError("line " + std::to_string(line_no) + ": term needs user,packet,q");
        term.recipient = detail::parse_user(parts[0], line_no);
        term.packet = detail::parse_int(parts[1], line_no, "packet");
        term.subpacket = detail::parse_int(parts[2], line_no, "subpacket");
      }
      {
        std::string members = body.substr(brace_open + 1, brace_close - brace_open - 1);
        std::string cur;
        for (char c : members) {
          if (c == ',') {
            term.nulling.push_back(detail::parse_user(cur, line_no));
            cur.clear();
          } else if (c != ' ') {
            cur += c;
          }
        }
        if (!cur.empty()) term.nulling.push_back(detail::parse_user(cur, line_no));
      }
      tx.terms.push_back(std::move(term));
      pos = close + 1;
    }
    out.push_back(std::move(tx));
  }
  return out;
}

// Everything the checks need to know about the network, assembled by the
// caller from config data, never from generator internals.
struct OracleContext {
  PlacementMatrix placement;
  std::map<user_id, int> profile_of;   // real and phantom members
  std::vector<user_id> requesting;     // users owed a complete file
  int per_packet_count = 0;            // subpackets per packet
};

struct DecodabilityViolation {
  int line_no = 0;
  user_id observer = 0;
  user_id term_recipient = 0;
  int packet = 0;
  std::string reason;
};

struct CompletenessViolation {
  user_id user = 0;
  int packet = 0;
  std::vector<int> missing;
  std::vector<int> duplicated;
};

struct VerificationReport {
  bool decodable = true;
  bool complete = true;
  std::vector<DecodabilityViolation> decodability_violations;
  std::vector<CompletenessViolation> completeness_violations;
  std::map<int, int> dof_histogram;          // real terms per transmission -> count
  std::map<user_id, int> subpacket_totals;   // delivered terms per real user

  bool ok() const { return decodable && complete; }

  std::string summary() const {
    std::ostringstream os;
    os << (decodable ? "decodable" : "NOT decodable") << ", "
       << (complete ? "complete" : "NOT complete") << "; "
       << decodability_violations.size() << " decodability violation(s), "
       << completeness_violations.size() << " completeness violation(s)\n";
    for (const auto& v : decodability_violations) {
      os << "  line " << v.line_no << ": user " << format_user(v.observer)
         << " cannot remove term for " << format_user(v.term_recipient) << " packet " << v.packet
         << " (" << v.reason << ")\n";
    }
    for (const auto& v : completeness_violations) {
      os << "  user " << format_user(v.user) << " packet " << v.packet << ":";
      if (!v.missing.empty()) {
        os << " missing q =";
        for (int q : v.missing) os << ' ' << q;
      }
      if (!v.duplicated.empty()) {
        os << " duplicated q =";
        for (int q : v.duplicated) os << ' ' << q;
      }
      os << '\n';
    }
    os << "  DoF histogram:";
    for (const auto& [dof, n] : dof_histogram) os << ' ' << dof << 'x' << n;
    os << '\n';
    return os.str();
  }
};

// Every served user must be able to account for every term in the vector:
// the term is its own, its cache holds the packet, or the beam nulls it.
inline VerificationReport verify_decodability(const std::vector<ParsedTransmission>& schedule,
                                              const OracleContext& ctx) {
  VerificationReport report;
  for (const auto& tx : schedule) {
    report.dof_histogram[static_cast<int>(
        std::count_if(tx.terms.begin(), tx.terms.end(),
                      [](const ParsedTerm& t) { return !is_phantom(t.recipient); }))]++;
    for (const auto& observer_term : tx.terms) {
      const user_id observer = observer_term.recipient;
      const auto prof_it = ctx.profile_of.find(observer);
      for (const auto& term : tx.terms) {
        if (term.recipient == observer) continue;
        const bool cached =
            prof_it != ctx.profile_of.end() &&
            profile_caches(prof_it->second, term.packet, ctx.placement.dimension,
                           ctx.placement.window);
        const bool nulled = std::find(term.nulling.begin(), term.nulling.end(), observer) !=
                            term.nulling.end();
        if (!cached && !nulled) {
          report.decodable = false;
          report.decodability_violations.push_back(
              {tx.line_no, observer, term.recipient, term.packet,
               prof_it == ctx.profile_of.end() ? "observer has no profile"
                                               : "neither cached nor nulled"});
        }
      }
    }
  }
  return report;
}

// Each requesting user must receive q = 1..per_packet_count exactly once for
// every packet its profile does not cache.
inline VerificationReport verify_completeness(const std::vector<ParsedTransmission>& schedule,
                                              const OracleContext& ctx) {
  VerificationReport report;
  std::map<std::pair<user_id, int>, std::multiset<int>> delivered;
  for (const auto& tx : schedule)
    for (const auto& term : tx.terms) {
      if (is_phantom(term.recipient)) continue;
      delivered[{term.recipient, term.packet}].insert(term.subpacket);
      report.subpacket_totals[term.recipient]++;
    }

  const int p = ctx.placement.dimension;
  const int tbar = ctx.placement.window;
  for (user_id user : ctx.requesting) {
    const auto prof_it = ctx.profile_of.find(user);
    if (prof_it == ctx.profile_of.end()) {
      report.complete = false;
      report.completeness_violations.push_back({user, 0, {}, {}});
      continue;
    }
    for (int packet = 1; packet <= p; ++packet) {
      if (profile_caches(prof_it->second, packet, p, tbar)) continue;
      CompletenessViolation v{user, packet, {}, {}};
      const auto it = delivered.find({user, packet});
      for (int q = 1; q <= ctx.per_packet_count; ++q) {
        const int got = it == delivered.end() ? 0 : static_cast<int>(it->second.count(q));
        if (got == 0) v.missing.push_back(q);
        if (got > 1) v.duplicated.push_back(q);
      }
      if (it != delivered.end())
        for (int q : it->second)
          if (q < 1 || q > ctx.per_packet_count) v.duplicated.push_back(q);
      if (!v.missing.empty() || !v.duplicated.empty()) {
        report.complete = false;
        report.completeness_violations.push_back(std::move(v));
      }
    }
  }
  return report;
}

inline std::map<int, int> dof_profile(const std::vector<ParsedTransmission>& schedule) {
  std::map<int, int> hist;
  for (const auto& tx : schedule)
    hist[static_cast<int>(std::count_if(
        tx.terms.begin(), tx.terms.end(),
        [](const ParsedTerm& t) { return !is_phantom(t.recipient); }))]++;
  return hist;
}

// Combined decodability + completeness pass over one dump.
inline VerificationReport verify_all(const std::string& dump_text, const OracleContext& ctx) {
  const auto schedule = parse_schedule_dump(dump_text);
  VerificationReport report = verify_decodability(schedule, ctx);
  VerificationReport completeness = verify_completeness(schedule, ctx);
  report.complete = completeness.complete;
  report.completeness_violations = std::move(completeness.completeness_violations);
  report.subpacket_totals = std::move(completeness.subpacket_totals);
  return report;
}

}  // namespace ccsched::oracle
