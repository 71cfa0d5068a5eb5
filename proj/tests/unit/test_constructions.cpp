#include <doctest.h>

#include <algorithm>

#include "cocf/constructions.hpp"
#include "cocf/houghton.hpp"

using namespace cocf;

TEST_CASE("machine classes and validation") {
  const auto& table = higman::default_generator_table();
  const std::vector<std::pair<ConstructionReport, MachineClass>> reports = {
      {build_h2_machine(), MachineClass::SemiDeterministic},
      {build_hou_free_machine(1), MachineClass::SemiDeterministic},
      {build_hou_free_machine(2), MachineClass::SemiDeterministic},
      {build_hn_fixpoint_ocl(3), MachineClass::OneCounter},
      {build_hn_fixpoint_ocl(5), MachineClass::OneCounter},
      {build_hn_coword(3), MachineClass::Grammar},
      {build_gnr_fixset_machine(table), MachineClass::Npda},
  };
  for (const auto& [r, cls] : reports) {
    CAPTURE(r.group);
    CHECK(r.machine_class == cls);
    CHECK(report_problems(r).empty());
    CHECK(format_report(r) == format_report(r));
    CHECK(format_report(r).rfind("# group " + r.group, 0) == 0);
  }
  CHECK(automata::is_one_counter(build_hn_fixpoint_ocl(4).npda()));
  CHECK(to_string(MachineClass::OneCounter) == "one-counter");
}

TEST_CASE("H_2 machine decides small words") {
  const auto r = build_h2_machine();
  auto decide = [&](const char* w) {
    return automata::semidet_accepts_by_preamble(r.semidet(), parse_word(w, r.alphabet));
  };
  CHECK_FALSE(decide(""));
  CHECK(decide("t"));
  CHECK(decide("tau"));
  CHECK_FALSE(decide("tau tau"));
  CHECK_FALSE(decide("t tau t^-1 t tau t^-1"));
  CHECK(decide("t tau t^-1 tau"));
  CHECK_FALSE(decide("t t^-1"));
}

TEST_CASE("one-counter machine tracks the origin") {
  const auto r = build_hn_fixpoint_ocl(3);
  const automata::NpdaRecognizer rec(r.npda());
  CHECK_FALSE(rec.accepts(parse_word("s1 s2", r.alphabet)));
  CHECK(rec.accepts(parse_word("s1", r.alphabet)));
  CHECK(rec.accepts(parse_word("s1 s2 s1^-1 s2^-1", r.alphabet)));
  // Swaps (1,1) and (1,2), fixing the origin.
  const auto w = parse_word("s2 s3 s2^-1 s3^-1 s1 s2 s1^-1 s2^-1 s2 s3 s2^-1 s3^-1", r.alphabet);
  CHECK(houghton::trace_point(w, houghton::RayPoint::origin(), 3).back() == houghton::RayPoint::origin());
  CHECK_FALSE(houghton::is_identity(houghton::word_to_element(w, 3)));
  CHECK_FALSE(rec.accepts(w));
  CHECK(build_hn_coword(3).grammar().terminals.size() == 6);
}

TEST_CASE("G_{2,1} fix-set facts") {
  const auto& table = higman::default_generator_table();
  const auto r = build_gnr_fixset_machine(table);
  CHECK(std::find(r.facts.begin(), r.facts.end(), "k = 3") != r.facts.end());
  CHECK(std::find(r.facts.begin(), r.facts.end(), "|M| = r n^k = 8") != r.facts.end());
  CHECK(gnr_fixset_predicate(parse_word("A", table.alphabet), table));
  CHECK_FALSE(gnr_fixset_predicate(parse_word("D D", table.alphabet), table));
  CHECK_FALSE(gnr_fixset_predicate({}, table));
}
