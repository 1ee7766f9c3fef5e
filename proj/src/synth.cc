// Copyright 2026 The Disambig Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "disambig/synth.h"

#include <array>
#include <cstdio>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "disambig/base/error.h"
#include "disambig/base/rng.h"

namespace disambig {
namespace {

constexpr std::array<std::string_view, 40> kSurnameHeads = {
    "AND", "BAR", "BEL", "CAR", "COL", "DAV", "DEL", "FER", "GAR", "HAR",
    "HOL", "JOH", "KAL", "LAN", "MAR", "MOR", "NOR", "PAR", "RAM", "ROS",
    "SAN", "SCH", "STE", "TAN", "VAN", "WAL", "WIL", "YAM", "ZIM", "BRO",
    "CHA", "DUR", "EVA", "FIS", "GON", "KIM", "LEE", "MIL", "NAK", "OKA"};
constexpr std::array<std::string_view, 7> kSurnameMiddles = {
    "", "RI", "LO", "DE", "NA", "VI", "TO"};
constexpr std::array<std::string_view, 24> kSurnameTails = {
    "SON", "MAN",  "TON", "LEY", "BERG", "STEIN", "EZ",  "INI",
    "OV",  "SKI",  "ER",  "ELL", "ARD",  "WOOD",  "FORD", "ING",
    "OTA", "URA",  "ANI", "ETTE", "ERS", "IN",    "O",   "A"};

constexpr std::array<std::string_view, 60> kFirstNames = {
    "EMMETT",  "JAMES",   "CHRIS",   "MARTY",  "LORRAINE", "GEORGE", "BIFF",
    "JENNIFER", "DAVID",  "SARAH",   "MICHAEL", "LAURA",   "ROBERT", "ANNA",
    "THOMAS",  "ELENA",   "PETER",   "HANNAH",  "STEVEN",  "YUKI",   "WEI",
    "PRIYA",   "OMAR",    "FATIMA",  "LUCAS",   "SOFIA",   "IVAN",   "OLGA",
    "HIROSHI", "MEI",     "CARLOS",  "LUCIA",   "AHMED",   "NADIA",  "JONAS",
    "INGRID",  "PAOLO",   "GIULIA",  "RAJ",     "ANIKA",   "SAMUEL", "RUTH",
    "KENJI",   "AIKO",    "PABLO",   "MARIA",   "FELIX",   "CLARA",  "VICTOR",
    "NORA",    "OSCAR",   "ELISE",   "HENRY",   "GRACE",   "ARTHUR", "JUNE",
    "LEON",    "VERA",    "MILES",   "IRIS"};
constexpr std::array<std::string_view, 24> kMiddleNames = {
    "LATHROP", "THOMAS", "JEAN",  "ANNE",   "LEE",    "MARIE",
    "JOHN",    "PAUL",   "ROSE",  "EDWARD", "LOUISE", "JAMES",
    "KAI",     "RAY",    "ELLEN", "MARK",   "JOY",    "DEAN",
    "FRANCIS", "GRACE",  "OWEN",  "HOPE",   "ALAN",   "MAE"};
constexpr std::array<std::string_view, 12> kCityHeads = {
    "HILL", "SPRING", "LAKE", "RIVER", "OAK",  "PINE",
    "GLEN", "FAIR",   "RED",  "NEW",   "PORT", "WEST"};
constexpr std::array<std::string_view, 10> kCityTails = {
    "VALLEY", "FIELD", "WOOD",  "VIEW", "TOWN",
    "HAVEN",  "DALE",  "FORD",  "BROOK", "MONT"};
constexpr std::array<std::string_view, 10> kAssigneeHeads = {
    "SCIENCE", "ADVANCED", "GLOBAL",  "UNITED",    "PACIFIC",
    "NORTHERN", "DYNAMIC", "PRECISION", "APPLIED", "QUANTUM"};
constexpr std::array<std::string_view, 10> kAssigneeTails = {
    "SOLUTIONS", "SYSTEMS",   "TECHNOLOGIES", "DEVICES",     "LABS",
    "INDUSTRIES", "MATERIALS", "ELECTRONICS", "INSTRUMENTS", "PHARMA"};
constexpr std::array<std::string_view, 7> kAssigneeSuffixes = {
    "INC", "LLC", "LTD", "PTY LTD", "CORP", "GMBH", "CO"};

template <size_t N>
std::string Pick(const std::array<std::string_view, N>& pool, Rng& rng) {
  return std::string(pool[rng.Uniform(N)]);
}

char RandomLetter(Rng& rng) { return static_cast<char>('A' + rng.Uniform(26)); }

std::string RandomSurname(Rng& rng) {
  return Pick(kSurnameHeads, rng) + Pick(kSurnameMiddles, rng) +
         Pick(kSurnameTails, rng);
}

std::string RandomIpc(Rng& rng, char section) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "%c%02d%c", section,
                static_cast<int>(1 + rng.Uniform(99)), RandomLetter(rng));
  return buf;
}

struct Profile {
  std::string first, middle, last, city;
  std::vector<std::string> ipcs, co_inventors, assignees;
};

Profile RandomProfile(Rng& rng) {
  Profile p;
  p.first = Pick(kFirstNames, rng);
  if (!rng.Bernoulli(0.2)) p.middle = Pick(kMiddleNames, rng);
  p.city = Pick(kCityHeads, rng);
  if (rng.Bernoulli(0.5)) {
    p.city += " ";
  }
  p.city += Pick(kCityTails, rng);

  const char section = static_cast<char>('A' + rng.Uniform(8));
  const int n_ipc = rng.UniformInt(1, 4);
  for (int i = 0; i < n_ipc; ++i) p.ipcs.push_back(RandomIpc(rng, section));

  const int n_co = rng.UniformInt(0, 4);
  for (int i = 0; i < n_co; ++i) p.co_inventors.push_back(RandomSurname(rng));

  const int n_assignee = rng.UniformInt(1, 2);
  for (int i = 0; i < n_assignee; ++i) {
    if (rng.Bernoulli(0.25)) {
      p.assignees.push_back("UNIVERSITY OF " + Pick(kCityTails, rng));
    } else {
      p.assignees.push_back(Pick(kAssigneeHeads, rng) + " " +
                            Pick(kAssigneeTails, rng));
    }
  }
  return p;
}

// Substitutes or deletes one letter at a position >= min_pos.
void ApplyTypo(std::string* word, int min_pos, Rng& rng) {
  const int len = static_cast<int>(word->size());
  if (len <= min_pos + 1) return;
  const int pos = rng.UniformInt(min_pos, len - 1);
  if (rng.Bernoulli(0.5) && len > min_pos + 2) {
    word->erase(static_cast<size_t>(pos), 1);
    return;
  }
  char c = RandomLetter(rng);
  while (c == (*word)[pos]) c = RandomLetter(rng);
  (*word)[pos] = c;
}

std::string ToggleSuffix(const std::string& assignee, Rng& rng) {
  for (std::string_view suffix : kAssigneeSuffixes) {
    const std::string tail = " " + std::string(suffix);
    if (assignee.size() > tail.size() &&
        assignee.compare(assignee.size() - tail.size(), tail.size(), tail) ==
            0) {
      return assignee.substr(0, assignee.size() - tail.size());
    }
  }
  return assignee + " " + Pick(kAssigneeSuffixes, rng);
}

Record PerturbedCopy(const Profile& p, const SynthConfig& config, Rng& rng) {
  Record r;
  r.first_name = p.first;
  r.middle_name = p.middle;
  r.last_name = p.last;
  r.city = p.city;
  r.ipc_codes = p.ipcs;
  r.co_inventor_last_names = p.co_inventors;
  r.assignees = p.assignees;

  if (rng.Bernoulli(config.typo_rate)) {
    if (rng.Bernoulli(0.5)) {
      ApplyTypo(&r.last_name, config.protected_prefix, rng);
    } else {
      ApplyTypo(&r.first_name, 1, rng);
    }
  }
  if (!r.middle_name.empty() && rng.Bernoulli(config.middle_initial_rate)) {
    r.middle_name.resize(1);
  }
  if (r.ipc_codes.size() > 1 && rng.Bernoulli(config.ipc_variation_rate)) {
    std::vector<std::string> subset;
    while (subset.empty()) {
      for (const std::string& code : r.ipc_codes) {
        if (rng.Bernoulli(0.5)) subset.push_back(code);
      }
    }
    r.ipc_codes = std::move(subset);
  }
  if (r.co_inventor_last_names.size() > 1 &&
      rng.Bernoulli(config.coinventor_reorder_rate)) {
    rng.Shuffle(std::span<std::string>(r.co_inventor_last_names));
  }
  if (rng.Bernoulli(config.assignee_suffix_rate)) {
    for (std::string& a : r.assignees) a = ToggleSuffix(a, rng);
  }
  return r;
}

bool InUnitInterval(double x) { return x >= 0.0 && x <= 1.0; }

}  // namespace

void ValidateSynthConfig(const SynthConfig& c) {
  const auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kInvalidConfig, what);
  };
  if (c.n_entities < 1) fail("n_entities must be >= 1");
  if (c.min_records_per_entity < 1) fail("min_records_per_entity must be >= 1");
  if (c.max_records_per_entity < c.min_records_per_entity) {
    fail("max_records_per_entity must be >= min_records_per_entity");
  }
  for (double rate : {c.typo_rate, c.middle_initial_rate,
                      c.coinventor_reorder_rate, c.assignee_suffix_rate,
                      c.ipc_variation_rate, c.last_name_collision_rate,
                      c.full_name_collision_rate}) {
    if (!InUnitInterval(rate)) fail("perturbation rates must lie in [0, 1]");
  }
  if (c.protected_prefix < 0) fail("protected_prefix must be >= 0");
}

LabeledCorpus GenerateSyntheticCorpus(const SynthConfig& config,
                                      uint64_t seed) {
  ValidateSynthConfig(config);
  Rng rng(seed);

  std::vector<Profile> profiles;
  std::set<std::string> used_surnames;
  for (int e = 0; e < config.n_entities; ++e) {
    Profile p = RandomProfile(rng);
    if (e > 0 && rng.Bernoulli(config.last_name_collision_rate)) {
      const Profile& other = profiles[rng.Uniform(profiles.size())];
      p.last = other.last;
      if (rng.Bernoulli(config.full_name_collision_rate)) p.first = other.first;
    } else {
      do {
        p.last = RandomSurname(rng);
      } while (!used_surnames.insert(p.last).second);
    }
    profiles.push_back(std::move(p));
  }

  struct Draft {
    Record record;
    int entity;
  };
  std::vector<Draft> drafts;
  for (int e = 0; e < config.n_entities; ++e) {
    const int n = rng.UniformInt(config.min_records_per_entity,
                                 config.max_records_per_entity);
    for (int k = 0; k < n; ++k) {
      drafts.push_back({PerturbedCopy(profiles[e], config, rng), e});
    }
  }
  rng.Shuffle(std::span<Draft>(drafts));

  LabeledCorpus corpus;
  corpus.records.reserve(drafts.size());
  char buf[32];
  for (size_t i = 0; i < drafts.size(); ++i) {
    Record r = std::move(drafts[i].record);
    std::snprintf(buf, sizeof(buf), "R%06zu", i + 1);
    r.record_id = buf;
    std::snprintf(buf, sizeof(buf), "E%05d", drafts[i].entity + 1);
    corpus.entity_ids[r.record_id] = buf;
    corpus.records.push_back(std::move(r));
  }
  return corpus;
}

}  // namespace disambig
