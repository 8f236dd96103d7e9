#include <gtest/gtest.h>

#include <algorithm>
#include <bitset>
#include <thread>

#include "fdof/identifiers.hpp"
#include "fdof/model.hpp"
#include "fdof/vocabulary.hpp"
#include "fixtures.hpp"
#include "generators.hpp"

namespace fdof {
namespace {

using namespace std::chrono_literals;

const IdentificationSpace& uri_space() { return IdentificationSpace::uri(); }

TEST(IsGupri, Examples) {
  EXPECT_TRUE(is_gupri("https://w3id.org/fdof/fois23-paper/amazonTop50", uri_space()));
  EXPECT_FALSE(is_gupri("", uri_space()));
  EXPECT_FALSE(is_gupri("foo/bar", uri_space()));
}

TEST(IsGupri, NarrowerSpaceStillRequiresUriSyntax) {
  const IdentificationSpace w3id("w3id", [](std::string_view v) {
    return v.starts_with("https://w3id.org/");
  });
  EXPECT_TRUE(is_gupri("https://w3id.org/x", w3id));
  EXPECT_FALSE(is_gupri("https://example.org/x", w3id));
  EXPECT_FALSE(is_gupri("https://w3id.org/a b", w3id));
  // A permissive grammar cannot admit non-URIs.
  const IdentificationSpace all("all", [](std::string_view) { return true; });
  EXPECT_FALSE(is_gupri("not a uri", all));
}

TEST(FormatUtc, MillisecondPrecision) {
  const std::chrono::system_clock::time_point t{1602547200123ms};
  EXPECT_EQ(format_utc(t), "2020-10-13T00:00:00.123Z");
  EXPECT_EQ(format_utc(std::chrono::system_clock::time_point{}), "1970-01-01T00:00:00.000Z");
  EXPECT_EQ(format_utc(std::chrono::system_clock::time_point{-1ms}),
            "1969-12-31T23:59:59.999Z");
}

TEST(EncodeToken, KnownVectors) {
  std::array<std::uint8_t, 16> zero{};
  EXPECT_EQ(encode_token(zero), std::string(26, 'a'));
  std::array<std::uint8_t, 16> ones;
  ones.fill(0xFF);
  EXPECT_EQ(encode_token(ones), std::string(25, '7') + "4");
}

TEST(EncodeToken, MatchesBitStringOracle) {
  testing::Rng rng(16);
  static constexpr char kAlphabet[] = "abcdefghijklmnopqrstuvwxyz234567";
  for (int i = 0; i < 200; ++i) {
    std::array<std::uint8_t, 16> bytes;
    for (auto& b : bytes) b = static_cast<std::uint8_t>(rng());
    std::string bits;
    for (auto b : bytes) bits += std::bitset<8>(b).to_string();
    bits += "00";  // pad to 130 bits
    std::string expected;
    for (std::size_t at = 0; at < bits.size(); at += 5) {
      expected += kAlphabet[std::stoi(bits.substr(at, 5), nullptr, 2)];
    }
    EXPECT_EQ(encode_token(bytes), expected);
  }
}

TEST(Mint, ProducesValueUnderTemplateWithProvenance) {
  const std::chrono::system_clock::time_point when{1700000000000ms};
  Minter minter(uri_space(), [&] { return when; });
  const auto [gupri, ident] = minter.mint("https://ex.org/fdo/{}", "https://ex.org/agentA",
                                          "https://ex.org/obj1");
  EXPECT_TRUE(gupri.value().starts_with("https://ex.org/fdo/"));
  EXPECT_EQ(gupri.value().size(), std::string("https://ex.org/fdo/").size() + 26);
  EXPECT_EQ(gupri.base.space, "uri");
  EXPECT_TRUE(is_gupri(gupri.value(), uri_space()));
  EXPECT_EQ(ident.identifier, gupri.base);
  EXPECT_EQ(ident.agent, "https://ex.org/agentA");
  EXPECT_EQ(ident.object, "https://ex.org/obj1");
  EXPECT_EQ(ident.timestamp, when);
  EXPECT_TRUE(minter.contains_value(gupri.value()));
  EXPECT_EQ(minter.value_for("https://ex.org/obj1"), gupri.value());
  EXPECT_EQ(minter.value_for("https://ex.org/other"), std::nullopt);
}

MintError::Code mint_error(Minter& m, std::string_view tmpl, std::string_view object) {
  try {
    m.mint(tmpl, "https://ex.org/agent", object);
  } catch (const MintError& e) {
    return e.code();
  }
  ADD_FAILURE() << "mint succeeded for " << tmpl;
  return MintError::Code::BadTemplate;
}

TEST(Mint, Errors) {
  Minter minter(uri_space());
  minter.mint("https://ex.org/{}", "https://ex.org/agent", "https://ex.org/obj1");
  EXPECT_EQ(mint_error(minter, "https://ex.org/{}", "https://ex.org/obj1"),
            MintError::Code::DuplicateObject);
  EXPECT_EQ(mint_error(minter, "https://ex.org/x", "o2"), MintError::Code::BadTemplate);
  EXPECT_EQ(mint_error(minter, "https://ex.org/{}/{}", "o2"), MintError::Code::BadTemplate);
  EXPECT_EQ(mint_error(minter, "fdo/{}", "o2"), MintError::Code::NotInSpace);
  EXPECT_EQ(mint_error(minter, "https://ex.org/ {}", "o2"), MintError::Code::NotInSpace);
  EXPECT_EQ(minter.size(), 1u);
}

TEST(Mint, RetriesCollidingTokensThenGivesUp) {
  int calls = 0;
  Minter minter(uri_space(), {}, [&] {
    ++calls;
    std::array<std::uint8_t, 16> b{};
    b[0] = calls < 4 ? 0 : static_cast<std::uint8_t>(calls);
    return b;
  });
  minter.mint("urn:x:{}", "urn:agent", "urn:o1");
  minter.mint("urn:x:{}", "urn:agent", "urn:o2");  // two collisions, then fresh
  EXPECT_EQ(calls, 4);
  EXPECT_EQ(minter.size(), 2u);

  Minter stuck(uri_space(), {}, [] { return std::array<std::uint8_t, 16>{}; });
  stuck.mint("urn:x:{}", "urn:agent", "urn:o1");
  EXPECT_EQ(mint_error(stuck, "urn:x:{}", "urn:o2"), MintError::Code::Exhausted);
  EXPECT_EQ(stuck.size(), 1u);
  EXPECT_FALSE(stuck.value_for("urn:o2"));
}

TEST(Mint, ThousandMintsAreDistinct) {
  Minter minter(uri_space());
  std::set<std::string> seen;
  for (int i = 0; i < 1000; ++i) {
    const auto [g, id] = minter.mint("https://ex.org/fdo/{}", "https://ex.org/agent",
                                     "https://ex.org/obj" + std::to_string(i));
    seen.insert(g.value());
  }
  EXPECT_EQ(seen.size(), 1000u);
  EXPECT_EQ(minter.size(), 1000u);
}

TEST(Mint, ConcurrentMintsNeverCollide) {
  Minter minter(uri_space());
  constexpr int kThreads = 4;
  constexpr int kPerThread = 250;
  std::vector<std::vector<std::string>> values(kThreads);
  std::vector<std::thread> threads;
  for (int t = 0; t < kThreads; ++t) {
    threads.emplace_back([&, t] {
      for (int i = 0; i < kPerThread; ++i) {
        const auto object = "urn:o:" + std::to_string(t) + ":" + std::to_string(i);
        values[t].push_back(minter.mint("urn:v:{}", "urn:a", object).first.value());
        EXPECT_TRUE(minter.contains_value(values[t].back()));
      }
    });
  }
  for (auto& th : threads) th.join();
  std::set<std::string> all;
  for (const auto& v : values) all.insert(v.begin(), v.end());
  EXPECT_EQ(all.size(), static_cast<std::size_t>(kThreads * kPerThread));
}

std::vector<std::pair<std::string, std::string>> gupri_bindings(const Dataset& ds) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& q : ds.quads()) {
    if (q.predicate == Term::iri(std::string(vocab::kGupri))) {
      out.emplace_back(q.object.value(), q.subject.to_ntriples());
    }
  }
  return out;
}

TEST(UniquenessAudit, ExampleCorpusHasNoCollisions) {
  EXPECT_TRUE(uniqueness_audit(gupri_bindings(testing::example_dataset())).empty());
  EXPECT_TRUE(uniqueness_audit({}).empty());
  EXPECT_TRUE(uniqueness_audit({{"urn:a", "s"}, {"urn:a", "s"}}).empty());
}

// Oracle: pairwise scan over all bindings.
std::set<std::string> pairwise_duplicates(
    const std::vector<std::pair<std::string, std::string>>& b) {
  std::set<std::string> out;
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::size_t j = i + 1; j < b.size(); ++j) {
      if (b[i].first == b[j].first && b[i].second != b[j].second) out.insert(b[i].first);
    }
  }
  return out;
}

TEST(UniquenessAudit, PlantedDuplicateIsExactlyReported) {
  testing::Rng rng(42);
  for (int round = 0; round < 100; ++round) {
    std::vector<std::pair<std::string, std::string>> bindings;
    const int n = 2 + static_cast<int>(rng() % 30);
    for (int i = 0; i < n; ++i) {
      bindings.emplace_back("urn:v:" + std::to_string(i), "s" + std::to_string(i));
      if (rng() % 3 == 0) bindings.push_back(bindings.back());  // same subject again
    }
    const std::size_t victim = rng() % bindings.size();
    bindings.emplace_back(bindings[victim].first, "planted");
    const auto found = uniqueness_audit(bindings);
    ASSERT_EQ(found.size(), 1u);
    EXPECT_EQ(found[0].value, bindings[victim].first);
    EXPECT_EQ(found[0].subjects,
              (std::vector<std::string>{"planted", bindings[victim].second}));
    EXPECT_EQ(pairwise_duplicates(bindings), std::set<std::string>{found[0].value});
  }
}

TEST(UniquenessAudit, OrderInsensitiveAndMatchesPairwiseScan) {
  testing::Rng rng(8);
  for (int round = 0; round < 100; ++round) {
    std::vector<std::pair<std::string, std::string>> bindings;
    const int n = static_cast<int>(rng() % 25);
    for (int i = 0; i < n; ++i) {
      bindings.emplace_back("urn:v:" + std::to_string(rng() % 8), "s" + std::to_string(rng() % 5));
    }
    const auto base = uniqueness_audit(bindings);
    std::set<std::string> values;
    for (const auto& c : base) {
      values.insert(c.value);
      EXPECT_TRUE(std::is_sorted(c.subjects.begin(), c.subjects.end()));
      EXPECT_GE(c.subjects.size(), 2u);
    }
    EXPECT_EQ(values, pairwise_duplicates(bindings));
    std::shuffle(bindings.begin(), bindings.end(), rng);
    EXPECT_EQ(uniqueness_audit(bindings), base);
  }
}

}  // namespace
}  // namespace fdof
