// Copyright 2026 The SAE Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "sae/client/client.hpp"
#include "sae/crypto/aead.hpp"
#include "sae/errors.hpp"
#include "sae/harness/cluster.hpp"

namespace sae::harness {
namespace {

Bytes text(std::string_view s) { return Bytes(s.begin(), s.end()); }

client::Meta meta(const std::string& accused) { return client::make_meta(accused, "bullying"); }

ClusterOptions opts(uint32_t n = 3, uint32_t l = 4, uint64_t seed = 50) {
  ClusterOptions o;
  o.cfg = ProtocolConfig::for_escrows(n, l);
  o.seed = seed;
  return o;
}

TEST(Escrow, InitializationAgreesOnMacKey) {
  Cluster c(opts());
  c.initialize();
  std::vector<vss::Share> shares;
  for (uint32_t j = 1; j <= 3; ++j) {
    EXPECT_EQ(c.escrow(j).keys().pk_i, c.mac_key());
    shares.push_back(c.escrow(j).keys().sk_i.share);
  }
  Scalar sk = vss::combine_shares(shares, 1);
  EXPECT_EQ(PairingContext::get().g2.pow(sk), c.mac_key());
  EXPECT_TRUE(c.converged());
}

TEST(Escrow, TwoMatchingFilingsRevealBoth) {
  Cluster c(opts());
  c.initialize();
  ASSERT_TRUE(c.register_user("alice", 2).ok);
  ASSERT_TRUE(c.register_user("bob", 2).ok);
  for (const auto& k : c.client("alice").keys()) {
    EXPECT_TRUE(dvrf::verify_vrf(c.mac_key(), k.mac_proof, escrow::pk_scalar(k.key.pk)));
  }
  EXPECT_EQ(c.escrow(1).identities().size(), 4u);

  ASSERT_TRUE(c.file("a1", "alice", std::nullopt, meta("carol"), text("first"), 2).ok);
  EXPECT_TRUE(c.escrow(1).reveals().empty());
  EXPECT_TRUE(c.escrow(1).buckets().buckets.count(1));
  ASSERT_TRUE(c.file("b1", "bob", std::nullopt, meta("carol"), text("second"), 2).ok);
  for (uint32_t j = 1; j <= 3; ++j) {
    const auto& rs = c.escrow(j).reveals();
    ASSERT_EQ(rs.size(), 2u);
    for (const auto& r : rs) {
      const FiledAllegation* f = c.find_filed(r.id);
      ASSERT_NE(f, nullptr);
      EXPECT_EQ(r.identity, f->identity);
      EXPECT_EQ(r.text, f->text);
      EXPECT_EQ(r.t, f->t);
      EXPECT_TRUE(r.decrypt_ok);
    }
  }
  EXPECT_TRUE(c.converged());
  const auto& m = c.escrow(1).metrics();
  EXPECT_EQ(m.dvrf.registration, 8u);
  EXPECT_EQ(m.dvrf.reveal, 2u);
  EXPECT_LE(m.dvrf.matching, 4u);
}

TEST(Escrow, PublicChecksRejectWithoutMpc) {
  Cluster c(opts(3, 2));
  c.initialize();
  ASSERT_TRUE(c.register_user("alice", 2).ok);
  uint64_t sessions = c.escrow(1).metrics().mpc_sessions;

  // Quota: a third key in the same period.
  StepResult q = c.register_user("alice", 1);
  EXPECT_FALSE(q.ok);
  EXPECT_EQ(q.code, Errc::kQuotaExceeded);
  EXPECT_NE(q.message.find("QuotaExceeded"), std::string::npos) << q.message;
  EXPECT_EQ(c.escrow(1).rejections().back().code, Errc::kQuotaExceeded);

  // A package under a key that was never registered.
  Rng rng = Rng::from_u64(51);
  escrow::FilingPackage pkg = c.client("alice").prepare_filing(0, meta("x"), text("t"), 2);
  crypto::KeyPair rogue = crypto::KeyPair::generate(rng);
  pkg.pk = rogue.pk;
  pkg.mac_proof = G1::generator().pow(Field::bls12_381().random(rng));
  pkg.signature = crypto::sign(rogue, pkg.signed_body(), rng);
  StepResult u = c.post_anonymous(escrow::board_payload(escrow::EntryKind::kFiling, pkg.encode()));
  EXPECT_EQ(u.code, Errc::kUnknownMac);

  // Tampered signature.
  escrow::FilingPackage pkg2 = c.client("alice").prepare_filing(1, meta("x"), text("t"), 2);
  escrow::FilingPackage forged = pkg2;
  forged.t = 3;
  EXPECT_EQ(c.post_anonymous(escrow::board_payload(escrow::EntryKind::kFiling, forged.encode())).code,
            Errc::kBadSignature);
  // Garbage.
  EXPECT_EQ(c.post_anonymous(text("\x02junk")).code, Errc::kDecode);
  for (uint32_t j = 1; j <= 3; ++j) EXPECT_EQ(c.escrow(j).metrics().mpc_sessions, sessions);

  // The genuine package goes through once; a replay is a reused key.
  Bytes genuine = escrow::board_payload(escrow::EntryKind::kFiling, pkg2.encode());
  EXPECT_TRUE(c.post_anonymous(genuine).ok);
  EXPECT_EQ(c.post_anonymous(genuine).code, Errc::kReusedKey);
  EXPECT_EQ(c.escrow(1).metrics().mpc_sessions, sessions + 1);
  EXPECT_EQ(c.file("again", "alice", 1, meta("x"), text("t"), 2).code, Errc::kKeyAlreadyUsed);
  EXPECT_TRUE(c.converged());
}

TEST(Escrow, BadCertificateIsRejected) {
  Cluster c(opts());
  c.initialize();
  Rng rng = Rng::from_u64(52);
  auto rogue_ca = crypto::CertificateAuthority::generate(rng);
  client::ClientIdentity id{"mallory", crypto::KeyPair::generate(rng), {}};
  id.cert = rogue_ca.issue("mallory", id.key.pk, rng);
  client::Client mallory(id, c.keys().directory, c.config(), 4000, Rng::from_u64(53));
  auto& sim = dynamic_cast<SimTransport&>(c.transport());
  std::vector<std::thread> ts;
  for (uint32_t j = 1; j <= 3; ++j) {
    ts.emplace_back([&, j] { c.escrow(j).process_through(c.escrow(j).cursor(), std::chrono::seconds(30)); });
  }
  try {
    mallory.register_keys(sim.memory_board(), sim.sim(), 1, c.mac_key());
    ADD_FAILURE() << "registration accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kRegistrationRejected);
    EXPECT_NE(std::string(e.what()).find("BadCertificate"), std::string::npos);
  }
  for (auto& t : ts) t.join();
  EXPECT_EQ(c.escrow(1).rejections().back().code, Errc::kBadCertificate);
  EXPECT_EQ(c.escrow(1).metrics().dvrf.registration, 0u);
  EXPECT_TRUE(c.client("x").register_keys(sim.memory_board(), sim.sim(), 0, c.mac_key()).empty());
}

TEST(Escrow, BadDealingAndGarbageCiphertext) {
  Cluster c(opts());
  c.initialize();
  ASSERT_TRUE(c.register_user("alice", 3).ok);
  ASSERT_TRUE(c.register_user("bob", 1).ok);
  Rng rng = Rng::from_u64(54);
  auto& alice = c.client("alice");

  // Share for escrow 2 sealed to the wrong key: escrow 2 complains and the
  // complaint holds.
  escrow::FilingPackage pkg = alice.prepare_filing(0, meta("dave"), text("x"), 1);
  pkg.sealed_shares[1] = crypto::ecies_seal(c.keys().escrows[0].pk, text("nope"), escrow::share_aad(pkg.pk, 2), rng);
  pkg.signature = crypto::sign(alice.keys()[0].key, pkg.signed_body(), rng);
  EXPECT_EQ(c.post_anonymous(escrow::board_payload(escrow::EntryKind::kFiling, pkg.encode())).code,
            Errc::kBadDealing);
  EXPECT_TRUE(c.honest_reports().empty());

  // Undecryptable allegation text: the identity is still revealed.
  escrow::FilingPackage bad = alice.prepare_filing(1, meta("erin"), text("x"), 1);
  bad.ciphertext[bad.ciphertext.size() - 1] ^= 1;
  bad.signature = crypto::sign(alice.keys()[1].key, bad.signed_body(), rng);
  ASSERT_TRUE(c.post_anonymous(escrow::board_payload(escrow::EntryKind::kFiling, bad.encode())).ok);
  for (uint32_t j = 1; j <= 3; ++j) {
    ASSERT_EQ(c.escrow(j).reveals().size(), 1u);
    EXPECT_FALSE(c.escrow(j).reveals()[0].decrypt_ok);
    EXPECT_EQ(c.escrow(j).reveals()[0].identity, "alice");
  }
  EXPECT_TRUE(c.converged());
}

TEST(Escrow, PersistedStateReloadsAndKeepsIdentitiesUnlinked) {
  const std::string dir = ::testing::TempDir() + "/sae_escrow_persist";
  std::filesystem::remove_all(dir);
  ClusterOptions o = opts();
  o.state_dir = dir;
  Bytes digest;
  std::vector<Bytes> pks;
  {
    Cluster c(o);
    c.initialize();
    ASSERT_TRUE(c.register_user("alice", 2).ok);
    ASSERT_TRUE(c.file("a", "alice", std::nullopt, meta("z"), text("one"), 3).ok);
    ASSERT_TRUE(c.file("b", "alice", std::nullopt, meta("z"), text("two"), 1).ok);
    digest = c.escrow(1).state_digest();
    for (const auto& k : c.client("alice").keys()) pks.push_back(k.key.pk.to_bytes());
    // Registration records never carry the one-time key.
    for (const auto& rec : escrow::RecordStore::load(dir + "/escrow1.store")) {
      if (rec.type != 4) continue;
      for (const Bytes& pk : pks) {
        EXPECT_EQ(std::search(rec.payload.begin(), rec.payload.end(), pk.begin(), pk.end()), rec.payload.end());
      }
    }
  }
  transport::SimNetwork net;
  transport::InMemoryBoard board;
  Rng rng = Rng::from_u64(o.seed);
  // Keys are regenerated from the same seed, so directory and identities match.
  ClusterKeys keys{crypto::CertificateAuthority::generate(rng), {}, {}};
  keys.directory.ca = keys.ca.public_key();
  for (uint32_t j = 1; j <= 3; ++j) {
    keys.escrows.push_back(crypto::KeyPair::generate(rng));
    keys.directory.escrows.push_back(keys.escrows.back().pk);
  }
  escrow::EscrowOptions eo;
  eo.store_path = dir + "/escrow1.store";
  escrow::Escrow again(1, keys.escrows[0], keys.directory, o.cfg, net, board, Rng::from_u64(9), eo);
  EXPECT_TRUE(again.initialized());
  EXPECT_EQ(again.state_digest(), digest);
  EXPECT_EQ(again.reveals().size(), 1u);
  EXPECT_EQ(again.allegations().size(), 2u);
  EXPECT_GT(again.cursor(), 0u);
  std::ifstream log(dir + "/escrow1.reveals.jsonl");
  std::string line;
  ASSERT_TRUE(std::getline(log, line));
  EXPECT_NE(line.find("\"identity\":\"alice\""), std::string::npos);
  EXPECT_NE(line.find("\"text\":\"two\""), std::string::npos);
}

TEST(Client, MetaCanonicalization) {
  client::Meta a{{"accused", "bob"}, {"category", "bullying"}};
  client::Meta b;
  b["category"] = "bullying";
  b["accused"] = "bob";
  EXPECT_EQ(client::canonical_meta(a), client::canonical_meta(b));
  EXPECT_EQ(client::meta_scalar(a), client::meta_scalar(b));
  client::Meta c = a;
  c["accused"] = "bob2";
  EXPECT_NE(client::meta_scalar(a), client::meta_scalar(c));
  // Length prefixes keep field boundaries apart.
  client::Meta d{{"ab", "c"}}, e{{"a", "bc"}};
  EXPECT_NE(client::canonical_meta(d), client::canonical_meta(e));
  EXPECT_THROW(client::make_meta("bob", "not-a-category"), Error);
  EXPECT_THROW(client::make_meta("", "bullying"), Error);
}

TEST(Client, KeystoreRoundTrip) {
  Cluster c(opts());
  c.initialize();
  ASSERT_TRUE(c.register_user("alice", 2).ok);
  auto& alice = c.client("alice");
  alice.prepare_filing(0, meta("x"), text("t"), 2);
  const std::string path = ::testing::TempDir() + "/sae_client_keys.bin";
  alice.save(path, "pw");
  client::Client restored(c.client("alice").identity(), c.keys().directory, c.config(), 5000, Rng::from_u64(1));
  EXPECT_THROW(restored.load(path, "wrong"), Error);
  restored.load(path, "pw");
  ASSERT_EQ(restored.keys().size(), 2u);
  EXPECT_TRUE(restored.keys()[0].used);
  EXPECT_FALSE(restored.keys()[1].used);
  EXPECT_EQ(restored.keys()[1].mac_proof, alice.keys()[1].mac_proof);
  EXPECT_EQ(restored.next_unused(), 1u);
  EXPECT_THROW(restored.prepare_filing(0, meta("x"), text("t"), 2), Error);
}

}  // namespace
}  // namespace sae::harness

namespace sae::harness {
namespace {

class Corruption : public ::testing::TestWithParam<vss::Behavior> {};

TEST_P(Corruption, HonestEscrowsNameExactlyTheCulprit) {
  ClusterOptions o = opts(5, 4, 60);
  o.behaviors[3] = GetParam();
  Cluster c(o);
  c.initialize();
  c.register_user("alice", 2);
  c.register_user("bob", 2);
  c.file("a", "alice", std::nullopt, meta("x"), text("a"), 2);
  c.file("b", "bob", std::nullopt, meta("x"), text("b"), 2);
  EXPECT_EQ(c.named_culprits(), std::set<uint32_t>{3});
  EXPECT_TRUE(c.converged());
  for (const auto& [j, err] : c.escrow_errors()) EXPECT_EQ(j, 3u) << err;
}

INSTANTIATE_TEST_SUITE_P(Behaviors, Corruption,
                         ::testing::Values(vss::Behavior::kWrongMultiplyShare, vss::Behavior::kSilentDrop,
                                           vss::Behavior::kBadDealing, vss::Behavior::kBadExponentContribution),
                         [](const auto& info) {
                           std::string s(vss::behavior_name(info.param));
                           std::erase(s, '-');
                           return s;
                         });

}  // namespace
}  // namespace sae::harness
