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

#include "sae/escrow/escrow.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

#include "sae/algebra/hash.hpp"
#include "sae/crypto/aead.hpp"
#include "sae/errors.hpp"

namespace sae::escrow {

using transport::BoardEntry;
using transport::NodeId;
using vss::MpcContext;

namespace {

enum RecordType : uint8_t {
  kKeysRecord = 1,
  kBucketKeyRecord = 2,
  kQuotaRecord = 3,
  kIdentityRecord = 4,
  kAllegationRecord = 5,
  kBucketsRecord = 6,
  kRevealRecord = 7,
  kCursorRecord = 8,
};

// Rounds at the start and end of a registration session in which escrows
// tell the client the outcome.
constexpr std::string_view kRegStatus = "reg/status";
constexpr std::string_view kRegDone = "reg/done";
constexpr std::string_view kFileComplaint = "file/complaint";

void write_shared(ByteWriter& w, const Shared& s) {
  w.bytes(vss::encode_share(s.share)).bytes(s.commitments.encode());
}

Shared read_shared(ByteReader& r, uint32_t degree) {
  Shared s;
  s.share = vss::decode_share(Field::bls12_381(), r.bytes(1024));
  s.commitments = vss::Commitments<G1>::decode(PairingContext::get().g, r.bytes(1u << 16), degree);
  return s;
}

Bytes encode_reveal(const RevealedAllegation& r) {
  ByteWriter w;
  w.u32(r.t).bytes(r.text).str(r.identity).bytes(r.id).u64(r.seq).u8(r.decrypt_ok ? 1 : 0);
  return w.take();
}

RevealedAllegation decode_reveal(ByteView b) {
  ByteReader rd(b);
  RevealedAllegation r;
  r.t = rd.u32();
  r.text = rd.bytes();
  r.identity = rd.str();
  r.id = rd.bytes(1024);
  r.seq = rd.u64();
  r.decrypt_ok = rd.u8() != 0;
  rd.expect_done();
  return r;
}

Bytes complaint_context(const std::string& session, uint32_t escrow) {
  ByteWriter w;
  w.str("SAE-v1-filing-complaint").str(session).u32(escrow);
  return w.take();
}

// True when the sealed share for `escrow` does not open to a pair of shares
// consistent with the package commitments.
bool share_is_bad(const CommitKey<G1>& ck, const FilingPackage& pkg, uint32_t escrow,
                  const std::function<Bytes()>& open) {
  try {
    auto [m, k] = decode_share_pair(open());
    return m.index != escrow || k.index != escrow || !vss::verify_share(ck, pkg.m_commitments, m) ||
           !vss::verify_share(ck, pkg.k_commitments, k);
  } catch (const Error&) {
    return true;
  }
}

}  // namespace

Bytes identity_key(const Gt& r) {
  auto d = sha256(r.to_bytes());
  return Bytes(d.begin(), d.end());
}

Bytes encode_record(const AllegationRecord& r) {
  ByteWriter w;
  w.u32(r.t).raw(r.pk.to_bytes()).bytes(r.ciphertext).u64(r.seq);
  write_shared(w, r.m);
  write_shared(w, r.k);
  return w.take();
}

AllegationRecord decode_record(ByteView b, uint32_t degree) {
  ByteReader rd(b);
  AllegationRecord r;
  r.t = rd.u32();
  r.pk = G1::from_bytes(rd.raw(G1::kBytes));
  r.ciphertext = rd.bytes();
  r.seq = rd.u64();
  r.m = read_shared(rd, degree);
  r.k = read_shared(rd, degree);
  rd.expect_done();
  return r;
}

std::string reveal_json(const RevealedAllegation& r) {
  nlohmann::json j;
  j["seq"] = r.seq;
  j["t"] = r.t;
  j["identity"] = r.identity;
  j["allegation"] = to_hex(r.id);
  j["status"] = r.decrypt_ok ? "ok" : "decrypt_failure";
  j["text"] = std::string(r.text.begin(), r.text.end());
  return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

Escrow::Escrow(uint32_t index, crypto::KeyPair identity, Directory directory, ProtocolConfig cfg,
               transport::Network& net, transport::BulletinBoard& board, Rng rng, EscrowOptions options)
    : index_(index),
      identity_(std::move(identity)),
      directory_(std::move(directory)),
      cfg_(cfg),
      net_(net),
      board_(board),
      rng_(std::move(rng)),
      options_(std::move(options)),
      ck_(PairingContext::get().commit_key()) {
  cfg_.validate();
  if (index_ < 1 || index_ > cfg_.n) throw Error(Errc::kInvalidConfig, "escrow index out of range");
  if (directory_.escrows.size() != cfg_.n) throw Error(Errc::kInvalidConfig, "directory size differs from n");
  if (!(directory_.escrow(index_) == identity_.pk)) {
    throw Error(Errc::kInvalidConfig, "identity key does not match the directory");
  }
  if (options_.quota_period_ms <= 0) throw Error(Errc::kInvalidConfig, "quota period must be positive");
  if (!options_.store_path.empty()) {
    restore();
    store_ = std::make_unique<RecordStore>(options_.store_path);
  }
}

Escrow::~Escrow() = default;

const EscrowKeyState& Escrow::keys() const {
  if (!keys_) throw Error(Errc::kInvalidConfig, "escrow not initialized");
  return *keys_;
}

void Escrow::persist(uint8_t type, const Bytes& payload) {
  if (store_) store_->append(type, payload);
}

void Escrow::restore() {
  for (const StoreRecord& rec : RecordStore::load(options_.store_path)) {
    ByteReader r(rec.payload);
    switch (rec.type) {
      case kKeysRecord: {
        EscrowKeyState k;
        k.sk_i = read_shared(r, cfg_.f);
        k.sk_r = read_shared(r, cfg_.f);
        k.pk_i = G2::from_bytes(r.raw(G2::kBytes));
        keys_ = std::move(k);
        break;
      }
      case kBucketKeyRecord: {
        uint32_t i = r.u32();
        if (!keys_) throw Error(Errc::kDecode, "bucket key before keys");
        keys_->bucket_keys[i] = read_shared(r, cfg_.f);
        break;
      }
      case kQuotaRecord: {
        std::string id = r.str();
        int64_t period = static_cast<int64_t>(r.u64());
        quota_[{id, period}] = r.u32();
        break;
      }
      case kIdentityRecord: {
        Bytes key = r.bytes(64);
        identities_[key] = r.str();
        break;
      }
      case kAllegationRecord: {
        AllegationRecord a = decode_record(rec.payload, cfg_.f);
        allegations_[a.pk.to_bytes()] = std::move(a);
        continue;
      }
      case kBucketsRecord:
        buckets_ = bucketing::BucketMap::decode(rec.payload);
        continue;
      case kRevealRecord: {
        RevealedAllegation rv = decode_reveal(rec.payload);
        revealed_done_.insert(rv.id);
        reveals_.push_back(std::move(rv));
        continue;
      }
      case kCursorRecord:
        cursor_ = r.u64();
        break;
      default:
        throw Error(Errc::kDecode, "unknown store record type");
    }
    r.expect_done();
  }
}

void Escrow::absorb_reports(const MpcContext<G1>& ctx) {
  for (const AbortReport& r : ctx.reports()) reports_.push_back(r);
}

void Escrow::reject(uint64_t seq, EntryKind kind, Errc code) { rejections_.push_back({seq, kind, code}); }

void Escrow::advance_cursor(uint64_t next) {
  cursor_ = next;
  ByteWriter w;
  w.u64(cursor_);
  persist(kCursorRecord, w.view());
}

Bytes Escrow::encode_identities() const {
  ByteWriter w;
  w.u8(1).u32(static_cast<uint32_t>(identities_.size()));
  for (const auto& [k, v] : identities_) w.bytes(k).str(v);
  return w.take();
}

Bytes Escrow::state_digest() const {
  ByteWriter w;
  w.bytes(buckets_.encode()).bytes(encode_identities());
  auto d = sha256(w.view());
  return Bytes(d.begin(), d.end());
}

void Escrow::initialize() {
  if (keys_) return;
  auto ep = net_.open("init", index_, vss::escrow_ids(cfg_));
  MpcContext<G1> ctx(ck_, cfg_, *ep, rng_, options_.behavior);
  ++metrics_.mpc_sessions;
  try {
    EscrowKeyState k;
    k.sk_i = vss::random_coin_toss(ctx);
    k.sk_r = vss::random_coin_toss(ctx);
    metrics_.coin_tosses += 2;
    k.pk_i = *vss::public_exponentiate(ctx, PairingContext::get().g2, k.sk_i, vss::Recipient::escrows());
    keys_ = std::move(k);
  } catch (...) {
    absorb_reports(ctx);
    throw;
  }
  absorb_reports(ctx);
  ByteWriter w;
  write_shared(w, keys_->sk_i);
  write_shared(w, keys_->sk_r);
  w.raw(keys_->pk_i.to_bytes());
  persist(kKeysRecord, w.view());
  if (options_.behavior == vss::Behavior::kSilentDrop) return;
  Announcement a{index_, keys_->pk_i, {}};
  a.signature = crypto::sign(identity_, a.signed_body(), rng_);
  board_.post(board_payload(EntryKind::kAnnounce, a.encode()), index_);
}

size_t Escrow::sync() {
  auto entries = board_.read(cursor_);
  for (const BoardEntry& e : entries) handle(e);
  return entries.size();
}

void Escrow::process_through(uint64_t last, std::chrono::milliseconds timeout) {
  auto deadline = std::chrono::steady_clock::now() + timeout;
  while (cursor_ <= last) {
    auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) throw Error(Errc::kTimeout, "board entry " + std::to_string(last) + " not visible");
    for (const BoardEntry& e : board_.wait(cursor_, left)) {
      if (e.seq > last) break;
      handle(e);
    }
  }
}

void Escrow::run(const std::atomic<bool>& stop, std::chrono::milliseconds poll) {
  while (!stop.load()) {
    for (const BoardEntry& e : board_.wait(cursor_, poll)) {
      if (stop.load()) return;
      handle(e);
    }
  }
}

void Escrow::handle(const BoardEntry& entry) {
  if (entry.seq != cursor_) throw Error(Errc::kInvariantViolation, "board entries out of order");
  if (!keys_) throw Error(Errc::kInvalidConfig, "escrow not initialized");
  ++metrics_.entries_processed;
  EntryKind kind = EntryKind::kFiling;
  ByteView body;
  try {
    std::tie(kind, body) = split_payload(entry.payload);
  } catch (const Error&) {
    reject(entry.seq, kind, Errc::kDecode);
    advance_cursor(entry.seq + 1);
    return;
  }
  switch (kind) {
    case EntryKind::kRegister:
      handle_register(entry, body);
      break;
    case EntryKind::kFiling:
      handle_filing(entry, body);
      break;
    case EntryKind::kAnnounce:
      break;
  }
  advance_cursor(entry.seq + 1);
}

// ---- registration ----

std::optional<Errc> Escrow::check_registration(const BoardEntry& entry, const RegisterRequest& req) const {
  if (entry.anonymous || entry.sender != req.client) return Errc::kRegistrationRejected;
  if (!crypto::verify_certificate(directory_.ca, req.cert)) return Errc::kBadCertificate;
  if (!crypto::verify(req.cert.key, req.signed_body(), req.signature)) return Errc::kBadSignature;
  if (req.count == 0) return Errc::kRegistrationRejected;
  int64_t period = entry.time_ms / options_.quota_period_ms;
  auto it = quota_.find({req.cert.identity, period});
  uint32_t used = it == quota_.end() ? 0 : it->second;
  if (req.count > cfg_.l || used + req.count > cfg_.l) return Errc::kQuotaExceeded;
  return std::nullopt;
}

void Escrow::handle_register(const BoardEntry& entry, ByteView body) {
  RegisterRequest req;
  try {
    req = RegisterRequest::decode(body);
  } catch (const Error&) {
    reject(entry.seq, EntryKind::kRegister, Errc::kDecode);
    return;
  }
  // Without a usable client address there is nobody to talk to.
  if (req.client < transport::kFirstClientId || entry.anonymous || entry.sender != req.client) {
    reject(entry.seq, EntryKind::kRegister, Errc::kRegistrationRejected);
    return;
  }
  std::optional<Errc> verdict = check_registration(entry, req);
  const NodeId client = req.client;
  std::vector<NodeId> members = vss::escrow_ids(cfg_);
  members.push_back(client);
  auto ep = net_.open("reg/" + std::to_string(entry.seq), index_, members);
  MpcContext<G1> ctx(ck_, cfg_, *ep, rng_, options_.behavior);

  ByteWriter status;
  status.u8(verdict ? 0 : 1).u32(verdict ? static_cast<uint32_t>(*verdict) : 0);
  ctx.send(client, kRegStatus, status.view());
  try {
    ctx.end_round();
  } catch (const Error& e) {
    reject(entry.seq, EntryKind::kRegister, e.code());
    return;
  }
  if (verdict) {
    reject(entry.seq, EntryKind::kRegister, *verdict);
    return;
  }

  const std::string& identity = req.cert.identity;
  const int64_t period = entry.time_ms / options_.quota_period_ms;
  uint32_t& used = quota_[{identity, period}];
  used += req.count;
  ByteWriter qw;
  qw.str(identity).u64(static_cast<uint64_t>(period)).u32(used);
  persist(kQuotaRecord, qw.view());

  ++metrics_.mpc_sessions;
  uint32_t done = 0;
  try {
    for (uint32_t key = 0; key < req.count; ++key) {
      vss::VssExchangeSpec<G1> spec;
      spec.tag = "reg" + std::to_string(key);
      spec.degree = cfg_.f;
      spec.dealers = {client};
      spec.receivers = vss::escrow_ids(cfg_);
      spec.audience = members;
      spec.behavior = options_.behavior;
      spec.close_round = [&] { return ctx.end_round(); };
      auto ex = vss::run_vss_exchange(ck_, *ep, spec);
      auto got = ex.received.find(client);
      if (got == ex.received.end()) throw Error(Errc::kBadDealing, "client dealing rejected");
      const Shared& x = got->second;
      dvrf::dvrf(ctx, keys_->sk_i, x, true, vss::Recipient::to_client(client));
      ++metrics_.dvrf.registration;
      auto r = dvrf::dvrf(ctx, keys_->sk_r, x, false, vss::Recipient::escrows());
      ++metrics_.dvrf.registration;
      metrics_.dvrf_by_identity[identity] += 2;
      Bytes k = identity_key(r->value);
      identities_[k] = identity;
      ByteWriter iw;
      iw.bytes(k).str(identity);
      persist(kIdentityRecord, iw.view());
      ++done;
    }
    ByteWriter dw;
    dw.u32(done);
    ctx.send(client, kRegDone, dw.view());
    ctx.end_round();
  } catch (const IdentifiableAbort& e) {
    absorb_reports(ctx);
    bool named = false;
    for (const AbortReport& r : ctx.reports()) named = named || r.culprit == e.report().culprit;
    if (!named && e.report().culprit != 0) reports_.push_back(e.report());
    reject(entry.seq, EntryKind::kRegister, e.code());
    return;
  } catch (const Error& e) {
    absorb_reports(ctx);
    reject(entry.seq, EntryKind::kRegister, e.code());
    return;
  }
  absorb_reports(ctx);
}

// ---- filing ----

std::optional<Errc> Escrow::check_filing(const FilingPackage& pkg) const {
  if (pkg.t == 0) return Errc::kInvalidConfig;
  if (pkg.sealed_shares.size() != cfg_.n || pkg.pk.is_identity()) return Errc::kDecode;
  if (!crypto::verify(pkg.pk, pkg.signed_body(), pkg.signature)) return Errc::kBadSignature;
  if (!dvrf::verify_vrf(keys_->pk_i, pkg.mac_proof, pk_scalar(pkg.pk))) return Errc::kUnknownMac;
  if (allegations_.count(pkg.id())) return Errc::kReusedKey;
  return std::nullopt;
}

std::optional<vss::Share> Escrow::own_share(const FilingPackage& pkg, vss::Share* k_out) const {
  try {
    Bytes plain = crypto::ecies_open(identity_.sk, pkg.sealed_shares[index_ - 1], share_aad(pkg.pk, index_));
    auto [m, k] = decode_share_pair(plain);
    if (m.index != index_ || k.index != index_ || !vss::verify_share(ck_, pkg.m_commitments, m) ||
        !vss::verify_share(ck_, pkg.k_commitments, k)) {
      return std::nullopt;
    }
    *k_out = k;
    return m;
  } catch (const Error&) {
    return std::nullopt;
  }
}

// One round in which escrows whose sealed share is unusable complain with the
// ECIES shared point and a proof that it is theirs. Returns false when some
// complaint holds up, i.e. the alleger dealt badly.
bool Escrow::vote_on_filing(MpcContext<G1>& ctx, const FilingPackage& pkg, bool mine_ok) {
  const std::string& session = ctx.endpoint().session();
  if (!mine_ok) {
    ByteWriter w;
    try {
      G1 e = crypto::ecies_ephemeral(pkg.sealed_shares[index_ - 1]);
      G1 shared = e.pow(identity_.sk);
      auto proof = vss::prove_dleq(ck_, e, identity_.pk, shared, identity_.sk, ck_.field->zero(),
                                   complaint_context(session, index_), rng_);
      w.u8(1).raw(shared.to_bytes()).bytes(proof.encode());
    } catch (const Error&) {
      w.u8(0);  // malformed ephemeral key, checkable by anyone
    }
    ctx.send_escrows(kFileComplaint, w.view());
  }
  transport::Inbox in = ctx.end_round();

  bool bad_dealing = false;
  for (NodeId j : ctx.escrows()) {
    if (j == index_) {
      bad_dealing = bad_dealing || !mine_ok;
      continue;
    }
    const transport::Message* m = in.get(j, kFileComplaint);
    if (m == nullptr) continue;
    const Bytes& sealed = pkg.sealed_shares[j - 1];
    bool valid = false;
    try {
      ByteReader r(m->body);
      uint8_t mode = r.u8();
      std::optional<G1> e;
      try {
        e = crypto::ecies_ephemeral(sealed);
      } catch (const Error&) {
      }
      if (mode == 0) {
        valid = !e.has_value();
      } else if (e) {
        G1 shared = G1::from_bytes(r.raw(G1::kBytes));
        auto proof = vss::DleqProof<G1, G1>::decode(ck_.g, *e, *ck_.field, r.bytes(4096));
        r.expect_done();
        if (vss::verify_dleq(ck_, *e, directory_.escrow(j), shared, proof, complaint_context(session, j))) {
          valid = share_is_bad(ck_, pkg, j,
                               [&] { return crypto::ecies_open_shared(shared, sealed, share_aad(pkg.pk, j)); });
        }
      }
    } catch (const Error&) {
      valid = false;
    }
    if (valid) {
      bad_dealing = true;
    } else {
      ctx.report(j, "filing_vote");
    }
  }
  return !bad_dealing;
}

const Shared& Escrow::bucket_key(MpcContext<G1>& ctx, uint32_t i) {
  auto it = keys_->bucket_keys.find(i);
  if (it != keys_->bucket_keys.end()) return it->second;
  Shared k = vss::random_coin_toss(ctx);
  ++metrics_.coin_tosses;
  ByteWriter w;
  w.u32(i);
  write_shared(w, k);
  persist(kBucketKeyRecord, w.view());
  return keys_->bucket_keys.emplace(i, std::move(k)).first->second;
}

bucketing::MatchTag Escrow::match_tag(MpcContext<G1>& ctx, uint32_t bucket, const Shared& m) {
  const Shared& key = bucket_key(ctx, bucket);
  auto v = dvrf::dvrf(ctx, key, m, false, vss::Recipient::escrows());
  ++metrics_.dvrf.matching;
  auto d = sha256(v->value.to_bytes());
  return Bytes(d.begin(), d.end());
}

void Escrow::reveal_new(MpcContext<G1>& ctx, uint64_t seq) {
  for (const auto& id : bucketing::revealed_set(buckets_)) {
    if (revealed_done_.count(id)) continue;
    const AllegationRecord& rec = allegations_.at(id);
    Shared x = vss::public_constant(ck_, pk_scalar(rec.pk), index_, cfg_.f);
    auto r = dvrf::dvrf(ctx, keys_->sk_r, x, false, vss::Recipient::escrows());
    ++metrics_.dvrf.reveal;
    metrics_.dvrf_by_allegation[id] += 1;
    RevealedAllegation out;
    out.t = rec.t;
    out.id = id;
    out.seq = seq;
    auto who = identities_.find(identity_key(r->value));
    out.identity = who == identities_.end() ? std::string() : who->second;
    Scalar k = vss::open(ctx, rec.k);
    try {
      out.text = crypto::aead_open(crypto::key_from_scalar(k), rec.ciphertext, allegation_aad(rec.pk, rec.t));
    } catch (const Error& e) {
      if (e.code() != Errc::kDecryptFailure) throw;
      out.decrypt_ok = false;
    }
    revealed_done_.insert(id);
    reveals_.push_back(std::move(out));
  }
}

void Escrow::handle_filing(const BoardEntry& entry, ByteView body) {
  FilingPackage pkg;
  try {
    pkg = FilingPackage::decode(body, cfg_.f);
  } catch (const Error&) {
    reject(entry.seq, EntryKind::kFiling, Errc::kDecode);
    return;
  }
  if (auto code = check_filing(pkg)) {
    reject(entry.seq, EntryKind::kFiling, *code);
    return;
  }

  auto ep = net_.open("file/" + std::to_string(entry.seq), index_, vss::escrow_ids(cfg_));
  MpcContext<G1> ctx(ck_, cfg_, *ep, rng_, options_.behavior);
  ++metrics_.mpc_sessions;

  const bucketing::AllegationId id = pkg.id();
  const bucketing::BucketMap saved = buckets_;
  const size_t saved_reveals = reveals_.size();
  try {
    vss::Share k_share;
    std::optional<vss::Share> m_share = own_share(pkg, &k_share);
    if (!vote_on_filing(ctx, pkg, m_share.has_value())) {
      absorb_reports(ctx);
      reject(entry.seq, EntryKind::kFiling, Errc::kBadDealing);
      return;
    }
    if (!m_share) throw Error(Errc::kInvariantViolation, "own share unusable but no complaint upheld");
    AllegationRecord rec{pkg.t, pkg.pk, pkg.ciphertext, {*m_share, pkg.m_commitments},
                         {k_share, pkg.k_commitments}, entry.seq};
    allegations_[id] = rec;

    bucketing::file_allegation(buckets_, id, pkg.t, match_tag(ctx, pkg.t - 1, rec.m));
    metrics_.dvrf_by_allegation[id] += 1;
    bucketing::saturate(buckets_, [&](const bucketing::Task& task) {
      for (const auto& c : bucketing::collections(buckets_)) {
        if (!c.members.count(task.id)) continue;
        for (const auto& member : c.members) metrics_.dvrf_by_allegation[member] += 1.0 / c.size();
      }
      return match_tag(ctx, task.i, allegations_.at(task.id).m);
    });
    reveal_new(ctx, entry.seq);
  } catch (const Error& e) {
    absorb_reports(ctx);
    if (const auto* abort = dynamic_cast<const IdentifiableAbort*>(&e)) {
      bool named = false;
      for (const AbortReport& r : ctx.reports()) named = named || r.culprit == abort->report().culprit;
      if (!named && abort->report().culprit != 0) reports_.push_back(abort->report());
    }
    buckets_ = saved;
    allegations_.erase(id);
    for (size_t i = saved_reveals; i < reveals_.size(); ++i) revealed_done_.erase(reveals_[i].id);
    reveals_.resize(saved_reveals);
    reject(entry.seq, EntryKind::kFiling, e.code());
    return;
  }
  absorb_reports(ctx);

  persist(kAllegationRecord, encode_record(allegations_.at(id)));
  persist(kBucketsRecord, buckets_.encode());
  std::ofstream log;
  if (!options_.reveal_log_path.empty() && reveals_.size() > saved_reveals) {
    log.open(options_.reveal_log_path, std::ios::app);
    if (!log) throw Error(Errc::kIo, "cannot open reveal log " + options_.reveal_log_path);
  }
  for (size_t i = saved_reveals; i < reveals_.size(); ++i) {
    persist(kRevealRecord, encode_reveal(reveals_[i]));
    if (log.is_open()) log << reveal_json(reveals_[i]) << '\n';
  }
}

}  // namespace sae::escrow
