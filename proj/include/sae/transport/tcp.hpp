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

#ifndef SAE_TRANSPORT_TCP_HPP_
#define SAE_TRANSPORT_TCP_HPP_

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "sae/crypto/ca.hpp"
#include "sae/transport/board.hpp"
#include "sae/transport/network.hpp"

namespace sae::transport {

// The board server authenticates as this id.
inline constexpr NodeId kBoardId = 0;

struct Address {
  std::string host = "127.0.0.1";
  uint16_t port = 0;
};

Address parse_address(const std::string& host_port);

// Keys a peer must prove possession of: escrows and the board by id,
// clients through a certificate from `ca`.
struct PeerKeys {
  std::map<NodeId, G1> escrows;
  G1 ca;
  std::optional<G1> board;
};

struct NodeIdentity {
  NodeId id = 0;
  crypto::KeyPair key;
  std::optional<crypto::Certificate> cert;  // clients only
};

// Mutually authenticated, encrypted, ordered duplex link. The handshake
// signs fresh ephemeral DH shares plus both hellos; frames are AES-GCM with
// per-direction keys and counter nonces, so replayed, reordered or forged
// frames fail to open.
class SecureLink {
 public:
  ~SecureLink();

  static std::unique_ptr<SecureLink> connect(const Address& to, const NodeIdentity& self, const PeerKeys& keys,
                                             std::optional<NodeId> expect, std::chrono::milliseconds timeout);
  // Takes ownership of an accepted socket.
  static std::unique_ptr<SecureLink> accept(int fd, const NodeIdentity& self, const PeerKeys& keys,
                                            std::chrono::milliseconds timeout);

  NodeId peer() const { return peer_; }
  const G1& peer_key() const { return peer_key_; }

  // Thread-safe.
  void send(ByteView frame);
  // nullopt on orderly close. Throws kDecryptFailure, kDecode or kIo.
  std::optional<Bytes> recv();
  // Unblocks pending recv() calls.
  void close();

 private:
  SecureLink() = default;
  static std::unique_ptr<SecureLink> handshake(int fd, bool initiator, const NodeIdentity& self, const PeerKeys& keys,
                                               std::optional<NodeId> expect, std::chrono::milliseconds timeout);

  int fd_ = -1;
  NodeId peer_ = 0;
  G1 peer_key_;
  std::array<uint8_t, 32> send_key_{};
  std::array<uint8_t, 32> recv_key_{};
  uint64_t send_ctr_ = 0;
  uint64_t recv_ctr_ = 0;
  std::mutex send_mu_;
  std::atomic<bool> closed_{false};
};

// Round-synchronous sessions over pairwise SecureLinks. A round closes when
// every live member has sent its END marker for it, or at the round bound;
// members missing at the bound are reported in Inbox::timed_out(). Escrow i
// dials escrows below i; clients dial every escrow; nobody dials a client.
class TcpNetwork : public Network {
 public:
  struct Options {
    std::chrono::milliseconds round_timeout{20000};
    std::chrono::milliseconds connect_timeout{10000};
    std::chrono::milliseconds link_delay{0};  // added to every outgoing frame
  };

  TcpNetwork(NodeIdentity self, PeerKeys keys, Options opts);
  ~TcpNetwork() override;

  // Returns the bound port (port 0 picks a free one).
  uint16_t listen(const Address& bind);
  // Dials each peer, retrying until connect_timeout. Throws kTimeout.
  void connect(const std::map<NodeId, Address>& peers);
  // Throws kTimeout unless links to all `peers` come up in time.
  void wait_for_peers(const std::vector<NodeId>& peers, std::chrono::milliseconds timeout);

  std::unique_ptr<Endpoint> open(const std::string& session, NodeId self, std::vector<NodeId> members) override;

  void set_link_delay(std::chrono::milliseconds d) { delay_us_ = d.count() * 1000; }
  NodeId self() const { return self_.id; }
  std::set<NodeId> connected() const;
  uint64_t frames_sent() const { return frames_.load(); }
  uint64_t frames_rejected() const { return rejected_.load(); }

 private:
  friend class TcpEndpoint;
  struct Link;
  struct Session;

  // Null when the link is refused.
  std::shared_ptr<Link> add_link(std::unique_ptr<SecureLink> link, bool accepted);
  void reader(std::shared_ptr<Link> l);
  void on_frame(NodeId from, ByteView frame);
  void transmit(NodeId to, Bytes frame);
  std::shared_ptr<Session> session_locked(const std::string& id);
  void close_session(const std::string& id);

  NodeIdentity self_;
  PeerKeys keys_;
  Options opts_;
  std::atomic<int64_t> delay_us_{0};
  std::atomic<bool> stop_{false};
  int listen_fd_ = -1;
  std::thread acceptor_;

  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::map<NodeId, std::shared_ptr<Link>> links_;
  std::vector<std::shared_ptr<Link>> all_links_;
  std::vector<std::thread> handshakes_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::set<std::string> closed_;
  std::atomic<uint64_t> frames_{0};
  std::atomic<uint64_t> rejected_{0};
};

// Serves an InMemoryBoard to authenticated nodes. Named posts carry the
// link's authenticated id; anonymous posts are stored without any sender.
class BoardServer {
 public:
  BoardServer(NodeIdentity self, PeerKeys keys, std::chrono::milliseconds handshake_timeout = std::chrono::seconds(10));
  ~BoardServer();

  uint16_t listen(const Address& bind);
  void stop();
  InMemoryBoard& board() { return board_; }

 private:
  void serve(std::unique_ptr<SecureLink> link);

  NodeIdentity self_;
  PeerKeys keys_;
  std::chrono::milliseconds timeout_;
  InMemoryBoard board_;
  std::atomic<bool> stop_{false};
  int listen_fd_ = -1;
  std::thread acceptor_;
  std::mutex mu_;
  std::vector<std::thread> workers_;
  std::vector<SecureLink*> live_;
};

// BulletinBoard client; connects on first use. Calls are serialized.
class RemoteBoard : public BulletinBoard {
 public:
  RemoteBoard(Address server, NodeIdentity self, PeerKeys keys,
              std::chrono::milliseconds connect_timeout = std::chrono::seconds(10));
  ~RemoteBoard() override;

  uint64_t post(Bytes payload, std::optional<NodeId> sender) override;
  std::vector<BoardEntry> read(uint64_t since) override;
  std::vector<BoardEntry> wait(uint64_t since, std::chrono::milliseconds timeout) override;

 private:
  Bytes call(const Bytes& request);

  Address server_;
  NodeIdentity self_;
  PeerKeys keys_;
  std::chrono::milliseconds timeout_;
  std::mutex mu_;
  std::unique_ptr<SecureLink> link_;
};

}  // namespace sae::transport

#endif  // SAE_TRANSPORT_TCP_HPP_
