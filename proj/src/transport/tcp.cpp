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

#include "sae/transport/tcp.hpp"

#include <arpa/inet.h>
#include <fcntl.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <deque>

#include "sae/algebra/hash.hpp"
#include "sae/crypto/aead.hpp"
#include "sae/errors.hpp"

namespace sae::transport {

namespace {

using Clock = std::chrono::steady_clock;

constexpr uint8_t kHelloVersion = 1;
constexpr uint32_t kMaxHandshake = 1u << 16;
constexpr uint32_t kMaxFrame = 1u << 26;
constexpr std::string_view kTranscriptTag = "SAE-v1-tcp";

enum FrameKind : uint8_t { kMsg = 1, kEnd = 2, kLeave = 3, kReady = 4 };
enum BoardOp : uint8_t { kPost = 1, kRead = 2, kWait = 3 };

Error io_error(const std::string& what) { return Error(Errc::kIo, what + ": " + std::strerror(errno)); }

// Waits for `events` until the deadline; false on timeout.
bool wait_fd(int fd, short events, std::optional<Clock::time_point> deadline) {
  for (;;) {
    int ms = -1;
    if (deadline) {
      auto left = std::chrono::duration_cast<std::chrono::milliseconds>(*deadline - Clock::now()).count();
      if (left <= 0) return false;
      ms = static_cast<int>(std::min<int64_t>(left, 1 << 30));
    }
    pollfd p{fd, events, 0};
    int r = ::poll(&p, 1, ms);
    if (r > 0) return true;
    if (r == 0) return false;
    if (errno != EINTR) throw io_error("poll");
  }
}

void write_all(int fd, ByteView b) {
  size_t off = 0;
  while (off < b.size()) {
    ssize_t w = ::send(fd, b.data() + off, b.size() - off, MSG_NOSIGNAL);
    if (w < 0) {
      if (errno == EINTR) continue;
      throw io_error("send");
    }
    off += static_cast<size_t>(w);
  }
}

// false on EOF before the first byte.
bool read_exact(int fd, uint8_t* out, size_t n, std::optional<Clock::time_point> deadline) {
  size_t off = 0;
  while (off < n) {
    if (deadline && !wait_fd(fd, POLLIN, deadline)) throw Error(Errc::kTimeout, "read timed out");
    ssize_t r = ::recv(fd, out + off, n - off, 0);
    if (r < 0) {
      if (errno == EINTR) continue;
      throw io_error("recv");
    }
    if (r == 0) {
      if (off == 0) return false;
      throw Error(Errc::kIo, "connection closed mid-frame");
    }
    off += static_cast<size_t>(r);
  }
  return true;
}

void write_frame(int fd, ByteView body) {
  ByteWriter w;
  w.u32(static_cast<uint32_t>(body.size())).raw(body);
  write_all(fd, w.view());
}

std::optional<Bytes> read_frame(int fd, uint32_t max, std::optional<Clock::time_point> deadline) {
  uint8_t len[4];
  if (!read_exact(fd, len, 4, deadline)) return std::nullopt;
  uint32_t n = (uint32_t{len[0]} << 24) | (uint32_t{len[1]} << 16) | (uint32_t{len[2]} << 8) | len[3];
  if (n > max) throw Error(Errc::kDecode, "frame too large");
  Bytes body(n);
  if (n > 0 && !read_exact(fd, body.data(), n, deadline)) throw Error(Errc::kIo, "connection closed mid-frame");
  return body;
}

Bytes counter_nonce(uint64_t ctr) {
  ByteWriter w;
  w.u32(0).u64(ctr);
  return w.take();
}

crypto::AeadKey derive_key(ByteView ikm, ByteView salt, std::string_view info) {
  Bytes k = crypto::hkdf(ikm, info, 32, salt);
  crypto::AeadKey out{};
  std::copy(k.begin(), k.end(), out.begin());
  return out;
}

void set_nodelay(int fd) {
  int one = 1;
  ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
}

int dial(const Address& to) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  std::string port = std::to_string(to.port);
  if (int rc = ::getaddrinfo(to.host.c_str(), port.c_str(), &hints, &res); rc != 0) {
    throw Error(Errc::kIo, "resolve " + to.host + ": " + ::gai_strerror(rc));
  }
  int fd = -1;
  for (addrinfo* a = res; a; a = a->ai_next) {
    fd = ::socket(a->ai_family, a->ai_socktype, a->ai_protocol);
    if (fd < 0) continue;
    if (::connect(fd, a->ai_addr, a->ai_addrlen) == 0) break;
    ::close(fd);
    fd = -1;
  }
  ::freeaddrinfo(res);
  if (fd < 0) throw io_error("connect " + to.host + ":" + port);
  set_nodelay(fd);
  return fd;
}

std::pair<int, uint16_t> bind_listener(const Address& bind) {
  int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd < 0) throw io_error("socket");
  int one = 1;
  ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(bind.port);
  if (::inet_pton(AF_INET, bind.host.c_str(), &addr.sin_addr) != 1) {
    ::close(fd);
    throw Error(Errc::kInvalidConfig, "bad listen address " + bind.host);
  }
  if (::bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0 || ::listen(fd, 64) != 0) {
    int e = errno;
    ::close(fd);
    errno = e;
    throw io_error("listen on " + bind.host + ":" + std::to_string(bind.port));
  }
  socklen_t len = sizeof(addr);
  ::getsockname(fd, reinterpret_cast<sockaddr*>(&addr), &len);
  return {fd, ntohs(addr.sin_port)};
}

// Accepts until the listener is shut down.
template <typename OnConn>
void accept_loop(int listen_fd, const std::atomic<bool>& stop, OnConn&& on_conn) {
  while (!stop) {
    if (!wait_fd(listen_fd, POLLIN, Clock::now() + std::chrono::milliseconds(200))) continue;
    int fd = ::accept(listen_fd, nullptr, nullptr);
    if (fd < 0) {
      if (errno == EINTR || errno == EAGAIN || errno == ECONNABORTED) continue;
      return;
    }
    set_nodelay(fd);
    on_conn(fd);
  }
}

Bytes hello(const NodeIdentity& self, const G1& eph, ByteView nonce) {
  ByteWriter w;
  w.u8(kHelloVersion).u32(self.id).raw(eph.to_bytes()).raw(nonce).u8(self.cert ? 1 : 0);
  if (self.cert) w.bytes(self.cert->encode());
  return w.take();
}

struct PeerHello {
  NodeId id;
  G1 eph;
  std::optional<crypto::Certificate> cert;
};

PeerHello parse_hello(ByteView b) {
  ByteReader r(b);
  if (r.u8() != kHelloVersion) throw Error(Errc::kDecode, "unsupported handshake version");
  PeerHello h;
  h.id = r.u32();
  h.eph = G1::from_bytes(r.raw(G1::kBytes));
  r.raw(32);
  if (r.u8() == 1) h.cert = crypto::Certificate::decode(r.bytes());
  r.expect_done();
  return h;
}

// The key a peer claiming `h.id` must sign with.
G1 expected_key(const PeerHello& h, const PeerKeys& keys) {
  if (h.id == kBoardId) {
    if (!keys.board) throw Error(Errc::kBadCertificate, "board key unknown");
    return *keys.board;
  }
  if (h.id < kFirstClientId) {
    auto it = keys.escrows.find(h.id);
    if (it == keys.escrows.end()) throw Error(Errc::kBadCertificate, "unknown escrow " + std::to_string(h.id));
    return it->second;
  }
  if (!h.cert || !crypto::verify_certificate(keys.ca, *h.cert)) {
    throw Error(Errc::kBadCertificate, "client " + std::to_string(h.id) + " lacks a valid certificate");
  }
  return h.cert->key;
}

}  // namespace

Address parse_address(const std::string& host_port) {
  auto colon = host_port.rfind(':');
  if (colon == std::string::npos) throw Error(Errc::kInvalidConfig, "expected host:port, got " + host_port);
  Address a;
  a.host = host_port.substr(0, colon);
  try {
    unsigned long p = std::stoul(host_port.substr(colon + 1));
    if (p > 65535) throw std::out_of_range("port");
    a.port = static_cast<uint16_t>(p);
  } catch (const std::exception&) {
    throw Error(Errc::kInvalidConfig, "bad port in " + host_port);
  }
  return a;
}

// ---------------------------------------------------------------- SecureLink

SecureLink::~SecureLink() {
  close();
  if (fd_ >= 0) ::close(fd_);
}

std::unique_ptr<SecureLink> SecureLink::handshake(int fd, bool initiator, const NodeIdentity& self,
                                                  const PeerKeys& keys, std::optional<NodeId> expect,
                                                  std::chrono::milliseconds timeout) {
  auto guard = std::unique_ptr<int, void (*)(int*)>(&fd, [](int* p) { ::close(*p); });
  auto deadline = Clock::now() + timeout;
  Rng rng = Rng::from_os();
  crypto::KeyPair eph = crypto::KeyPair::generate(rng);
  Bytes mine = hello(self, eph.pk, rng.bytes(32));
  write_frame(fd, mine);
  auto theirs = read_frame(fd, kMaxHandshake, deadline);
  if (!theirs) throw Error(Errc::kIo, "peer closed during handshake");
  PeerHello ph = parse_hello(*theirs);
  if (expect && ph.id != *expect) {
    throw Error(Errc::kBadCertificate, "expected node " + std::to_string(*expect) + ", got " + std::to_string(ph.id));
  }
  G1 peer_key = expected_key(ph, keys);

  const Bytes& hi = initiator ? mine : *theirs;
  const Bytes& hr = initiator ? *theirs : mine;
  ByteWriter t;
  t.str(kTranscriptTag).bytes(hi).bytes(hr);
  Bytes transcript = t.take();
  auto signed_by = [&](bool as_initiator) {
    Bytes m = transcript;
    m.push_back(as_initiator ? 0 : 1);
    return m;
  };
  write_frame(fd, crypto::sign(self.key, signed_by(initiator), rng).encode());
  auto sig = read_frame(fd, kMaxHandshake, deadline);
  // Closing after the hellos means the peer rejected our credentials.
  if (!sig) throw Error(Errc::kBadCertificate, "node " + std::to_string(ph.id) + " refused the handshake");
  if (!crypto::verify(peer_key, signed_by(!initiator), crypto::Signature::decode(*sig))) {
    throw Error(Errc::kBadSignature, "handshake signature from node " + std::to_string(ph.id));
  }

  Bytes shared = ph.eph.pow(eph.sk).to_bytes();
  auto salt = sha256(transcript);
  crypto::AeadKey i2r = derive_key(shared, salt, "SAE-v1-tcp i2r");
  crypto::AeadKey r2i = derive_key(shared, salt, "SAE-v1-tcp r2i");
  std::unique_ptr<SecureLink> link(new SecureLink());
  guard.release();
  link->fd_ = fd;
  link->peer_ = ph.id;
  link->peer_key_ = peer_key;
  link->send_key_ = initiator ? i2r : r2i;
  link->recv_key_ = initiator ? r2i : i2r;
  return link;
}

std::unique_ptr<SecureLink> SecureLink::connect(const Address& to, const NodeIdentity& self, const PeerKeys& keys,
                                                std::optional<NodeId> expect, std::chrono::milliseconds timeout) {
  return handshake(dial(to), true, self, keys, expect, timeout);
}

std::unique_ptr<SecureLink> SecureLink::accept(int fd, const NodeIdentity& self, const PeerKeys& keys,
                                               std::chrono::milliseconds timeout) {
  return handshake(fd, false, self, keys, std::nullopt, timeout);
}

void SecureLink::send(ByteView frame) {
  std::lock_guard<std::mutex> lock(send_mu_);
  if (closed_) throw Error(Errc::kIo, "link closed");
  Bytes sealed = crypto::aead_seal_with_nonce(send_key_, counter_nonce(send_ctr_++), frame, {});
  write_frame(fd_, sealed);
}

std::optional<Bytes> SecureLink::recv() {
  auto sealed = read_frame(fd_, kMaxFrame, std::nullopt);
  if (!sealed) return std::nullopt;
  Bytes nonce = counter_nonce(recv_ctr_++);
  if (sealed->size() < nonce.size() || !std::equal(nonce.begin(), nonce.end(), sealed->begin())) {
    throw Error(Errc::kDecryptFailure, "out-of-order frame");
  }
  return crypto::aead_open(recv_key_, *sealed, {});
}

void SecureLink::close() {
  if (!closed_.exchange(true) && fd_ >= 0) ::shutdown(fd_, SHUT_RDWR);
}

// ---------------------------------------------------------------- TcpNetwork

struct TcpNetwork::Link {
  std::unique_ptr<SecureLink> link;
  std::mutex mu;
  std::condition_variable cv;
  std::deque<std::pair<Clock::time_point, Bytes>> queue;
  std::atomic<bool> dead{false};
  std::atomic<bool> ready{false};  // the acceptor has registered the link
  std::thread writer;
  std::thread reader;
};

struct TcpNetwork::Session {
  bool opened = false;
  std::vector<NodeId> members;
  uint32_t floor = 0;  // rounds below this are closed locally
  std::map<uint32_t, std::vector<Message>> msgs;
  std::map<uint32_t, std::set<NodeId>> ends;
  std::set<NodeId> left;
};

class TcpEndpoint : public Endpoint {
 public:
  TcpEndpoint(TcpNetwork* net, std::shared_ptr<TcpNetwork::Session> s, std::string id)
      : net_(net), s_(std::move(s)), id_(std::move(id)) {}
  ~TcpEndpoint() override { leave(); }

  NodeId self() const override { return net_->self_.id; }
  const std::string& session() const override { return id_; }
  const std::vector<NodeId>& members() const override { return s_->members; }
  uint32_t round() const override { return round_; }

  void send(NodeId to, std::string_view type, Bytes body) override {
    if (left_) return;
    if (std::find(s_->members.begin(), s_->members.end(), to) == s_->members.end()) {
      throw Error(Errc::kInvalidConfig, "send to non-member " + std::to_string(to));
    }
    uint64_t seq = seq_++;
    if (to == self()) {
      std::lock_guard<std::mutex> lock(net_->mu_);
      s_->msgs[round_].push_back(Message{self(), round_, seq, std::string(type), std::move(body)});
      return;
    }
    ByteWriter w;
    w.u8(kMsg).str(id_).u32(round_).u64(seq).str(type).bytes(body);
    net_->transmit(to, w.take());
  }

  Inbox end_round() override {
    if (left_) throw Error(Errc::kInvalidConfig, "end_round after leave");
    const uint32_t r = round_++;
    ByteWriter w;
    w.u8(kEnd).str(id_).u32(r);
    Bytes marker = w.take();
    for (NodeId m : s_->members) {
      if (m != self()) net_->transmit(m, marker);
    }
    std::unique_lock<std::mutex> lock(net_->mu_);
    auto deadline = Clock::now() + net_->opts_.round_timeout;
    // Peers without a live link are waited for too: they surface as late.
    auto pending = [&] {
      std::set<NodeId> out;
      for (NodeId m : s_->members) {
        if (m != self() && !s_->left.count(m) && !s_->ends[r].count(m)) out.insert(m);
      }
      return out;
    };
    while (!pending().empty() && net_->cv_.wait_until(lock, deadline) != std::cv_status::timeout) {
    }
    std::set<NodeId> late = pending();
    std::vector<Message> msgs = std::move(s_->msgs[r]);
    s_->msgs.erase(r);
    s_->ends.erase(r);
    s_->floor = round_;
    lock.unlock();
    std::erase_if(msgs, [&](const Message& m) {
      return std::find(s_->members.begin(), s_->members.end(), m.sender) == s_->members.end();
    });
    std::stable_sort(msgs.begin(), msgs.end(), [](const Message& a, const Message& b) {
      return std::tie(a.sender, a.seq) < std::tie(b.sender, b.seq);
    });
    return Inbox(std::move(msgs), std::move(late));
  }

  void leave() override {
    if (left_) return;
    left_ = true;
    ByteWriter w;
    w.u8(kLeave).str(id_);
    Bytes marker = w.take();
    for (NodeId m : s_->members) {
      if (m != self()) net_->transmit(m, marker);
    }
    net_->close_session(id_);
  }

 private:
  TcpNetwork* net_;
  std::shared_ptr<TcpNetwork::Session> s_;
  std::string id_;
  uint32_t round_ = 0;
  uint64_t seq_ = 0;
  bool left_ = false;
};

TcpNetwork::TcpNetwork(NodeIdentity self, PeerKeys keys, Options opts)
    : self_(std::move(self)), keys_(std::move(keys)), opts_(opts) {
  delay_us_ = opts_.link_delay.count() * 1000;
}

TcpNetwork::~TcpNetwork() {
  stop_ = true;
  if (listen_fd_ >= 0) ::shutdown(listen_fd_, SHUT_RDWR);
  if (acceptor_.joinable()) acceptor_.join();
  if (listen_fd_ >= 0) ::close(listen_fd_);
  std::vector<std::thread> hs;
  {
    std::lock_guard<std::mutex> lock(mu_);
    hs = std::move(handshakes_);
  }
  for (auto& t : hs) t.join();
  std::vector<std::shared_ptr<Link>> links;
  {
    std::lock_guard<std::mutex> lock(mu_);
    links = all_links_;
  }
  for (auto& l : links) {
    {
      std::lock_guard<std::mutex> lock(l->mu);
      l->dead = true;
    }
    l->cv.notify_all();
    l->link->close();
  }
  for (auto& l : links) {
    if (l->writer.joinable()) l->writer.join();
    if (l->reader.joinable()) l->reader.join();
  }
}

uint16_t TcpNetwork::listen(const Address& bind) {
  auto [fd, port] = bind_listener(bind);
  listen_fd_ = fd;
  acceptor_ = std::thread([this] {
    accept_loop(listen_fd_, stop_, [this](int cfd) {
      std::lock_guard<std::mutex> lock(mu_);
      handshakes_.emplace_back([this, cfd] {
        try {
          auto link = SecureLink::accept(cfd, self_, keys_, opts_.connect_timeout);
          // Escrows only accept lower-numbered peers' dials from above, and clients.
          if (link->peer() != kBoardId && (link->peer() >= kFirstClientId || link->peer() > self_.id)) {
            add_link(std::move(link), true);
          } else {
            rejected_++;
          }
        } catch (const std::exception&) {
          rejected_++;
        }
      });
    });
  });
  return port;
}

void TcpNetwork::connect(const std::map<NodeId, Address>& peers) {
  auto deadline = Clock::now() + opts_.connect_timeout;
  for (const auto& [id, addr] : peers) {
    std::shared_ptr<Link> l;
    for (;;) {
      try {
        l = add_link(SecureLink::connect(addr, self_, keys_, id, opts_.connect_timeout), false);
        break;
      } catch (const Error& e) {
        if (e.code() != Errc::kIo || Clock::now() >= deadline) {
          throw Error(e.code() == Errc::kIo ? Errc::kTimeout : e.code(),
                      "connecting to node " + std::to_string(id) + ": " + e.what());
        }
        std::this_thread::sleep_for(std::chrono::milliseconds(50));
      }
    }
    if (!l) throw Error(Errc::kInvalidConfig, "network stopped");
    std::unique_lock<std::mutex> lock(mu_);
    if (!cv_.wait_until(lock, deadline, [&] { return l->ready || l->dead; })) {
      throw Error(Errc::kTimeout, "node " + std::to_string(id) + " did not confirm the link");
    }
    if (!l->ready) throw Error(Errc::kBadCertificate, "node " + std::to_string(id) + " refused the link");
  }
}

void TcpNetwork::wait_for_peers(const std::vector<NodeId>& peers, std::chrono::milliseconds timeout) {
  std::unique_lock<std::mutex> lock(mu_);
  auto up = [&] {
    for (NodeId p : peers) {
      if (p == self_.id) continue;
      auto it = links_.find(p);
      if (it == links_.end() || it->second->dead || !it->second->ready) return false;
    }
    return true;
  };
  if (!cv_.wait_for(lock, timeout, up)) throw Error(Errc::kTimeout, "peers did not connect in time");
}

std::set<NodeId> TcpNetwork::connected() const {
  std::lock_guard<std::mutex> lock(mu_);
  std::set<NodeId> out;
  for (const auto& [id, l] : links_) {
    if (!l->dead && l->ready) out.insert(id);
  }
  return out;
}

std::shared_ptr<TcpNetwork::Link> TcpNetwork::add_link(std::unique_ptr<SecureLink> sl, bool accepted) {
  auto l = std::make_shared<Link>();
  l->link = std::move(sl);
  const NodeId peer = l->link->peer();
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (stop_) return nullptr;
    auto it = links_.find(peer);
    // A client id stays bound to the key that first claimed it.
    if (it != links_.end() && !it->second->dead && peer >= kFirstClientId &&
        !(it->second->link->peer_key() == l->link->peer_key())) {
      rejected_++;
      return nullptr;
    }
    if (it != links_.end()) {
      std::lock_guard<std::mutex> ll(it->second->mu);
      it->second->dead = true;
      it->second->cv.notify_all();
      it->second->link->close();
    }
    if (accepted) {
      // First frame on every accepted link; the dialer waits for it.
      ByteWriter w;
      w.u8(kReady).str("");
      l->queue.emplace_back(Clock::now(), w.take());
      l->ready = true;
    }
    links_[peer] = l;
    all_links_.push_back(l);
    l->writer = std::thread([l] {
      std::unique_lock<std::mutex> lock(l->mu);
      for (;;) {
        l->cv.wait(lock, [&] { return l->dead || !l->queue.empty(); });
        if (l->dead) return;
        auto [due, frame] = std::move(l->queue.front());
        l->queue.pop_front();
        lock.unlock();
        std::this_thread::sleep_until(due);
        try {
          l->link->send(frame);
        } catch (const Error&) {
          lock.lock();
          l->dead = true;
          return;
        }
        lock.lock();
      }
    });
    l->reader = std::thread([this, l] { reader(l); });
  }
  cv_.notify_all();
  return l;
}

void TcpNetwork::reader(std::shared_ptr<Link> l) {
  const NodeId peer = l->link->peer();
  try {
    while (auto frame = l->link->recv()) {
      if (!frame->empty() && (*frame)[0] == kReady) {
        {
          std::lock_guard<std::mutex> lock(mu_);
          l->ready = true;
        }
        cv_.notify_all();
        continue;
      }
      try {
        on_frame(peer, *frame);
      } catch (const Error&) {
        rejected_++;
      }
    }
  } catch (const Error&) {
    rejected_++;
  }
  {
    std::lock_guard<std::mutex> lock(l->mu);
    l->dead = true;
  }
  l->cv.notify_all();
  cv_.notify_all();
}

std::shared_ptr<TcpNetwork::Session> TcpNetwork::session_locked(const std::string& id) {
  auto& s = sessions_[id];
  if (!s) s = std::make_shared<Session>();
  return s;
}

void TcpNetwork::on_frame(NodeId from, ByteView frame) {
  ByteReader r(frame);
  uint8_t kind = r.u8();
  std::string sid = r.str();
  std::lock_guard<std::mutex> lock(mu_);
  if (closed_.count(sid)) return;
  auto s = session_locked(sid);
  if (kind == kLeave) {
    r.expect_done();
    s->left.insert(from);
  } else {
    uint32_t round = r.u32();
    if (kind == kEnd) {
      r.expect_done();
      if (round >= s->floor) s->ends[round].insert(from);
    } else if (kind == kMsg) {
      Message m;
      m.sender = from;
      m.round = round;
      m.seq = r.u64();
      m.type = r.str();
      m.body = r.bytes();
      r.expect_done();
      // Arrived after the local round closed: the receiver already saw bottom.
      if (round >= s->floor) s->msgs[round].push_back(std::move(m));
    } else {
      throw Error(Errc::kDecode, "unknown frame kind");
    }
  }
  cv_.notify_all();
}

void TcpNetwork::transmit(NodeId to, Bytes frame) {
  std::shared_ptr<Link> l;
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = links_.find(to);
    if (it == links_.end()) return;  // no link: the peer observes bottom
    l = it->second;
  }
  frames_++;
  auto due = Clock::now() + std::chrono::microseconds(delay_us_.load());
  {
    std::lock_guard<std::mutex> lock(l->mu);
    if (l->dead) return;
    l->queue.emplace_back(due, std::move(frame));
  }
  l->cv.notify_all();
}

std::unique_ptr<Endpoint> TcpNetwork::open(const std::string& session, NodeId self, std::vector<NodeId> members) {
  if (self != self_.id) throw Error(Errc::kInvalidConfig, "endpoint for a different node");
  std::sort(members.begin(), members.end());
  if (std::find(members.begin(), members.end(), self) == members.end()) {
    throw Error(Errc::kInvalidConfig, "self not among session members");
  }
  std::lock_guard<std::mutex> lock(mu_);
  closed_.erase(session);
  auto s = session_locked(session);
  if (s->opened) throw Error(Errc::kInvalidConfig, "session " + session + " already open");
  s->opened = true;
  s->members = std::move(members);
  return std::make_unique<TcpEndpoint>(this, std::move(s), session);
}

void TcpNetwork::close_session(const std::string& id) {
  std::lock_guard<std::mutex> lock(mu_);
  sessions_.erase(id);
  closed_.insert(id);
}

// ---------------------------------------------------------------- board

BoardServer::BoardServer(NodeIdentity self, PeerKeys keys, std::chrono::milliseconds handshake_timeout)
    : self_(std::move(self)), keys_(std::move(keys)), timeout_(handshake_timeout) {}

BoardServer::~BoardServer() { stop(); }

uint16_t BoardServer::listen(const Address& bind) {
  auto [fd, port] = bind_listener(bind);
  listen_fd_ = fd;
  acceptor_ = std::thread([this] {
    accept_loop(listen_fd_, stop_, [this](int cfd) {
      std::lock_guard<std::mutex> lock(mu_);
      workers_.emplace_back([this, cfd] {
        try {
          serve(SecureLink::accept(cfd, self_, keys_, timeout_));
        } catch (const std::exception&) {
        }
      });
    });
  });
  return port;
}

void BoardServer::stop() {
  if (stop_.exchange(true)) return;
  if (listen_fd_ >= 0) ::shutdown(listen_fd_, SHUT_RDWR);
  if (acceptor_.joinable()) acceptor_.join();
  if (listen_fd_ >= 0) ::close(listen_fd_);
  std::vector<std::thread> ws;
  {
    std::lock_guard<std::mutex> lock(mu_);
    for (SecureLink* l : live_) l->close();
    ws = std::move(workers_);
  }
  for (auto& t : ws) t.join();
}

void BoardServer::serve(std::unique_ptr<SecureLink> link) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (stop_) return;
    live_.push_back(link.get());
  }
  const NodeId peer = link->peer();
  try {
    while (auto req = link->recv()) {
      ByteReader r(*req);
      ByteWriter out;
      uint8_t op = r.u8();
      if (op == kPost) {
        bool anonymous = r.u8() != 0;
        Bytes payload = r.bytes();
        r.expect_done();
        out.u64(board_.post(std::move(payload), anonymous ? std::nullopt : std::optional<NodeId>(peer)));
      } else if (op == kRead || op == kWait) {
        uint64_t since = r.u64();
        std::vector<BoardEntry> entries;
        if (op == kWait) {
          auto ms = std::chrono::milliseconds(r.u32());
          r.expect_done();
          entries = board_.wait(since, ms);
        } else {
          r.expect_done();
          entries = board_.read(since);
        }
        out.u32(static_cast<uint32_t>(entries.size()));
        for (const auto& e : entries) out.bytes(encode_entry(e));
      } else {
        break;
      }
      link->send(out.view());
    }
  } catch (const std::exception&) {
  }
  std::lock_guard<std::mutex> lock(mu_);
  std::erase(live_, link.get());
}

RemoteBoard::RemoteBoard(Address server, NodeIdentity self, PeerKeys keys, std::chrono::milliseconds connect_timeout)
    : server_(std::move(server)), self_(std::move(self)), keys_(std::move(keys)), timeout_(connect_timeout) {}

RemoteBoard::~RemoteBoard() = default;

Bytes RemoteBoard::call(const Bytes& request) {
  std::lock_guard<std::mutex> lock(mu_);
  if (!link_) {
    auto deadline = Clock::now() + timeout_;
    for (;;) {
      try {
        link_ = SecureLink::connect(server_, self_, keys_, kBoardId, timeout_);
        break;
      } catch (const Error& e) {
        if (e.code() != Errc::kIo || Clock::now() >= deadline) throw;
        std::this_thread::sleep_for(std::chrono::milliseconds(50));
      }
    }
  }
  try {
    link_->send(request);
    auto reply = link_->recv();
    if (!reply) throw Error(Errc::kIo, "board closed the connection");
    return *reply;
  } catch (...) {
    link_.reset();
    throw;
  }
}

uint64_t RemoteBoard::post(Bytes payload, std::optional<NodeId> sender) {
  if (sender && *sender != self_.id) throw Error(Errc::kInvalidConfig, "board posts carry the link's own id");
  ByteWriter w;
  w.u8(kPost).u8(sender ? 0 : 1).bytes(payload);
  Bytes reply = call(w.take());
  ByteReader r(reply);
  uint64_t seq = r.u64();
  r.expect_done();
  return seq;
}

namespace {

std::vector<BoardEntry> decode_entries(ByteView b) {
  ByteReader r(b);
  uint32_t n = r.u32();
  std::vector<BoardEntry> out;
  for (uint32_t i = 0; i < n; ++i) out.push_back(decode_entry(r.bytes()));
  r.expect_done();
  return out;
}

}  // namespace

std::vector<BoardEntry> RemoteBoard::read(uint64_t since) {
  ByteWriter w;
  w.u8(kRead).u64(since);
  return decode_entries(call(w.take()));
}

std::vector<BoardEntry> RemoteBoard::wait(uint64_t since, std::chrono::milliseconds timeout) {
  ByteWriter w;
  w.u8(kWait).u64(since).u32(static_cast<uint32_t>(std::min<int64_t>(timeout.count(), UINT32_MAX)));
  return decode_entries(call(w.take()));
}

}  // namespace sae::transport
