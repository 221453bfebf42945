#pragma once

#include <chrono>
#include <memory>
#include <string>

#include "qpc/channel.hpp"

namespace qpc {

inline constexpr std::uint16_t kDefaultPort = 7408;
inline constexpr std::chrono::seconds kDefaultReceiveTimeout{30};

/// Both lanes over one TCP connection, multiplexed by the frame type byte.
/// Honest-mode only: a simulated qubit crosses the wire as its full state
/// description, so the simulator cannot police what a malicious peer process
/// does with it. Adversarial experiments stay on the in-process channel.
class TcpChannel final : public Channel {
  public:
    static TcpChannel connect(const std::string& host, std::uint16_t port,
                              std::chrono::seconds receive_timeout =
                                  kDefaultReceiveTimeout);

    TcpChannel(TcpChannel&& other) noexcept;
    TcpChannel& operator=(TcpChannel&& other) noexcept;
    ~TcpChannel() override;

    void send_classical(const Message& m) override;
    void send_qubit(std::uint32_t round, const QubitState& state) override;
    Message receive_message() override;
    void close() override;

  private:
    friend class TcpListener;
    explicit TcpChannel(int fd, std::chrono::seconds receive_timeout);

    void send_frame(const Message& m);

    int fd_ = -1;
};

class TcpListener {
  public:
    /// Binds and listens; port 0 picks an ephemeral port.
    explicit TcpListener(std::uint16_t port,
                         const std::string& bind_addr = "0.0.0.0");
    ~TcpListener();

    TcpListener(const TcpListener&) = delete;
    TcpListener& operator=(const TcpListener&) = delete;

    std::uint16_t port() const { return port_; }
    TcpChannel accept_one(std::chrono::seconds receive_timeout =
                              kDefaultReceiveTimeout);

  private:
    int fd_ = -1;
    std::uint16_t port_ = 0;
};

} // namespace qpc
