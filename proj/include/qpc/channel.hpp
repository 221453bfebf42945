#pragma once

#include <deque>
#include <memory>
#include <utility>

#include "qpc/message.hpp"

namespace qpc {

/// One endpoint of the two-lane session channel (quantum + classical).
/// Both lanes are ordered and reliable; qubits go out as QubitState and
/// arrive wrapped in the opaque InFlightQubit.
class Channel {
  public:
    virtual ~Channel() = default;

    /// Classical lane; rejects Qubit-tagged messages.
    virtual void send_classical(const Message& m) = 0;
    /// Quantum lane.
    virtual void send_qubit(std::uint32_t round, const QubitState& state) = 0;
    /// Next incoming message in arrival order (either lane). Blocks on
    /// transports that can wait; the in-process pair signals ChannelEmpty.
    virtual Message receive_message() = 0;

    virtual void close() = 0;
};

/// In-process endpoint; also exposes queue state so a single-threaded
/// driver can pump two endpoints without blocking.
class InProcessChannel final : public Channel {
  public:
    void send_classical(const Message& m) override;
    void send_qubit(std::uint32_t round, const QubitState& state) override;
    Message receive_message() override;
    void close() override;

    bool has_pending() const;

  private:
    friend std::pair<std::unique_ptr<InProcessChannel>,
                     std::unique_ptr<InProcessChannel>>
    channel_pair_inprocess();

    struct Shared;
    std::shared_ptr<Shared> shared_;
    bool first_endpoint_ = false;
};

/// Two connected endpoints. Single-owner each, not thread-safe; meant for a
/// sequential driver in one thread.
std::pair<std::unique_ptr<InProcessChannel>, std::unique_ptr<InProcessChannel>>
channel_pair_inprocess();

} // namespace qpc
