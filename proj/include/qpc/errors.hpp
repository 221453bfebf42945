#pragma once

#include <stdexcept>
#include <string>

namespace qpc {

/// Transport failure; the session is void and no verdict is emitted.
class ChannelError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// In-process receive on an empty channel (the driver over-read).
class ChannelEmpty : public ChannelError {
  public:
    ChannelEmpty() : ChannelError("channel: no pending message") {}
};

/// Unexpected or out-of-order message; the session is void.
class ProtocolViolation : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Handshake rejected (parameter digest or length mismatch).
class HandshakeError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Frame codec rejection, one kind per failure mode.
class FrameError : public std::runtime_error {
  public:
    enum class Kind { Truncated, BadVersion, BadType, LengthMismatch };

    FrameError(Kind kind, const std::string& what)
        : std::runtime_error("frame: " + what), kind_(kind) {}
    Kind kind() const { return kind_; }

  private:
    Kind kind_;
};

} // namespace qpc
