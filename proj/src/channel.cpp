#include "qpc/channel.hpp"

#include "qpc/errors.hpp"

namespace qpc {

struct InProcessChannel::Shared {
    // Message queues by destination endpoint; both lanes multiplexed in
    // send order (per-lane FIFO follows).
    std::deque<Message> to_first;
    std::deque<Message> to_second;
    bool open = true;
};

void InProcessChannel::send_classical(const Message& m) {
    if (m.tag == Tag::Qubit)
        throw ProtocolViolation("qubit on the classical lane");
    if (!shared_->open)
        throw ChannelError("channel: send after close");
    (first_endpoint_ ? shared_->to_second : shared_->to_first).push_back(m);
}

void InProcessChannel::send_qubit(std::uint32_t round,
                                  const QubitState& state) {
    if (!shared_->open)
        throw ChannelError("channel: send after close");
    (first_endpoint_ ? shared_->to_second : shared_->to_first)
        .push_back(Message::qubit(round, state));
}

Message InProcessChannel::receive_message() {
    auto& queue = first_endpoint_ ? shared_->to_first : shared_->to_second;
    if (queue.empty())
        throw ChannelEmpty();
    Message m = std::move(queue.front());
    queue.pop_front();
    return m;
}

void InProcessChannel::close() { shared_->open = false; }

bool InProcessChannel::has_pending() const {
    return !(first_endpoint_ ? shared_->to_first : shared_->to_second)
                .empty();
}

std::pair<std::unique_ptr<InProcessChannel>, std::unique_ptr<InProcessChannel>>
channel_pair_inprocess() {
    auto shared = std::make_shared<InProcessChannel::Shared>();
    auto a = std::make_unique<InProcessChannel>();
    auto b = std::make_unique<InProcessChannel>();
    a->shared_ = shared;
    a->first_endpoint_ = true;
    b->shared_ = shared;
    b->first_endpoint_ = false;
    return {std::move(a), std::move(b)};
}

} // namespace qpc
