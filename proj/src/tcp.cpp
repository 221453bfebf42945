#include "qpc/tcp.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "qpc/errors.hpp"
#include "qpc/frame.hpp"

namespace qpc {

namespace {

[[noreturn]] void throw_errno(const std::string& what) {
    throw ChannelError("tcp: " + what + ": " + std::strerror(errno));
}

void set_receive_timeout(int fd, std::chrono::seconds timeout) {
    timeval tv{};
    tv.tv_sec = timeout.count();
    ::setsockopt(fd, SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof tv);
}

void send_all(int fd, const std::uint8_t* data, std::size_t len) {
    while (len > 0) {
        const ssize_t n = ::send(fd, data, len, MSG_NOSIGNAL);
        if (n < 0) {
            if (errno == EINTR)
                continue;
            throw_errno("send");
        }
        data += n;
        len -= static_cast<std::size_t>(n);
    }
}

void recv_all(int fd, std::uint8_t* data, std::size_t len) {
    while (len > 0) {
        const ssize_t n = ::recv(fd, data, len, 0);
        if (n == 0)
            throw ChannelError("tcp: connection closed by peer");
        if (n < 0) {
            if (errno == EINTR)
                continue;
            if (errno == EAGAIN || errno == EWOULDBLOCK)
                throw ChannelError("tcp: receive timeout");
            throw_errno("recv");
        }
        data += n;
        len -= static_cast<std::size_t>(n);
    }
}

} // namespace

TcpChannel::TcpChannel(int fd, std::chrono::seconds receive_timeout)
    : fd_(fd) {
    int one = 1;
    ::setsockopt(fd_, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
    set_receive_timeout(fd_, receive_timeout);
}

TcpChannel::TcpChannel(TcpChannel&& other) noexcept : fd_(other.fd_) {
    other.fd_ = -1;
}

TcpChannel& TcpChannel::operator=(TcpChannel&& other) noexcept {
    if (this != &other) {
        close();
        fd_ = other.fd_;
        other.fd_ = -1;
    }
    return *this;
}

TcpChannel::~TcpChannel() { close(); }

TcpChannel TcpChannel::connect(const std::string& host, std::uint16_t port,
                               std::chrono::seconds receive_timeout) {
    addrinfo hints{};
    hints.ai_family = AF_INET;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo* result = nullptr;
    const std::string service = std::to_string(port);
    if (::getaddrinfo(host.c_str(), service.c_str(), &hints, &result) != 0)
        throw ChannelError("tcp: cannot resolve " + host);

    int fd = -1;
    for (addrinfo* ai = result; ai != nullptr; ai = ai->ai_next) {
        fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
        if (fd < 0)
            continue;
        if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0)
            break;
        ::close(fd);
        fd = -1;
    }
    ::freeaddrinfo(result);
    if (fd < 0)
        throw ChannelError("tcp: connect to " + host + ":" + service +
                           " failed");
    return TcpChannel(fd, receive_timeout);
}

void TcpChannel::send_frame(const Message& m) {
    if (fd_ < 0)
        throw ChannelError("tcp: send after close");
    const auto bytes = encode_frame(m);
    send_all(fd_, bytes.data(), bytes.size());
}

void TcpChannel::send_classical(const Message& m) {
    if (m.tag == Tag::Qubit)
        throw ProtocolViolation("qubit on the classical lane");
    send_frame(m);
}

void TcpChannel::send_qubit(std::uint32_t round, const QubitState& state) {
    send_frame(Message::qubit(round, state));
}

Message TcpChannel::receive_message() {
    if (fd_ < 0)
        throw ChannelError("tcp: receive after close");
    std::vector<std::uint8_t> bytes(kFrameHeaderSize);
    recv_all(fd_, bytes.data(), kFrameHeaderSize);
    const std::size_t payload = frame_payload_length(bytes.data());
    bytes.resize(kFrameHeaderSize + payload);
    recv_all(fd_, bytes.data() + kFrameHeaderSize, payload);
    return decode_frame(bytes);
}

void TcpChannel::close() {
    if (fd_ >= 0) {
        ::close(fd_);
        fd_ = -1;
    }
}

TcpListener::TcpListener(std::uint16_t port, const std::string& bind_addr) {
    fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd_ < 0)
        throw_errno("socket");
    int one = 1;
    ::setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);

    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(port);
    if (::inet_pton(AF_INET, bind_addr.c_str(), &addr.sin_addr) != 1)
        throw ChannelError("tcp: bad bind address " + bind_addr);
    if (::bind(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0)
        throw_errno("bind");
    if (::listen(fd_, 1) != 0)
        throw_errno("listen");

    socklen_t len = sizeof addr;
    ::getsockname(fd_, reinterpret_cast<sockaddr*>(&addr), &len);
    port_ = ntohs(addr.sin_port);
}

TcpListener::~TcpListener() {
    if (fd_ >= 0)
        ::close(fd_);
}

TcpChannel TcpListener::accept_one(std::chrono::seconds receive_timeout) {
    const int fd = ::accept(fd_, nullptr, nullptr);
    if (fd < 0)
        throw_errno("accept");
    return TcpChannel(fd, receive_timeout);
}

} // namespace qpc
