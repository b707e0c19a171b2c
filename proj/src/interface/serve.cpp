#include <arpa/inet.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <thread>

#include "fpf/interface.hpp"

namespace fpf {

namespace {

bool send_all(int fd, const std::string& s) {
    std::size_t off = 0;
    while (off < s.size()) {
        ssize_t n = ::send(fd, s.data() + off, s.size() - off, MSG_NOSIGNAL);
        if (n < 0 && errno == EINTR) continue;
        if (n <= 0) return false;
        off += static_cast<std::size_t>(n);
    }
    return true;
}

bool stopped(const std::atomic<bool>* stop) { return stop && stop->load(); }

void connection(int fd, const Catalog* cat, const std::atomic<bool>* stop) {
    ProtocolHandler handler(*cat);
    std::string buf;
    char chunk[4096];
    while (!stopped(stop)) {
        pollfd p{fd, POLLIN, 0};
        int r = ::poll(&p, 1, 100);
        if (r < 0 && errno != EINTR) break;
        if (r <= 0) continue;
        ssize_t n = ::recv(fd, chunk, sizeof chunk, 0);
        if (n < 0 && errno == EINTR) continue;
        if (n <= 0) break;
        buf.append(chunk, static_cast<std::size_t>(n));
        std::size_t nl;
        bool ok = true;
        while (ok && (nl = buf.find('\n')) != std::string::npos) {
            std::string line = buf.substr(0, nl);
            buf.erase(0, nl + 1);
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            ok = send_all(fd, handler.handle(line) + "\n");
        }
        if (!ok) break;
    }
    ::close(fd);
}

}  // namespace

void serve(int port, const Catalog& cat, const std::function<void(int)>& ready, const std::atomic<bool>* stop) {
    int lfd = ::socket(AF_INET, SOCK_STREAM, 0);
    if (lfd < 0) throw Error(ErrorCode::IoError, {}, std::string("cannot open a socket: ") + std::strerror(errno));
    int one = 1;
    ::setsockopt(lfd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    addr.sin_port = htons(static_cast<uint16_t>(port));
    if (::bind(lfd, reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0 || ::listen(lfd, 16) < 0) {
        const std::string why = std::strerror(errno);
        ::close(lfd);
        throw Error(ErrorCode::IoError, {}, "cannot listen on port " + std::to_string(port) + ": " + why,
                    {"", "", why, "port " + std::to_string(port), ""});
    }
    socklen_t len = sizeof addr;
    ::getsockname(lfd, reinterpret_cast<sockaddr*>(&addr), &len);
    if (ready) ready(ntohs(addr.sin_port));

    std::vector<std::thread> workers;
    while (!stopped(stop)) {
        pollfd p{lfd, POLLIN, 0};
        int r = ::poll(&p, 1, 100);
        if (r <= 0) continue;
        int fd = ::accept(lfd, nullptr, nullptr);
        if (fd < 0) continue;
        workers.emplace_back(connection, fd, &cat, stop);
    }
    ::close(lfd);
    for (auto& w : workers) w.join();
}

}  // namespace fpf
