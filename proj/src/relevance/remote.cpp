#include "tempqa/relevance/remote.hpp"

#include <fcntl.h>
#include <netdb.h>
#include <poll.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cmath>
#include <csignal>
#include <cstring>
#include <istream>
#include <ostream>
#include <thread>

#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "tempqa/errors.hpp"

namespace tempqa::relevance {
namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

constexpr std::size_t kPipelineDepth = 32;

void write_all(int fd, std::string_view data, bool socket) {
  while (!data.empty()) {
    const ssize_t n = socket ? ::send(fd, data.data(), data.size(), MSG_NOSIGNAL) : ::write(fd, data.data(), data.size());
    if (n < 0) {
      if (errno == EINTR) continue;
      throw ScoringError(std::string("scorer write failed: ") + std::strerror(errno));
    }
    data.remove_prefix(static_cast<std::size_t>(n));
  }
}

std::string read_line(int fd, std::string& buffer, std::chrono::milliseconds timeout) {
  const auto deadline = Clock::now() + timeout;
  while (true) {
    const auto nl = buffer.find('\n');
    if (nl != std::string::npos) {
      std::string line = buffer.substr(0, nl);
      buffer.erase(0, nl + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return line;
    }
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
    if (left.count() <= 0) throw ScoringError("scorer timed out");
    pollfd p{fd, POLLIN, 0};
    const int r = ::poll(&p, 1, static_cast<int>(left.count()));
    if (r < 0) {
      if (errno == EINTR) continue;
      throw ScoringError(std::string("scorer poll failed: ") + std::strerror(errno));
    }
    if (r == 0) throw ScoringError("scorer timed out");
    char chunk[4096];
    const ssize_t n = ::read(fd, chunk, sizeof chunk);
    if (n < 0) {
      if (errno == EINTR || errno == EAGAIN) continue;
      throw ScoringError(std::string("scorer read failed: ") + std::strerror(errno));
    }
    if (n == 0) throw ScoringError("scorer closed the connection");
    buffer.append(chunk, static_cast<std::size_t>(n));
  }
}

double checked_score(const ScoreResponse& r) {
  if (r.error) throw ScoringError("scorer error: " + *r.error);
  if (!r.score || !std::isfinite(*r.score) || *r.score < 0.0 || *r.score > 1.0)
    throw ScoringError("scorer returned an invalid score");
  return *r.score;
}

}  // namespace

std::string encode_request(const ScoreRequest& r) {
  json j;
  if (r.id) j["id"] = json::parse(*r.id);
  j["question"] = r.question;
  j["candidate"] = r.candidate;
  return j.dump();
}

ScoreRequest decode_request(std::string_view line) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw ParseError("request is not a JSON object", 0);
  auto q = j.find("question");
  auto c = j.find("candidate");
  if (q == j.end() || !q->is_string() || c == j.end() || !c->is_string())
    throw ParseError("request needs string fields question and candidate", 0);
  ScoreRequest r{q->get<std::string>(), c->get<std::string>(), std::nullopt};
  if (auto id = j.find("id"); id != j.end()) r.id = id->dump();
  return r;
}

std::string encode_response(const ScoreResponse& r) {
  json j;
  if (r.id) j["id"] = json::parse(*r.id);
  if (r.score) j["score"] = *r.score;
  if (r.error) j["error"] = *r.error;
  return j.dump();
}

ScoreResponse decode_response(std::string_view line) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw ParseError("response is not a JSON object", 0);
  ScoreResponse r;
  if (auto s = j.find("score"); s != j.end()) {
    if (!s->is_number()) throw ParseError("score must be a number", 0);
    r.score = s->get<double>();
  }
  if (auto e = j.find("error"); e != j.end()) r.error = e->is_string() ? e->get<std::string>() : e->dump();
  if (auto id = j.find("id"); id != j.end()) r.id = id->dump();
  if (!r.score && !r.error) throw ParseError("response has neither score nor error", 0);
  return r;
}

std::string serve_line(std::string_view line, const RelevanceScorer& scorer) {
  ScoreResponse out;
  try {
    auto req = decode_request(line);
    out.id = req.id;
    out.score = scorer.score(req.question, req.candidate);
  } catch (const std::exception& e) {
    out.score.reset();
    out.error = e.what();
  }
  return encode_response(out);
}

void StreamChannel::send_line(std::string_view line) {
  *out_ << line << '\n';
  out_->flush();
  if (!*out_) throw ScoringError("scorer stream write failed");
}

std::string StreamChannel::recv_line(std::chrono::milliseconds) {
  std::string line;
  if (!std::getline(*in_, line)) throw ScoringError("scorer stream ended");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

ProcessChannel::ProcessChannel(const std::string& command) {
  std::signal(SIGPIPE, SIG_IGN);
  int in[2], out[2];
  if (::pipe(in) != 0) throw ScoringError("pipe failed");
  if (::pipe(out) != 0) {
    ::close(in[0]);
    ::close(in[1]);
    throw ScoringError("pipe failed");
  }
  pid_ = ::fork();
  if (pid_ < 0) throw ScoringError("fork failed");
  if (pid_ == 0) {
    ::dup2(in[0], STDIN_FILENO);
    ::dup2(out[1], STDOUT_FILENO);
    ::close(in[0]);
    ::close(in[1]);
    ::close(out[0]);
    ::close(out[1]);
    ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  ::close(in[0]);
  ::close(out[1]);
  to_child_ = in[1];
  from_child_ = out[0];
}

ProcessChannel::~ProcessChannel() {
  if (to_child_ >= 0) ::close(to_child_);
  if (from_child_ >= 0) ::close(from_child_);
  if (pid_ > 0) {
    int status = 0;
    for (int i = 0; i < 50; ++i) {
      if (::waitpid(pid_, &status, WNOHANG) == pid_) return;
      std::this_thread::sleep_for(std::chrono::milliseconds(10));
    }
    ::kill(pid_, SIGKILL);
    ::waitpid(pid_, &status, 0);
  }
}

void ProcessChannel::send_line(std::string_view line) {
  std::string data(line);
  data += '\n';
  write_all(to_child_, data, false);
}

std::string ProcessChannel::recv_line(std::chrono::milliseconds timeout) {
  return read_line(from_child_, buffer_, timeout);
}

TcpChannel::TcpChannel(const std::string& host, int port, std::chrono::milliseconds connect_timeout) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  if (::getaddrinfo(host.c_str(), std::to_string(port).c_str(), &hints, &res) != 0 || !res)
    throw ScoringError("cannot resolve " + host);
  std::string last_error = "no address";
  for (addrinfo* a = res; a; a = a->ai_next) {
    int fd = ::socket(a->ai_family, a->ai_socktype, a->ai_protocol);
    if (fd < 0) continue;
    const int flags = ::fcntl(fd, F_GETFL, 0);
    ::fcntl(fd, F_SETFL, flags | O_NONBLOCK);
    int rc = ::connect(fd, a->ai_addr, a->ai_addrlen);
    if (rc != 0 && errno == EINPROGRESS) {
      pollfd p{fd, POLLOUT, 0};
      rc = ::poll(&p, 1, static_cast<int>(connect_timeout.count())) == 1 ? 0 : -1;
      int err = 0;
      socklen_t len = sizeof err;
      if (rc == 0 && (::getsockopt(fd, SOL_SOCKET, SO_ERROR, &err, &len) != 0 || err != 0)) {
        rc = -1;
        errno = err;
      }
    }
    if (rc == 0) {
      ::fcntl(fd, F_SETFL, flags);
      fd_ = fd;
      break;
    }
    last_error = std::strerror(errno);
    ::close(fd);
  }
  ::freeaddrinfo(res);
  if (fd_ < 0) throw ScoringError("cannot connect to " + host + ":" + std::to_string(port) + ": " + last_error);
}

TcpChannel::~TcpChannel() {
  if (fd_ >= 0) ::close(fd_);
}

void TcpChannel::send_line(std::string_view line) {
  std::string data(line);
  data += '\n';
  write_all(fd_, data, true);
}

std::string TcpChannel::recv_line(std::chrono::milliseconds timeout) { return read_line(fd_, buffer_, timeout); }

std::unique_ptr<LineChannel> open_channel(const std::string& endpoint, std::chrono::milliseconds timeout) {
  if (endpoint.rfind("cmd:", 0) == 0) return std::make_unique<ProcessChannel>(endpoint.substr(4));
  if (endpoint.rfind("tcp:", 0) == 0) {
    const auto rest = endpoint.substr(4);
    const auto colon = rest.rfind(':');
    if (colon == std::string::npos) throw ContractViolation("tcp endpoint needs host:port");
    return std::make_unique<TcpChannel>(rest.substr(0, colon), std::stoi(rest.substr(colon + 1)), timeout);
  }
  throw ContractViolation("unknown scorer endpoint '" + endpoint + "'");
}

double RemoteScorer::score(std::string_view question, std::string_view candidate) const {
  std::lock_guard lock(mu_);
  channel_->send_line(encode_request({std::string(question), std::string(candidate), std::nullopt}));
  try {
    return checked_score(decode_response(channel_->recv_line(timeout_)));
  } catch (const ParseError& e) {
    throw ScoringError(std::string("bad scorer response: ") + e.what());
  }
}

std::vector<double> RemoteScorer::score_batch(std::string_view question,
                                              const std::vector<std::string>& candidates) const {
  std::lock_guard lock(mu_);
  std::vector<double> out;
  out.reserve(candidates.size());
  for (std::size_t start = 0; start < candidates.size(); start += kPipelineDepth) {
    const std::size_t end = std::min(candidates.size(), start + kPipelineDepth);
    for (std::size_t i = start; i < end; ++i)
      channel_->send_line(encode_request({std::string(question), candidates[i], std::to_string(i)}));
    for (std::size_t i = start; i < end; ++i) {
      ScoreResponse r;
      try {
        r = decode_response(channel_->recv_line(timeout_));
      } catch (const ParseError& e) {
        throw ScoringError(std::string("bad scorer response: ") + e.what());
      }
      if (r.id && *r.id != std::to_string(i)) throw ScoringError("scorer responses out of order");
      out.push_back(checked_score(r));
    }
  }
  return out;
}

double FallbackScorer::score(std::string_view question, std::string_view candidate) const {
  if (!failed_) {
    try {
      return primary_->score(question, candidate);
    } catch (const ScoringError& e) {
      spdlog::warn("remote scorer failed ({}); using fallback scorer", e.what());
      failed_ = true;
    }
  }
  return fallback_->score(question, candidate);
}

std::vector<double> FallbackScorer::score_batch(std::string_view question,
                                                const std::vector<std::string>& candidates) const {
  if (!failed_) {
    try {
      return primary_->score_batch(question, candidates);
    } catch (const ScoringError& e) {
      spdlog::warn("remote scorer failed ({}); using fallback scorer", e.what());
      failed_ = true;
    }
  }
  return fallback_->score_batch(question, candidates);
}

}  // namespace tempqa::relevance
