#pragma once

#include <atomic>
#include <chrono>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include "tempqa/relevance/scorer.hpp"

namespace tempqa::relevance {

// Wire protocol: one JSON object per line in each direction, one response per
// request, in request order.
//   request:  {"question": "...", "candidate": "..."}   optional "id" (any JSON value)
//   response: {"score": 0.73}                           echoes "id" when given
//   error:    {"error": "message"}                      for malformed requests
struct ScoreRequest {
  std::string question;
  std::string candidate;
  std::optional<std::string> id;  // raw JSON text of the id value
};

struct ScoreResponse {
  std::optional<double> score;
  std::optional<std::string> error;
  std::optional<std::string> id;
};

std::string encode_request(const ScoreRequest& r);
// ParseError when the line is not a JSON object with string question/candidate.
ScoreRequest decode_request(std::string_view line);
std::string encode_response(const ScoreResponse& r);
// ParseError on malformed JSON or when neither score nor error is present.
ScoreResponse decode_response(std::string_view line);

// Serves one request line with `scorer`; malformed input yields an error
// response instead of throwing.
std::string serve_line(std::string_view line, const RelevanceScorer& scorer);

// Bidirectional line transport. recv_line throws ScoringError on timeout or
// end of stream.
class LineChannel {
 public:
  virtual ~LineChannel() = default;
  virtual void send_line(std::string_view line) = 0;
  virtual std::string recv_line(std::chrono::milliseconds timeout) = 0;
};

// Over a pair of iostreams (no timeout support).
class StreamChannel : public LineChannel {
 public:
  StreamChannel(std::istream& in, std::ostream& out) : in_(&in), out_(&out) {}
  void send_line(std::string_view line) override;
  std::string recv_line(std::chrono::milliseconds timeout) override;

 private:
  std::istream* in_;
  std::ostream* out_;
};

// Spawns `/bin/sh -c command` and talks over its stdin/stdout.
class ProcessChannel : public LineChannel {
 public:
  explicit ProcessChannel(const std::string& command);
  ~ProcessChannel() override;
  ProcessChannel(const ProcessChannel&) = delete;
  ProcessChannel& operator=(const ProcessChannel&) = delete;
  void send_line(std::string_view line) override;
  std::string recv_line(std::chrono::milliseconds timeout) override;

 private:
  int pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string buffer_;
};

// TCP client to host:port.
class TcpChannel : public LineChannel {
 public:
  TcpChannel(const std::string& host, int port, std::chrono::milliseconds connect_timeout);
  ~TcpChannel() override;
  TcpChannel(const TcpChannel&) = delete;
  TcpChannel& operator=(const TcpChannel&) = delete;
  void send_line(std::string_view line) override;
  std::string recv_line(std::chrono::milliseconds timeout) override;

 private:
  int fd_ = -1;
  std::string buffer_;
};

// Opens "cmd:<shell command>" or "tcp:<host>:<port>". ScoringError when the
// endpoint cannot be reached, ContractViolation for unknown schemes.
std::unique_ptr<LineChannel> open_channel(const std::string& endpoint, std::chrono::milliseconds timeout);

class RemoteScorer : public RelevanceScorer {
 public:
  RemoteScorer(std::unique_ptr<LineChannel> channel, std::chrono::milliseconds timeout)
      : channel_(std::move(channel)), timeout_(timeout) {}
  // ScoringError on transport failure, error responses, or scores outside [0,1].
  double score(std::string_view question, std::string_view candidate) const override;
  std::vector<double> score_batch(std::string_view question, const std::vector<std::string>& candidates) const override;

 private:
  std::unique_ptr<LineChannel> channel_;
  std::chrono::milliseconds timeout_;
  mutable std::mutex mu_;
};

// Uses `primary` until it throws ScoringError, then `fallback` for that and
// every later call.
class FallbackScorer : public RelevanceScorer {
 public:
  FallbackScorer(std::shared_ptr<const RelevanceScorer> primary, std::shared_ptr<const RelevanceScorer> fallback)
      : primary_(std::move(primary)), fallback_(std::move(fallback)) {}
  double score(std::string_view question, std::string_view candidate) const override;
  std::vector<double> score_batch(std::string_view question, const std::vector<std::string>& candidates) const override;
  bool fell_back() const { return failed_; }

 private:
  std::shared_ptr<const RelevanceScorer> primary_;
  std::shared_ptr<const RelevanceScorer> fallback_;
  mutable std::atomic<bool> failed_{false};
};

}  // namespace tempqa::relevance
