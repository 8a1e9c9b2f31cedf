// Replays a golden scorer transcript against a live scorer endpoint and
// reports protocol violations. Exit code 0 iff every entry conforms.
#include <cmath>
#include <fstream>
#include <iostream>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "tempqa/errors.hpp"
#include "tempqa/relevance/remote.hpp"

using nlohmann::json;
using namespace tempqa::relevance;

namespace {

bool valid_score(const ScoreResponse& r) { return r.score && std::isfinite(*r.score) && *r.score >= 0 && *r.score <= 1; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Check a relevance scorer against a protocol transcript"};
  std::string endpoint, transcript;
  int timeout_ms = 10000;
  app.add_option("--endpoint", endpoint, "cmd:<command> or tcp:<host>:<port>")->required();
  app.add_option("--transcript", transcript, "transcript JSONL file")->required()->check(CLI::ExistingFile);
  app.add_option("--timeout-ms", timeout_ms, "per-response timeout");
  CLI11_PARSE(app, argc, argv);

  const std::chrono::milliseconds timeout(timeout_ms);
  auto channel = open_channel(endpoint, timeout);
  std::ifstream in(transcript);
  std::string line;
  std::vector<std::optional<double>> scores;
  int failures = 0, entries = 0;
  auto fail = [&](const std::string& msg) {
    ++failures;
    std::cout << "FAIL entry " << entries << ": " << msg << "\n";
  };
  try {
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const json entry = json::parse(line);
      if (entry.contains("batch")) {
        const int n = entry["batch"].get<int>();
        for (int i = 0; i < n; ++i) {
          json req{{"id", i}, {"question", entry["question"]},
                   {"candidate", entry["candidate_prefix"].get<std::string>() + std::to_string(i) + "."}};
          channel->send_line(req.dump());
        }
        for (int i = 0; i < n; ++i) {
          auto r = decode_response(channel->recv_line(timeout));
          if (!valid_score(r)) fail("batch response " + std::to_string(i) + " has no valid score");
          if (!r.id || *r.id != std::to_string(i)) fail("batch response " + std::to_string(i) + " out of order");
        }
        scores.emplace_back();
        ++entries;
        continue;
      }
      channel->send_line(entry.contains("send_raw") ? entry["send_raw"].get<std::string>() : entry["send"].dump());
      ScoreResponse r;
      try {
        r = decode_response(channel->recv_line(timeout));
      } catch (const tempqa::ParseError& e) {
        fail(std::string("unparseable response: ") + e.what());
        scores.emplace_back();
        ++entries;
        continue;
      }
      const std::string expect = entry["expect"];
      if (expect == "score") {
        if (!valid_score(r)) fail("expected a score in [0,1]");
        if (entry.contains("same_as")) {
          const auto& prev = scores.at(entry["same_as"].get<std::size_t>());
          if (!prev || !r.score || *prev != *r.score) fail("score differs from an identical earlier request");
        }
        if (entry.contains("echo_id") && (!r.id || json::parse(*r.id) != entry["echo_id"])) fail("id not echoed");
      } else if (!r.error) {
        fail("expected an error response");
      }
      scores.push_back(r.score);
      ++entries;
    }
  } catch (const std::exception& e) {
    fail(std::string("transport failure: ") + e.what());
  }
  std::cout << entries << " entries, " << failures << " failures\n";
  return failures == 0 ? 0 : 1;
}
