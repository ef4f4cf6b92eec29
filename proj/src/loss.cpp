#include "mdepth/loss.hpp"

#include <charconv>
#include <cstdio>

namespace mdepth {

namespace {

double parse_param(const std::string& text, std::size_t colon, const char* what) {
  const std::string body = text.substr(colon + 1);
  double value = 0.0;
  const char* first = body.data();
  const char* last = body.data() + body.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw InvalidInput(std::string("malformed ") + what + " parameter in loss '" + text + "'");
  }
  return value;
}

}  // namespace

LossSpec parse_loss(const std::string& text) {
  if (text == "absolute") return LossSpec::absolute();
  if (text == "quadratic") return LossSpec::quadratic();
  const auto colon = text.find(':');
  if (colon != std::string::npos) {
    const std::string head = text.substr(0, colon);
    if (head == "power") return LossSpec::power(parse_param(text, colon, "power"));
    if (head == "huber") return LossSpec::huber(parse_param(text, colon, "huber"));
  }
  throw InvalidInput("unknown loss '" + text + "' (expected absolute|quadratic|power:R|huber:C)");
}

std::string to_string(const LossSpec& loss) {
  char buf[64];
  switch (loss.kind) {
    case LossSpec::Kind::absolute: return "absolute";
    case LossSpec::Kind::quadratic: return "quadratic";
    case LossSpec::Kind::power:
      std::snprintf(buf, sizeof(buf), "power:%.17g", loss.param);
      return buf;
    case LossSpec::Kind::huber:
      std::snprintf(buf, sizeof(buf), "huber:%.17g", loss.param);
      return buf;
  }
  return "quadratic";
}

}  // namespace mdepth
