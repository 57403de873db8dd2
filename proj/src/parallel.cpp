#include "palmpat/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <string_view>

namespace palmpat {

std::size_t resolve_workers(std::size_t requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

std::size_t workers_from_env() {
  const char* raw = std::getenv("PALMPAT_THREADS");
  if (raw == nullptr) return 0;
  const std::string_view text(raw);
  std::size_t value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size()) return 0;
  return value;
}

}  // namespace palmpat
