#pragma once

#include <stdexcept>
#include <string>

namespace nsl {

// Exit-code classes shared by the library and the CLI.
enum class Errc {
  Domain = 1,       // precondition / assertion-failure report
  Stuck = 2,        // reduction generator exhausted with Err != 0
  Certificate = 3,  // move certificate or conservation failure
  Usage = 64,
  Schema = 65,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }
  int exit_code() const { return static_cast<int>(code_); }

 private:
  Errc code_;
};

inline void require(bool ok, Errc code, const std::string& what) {
  if (!ok) throw Error(code, what);
}

}  // namespace nsl
